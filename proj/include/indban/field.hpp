#pragma once

#include "indban/norm_value.hpp"

#include <string>

namespace indban {

class ValuedField {
public:
    enum class Backend { Archimedean, Padic };

    ValuedField() = default;
    static ValuedField archimedean() { return ValuedField(); }
    static ValuedField padic(unsigned long p);

    Backend backend() const { return backend_; }
    unsigned long prime() const { return p_; }
    bool archimedean_backend() const { return backend_ == Backend::Archimedean; }
    NormValue::Kind norm_kind() const;

    NormValue abs(const Q& x) const;
    NormValue zero() const;
    NormValue one() const;
    NormValue weight(const Q& positive) const;
    NormValue parse(const std::string& text) const;
    // Valuation of a nonzero rational (p-adic only).
    long valuation(const Q& x) const;

    std::string name() const;

    friend bool operator==(const ValuedField& a, const ValuedField& b) {
        return a.backend_ == b.backend_ && a.p_ == b.p_;
    }
    friend bool operator!=(const ValuedField& a, const ValuedField& b) { return !(a == b); }

private:
    Backend backend_ = Backend::Archimedean;
    unsigned long p_ = 0;
};

bool is_prime(unsigned long n);

} // namespace indban
