#pragma once

#include "indban/real.hpp"

#include <string>

namespace indban {

// Non-negative norm value. Archimedean values are exact reals; p-adic values are
// unit * p^exponent with unit a positive rational prime to p, or zero.
class NormValue {
public:
    enum class Kind { Archimedean, Padic };

    NormValue() = default;
    static NormValue arch(const Real& v);
    static NormValue arch(const Q& v) { return arch(Real(v)); }
    static NormValue padic(unsigned long p, const Q& positive);
    static NormValue padic_power(unsigned long p, const Q& exponent);
    static NormValue padic_zero(unsigned long p);

    Kind kind() const { return kind_; }
    unsigned long prime() const { return p_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Q rational() const;
    const Real& real() const { return real_; }
    const Q& unit() const { return unit_; }
    const Q& exponent() const { return exp_; }

    NormValue inverse() const;
    NormValue pow(long n) const;
    NormValue root(unsigned long n) const; // p-adic only
    NormValue scaled(const Q& factor) const; // multiply by a positive rational

    std::string str() const;
    double approx() const;

    friend NormValue operator*(const NormValue& a, const NormValue& b);
    friend NormValue operator/(const NormValue& a, const NormValue& b);
    friend NormValue operator+(const NormValue& a, const NormValue& b); // archimedean sum; p-adic max

private:
    Kind kind_ = Kind::Archimedean;
    Real real_;
    unsigned long p_ = 0;
    bool zero_ = false;
    Q unit_ = 1;
    Q exp_ = 0;
};

NormValue max(const NormValue& a, const NormValue& b);
NormValue min(const NormValue& a, const NormValue& b);
int compare(const NormValue& a, const NormValue& b, unsigned budget = default_precision());
Tri less_equal(const NormValue& a, const NormValue& b, unsigned budget = default_precision());
bool operator==(const NormValue& a, const NormValue& b);
bool operator<(const NormValue& a, const NormValue& b);
bool operator<=(const NormValue& a, const NormValue& b);

// Parses "a/b", decimals, or "p^q" for p-adic backends.
NormValue parse_norm_value(const std::string& text, NormValue::Kind kind, unsigned long p);

// Certified enclosure [lower, upper] of a norm.
struct NormEnclosure {
    NormValue lower;
    NormValue upper;
    bool exact() const;
    std::string str() const;
};

} // namespace indban
