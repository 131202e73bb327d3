#include "indban/field.hpp"

#include "indban/error.hpp"

namespace indban {

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

ValuedField ValuedField::padic(unsigned long p) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "p-adic backend needs a prime, got " + std::to_string(p));
    ValuedField f;
    f.backend_ = Backend::Padic;
    f.p_ = p;
    return f;
}

NormValue::Kind ValuedField::norm_kind() const {
    return archimedean_backend() ? NormValue::Kind::Archimedean : NormValue::Kind::Padic;
}

NormValue ValuedField::abs(const Q& x) const {
    if (archimedean_backend()) return NormValue::arch(Q(::abs(x)));
    if (x == 0) return NormValue::padic_zero(p_);
    return NormValue::padic_power(p_, Q(-valuation(x)));
}

NormValue ValuedField::zero() const {
    return archimedean_backend() ? NormValue::arch(Q(0)) : NormValue::padic_zero(p_);
}

NormValue ValuedField::one() const {
    return archimedean_backend() ? NormValue::arch(Q(1)) : NormValue::padic_power(p_, 0);
}

NormValue ValuedField::weight(const Q& positive) const {
    Q q = positive;
    q.canonicalize();
    if (q <= 0) throw Error(ErrorKind::InvalidArgument, "weights must be positive");
    return archimedean_backend() ? NormValue::arch(q) : NormValue::padic(p_, q);
}

NormValue ValuedField::parse(const std::string& text) const { return parse_norm_value(text, norm_kind(), p_); }

long ValuedField::valuation(const Q& x) const {
    if (archimedean_backend()) throw Error(ErrorKind::InvalidArgument, "valuation needs a p-adic backend");
    if (x == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
    mpz_class P = p_;
    mpz_class num = x.get_num(), den = x.get_den();
    long v = 0;
    while (mpz_divisible_p(num.get_mpz_t(), P.get_mpz_t())) {
        num /= P;
        ++v;
    }
    while (mpz_divisible_p(den.get_mpz_t(), P.get_mpz_t())) {
        den /= P;
        --v;
    }
    return v;
}

std::string ValuedField::name() const {
    return archimedean_backend() ? "archimedean" : "padic(" + std::to_string(p_) + ")";
}

} // namespace indban
