#include "indban/norm_value.hpp"

#include "indban/error.hpp"

#include <cmath>

namespace indban {

namespace {

// Splits positive x as unit * p^v with unit prime to p.
void split_padic(unsigned long p, const Q& x, Q& unit, long& v) {
    mpz_class num = x.get_num(), den = x.get_den();
    mpz_class P = p;
    v = 0;
    while (mpz_divisible_p(num.get_mpz_t(), P.get_mpz_t())) {
        num /= P;
        ++v;
    }
    while (mpz_divisible_p(den.get_mpz_t(), P.get_mpz_t())) {
        den /= P;
        --v;
    }
    unit = Q(num, den);
    unit.canonicalize();
}

Q qpow(const Q& base, unsigned long e) {
    Q out = 1;
    for (unsigned long i = 0; i < e; ++i) out *= base;
    return out;
}

void same_kind(const NormValue& a, const NormValue& b) {
    if (a.kind() != b.kind() || a.prime() != b.prime())
        throw Error(ErrorKind::MixedBackends, "norm values from different backends");
}

// Sign of a - b for positive p-adic values.
int compare_padic(const NormValue& a, const NormValue& b) {
    if (a.is_zero() || b.is_zero()) return (a.is_zero() ? 0 : 1) - (b.is_zero() ? 0 : 1);
    // a.unit * p^ea  vs  b.unit * p^eb  <=>  (a.unit / b.unit)^den  vs  p^((eb - ea) * den)
    Q d = b.exponent() - a.exponent();
    mpz_class num = d.get_num(), den = d.get_den();
    unsigned long dn = den.get_ui();
    Q lhs = qpow(a.unit() / b.unit(), dn);
    Q rhs;
    mpz_class pw;
    mpz_class absn = abs(num);
    mpz_ui_pow_ui(pw.get_mpz_t(), a.prime(), absn.get_ui());
    rhs = num >= 0 ? Q(pw) : Q(1) / Q(pw);
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

} // namespace

NormValue NormValue::arch(const Real& v) {
    NormValue n;
    n.kind_ = Kind::Archimedean;
    n.real_ = v;
    return n;
}

NormValue NormValue::padic(unsigned long p, const Q& positive) {
    if (positive < 0) throw Error(ErrorKind::InvalidArgument, "negative norm value");
    if (positive == 0) return padic_zero(p);
    NormValue n;
    n.kind_ = Kind::Padic;
    n.p_ = p;
    long v;
    split_padic(p, positive, n.unit_, v);
    n.exp_ = Q(v);
    return n;
}

NormValue NormValue::padic_power(unsigned long p, const Q& exponent) {
    NormValue n;
    n.kind_ = Kind::Padic;
    n.p_ = p;
    n.exp_ = exponent;
    return n;
}

NormValue NormValue::padic_zero(unsigned long p) {
    NormValue n;
    n.kind_ = Kind::Padic;
    n.p_ = p;
    n.zero_ = true;
    return n;
}

bool NormValue::is_zero() const {
    if (kind_ == Kind::Padic) return zero_;
    return real_.is_rational() && real_.rational() == 0;
}

bool NormValue::is_one() const {
    if (kind_ == Kind::Padic) return !zero_ && unit_ == 1 && exp_ == 0;
    return real_.is_rational() && real_.rational() == 1;
}

bool NormValue::is_rational() const {
    if (kind_ == Kind::Padic) return zero_ || exp_.get_den() == 1;
    return real_.is_rational();
}

Q NormValue::rational() const {
    if (kind_ == Kind::Archimedean) return real_.rational();
    if (zero_) return 0;
    if (exp_.get_den() != 1) throw Error(ErrorKind::InvalidArgument, "p-adic norm value is irrational");
    long e = exp_.get_num().get_si();
    Q pw = qpow(Q(p_), static_cast<unsigned long>(std::labs(e)));
    return e >= 0 ? Q(unit_ * pw) : Q(unit_ / pw);
}

NormValue NormValue::inverse() const {
    if (is_zero()) throw Error(ErrorKind::InvalidArgument, "inverse of zero norm value");
    if (kind_ == Kind::Archimedean) return arch(Real(1) / real_);
    NormValue n = *this;
    n.unit_ = 1 / unit_;
    n.exp_ = -exp_;
    return n;
}

NormValue NormValue::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    if (kind_ == Kind::Archimedean) return arch(indban::pow(real_, static_cast<unsigned>(n)));
    if (zero_) return n == 0 ? padic_power(p_, 0) : *this;
    NormValue out = *this;
    out.unit_ = qpow(unit_, static_cast<unsigned long>(n));
    out.exp_ = exp_ * n;
    return out;
}

NormValue NormValue::root(unsigned long n) const {
    if (kind_ != Kind::Padic) throw Error(ErrorKind::InvalidArgument, "root of archimedean norm value");
    if (zero_) return *this;
    if (unit_ != 1) throw Error(ErrorKind::InvalidArgument, "root of a p-adic value with a non-trivial unit part");
    return padic_power(p_, exp_ / Q(static_cast<long>(n)));
}

NormValue NormValue::scaled(const Q& factor) const {
    if (kind_ == Kind::Archimedean) return arch(real_ * Real(factor));
    return *this * padic(p_, factor);
}

std::string NormValue::str() const {
    if (kind_ == Kind::Archimedean) return real_.str();
    if (zero_) return "0";
    std::string s;
    if (unit_ != 1) s = unit_.get_str();
    if (exp_ == 0) return s.empty() ? "1" : s;
    if (!s.empty()) s += "*";
    return s + std::to_string(p_) + "^" + exp_.get_str();
}

double NormValue::approx() const {
    if (kind_ == Kind::Archimedean) return real_.approx();
    if (zero_) return 0.0;
    return unit_.get_d() * std::pow(static_cast<double>(p_), exp_.get_d());
}

NormValue operator*(const NormValue& a, const NormValue& b) {
    same_kind(a, b);
    if (a.kind_ == NormValue::Kind::Archimedean) return NormValue::arch(a.real_ * b.real_);
    if (a.zero_) return a;
    if (b.zero_) return b;
    NormValue n = a;
    n.unit_ = a.unit_ * b.unit_;
    n.exp_ = a.exp_ + b.exp_;
    return n;
}

NormValue operator/(const NormValue& a, const NormValue& b) { return a * b.inverse(); }

NormValue operator+(const NormValue& a, const NormValue& b) {
    same_kind(a, b);
    if (a.kind_ == NormValue::Kind::Archimedean) return NormValue::arch(a.real_ + b.real_);
    return max(a, b);
}

NormValue max(const NormValue& a, const NormValue& b) {
    same_kind(a, b);
    if (a.kind() == NormValue::Kind::Archimedean) return NormValue::arch(max(a.real(), b.real()));
    return compare_padic(a, b) >= 0 ? a : b;
}

NormValue min(const NormValue& a, const NormValue& b) {
    same_kind(a, b);
    if (a.kind() == NormValue::Kind::Archimedean) return NormValue::arch(min(a.real(), b.real()));
    return compare_padic(a, b) <= 0 ? a : b;
}

int compare(const NormValue& a, const NormValue& b, unsigned budget) {
    same_kind(a, b);
    if (a.kind() == NormValue::Kind::Archimedean) return compare(a.real(), b.real(), budget);
    return compare_padic(a, b);
}

Tri less_equal(const NormValue& a, const NormValue& b, unsigned budget) {
    same_kind(a, b);
    if (a.kind() == NormValue::Kind::Archimedean) return less_equal(a.real(), b.real(), budget);
    return compare_padic(a, b) <= 0 ? Tri::True : Tri::False;
}

bool operator==(const NormValue& a, const NormValue& b) { return compare(a, b) == 0; }
bool operator<(const NormValue& a, const NormValue& b) { return compare(a, b) < 0; }
bool operator<=(const NormValue& a, const NormValue& b) { return compare(a, b) <= 0; }

NormValue parse_norm_value(const std::string& text, NormValue::Kind kind, unsigned long p) {
    auto caret = text.find('^');
    if (caret != std::string::npos) {
        if (kind != NormValue::Kind::Padic) throw Error(ErrorKind::ParseError, "power notation needs a p-adic backend: " + text);
        Q base = parse_rational(text.substr(0, caret));
        Q e = parse_rational(text.substr(caret + 1));
        if (base != Q(static_cast<long>(p)))
            throw Error(ErrorKind::ParseError, "power base must equal the prime: " + text);
        return NormValue::padic_power(p, e);
    }
    Q v = parse_rational(text);
    if (v < 0) throw Error(ErrorKind::ParseError, "negative norm value: " + text);
    if (kind == NormValue::Kind::Padic) return NormValue::padic(p, v);
    return NormValue::arch(v);
}

bool NormEnclosure::exact() const {
    if (lower.kind() == NormValue::Kind::Archimedean && lower.real().node() == upper.real().node()) return true;
    try {
        return compare(lower, upper) == 0;
    } catch (const Error&) {
        return false;
    }
}

std::string NormEnclosure::str() const {
    if (exact()) return lower.str();
    return "[" + lower.str() + ", " + upper.str() + "]";
}

} // namespace indban
