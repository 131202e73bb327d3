#include "indban/real.hpp"

#include "indban/error.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>

namespace indban {

namespace {

std::atomic<unsigned> g_precision{512};

Q floor_dyadic(const Q& x, unsigned k) {
    mpz_class scaled = x.get_num();
    scaled <<= k;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class den = 1;
    den <<= k;
    Q out(f, den);
    out.canonicalize();
    return out;
}

Q ceil_dyadic(const Q& x, unsigned k) {
    mpz_class scaled = x.get_num();
    scaled <<= k;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class den = 1;
    den <<= k;
    Q out(c, den);
    out.canonicalize();
    return out;
}

Interval round_out(const Interval& iv, unsigned k) {
    return {floor_dyadic(iv.lo, k), ceil_dyadic(iv.hi, k)};
}

long bit_bound(const Q& x) {
    Q a = abs(x);
    if (a <= 1) return 0;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
    return static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2));
}

bool is_square(const mpz_class& z) { return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0; }

mpz_class isqrt(const mpz_class& z) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
    return r;
}

Q eval_poly(const std::vector<Q>& p, const Q& x) {
    Q acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int sgn(const Q& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

} // namespace

unsigned default_precision() { return g_precision.load(); }
void set_default_precision(unsigned bits) { g_precision.store(std::max(bits, 32u)); }

struct Real::Node {
    enum Kind { Rational, Radical, Root, Add, Mul, Neg, Inv, Max, Min, Abs } kind = Rational;
    Q q;                 // rational value, or coefficient of a radical
    Q r;                 // radicand of a radical (a non-square positive integer)
    std::vector<Q> poly; // root: defining polynomial
    Q lo, hi;            // root: isolating interval
    std::shared_ptr<const Node> a, b;
    long mag = 0;        // |value| <= 2^mag
    long inv_mag = 0;    // inverse nodes: |child| >= 2^-inv_mag

    mutable std::mutex lock;
    mutable unsigned cached_bits = 0;
    mutable Interval cached{0, 0};
};

namespace {

using NodePtr = std::shared_ptr<const Real::Node>;

NodePtr make_rational(const Q& q) {
    auto n = std::make_shared<Real::Node>();
    n->kind = Real::Node::Rational;
    n->q = q;
    n->mag = bit_bound(q);
    return n;
}

// q * sqrt(r) with r a positive integer; folds perfect squares.
NodePtr make_radical(Q q, mpz_class r) {
    if (q == 0 || r == 0) return make_rational(0);
    mpz_class sq = 1;
    for (unsigned long p = 2; p < 2000 && p * p <= r; ++p) {
        mpz_class pp = p * p;
        while (mpz_divisible_p(r.get_mpz_t(), pp.get_mpz_t())) {
            r /= pp;
            sq *= p;
        }
    }
    if (is_square(r)) {
        sq *= isqrt(r);
        r = 1;
    }
    q *= Q(sq);
    if (r == 1) return make_rational(q);
    auto n = std::make_shared<Real::Node>();
    n->kind = Real::Node::Radical;
    n->q = q;
    n->r = Q(r);
    n->mag = bit_bound(q) + bit_bound(Q(r)) / 2 + 1;
    return n;
}

Interval enclose_node(const Real::Node& n, unsigned bits);

Interval enclose_sqrt(const Q& r, unsigned k) {
    mpz_class scale = 1;
    scale <<= 2 * k;
    Q s = r * Q(scale);
    mpz_class fl, cl;
    mpz_fdiv_q(fl.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
    mpz_cdiv_q(cl.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
    mpz_class lo = isqrt(fl);
    mpz_class hi = isqrt(cl);
    if (hi * hi < cl) hi += 1;
    mpz_class den = 1;
    den <<= k;
    Q qlo(lo, den), qhi(hi, den);
    qlo.canonicalize();
    qhi.canonicalize();
    return {qlo, qhi};
}

Interval mul_iv(const Interval& x, const Interval& y) {
    Q c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval compute_enclosure(const Real::Node& n, unsigned bits) {
    unsigned k = bits + 4;
    switch (n.kind) {
    case Real::Node::Rational:
        return {n.q, n.q};
    case Real::Node::Radical: {
        Interval s = enclose_sqrt(n.r, k + static_cast<unsigned>(bit_bound(n.q)));
        Interval t = mul_iv({n.q, n.q}, s);
        return round_out(t, k);
    }
    case Real::Node::Root: {
        Q lo = n.lo, hi = n.hi;
        int slo = sgn(eval_poly(n.poly, lo));
        if (slo == 0) return {lo, lo};
        if (sgn(eval_poly(n.poly, hi)) == 0) return {hi, hi};
        mpz_class den = 1;
        den <<= bits;
        Q eps(1, den);
        eps.canonicalize();
        while (hi - lo > eps) {
            Q mid = floor_dyadic((lo + hi) / 2, k + 8);
            if (mid <= lo || mid >= hi) mid = (lo + hi) / 2;
            int s = sgn(eval_poly(n.poly, mid));
            if (s == 0) return {mid, mid};
            if (s == slo)
                lo = mid;
            else
                hi = mid;
        }
        return {lo, hi};
    }
    case Real::Node::Add: {
        Interval x = enclose_node(*n.a, bits + 2), y = enclose_node(*n.b, bits + 2);
        return round_out({x.lo + y.lo, x.hi + y.hi}, k);
    }
    case Real::Node::Mul: {
        Interval x = enclose_node(*n.a, bits + 2 + static_cast<unsigned>(n.b->mag));
        Interval y = enclose_node(*n.b, bits + 2 + static_cast<unsigned>(n.a->mag));
        return round_out(mul_iv(x, y), k);
    }
    case Real::Node::Neg: {
        Interval x = enclose_node(*n.a, bits);
        return {-x.hi, -x.lo};
    }
    case Real::Node::Inv: {
        Interval x = enclose_node(*n.a, bits + 4 + 2 * static_cast<unsigned>(n.inv_mag));
        if (x.lo <= 0 && x.hi >= 0) throw Error(ErrorKind::UndecidableComparison, "divisor not separated from zero");
        Q a = 1 / x.lo, b = 1 / x.hi;
        return round_out({std::min(a, b), std::max(a, b)}, k);
    }
    case Real::Node::Max: {
        Interval x = enclose_node(*n.a, bits), y = enclose_node(*n.b, bits);
        return {std::max(x.lo, y.lo), std::max(x.hi, y.hi)};
    }
    case Real::Node::Min: {
        Interval x = enclose_node(*n.a, bits), y = enclose_node(*n.b, bits);
        return {std::min(x.lo, y.lo), std::min(x.hi, y.hi)};
    }
    case Real::Node::Abs: {
        Interval x = enclose_node(*n.a, bits);
        if (x.lo >= 0) return x;
        if (x.hi <= 0) return {-x.hi, -x.lo};
        return {Q(0), std::max(Q(-x.lo), x.hi)};
    }
    }
    return {0, 0};
}

Interval enclose_node(const Real::Node& n, unsigned bits) {
    if (n.kind == Real::Node::Rational) return {n.q, n.q};
    {
        std::lock_guard<std::mutex> g(n.lock);
        if (n.cached_bits >= bits) return n.cached;
    }
    Interval iv = compute_enclosure(n, bits);
    std::lock_guard<std::mutex> g(n.lock);
    if (bits > n.cached_bits) {
        n.cached_bits = bits;
        n.cached = iv;
    }
    return iv;
}

NodePtr make_binary(Real::Node::Kind kind, NodePtr a, NodePtr b, long mag) {
    auto n = std::make_shared<Real::Node>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    n->mag = mag;
    return n;
}

NodePtr make_unary(Real::Node::Kind kind, NodePtr a, long mag) { return make_binary(kind, std::move(a), nullptr, mag); }

bool closed_form(const Real::Node& n) { return n.kind == Real::Node::Rational || n.kind == Real::Node::Radical; }

// Closed-form value as coefficient and radicand (radicand 1 for rationals).
void split(const Real::Node& n, Q& q, Q& r) {
    if (n.kind == Real::Node::Rational) {
        q = n.q;
        r = 1;
    } else {
        q = n.q;
        r = n.r;
    }
}

int compare_closed(const Real::Node& x, const Real::Node& y) {
    Q q1, r1, q2, r2;
    split(x, q1, r1);
    split(y, q2, r2);
    int s1 = sgn(q1), s2 = sgn(q2);
    if (s1 != s2) return s1 < s2 ? -1 : 1;
    if (s1 == 0) return 0;
    Q a = q1 * q1 * r1, b = q2 * q2 * r2;
    int c = a < b ? -1 : (a > b ? 1 : 0);
    return s1 > 0 ? c : -c;
}

} // namespace

Real::Real() : node_(make_rational(0)) {}
Real::Real(long v) : node_(make_rational(Q(v))) {}
Real::Real(const Q& v) : node_(make_rational(v)) {}

Real Real::sqrt(const Q& r) {
    if (r < 0) throw Error(ErrorKind::InvalidArgument, "square root of a negative rational");
    if (r == 0) return Real(0);
    mpz_class num = r.get_num() * r.get_den();
    return Real(make_radical(Q(1, 1) / Q(r.get_den()), num));
}

Real Real::root(std::vector<Q> poly, const Q& lo, const Q& hi) {
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
    if (poly.empty()) throw Error(ErrorKind::InvalidArgument, "zero polynomial");
    if (lo > hi) throw Error(ErrorKind::InvalidArgument, "empty isolating interval");
    Q flo = eval_poly(poly, lo), fhi = eval_poly(poly, hi);
    if (flo == 0) return Real(lo);
    if (fhi == 0) return Real(hi);
    if (sgn(flo) == sgn(fhi)) throw Error(ErrorKind::InvalidArgument, "polynomial does not change sign on interval");
    auto n = std::make_shared<Node>();
    n->kind = Node::Root;
    n->poly = std::move(poly);
    n->lo = lo;
    n->hi = hi;
    n->mag = std::max(bit_bound(lo), bit_bound(hi));
    return Real(NodePtr(n));
}

bool Real::is_rational() const { return node_->kind == Node::Rational; }
const Q& Real::rational() const {
    if (!is_rational()) throw Error(ErrorKind::InvalidArgument, "real is not a closed-form rational");
    return node_->q;
}
bool Real::is_radical() const { return node_->kind == Node::Radical; }

Interval Real::enclose(unsigned bits) const { return enclose_node(*node_, bits); }

double Real::approx() const {
    Interval iv = enclose(64);
    return Q((iv.lo + iv.hi) / 2).get_d();
}

std::string Real::str() const {
    if (is_rational()) return node_->q.get_str();
    if (is_radical()) {
        std::string s = node_->q == 1 ? "" : node_->q.get_str() + "*";
        return s + "sqrt(" + node_->r.get_str() + ")";
    }
    Interval iv = enclose(80);
    mpf_class mid((iv.lo + iv.hi) / 2, 128);
    mp_exp_t exp;
    std::string digits = mid.get_str(exp, 10, 18);
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(digits.begin());
    std::string out;
    if (exp <= 0) {
        out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
    } else if (static_cast<std::size_t>(exp) >= digits.size()) {
        out = digits + std::string(static_cast<std::size_t>(exp) - digits.size(), '0');
    } else {
        out = digits.substr(0, static_cast<std::size_t>(exp)) + "." + digits.substr(static_cast<std::size_t>(exp));
    }
    return std::string("~") + (neg ? "-" : "") + out;
}

Real operator+(const Real& a, const Real& b) {
    const auto &x = *a.node_, &y = *b.node_;
    if (x.kind == Real::Node::Rational && y.kind == Real::Node::Rational) return Real(x.q + y.q);
    if (x.kind == Real::Node::Rational && x.q == 0) return b;
    if (y.kind == Real::Node::Rational && y.q == 0) return a;
    if (x.kind == Real::Node::Radical && y.kind == Real::Node::Radical && x.r == y.r)
        return Real(make_radical(x.q + y.q, x.r.get_num()));
    return Real(make_binary(Real::Node::Add, a.node_, b.node_, std::max(x.mag, y.mag) + 1));
}

Real operator-(const Real& a) {
    const auto& x = *a.node_;
    if (x.kind == Real::Node::Rational) return Real(Q(-x.q));
    if (x.kind == Real::Node::Radical) return Real(make_radical(-x.q, x.r.get_num()));
    return Real(make_unary(Real::Node::Neg, a.node_, x.mag));
}

Real operator-(const Real& a, const Real& b) { return a + (-b); }

Real operator*(const Real& a, const Real& b) {
    const auto &x = *a.node_, &y = *b.node_;
    if (closed_form(x) && closed_form(y)) {
        Q q1, r1, q2, r2;
        split(x, q1, r1);
        split(y, q2, r2);
        return Real(make_radical(q1 * q2, Q(r1 * r2).get_num()));
    }
    if (x.kind == Real::Node::Rational && x.q == 0) return Real(0);
    if (y.kind == Real::Node::Rational && y.q == 0) return Real(0);
    if (x.kind == Real::Node::Rational && x.q == 1) return b;
    if (y.kind == Real::Node::Rational && y.q == 1) return a;
    return Real(make_binary(Real::Node::Mul, a.node_, b.node_, x.mag + y.mag));
}

Real operator/(const Real& a, const Real& b) {
    const auto& y = *b.node_;
    if (y.kind == Real::Node::Rational) {
        if (y.q == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
        return a * Real(Q(1 / y.q));
    }
    if (y.kind == Real::Node::Radical) return a * Real(make_radical(1 / (y.q * y.r), y.r.get_num()));
    long inv_mag = -1;
    for (unsigned bits = 16; bits <= 4 * default_precision(); bits *= 2) {
        Interval iv = b.enclose(bits);
        if (iv.lo > 0 || iv.hi < 0) {
            Q m = iv.lo > 0 ? iv.lo : -iv.hi;
            inv_mag = bit_bound(1 / m);
            break;
        }
    }
    if (inv_mag < 0) throw Error(ErrorKind::UndecidableComparison, "divisor not separated from zero");
    auto n = std::make_shared<Real::Node>();
    n->kind = Real::Node::Inv;
    n->a = b.node_;
    n->mag = inv_mag;
    n->inv_mag = inv_mag;
    return a * Real(NodePtr(n));
}

Real max(const Real& a, const Real& b) {
    if (a.node_ == b.node_) return a;
    if (closed_form(*a.node_) && closed_form(*b.node_)) return compare_closed(*a.node_, *b.node_) >= 0 ? a : b;
    return Real(make_binary(Real::Node::Max, a.node_, b.node_, std::max(a.node_->mag, b.node_->mag)));
}

Real min(const Real& a, const Real& b) {
    if (a.node_ == b.node_) return a;
    if (closed_form(*a.node_) && closed_form(*b.node_)) return compare_closed(*a.node_, *b.node_) <= 0 ? a : b;
    return Real(make_binary(Real::Node::Min, a.node_, b.node_, std::max(a.node_->mag, b.node_->mag)));
}

Real abs(const Real& a) {
    const auto& x = *a.node_;
    if (x.kind == Real::Node::Rational) return Real(Q(abs(x.q)));
    if (x.kind == Real::Node::Radical) return Real(make_radical(abs(x.q), x.r.get_num()));
    return Real(make_unary(Real::Node::Abs, a.node_, x.mag));
}

int compare(const Real& a, const Real& b, unsigned budget) {
    if (a.node_ == b.node_) return 0;
    if (closed_form(*a.node_) && closed_form(*b.node_)) return compare_closed(*a.node_, *b.node_);
    for (unsigned bits = 16; bits <= budget; bits *= 2) {
        Interval x = a.enclose(bits), y = b.enclose(bits);
        if (x.hi < y.lo) return -1;
        if (x.lo > y.hi) return 1;
        if (x.lo == x.hi && y.lo == y.hi && x.lo == y.lo) return 0;
    }
    throw Error(ErrorKind::UndecidableComparison, "values agree to " + std::to_string(budget) + " bits");
}

Tri less_equal(const Real& a, const Real& b, unsigned budget) {
    try {
        return compare(a, b, budget) <= 0 ? Tri::True : Tri::False;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::UndecidableComparison) throw;
        return Tri::Unknown;
    }
}

bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
bool operator==(const Real& a, const Real& b) { return compare(a, b) == 0; }

Real pow(const Real& a, unsigned n) {
    Real result(1), base = a;
    while (n) {
        if (n & 1u) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

namespace {
template <class F>
Real fold_balanced(const std::vector<Real>& v, std::size_t lo, std::size_t hi, F f) {
    if (hi - lo == 1) return v[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return f(fold_balanced(v, lo, mid, f), fold_balanced(v, mid, hi, f));
}
} // namespace

Real max_of(const std::vector<Real>& values) {
    if (values.empty()) return Real(0);
    std::vector<Real> keep = values;
    if (values.size() > 2) {
        // drop candidates certified below the best lower bound
        std::vector<Interval> iv;
        bool ok = true;
        try {
            for (const auto& v : values) iv.push_back(v.enclose(64));
        } catch (const Error&) {
            ok = false;
        }
        if (ok) {
            Q best = iv[0].lo;
            for (const auto& x : iv) best = std::max(best, x.lo);
            keep.clear();
            for (std::size_t i = 0; i < values.size(); ++i)
                if (iv[i].hi >= best) keep.push_back(values[i]);
        }
    }
    return fold_balanced(keep, 0, keep.size(), [](const Real& a, const Real& b) { return max(a, b); });
}

Real sum_of(const std::vector<Real>& values) {
    if (values.empty()) return Real(0);
    return fold_balanced(values, 0, values.size(), [](const Real& a, const Real& b) { return a + b; });
}

} // namespace indban
