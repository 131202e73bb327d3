#include "indban/polynomial.hpp"

#include "indban/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <sstream>

namespace indban {

namespace mp = boost::multiprecision;
using Float = mp::cpp_bin_float_100;
using Complex = mp::cpp_complex_100;

Poly poly_trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

int poly_degree(const Poly& p) {
    Poly t = poly_trim(p);
    return static_cast<int>(t.size()) - 1;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return poly_trim(out);
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return poly_trim(out);
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return poly_trim(out);
}

void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    Poly d = poly_trim(b);
    if (d.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
    r = poly_trim(a);
    q.assign(r.size() >= d.size() ? r.size() - d.size() + 1 : 0, Q(0));
    while (r.size() >= d.size() && !r.empty()) {
        std::size_t shift = r.size() - d.size();
        Q c = r.back() / d.back();
        q[shift] = c;
        for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= c * d[i];
        r = poly_trim(r);
    }
    q = poly_trim(q);
}

Poly poly_mod(const Poly& a, const Poly& b) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    return r;
}

Poly poly_monic(const Poly& p) {
    Poly t = poly_trim(p);
    if (t.empty()) return t;
    Q lc = t.back();
    for (auto& c : t) c /= lc;
    return t;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = poly_trim(a), y = poly_trim(b);
    while (!y.empty()) {
        Poly r = poly_mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return poly_monic(x);
}

Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly out(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * Q(static_cast<long>(i));
    return poly_trim(out);
}

Poly poly_squarefree(const Poly& p) {
    Poly g = poly_gcd(p, poly_derivative(p));
    if (g.size() <= 1) return poly_monic(p);
    Poly q, r;
    poly_divmod(p, g, q, r);
    return poly_monic(q);
}

Q poly_eval(const Poly& p, const Q& x) {
    Q acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<mpz_class> poly_primitive(const Poly& p) {
    Poly t = poly_trim(p);
    mpz_class l = 1;
    for (const auto& c : t) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> z;
    mpz_class g = 0;
    for (const auto& c : t) {
        Q s = c * Q(l);
        z.push_back(s.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num().get_mpz_t());
    }
    if (g == 0) return z;
    if (!z.empty() && z.back() < 0) g = -g;
    for (auto& c : z) c /= g;
    return z;
}

std::string poly_str(const Poly& p, const std::string& var) {
    Poly t = poly_trim(p);
    if (t.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = t.size(); k-- > 0;) {
        if (t[k] == 0) continue;
        Q c = t[k];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Q a = abs(c);
        if (a != 1 || k == 0) os << a.get_str();
        if (k > 0) {
            if (a != 1) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    if (n == 0) return out;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

} // namespace

std::vector<Q> rational_roots(const Poly& p) {
    auto z = poly_primitive(p);
    std::vector<Q> roots;
    if (z.empty()) return roots;
    std::size_t low = 0;
    while (low < z.size() && z[low] == 0) ++low;
    if (low > 0) roots.push_back(0);
    if (low + 1 >= z.size()) return roots;
    auto num = divisors(z[low]);
    auto den = divisors(z.back());
    for (const auto& a : num)
        for (const auto& b : den)
            for (int s : {1, -1}) {
                Q r(a * s, b);
                r.canonicalize();
                if (poly_eval(p, r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

using ModPoly = std::vector<unsigned long>;

unsigned long mod_inv(unsigned long a, unsigned long p) {
    mpz_class x = a, m = p, r;
    mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r.get_ui();
}

unsigned long reduce_mod(const Q& c, unsigned long p) {
    mpz_class P = p;
    mpz_class n = c.get_num() % P, d = c.get_den() % P;
    if (n < 0) n += P;
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "coefficient is not p-integral");
    return (n.get_ui() * mod_inv(d.get_ui(), p)) % p;
}

void trim_mod(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mod_rem(ModPoly a, const ModPoly& b, unsigned long p) {
    trim_mod(a);
    unsigned long inv = mod_inv(b.back(), p);
    while (a.size() >= b.size()) {
        unsigned long c = (a.back() * inv) % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + (p - c) * b[i]) % p;
        trim_mod(a);
    }
    return a;
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const ModPoly& f, unsigned long p) {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return mod_rem(out, f, p);
}

ModPoly mod_pow(ModPoly base, unsigned long e, const ModPoly& f, unsigned long p) {
    ModPoly result{1};
    while (e) {
        if (e & 1) result = mod_mul(result, base, f, p);
        base = mod_mul(base, base, f, p);
        e >>= 1;
    }
    return result;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, unsigned long p) {
    trim_mod(a);
    trim_mod(b);
    while (!b.empty()) {
        ModPoly r = mod_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

} // namespace

bool irreducible_mod_p(const Poly& f, unsigned long p) {
    Poly t = poly_trim(f);
    int n = static_cast<int>(t.size()) - 1;
    if (n < 1) return false;
    ModPoly g(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) g[i] = reduce_mod(t[i], p);
    if (g.back() == 0) return false;
    if (n == 1) return true;
    ModPoly x{0, 1};
    ModPoly h = x;
    for (int i = 1; i <= n / 2; ++i) {
        h = mod_pow(h, p, g, p);
        ModPoly d = h;
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = (d[1] + p - 1) % p;
        ModPoly c = mod_gcd(g, d, p);
        if (c.size() > 1) return false;
    }
    return true;
}

namespace {

Float to_float(const mpz_class& z) { return Float(z.get_str()); }

mpz_class round_to_mpz(const Float& x) {
    Float r = mp::round(x);
    std::string s = r.str(0, std::ios_base::fixed);
    auto dot = s.find('.');
    if (dot != std::string::npos) s = s.substr(0, dot);
    return mpz_class(s);
}

// Roots of a monic polynomial given by its integer coefficients, by Aberth iteration.
std::vector<Complex> numeric_roots(const std::vector<mpz_class>& z) {
    std::size_t n = z.size() - 1;
    std::vector<Float> c(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) c[i] = to_float(z[i]) / to_float(z.back());
    Float bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, Float(mp::abs(c[i])));
    bound += 1;
    std::vector<Complex> r(n);
    const Float pi = boost::math::constants::pi<Float>();
    for (std::size_t k = 0; k < n; ++k) {
        Float ang = 2 * pi * Float(k) / Float(n) + Float("0.4");
        r[k] = Complex(bound * mp::cos(ang) / 2, bound * mp::sin(ang) / 2);
    }
    auto eval = [&](const Complex& x, Complex& fx, Complex& dfx) {
        fx = Complex(c[n]);
        dfx = Complex(0);
        for (std::size_t i = n; i-- > 0;) {
            dfx = dfx * x + fx;
            fx = fx * x + Complex(c[i]);
        }
    };
    const Float tol("1e-90");
    for (int iter = 0; iter < 2000; ++iter) {
        Float worst = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Complex fx, dfx;
            eval(r[k], fx, dfx);
            if (mp::abs(fx) == 0) continue;
            Complex ratio = fx / dfx;
            Complex sum(0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) sum += Complex(1) / (r[k] - r[j]);
            Complex w = ratio / (Complex(1) - ratio * sum);
            r[k] -= w;
            worst = std::max(worst, Float(mp::abs(w) / (1 + mp::abs(r[k]))));
        }
        if (worst < tol) break;
    }
    return r;
}

// G(x) = a^(n-1) F(x / a): monic integer transform of the primitive polynomial F.
std::vector<mpz_class> monic_transform(const std::vector<mpz_class>& F) {
    std::size_t n = F.size() - 1;
    mpz_class a = F.back();
    std::vector<mpz_class> G(F.size());
    mpz_class pw = 1;
    for (std::size_t i = n + 1; i-- > 0;) {
        // coefficient of x^i in a^(n-1) F(x/a) is F_i a^(n-1-i)
        if (i == n) {
            G[i] = 1;
            continue;
        }
        mpz_class e;
        mpz_pow_ui(e.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(n - 1 - i));
        G[i] = F[i] * e;
    }
    (void)pw;
    return G;
}

Poly to_poly(const std::vector<mpz_class>& z) {
    Poly p;
    for (const auto& c : z) p.push_back(Q(c));
    return poly_trim(p);
}

} // namespace

IrreducibilityResult test_irreducible(const Poly& p) {
    IrreducibilityResult res;
    Poly t = poly_trim(p);
    int n = static_cast<int>(t.size()) - 1;
    if (n < 1) {
        res.method = "constant";
        return res;
    }
    if (n > 8) throw Error(ErrorKind::CapExceeded, "irreducibility test limited to degree 8");
    if (n == 1) {
        res.irreducible = true;
        res.method = "linear";
        return res;
    }
    auto roots = rational_roots(t);
    if (!roots.empty()) {
        res.method = "rational root " + roots.front().get_str();
        res.factor = {-roots.front(), Q(1)};
        return res;
    }
    if (n <= 3) {
        res.irreducible = true;
        res.method = "no rational root";
        return res;
    }
    auto F = poly_primitive(t);
    for (unsigned long q : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul, 43ul, 47ul}) {
        mpz_class lc = F.back() % q;
        if (lc == 0) continue;
        if (irreducible_mod_p(to_poly(F), q)) {
            res.irreducible = true;
            res.method = "irreducible mod " + std::to_string(q);
            return res;
        }
    }
    auto G = monic_transform(F);
    auto r = numeric_roots(G);
    Poly Gp = to_poly(G);
    const Float eps("1e-40");
    for (int d = 2; d <= n / 2; ++d) {
        std::vector<int> sel(static_cast<std::size_t>(n), 0);
        std::fill(sel.begin(), sel.begin() + d, 1);
        std::sort(sel.begin(), sel.end());
        do {
            std::vector<Complex> prod{Complex(1)};
            for (int k = 0; k < n; ++k) {
                if (!sel[static_cast<std::size_t>(k)]) continue;
                std::vector<Complex> next(prod.size() + 1, Complex(0));
                for (std::size_t i = 0; i < prod.size(); ++i) {
                    next[i + 1] += prod[i];
                    next[i] -= prod[i] * r[static_cast<std::size_t>(k)];
                }
                prod = std::move(next);
            }
            bool integral = true;
            Poly cand;
            for (const auto& c : prod) {
                mpz_class zr = round_to_mpz(c.real());
                if (mp::abs(c.imag()) > eps || mp::abs(c.real() - to_float(zr)) > eps) {
                    integral = false;
                    break;
                }
                cand.push_back(Q(zr));
            }
            if (!integral) continue;
            Poly q, rem;
            poly_divmod(Gp, cand, q, rem);
            if (rem.empty()) {
                // undo the transform: F(x) divisible by cand(a x) up to content
                Poly back;
                Q a(F.back());
                Q pw = 1;
                for (const auto& c : cand) {
                    back.push_back(c * pw);
                    pw *= a;
                }
                res.factor = poly_monic(back);
                res.method = "numeric recombination";
                return res;
            }
        } while (std::next_permutation(sel.begin(), sel.end()));
    }
    res.irreducible = true;
    res.method = "no factor among root-subset products";
    return res;
}

namespace {

std::vector<Poly> sturm_sequence(const Poly& f) {
    std::vector<Poly> s{poly_trim(f), poly_derivative(f)};
    while (!s.back().empty()) {
        Poly r = poly_mod(s[s.size() - 2], s.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        s.push_back(r);
    }
    if (s.back().empty()) s.pop_back();
    return s;
}

int variations(const std::vector<Poly>& s, const Q& x) {
    int count = 0, last = 0;
    for (const auto& p : s) {
        Q v = poly_eval(p, x);
        int sg = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++count;
        last = sg;
    }
    return count;
}

Q root_bound(const Poly& f) {
    Poly t = poly_trim(f);
    Q b = 0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) b = std::max(b, Q(abs(t[i] / t.back())));
    return b + 1;
}

} // namespace

int sturm_count(const Poly& f, const Q& a, const Q& b) {
    auto s = sturm_sequence(f);
    return variations(s, a) - variations(s, b);
}

std::vector<std::pair<Q, Q>> isolate_real_roots(const Poly& f) {
    Poly sf = poly_squarefree(f);
    auto s = sturm_sequence(sf);
    Q B = root_bound(sf);
    std::vector<std::pair<Q, Q>> out;
    std::vector<std::pair<Q, Q>> stack{{-B, B}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int c = variations(s, lo) - variations(s, hi);
        if (c == 0) continue;
        if (c == 1) {
            if (poly_eval(sf, lo) == 0) {
                Q eps = (hi - lo) / 2;
                while (variations(s, lo) - variations(s, lo + eps) > 0) eps /= 2;
                lo += eps;
            }
            out.emplace_back(lo, hi);
            continue;
        }
        Q mid = (lo + hi) / 2;
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Continued-fraction convergents of a positive float.
std::vector<Q> convergents(Float x, int count) {
    std::vector<Q> out;
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    for (int i = 0; i < count; ++i) {
        Float fl = mp::floor(x);
        mpz_class a = round_to_mpz(fl);
        mpz_class h = a * h0 + h1, k = a * k0 + k1;
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        Q c(h, k);
        c.canonicalize();
        out.push_back(c);
        Float frac = x - fl;
        if (frac < Float("1e-60")) break;
        x = 1 / frac;
    }
    return out;
}

Q float_to_q_floor(const Float& x, unsigned bits) {
    Float s = mp::ldexp(x, static_cast<int>(bits));
    mpz_class z = round_to_mpz(mp::floor(s));
    mpz_class den = 1;
    den <<= bits;
    Q q(z, den);
    q.canonicalize();
    return q;
}

// Positive real root of the squarefree part of g near the numeric value t.
Real pick_root(const Poly& g, const Float& t) {
    auto ivs = isolate_real_roots(g);
    Q qt = float_to_q_floor(t, 200);
    std::size_t best = ivs.size();
    Q best_dist = -1;
    for (std::size_t i = 0; i < ivs.size(); ++i) {
        Q d = 0;
        if (qt < ivs[i].first) d = ivs[i].first - qt;
        if (qt > ivs[i].second) d = qt - ivs[i].second;
        if (best_dist < 0 || d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    if (best == ivs.size()) throw Error(ErrorKind::UnsupportedExtension, "no real root near the embedding modulus");
    return Real::root(poly_squarefree(g), ivs[best].first, ivs[best].second);
}

} // namespace

Embedding choose_embedding(const Poly& f) {
    Poly t = poly_trim(f);
    if (t.size() < 2) throw Error(ErrorKind::InvalidArgument, "embedding of a constant polynomial");
    Embedding e;
    auto ivs = isolate_real_roots(t);
    if (!ivs.empty()) {
        auto [lo, hi] = ivs.back();
        e.real = true;
        Real alpha = Real::root(poly_squarefree(t), lo, hi);
        e.re = alpha.approx();
        e.modulus = abs(alpha);
        e.description = "largest real root ~" + std::to_string(e.re);
        // closed form when alpha^2 is rational: x^2 - r divides f
        Interval sq = (alpha * alpha).enclose(340);
        Q mid = (sq.lo + sq.hi) / 2;
        if (mid > 0)
            for (const Q& r : convergents(Float(mid.get_num().get_str()) / Float(mid.get_den().get_str()), 40)) {
                if (sq.contains(r) && poly_degree(poly_mod(t, Poly{-r, 0, 1})) < 0) {
                    e.modulus = Real::sqrt(r);
                    break;
                }
            }
        return e;
    }
    auto F = poly_primitive(t);
    auto G = monic_transform(F);
    auto roots = numeric_roots(G);
    Float a = to_float(F.back());
    std::size_t pick = 0;
    bool found = false;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (roots[i].imag() <= 0) continue;
        if (!found || roots[i].real() > roots[pick].real() + Float("1e-50") ||
            (mp::abs(roots[i].real() - roots[pick].real()) <= Float("1e-50") && roots[i].imag() > roots[pick].imag())) {
            pick = i;
            found = true;
        }
    }
    Complex alpha = roots[pick] / Complex(a);
    e.re = static_cast<double>(alpha.real());
    e.im = static_cast<double>(alpha.imag());
    e.description = "complex root ~" + std::to_string(e.re) + (e.im >= 0 ? "+" : "") + std::to_string(e.im) + "i";
    Float mod2 = mp::norm(alpha);
    std::size_t n = t.size() - 1;
    // Rational |alpha|^2 = r is certified by gcd(f, x^n f(r/x)) being nontrivial.
    for (const Q& r : convergents(mod2, 40)) {
        if (r.get_den() > mpz_class("1000000000000")) break;
        if (mp::abs(Float(r.get_num().get_str()) / Float(r.get_den().get_str()) - mod2) > Float("1e-60")) continue;
        Poly rev(n + 1);
        Q pw = 1;
        for (std::size_t i = 0; i <= n; ++i) {
            rev[n - i] = t[i] * pw;
            pw *= r;
        }
        Poly g = poly_gcd(t, rev);
        if (g.size() > 1) {
            Complex conj(alpha.real(), -alpha.imag());
            Complex img = Complex(Float(r.get_num().get_str()) / Float(r.get_den().get_str())) / alpha;
            if (mp::abs(img - conj) < Float("1e-60")) {
                e.modulus = Real::sqrt(r);
                return e;
            }
        }
    }
    // Otherwise |beta|^2 is a root of prod_{i<j}(x - beta_i beta_j) over the roots of G.
    std::vector<Complex> pc{Complex(1)};
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            Complex v = roots[i] * roots[j];
            std::vector<Complex> next(pc.size() + 1, Complex(0));
            for (std::size_t k = 0; k < pc.size(); ++k) {
                next[k + 1] += pc[k];
                next[k] -= pc[k] * v;
            }
            pc = std::move(next);
        }
    Poly S;
    for (const auto& c : pc) {
        mpz_class z = round_to_mpz(c.real());
        if (mp::abs(c.real() - to_float(z)) > Float("1e-30") || mp::abs(c.imag()) > Float("1e-30"))
            throw Error(ErrorKind::UnsupportedExtension, "embedding modulus could not be certified");
        S.push_back(Q(z));
    }
    Poly S2(2 * S.size() - 1);
    for (std::size_t i = 0; i < S.size(); ++i) S2[2 * i] = S[i];
    Real beta = pick_root(poly_trim(S2), mp::abs(roots[pick]));
    e.modulus = beta / Real(Q(F.back()));
    return e;
}

} // namespace indban
