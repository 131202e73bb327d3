#include "indban/extension.hpp"

#include "indban/error.hpp"

#include <algorithm>

namespace indban {

namespace {

Vec reduce(const Poly& p, const Poly& f, std::size_t n) {
    Poly r = poly_mod(p, f);
    Vec v(n);
    for (std::size_t i = 0; i < r.size() && i < n; ++i) v[i] = r[i];
    return v;
}

bool p_integral(const Q& q, unsigned long p) {
    mpz_class d = q.get_den();
    return mpz_divisible_ui_p(d.get_mpz_t(), p) == 0;
}

} // namespace

FieldExtension FieldExtension::build(const ValuedField& base, const Poly& minpoly, const std::vector<Vec>& generators) {
    Poly f = poly_trim(minpoly);
    int deg = poly_degree(f);
    if (deg < 1) throw Error(ErrorKind::InvalidArgument, "minimal polynomial must have positive degree");
    if (static_cast<std::size_t>(deg) > kDegreeCap)
        throw Error(ErrorKind::CapExceeded, "extension degree above " + std::to_string(kDegreeCap));
    auto irr = test_irreducible(f);
    if (!irr.irreducible)
        throw Error(ErrorKind::NotIrreducible, poly_str(f) + " has the factor " + poly_str(irr.factor));

    FieldExtension e;
    e.base_ = base;
    e.n_ = static_cast<std::size_t>(deg);
    e.f_ = poly_monic(f);
    const std::size_t n = e.n_;
    for (std::size_t i = 0; i < n; ++i) e.labels_.push_back(i == 0 ? "1" : i == 1 ? "a" : "a^" + std::to_string(i));

    e.mult_ = Matrix(n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly mono(i + j + 1);
            mono[i + j] = 1;
            Vec v = reduce(mono, e.f_, n);
            for (std::size_t k = 0; k < n; ++k)
                if (v[k] != 0) e.mult_.set(k, i * n + j, v[k]);
        }

    // generator matrices: column j is sigma(a)^j
    auto matrix_of = [&](const Vec& image) {
        Matrix m(n, n);
        Vec power = e.one();
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k)
                if (power[k] != 0) m.set(k, j, power[k]);
            power = e.multiply(power, image);
        }
        return m;
    };
    std::vector<Matrix> gens;
    for (std::size_t g = 0; g < generators.size(); ++g) {
        Vec image = generators[g];
        if (image.size() > n) throw Error(ErrorKind::DimensionMismatch, "generator image longer than the degree");
        image.resize(n);
        Matrix m = matrix_of(image);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Vec lhs = m.apply(e.mult_.column_dense(i * n + j));
                Vec rhs = e.multiply(m.column_dense(i), m.column_dense(j));
                if (lhs != rhs)
                    throw Error(ErrorKind::NotAutomorphism, "generator " + std::to_string(g) + " fails on e_" +
                                                                std::to_string(i) + " e_" + std::to_string(j));
            }
        if (!invertible(m)) throw Error(ErrorKind::NotAutomorphism, "generator " + std::to_string(g) + " is not bijective");
        gens.push_back(std::move(m));
    }

    e.galois_.push_back(Matrix::identity(n));
    for (std::size_t i = 0; i < e.galois_.size(); ++i) {
        for (const auto& g : gens) {
            Matrix prod = g * e.galois_[i];
            if (std::find(e.galois_.begin(), e.galois_.end(), prod) == e.galois_.end()) {
                e.galois_.push_back(std::move(prod));
                if (e.galois_.size() > n)
                    throw Error(ErrorKind::GroupOrderMismatch, "generated group exceeds the degree " + std::to_string(n));
            }
        }
    }
    if (e.galois_.size() != n)
        throw Error(ErrorKind::GroupOrderMismatch, "group of order " + std::to_string(e.galois_.size()) +
                                                       " for degree " + std::to_string(n));
    e.compose_.assign(n, std::vector<std::size_t>(n));
    e.inverse_.assign(n, 0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            e.compose_[s][t] = e.index_of(e.galois_[s] * e.galois_[t]);
            if (e.compose_[s][t] == 0) e.inverse_[s] = t;
        }

    if (base.archimedean_backend()) {
        Embedding emb = choose_embedding(e.f_);
        std::vector<NormValue> w;
        for (std::size_t i = 0; i < n; ++i) w.push_back(NormValue::arch(pow(emb.modulus, static_cast<unsigned>(i))));
        e.norm_space_ = share(DiagSpace::flat(base, e.labels_, std::move(w), Flavor::Sum));
        e.norm_desc_ = "SUM over the power basis, weights |a|^i with a the " + emb.description;
    } else {
        unsigned long p = base.prime();
        for (const auto& c : e.f_)
            if (!p_integral(c, p))
                throw Error(ErrorKind::UnsupportedExtension, "minimal polynomial is not " + std::to_string(p) + "-integral");
        if (!irreducible_mod_p(e.f_, p))
            throw Error(ErrorKind::UnsupportedExtension,
                        "only unramified extensions (minimal polynomial irreducible mod " + std::to_string(p) + ")");
        e.norm_space_ = share(DiagSpace::flat(base, e.labels_, std::vector<NormValue>(n, base.one()), Flavor::Max));
        e.norm_desc_ = "MAX over the power basis, all weights 1 (orthonormal, unramified)";
    }
    return e;
}

Vec FieldExtension::multiply(const Vec& a, const Vec& b) const {
    Vec out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (b[j] == 0) continue;
            Q c = a[i] * b[j];
            for (const auto& [k, x] : mult_.column(i * n_ + j)) out[k] += c * x;
        }
    }
    return out;
}

Matrix FieldExtension::mult_by(const Vec& a) const {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < n_; ++j) cols.push_back(multiply(a, unit_vector(n_, j)));
    return Matrix::from_columns(n_, cols);
}

Vec FieldExtension::inverse(const Vec& a) const {
    if (vec_is_zero(a)) throw Error(ErrorKind::InvalidArgument, "zero has no inverse");
    Matrix x;
    solve(mult_by(a), Matrix::column_vector(one()), x);
    return x.column_dense(0);
}

Vec FieldExtension::from_rational(const Q& q) const {
    Vec v(n_);
    v[0] = q;
    return v;
}

Q FieldExtension::norm_K(const Vec& a) const { return determinant(mult_by(a)); }

Q FieldExtension::trace(const Vec& a) const {
    Matrix m = mult_by(a);
    Q t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += m.at(i, i);
    return t;
}

const Matrix& FieldExtension::galois(std::size_t s) const {
    if (s >= galois_.size())
        throw Error(ErrorKind::IndexOutOfRange,
                    "galois index " + std::to_string(s) + " but the group has order " + std::to_string(galois_.size()));
    return galois_[s];
}

Vec FieldExtension::apply_galois(std::size_t s, const Vec& a) const {
    if (a.size() != n_) throw Error(ErrorKind::DimensionMismatch, "element length differs from the degree");
    return galois(s).apply(a);
}

std::size_t FieldExtension::index_of(const Matrix& sigma) const {
    for (std::size_t i = 0; i < galois_.size(); ++i)
        if (galois_[i] == sigma) return i;
    throw Error(ErrorKind::InvalidArgument, "matrix is not a group element");
}

std::string FieldExtension::element_str(const Vec& a) const {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Q c = a[i];
        bool neg = c < 0;
        if (neg) c = -c;
        s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (i == 0)
            s += format_rational(c);
        else
            s += (c == 1 ? "" : format_rational(c) + "*") + labels_[i];
    }
    return s.empty() ? "0" : s;
}

SubmultiplicativityReport check_submultiplicative(const FieldExtension& ext) {
    const auto& sp = *ext.norm_space();
    std::size_t n = ext.degree();
    SubmultiplicativityReport r;
    r.worst_ratio = ext.base().zero();
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            NormValue lhs = sp.norm(ext.mult_table().column_dense(i * n + j));
            NormValue ratio = lhs / (sp.weight(i) * sp.weight(j));
            if (first || compare(ratio, r.worst_ratio) > 0) {
                r.worst_ratio = ratio;
                r.worst_i = i;
                r.worst_j = j;
                first = false;
            }
        }
    r.holds = less_equal(r.worst_ratio, ext.base().one()) == Tri::True;
    return r;
}

} // namespace indban
