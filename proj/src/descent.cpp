#include "indban/descent.hpp"

#include "indban/error.hpp"

#include <functional>
#include <random>

namespace indban {

const char* to_string(DeltaOrder o) { return o == DeltaOrder::TauSigma ? "f(ts)" : "f(st)"; }

namespace {

Matrix col(const Vec& v) { return Matrix::column_vector(v); }

AxiomResult agree(const std::string& name, const Matrix& lhs, const Matrix& rhs,
                  const std::function<std::string(std::size_t)>& describe) {
    AxiomResult r{name, true, ""};
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        r.pass = false;
        r.witness = "shape mismatch";
        return r;
    }
    for (std::size_t c = 0; c < lhs.cols(); ++c)
        if (lhs.column(c) != rhs.column(c)) {
            r.pass = false;
            r.witness = describe(c);
            return r;
        }
    return r;
}

std::function<std::string(std::size_t)> index_namer(std::vector<std::size_t> radices,
                                                    std::vector<std::vector<std::string>> names) {
    return [radices = std::move(radices), names = std::move(names)](std::size_t c) {
        std::vector<std::string> parts(radices.size());
        for (std::size_t k = radices.size(); k-- > 0;) {
            parts[k] = names[k][c % radices[k]];
            c /= radices[k];
        }
        std::string out = "(";
        for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? ", " : "") + parts[k];
        return out + ")";
    };
}

std::vector<std::string> group_names(const FieldExtension& ext) {
    std::vector<std::string> out;
    for (std::size_t s = 0; s < ext.group_order(); ++s) out.push_back("s" + std::to_string(s));
    return out;
}

std::vector<std::string> numbered(std::size_t n, const std::string& prefix) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

// a ⊗ r -> a ⊗ 1 ⊗ r
Matrix insert_unit(std::size_t n, std::size_t rest) {
    return kron(kron(Matrix::identity(n), col(unit_vector(n, 0))), Matrix::identity(rest));
}

// op(x, y) such that Δf(x, y) = f(op(x, y)).
std::size_t delta_op(const FieldExtension& ext, DeltaOrder order, std::size_t x, std::size_t y) {
    return order == DeltaOrder::TauSigma ? ext.compose(y, x) : ext.compose(x, y);
}

} // namespace

Cogebroid build_cogebroid(const ExtPtr& ext) {
    if (!ext) throw Error(ErrorKind::InvalidArgument, "missing extension");
    const std::size_t n = ext->degree();
    if (n > kDegreeCap) throw Error(ErrorKind::CapExceeded, "degree above " + std::to_string(kDegreeCap));
    const Matrix& M = ext->mult_table();
    const Matrix In = Matrix::identity(n), In2 = Matrix::identity(n * n);

    Cogebroid c;
    c.ext = ext;
    c.carrier = tensor(ext->norm_space(), ext->norm_space());
    c.left_action = kron(M, In);
    c.right_action = kron(In, M);
    c.counit = M;
    c.mult = kron(M, M) * kron(In, kron(swap_matrix(n, n), In));
    c.unit = unit_vector(n * n, 0);
    c.comult = insert_unit(n, n);

    const auto& L = ext->labels();
    auto pair_names = index_namer({n, n}, {L, L});
    auto triple_names = index_namer({n, n, n}, {L, L, L});
    auto& ax = c.report.axioms;

    ax.push_back(agree("counit left-linear", c.counit * c.left_action, M * kron(In, c.counit), triple_names));
    ax.push_back(agree("counit right-linear", c.counit * c.right_action, M * kron(c.counit, In), triple_names));
    ax.push_back(agree("comult left-linear", c.comult * c.left_action, kron(M, In2) * kron(In, c.comult), triple_names));
    ax.push_back(agree("comult right-linear", c.comult * c.right_action, kron(In2, M) * kron(c.comult, In), triple_names));
    ax.push_back(agree("coassociativity", kron(c.comult, In) * c.comult, kron(In, c.comult) * c.comult, pair_names));
    ax.push_back(agree("left counit", kron(c.counit, In) * c.comult, In2, pair_names));
    ax.push_back(agree("right counit", kron(In, c.counit) * c.comult, In2, pair_names));
    ax.push_back(agree("associativity", c.mult * kron(c.mult, In2), c.mult * kron(In2, c.mult),
                       index_namer({n * n, n * n, n * n}, {numbered(n * n, "x"), numbered(n * n, "x"), numbered(n * n, "x")})));
    ax.push_back(agree("left unit", c.mult * kron(col(c.unit), In2), In2, pair_names));
    ax.push_back(agree("right unit", c.mult * kron(In2, col(c.unit)), In2, pair_names));

    if (n <= kQuotientDegreeCap) {
        BimoduleInput in{c.carrier.space, c.carrier.space, c.right_action, c.left_action, M, ext->one()};
        c.quotient = bimodule_tensor(in);
        const auto& qt = *c.quotient;
        Matrix canon = kron(In, kron(M, In)); // (x⊗y)⊗(z⊗w) -> x⊗yz⊗w
        Matrix amb(n * n * n * n, n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) amb.set(((i * n) * n) * n + j, i * n + j, Q(1));
        Matrix comult_q = qt.projection * amb;
        Matrix through = canon * qt.lift;
        bool ok = (canon * qt.relations).is_zero() && through.rows() == through.cols() && invertible(through) &&
                  through * comult_q == c.comult;
        c.quotient_verified = ok;
        c.model_note = "explicit (L⊗L)⊗_L(L⊗L) quotient of dimension " + std::to_string(qt.dim()) +
                       (ok ? ", identified with L⊗L⊗L" : ", identification failed");
        ax.push_back({"quotient model", ok, ok ? "" : c.model_note});
    } else {
        c.model_note = "canonical model L⊗L⊗L";
    }
    return c;
}

TwistedFunctions twisted_functions(const ExtPtr& ext, DeltaOrder order) {
    const std::size_t n = ext->degree(), g = ext->group_order(), d = g * n;
    const Matrix& M = ext->mult_table();
    TwistedFunctions t;
    t.ext = ext;
    t.order = order;
    t.carrier = contracting_product(std::vector<SpacePtr>(g, ext->norm_space())).space;

    t.left_action = Matrix(d, n * d);
    t.right_action = Matrix(d, d * n);
    t.mult = Matrix(d, d * d);
    t.unit = Vec(d);
    t.counit = Matrix(n, d);
    t.comult = Matrix(g * g * n, d);
    for (std::size_t s = 0; s < g; ++s) {
        t.unit[s * n] = 1;
        for (std::size_t k = 0; k < n; ++k) {
            if (s == 0) t.counit.set(k, k, Q(1));
            for (std::size_t l = 0; l < n; ++l) {
                Vec left = ext->multiply(ext->apply_galois(s, unit_vector(n, l)), unit_vector(n, k));
                Vec prod = M.column_dense(k * n + l);
                for (std::size_t r = 0; r < n; ++r) {
                    if (left[r] != 0) t.left_action.set(s * n + r, l * d + s * n + k, left[r]);
                    if (prod[r] != 0) {
                        t.right_action.set(s * n + r, (s * n + k) * n + l, prod[r]);
                        t.mult.set(s * n + r, (s * n + k) * d + s * n + l, prod[r]);
                    }
                }
            }
            for (std::size_t x = 0; x < g; ++x)
                for (std::size_t y = 0; y < g; ++y)
                    if (delta_op(*ext, order, x, y) == s) t.comult.set((x * g + y) * n + k, s * n + k, Q(1));
        }
    }

    const Matrix In = Matrix::identity(n), Id = Matrix::identity(d);
    Matrix dl(g * g * g * n, g * g * n), dr(g * g * g * n, g * g * n), e1(d, g * g * n), e2(d, g * g * n);
    for (std::size_t x = 0; x < g; ++x)
        for (std::size_t y = 0; y < g; ++y)
            for (std::size_t k = 0; k < n; ++k) {
                std::size_t src = (x * g + y) * n + k;
                // (Δ⊗id)F(s, t, r) = F(op(s, t), r) and (id⊗Δ)F(s, t, r) = F(s, op(t, r))
                for (std::size_t z = 0; z < g; ++z)
                    for (std::size_t w = 0; w < g; ++w)
                        if (delta_op(*ext, order, z, w) == x) dl.set(((z * g + w) * g + y) * n + k, src, Q(1));
                for (std::size_t tt = 0; tt < g; ++tt)
                    for (std::size_t r = 0; r < g; ++r)
                        if (delta_op(*ext, order, tt, r) == y) dr.set(((x * g + tt) * g + r) * n + k, src, Q(1));
                if (x == 0) e1.set(y * n + k, src, Q(1));
                if (y == 0) e2.set(x * n + k, src, Q(1));
            }

    auto names = index_namer({g, n}, {group_names(*ext), ext->labels()});
    auto& ax = t.report.axioms;
    ax.push_back(agree("left action", t.left_action * kron(In, t.left_action), t.left_action * kron(M, Id),
                       index_namer({n, n, d}, {ext->labels(), ext->labels(), numbered(d, "f")})));
    ax.push_back(agree("left action unit", t.left_action * kron(col(ext->one()), Id), Id, names));
    ax.push_back(agree("right action", t.right_action * kron(t.right_action, In), t.right_action * kron(Id, M),
                       index_namer({d, n, n}, {numbered(d, "f"), ext->labels(), ext->labels()})));
    ax.push_back(agree("right action unit", t.right_action * kron(Id, col(ext->one())), Id, names));
    ax.push_back(agree("coassociativity", dl * t.comult, dr * t.comult, names));
    ax.push_back(agree("left counit", e1 * t.comult, Id, names));
    ax.push_back(agree("right counit", e2 * t.comult, Id, names));
    return t;
}

bool PhiReport::all_identities() const {
    for (const auto& a : identities)
        if (!a.pass) return false;
    return true;
}

namespace {

std::optional<Vec> find_normal_basis(const FieldExtension& ext, std::mt19937& rng) {
    const std::size_t n = ext.degree(), g = ext.group_order();
    auto test = [&](const Vec& b) {
        std::vector<Vec> cols;
        for (std::size_t s = 0; s < g; ++s) cols.push_back(ext.apply_galois(s, b));
        return g == n && determinant(Matrix::from_columns(n, cols)) != 0;
    };
    std::vector<Vec> candidates;
    for (std::size_t i = 0; i < n; ++i) candidates.push_back(unit_vector(n, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) candidates.push_back(vec_add(unit_vector(n, i), unit_vector(n, j)));
    for (const auto& b : candidates)
        if (test(b)) return b;
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int tries = 0; tries < 200; ++tries) {
        Vec b(n);
        for (auto& x : b) x = coeff(rng);
        if (test(b)) return b;
    }
    return std::nullopt;
}

} // namespace

PhiReport build_phi(const Cogebroid& c, DeltaOrder order, unsigned seed, std::size_t samples) {
    const FieldExtension& ext = *c.ext;
    const std::size_t n = ext.degree(), g = ext.group_order();
    const Matrix In = Matrix::identity(n);
    TwistedFunctions tf = twisted_functions(c.ext, order);

    PhiReport r;
    r.order = order;
    r.phi = Matrix(g * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t s = 0; s < g; ++s) {
                Vec v = ext.multiply(ext.apply_galois(s, unit_vector(n, i)), unit_vector(n, j));
                for (std::size_t k = 0; k < n; ++k)
                    if (v[k] != 0) r.phi.set(s * n + k, i * n + j, v[k]);
            }
    r.determinant = g == n ? determinant(r.phi) : Q(0);
    r.bijective = r.determinant != 0;
    if (!r.bijective)
        throw Error(ErrorKind::SingularComparison, "comparison map has determinant zero; presentation is not Galois");
    std::mt19937 rng(seed);
    r.normal_basis_element = find_normal_basis(ext, rng);

    // identification of L⊗L⊗L with functions on Γ×Γ
    Matrix phi2(g * g * n, n * n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t s = 0; s < g; ++s)
                    for (std::size_t t = 0; t < g; ++t) {
                        std::size_t inner = order == DeltaOrder::TauSigma ? s : t;
                        std::size_t outer = order == DeltaOrder::TauSigma ? t : s;
                        Vec v = ext.multiply(ext.apply_galois(inner, unit_vector(n, x)), unit_vector(n, y));
                        v = ext.multiply(ext.apply_galois(outer, v), unit_vector(n, b));
                        for (std::size_t k = 0; k < n; ++k)
                            if (v[k] != 0) phi2.set((s * g + t) * n + k, (x * n + y) * n + b, v[k]);
                    }

    const auto& L = ext.labels();
    auto pair_names = index_namer({n, n}, {L, L});
    auto& id = r.identities;
    id.push_back(agree("algebra morphism", r.phi * c.mult, tf.mult * kron(r.phi, r.phi),
                       index_namer({n * n, n * n}, {numbered(n * n, "x"), numbered(n * n, "x")})));
    id.push_back(agree("unit", r.phi * col(c.unit), col(tf.unit), pair_names));
    id.push_back(agree("coalgebra morphism", tf.comult * r.phi, phi2 * c.comult, pair_names));
    id.push_back(agree("counit", tf.counit * r.phi, c.counit, pair_names));
    id.push_back(agree("left action", r.phi * c.left_action, tf.left_action * kron(In, r.phi),
                       index_namer({n, n, n}, {L, L, L})));
    id.push_back(agree("right action", r.phi * c.right_action, tf.right_action * kron(r.phi, In),
                       index_namer({n, n, n}, {L, L, L})));
    for (const auto& a : tf.report.axioms) id.push_back({"functions: " + a.name, a.pass, a.witness});

    const DiagSpace& dom = *c.carrier.space;
    const DiagSpace& cod = *tf.carrier;
    r.norm = operator_norm_or_bound(dom, cod, r.phi);
    r.inverse_norm = operator_norm_or_bound(cod, dom, inverse(r.phi));

    const DiagSpace& Ls = *ext.norm_space();
    if (ext.base().archimedean_backend()) {
        r.norm_model = ext.norm_description() + " (norm-model-dependent)";
        std::uniform_int_distribution<int> coeff(-3, 3), terms(1, 3);
        for (std::size_t k = 0; k < samples; ++k) {
            std::vector<std::pair<Vec, Vec>> dec(static_cast<std::size_t>(terms(rng)));
            NormValue rhs = NormValue::arch(Q(0));
            for (auto& [a, b] : dec) {
                a.assign(n, 0);
                b.assign(n, 0);
                for (auto& x : a) x = coeff(rng);
                for (auto& x : b) x = coeff(rng);
                rhs = rhs + Ls.norm(a) * Ls.norm(b);
            }
            for (std::size_t s = 0; s < g; ++s) {
                Vec lhs(n);
                for (const auto& [a, b] : dec) lhs = vec_add(lhs, ext.multiply(ext.apply_galois(s, a), b));
                ++r.samples;
                if (less_equal(Ls.norm(lhs), rhs) == Tri::False) ++r.violations;
            }
        }
    } else {
        r.norm_model = ext.norm_description() + " (orthonormal)";
    }
    return r;
}

bool PairingReport::all_pass() const {
    for (const auto& a : checks)
        if (!a.pass) return false;
    return nondegenerate;
}

PairingReport pairing_reports(const Cogebroid& c) {
    const FieldExtension& ext = *c.ext;
    const std::size_t n = ext.degree(), n2 = n * n;
    const Matrix& M = ext.mult_table();
    auto unit = [n](std::size_t r, std::size_t cc) {
        Matrix f(n, n);
        f.set(r, cc, Q(1));
        return f;
    };
    std::vector<Matrix> hom;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t cc = 0; cc < n; ++cc) hom.push_back(unit(r, cc));
    auto e = [n](std::size_t i) { return unit_vector(n, i); };

    // <f, z> for z in L⊗L
    auto pair1 = [&](const Matrix& f, const Vec& z) {
        Vec out(n);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                if (z[p * n + q] != 0) out = vec_add(out, vec_scale(z[p * n + q], ext.multiply(f.apply(e(p)), e(q))));
        return out;
    };

    PairingReport rep;
    AxiomResult comp{"composition law", true, ""};
    for (std::size_t a = 0; a < hom.size() && comp.pass; ++a)
        for (std::size_t b = 0; b < hom.size() && comp.pass; ++b) {
            Matrix fg = hom[a] * hom[b];
            for (std::size_t x = 0; x < n2 && comp.pass; ++x) {
                Vec lhs = pair1(fg, unit_vector(n2, x));
                Vec delta = c.comult.column_dense(x);
                Vec rhs(n);
                for (std::size_t p = 0; p < n; ++p)
                    for (std::size_t q = 0; q < n; ++q)
                        for (std::size_t w = 0; w < n; ++w) {
                            const Q& u = delta[(p * n + q) * n + w];
                            if (u == 0) continue;
                            Vec inner = ext.multiply(hom[b].apply(e(p)), e(q));
                            rhs = vec_add(rhs, vec_scale(u, ext.multiply(hom[a].apply(inner), e(w))));
                        }
                if (lhs != rhs) {
                    comp.pass = false;
                    comp.witness = "f=" + std::to_string(a) + " g=" + std::to_string(b) + " x=" + std::to_string(x);
                }
            }
        }
    rep.checks.push_back(comp);

    AxiomResult second{"second pairing", true, ""};
    for (std::size_t a = 0; a < hom.size() && second.pass; ++a) {
        Matrix df = hom[a] * M; // Δ(f)(u⊗v) = f(uv)
        for (std::size_t x = 0; x < n2 && second.pass; ++x)
            for (std::size_t y = 0; y < n2 && second.pass; ++y) {
                std::size_t i = x / n, j = x % n, k = y / n, l = y % n;
                Vec lhs = ext.multiply(ext.multiply(df.apply(unit_vector(n2, i * n + k)), e(j)), e(l));
                Vec rhs = pair1(hom[a], c.mult.column_dense(x * n2 + y));
                if (lhs != rhs) {
                    second.pass = false;
                    second.witness = "f=" + std::to_string(a) + " x=" + std::to_string(x) + " y=" + std::to_string(y);
                }
            }
    }
    rep.checks.push_back(second);

    Matrix trace_pairing(n2, n2);
    for (std::size_t a = 0; a < hom.size(); ++a)
        for (std::size_t x = 0; x < n2; ++x) {
            Q t = ext.trace(pair1(hom[a], unit_vector(n2, x)));
            if (t != 0) trace_pairing.set(a, x, t);
        }
    rep.nondegenerate = invertible(trace_pairing);
    rep.checks.push_back({"non-degenerate", rep.nondegenerate, rep.nondegenerate ? "" : "trace pairing singular"});
    return rep;
}

StructureReport check_cog_comodule(const FieldExtension& ext, const CogComodule& m) {
    const std::size_t n = ext.degree(), d = m.dim;
    if (m.l_action.rows() != d || m.l_action.cols() != n * d || m.coaction.rows() != n * d || m.coaction.cols() != d)
        throw Error(ErrorKind::DimensionMismatch, "comodule structure does not fit dimension " + std::to_string(d));
    const Matrix& M = ext.mult_table();
    const Matrix In = Matrix::identity(n), Id = Matrix::identity(d);
    auto names = index_namer({d}, {numbered(d, "m")});
    auto pair_names = index_namer({n, d}, {ext.labels(), numbered(d, "m")});
    StructureReport r;
    auto& ax = r.axioms;
    ax.push_back(agree("L-action", m.l_action * kron(M, Id), m.l_action * kron(In, m.l_action),
                       index_namer({n, n, d}, {ext.labels(), ext.labels(), numbered(d, "m")})));
    ax.push_back(agree("L-action unit", m.l_action * kron(col(ext.one()), Id), Id, names));
    ax.push_back(agree("L-linearity", m.coaction * m.l_action, kron(M, Id) * kron(In, m.coaction), pair_names));
    ax.push_back(agree("coassociativity", insert_unit(n, d) * m.coaction, kron(In, m.coaction) * m.coaction, names));
    ax.push_back(agree("counit", m.l_action * m.coaction, Id, names));
    return r;
}

void require_cog_comodule(const FieldExtension& ext, const CogComodule& m) {
    auto r = check_cog_comodule(ext, m);
    if (const auto* f = r.first_failure()) throw Error(ErrorKind::NotAComodule, f->name + " fails at " + f->witness);
}

CogComodule induct(const FieldExtension& ext, std::size_t dim_v) {
    const std::size_t n = ext.degree();
    return {n * dim_v, kron(ext.mult_table(), Matrix::identity(dim_v)), insert_unit(n, dim_v)};
}

CogComodule regular_comodule(const FieldExtension& ext) {
    const std::size_t n = ext.degree();
    return {n, ext.mult_table(), kron(Matrix::identity(n), col(ext.one()))};
}

Descended descend(const FieldExtension& ext, const CogComodule& m) {
    require_cog_comodule(ext, m);
    const std::size_t n = ext.degree(), d = m.dim;
    Matrix iota = kron(col(ext.one()), Matrix::identity(d));
    Descended out;
    out.basis = kernel(m.coaction - iota);
    out.comparison = m.l_action * kron(Matrix::identity(n), out.basis);
    out.rank = rank(out.comparison);
    if (out.comparison.cols() != d || out.rank != d)
        throw Error(ErrorKind::DescentFails, "L⊗D -> M has rank " + std::to_string(out.rank) + " with dim D = " +
                                                 std::to_string(out.basis.cols()) + ", dim M = " + std::to_string(d));
    return out;
}

Matrix descend_induct_comparison(const FieldExtension& ext, std::size_t dim_v, const Descended& d) {
    Matrix iota = kron(col(ext.one()), Matrix::identity(dim_v));
    Matrix x;
    if (!solve(d.basis, iota, x)) throw Error(ErrorKind::DescentFails, "1⊗V is not inside the primitives");
    return x;
}

bool comparison_is_comodule_iso(const FieldExtension& ext, const CogComodule& m, const Descended& d) {
    const std::size_t n = ext.degree();
    CogComodule ind = induct(ext, d.basis.cols());
    const Matrix& mu = d.comparison;
    return mu.rows() == mu.cols() && invertible(mu) && m.coaction * mu == kron(Matrix::identity(n), mu) * ind.coaction &&
           m.l_action * kron(Matrix::identity(n), mu) == mu * ind.l_action;
}

SemilinearRep semilinear_from_comodule(const FieldExtension& ext, const CogComodule& m) {
    require_cog_comodule(ext, m);
    SemilinearRep r;
    Matrix Id = Matrix::identity(m.dim);
    for (std::size_t s = 0; s < ext.group_order(); ++s)
        r.pi.push_back(m.l_action * kron(ext.galois(s), Id) * m.coaction);
    return r;
}

CogComodule comodule_from_semilinear(const FieldExtension& ext, const Matrix& l_action, const SemilinearRep& r) {
    const std::size_t g = ext.group_order();
    if (r.pi.size() != g) throw Error(ErrorKind::DimensionMismatch, "one matrix per Galois element expected");
    const std::size_t d = l_action.rows();
    Matrix Id = Matrix::identity(d);
    Matrix big, target;
    for (std::size_t s = 0; s < g; ++s) {
        Matrix block = l_action * kron(ext.galois(s), Id);
        big = s == 0 ? block : big.vstack(block);
        target = s == 0 ? r.pi[s] : target.vstack(r.pi[s]);
    }
    Matrix coaction;
    if (!solve(big, target, coaction)) throw Error(ErrorKind::NotAComodule, "representation is not in the image");
    CogComodule m{d, l_action, coaction};
    require_cog_comodule(ext, m);
    return m;
}

std::vector<AxiomResult> check_semilinear(const FieldExtension& ext, const Matrix& l_action, const SemilinearRep& r) {
    const std::size_t g = ext.group_order();
    std::vector<AxiomResult> out;
    AxiomResult semi{"semilinearity", true, ""}, hom{"homomorphism", true, ""}, unit{"identity", true, ""};
    for (std::size_t s = 0; s < g; ++s) {
        if (semi.pass && !(r.pi[s] * l_action == l_action * kron(ext.galois(s), r.pi[s]))) {
            semi.pass = false;
            semi.witness = "s" + std::to_string(s);
        }
        for (std::size_t t = 0; t < g && hom.pass; ++t)
            if (!(r.pi[ext.compose(s, t)] == r.pi[s] * r.pi[t])) {
                hom.pass = false;
                hom.witness = "(s" + std::to_string(s) + ", s" + std::to_string(t) + ")";
            }
    }
    if (!(r.pi.at(0) == Matrix::identity(l_action.rows()))) {
        unit.pass = false;
        unit.witness = "s0";
    }
    out.push_back(semi);
    out.push_back(hom);
    out.push_back(unit);
    return out;
}

Matrix fixed_points(const SemilinearRep& r) {
    Matrix stacked;
    for (std::size_t s = 0; s < r.pi.size(); ++s) {
        Matrix block = r.pi[s] - Matrix::identity(r.pi[s].rows());
        stacked = s == 0 ? block : stacked.vstack(block);
    }
    return kernel(stacked);
}

bool same_subspace(const Matrix& a, const Matrix& b) {
    std::size_t ra = rank(a), rb = rank(b);
    return ra == rb && rank(a.hstack(b)) == ra;
}

IwasawaReport iwasawa_dual(const ExtPtr& ext, DeltaOrder order) {
    const std::size_t n = ext->degree(), g = ext->group_order(), d = g * n;
    if (g > kDegreeCap) throw Error(ErrorKind::CapExceeded, "group order above " + std::to_string(kDegreeCap));
    TwistedFunctions tf = twisted_functions(ext, order);
    auto e = [n](std::size_t i) { return unit_vector(n, i); };

    // closed-form product (a δ_s)(b δ_t)
    auto coefficient = [&](std::size_t k, std::size_t s, std::size_t l, std::size_t t) {
        return order == DeltaOrder::TauSigma ? ext->multiply(ext->apply_galois(t, e(k)), e(l))
                                             : ext->multiply(e(k), ext->apply_galois(s, e(l)));
    };
    Matrix conv(d, d * d), p2(d * d, g * g * n), p1(d, d);
    for (std::size_t s = 0; s < g; ++s)
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = 0; l < n; ++l) {
                Q tr = ext->trace(ext->multiply(e(k), e(l)));
                if (tr != 0) p1.set(s * n + k, s * n + l, tr);
            }
            for (std::size_t t = 0; t < g; ++t)
                for (std::size_t l = 0; l < n; ++l) {
                    Vec c = coefficient(k, s, l, t);
                    std::size_t target = delta_op(*ext, order, s, t);
                    std::size_t src = (s * n + k) * d + t * n + l;
                    for (std::size_t r = 0; r < n; ++r)
                        if (c[r] != 0) conv.set(target * n + r, src, c[r]);
                    for (std::size_t m = 0; m < n; ++m) {
                        Q tr = ext->trace(ext->multiply(c, e(m)));
                        if (tr != 0) p2.set(src, (s * g + t) * n + m, tr);
                    }
                }
        }

    IwasawaReport r;
    r.order = order;
    r.dim = d;
    r.convention = order == DeltaOrder::TauSigma ? "(a d_s)(b d_t) = t(a) b d_ts" : "(a d_s)(b d_t) = a s(b) d_st";
    const Matrix Id = Matrix::identity(d);
    r.associative = conv * kron(conv, Id) == conv * kron(Id, conv);
    Vec u = unit_vector(d, 0);
    r.unital = conv * kron(col(u), Id) == Id && conv * kron(Id, col(u)) == Id;
    r.perfect = invertible(p1);
    if (r.perfect) r.matches_transpose = ((p2 * tf.comult) * inverse(p1)).transpose() == conv;
    for (std::size_t s = 0; s < g && !r.twist_witness; ++s)
        for (std::size_t l = 0; l < n && !r.twist_witness; ++l) {
            Vec lam = unit_vector(d, l), delta = unit_vector(d, s * n);
            Vec left(d * d), right(d * d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    left[i * d + j] = lam[i] * delta[j];
                    right[i * d + j] = delta[i] * lam[j];
                }
            if (conv.apply(left) != conv.apply(right)) r.twist_witness = std::make_pair(l, s);
        }
    return r;
}

TowerReport iwasawa_tower(unsigned long p, std::size_t levels) {
    if (p < 2 || levels == 0) throw Error(ErrorKind::InvalidArgument, "tower needs p >= 2 and at least one level");
    std::vector<std::size_t> size(levels + 1, 1);
    for (std::size_t k = 1; k <= levels; ++k) size[k] = size[k - 1] * p;
    if (size[levels] > 128) throw Error(ErrorKind::CapExceeded, "tower deeper than 128 elements");

    auto conv = [](std::size_t m) {
        Matrix c(m, m * m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) c.set((a + b) % m, a * m + b, Q(1));
        return c;
    };
    auto comult = [](std::size_t m) {
        Matrix c(m * m, m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) c.set(a * m + b, (a + b) % m, Q(1));
        return c;
    };
    TowerReport r;
    r.levels = levels;
    r.perfect = true;
    r.functorial = true;
    for (std::size_t k = 1; k <= levels; ++k) {
        std::size_t m = size[k];
        Matrix pairing = Matrix::identity(m); // <δ_x, 1_y>
        Matrix pairing2 = Matrix::identity(m * m);
        if (!invertible(pairing)) r.perfect = false;
        if (!(((pairing2 * comult(m)) * inverse(pairing)).transpose() == conv(m))) r.perfect = false;
        if (k == levels) break;
        std::size_t big = size[k + 1];
        Matrix restrict_(big, m), push(m, big);
        for (std::size_t x = 0; x < big; ++x) {
            restrict_.set(x, x % m, Q(1));
            push.set(x % m, x, Q(1));
        }
        Matrix dual = (restrict_ * inverse(pairing)).transpose(); // pairing at the next level is the identity
        if (!(dual == push)) r.functorial = false;
        if (!(push * conv(big) == conv(m) * kron(push, push))) r.functorial = false;
    }
    return r;
}

LocallyConstant locally_constant_approx(const ValuedField& field, unsigned long p, std::size_t depth, const Vec& values,
                                        const std::vector<NormValue>& osc, const NormValue& eps) {
    if (p < 2 || depth == 0) throw Error(ErrorKind::InvalidArgument, "tower needs p >= 2 and depth >= 1");
    std::size_t size = 1;
    std::vector<std::size_t> modulus{1};
    for (std::size_t k = 0; k < depth; ++k) {
        size *= p;
        modulus.push_back(size);
        if (size > (1u << 20)) throw Error(ErrorKind::CapExceeded, "tower too deep");
    }
    if (values.size() != size) throw Error(ErrorKind::DimensionMismatch, "values must cover Z/p^depth");
    if (osc.size() < depth) throw Error(ErrorKind::DimensionMismatch, "one oscillation bound per level required");
    if (eps.is_zero()) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");

    LocallyConstant out;
    for (std::size_t k = 1; k <= depth && out.level == 0; ++k)
        if (osc[k - 1] <= eps) out.level = k;
    if (out.level == 0)
        throw Error(ErrorKind::ToleranceUnreachable,
                    "oscillation " + osc[depth - 1].str() + " at the deepest level exceeds " + eps.str());

    const std::size_t m = modulus[out.level];
    out.approximant.assign(size, 0);
    for (std::size_t x = 0; x < size; ++x) {
        std::size_t rep = x % m;
        if (field.archimedean_backend()) {
            Q sum = 0;
            for (std::size_t y = rep; y < size; y += m) sum += values[y];
            out.approximant[x] = sum / Q(static_cast<long>(size / m));
        } else {
            out.approximant[x] = values[rep];
        }
    }
    out.bound = field.zero();
    for (std::size_t x = 0; x < size; ++x) out.bound = max(out.bound, field.abs(values[x] - out.approximant[x]));
    out.within_oscillation = out.bound <= osc[out.level - 1];
    return out;
}

} // namespace indban
