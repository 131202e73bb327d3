#include "indban/comod.hpp"

#include "indban/error.hpp"
#include "indban/tensor.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace indban {

namespace {

AxiomResult matrices_agree(const std::string& name, const Matrix& lhs, const Matrix& rhs,
                           const std::function<std::string(std::size_t)>& describe) {
    AxiomResult r{name, true, ""};
    for (std::size_t c = 0; c < lhs.cols(); ++c)
        if (lhs.column(c) != rhs.column(c)) {
            r.pass = false;
            r.witness = describe(c);
            return r;
        }
    return r;
}

std::function<std::string(std::size_t)> triple_namer(const SpacePtr& a, const SpacePtr& m) {
    return [a, m](std::size_t c) {
        std::size_t dm = m->dim(), da = a->dim();
        return "(" + a->labels()[c / (da * dm)] + ", " + a->labels()[c / dm % da] + ", " + m->labels()[c % dm] + ")";
    };
}

std::function<std::string(std::size_t)> single_namer(const SpacePtr& m) {
    return [m](std::size_t c) { return "(" + m->labels()[c] + ")"; };
}

} // namespace

StructureReport check_module(const ModuleData& m, bool with_norms) {
    const auto& A = m.algebra;
    std::size_t da = A.carrier->dim(), dm = m.carrier->dim();
    if (m.action.rows() != dm || m.action.cols() != da * dm)
        throw Error(ErrorKind::DimensionMismatch, "module action shape");
    StructureReport r;
    Matrix I = Matrix::identity(dm);
    r.axioms.push_back(matrices_agree("a.(b.m) = (ab).m", m.action * kron(Matrix::identity(da), m.action),
                                      m.action * kron(A.mult, I), triple_namer(A.carrier, m.carrier)));
    r.axioms.push_back(matrices_agree("1.m = m", m.action * kron(Matrix::column_vector(A.unit), I), I,
                                      single_namer(m.carrier)));
    if (with_norms) {
        auto t = tensor(A.carrier, m.carrier);
        r.norms.push_back({"action", BoundedMap(t.space, m.carrier, m.action).opnorm()});
    }
    return r;
}

StructureReport check_comodule(const ComoduleData& c, bool with_norms) {
    const auto& B = c.coalgebra;
    std::size_t db = B.carrier->dim(), dm = c.carrier->dim();
    if (c.coaction.rows() != db * dm || c.coaction.cols() != dm)
        throw Error(ErrorKind::DimensionMismatch, "coaction shape");
    StructureReport r;
    Matrix I = Matrix::identity(dm);
    r.axioms.push_back(matrices_agree("(Δ⊗id)ρ = (id⊗ρ)ρ", kron(B.comult, I) * c.coaction,
                                      kron(Matrix::identity(db), c.coaction) * c.coaction, single_namer(c.carrier)));
    r.axioms.push_back(matrices_agree("(ε⊗id)ρ = id", kron(Matrix::row_vector(B.counit), I) * c.coaction, I,
                                      single_namer(c.carrier)));
    if (with_norms) {
        auto t = tensor(B.carrier, c.carrier);
        r.norms.push_back({"coaction", BoundedMap(c.carrier, t.space, c.coaction).opnorm()});
    }
    return r;
}

SpacePtr GradedSpace::total() const {
    std::vector<SpacePtr> fam;
    for (const auto& s : summands) fam.push_back(s.space);
    if (fam.empty()) return share(DiagSpace::zero(field));
    auto co = contracting_coproduct(fam);
    std::vector<std::string> labels;
    for (const auto& s : summands)
        for (const auto& l : s.space->labels()) labels.push_back(std::to_string(s.degree) + ":" + l);
    return share(co.space->relabeled(labels));
}

std::vector<long> GradedSpace::degrees_of_coordinates() const {
    std::vector<long> out;
    for (const auto& s : summands)
        for (std::size_t i = 0; i < s.space->dim(); ++i) out.push_back(s.degree);
    return out;
}

bool same_graded(const GradedSpace& a, const GradedSpace& b) {
    if (a.field != b.field || a.summands.size() != b.summands.size()) return false;
    for (std::size_t i = 0; i < a.summands.size(); ++i) {
        const auto& x = a.summands[i];
        const auto& y = b.summands[i];
        if (x.degree != y.degree || !same_norm_structure(*x.space, *y.space)) return false;
        if (x.space->labels() != y.space->labels()) return false;
    }
    return true;
}

namespace {

void validate_graded(const GradedSpace& g) {
    for (std::size_t i = 0; i < g.summands.size(); ++i) {
        const auto& s = g.summands[i];
        if (s.degree < -g.window || s.degree > g.window)
            throw Error(ErrorKind::IndexOutOfRange, "degree " + std::to_string(s.degree) + " outside the window");
        if (i > 0 && g.summands[i - 1].degree >= s.degree)
            throw Error(ErrorKind::InvalidArgument, "summand degrees must be strictly increasing");
        if (s.space->field() != g.field) throw Error(ErrorKind::MixedBackends, "summand over another field");
    }
}

} // namespace

ComoduleData graded_to_comodule(const GradedSpace& g) {
    validate_graded(g);
    CoalgebraData B = grading_window_coalgebra(g.window, g.field);
    SpacePtr total = g.total();
    std::size_t dm = total->dim();
    auto deg = g.degrees_of_coordinates();
    Matrix rho(B.carrier->dim() * dm, dm);
    for (std::size_t m = 0; m < dm; ++m) rho.set(static_cast<std::size_t>(deg[m] + g.window) * dm + m, m, 1);
    return {B, total, rho};
}

namespace {

long parse_degree(const std::string& label, std::size_t fallback) {
    if (label.rfind("t^", 0) == 0) {
        try {
            std::size_t used = 0;
            long v = std::stol(label.substr(2), &used);
            if (used == label.size() - 2) return v;
        } catch (const std::exception&) {
        }
    }
    return static_cast<long>(fallback);
}

} // namespace

GradedSpace comodule_to_graded(const ComoduleData& c) {
    const auto& B = c.coalgebra;
    std::size_t db = B.carrier->dim(), dm = c.carrier->dim();
    for (std::size_t b = 0; b < db; ++b) {
        Vec expect(db * db);
        expect[b * db + b] = 1;
        if (B.comult.column_dense(b) != expect || B.counit[b] != 1)
            throw Error(ErrorKind::NotGrouplikeCoalgebra, "basis element " + B.carrier->labels()[b] + " is not grouplike");
    }
    if (c.coaction.rows() != db * dm || c.coaction.cols() != dm) throw Error(ErrorKind::DimensionMismatch, "coaction shape");
    std::vector<Matrix> proj;
    for (std::size_t b = 0; b < db; ++b) {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < dm; ++i) rows.push_back(b * dm + i);
        proj.push_back(c.coaction.select_rows(rows));
    }
    Matrix sum(dm, dm);
    for (std::size_t b = 0; b < db; ++b) {
        if (!(proj[b] * proj[b] == proj[b]))
            throw Error(ErrorKind::ProjectionsDoNotResolve, "projection at " + B.carrier->labels()[b] + " is not idempotent");
        for (std::size_t b2 = 0; b2 < db; ++b2)
            if (b2 != b && !(proj[b] * proj[b2]).is_zero())
                throw Error(ErrorKind::ProjectionsDoNotResolve, "projections at " + B.carrier->labels()[b] + " and " +
                                                                    B.carrier->labels()[b2] + " are not orthogonal");
        sum = sum + proj[b];
    }
    if (!(sum == Matrix::identity(dm)))
        throw Error(ErrorKind::ProjectionsDoNotResolve, "projections do not sum to the identity");

    GradedSpace g;
    g.field = c.carrier->field();
    long window = 0;
    for (std::size_t b = 0; b < db; ++b) {
        long d = parse_degree(B.carrier->labels()[b], b);
        window = std::max(window, std::labs(d));
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < dm; ++i) {
            Q diag = proj[b].at(i, i);
            if (diag == 1) keep.push_back(i);
        }
        if (proj[b].nonzeros() != keep.size())
            throw Error(ErrorKind::InvalidArgument, "grading at " + B.carrier->labels()[b] + " is not a coordinate subset");
        if (keep.empty()) continue;
        const auto& M = *c.carrier;
        auto tree = M.tree().restricted(keep);
        std::optional<NormTree> lower;
        if (!M.exact()) lower = M.lower_tree().restricted(keep);
        std::vector<std::string> labels;
        std::vector<NormValue> weights;
        for (auto i : keep) {
            std::string l = M.labels()[i];
            auto colon = l.find(':');
            labels.push_back(colon == std::string::npos ? l : l.substr(colon + 1));
            weights.push_back(M.weight(i));
        }
        g.summands.push_back({d, share(DiagSpace(g.field, labels, weights, *tree, lower))});
    }
    g.window = window;
    std::sort(g.summands.begin(), g.summands.end(), [](const auto& x, const auto& y) { return x.degree < y.degree; });
    if (db % 2 == 1) g.window = std::max(g.window, static_cast<long>(db / 2));
    return g;
}

MonoidalCheck check_monoidal(const GradedSpace& a, const GradedSpace& b) {
    if (a.window != b.window) throw Error(ErrorKind::InvalidArgument, "graded spaces on different windows");
    MonoidalCheck r;
    long N = a.window;
    for (const auto& x : a.summands)
        for (const auto& y : b.summands)
            if (std::labs(x.degree + y.degree) > N) {
                r.overflow_skipped = true;
                r.witness = "degree " + std::to_string(x.degree) + " + " + std::to_string(y.degree) + " leaves the window";
                return r;
            }
    ComoduleData ca = graded_to_comodule(a), cb = graded_to_comodule(b);
    std::size_t db = ca.coalgebra.carrier->dim();
    std::size_t da = ca.carrier->dim(), dbm = cb.carrier->dim();
    // partial multiplication t^i t^j = t^{i+j} inside the window
    Matrix mult(db, db * db);
    for (long i = -N; i <= N; ++i)
        for (long j = -N; j <= N; ++j)
            if (std::labs(i + j) <= N)
                mult.set(static_cast<std::size_t>(i + j + N), static_cast<std::size_t>(i + N) * db + static_cast<std::size_t>(j + N), 1);
    Matrix formula = kron(mult, Matrix::identity(da * dbm)) *
                     kron(kron(Matrix::identity(db), swap_matrix(da, db)), Matrix::identity(dbm)) *
                     kron(ca.coaction, cb.coaction);
    auto da_deg = a.degrees_of_coordinates(), db_deg = b.degrees_of_coordinates();
    Matrix direct(db * da * dbm, da * dbm);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < dbm; ++j) {
            std::size_t m = i * dbm + j;
            direct.set(static_cast<std::size_t>(da_deg[i] + db_deg[j] + N) * da * dbm + m, m, 1);
        }
    r.pass = true;
    for (std::size_t c = 0; c < direct.cols(); ++c)
        if (direct.column(c) != formula.column(c)) {
            r.pass = false;
            r.witness = ca.carrier->labels()[c / dbm] + "⊗" + cb.carrier->labels()[c % dbm];
            break;
        }
    return r;
}

ComoduleData tensor_comodules(const BialgebraData& bi, const ComoduleData& x, const ComoduleData& y) {
    std::size_t db = bi.coalgebra.carrier->dim(), dx = x.carrier->dim(), dy = y.carrier->dim();
    if (x.coalgebra.carrier->dim() != db || y.coalgebra.carrier->dim() != db)
        throw Error(ErrorKind::DimensionMismatch, "comodules over a different coalgebra");
    Matrix rho = kron(bi.algebra.mult, Matrix::identity(dx * dy)) *
                 kron(kron(Matrix::identity(db), swap_matrix(dx, db)), Matrix::identity(dy)) * kron(x.coaction, y.coaction);
    return {bi.coalgebra, tensor(x.carrier, y.carrier).space, rho};
}

void check_homomorphism(const FiniteGroup& g, const std::vector<Matrix>& pi) {
    std::size_t n = g.order();
    if (pi.size() != n) throw Error(ErrorKind::DimensionMismatch, "one matrix per group element");
    std::size_t d = pi[0].rows();
    for (const auto& m : pi)
        if (m.rows() != d || m.cols() != d) throw Error(ErrorKind::DimensionMismatch, "representation matrices must be square");
    if (!(pi[g.identity()] == Matrix::identity(d)))
        throw Error(ErrorKind::NotAHomomorphism, "identity does not act trivially");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!(pi[g.mul(a, b)] == pi[a] * pi[b]))
                throw Error(ErrorKind::NotAHomomorphism,
                            "pi(" + g.element_name(a) + " " + g.element_name(b) + ") differs from pi(" +
                                g.element_name(a) + ") pi(" + g.element_name(b) + ")");
}

ModuleData rep_to_module(const FiniteGroup& g, const SpacePtr& v, const std::vector<Matrix>& pi) {
    check_homomorphism(g, pi);
    std::size_t d = v->dim();
    if (pi[0].rows() != d) throw Error(ErrorKind::DimensionMismatch, "representation dimension");
    auto bi = group_bialgebra(g, v->field());
    Matrix action(d, g.order() * d);
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t m = 0; m < d; ++m) action.set_column(a * d + m, pi[a].column(m));
    return {bi.algebra, v, action};
}

std::vector<Matrix> module_to_rep(const FiniteGroup& g, const ModuleData& m) {
    std::size_t d = m.carrier->dim();
    if (m.algebra.carrier->dim() != g.order() || m.action.cols() != g.order() * d)
        throw Error(ErrorKind::DimensionMismatch, "module is not over the group algebra of this group");
    std::vector<Matrix> pi;
    for (std::size_t a = 0; a < g.order(); ++a) {
        Matrix p(d, d);
        for (std::size_t c = 0; c < d; ++c) p.set_column(c, m.action.column(a * d + c));
        pi.push_back(std::move(p));
    }
    check_homomorphism(g, pi);
    return pi;
}

RepReport rep_report(const SpacePtr& v, const std::vector<Matrix>& pi, const FiniteGroup& g) {
    RepReport r;
    std::vector<NormEnclosure> norms;
    r.isometric = true;
    for (std::size_t a = 0; a < g.order(); ++a) {
        NormEnclosure n = operator_norm_or_bound(*v, *v, pi[a]).value;
        if (a == 0) {
            r.sup_norm = n;
        } else {
            r.sup_norm.lower = max(r.sup_norm.lower, n.lower);
            r.sup_norm.upper = max(r.sup_norm.upper, n.upper);
        }
        if (!n.exact() || !n.upper.is_one()) r.isometric = false;
    }
    // inverses are group elements, so all norms equal to one covers the inverse condition
    return r;
}

namespace {

SpacePtr dual_carrier(const SpacePtr& a, const Matrix& P, std::vector<std::string>& notes) {
    const std::size_t d = a->dim();
    const ValuedField& f = a->field();
    // monomial pairing: b_j = c * a_i^*, weight |c| / w_i
    std::vector<std::size_t> partner(d, d);
    std::vector<Q> coef(d);
    bool monomial = P.rows() == d && P.cols() == d;
    for (std::size_t j = 0; j < d && monomial; ++j) {
        if (P.column(j).size() != 1) {
            monomial = false;
            break;
        }
        partner[j] = P.column(j)[0].first;
        coef[j] = P.column(j)[0].second;
    }
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < d; ++j) labels.push_back(a->labels()[monomial ? partner[j] : j] + "*");
    if (!monomial) {
        notes.push_back("pairing is not monomial: dual carrier carries unit MAX weights instead of the dual norm");
        return share(DiagSpace::flat(f, labels, std::vector<NormValue>(d, f.one()), Flavor::Max));
    }
    std::vector<std::size_t> where(d);
    for (std::size_t j = 0; j < d; ++j) where[partner[j]] = j;
    std::vector<NormValue> weights;
    for (std::size_t j = 0; j < d; ++j) weights.push_back(f.abs(coef[j]) / a->weight(partner[j]));
    NormTree upper = a->lower_tree().dual().remapped(where);
    std::optional<NormTree> lower;
    if (!a->exact()) lower = a->tree().dual().remapped(where);
    return share(DiagSpace(f, labels, weights, upper, lower));
}

} // namespace

BialgebraData dualize(const BialgebraData& a, const Matrix& P) {
    std::size_t d = a.algebra.carrier->dim();
    if (P.rows() != d || P.cols() != d) throw Error(ErrorKind::DimensionMismatch, "pairing must be square");
    if (!invertible(P)) throw Error(ErrorKind::DegeneratePairing, "pairing matrix is singular");
    Matrix Qm = inverse(P);
    BialgebraData b;
    b.name = "dual of " + a.name;
    SpacePtr carrier = dual_carrier(a.algebra.carrier, P, b.notes);
    Matrix PP = kron(P, P);
    b.algebra.carrier = carrier;
    b.algebra.mult = Qm * a.coalgebra.comult.transpose() * PP;
    b.algebra.unit = Qm.apply(a.coalgebra.counit);
    b.coalgebra.carrier = carrier;
    b.coalgebra.comult = kron(Qm, Qm) * a.algebra.mult.transpose() * P;
    b.coalgebra.counit = P.transpose().apply(a.algebra.unit);
    return b;
}

ComoduleData module_to_comodule(const ModuleData& m, const CoalgebraData& dual, const Matrix& P) {
    std::size_t da = m.algebra.carrier->dim(), dm = m.carrier->dim();
    if (P.rows() != da || P.cols() != dual.carrier->dim()) throw Error(ErrorKind::DimensionMismatch, "pairing shape");
    if (!invertible(P)) throw Error(ErrorKind::DegeneratePairing, "pairing matrix is singular");
    Matrix Qm = inverse(P);
    // rho[(j, r), m] = sum_i Q(j, i) action[r, (i, m)]
    Matrix rho(da * dm, dm);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t mm = 0; mm < dm; ++mm)
            for (const auto& [r, x] : m.action.column(i * dm + mm))
                for (std::size_t j = 0; j < da; ++j) {
                    Q q = Qm.at(j, i);
                    if (q != 0) rho.add_to(j * dm + r, mm, q * x);
                }
    std::size_t dc = dual.carrier->dim();
    CoalgebraData cop{dual.carrier, swap_matrix(dc, dc) * dual.comult, dual.counit};
    return {cop, m.carrier, rho};
}

ModuleData comodule_to_module(const ComoduleData& c, const AlgebraData& a, const Matrix& P) {
    std::size_t da = a.carrier->dim(), dm = c.carrier->dim();
    if (P.rows() != da || P.cols() != c.coalgebra.carrier->dim()) throw Error(ErrorKind::DimensionMismatch, "pairing shape");
    // action[r, (i, m)] = sum_j P(i, j) rho[(j, r), m]
    Matrix action(dm, da * dm);
    for (std::size_t mm = 0; mm < dm; ++mm)
        for (const auto& [row, x] : c.coaction.column(mm)) {
            std::size_t j = row / dm, r = row % dm;
            for (std::size_t i = 0; i < da; ++i) {
                Q p = P.at(i, j);
                if (p != 0) action.add_to(r, i * dm + mm, p * x);
            }
        }
    return {a, c.carrier, action};
}

std::vector<Matrix> equivariant_maps(const FiniteGroup& g, const std::vector<Matrix>& src, const std::vector<Matrix>& dst) {
    std::size_t ds = src[0].cols(), dd = dst[0].rows();
    std::size_t total = ds * dd;
    Matrix sys(0, total);
    for (std::size_t a = 0; a < g.order(); ++a) {
        // vec(T A) - vec(pi T) = (A^T ⊗ I - I ⊗ pi) vec(T)
        Matrix eq = kron(src[a].transpose(), Matrix::identity(dd)) - kron(Matrix::identity(ds), dst[a]);
        sys = sys.vstack(eq);
    }
    Matrix ker = kernel(sys);
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < ker.cols(); ++b) {
        Vec v = ker.column_dense(b);
        Matrix t(dd, ds);
        for (std::size_t c = 0; c < ds; ++c)
            for (std::size_t r = 0; r < dd; ++r)
                if (v[c * dd + r] != 0) t.set(r, c, v[c * dd + r]);
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

std::vector<Matrix> matrix_units(std::size_t rows, std::size_t cols) {
    std::vector<Matrix> out;
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r) {
            Matrix m(rows, cols);
            m.set(r, c, 1);
            out.push_back(std::move(m));
        }
    return out;
}

// coordinates of a matrix against a basis of matrices of the same shape
bool in_span(const std::vector<Matrix>& basis, const Matrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<Vec> columns;
    for (const auto& b : basis) {
        Vec v(rows * cols);
        for (std::size_t c = 0; c < cols; ++c)
            for (const auto& [r, x] : b.column(c)) v[c * rows + r] = x;
        columns.push_back(std::move(v));
    }
    Vec target(rows * cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& [r, x] : m.column(c)) target[c * rows + r] = x;
    Matrix A = Matrix::from_columns(rows * cols, columns);
    Matrix sol;
    return solve(A, Matrix::column_vector(target), sol);
}

bool same_norm(const OperatorNorm& a, const OperatorNorm& b) {
    return a.value.exact() && b.value.exact() && compare(a.value.upper, b.value.upper) == 0;
}

} // namespace

AdjunctionReport finite_adjunction_check(const FiniteGroup& g, const SpacePtr& v, const std::vector<Matrix>& pi,
                                         const SpacePtr& w) {
    check_homomorphism(g, pi);
    const std::size_t n = g.order(), dv = v->dim(), dw = w->dim();
    if (dv > 4 || dw > 4) throw Error(ErrorKind::CapExceeded, "adjunction checks are limited to dimension 4");
    AdjunctionReport rep;
    // free side: ∐_Γ W with h.(copy g, x) = (copy hg, x)
    auto co = contracting_coproduct(std::vector<SpacePtr>(n, w));
    std::vector<Matrix> perm;
    for (std::size_t h = 0; h < n; ++h) {
        Matrix p(n, n);
        for (std::size_t a = 0; a < n; ++a) p.set(g.mul(h, a), a, 1);
        perm.push_back(kron(p, Matrix::identity(dw)));
    }
    auto free_basis = equivariant_maps(g, perm, pi);
    auto plain = matrix_units(dv, dw);
    rep.free_side_dim = free_basis.size();
    rep.forgetful_side_dim = plain.size();
    Matrix iota_e = co.injections[g.identity()];
    auto restrict_e = [&](const Matrix& T) { return T * iota_e; };
    auto extend = [&](const Matrix& h) {
        Matrix T(dv, n * dw);
        for (std::size_t a = 0; a < n; ++a) {
            Matrix block = pi[a] * h;
            for (std::size_t c = 0; c < dw; ++c) T.set_column(a * dw + c, block.column(c));
        }
        return T;
    };
    bool ok = rep.free_side_dim == rep.forgetful_side_dim;
    bool iso = true;
    for (const auto& h : plain) {
        Matrix T = extend(h);
        ok = ok && restrict_e(T) == h && in_span(free_basis, T);
        iso = iso && same_norm(operator_norm_or_bound(*co.space, *v, T), operator_norm_or_bound(*w, *v, h));
    }
    for (const auto& T : free_basis) ok = ok && extend(restrict_e(T)) == T;
    rep.bijection_free = ok;
    rep.isometric_free = iso;

    // cofree side: C(Γ, W) with (h.φ)(g) = φ(gh)
    auto prod = contracting_product(std::vector<SpacePtr>(n, w));
    std::vector<Matrix> shift;
    for (std::size_t h = 0; h < n; ++h) {
        Matrix p(n, n);
        for (std::size_t a = 0; a < n; ++a) p.set(a, g.mul(a, h), 1); // new value at a is old value at a h
        shift.push_back(kron(p, Matrix::identity(dw)));
    }
    auto cofree_basis = equivariant_maps(g, pi, shift);
    auto plain2 = matrix_units(dw, dv);
    rep.cofree_side_dim = cofree_basis.size();
    rep.forgetful2_side_dim = plain2.size();
    Matrix ev_e = prod.projections[g.identity()];
    auto coextend = [&](const Matrix& f) {
        Matrix S(n * dw, dv);
        for (std::size_t a = 0; a < n; ++a) {
            Matrix block = f * pi[a];
            for (std::size_t c = 0; c < dv; ++c)
                for (const auto& [r, x] : block.column(c)) S.set(a * dw + r, c, x);
        }
        return S;
    };
    ok = rep.cofree_side_dim == rep.forgetful2_side_dim;
    iso = true;
    for (const auto& f : plain2) {
        Matrix S = coextend(f);
        ok = ok && ev_e * S == f && in_span(cofree_basis, S);
        iso = iso && same_norm(operator_norm_or_bound(*v, *prod.space, S), operator_norm_or_bound(*v, *w, f));
    }
    for (const auto& S : cofree_basis) ok = ok && coextend(ev_e * S) == S;
    rep.bijection_cofree = ok;
    rep.isometric_cofree = iso;
    return rep;
}

} // namespace indban
