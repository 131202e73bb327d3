#include "indban/hopf.hpp"

#include "indban/error.hpp"
#include "indban/tensor.hpp"

#include <functional>

namespace indban {

bool StructureReport::all_pass() const {
    for (const auto& a : axioms)
        if (!a.pass) return false;
    return true;
}

const AxiomResult* StructureReport::first_failure() const {
    for (const auto& a : axioms)
        if (!a.pass) return &a;
    return nullptr;
}

bool StructureReport::norms_exactly_one() const {
    for (const auto& n : norms)
        if (!n.norm.value.exact() || !n.norm.value.upper.is_one()) return false;
    return true;
}

namespace {

using Describe = std::function<std::string(std::size_t)>;

Q entry_in(const Matrix::Column& c, std::size_t r) {
    for (const auto& [row, v] : c)
        if (row == r) return v;
    return 0;
}

AxiomResult compare(const std::string& name, const Matrix& lhs, const Matrix& rhs, const Describe& describe,
                    const Describe& describe_rows = nullptr) {
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
            if (describe_rows)
                for (std::size_t row = 0; row < lhs.rows(); ++row)
                    if (entry_in(lhs.column(c), row) != entry_in(rhs.column(c), row)) {
                        r.witness += " -> " + describe_rows(row);
                        break;
                    }
            return r;
        }
    return r;
}

Describe tuple_namer(const SpacePtr& s, std::size_t arity) {
    return [s, arity](std::size_t c) {
        std::size_t d = s->dim();
        std::vector<std::string> parts(arity);
        for (std::size_t k = arity; k-- > 0;) {
            parts[k] = s->labels()[c % d];
            c /= d;
        }
        std::string out = "(";
        for (std::size_t k = 0; k < arity; ++k) out += (k ? ", " : "") + parts[k];
        return out + ")";
    };
}

Matrix row(const Vec& v) { return Matrix::row_vector(v); }
Matrix col(const Vec& v) { return Matrix::column_vector(v); }

SpacePtr unit_space(const ValuedField& f) { return share(DiagSpace::scalar(f)); }

void check_shapes_alg(const AlgebraData& a) {
    std::size_t d = a.carrier->dim();
    if (a.mult.rows() != d || a.mult.cols() != d * d || a.unit.size() != d)
        throw Error(ErrorKind::DimensionMismatch, "algebra structure constants do not fit the carrier");
}

void check_shapes_coalg(const CoalgebraData& c) {
    std::size_t d = c.carrier->dim();
    if (c.comult.rows() != d * d || c.comult.cols() != d || c.counit.size() != d)
        throw Error(ErrorKind::DimensionMismatch, "coalgebra structure constants do not fit the carrier");
}

} // namespace

StructureReport check_algebra(const AlgebraData& a, bool with_norms) {
    check_shapes_alg(a);
    StructureReport r;
    std::size_t d = a.carrier->dim();
    Matrix I = Matrix::identity(d);
    r.axioms.push_back(compare("associativity", a.mult * kron(a.mult, I), a.mult * kron(I, a.mult),
                               tuple_namer(a.carrier, 3)));
    r.axioms.push_back(compare("left unit", a.mult * kron(col(a.unit), I), I, tuple_namer(a.carrier, 1)));
    r.axioms.push_back(compare("right unit", a.mult * kron(I, col(a.unit)), I, tuple_namer(a.carrier, 1)));
    if (with_norms) {
        auto t = tensor(a.carrier, a.carrier);
        r.norms.push_back({"mult", BoundedMap(t.space, a.carrier, a.mult).opnorm()});
        r.norms.push_back({"unit", BoundedMap(unit_space(a.carrier->field()), a.carrier, col(a.unit)).opnorm()});
    }
    return r;
}

StructureReport check_coalgebra(const CoalgebraData& c, bool with_norms) {
    check_shapes_coalg(c);
    StructureReport r;
    std::size_t d = c.carrier->dim();
    Matrix I = Matrix::identity(d);
    r.axioms.push_back(compare("coassociativity", kron(c.comult, I) * c.comult, kron(I, c.comult) * c.comult,
                               tuple_namer(c.carrier, 1), tuple_namer(c.carrier, 3)));
    r.axioms.push_back(compare("left counit", kron(row(c.counit), I) * c.comult, I, tuple_namer(c.carrier, 1)));
    r.axioms.push_back(compare("right counit", kron(I, row(c.counit)) * c.comult, I, tuple_namer(c.carrier, 1)));
    if (with_norms) {
        auto t = tensor(c.carrier, c.carrier);
        r.norms.push_back({"comult", BoundedMap(c.carrier, t.space, c.comult).opnorm()});
        r.norms.push_back({"counit", BoundedMap(c.carrier, unit_space(c.carrier->field()), row(c.counit)).opnorm()});
    }
    return r;
}

StructureReport check_bialgebra(const BialgebraData& b, bool with_norms) {
    const auto& A = b.algebra;
    const auto& C = b.coalgebra;
    if (A.carrier->dim() != C.carrier->dim())
        throw Error(ErrorKind::DimensionMismatch, "algebra and coalgebra carriers differ");
    StructureReport r = check_algebra(A, with_norms);
    StructureReport rc = check_coalgebra(C, with_norms);
    r.axioms.insert(r.axioms.end(), rc.axioms.begin(), rc.axioms.end());
    r.norms.insert(r.norms.end(), rc.norms.begin(), rc.norms.end());
    std::size_t d = A.carrier->dim();
    Matrix I = Matrix::identity(d);
    Matrix middle = kron(kron(I, swap_matrix(d, d)), I);
    r.axioms.push_back(compare("comult is multiplicative", C.comult * A.mult,
                               kron(A.mult, A.mult) * middle * kron(C.comult, C.comult), tuple_namer(A.carrier, 2)));
    r.axioms.push_back(compare("counit is multiplicative", row(C.counit) * A.mult, kron(row(C.counit), row(C.counit)),
                               tuple_namer(A.carrier, 2)));
    Vec one = A.unit;
    r.axioms.push_back(compare("comult preserves unit", col(C.comult.apply(one)), kron(col(one), col(one)),
                               [](std::size_t) { return std::string("(1)"); }));
    Q e = 0;
    for (std::size_t i = 0; i < d; ++i) e += C.counit[i] * one[i];
    r.axioms.push_back({"counit preserves unit", e == 1, e == 1 ? "" : "counit(1) = " + format_rational(e)});
    return r;
}

StructureReport check_duality(const BialgebraData& a, const BialgebraData& b, const Matrix& P) {
    std::size_t da = a.algebra.carrier->dim(), db = b.algebra.carrier->dim();
    if (P.rows() != da || P.cols() != db) throw Error(ErrorKind::DimensionMismatch, "pairing shape");
    StructureReport r;
    Matrix PP = kron(P, P);
    auto names_b1 = tuple_namer(b.algebra.carrier, 1);
    auto names_a1 = tuple_namer(a.algebra.carrier, 1);
    r.axioms.push_back(compare("<ab, f> = <a⊗b, Δf>", a.algebra.mult.transpose() * P, PP * b.coalgebra.comult, names_b1));
    r.axioms.push_back(compare("<Δa, f⊗g> = <a, fg>", (a.coalgebra.comult.transpose() * PP).transpose(),
                               (P * b.algebra.mult).transpose(), names_a1));
    r.axioms.push_back(compare("<1, f> = ε(f)", row(a.algebra.unit) * P, row(b.coalgebra.counit), names_b1));
    r.axioms.push_back(compare("ε(a) = <a, 1>", col(a.coalgebra.counit), P * col(b.algebra.unit),
                               [](std::size_t) { return std::string("(1)"); }));
    bool perfect = da == db && invertible(P);
    r.axioms.push_back({"pairing is perfect", perfect, perfect ? "" : "pairing matrix is singular"});
    return r;
}

namespace {

void cap_group(const FiniteGroup& g) {
    if (g.order() > kGroupOrderCap)
        throw Error(ErrorKind::CapExceeded, "group order above " + std::to_string(kGroupOrderCap));
}

std::vector<std::string> prefixed(const FiniteGroup& g, const std::string& p) {
    std::vector<std::string> out;
    for (const auto& n : g.element_names()) out.push_back(p + n);
    return out;
}

Matrix group_mult(const FiniteGroup& g) {
    std::size_t n = g.order();
    Matrix m(n, n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m.set(g.mul(a, b), a * n + b, 1);
    return m;
}

Matrix diagonal_comult(std::size_t n) {
    Matrix c(n * n, n);
    for (std::size_t a = 0; a < n; ++a) c.set(a * n + a, a, 1);
    return c;
}

} // namespace

BialgebraData group_bialgebra(const FiniteGroup& g, const ValuedField& field, CounitConvention counit) {
    cap_group(g);
    std::size_t n = g.order();
    BialgebraData b;
    b.name = "group bialgebra of " + g.name();
    SpacePtr carrier = share(l1(field, prefixed(g, "t^")));
    b.algebra = {carrier, group_mult(g), unit_vector(n, g.identity())};
    Vec eps = counit == CounitConvention::GroupLike ? Vec(n, Q(1)) : unit_vector(n, g.identity());
    b.coalgebra = {carrier, diagonal_comult(n), eps};
    if (counit == CounitConvention::Delta) b.notes.push_back("counit t^g -> delta(g,1): the counit law fails off the identity");
    return b;
}

BialgebraData grading_bialgebra(const FiniteGroup& g, const ValuedField& field) {
    cap_group(g);
    std::size_t n = g.order();
    BialgebraData b;
    b.name = "grading bialgebra of " + g.name();
    SpacePtr carrier = share(l1(field, prefixed(g, "t^")));
    b.algebra = {carrier, group_mult(g), unit_vector(n, g.identity())};
    b.coalgebra = {carrier, diagonal_comult(n), Vec(n, Q(1))};
    return b;
}

CoalgebraData grading_window_coalgebra(long n, const ValuedField& field) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "window radius must be non-negative");
    if (n > 64) throw Error(ErrorKind::CapExceeded, "window radius above 64");
    std::vector<std::string> labels;
    for (long k = -n; k <= n; ++k) labels.push_back("t^" + std::to_string(k));
    std::size_t d = labels.size();
    SpacePtr carrier = share(l1(field, labels));
    return {carrier, diagonal_comult(d), Vec(d, Q(1))};
}

BialgebraData grading_window_bialgebra(long n, const ValuedField&) {
    throw Error(ErrorKind::WindowNotGroup,
                "the window [-" + std::to_string(n) + ", " + std::to_string(n) + "] is not closed under addition");
}

BialgebraData function_bialgebra(const FiniteGroup& g, const ValuedField& field) {
    cap_group(g);
    std::size_t n = g.order();
    BialgebraData b;
    b.name = "function bialgebra of " + g.name();
    SpacePtr carrier = share(DiagSpace::flat(field, prefixed(g, "d_"), std::vector<NormValue>(n, field.one()), Flavor::Max));
    Matrix mult(n, n * n);
    for (std::size_t a = 0; a < n; ++a) mult.set(a, a * n + a, 1);
    Matrix comult(n * n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) comult.set(a * n + c, g.mul(a, c), 1);
    b.algebra = {carrier, mult, Vec(n, Q(1))};
    b.coalgebra = {carrier, comult, unit_vector(n, g.identity())};
    return b;
}

std::vector<std::vector<unsigned>> monomials(std::size_t nvars, unsigned degree) {
    std::vector<std::vector<unsigned>> out;
    for (unsigned total = 0; total <= degree; ++total) {
        std::vector<unsigned> cur(nvars, 0);
        std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
            if (i + 1 == nvars) {
                cur[i] = left;
                out.push_back(cur);
                return;
            }
            for (unsigned k = left + 1; k-- > 0;) {
                cur[i] = k;
                rec(i + 1, left - k);
            }
        };
        if (nvars == 0) {
            if (total == 0) out.push_back({});
            continue;
        }
        rec(0, total);
    }
    return out;
}

std::string monomial_label(const std::vector<unsigned>& n) {
    if (n.size() == 1) return "t^" + std::to_string(n[0]);
    std::string s = "t^(";
    for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
    return s + ")";
}

SpacePtr tate_carrier(std::size_t nvars, unsigned degree, const std::vector<Q>& radii, const ValuedField& field) {
    if (radii.size() != nvars) throw Error(ErrorKind::DimensionMismatch, "one radius per variable");
    for (const auto& r : radii)
        if (r <= 0) throw Error(ErrorKind::InvalidArgument, "radii must be positive");
    std::vector<std::string> labels;
    std::vector<NormValue> weights;
    for (const auto& n : monomials(nvars, degree)) {
        Q w = 1;
        for (std::size_t i = 0; i < nvars; ++i)
            for (unsigned k = 0; k < n[i]; ++k) w *= radii[i];
        labels.push_back(monomial_label(n));
        weights.push_back(field.weight(w));
    }
    return share(DiagSpace::flat(field, labels, weights, field.archimedean_backend() ? Flavor::Sum : Flavor::Max));
}

namespace {

struct TateNorms {
    CoalgebraData coalg;
    NormEnclosure counit, comult;
};

TateNorms tate_norms(std::size_t nvars, unsigned degree, const std::vector<Q>& radii, const ValuedField& field) {
    SpacePtr c = tate_carrier(nvars, degree, radii, field);
    std::size_t d = c->dim();
    CoalgebraData coalg{c, diagonal_comult(d), Vec(d, Q(1))};
    auto sq = tensor(c, c);
    NormEnclosure counit = BoundedMap(c, share(DiagSpace::scalar(field)), Matrix::row_vector(coalg.counit)).norm();
    NormEnclosure comult = BoundedMap(c, sq.space, coalg.comult).norm();
    return {coalg, counit, comult};
}

} // namespace

TateReport tate_coalgebra(std::size_t nvars, unsigned degree, const std::vector<Q>& radii, const ValuedField& field) {
    if (nvars == 0 || nvars > kTateVarCap || degree > kTateDegreeCap)
        throw Error(ErrorKind::CapExceeded, "Tate truncation limited to 1..3 variables and degree 12");
    TateNorms at = tate_norms(nvars, degree, radii, field);
    TateNorms next = tate_norms(nvars, degree + 1, radii, field);
    TateReport r;
    r.coalgebra = at.coalg;
    r.counit_norm = at.counit;
    r.comult_norm = at.comult;
    r.counit_bounded = less_equal(next.counit.upper, at.counit.lower) == Tri::True;
    r.comult_bounded = less_equal(next.comult.upper, at.comult.lower) == Tri::True;
    std::vector<Q> squared;
    for (const auto& x : radii) squared.push_back(x * x);
    SpacePtr src = tate_carrier(nvars, degree, squared, field);
    auto dst = tensor(at.coalg.carrier, at.coalg.carrier);
    r.squared_comult_norm = BoundedMap(src, dst.space, at.coalg.comult).norm();
    return r;
}

TateReport tate_coalgebra(std::size_t nvars, unsigned degree, const Q& radius, const ValuedField& field) {
    return tate_coalgebra(nvars, degree, std::vector<Q>(nvars, radius), field);
}

DaggerChain dagger_chain(std::size_t nvars, unsigned degree, const std::vector<Q>& schedule, DaggerChain::Target target,
                         const ValuedField& field) {
    if (schedule.empty()) throw Error(ErrorKind::InvalidArgument, "empty radius schedule");
    if (schedule.size() > 5) throw Error(ErrorKind::CapExceeded, "radius schedules are limited to 5 stages");
    if (nvars == 0 || nvars > kTateVarCap || degree > kTateDegreeCap)
        throw Error(ErrorKind::CapExceeded, "Tate truncation limited to 1..3 variables and degree 12");
    for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
        if (!(schedule[i + 1] < schedule[i]))
            throw Error(ErrorKind::ScheduleNotDecreasing,
                        "radius " + format_rational(schedule[i + 1]) + " follows " + format_rational(schedule[i]));
    for (const auto& r : schedule) {
        if (target == DaggerChain::Target::One && r <= 1)
            throw Error(ErrorKind::InvalidArgument, "radii must stay above 1 for an overconvergent chain");
        if (r <= 0) throw Error(ErrorKind::InvalidArgument, "radii must be positive");
    }
    std::vector<SpacePtr> spaces;
    std::vector<CoalgebraData> stages;
    for (const auto& r : schedule) {
        SpacePtr c = tate_carrier(nvars, degree, std::vector<Q>(nvars, r), field);
        spaces.push_back(c);
        stages.push_back({c, diagonal_comult(c->dim()), Vec(c->dim(), Q(1))});
    }
    std::size_t d = spaces[0]->dim();
    std::vector<Matrix> incl(schedule.size() - 1, Matrix::identity(d));
    DaggerChain dc{target, schedule, IndObject::chain(spaces, incl), stages, {}};
    for (std::size_t a = 0; a < schedule.size(); ++a)
        for (std::size_t b = a; b < schedule.size(); ++b)
            if (schedule[b] * schedule[b] <= schedule[a]) {
                auto sq = tensor(spaces[b], spaces[b]);
                dc.comults.push_back({a, b, BoundedMap(spaces[a], sq.space, diagonal_comult(d))});
                break;
            }
    return dc;
}

} // namespace indban
