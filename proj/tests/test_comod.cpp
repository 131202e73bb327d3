#include "oracles.hpp"

#include "indban/comod.hpp"
#include "indban/error.hpp"

#include <doctest.h>

#include <random>

using namespace indban;

namespace {

ValuedField A = ValuedField::archimedean();

SpacePtr flat(std::vector<Q> w, Flavor fl = Flavor::Sum) {
    std::vector<NormValue> nw;
    std::vector<std::string> labels;
    for (const auto& x : w) {
        nw.push_back(A.weight(x));
        labels.push_back("v" + std::to_string(labels.size()));
    }
    return share(DiagSpace::flat(A, labels, nw, fl));
}

GradedSpace random_graded(std::mt19937_64& rng, long window) {
    std::uniform_int_distribution<int> count(0, 4), dim(1, 3), w(1, 4), coin(0, 1);
    std::uniform_int_distribution<long> deg(-window, window);
    GradedSpace g;
    g.field = A;
    g.window = window;
    std::vector<long> used;
    int c = count(rng);
    for (int i = 0; i < c; ++i) {
        long d = deg(rng);
        if (std::find(used.begin(), used.end(), d) != used.end()) continue;
        used.push_back(d);
        std::vector<Q> ws(static_cast<std::size_t>(dim(rng)));
        for (auto& x : ws) x = oracle::random_frac(w, rng);
        g.summands.push_back({d, flat(ws, coin(rng) ? Flavor::Sum : Flavor::Max)});
    }
    std::sort(g.summands.begin(), g.summands.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
    return g;
}

} // namespace

TEST_CASE("graded space to comodule and back") {
    GradedSpace g;
    g.field = A;
    g.window = 2;
    g.summands = {{-1, flat({1})}, {0, flat({1, 2})}, {2, flat({Q(1, 3)})}};
    auto c = graded_to_comodule(g);
    CHECK(c.carrier->dim() == 4);
    CHECK(check_comodule(c).all_pass());
    CHECK(same_graded(g, comodule_to_graded(c)));
    CHECK(g.degrees_of_coordinates() == std::vector<long>{-1, 0, 0, 2});
}

TEST_CASE("zero and trivially graded spaces") {
    GradedSpace z;
    z.field = A;
    z.window = 1;
    auto c = graded_to_comodule(z);
    CHECK(c.carrier->dim() == 0);
    // coaction m -> t^0 ⊗ m
    auto co = grading_window_coalgebra(1, A);
    auto v = flat({1, 1});
    Matrix rho(6, 2);
    rho.set(1 * 2 + 0, 0, Q(1));
    rho.set(1 * 2 + 1, 1, Q(1));
    auto g = comodule_to_graded({co, v, rho});
    REQUIRE(g.summands.size() == 1);
    CHECK(g.summands[0].degree == 0);
    CHECK(g.summands[0].space->dim() == 2);
}

TEST_CASE("random graded round trips") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 100; ++t) {
        auto g = random_graded(rng, 3);
        auto c = graded_to_comodule(g);
        CHECK(check_comodule(c, false).all_pass());
        CHECK(same_graded(g, comodule_to_graded(c)));
    }
}

TEST_CASE("monoidal compatibility on non-overflowing windows") {
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        auto a = random_graded(rng, 4), b = random_graded(rng, 4);
        auto m = check_monoidal(a, b);
        if (m.overflow_skipped) continue;
        ++checked;
        CHECK(m.pass);
    }
    CHECK(checked > 5);
}

TEST_CASE("comodule faults are caught") {
    GradedSpace g;
    g.field = A;
    g.window = 1;
    g.summands = {{0, flat({1})}, {1, flat({1})}};
    auto c = graded_to_comodule(g);
    auto broken = c;
    Matrix rho = broken.coaction;
    rho.set_column(1, {}); // drop the term of the second coordinate
    broken.coaction = rho;
    auto r = check_comodule(broken, false);
    CHECK_FALSE(r.all_pass());
    CHECK(r.first_failure()->witness.size() > 0);
}

TEST_CASE("representations and modules") {
    auto z2 = FiniteGroup::cyclic(2);
    auto k = flat({1});
    std::vector<Matrix> sign{Matrix::identity(1), Matrix::from_rows({{Q(-1)}})};
    auto m = rep_to_module(z2, k, sign);
    CHECK(m.action.at(0, 0) == 1);
    CHECK(m.action.at(0, 1) == -1);
    CHECK(check_module(m).all_pass());
    CHECK(module_to_rep(z2, m) == sign);
    auto rr = rep_report(k, sign, z2);
    CHECK(rr.isometric);
    CHECK(rr.sup_norm.upper.is_one());

    auto plane = flat({1, 1}, Flavor::Max);
    std::vector<Matrix> stretched{Matrix::identity(2), Matrix::from_rows({{Q(0), Q(2)}, {Q(1, 2), Q(0)}})};
    auto sr = rep_report(plane, stretched, z2);
    CHECK_FALSE(sr.isometric);
    CHECK(sr.sup_norm.upper.rational() == 2);

    std::vector<Matrix> bad{Matrix::identity(1), Matrix::from_rows({{Q(2)}})};
    CHECK_THROWS_AS(check_homomorphism(z2, bad), Error);
}

TEST_CASE("regular representations are regular modules") {
    for (const auto& g : groups_up_to_order_8()) {
        std::size_t n = g.order();
        std::vector<Matrix> pi;
        for (std::size_t a = 0; a < n; ++a) {
            Matrix m(n, n);
            for (std::size_t b = 0; b < n; ++b) m.set(g.mul(a, b), b, Q(1));
            pi.push_back(m);
        }
        auto v = share(DiagSpace::flat_unit(A, n, Flavor::Sum));
        auto mod = rep_to_module(g, v, pi);
        CHECK(mod.action == group_bialgebra(g, A).algebra.mult);
        CHECK(check_module(mod, false).all_pass());
        CHECK(module_to_rep(g, mod) == pi);
    }
}

TEST_CASE("module and comodule dualize through the pairing") {
    auto g = FiniteGroup::symmetric3();
    auto gb = group_bialgebra(g, A);
    auto fb = function_bialgebra(g, A);
    Matrix P = Matrix::identity(6);
    auto d = dualize(gb, P);
    CHECK(check_bialgebra(d, false).all_pass());
    CHECK(d.coalgebra.comult == fb.coalgebra.comult);
    CHECK(d.algebra.mult == fb.algebra.mult);

    std::vector<Matrix> pi;
    for (std::size_t a = 0; a < 6; ++a) {
        Matrix m(6, 6);
        for (std::size_t b = 0; b < 6; ++b) m.set(g.mul(a, b), b, Q(1));
        pi.push_back(m);
    }
    auto mod = rep_to_module(g, share(DiagSpace::flat_unit(A, 6, Flavor::Sum)), pi);
    auto co = module_to_comodule(mod, d.coalgebra, P);
    auto cr = check_comodule(co, false);
    CHECK(cr.all_pass());
    if (!cr.all_pass()) MESSAGE(cr.first_failure()->name << " " << cr.first_failure()->witness);
    auto back = comodule_to_module(co, gb.algebra, P);
    CHECK(back.action == mod.action);
}

TEST_CASE("free and cofree adjunctions") {
    auto z3 = FiniteGroup::cyclic(3);
    auto v = share(DiagSpace::flat_unit(A, 3, Flavor::Sum));
    std::vector<Matrix> pi;
    for (std::size_t a = 0; a < 3; ++a) {
        Matrix m(3, 3);
        for (std::size_t b = 0; b < 3; ++b) m.set(z3.mul(a, b), b, Q(1));
        pi.push_back(m);
    }
    auto w = flat({1, 2});
    auto r = finite_adjunction_check(z3, v, pi, w);
    CHECK(r.free_side_dim == r.forgetful_side_dim);
    CHECK(r.cofree_side_dim == r.forgetful2_side_dim);
    CHECK(r.all_pass());
    CHECK(equivariant_maps(z3, pi, pi).size() == 3);
}

TEST_CASE("tensor of comodules over a group bialgebra") {
    auto z2 = FiniteGroup::cyclic(2);
    auto b = group_bialgebra(z2, A);
    GradedSpace g;
    g.field = A;
    g.window = 0;
    auto co = [&](std::size_t deg) {
        Matrix rho(2, 1);
        rho.set(deg, 0, Q(1));
        return ComoduleData{b.coalgebra, flat({1}), rho};
    };
    auto t = tensor_comodules(b, co(1), co(1));
    CHECK(check_comodule(t, false).all_pass());
    CHECK(t.coaction.at(0, 0) == 1); // degree 1 + 1 = 0 in Z/2
}
