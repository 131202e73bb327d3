#include "oracles.hpp"

#include "indban/error.hpp"
#include "indban/hopf.hpp"

#include <doctest.h>

using namespace indban;

namespace {

ValuedField A = ValuedField::archimedean();

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("groups of order at most 8") {
    auto gs = groups_up_to_order_8();
    CHECK(gs.size() == 14);
    std::size_t abelian = 0;
    for (const auto& g : gs) {
        CHECK(oracle::is_group_table(g.table()));
        abelian += g.abelian();
    }
    CHECK(abelian == 11); // S3, D4 and Q8 are the non-abelian ones
    CHECK_THROWS_AS(FiniteGroup::from_table("bad", {{0, 1}, {1, 1}}), Error);
}

TEST_CASE("group bialgebras pass every axiom with norms exactly one") {
    for (const auto& g : groups_up_to_order_8())
        for (ValuedField f : {A, ValuedField::padic(3)}) {
            CAPTURE(g.name());
            auto b = group_bialgebra(g, f);
            std::size_t n = g.order();
            // structure constants straight from the table
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t c = 0; c < n; ++c) CHECK(b.algebra.mult.at(g.mul(a, c), a * n + c) == 1);
            CHECK(b.algebra.mult.nonzeros() == n * n);
            for (std::size_t a = 0; a < n; ++a) CHECK(b.coalgebra.comult.at(a * n + a, a) == 1);
            auto r = check_bialgebra(b);
            CHECK(r.all_pass());
            CHECK(r.norms_exactly_one());
        }
}

TEST_CASE("injected faults are caught with witnesses") {
    auto b = group_bialgebra(FiniteGroup::cyclic(2), A);
    auto broken = b;
    broken.coalgebra.comult.set(0, 1, Q(1));
    auto r = check_coalgebra(broken.coalgebra);
    REQUIRE(r.first_failure() != nullptr);
    CHECK(r.first_failure()->name == "coassociativity");
    CHECK(r.first_failure()->witness.find("->") != std::string::npos);

    auto sign = b;
    sign.coalgebra.comult.set(3, 1, Q(-1));
    CHECK_FALSE(check_bialgebra(sign).all_pass());

    auto delta = group_bialgebra(FiniteGroup::cyclic(3), A, CounitConvention::Delta);
    auto d = check_bialgebra(delta);
    CHECK_FALSE(d.all_pass());
    CHECK(d.first_failure()->witness.size() > 0);

    auto mult = b;
    mult.algebra.mult.set(1, 1, Q(0));
    auto m = check_algebra(mult.algebra);
    CHECK_FALSE(m.all_pass());
    CHECK(m.first_failure()->witness.size() > 0);
}

TEST_CASE("grading bialgebras and windows") {
    auto z4 = FiniteGroup::cyclic(4);
    auto gr = grading_bialgebra(z4, A);
    auto gb = group_bialgebra(z4, A);
    CHECK(gr.algebra.mult == gb.algebra.mult);
    CHECK(gr.coalgebra.comult == gb.coalgebra.comult);
    CHECK(gr.coalgebra.counit == Vec(4, Q(1)));
    CHECK(check_bialgebra(gr).all_pass());

    auto w = grading_window_coalgebra(2, A);
    CHECK(w.carrier->dim() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(w.comult.at(i * 5 + i, i) == 1);
        CHECK(w.counit[i] == 1);
    }
    CHECK(check_coalgebra(w).all_pass());
    CHECK(kind_of([] { grading_window_bialgebra(2, A); }) == ErrorKind::WindowNotGroup);
}

TEST_CASE("S3 group algebra is the regular representation pattern") {
    auto g = FiniteGroup::symmetric3();
    auto b = group_bialgebra(g, A);
    for (std::size_t a = 0; a < 6; ++a) {
        // left multiplication by a permutes the basis
        std::vector<int> hit(6, 0);
        for (std::size_t c = 0; c < 6; ++c) hit[g.mul(a, c)]++;
        for (int h : hit) CHECK(h == 1);
    }
    auto r = check_bialgebra(b);
    CHECK(r.norms.size() >= 1);
    CHECK(r.norms[0].norm.value.upper.is_one());
}

TEST_CASE("function bialgebra") {
    auto t = function_bialgebra(FiniteGroup::trivial(), A);
    CHECK(t.algebra.carrier->dim() == 1);
    CHECK(t.algebra.mult == Matrix::identity(1));
    CHECK(t.coalgebra.comult == Matrix::identity(1));
    for (const auto& g : groups_up_to_order_8()) {
        auto f = function_bialgebra(g, A);
        CHECK(check_bialgebra(f, false).all_pass());
        auto d = check_duality(group_bialgebra(g, A), f, Matrix::identity(g.order()));
        CHECK(d.all_pass());
    }
}

TEST_CASE("duality rejects a degenerate pairing") {
    auto g = FiniteGroup::cyclic(2);
    Matrix p(2, 2);
    p.set(0, 0, Q(1));
    auto r = check_duality(group_bialgebra(g, A), function_bialgebra(g, A), p);
    CHECK_FALSE(r.all_pass());
    bool flagged = false;
    for (const auto& a : r.axioms) flagged = flagged || (a.name == "pairing is perfect" && !a.pass);
    CHECK(flagged);
}

TEST_CASE("Tate coalgebra boundedness phase diagram") {
    for (const Q& r : {Q(1, 4), Q(1, 2), Q(1), Q(3, 2), Q(2)})
        for (unsigned d = 1; d <= 8; ++d) {
            auto rep = tate_coalgebra(1, d, r, A);
            // counit column formula on the SUM carrier: max_n 1 / r^n
            Q counit = 0;
            for (unsigned n = 0; n <= d; ++n) counit = std::max(counit, Q(1 / oracle::qpow(r, n)));
            CHECK(rep.counit_norm.upper.rational() == counit);
            CHECK(rep.counit_bounded == (r >= 1));
            CHECK(rep.comult_bounded == (r <= 1));
            CHECK(rep.squared_comult_norm.exact());
            CHECK(rep.squared_comult_norm.upper.is_one());
        }
    CHECK(tate_coalgebra(1, 4, Q(1, 2), A).counit_norm.upper.rational() == 16);
    auto one = tate_coalgebra(1, 4, Q(1), A);
    CHECK(one.counit_norm.upper.is_one());
    CHECK(one.comult_norm.upper.is_one());
}

TEST_CASE("monomials") {
    auto m = monomials(2, 2);
    CHECK(m.size() == 6);
    CHECK(monomial_label(m[0]) == "t^(0,0)");
    CHECK(monomial_label({3}) == "t^3");
}

TEST_CASE("dagger chains") {
    auto d = dagger_chain(1, 4, {Q(4), Q(2)}, DaggerChain::Target::One, A);
    REQUIRE(!d.comults.empty());
    for (const auto& c : d.comults) CHECK(c.map.norm().upper <= A.one());
    // inclusion radius 2 -> 3/2 on t^n has norm (3/4)^n
    auto e = dagger_chain(1, 3, {Q(2), Q(3, 2)}, DaggerChain::Target::One, A);
    for (std::size_t n = 0; n <= 3; ++n) {
        auto t = e.chain.transition(0, 1);
        Matrix col = Matrix::column_vector(unit_vector(4, n));
        BoundedMap mono(share(DiagSpace::flat(A, {"t"}, {e.chain.stage(0)->weight(n)}, Flavor::Sum)),
                        share(DiagSpace::flat(A, {"t"}, {e.chain.stage(1)->weight(n)}, Flavor::Sum)),
                        t.select_rows({n}) * col);
        CHECK(mono.norm().upper.rational() == oracle::qpow(Q(3, 4), static_cast<long>(n)));
    }
    auto z = dagger_chain(1, 3, {Q(1, 2), Q(1, 4)}, DaggerChain::Target::Zero, A);
    CHECK(z.chain.size() == 2);
    CHECK(kind_of([] { dagger_chain(1, 3, {Q(2), Q(4)}, DaggerChain::Target::One, A); }) ==
          ErrorKind::ScheduleNotDecreasing);
}
