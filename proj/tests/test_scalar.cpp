#include "fields.hpp"
#include "oracles.hpp"

#include "indban/error.hpp"
#include "indban/extension.hpp"
#include "indban/field.hpp"
#include "indban/polynomial.hpp"
#include "indban/real.hpp"

#include <doctest.h>

#include <random>

using namespace indban;

TEST_CASE("absolute values") {
    CHECK(ValuedField::padic(3).abs(Q(12)) == NormValue::padic_power(3, Q(-1)));
    CHECK(ValuedField::padic(3).abs(Q(1)).is_one());
    CHECK(ValuedField::archimedean().abs(Q(1)).is_one());
    CHECK(ValuedField::archimedean().abs(Q(-7, 2)).rational() == Q(7, 2));
    CHECK(ValuedField::padic(5).abs(Q(0)).is_zero());
}

TEST_CASE("p-adic absolute value agrees with the valuation oracle") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-2000, 2000), den(1, 500);
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
        for (int t = 0; t < 200; ++t) {
            Q x(num(rng), den(rng));
            x.canonicalize();
            NormValue a = ValuedField::padic(p).abs(x);
            CHECK(a.rational() == oracle::absval(x, p));
        }
}

TEST_CASE("strong triangle inequality and multiplicativity") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-300, 300), den(1, 60);
    ValuedField f = ValuedField::padic(3);
    for (int t = 0; t < 300; ++t) {
        Q x(num(rng), den(rng)), y(num(rng), den(rng));
        x.canonicalize();
        y.canonicalize();
        CHECK(f.abs(x + y) <= max(f.abs(x), f.abs(y)));
        CHECK(f.abs(x * y) == f.abs(x) * f.abs(y));
    }
}

TEST_CASE("norm value parsing") {
    ValuedField f = ValuedField::padic(3);
    CHECK(f.parse("3^-2").rational() == Q(1, 9));
    CHECK(f.parse("1/9") == f.parse("3^-2"));
    CHECK(ValuedField::archimedean().parse("1/8").rational() == Q(1, 8));
    CHECK_THROWS_AS(ValuedField::archimedean().parse("2^-3"), Error);
    CHECK_THROWS_AS(ValuedField::archimedean().parse("abc"), Error);
}

TEST_CASE("exact reals") {
    Real s = Real::sqrt(Q(2));
    CHECK(s * s == Real(Q(2)));
    CHECK(s.is_radical());
    CHECK(compare(s, Real(Q(141, 100))) > 0);
    CHECK(compare(s, Real(Q(142, 100))) < 0);
    Real r = Real::root({Q(-2), Q(0), Q(1)}, Q(1), Q(2));
    CHECK(less_equal(r, Real(Q(3, 2))) == Tri::True);
    CHECK_THROWS_AS(compare(r, s, 64), Error);
    CHECK(less_equal(r, s, 64) == Tri::Unknown);
    CHECK(max_of({Real(1), s, Real(Q(1, 2))}) == s);
    CHECK(Real(Q(3)).str() == "3");
    CHECK(r.str().front() == '~');
}

TEST_CASE("precision budget") {
    unsigned before = default_precision();
    set_default_precision(64);
    CHECK(default_precision() == 64);
    set_default_precision(before);
}

TEST_CASE("polynomials") {
    CHECK(test_irreducible({Q(1), Q(0), Q(0), Q(0), Q(1)}).irreducible);
    auto g = test_irreducible({Q(4), Q(0), Q(0), Q(0), Q(1)});
    CHECK_FALSE(g.irreducible);
    CHECK(poly_degree(poly_mod({Q(4), Q(0), Q(0), Q(0), Q(1)}, g.factor)) < 0);
    CHECK(rational_roots({Q(-2), Q(1), Q(1)}) == std::vector<Q>{Q(-2), Q(1)});
    CHECK(irreducible_mod_p({Q(-2), Q(0), Q(1)}, 5));
    CHECK_FALSE(irreducible_mod_p({Q(-2), Q(0), Q(1)}, 7));
    CHECK(sturm_count({Q(-2), Q(0), Q(1)}, Q(-2), Q(2)) == 2);
}

TEST_CASE("extension construction") {
    auto e = fixtures::qsqrt2();
    CHECK(e->degree() == 2);
    CHECK(e->group_order() == 2);
    std::size_t s = e->galois(0) == Matrix::identity(2) ? 1 : 0;
    CHECK(e->apply_galois(s, {Q(3), Q(1)}) == Vec{Q(3), Q(-1)});
    CHECK(e->apply_galois(1 - s, {Q(3), Q(1)}) == Vec{Q(3), Q(1)});

    auto q5 = fixtures::q5_quadratic();
    CHECK(q5->group_order() == 2);

    auto z = fixtures::zeta5();
    std::size_t gen = 0;
    for (std::size_t i = 0; i < z->group_order(); ++i)
        if (z->apply_galois(i, {Q(0), Q(1), Q(0), Q(0)}) == Vec{Q(0), Q(0), Q(1), Q(0)}) gen = i;
    CHECK(gen != 0);
    CHECK(z->multiply({Q(0), Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0), Q(0)}) == Vec{Q(0), Q(0), Q(1), Q(0)});
}

TEST_CASE("extension errors") {
    using fixtures::make_ext;
    ValuedField a = ValuedField::archimedean();
    auto kind = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidArgument;
    };
    CHECK(kind([&] { make_ext(a, {"-2", "0", "1"}, {}); }) == ErrorKind::GroupOrderMismatch);
    CHECK(kind([&] { make_ext(a, {"-2", "0", "1"}, {{"1", "1"}}); }) == ErrorKind::NotAutomorphism);
    CHECK(kind([&] { make_ext(a, {"-4", "0", "1"}, {{"0", "-1"}}); }) == ErrorKind::NotIrreducible);
    CHECK(kind([&] { make_ext(a, {"-2", "0", "0", "1"}, {}); }) == ErrorKind::GroupOrderMismatch);
    CHECK(kind([&] { make_ext(ValuedField::padic(7), {"-2", "0", "1"}, {{"0", "-1"}}); }) ==
          ErrorKind::UnsupportedExtension);
}

TEST_CASE("Galois elements are automorphisms on all basis products") {
    for (const auto& [name, e] : fixtures::descent_fields()) {
        CAPTURE(name);
        std::size_t n = e->degree();
        for (std::size_t s = 0; s < e->group_order(); ++s)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Vec a = unit_vector(n, i), b = unit_vector(n, j);
                    CHECK(e->apply_galois(s, e->multiply(a, b)) ==
                          e->multiply(e->apply_galois(s, a), e->apply_galois(s, b)));
                }
        // composition table is a group table
        std::vector<std::vector<std::size_t>> t(e->group_order(), std::vector<std::size_t>(e->group_order()));
        for (std::size_t s = 0; s < e->group_order(); ++s)
            for (std::size_t u = 0; u < e->group_order(); ++u) t[s][u] = e->compose(s, u);
        CHECK(oracle::is_group_table(t));
        CHECK(e->group_order() == n);
    }
}

TEST_CASE("field operations") {
    auto e = fixtures::biquadratic();
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> c(-5, 5);
    for (int t = 0; t < 20; ++t) {
        Vec a(4);
        for (auto& x : a) x = c(rng);
        if (vec_is_zero(a)) continue;
        CHECK(e->multiply(a, e->inverse(a)) == e->one());
        Vec sum(4, Q(0));
        for (std::size_t s = 0; s < e->group_order(); ++s) sum = vec_add(sum, e->apply_galois(s, a));
        CHECK(sum == e->from_rational(e->trace(a)));
    }
}

TEST_CASE("submultiplicativity of power-basis norms") {
    CHECK(check_submultiplicative(*fixtures::qsqrt2()).holds);
    CHECK_FALSE(check_submultiplicative(*fixtures::zeta5()).holds);
    CHECK(check_submultiplicative(*fixtures::q5_cubic()).holds);
}
