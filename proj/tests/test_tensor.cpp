#include "oracles.hpp"

#include "indban/error.hpp"
#include "indban/tensor.hpp"

#include <doctest.h>

#include <random>

using namespace indban;

namespace {

ValuedField A = ValuedField::archimedean();

SpacePtr flat(const ValuedField& f, std::vector<Q> w, Flavor fl, std::string prefix = "e") {
    std::vector<NormValue> nw;
    std::vector<std::string> labels;
    for (const auto& x : w) {
        nw.push_back(f.weight(x));
        labels.push_back(prefix + std::to_string(labels.size()));
    }
    return share(DiagSpace::flat(f, labels, nw, fl));
}

} // namespace

TEST_CASE("tensor of l1 spaces") {
    auto ab = share(l1(A, {"a", "b"})), cd = share(l1(A, {"c", "d"}));
    auto t = tensor(ab, cd);
    CHECK(t.exact());
    CHECK(t.space->dim() == 4);
    CHECK(t.space->flavor() == Flavor::Sum);
    for (const auto& w : t.space->weights()) CHECK(w.is_one());
    CHECK(t.space->norm({Q(1), Q(1), Q(1), Q(1)}).rational() == 4);
}

TEST_CASE("weights multiply on elementary tensors") {
    auto t = tensor(flat(A, {2}, Flavor::Sum), flat(A, {3}, Flavor::Sum));
    CHECK(t.space->weight(0).rational() == 6);
    auto id = tensor_map(BoundedMap::identity(flat(A, {2}, Flavor::Max)), BoundedMap::identity(flat(A, {3}, Flavor::Sum)));
    CHECK(id.matrix() == Matrix::identity(1));
    CHECK(id.norm().upper.is_one());
}

TEST_CASE("projective norm is a cross norm on elementary tensors") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> e(-4, 4), w(1, 4), coin(0, 1), dim(1, 3);
    for (int t = 0; t < 80; ++t) {
        ValuedField f = coin(rng) ? A : ValuedField::padic(3);
        auto rs = [&] {
            std::vector<Q> ws(static_cast<std::size_t>(dim(rng)));
            for (auto& x : ws) x = Q(w(rng));
            return flat(f, ws, coin(rng) ? Flavor::Sum : Flavor::Max);
        };
        auto a = rs(), b = rs();
        auto ts = tensor(a, b);
        Vec x(a->dim()), y(b->dim());
        for (auto& v : x) v = e(rng);
        for (auto& v : y) v = e(rng);
        Vec xy;
        for (const auto& u : x)
            for (const auto& v : y) xy.push_back(u * v);
        NormEnclosure n = ts.space->norm_bounds(xy);
        NormValue expect = a->norm(x) * b->norm(y);
        CHECK(n.lower <= expect);
        CHECK(expect <= n.upper);
        if (ts.exact()) CHECK(n.upper == expect);
    }
}

TEST_CASE("tensor of maps has norm at most the product") {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> e(-3, 3), w(1, 3), coin(0, 1);
    for (int t = 0; t < 40; ++t) {
        auto rs = [&] { return flat(A, {Q(w(rng)), Q(w(rng))}, coin(rng) ? Flavor::Sum : Flavor::Max); };
        auto a = rs(), b = rs(), c = rs(), d = rs();
        auto rm = [&] {
            Matrix m(2, 2);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) m.set(i, j, Q(e(rng)));
            return m;
        };
        BoundedMap f(a, b, rm()), g(c, d, rm());
        BoundedMap fg = tensor_map(f, g);
        CHECK(fg.matrix() == kron(f.matrix(), g.matrix()));
        CHECK(less_equal(fg.norm().lower, f.norm().upper * g.norm().upper) != Tri::False);
    }
}

TEST_CASE("associator and unitors") {
    auto a = flat(A, {1, 2}, Flavor::Sum), b = flat(A, {3}, Flavor::Max), c = flat(A, {1, 1}, Flavor::Max);
    auto as = associator(a, b, c);
    CHECK(as.matrix() == Matrix::identity(4));
    CHECK(left_unitor(a).matrix() == Matrix::identity(2));
    CHECK(right_unitor(a).norm().upper.is_one());
}

TEST_CASE("balanced tensor over an algebra") {
    // S = k x k acting diagonally on M = k^2 (right) and N = k^2 (left): M ⊗_S N is 2-dimensional
    auto m = flat(A, {1, 1}, Flavor::Sum, "m"), n = flat(A, {1, 1}, Flavor::Sum, "n");
    Matrix s_mult(2, 4);
    s_mult.set(0, 0, Q(1));
    s_mult.set(1, 3, Q(1));
    Vec s_unit{Q(1), Q(1)};
    Matrix right(2, 4), left(2, 4);
    right.set(0, 0, Q(1)); // m0 . s0 = m0
    right.set(1, 3, Q(1)); // m1 . s1 = m1
    left.set(0, 0, Q(1));  // s0 . n0 = n0
    left.set(1, 3, Q(1));  // s1 . n1 = n1
    BimoduleTensor t = bimodule_tensor({m, n, right, left, s_mult, s_unit});
    CHECK(t.dim() == 2);
    CHECK_FALSE(t.degenerate);
    CHECK(t.projection * t.lift == Matrix::identity(2));
    CHECK(t.seminorm({Q(1), Q(0)}).value.upper.is_one());

    Matrix bad = right;
    bad.set(0, 0, Q(2));
    CHECK_THROWS_AS(check_right_action(bad, 2, s_mult, s_unit), Error);
}
