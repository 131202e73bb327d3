#include "fields.hpp"
#include "oracles.hpp"

#include "indban/comod.hpp"
#include "indban/descent.hpp"
#include "indban/error.hpp"
#include "indban/hopf.hpp"
#include "indban/ind.hpp"
#include "indban/nspace.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace indban;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string note;
    void require(bool ok, const std::string& why) {
        if (!ok && pass) {
            pass = false;
            note = why;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.note = e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) o.require(false, "runtime above " + std::to_string(limit_s) + " s");
    std::printf("%s  %2d  %s  (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
                o.note.empty() ? "" : "  ", o.note.c_str());
    std::fflush(stdout);
    failures += !o.pass;
}

ValuedField A = ValuedField::archimedean();

SpacePtr flat(const ValuedField& f, const std::vector<Q>& w, Flavor fl) {
    std::vector<NormValue> nw;
    std::vector<std::string> labels;
    for (const auto& x : w) {
        nw.push_back(f.weight(x));
        labels.push_back("e" + std::to_string(labels.size()));
    }
    return share(DiagSpace::flat(f, labels, nw, fl));
}

oracle::Space to_oracle(const DiagSpace& s) {
    oracle::Space o;
    for (const auto& w : s.weights()) o.weights.push_back(w.rational());
    o.sum = s.flavor() == Flavor::Sum;
    o.p = s.field().archimedean_backend() ? 0 : s.field().prime();
    return o;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> e(-4, 4);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, Q(e(rng)));
    return m;
}

std::vector<Matrix> regular_rep(const FiniteGroup& g) {
    std::vector<Matrix> pi;
    for (std::size_t a = 0; a < g.order(); ++a) {
        Matrix m(g.order(), g.order());
        for (std::size_t b = 0; b < g.order(); ++b) m.set(g.mul(a, b), b, Q(1));
        pi.push_back(m);
    }
    return pi;
}

} // namespace

int main() {
    criterion(1, "contracting (co)product universal property on 200 random families", 5, [](Outcome& o) {
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<int> nsp(1, 5), dim(1, 4), w(1, 6), coin(0, 1);
        std::uniform_int_distribution<int> pexp(-2, 2);
        for (int t = 0; t < 200; ++t) {
            bool padic = t % 2 == 1;
            ValuedField f = padic ? ValuedField::padic(t % 4 == 1 ? 3 : 5) : A;
            auto rs = [&] {
                std::vector<Q> ws(static_cast<std::size_t>(dim(rng)));
                for (auto& x : ws) x = padic ? oracle::qpow(Q(static_cast<long>(f.prime())), pexp(rng)) : oracle::random_frac(w, rng);
                return flat(f, ws, coin(rng) ? Flavor::Sum : Flavor::Max);
            };
            auto u = rs();
            std::vector<SpacePtr> fam;
            std::vector<BoundedMap> into, outof;
            NormValue m_in = f.zero(), m_out = f.zero();
            int k = nsp(rng);
            for (int i = 0; i < k; ++i) {
                fam.push_back(rs());
                into.emplace_back(u, fam.back(), random_matrix(rng, fam.back()->dim(), u->dim()));
                outof.emplace_back(fam.back(), u, random_matrix(rng, u->dim(), fam.back()->dim()));
                m_in = max(m_in, into.back().norm().upper);
                m_out = max(m_out, outof.back().norm().upper);
            }
            auto prod = contracting_product(fam);
            auto cop = contracting_coproduct(fam);
            BoundedMap a = assemble_into_product(into, m_in);
            BoundedMap b = assemble_from_coproduct(outof, m_out);
            for (int i = 0; i < k; ++i) {
                o.require(prod.projections[i] * a.matrix() == into[i].matrix(), "projection round trip");
                o.require(b.matrix() * cop.injections[i] == outof[i].matrix(), "injection round trip");
            }
            o.require(a.norm().upper <= m_in, "assembled product norm above M");
            o.require(b.norm().upper <= m_out, "assembled coproduct norm above M");
            // the sup of the member norms is attained: M is the least admissible bound
            o.require(a.norm().upper == m_in && b.norm().upper == m_out, "assembled norm differs from the sup");
        }
    });

    criterion(2, "closed-form operator norms equal brute-force extreme-point maxima on 200 maps", 10, [](Outcome& o) {
        std::mt19937_64 rng(2);
        std::uniform_int_distribution<int> w(1, 5), pexp(-2, 2), small(1, 4), big(1, 8);
        int t = 0;
        const Flavor pairs[4][2] = {{Flavor::Sum, Flavor::Sum}, {Flavor::Sum, Flavor::Max}, {Flavor::Max, Flavor::Max},
                                    {Flavor::Max, Flavor::Sum}};
        for (; t < 200; ++t) {
            bool padic = t % 5 == 4;
            ValuedField f = padic ? ValuedField::padic(3) : A;
            auto [df, cf] = std::pair(pairs[t % 4][0], pairs[t % 4][1]);
            std::size_t dd = static_cast<std::size_t>(padic ? small(rng) : big(rng)), cd = static_cast<std::size_t>(small(rng));
            std::vector<Q> dw(dd), cw(cd);
            for (auto& x : dw) x = padic ? oracle::qpow(Q(3), pexp(rng)) : oracle::random_frac(w, rng);
            for (auto& x : cw) x = padic ? oracle::qpow(Q(3), pexp(rng)) : oracle::random_frac(w, rng);
            auto dom = flat(f, dw, df), cod = flat(f, cw, cf);
            Matrix m = random_matrix(rng, cd, dd);
            OperatorNorm n = operator_norm(*dom, *cod, m);
            o.require(n.exact, "closed form not exact");
            oracle::Dense dense(cd, oracle::Vec(dd));
            for (std::size_t i = 0; i < cd; ++i)
                for (std::size_t j = 0; j < dd; ++j) dense[i][j] = m.at(i, j);
            Q want = oracle::brute_opnorm(to_oracle(*dom), to_oracle(*cod), dense);
            o.require(n.value.upper.rational() == want,
                      "map " + std::to_string(t) + ": " + n.value.upper.str() + " vs oracle " + want.get_str());
        }
    });

    criterion(3, "delta swap norm equals N for N = 1..6", 0, [](Outcome& o) {
        for (std::size_t n = 1; n <= 6; ++n) {
            // the canonical map is a coordinate bijection: the only preimage of δ is δ,
            // whose SUM-of-MAX norm is Σ_i max_j |δ_ij| = N
            Q oracle_value = 0;
            for (std::size_t i = 0; i < n; ++i) {
                Q row = 0;
                for (std::size_t j = 0; j < n; ++j) row = std::max(row, Q(i == j ? 1 : 0));
                oracle_value += row;
            }
            auto r = delta_swap(n);
            o.require(r.kernel_dim == 0, "nontrivial kernel");
            o.require(r.preimage_norm.rational() == oracle_value, "N = " + std::to_string(n));
            o.require(delta_swap_norm(n).rational() == Q(static_cast<long>(n)), "delta_swap_norm");
            o.require(r.image_norm.is_one(), "image norm");
        }
    });

    criterion(4, "halving chain seminorm of 1 equals 2^-n for n = 1..20", 0, [](Outcome& o) {
        SpacePtr k = flat(A, {Q(1)}, Flavor::Sum);
        for (std::size_t n = 1; n <= 20; ++n) {
            std::vector<SpacePtr> st(n + 1, k);
            std::vector<Matrix> tr(n, Matrix::from_rows({{Q(1, 2)}}));
            auto s = contracting_colimit(IndObject::chain(st, tr)).seminorm(0, {Q(1)});
            o.require(s.exact() && s.upper.rational() == oracle::qpow(Q(2), -static_cast<long>(n)),
                      "n = " + std::to_string(n) + ": " + s.str());
        }
    });

    criterion(5, "group bialgebras of all 14 groups of order <= 8; fault mutants caught", 10, [](Outcome& o) {
        auto groups = groups_up_to_order_8();
        o.require(groups.size() == 14, "expected 14 isomorphism types");
        for (const auto& g : groups) {
            o.require(oracle::is_group_table(g.table()), g.name() + " is not a group");
            for (ValuedField f : {A, ValuedField::padic(2)}) {
                auto b = group_bialgebra(g, f);
                auto r = check_bialgebra(b);
                o.require(r.all_pass(), g.name() + ": " + (r.first_failure() ? r.first_failure()->name : ""));
                o.require(r.norms_exactly_one(), g.name() + ": a structure norm differs from 1");
                // mutants: one comultiplication entry, one multiplication entry, the delta counit
                if (g.order() < 2) continue;
                auto m1 = b;
                m1.coalgebra.comult.set(0, 1, Q(1));
                auto r1 = check_bialgebra(m1, false);
                o.require(!r1.all_pass() && !r1.first_failure()->witness.empty(), g.name() + ": comult mutant passed");
                auto m2 = b;
                m2.algebra.mult.set(0, 1 * g.order() + 1, Q(2));
                o.require(!check_bialgebra(m2, false).all_pass(), g.name() + ": mult mutant passed");
                auto m3 = group_bialgebra(g, f, CounitConvention::Delta);
                auto r3 = check_bialgebra(m3, false);
                o.require(!r3.all_pass() && !r3.first_failure()->witness.empty(), g.name() + ": delta counit passed");
            }
        }
    });

    criterion(6, "Tate boundedness: counit iff r >= 1, comult iff r <= 1, squared comult norm 1", 0, [](Outcome& o) {
        for (const Q& r : {Q(1, 4), Q(1, 2), Q(1), Q(3, 2), Q(2)})
            for (unsigned d = 1; d <= 8; ++d) {
                auto t = tate_coalgebra(1, d, r, A);
                std::string at = "r = " + r.get_str() + ", D = " + std::to_string(d);
                Q counit = 0;
                for (unsigned n = 0; n <= d; ++n) counit = std::max(counit, Q(1 / oracle::qpow(r, n)));
                o.require(t.counit_norm.upper.rational() == counit, at + ": counit norm");
                o.require(t.counit_bounded == (r >= 1), at + ": counit boundedness");
                o.require(t.comult_bounded == (r <= 1), at + ": comult boundedness");
                o.require(t.squared_comult_norm.exact() && t.squared_comult_norm.upper.is_one(), at + ": squared comult");
            }
    });

    criterion(7, "graded <-> comodule round trips on 100 random windows; monoidal on non-overflowing", 0, [](Outcome& o) {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> cnt(0, 4), dim(1, 3), w(1, 4), coin(0, 1);
        auto random_graded = [&](long window) {
            std::uniform_int_distribution<long> deg(-window, window);
            GradedSpace g;
            g.field = A;
            g.window = window;
            std::vector<long> used;
            int c = cnt(rng);
            for (int i = 0; i < c; ++i) {
                long d = deg(rng);
                if (std::find(used.begin(), used.end(), d) != used.end()) continue;
                used.push_back(d);
                std::vector<Q> ws(static_cast<std::size_t>(dim(rng)));
                for (auto& x : ws) x = oracle::random_frac(w, rng);
                g.summands.push_back({d, flat(A, ws, coin(rng) ? Flavor::Sum : Flavor::Max)});
            }
            std::sort(g.summands.begin(), g.summands.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
            return g;
        };
        for (int t = 0; t < 100; ++t) {
            auto g = random_graded(3);
            auto c = graded_to_comodule(g);
            o.require(check_comodule(c, false).all_pass(), "comodule axioms");
            o.require(same_graded(g, comodule_to_graded(c)), "round trip");
        }
        int checked = 0;
        for (int t = 0; t < 100; ++t) {
            auto m = check_monoidal(random_graded(4), random_graded(4));
            if (m.overflow_skipped) continue;
            ++checked;
            o.require(m.pass, "monoidal: " + m.witness);
        }
        o.require(checked >= 20, "too few non-overflowing pairs");
    });

    criterion(8, "rep <-> module round trips for groups of order <= 8; group/function duality exact", 0, [](Outcome& o) {
        for (const auto& g : groups_up_to_order_8()) {
            auto pi = regular_rep(g);
            auto v = share(DiagSpace::flat_unit(A, g.order(), Flavor::Sum));
            auto m = rep_to_module(g, v, pi);
            o.require(check_module(m, false).all_pass(), g.name() + ": module axioms");
            o.require(module_to_rep(g, m) == pi, g.name() + ": round trip");
            // trivial representation on a 2-dimensional space
            std::vector<Matrix> triv(g.order(), Matrix::identity(2));
            auto mt = rep_to_module(g, flat(A, {Q(1), Q(2)}, Flavor::Max), triv);
            o.require(module_to_rep(g, mt) == triv, g.name() + ": trivial round trip");
            auto gb = group_bialgebra(g, A);
            auto fb = function_bialgebra(g, A);
            auto d = check_duality(gb, fb, Matrix::identity(g.order()));
            o.require(d.all_pass(), g.name() + ": duality");
            // mult of one side is the transpose of comult of the other, entry by entry
            o.require(gb.algebra.mult.transpose() == fb.coalgebra.comult, g.name() + ": mult vs comult");
            o.require(gb.coalgebra.comult.transpose() == fb.algebra.mult, g.name() + ": comult vs mult");
        }
    });

    criterion(9, "Galois descent, exact, over six fields", 30, [](Outcome& o) {
        for (const auto& [name, e] : fixtures::descent_fields()) {
            const auto& f = *e;
            auto c = build_cogebroid(e);
            o.require(c.report.all_pass(), name + ": cogebroid");
            auto phi = build_phi(c, DeltaOrder::TauSigma);
            o.require(phi.bijective, name + ": phi singular");
            o.require(phi.all_identities(), name + ": intertwining identity");
            if (!f.base().archimedean_backend())
                o.require(phi.norm.exact && phi.norm.value.upper.is_one(), name + ": ||phi|| != 1");
            auto pr = pairing_reports(c);
            o.require(pr.all_pass(), name + ": pairing laws");
            for (std::size_t dv : {1u, 2u}) {
                auto m = induct(f, dv);
                auto d = descend(f, m);
                Matrix x = descend_induct_comparison(f, dv, d);
                o.require(x.rows() == dv && x.cols() == dv && invertible(x), name + ": descend(induct(V))");
                o.require(comparison_is_comodule_iso(f, m, d), name + ": induct(descend(M))");
                auto rep = semilinear_from_comodule(f, m);
                o.require(same_subspace(fixed_points(rep), d.basis), name + ": fixed points vs primitives");
            }
            auto reg = regular_comodule(f);
            auto dr = descend(f, reg);
            o.require(dr.basis.cols() == 1 && comparison_is_comodule_iso(f, reg, dr), name + ": regular comodule");
            o.require(same_subspace(fixed_points(semilinear_from_comodule(f, reg)), dr.basis), name + ": regular fixed points");
        }
    });

    criterion(10, "Iwasawa duality: perfect pairing and twist witness at degrees <= 8; Z/3^n tower", 0, [](Outcome& o) {
        auto fields = fixtures::descent_fields();
        fields.emplace_back("Q(zeta7)", fixtures::zeta7());
        fields.emplace_back("Q(zeta16)", fixtures::zeta16());
        fields.emplace_back("S3 sextic", fixtures::s3());
        for (const auto& [name, e] : fields)
            for (auto order : {DeltaOrder::TauSigma, DeltaOrder::SigmaTau}) {
                auto r = iwasawa_dual(e, order);
                std::string at = name + " [" + to_string(order) + "]";
                o.require(r.perfect, at + ": pairing not perfect");
                o.require(r.all_pass(), at + ": convolution");
                o.require(r.twist_witness.has_value(), at + ": no twist witness");
            }
        auto t = iwasawa_tower(3, 3);
        o.require(t.perfect, "tower pairing");
        o.require(t.functorial, "tower functoriality");
    });

    criterion(11, "locally constant approximation on Z/3^n: minimal level and exact bound", 0, [](Outcome& o) {
        ValuedField f = ValuedField::padic(3);
        for (std::size_t depth = 1; depth <= 5; ++depth) {
            std::size_t size = 1;
            for (std::size_t i = 0; i < depth; ++i) size *= 3;
            Vec values;
            for (std::size_t x = 0; x < size; ++x) values.push_back(Q(static_cast<long>(x * x)));
            std::vector<NormValue> osc;
            for (std::size_t k = 1; k <= depth; ++k) {
                Q w = oracle::oscillation(values, 3, k);
                osc.push_back(w == 0 ? f.zero() : f.weight(w));
            }
            for (long e = 0; e <= static_cast<long>(depth); ++e) {
                Q eps = oracle::qpow(Q(3), -e);
                std::size_t want = 0;
                for (std::size_t k = 1; k <= depth && !want; ++k)
                    if (oracle::oscillation(values, 3, k) <= eps) want = k;
                if (!want) continue;
                auto r = locally_constant_approx(f, 3, depth, values, osc, f.weight(eps));
                std::string at = "depth " + std::to_string(depth) + ", eps 3^-" + std::to_string(e);
                o.require(r.level == want, at + ": level");
                std::size_t m = 1;
                for (std::size_t i = 0; i < want; ++i) m *= 3;
                Q sup = 0;
                for (std::size_t x = 0; x < size; ++x) sup = std::max(sup, oracle::absval(values[x] - values[x % m], 3));
                o.require(r.bound.rational() == sup, at + ": bound");
                o.require(r.bound <= f.weight(eps), at + ": bound above eps");
            }
        }
    });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
