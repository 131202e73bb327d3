#pragma once

#include "indban/group.hpp"
#include "indban/ind.hpp"
#include "indban/nspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace indban {

// Structure constants. mult is d x d^2 (column i*d+j is e_i e_j); comult is d^2 x d; counit is a row.
struct AlgebraData {
    SpacePtr carrier;
    Matrix mult;
    Vec unit;
};

struct CoalgebraData {
    SpacePtr carrier;
    Matrix comult;
    Vec counit;
};

struct BialgebraData {
    std::string name;
    AlgebraData algebra;
    CoalgebraData coalgebra;
    std::vector<std::string> notes;
};

struct AxiomResult {
    std::string name;
    bool pass = true;
    std::string witness; // basis triple on failure
};

struct StructureNorm {
    std::string map;
    OperatorNorm norm;
};

struct StructureReport {
    std::vector<AxiomResult> axioms;
    std::vector<StructureNorm> norms;
    bool all_pass() const;
    const AxiomResult* first_failure() const;
    // true when every computed structure-map norm is exactly one
    bool norms_exactly_one() const;
};

StructureReport check_algebra(const AlgebraData& a, bool with_norms = true);
StructureReport check_coalgebra(const CoalgebraData& c, bool with_norms = true);
StructureReport check_bialgebra(const BialgebraData& b, bool with_norms = true);

// Pairing <a_i, b_j> = P(i, j) between the carriers of A and B; checks that it exchanges
// mult <-> comult and unit <-> counit, and that it is perfect.
StructureReport check_duality(const BialgebraData& a, const BialgebraData& b, const Matrix& pairing);

enum class CounitConvention { GroupLike, Delta };

BialgebraData group_bialgebra(const FiniteGroup& g, const ValuedField& field,
                              CounitConvention counit = CounitConvention::GroupLike);
BialgebraData grading_bialgebra(const FiniteGroup& g, const ValuedField& field);
// Coalgebra on the window t^{-N}..t^{N}; the bialgebra request always fails with WindowNotGroup.
CoalgebraData grading_window_coalgebra(long n, const ValuedField& field);
BialgebraData grading_window_bialgebra(long n, const ValuedField& field);
BialgebraData function_bialgebra(const FiniteGroup& g, const ValuedField& field);

// Monomials t^n with |n|_1 <= degree in nvars variables, ordered by degree then lexicographically.
std::vector<std::vector<unsigned>> monomials(std::size_t nvars, unsigned degree);
std::string monomial_label(const std::vector<unsigned>& n);

// Carrier with weights prod r_i^{n_i} (SUM archimedean, MAX otherwise).
SpacePtr tate_carrier(std::size_t nvars, unsigned degree, const std::vector<Q>& radii, const ValuedField& field);

struct TateReport {
    CoalgebraData coalgebra;
    NormEnclosure counit_norm;
    NormEnclosure comult_norm;        // into the same-radius tensor square
    NormEnclosure squared_comult_norm; // from radius r^2 into radius r ⊗ radius r
    bool counit_bounded = false;      // norm does not grow from degree D to D+1
    bool comult_bounded = false;
};

constexpr unsigned kTateDegreeCap = 12;
constexpr std::size_t kTateVarCap = 3;

TateReport tate_coalgebra(std::size_t nvars, unsigned degree, const std::vector<Q>& radii, const ValuedField& field);
TateReport tate_coalgebra(std::size_t nvars, unsigned degree, const Q& radius, const ValuedField& field);

struct DaggerComult {
    std::size_t from, to; // radius r_to^2 <= r_from
    BoundedMap map;
};

struct DaggerChain {
    enum class Target { One, Zero } target = Target::One;
    std::vector<Q> schedule;
    IndObject chain;
    std::vector<CoalgebraData> stages;
    std::vector<DaggerComult> comults;
};

DaggerChain dagger_chain(std::size_t nvars, unsigned degree, const std::vector<Q>& schedule, DaggerChain::Target target,
                         const ValuedField& field);

} // namespace indban
