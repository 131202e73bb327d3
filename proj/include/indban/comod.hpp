#pragma once

#include "indban/hopf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace indban {

// action: dM x (dA * dM), column a*dM+m is a_a . e_m
struct ModuleData {
    AlgebraData algebra;
    SpacePtr carrier;
    Matrix action;
};

// coaction: (dB * dM) x dM, m -> sum b_j ⊗ m_j
struct ComoduleData {
    CoalgebraData coalgebra;
    SpacePtr carrier;
    Matrix coaction;
};

StructureReport check_module(const ModuleData& m, bool with_norms = true);
StructureReport check_comodule(const ComoduleData& c, bool with_norms = true);

// Graded space on the window [-N, N]; summands sorted by degree.
struct GradedSpace {
    struct Summand {
        long degree;
        SpacePtr space;
    };
    ValuedField field;
    long window = 0;
    std::vector<Summand> summands;

    SpacePtr total() const; // contracting coproduct of the summands
    std::vector<long> degrees_of_coordinates() const;
};

bool same_graded(const GradedSpace& a, const GradedSpace& b);

ComoduleData graded_to_comodule(const GradedSpace& g);
// The coalgebra must be grouplike with basis labels t^n; summands become coordinate subsets.
GradedSpace comodule_to_graded(const ComoduleData& c);

struct MonoidalCheck {
    bool overflow_skipped = false;
    bool pass = false;
    std::string witness;
};
// Coaction on G1 ⊗ G2 built from degrees agrees with (mult ⊗ id)(id ⊗ swap ⊗ id)(rho1 ⊗ rho2).
MonoidalCheck check_monoidal(const GradedSpace& a, const GradedSpace& b);

// Tensor of comodules over a bialgebra.
ComoduleData tensor_comodules(const BialgebraData& b, const ComoduleData& x, const ComoduleData& y);

struct RepReport {
    NormEnclosure sup_norm;
    bool isometric = false;
};

// pi[g] is the matrix of g on V.
void check_homomorphism(const FiniteGroup& g, const std::vector<Matrix>& pi);
ModuleData rep_to_module(const FiniteGroup& g, const SpacePtr& v, const std::vector<Matrix>& pi);
std::vector<Matrix> module_to_rep(const FiniteGroup& g, const ModuleData& m);
RepReport rep_report(const SpacePtr& v, const std::vector<Matrix>& pi, const FiniteGroup& g);

// Dual bialgebra through a perfect pairing P(i, j) = <a_i, b_j>.
BialgebraData dualize(const BialgebraData& a, const Matrix& pairing);
// A left A-module becomes a left comodule over the co-opposite of the dual coalgebra.
ComoduleData module_to_comodule(const ModuleData& m, const CoalgebraData& dual, const Matrix& pairing);
ModuleData comodule_to_module(const ComoduleData& c, const AlgebraData& a, const Matrix& pairing);

struct AdjunctionReport {
    std::size_t free_side_dim = 0, forgetful_side_dim = 0;    // Hom_Γ(∐ W, V) and Hom(W, V)
    std::size_t cofree_side_dim = 0, forgetful2_side_dim = 0; // Hom_Γ(V, C(Γ, W)) and Hom(V, W)
    bool bijection_free = false, bijection_cofree = false;
    bool isometric_free = false, isometric_cofree = false;
    bool all_pass() const { return bijection_free && bijection_cofree && isometric_free && isometric_cofree; }
};

// V: representation space with matrices pi; W: plain space.
AdjunctionReport finite_adjunction_check(const FiniteGroup& g, const SpacePtr& v, const std::vector<Matrix>& pi,
                                         const SpacePtr& w);

// Equivariant maps between two representations: basis of Hom_Γ.
std::vector<Matrix> equivariant_maps(const FiniteGroup& g, const std::vector<Matrix>& src, const std::vector<Matrix>& dst);

} // namespace indban
