#pragma once

#include "indban/extension.hpp"
#include "indban/hopf.hpp"
#include "indban/tensor.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace indban {

using ExtPtr = std::shared_ptr<const FieldExtension>;

// Comultiplication convention on functions Γ -> L: Δf(σ, τ) = f(τσ) or f(στ).
enum class DeltaOrder { TauSigma, SigmaTau };
const char* to_string(DeltaOrder o);

// L ⊗_K L with basis e_i ⊗ e_j at i*n+j. The comultiplication lands in (L⊗L) ⊗_L (L⊗L), identified with
// L⊗L⊗L by (x⊗y)⊗(z⊗w) -> x⊗yz⊗w.
struct Cogebroid {
    ExtPtr ext;
    TensorSpace carrier;
    Matrix left_action;  // n^2 x n^3, column l*n^2 + (i*n+j): e_l e_i ⊗ e_j
    Matrix right_action; // n^2 x n^3, column (i*n+j)*n + l: e_i ⊗ e_j e_l
    Matrix counit;       // n x n^2, multiplication
    Matrix mult;         // n^2 x n^4
    Vec unit;            // 1⊗1
    Matrix comult;       // n^2 x ... canonical model: n^3 x n^2
    std::optional<BimoduleTensor> quotient; // explicit ⊗_L quotient for small degrees
    bool quotient_verified = false;
    std::string model_note;
    StructureReport report;
};

constexpr std::size_t kQuotientDegreeCap = 4;

Cogebroid build_cogebroid(const ExtPtr& ext);

// Functions Γ -> L at index σ*n+k, with the twisted left action and pointwise right action.
struct TwistedFunctions {
    ExtPtr ext;
    DeltaOrder order = DeltaOrder::TauSigma;
    SpacePtr carrier;
    Matrix left_action;  // (λ.f)(σ) = σ(λ) f(σ)
    Matrix right_action; // (f.λ)(σ) = f(σ) λ
    Matrix mult;         // pointwise
    Vec unit;            // constant 1
    Matrix comult;       // into functions on Γ×Γ at index (σ*g+τ)*n+k
    Matrix counit;       // evaluation at the identity, n x (g n)
    StructureReport report;
};

TwistedFunctions twisted_functions(const ExtPtr& ext, DeltaOrder order);

struct PhiReport {
    DeltaOrder order = DeltaOrder::TauSigma;
    Matrix phi;
    bool bijective = false;
    Q determinant;
    std::optional<Vec> normal_basis_element;
    std::vector<AxiomResult> identities; // algebra, unit, coalgebra, counit, left and right actions
    OperatorNorm norm;
    OperatorNorm inverse_norm;
    // sampled decomposition inequality |Σ σ(a_i) b_i| <= Σ |a_i||b_i| (norm-model-dependent)
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::string norm_model;
    bool all_identities() const;
};

PhiReport build_phi(const Cogebroid& c, DeltaOrder order, unsigned seed = 1, std::size_t samples = 100);

struct PairingReport {
    std::vector<AxiomResult> checks;
    bool nondegenerate = false;
    bool all_pass() const;
};

PairingReport pairing_reports(const Cogebroid& c);

// Comodule over the cogebroid: a K-space M with an L-action and coaction M -> L ⊗_K M.
struct CogComodule {
    std::size_t dim = 0;
    Matrix l_action; // d x (n d), column l*d+m is e_l . m
    Matrix coaction; // (n d) x d
};

StructureReport check_cog_comodule(const FieldExtension& ext, const CogComodule& m);
void require_cog_comodule(const FieldExtension& ext, const CogComodule& m); // throws NotAComodule

CogComodule induct(const FieldExtension& ext, std::size_t dim_v);
CogComodule regular_comodule(const FieldExtension& ext);

struct Descended {
    Matrix basis;      // columns: K-basis of the primitives inside M
    Matrix comparison; // L ⊗_K D -> M, a⊗d -> a.d
    std::size_t rank = 0;
};
Descended descend(const FieldExtension& ext, const CogComodule& m);
// comparison V -> descend(induct(V)) in the primitive basis; invertible when the round trip succeeds
Matrix descend_induct_comparison(const FieldExtension& ext, std::size_t dim_v, const Descended& d);
// induct(descend(M)) -> M is a comodule isomorphism
bool comparison_is_comodule_iso(const FieldExtension& ext, const CogComodule& m, const Descended& d);

struct SemilinearRep {
    std::vector<Matrix> pi; // one K-linear matrix per Galois element
};
SemilinearRep semilinear_from_comodule(const FieldExtension& ext, const CogComodule& m);
CogComodule comodule_from_semilinear(const FieldExtension& ext, const Matrix& l_action, const SemilinearRep& r);
// semilinearity π(σ)(λm) = σ(λ)π(σ)(m) and π(στ) = π(σ)π(τ)
std::vector<AxiomResult> check_semilinear(const FieldExtension& ext, const Matrix& l_action, const SemilinearRep& r);
Matrix fixed_points(const SemilinearRep& r);
bool same_subspace(const Matrix& a, const Matrix& b);

struct IwasawaReport {
    DeltaOrder order = DeltaOrder::TauSigma;
    std::size_t dim = 0;
    bool associative = false;
    bool unital = false;
    bool perfect = false;
    bool matches_transpose = false; // closed-form convolution equals the transpose of Δ
    std::optional<std::pair<std::size_t, std::size_t>> twist_witness; // (basis index of λ, σ)
    std::string convention;
    bool all_pass() const { return associative && unital && perfect && matches_transpose; }
};

IwasawaReport iwasawa_dual(const ExtPtr& ext, DeltaOrder order);

struct TowerReport {
    std::size_t levels = 0;
    bool perfect = false;
    bool functorial = false;
};
// Z/p^n for n = 1..levels with constant coefficients.
TowerReport iwasawa_tower(unsigned long p, std::size_t levels);

struct LocallyConstant {
    std::size_t level = 0;
    Vec approximant;   // values on the deepest level
    NormValue bound;   // exact sup |f - g|
    bool within_oscillation = false;
};
// values: f on Z/p^depth; osc[n-1] is the caller's oscillation bound at level n.
LocallyConstant locally_constant_approx(const ValuedField& field, unsigned long p, std::size_t depth, const Vec& values,
                                        const std::vector<NormValue>& osc, const NormValue& eps);

} // namespace indban
