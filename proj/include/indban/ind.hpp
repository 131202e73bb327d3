#pragma once

#include "indban/nspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace indban {

// Finite filtered diagram of spaces. Transitions are given on generating relations i -> j;
// all composites are derived and checked for coherence.
class IndObject {
public:
    struct Edge {
        std::size_t from, to;
        Matrix map;
    };

    IndObject(std::vector<SpacePtr> stages, std::vector<Edge> edges);
    static IndObject singleton(SpacePtr space);
    static IndObject chain(std::vector<SpacePtr> stages, std::vector<Matrix> transitions);

    std::size_t size() const { return stages_.size(); }
    const SpacePtr& stage(std::size_t i) const { return stages_.at(i); }
    const std::vector<SpacePtr>& stages() const { return stages_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool leq(std::size_t i, std::size_t j) const { return transition_[i][j].has_value(); }
    // composite transition X(i) -> X(j) for i <= j
    const Matrix& transition(std::size_t i, std::size_t j) const;
    std::size_t top() const { return top_; }
    bool is_chain() const;

private:
    std::vector<SpacePtr> stages_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::optional<Matrix>>> transition_;
    std::size_t top_ = 0;
};

// Hom(X, Y) = lim_i colim_j Hom(X(i), Y(j)), realized as compatible families phi_i: X(i) -> Y(top).
struct HomDescription {
    std::size_t dim = 0;
    std::size_t x_top = 0, y_top = 0;
    std::vector<std::vector<Matrix>> basis; // basis[b][i] is the i-th member of the b-th family
};

HomDescription hom(const IndObject& x, const IndObject& y);
// Normal form of the class of phi: X(i) -> Y(j): pushed to Y's top.
Matrix hom_normal_form(const IndObject& y, std::size_t j, const Matrix& phi);
bool hom_equal(const IndObject& y, std::size_t j1, const Matrix& phi1, std::size_t j2, const Matrix& phi2);
// Compatibility of a family phi_i: X(i) -> Y(top): phi_j t_ij = phi_i.
bool hom_compatible(const IndObject& x, const std::vector<Matrix>& family);

// Seminorm of the contracting colimit of a chain: s_i(v) = min over j >= i of ||t_ij v||.
struct ContractingColimit {
    IndObject chain;
    bool degenerate = false;                // a nonzero vector at some stage has seminorm 0
    std::vector<std::size_t> kernel_dims;   // dim ker t_{i,top} per stage
    NormEnclosure seminorm(std::size_t stage, const Vec& v) const;
};
ContractingColimit contracting_colimit(const IndObject& chain);

// Functors evaluated stagewise on Ind-objects.
struct SpaceFunctor {
    enum class Kind { TensorWith, Scale, Functions } kind = Kind::Scale;
    SpacePtr v;           // TensorWith
    NormValue lambda;     // Scale
    std::size_t copies = 0; // Functions: |Γ|

    static SpaceFunctor tensor_with(SpacePtr v);
    static SpaceFunctor scale(const NormValue& lambda);
    static SpaceFunctor functions(std::size_t group_order);

    SpacePtr on_space(const SpacePtr& s) const;
    Matrix on_map(const Matrix& m) const;
    std::string name() const;
};

IndObject evaluate_functor(const SpaceFunctor& f, const IndObject& x);

} // namespace indban
