#pragma once

#include "indban/lp.hpp"
#include "indban/nspace.hpp"

namespace indban {

// Projective tensor product of two diagonal spaces. Coordinate (i, j) sits at i * dim(b) + j.
struct TensorSpace {
    SpacePtr space;
    SpacePtr left, right;
    bool exact() const { return space->exact(); }
};

TensorSpace tensor(const SpacePtr& a, const SpacePtr& b);
BoundedMap tensor_map(const BoundedMap& f, const BoundedMap& g);

// Associator (A⊗B)⊗C -> A⊗(B⊗C) and unitors k⊗A -> A, A⊗k -> A. With the index convention these are identities.
BoundedMap associator(const SpacePtr& a, const SpacePtr& b, const SpacePtr& c);
BoundedMap left_unitor(const SpacePtr& a);
BoundedMap right_unitor(const SpacePtr& a);

// Raw structure of an algebra S acting on M from the right and on N from the left.
// right_action: dim M x (dim M * dim S), column i*dS+k is e_i . s_k
// left_action:  dim N x (dim S * dim N), column k*dN+j is s_k . f_j
struct BimoduleInput {
    SpacePtr m, n;
    Matrix right_action;
    Matrix left_action;
    Matrix s_mult; // dS x dS^2
    Vec s_unit;
};

// M ⊗_S N as the quotient of M ⊗ N by (m.s)⊗n - m⊗(s.n).
struct BimoduleTensor {
    TensorSpace ambient;
    Matrix relations;                // columns: reduced basis of the relation span
    std::vector<std::size_t> basis;  // ambient coordinates representing the quotient basis
    std::vector<std::string> labels;
    Matrix projection;               // ambient -> quotient coordinates
    Matrix lift;                     // quotient coordinates -> ambient
    bool degenerate = false;         // some nonzero class of seminorm zero

    std::size_t dim() const { return basis.size(); }
    AffineMinimum seminorm(const Vec& q) const;
};

BimoduleTensor bimodule_tensor(const BimoduleInput& in);

// Checks (m.s).t = m.(st), m.1 = m and the left analogues; throws NotAnAction with a witness.
void check_right_action(const Matrix& action, std::size_t dm, const Matrix& s_mult, const Vec& s_unit);
void check_left_action(const Matrix& action, std::size_t dn, const Matrix& s_mult, const Vec& s_unit);

} // namespace indban
