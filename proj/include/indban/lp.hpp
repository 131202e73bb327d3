#pragma once

#include "indban/nspace.hpp"

namespace indban {

// minimize c.x subject to A x = b, x >= 0, in exact rational arithmetic.
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded } status = Status::Infeasible;
    Q value;
    Vec x;
};
LpResult simplex_minimize(const std::vector<Vec>& A, const Vec& b, const Vec& c);

// inf over y of ||x0 + K y|| in the given space (K's columns span the subspace).
struct AffineMinimum {
    NormEnclosure value;
    Vec minimizer; // x0 + K y at the optimum (from the lower problem when inexact)
    bool exact = false;
};
AffineMinimum affine_min_norm(const DiagSpace& space, const Vec& x0, const Matrix& K);

} // namespace indban
