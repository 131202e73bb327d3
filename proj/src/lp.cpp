#include "indban/lp.hpp"

#include "indban/error.hpp"

#include <algorithm>

namespace indban {

namespace {

struct Tableau {
    std::vector<Vec> rows; // each row: coefficients then rhs
    std::vector<std::size_t> basis;
    std::size_t ncols = 0;

    void pivot(std::size_t r, std::size_t c) {
        Q inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Q f = rows[i][c];
            for (std::size_t j = 0; j <= ncols; ++j)
                if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
        }
        basis[r] = c;
    }

    // Bland's rule; returns false when unbounded.
    bool optimize(const Vec& cost, const std::vector<char>& allowed) {
        for (;;) {
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < ncols && enter == ncols; ++j) {
                if (!allowed[j]) continue;
                Q r = cost[j];
                for (std::size_t i = 0; i < rows.size(); ++i)
                    if (rows[i][j] != 0) r -= cost[basis[i]] * rows[i][j];
                if (r < 0) enter = j;
            }
            if (enter == ncols) return true;
            std::size_t leave = rows.size();
            Q best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                Q ratio = rows[i][ncols] / rows[i][enter];
                if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter);
        }
    }

    Q objective(const Vec& cost) const {
        Q v = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) v += cost[basis[i]] * rows[i][ncols];
        return v;
    }
};

} // namespace

LpResult simplex_minimize(const std::vector<Vec>& A, const Vec& b, const Vec& c) {
    const std::size_t m = A.size();
    const std::size_t n = c.size();
    if (b.size() != m) throw Error(ErrorKind::DimensionMismatch, "constraint rows and right-hand side differ");
    Tableau t;
    t.ncols = n + m;
    for (std::size_t i = 0; i < m; ++i) {
        if (A[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "constraint row length");
        Vec row(n + m + 1);
        bool neg = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) row[j] = neg ? Q(-A[i][j]) : A[i][j];
        row[n + i] = 1;
        row[n + m] = neg ? Q(-b[i]) : b[i];
        t.rows.push_back(std::move(row));
        t.basis.push_back(n + i);
    }
    Vec phase1(n + m);
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
    std::vector<char> all(n + m, 1);
    t.optimize(phase1, all);
    LpResult res;
    if (t.objective(phase1) != 0) {
        res.status = LpResult::Status::Infeasible;
        return res;
    }
    // drive artificials out of the basis, dropping redundant rows
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < n) {
            ++i;
            continue;
        }
        std::size_t col = n;
        for (std::size_t j = 0; j < n && col == n; ++j)
            if (t.rows[i][j] != 0) col = j;
        if (col < n) {
            t.pivot(i, col);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<long>(i));
            t.basis.erase(t.basis.begin() + static_cast<long>(i));
        }
    }
    Vec phase2(n + m);
    for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
    std::vector<char> allowed(n + m, 0);
    std::fill(allowed.begin(), allowed.begin() + static_cast<long>(n), 1);
    if (!t.optimize(phase2, allowed)) {
        res.status = LpResult::Status::Unbounded;
        return res;
    }
    res.status = LpResult::Status::Optimal;
    res.x.assign(n, 0);
    for (std::size_t i = 0; i < t.rows.size(); ++i) res.x[t.basis[i]] = t.rows[i][t.ncols];
    res.value = t.objective(phase2);
    return res;
}

namespace {

using Expr = std::vector<std::pair<std::size_t, Q>>;

struct LpBuilder {
    const NormTree& tree;
    const std::vector<Q>& w;
    std::size_t m, d;
    std::size_t next_var;
    std::vector<std::pair<Expr, Q>> geq; // expr >= rhs

    Expr build(const NormTree& t) {
        if (t.kind == NormTree::Kind::Leaf) return {{2 * m + t.coord, w[t.coord]}};
        Expr out;
        if (t.kind == NormTree::Kind::Sum) {
            for (const auto& c : t.children) {
                auto e = build(c);
                out.insert(out.end(), e.begin(), e.end());
            }
            return out;
        }
        std::size_t u = next_var++;
        for (const auto& c : t.children) {
            Expr e = build(c);
            for (auto& [v, coef] : e) coef = -coef;
            e.push_back({u, 1});
            geq.push_back({std::move(e), 0});
        }
        return {{u, 1}};
    }
};

// min over y of the tree norm of x0 + K y with rational weights.
std::pair<Q, Vec> solve_lp(const NormTree& tree, const std::vector<Q>& w, const Vec& x0, const Matrix& K) {
    const std::size_t d = x0.size(), m = K.cols();
    LpBuilder b{tree, w, m, d, 2 * m + d, {}};
    Matrix Kt = K.transpose();
    for (std::size_t i = 0; i < d; ++i) {
        Expr plus{{2 * m + i, 1}}, minus{{2 * m + i, 1}};
        for (const auto& [k, x] : Kt.column(i)) {
            plus.push_back({k, -x});
            plus.push_back({m + k, x});
            minus.push_back({k, x});
            minus.push_back({m + k, -x});
        }
        b.geq.push_back({std::move(plus), x0[i]});
        b.geq.push_back({std::move(minus), -x0[i]});
    }
    Expr objective = b.build(tree);
    std::size_t nvars = b.next_var + b.geq.size();
    std::vector<Vec> A;
    Vec rhs;
    for (std::size_t r = 0; r < b.geq.size(); ++r) {
        Vec row(nvars);
        for (const auto& [v, coef] : b.geq[r].first) row[v] += coef;
        row[b.next_var + r] = -1;
        A.push_back(std::move(row));
        rhs.push_back(b.geq[r].second);
    }
    Vec c(nvars);
    for (const auto& [v, coef] : objective) c[v] += coef;
    auto res = simplex_minimize(A, rhs, c);
    if (res.status != LpResult::Status::Optimal) throw Error(ErrorKind::InvalidArgument, "norm minimization LP failed");
    Vec y(m);
    for (std::size_t k = 0; k < m; ++k) y[k] = res.x[k] - res.x[m + k];
    return {res.value, vec_add(x0, K.apply(y))};
}

std::vector<Q> endpoint_weights(const DiagSpace& s, bool upper) {
    std::vector<Q> out;
    for (const auto& w : s.weights()) {
        if (w.is_rational()) {
            out.push_back(w.rational());
            continue;
        }
        unsigned bits = 64;
        Interval iv = w.real().enclose(bits);
        while (iv.lo <= 0) iv = w.real().enclose(bits *= 2);
        out.push_back(upper ? iv.hi : iv.lo);
    }
    return out;
}

AffineMinimum padic_min(const DiagSpace& space, const Vec& x0, const Matrix& K) {
    const ValuedField& f = space.field();
    auto weighted = [&](const Vec& v, std::size_t i) { return space.weight(i) * f.abs(v[i]); };
    std::vector<Vec> basis;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < K.cols(); ++c) {
        Vec v = K.column_dense(c);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (v[piv[b]] != 0) v = vec_sub(v, vec_scale(v[piv[b]] / basis[b][piv[b]], basis[b]));
        if (vec_is_zero(v)) continue;
        std::size_t p = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (compare(weighted(v, i), weighted(v, p)) > 0) p = i;
        for (auto& bv : basis)
            if (bv[p] != 0) bv = vec_sub(bv, vec_scale(bv[p] / v[p], v));
        basis.push_back(std::move(v));
        piv.push_back(p);
    }
    Vec x = x0;
    for (std::size_t b = 0; b < basis.size(); ++b)
        if (x[piv[b]] != 0) x = vec_sub(x, vec_scale(x[piv[b]] / basis[b][piv[b]], basis[b]));
    AffineMinimum out;
    NormValue v = space.norm(x);
    out.value = {v, v};
    out.minimizer = std::move(x);
    out.exact = true;
    return out;
}

} // namespace

AffineMinimum affine_min_norm(const DiagSpace& space, const Vec& x0, const Matrix& K) {
    if (x0.size() != space.dim() || (K.cols() > 0 && K.rows() != space.dim()))
        throw Error(ErrorKind::DimensionMismatch, "affine minimization shapes");
    AffineMinimum out;
    if (K.cols() == 0 || space.dim() == 0) {
        out.value = space.norm_bounds(x0);
        out.minimizer = x0;
        out.exact = out.value.exact();
        return out;
    }
    if (!space.field().archimedean_backend()) return padic_min(space, x0, K);
    bool rational = true;
    for (const auto& w : space.weights()) rational = rational && w.is_rational();
    if (rational && space.exact()) {
        auto [v, x] = solve_lp(space.tree(), endpoint_weights(space, false), x0, K);
        out.value = {NormValue::arch(v), NormValue::arch(v)};
        out.minimizer = std::move(x);
        out.exact = true;
        return out;
    }
    auto lo = solve_lp(space.lower_tree(), endpoint_weights(space, false), x0, K);
    auto hi = solve_lp(space.tree(), endpoint_weights(space, true), x0, K);
    out.value = {NormValue::arch(lo.first), NormValue::arch(hi.first)};
    out.minimizer = std::move(lo.second);
    out.exact = out.value.exact();
    return out;
}

} // namespace indban
