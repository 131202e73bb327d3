#include "indban/tensor.hpp"

#include "indban/error.hpp"

#include <functional>

namespace indban {

namespace {

struct TreePair {
    NormTree upper, lower;
};

NormTree pair_leaf_map(const NormTree& t, std::size_t i, std::size_t nb, bool left) {
    // relabel a factor tree into product coordinates with the other index fixed
    std::size_t top = 0;
    for (auto c : t.coords()) top = std::max(top, c + 1);
    std::vector<std::size_t> idx(top);
    for (std::size_t c = 0; c < top; ++c) idx[c] = left ? c * nb + i : i * nb + c;
    return t.remapped(idx);
}

NormTree all_pairs(const NormTree& a, const NormTree& b, std::size_t nb, NormTree::Kind kind) {
    std::vector<NormTree> ch;
    for (auto i : a.coords())
        for (auto j : b.coords()) ch.push_back(NormTree::leaf(i * nb + j));
    return kind == NormTree::Kind::Sum ? NormTree::sum(std::move(ch)) : NormTree::max(std::move(ch));
}

// Projective norm of two tree norms: exact when some SUM node or leaf separates the factors.
TreePair tensor_trees(const NormTree& a, const NormTree& b, std::size_t nb) {
    if (a.kind == NormTree::Kind::Leaf) {
        NormTree t = pair_leaf_map(b, a.coord, nb, false);
        return {t, t};
    }
    if (b.kind == NormTree::Kind::Leaf) {
        NormTree t = pair_leaf_map(a, b.coord, nb, true);
        return {t, t};
    }
    if (a.kind == NormTree::Kind::Sum || b.kind == NormTree::Kind::Sum) {
        std::vector<NormTree> up, lo;
        if (a.kind == NormTree::Kind::Sum) {
            for (const auto& c : a.children) {
                auto p = tensor_trees(c, b, nb);
                up.push_back(std::move(p.upper));
                lo.push_back(std::move(p.lower));
            }
        } else {
            for (const auto& c : b.children) {
                auto p = tensor_trees(a, c, nb);
                up.push_back(std::move(p.upper));
                lo.push_back(std::move(p.lower));
            }
        }
        return {NormTree::sum(std::move(up)), NormTree::sum(std::move(lo))};
    }
    if (a.children.size() == 1) return tensor_trees(a.children[0], b, nb);
    if (b.children.size() == 1) return tensor_trees(a, b.children[0], nb);
    // MAX ⊗ MAX: l1 over elementary tensors above, coordinate functionals below
    return {all_pairs(a, b, nb, NormTree::Kind::Sum), all_pairs(a, b, nb, NormTree::Kind::Max)};
}

} // namespace

TensorSpace tensor(const SpacePtr& a, const SpacePtr& b) {
    if (a->field() != b->field()) throw Error(ErrorKind::MixedBackends, "tensor of spaces over different fields");
    const ValuedField& f = a->field();
    std::size_t na = a->dim(), nb = b->dim();
    std::vector<std::string> labels;
    std::vector<NormValue> weights;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            labels.push_back(a->labels()[i] + "⊗" + b->labels()[j]);
            weights.push_back(a->weight(i) * b->weight(j));
        }
    TensorSpace t{nullptr, a, b};
    if (na == 0 || nb == 0) {
        t.space = share(DiagSpace::zero(f));
        return t;
    }
    if (!f.archimedean_backend()) {
        t.space = share(DiagSpace::flat(f, labels, weights, Flavor::Max));
        return t;
    }
    NormTree upper = tensor_trees(a->tree(), b->tree(), nb).upper;
    NormTree lower = tensor_trees(a->lower_tree(), b->lower_tree(), nb).lower;
    t.space = share(DiagSpace(f, labels, weights, upper, lower));
    return t;
}

BoundedMap tensor_map(const BoundedMap& f, const BoundedMap& g) {
    auto dom = tensor(f.domain(), g.domain());
    auto cod = tensor(f.codomain(), g.codomain());
    return BoundedMap(dom.space, cod.space, kron(f.matrix(), g.matrix()));
}

BoundedMap associator(const SpacePtr& a, const SpacePtr& b, const SpacePtr& c) {
    auto left = tensor(tensor(a, b).space, c);
    auto right = tensor(a, tensor(b, c).space);
    return BoundedMap(left.space, right.space, Matrix::identity(left.space->dim()));
}

BoundedMap left_unitor(const SpacePtr& a) {
    auto t = tensor(share(DiagSpace::scalar(a->field())), a);
    return BoundedMap(t.space, a, Matrix::identity(a->dim()));
}

BoundedMap right_unitor(const SpacePtr& a) {
    auto t = tensor(a, share(DiagSpace::scalar(a->field())));
    return BoundedMap(t.space, a, Matrix::identity(a->dim()));
}

namespace {

void require_equal(const Matrix& lhs, const Matrix& rhs, const std::string& what,
                   const std::function<std::string(std::size_t)>& describe) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
        throw Error(ErrorKind::DimensionMismatch, what + ": shapes differ");
    for (std::size_t c = 0; c < lhs.cols(); ++c)
        if (lhs.column(c) != rhs.column(c)) throw Error(ErrorKind::NotAnAction, what + " fails at " + describe(c));
}

} // namespace

void check_right_action(const Matrix& action, std::size_t dm, const Matrix& s_mult, const Vec& s_unit) {
    std::size_t ds = s_unit.size();
    if (action.rows() != dm || action.cols() != dm * ds)
        throw Error(ErrorKind::DimensionMismatch, "right action shape");
    Matrix lhs = action * kron(action, Matrix::identity(ds));
    Matrix rhs = action * kron(Matrix::identity(dm), s_mult);
    require_equal(lhs, rhs, "right associativity (m.s).t = m.(st)", [&](std::size_t c) {
        return "m=e" + std::to_string(c / (ds * ds)) + " s=s" + std::to_string(c / ds % ds) + " t=s" +
               std::to_string(c % ds);
    });
    Matrix unit = action * kron(Matrix::identity(dm), Matrix::column_vector(s_unit));
    require_equal(unit, Matrix::identity(dm), "right unit m.1 = m", [](std::size_t c) { return "m=e" + std::to_string(c); });
}

void check_left_action(const Matrix& action, std::size_t dn, const Matrix& s_mult, const Vec& s_unit) {
    std::size_t ds = s_unit.size();
    if (action.rows() != dn || action.cols() != ds * dn)
        throw Error(ErrorKind::DimensionMismatch, "left action shape");
    Matrix lhs = action * kron(Matrix::identity(ds), action);
    Matrix rhs = action * kron(s_mult, Matrix::identity(dn));
    require_equal(lhs, rhs, "left associativity s.(t.n) = (st).n", [&](std::size_t c) {
        return "s=s" + std::to_string(c / (ds * dn)) + " t=s" + std::to_string(c / dn % ds) + " n=f" +
               std::to_string(c % dn);
    });
    Matrix unit = action * kron(Matrix::column_vector(s_unit), Matrix::identity(dn));
    require_equal(unit, Matrix::identity(dn), "left unit 1.n = n", [](std::size_t c) { return "n=f" + std::to_string(c); });
}

BimoduleTensor bimodule_tensor(const BimoduleInput& in) {
    const std::size_t dm = in.m->dim(), dn = in.n->dim(), ds = in.s_unit.size();
    if (in.s_mult.rows() != ds || in.s_mult.cols() != ds * ds)
        throw Error(ErrorKind::DimensionMismatch, "algebra multiplication shape");
    check_right_action(in.right_action, dm, in.s_mult, in.s_unit);
    check_left_action(in.left_action, dn, in.s_mult, in.s_unit);

    BimoduleTensor out;
    out.ambient = tensor(in.m, in.n);
    const std::size_t d = dm * dn;
    std::vector<Vec> rel;
    for (std::size_t i = 0; i < dm; ++i)
        for (std::size_t k = 0; k < ds; ++k) {
            const auto& ms = in.right_action.column(i * ds + k);
            for (std::size_t j = 0; j < dn; ++j) {
                Vec r(d);
                for (const auto& [a, x] : ms) r[a * dn + j] += x;
                for (const auto& [b, x] : in.left_action.column(k * dn + j)) r[i * dn + b] -= x;
                if (!vec_is_zero(r)) rel.push_back(std::move(r));
            }
        }
    Rref red = rref(rel, d);
    std::vector<char> is_pivot(d, 0);
    for (auto p : red.pivots) is_pivot[p] = 1;
    for (std::size_t c = 0; c < d; ++c)
        if (!is_pivot[c]) out.basis.push_back(c);
    out.relations = Matrix::from_columns(d, red.rows);
    const std::size_t q = out.basis.size();
    out.projection = Matrix(q, d);
    out.lift = Matrix(d, q);
    for (std::size_t s = 0; s < q; ++s) {
        std::size_t c = out.basis[s];
        out.labels.push_back(out.ambient.space->labels()[c]);
        out.projection.set(s, c, 1);
        out.lift.set(c, s, 1);
        for (std::size_t r = 0; r < red.rows.size(); ++r)
            if (red.rows[r][c] != 0) out.projection.set(s, red.pivots[r], -red.rows[r][c]);
    }
    return out;
}

AffineMinimum BimoduleTensor::seminorm(const Vec& q) const {
    if (q.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "quotient vector length");
    return affine_min_norm(*ambient.space, lift.apply(q), relations);
}

} // namespace indban
