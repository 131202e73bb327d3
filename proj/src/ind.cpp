#include "indban/ind.hpp"

#include "indban/error.hpp"
#include "indban/tensor.hpp"

namespace indban {

IndObject::IndObject(std::vector<SpacePtr> stages, std::vector<Edge> edges)
    : stages_(std::move(stages)), edges_(std::move(edges)) {
    const std::size_t n = stages_.size();
    if (n == 0) throw Error(ErrorKind::NotFiltered, "empty diagram");
    for (const auto& s : stages_)
        if (s->field() != stages_[0]->field()) throw Error(ErrorKind::MixedBackends, "diagram mixes field backends");
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        if (ed.from >= n || ed.to >= n) throw Error(ErrorKind::IndexOutOfRange, "edge refers to a missing stage");
        if (ed.map.rows() != stages_[ed.to]->dim() || ed.map.cols() != stages_[ed.from]->dim())
            throw Error(ErrorKind::DimensionMismatch,
                        "transition " + std::to_string(ed.from) + "->" + std::to_string(ed.to) + " has the wrong shape");
        out[ed.from].push_back(e);
    }
    transition_.assign(n, std::vector<std::optional<Matrix>>(n));
    for (std::size_t i = 0; i < n; ++i) {
        transition_[i][i] = Matrix::identity(stages_[i]->dim());
        std::vector<std::size_t> todo{i};
        while (!todo.empty()) {
            std::size_t a = todo.back();
            todo.pop_back();
            for (auto e : out[a]) {
                const auto& ed = edges_[e];
                Matrix comp = ed.map * *transition_[i][a];
                auto& slot = transition_[i][ed.to];
                if (slot) {
                    if (!(*slot == comp))
                        throw Error(ErrorKind::IncoherentTransitions,
                                    "two composites " + std::to_string(i) + "->" + std::to_string(ed.to) + " differ");
                    continue;
                }
                slot = std::move(comp);
                todo.push_back(ed.to);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && leq(i, j) && leq(j, i))
                throw Error(ErrorKind::InvalidArgument,
                            "stages " + std::to_string(i) + " and " + std::to_string(j) + " form a cycle");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool bounded = false;
            for (std::size_t k = 0; k < n && !bounded; ++k) bounded = leq(i, k) && leq(j, k);
            if (!bounded)
                throw Error(ErrorKind::NotFiltered,
                            "stages " + std::to_string(i) + " and " + std::to_string(j) + " have no common upper bound");
        }
    for (std::size_t k = 0; k < n; ++k) {
        bool all = true;
        for (std::size_t i = 0; i < n && all; ++i) all = leq(i, k);
        if (all) top_ = k;
    }
}

IndObject IndObject::singleton(SpacePtr space) { return IndObject({std::move(space)}, {}); }

IndObject IndObject::chain(std::vector<SpacePtr> stages, std::vector<Matrix> transitions) {
    if (transitions.size() + 1 != stages.size())
        throw Error(ErrorKind::DimensionMismatch, "a chain of n stages needs n-1 transitions");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < transitions.size(); ++i) edges.push_back({i, i + 1, std::move(transitions[i])});
    return IndObject(std::move(stages), std::move(edges));
}

const Matrix& IndObject::transition(std::size_t i, std::size_t j) const {
    const auto& t = transition_.at(i).at(j);
    if (!t) throw Error(ErrorKind::InvalidArgument, std::to_string(i) + " is not below " + std::to_string(j));
    return *t;
}

bool IndObject::is_chain() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (!leq(i, j) && !leq(j, i)) return false;
    return true;
}

HomDescription hom(const IndObject& x, const IndObject& y) {
    if (x.stage(0)->field() != y.stage(0)->field()) throw Error(ErrorKind::MixedBackends, "hom across fields");
    HomDescription h;
    h.x_top = x.top();
    h.y_top = y.top();
    const std::size_t dy = y.stage(y.top())->dim();
    // unknowns: entries of phi_i (dy x dim X(i)) column-major, stacked over i
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        offset.push_back(total);
        total += dy * x.stage(i)->dim();
    }
    std::vector<Vec> eqs;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (i == j || !x.leq(i, j)) continue;
            const Matrix& t = x.transition(i, j);
            // (phi_j t)_{r,c} - (phi_i)_{r,c} = 0
            for (std::size_t c = 0; c < x.stage(i)->dim(); ++c)
                for (std::size_t r = 0; r < dy; ++r) {
                    Vec eq(total);
                    for (const auto& [k, v] : t.column(c)) eq[offset[j] + k * dy + r] += v;
                    eq[offset[i] + c * dy + r] -= 1;
                    if (!vec_is_zero(eq)) eqs.push_back(std::move(eq));
                }
        }
    Matrix sys = eqs.empty() ? Matrix(0, total) : Matrix::from_rows(eqs, total);
    Matrix ker = kernel(sys);
    h.dim = ker.cols();
    for (std::size_t b = 0; b < ker.cols(); ++b) {
        Vec sol = ker.column_dense(b);
        std::vector<Matrix> fam;
        for (std::size_t i = 0; i < x.size(); ++i) {
            Matrix phi(dy, x.stage(i)->dim());
            for (std::size_t c = 0; c < x.stage(i)->dim(); ++c)
                for (std::size_t r = 0; r < dy; ++r)
                    if (sol[offset[i] + c * dy + r] != 0) phi.set(r, c, sol[offset[i] + c * dy + r]);
            fam.push_back(std::move(phi));
        }
        h.basis.push_back(std::move(fam));
    }
    return h;
}

Matrix hom_normal_form(const IndObject& y, std::size_t j, const Matrix& phi) { return y.transition(j, y.top()) * phi; }

bool hom_equal(const IndObject& y, std::size_t j1, const Matrix& phi1, std::size_t j2, const Matrix& phi2) {
    return hom_normal_form(y, j1, phi1) == hom_normal_form(y, j2, phi2);
}

bool hom_compatible(const IndObject& x, const std::vector<Matrix>& family) {
    if (family.size() != x.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (i != j && x.leq(i, j) && !(family[j] * x.transition(i, j) == family[i])) return false;
    return true;
}

ContractingColimit contracting_colimit(const IndObject& chain) {
    if (!chain.is_chain()) throw Error(ErrorKind::InvalidArgument, "contracting colimits are computed for chains");
    ContractingColimit c{chain, false, {}};
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const Matrix& t = chain.transition(i, chain.top());
        std::size_t k = chain.stage(i)->dim() - rank(t);
        c.kernel_dims.push_back(k);
        if (k > 0) c.degenerate = true;
    }
    return c;
}

NormEnclosure ContractingColimit::seminorm(std::size_t stage, const Vec& v) const {
    if (stage >= chain.size()) throw Error(ErrorKind::IndexOutOfRange, "no such stage");
    std::optional<NormEnclosure> best;
    for (std::size_t j = 0; j < chain.size(); ++j) {
        if (!chain.leq(stage, j)) continue;
        NormEnclosure e = chain.stage(j)->norm_bounds(chain.transition(stage, j).apply(v));
        if (!best) {
            best = e;
        } else {
            best->lower = min(best->lower, e.lower);
            best->upper = min(best->upper, e.upper);
        }
    }
    return *best;
}

SpaceFunctor SpaceFunctor::tensor_with(SpacePtr v) {
    SpaceFunctor f;
    f.kind = Kind::TensorWith;
    f.v = std::move(v);
    return f;
}

SpaceFunctor SpaceFunctor::scale(const NormValue& lambda) {
    SpaceFunctor f;
    f.kind = Kind::Scale;
    f.lambda = lambda;
    return f;
}

SpaceFunctor SpaceFunctor::functions(std::size_t group_order) {
    if (group_order == 0) throw Error(ErrorKind::InvalidArgument, "functions on an empty group");
    SpaceFunctor f;
    f.kind = Kind::Functions;
    f.copies = group_order;
    return f;
}

SpacePtr SpaceFunctor::on_space(const SpacePtr& s) const {
    switch (kind) {
    case Kind::TensorWith:
        return tensor(v, s).space;
    case Kind::Scale:
        return share(s->scaled(lambda));
    case Kind::Functions:
        return contracting_product(std::vector<SpacePtr>(copies, s)).space;
    }
    return s;
}

Matrix SpaceFunctor::on_map(const Matrix& m) const {
    switch (kind) {
    case Kind::TensorWith:
        return kron(Matrix::identity(v->dim()), m);
    case Kind::Scale:
        return m;
    case Kind::Functions:
        return kron(Matrix::identity(copies), m);
    }
    return m;
}

std::string SpaceFunctor::name() const {
    switch (kind) {
    case Kind::TensorWith: return "V⊗-";
    case Kind::Scale: return "scale by " + lambda.str();
    case Kind::Functions: return "C(G,-) with |G| = " + std::to_string(copies);
    }
    return "?";
}

IndObject evaluate_functor(const SpaceFunctor& f, const IndObject& x) {
    std::vector<SpacePtr> stages;
    for (const auto& s : x.stages()) stages.push_back(f.on_space(s));
    std::vector<IndObject::Edge> edges;
    for (const auto& e : x.edges()) edges.push_back({e.from, e.to, f.on_map(e.map)});
    return IndObject(std::move(stages), std::move(edges));
}

} // namespace indban
