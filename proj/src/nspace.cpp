#include "indban/nspace.hpp"

#include "indban/error.hpp"
#include "indban/lp.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace indban {

NormTree NormTree::leaf(std::size_t i) {
    NormTree t;
    t.kind = Kind::Leaf;
    t.coord = i;
    return t;
}

NormTree NormTree::sum(std::vector<NormTree> children) {
    NormTree t;
    t.kind = Kind::Sum;
    t.children = std::move(children);
    return t;
}

NormTree NormTree::max(std::vector<NormTree> children) {
    NormTree t;
    t.kind = Kind::Max;
    t.children = std::move(children);
    return t;
}

NormTree NormTree::flat(Kind kind, std::size_t n, std::size_t offset) {
    std::vector<NormTree> ch;
    for (std::size_t i = 0; i < n; ++i) ch.push_back(leaf(offset + i));
    return kind == Kind::Sum ? sum(std::move(ch)) : max(std::move(ch));
}

std::vector<std::size_t> NormTree::coords() const {
    if (kind == Kind::Leaf) return {coord};
    std::vector<std::size_t> out;
    for (const auto& c : children) {
        auto sub = c.coords();
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

bool NormTree::is_flat(Kind k) const {
    if (kind == Kind::Leaf) return true;
    if (kind != k) return children.size() <= 1 && (children.empty() || children[0].kind == Kind::Leaf);
    for (const auto& c : children)
        if (c.kind != Kind::Leaf) return false;
    return true;
}

NormTree NormTree::shifted(std::size_t offset) const {
    NormTree t = *this;
    if (t.kind == Kind::Leaf) {
        t.coord += offset;
        return t;
    }
    for (auto& c : t.children) c = c.shifted(offset);
    return t;
}

NormTree NormTree::remapped(const std::vector<std::size_t>& index) const {
    NormTree t = *this;
    if (t.kind == Kind::Leaf) {
        t.coord = index.at(t.coord);
        return t;
    }
    for (auto& c : t.children) c = c.remapped(index);
    return t;
}

std::optional<NormTree> NormTree::restricted(const std::vector<std::size_t>& keep) const {
    std::map<std::size_t, std::size_t> where;
    for (std::size_t k = 0; k < keep.size(); ++k) where[keep[k]] = k;
    struct Rec {
        const std::map<std::size_t, std::size_t>& where;
        std::optional<NormTree> operator()(const NormTree& t) const {
            if (t.kind == Kind::Leaf) {
                auto it = where.find(t.coord);
                if (it == where.end()) return std::nullopt;
                return NormTree::leaf(it->second);
            }
            std::vector<NormTree> ch;
            for (const auto& c : t.children)
                if (auto r = (*this)(c)) ch.push_back(std::move(*r));
            if (ch.empty()) return std::nullopt;
            NormTree out;
            out.kind = t.kind;
            out.children = std::move(ch);
            return out;
        }
    };
    return Rec{where}(*this);
}

NormTree NormTree::dual() const {
    NormTree t = *this;
    if (t.kind == Kind::Sum)
        t.kind = Kind::Max;
    else if (t.kind == Kind::Max)
        t.kind = Kind::Sum;
    for (auto& c : t.children) c = c.dual();
    return t;
}

NormTree NormTree::normalized() const {
    if (kind == Kind::Leaf) return *this;
    std::vector<NormTree> ch;
    for (const auto& c : children) {
        NormTree n = c.normalized();
        if (n.kind == kind)
            ch.insert(ch.end(), n.children.begin(), n.children.end());
        else
            ch.push_back(std::move(n));
    }
    if (ch.size() == 1) return ch[0];
    NormTree t;
    t.kind = kind;
    t.children = std::move(ch);
    return t;
}

std::string NormTree::str(const std::vector<std::string>& labels) const {
    if (kind == Kind::Leaf) return coord < labels.size() ? labels[coord] : std::to_string(coord);
    std::string s = kind == Kind::Sum ? "SUM(" : "MAX(";
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) s += ", ";
        s += children[i].str(labels);
    }
    return s + ")";
}

bool operator==(const NormTree& a, const NormTree& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == NormTree::Kind::Leaf) return a.coord == b.coord;
    return a.children == b.children;
}

const char* to_string(Flavor f) {
    switch (f) {
    case Flavor::Sum: return "SUM";
    case Flavor::Max: return "MAX";
    case Flavor::Tree: return "TREE";
    }
    return "?";
}

namespace {

void check_cover(const NormTree& t, std::size_t n) {
    auto c = t.coords();
    std::vector<char> seen(n, 0);
    for (auto i : c) {
        if (i >= n || seen[i]) throw Error(ErrorKind::InvalidArgument, "norm tree must use each coordinate exactly once");
        seen[i] = 1;
    }
    if (c.size() != n) throw Error(ErrorKind::InvalidArgument, "norm tree does not cover every coordinate");
}

} // namespace

DiagSpace::DiagSpace(ValuedField field, std::vector<std::string> labels, std::vector<NormValue> weights, NormTree tree,
                     std::optional<NormTree> lower)
    : field_(field), labels_(std::move(labels)), weights_(std::move(weights)), tree_(std::move(tree)),
      lower_(std::move(lower)) {
    if (labels_.size() != weights_.size()) throw Error(ErrorKind::DimensionMismatch, "labels and weights differ in length");
    for (const auto& w : weights_) {
        if (w.kind() != field_.norm_kind() || (w.kind() == NormValue::Kind::Padic && w.prime() != field_.prime()))
            throw Error(ErrorKind::MixedBackends, "weight backend differs from the field");
        if (w.is_zero()) throw Error(ErrorKind::InvalidArgument, "weights must be positive");
        if (w.kind() == NormValue::Kind::Archimedean && compare(w.real(), Real(0)) <= 0)
            throw Error(ErrorKind::InvalidArgument, "weights must be positive");
    }
    check_cover(tree_, dim());
    if (lower_) check_cover(*lower_, dim());
    tree_ = tree_.normalized();
    if (lower_) lower_ = lower_->normalized();
    if (!field_.archimedean_backend()) {
        tree_ = NormTree::flat(NormTree::Kind::Max, dim());
        lower_.reset();
    } else if (lower_ && *lower_ == tree_) {
        lower_.reset();
    }
}

DiagSpace DiagSpace::flat(ValuedField field, std::vector<std::string> labels, std::vector<NormValue> weights,
                          Flavor flavor) {
    std::size_t n = labels.size();
    auto kind = flavor == Flavor::Sum ? NormTree::Kind::Sum : NormTree::Kind::Max;
    return DiagSpace(field, std::move(labels), std::move(weights), NormTree::flat(kind, n));
}

DiagSpace DiagSpace::flat_unit(ValuedField field, std::size_t n, Flavor flavor, const std::string& prefix) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    return flat(field, std::move(labels), std::vector<NormValue>(n, field.one()), flavor);
}

DiagSpace DiagSpace::scalar(ValuedField field, const NormValue& weight) {
    return DiagSpace(field, {"1"}, {weight}, NormTree::leaf(0));
}

DiagSpace DiagSpace::scalar(ValuedField field) { return scalar(field, field.one()); }

DiagSpace DiagSpace::zero(ValuedField field) { return DiagSpace(field, {}, {}, NormTree::max({})); }

Flavor DiagSpace::flavor() const {
    if (tree_.kind == NormTree::Kind::Leaf) return Flavor::Max;
    if (tree_.is_flat(NormTree::Kind::Sum) && tree_.kind == NormTree::Kind::Sum) return Flavor::Sum;
    if (tree_.is_flat(NormTree::Kind::Max)) return Flavor::Max;
    if (tree_.is_flat(NormTree::Kind::Sum)) return Flavor::Sum;
    return Flavor::Tree;
}

NormValue DiagSpace::tree_norm(const NormTree& t, const Vec& v) const {
    switch (t.kind) {
    case NormTree::Kind::Leaf:
        return weights_[t.coord] * field_.abs(v[t.coord]);
    case NormTree::Kind::Sum: {
        if (!field_.archimedean_backend()) break;
        std::vector<Real> parts;
        for (const auto& c : t.children) parts.push_back(tree_norm(c, v).real());
        return NormValue::arch(sum_of(parts));
    }
    case NormTree::Kind::Max:
        break;
    }
    if (field_.archimedean_backend()) {
        std::vector<Real> parts;
        for (const auto& c : t.children) parts.push_back(tree_norm(c, v).real());
        return NormValue::arch(max_of(parts));
    }
    NormValue best = field_.zero();
    for (const auto& c : t.children) best = max(best, tree_norm(c, v));
    return best;
}

NormValue DiagSpace::dual_norm(const NormTree& t, const Vec& row) const {
    switch (t.kind) {
    case NormTree::Kind::Leaf:
        if (row[t.coord] == 0) return field_.zero();
        return field_.abs(row[t.coord]) / weights_[t.coord];
    case NormTree::Kind::Sum:
        if (field_.archimedean_backend()) {
            std::vector<Real> parts;
            for (const auto& c : t.children) parts.push_back(dual_norm(c, row).real());
            return NormValue::arch(max_of(parts));
        }
        break;
    case NormTree::Kind::Max:
        if (field_.archimedean_backend()) {
            std::vector<Real> parts;
            for (const auto& c : t.children) parts.push_back(dual_norm(c, row).real());
            return NormValue::arch(sum_of(parts));
        }
        break;
    }
    NormValue best = field_.zero();
    for (const auto& c : t.children) best = max(best, dual_norm(c, row));
    return best;
}

NormValue DiagSpace::norm(const Vec& v) const {
    if (v.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "vector length differs from dimension");
    if (!exact()) throw Error(ErrorKind::InvalidArgument, "space carries only norm bounds");
    if (dim() == 0) return field_.zero();
    return tree_norm(tree_, v);
}

NormEnclosure DiagSpace::norm_bounds(const Vec& v) const {
    if (v.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "vector length differs from dimension");
    if (dim() == 0) return {field_.zero(), field_.zero()};
    NormValue up = tree_norm(tree_, v);
    if (exact()) return {up, up};
    return {tree_norm(*lower_, v), up};
}

DiagSpace DiagSpace::scaled(const NormValue& lambda) const {
    std::vector<NormValue> w;
    for (const auto& x : weights_) w.push_back(x * lambda);
    return DiagSpace(field_, labels_, std::move(w), tree_, lower_);
}

DiagSpace DiagSpace::relabeled(std::vector<std::string> labels) const {
    return DiagSpace(field_, std::move(labels), weights_, tree_, lower_);
}

std::string DiagSpace::describe() const {
    std::ostringstream os;
    os << field_.name() << " dim " << dim() << " " << to_string(flavor()) << " weights [";
    for (std::size_t i = 0; i < dim(); ++i) os << (i ? ", " : "") << weights_[i].str();
    os << "]";
    if (!exact()) os << " (norm bounded between two trees)";
    return os.str();
}

bool same_norm_structure(const DiagSpace& a, const DiagSpace& b) {
    if (a.field() != b.field() || a.dim() != b.dim()) return false;
    if (!(a.tree() == b.tree()) || !(a.lower_tree() == b.lower_tree())) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (compare(a.weight(i), b.weight(i)) != 0) return false;
    return true;
}

namespace {

using Pick = std::vector<std::pair<std::size_t, int>>; // extreme point: coordinates with signs

std::size_t best_index(const std::vector<NormValue>& vals) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (less_equal(vals[i], vals[best], 128) == Tri::False) best = i;
    return best;
}

NormValue max_all(const ValuedField& f, const std::vector<NormValue>& vals) {
    if (vals.empty()) return f.zero();
    if (f.archimedean_backend()) {
        std::vector<Real> r;
        for (const auto& v : vals) r.push_back(v.real());
        return NormValue::arch(max_of(r));
    }
    NormValue best = vals[0];
    for (const auto& v : vals) best = max(best, v);
    return best;
}

struct Engine {
    const DiagSpace& dom;
    const DiagSpace& cod;
    const Matrix& m;
    std::size_t cap;
    Matrix mt; // transpose, rows of m as columns

    bool rational_weights(const DiagSpace& s) const {
        for (const auto& w : s.weights())
            if (!w.is_rational()) return false;
        return true;
    }

    // ||T v|| for v = sum sign * e_i / w_i.
    NormValue image_norm(const NormTree& codtree, const Pick& pick) const {
        std::vector<Real> y(cod.dim());
        for (const auto& [i, s] : pick) {
            Real scale = Real(1) / dom.weight(i).real();
            for (const auto& [k, x] : m.column(i)) y[k] = y[k] + Real(Q(x * s)) * scale;
        }
        struct Eval {
            const DiagSpace& cod;
            const std::vector<Real>& y;
            Real operator()(const NormTree& t) const {
                if (t.kind == NormTree::Kind::Leaf) return cod.weight(t.coord).real() * abs(y[t.coord]);
                std::vector<Real> parts;
                for (const auto& c : t.children) parts.push_back((*this)(c));
                return t.kind == NormTree::Kind::Sum ? sum_of(parts) : max_of(parts);
            }
        };
        if (cod.dim() == 0) return NormValue::arch(Q(0));
        return NormValue::arch(Eval{cod, y}(codtree));
    }

    Vec pick_vector(const Pick& pick) const {
        Vec v(dom.dim());
        for (const auto& [i, s] : pick) v[i] = Q(s) / dom.weight(i).rational();
        return v;
    }

    // Extreme points of the unit ball of a subtree, or throw when over the cap.
    std::vector<Pick> extremes(const NormTree& t) const {
        if (t.kind == NormTree::Kind::Leaf) return {{{t.coord, 1}}, {{t.coord, -1}}};
        std::vector<Pick> out;
        if (t.kind == NormTree::Kind::Sum) {
            for (const auto& c : t.children) {
                auto sub = extremes(c);
                out.insert(out.end(), sub.begin(), sub.end());
            }
            return out;
        }
        out.push_back({});
        for (const auto& c : t.children) {
            auto sub = extremes(c);
            if (out.size() * sub.size() > (std::size_t{1} << cap))
                throw Error(ErrorKind::DimensionCapExceeded, "extreme-point enumeration beyond 2^" + std::to_string(cap));
            std::vector<Pick> next;
            for (const auto& a : out)
                for (const auto& b : sub) {
                    Pick p = a;
                    p.insert(p.end(), b.begin(), b.end());
                    next.push_back(std::move(p));
                }
            out = std::move(next);
        }
        return out;
    }

    // Extreme point maximizing row . v over the unit ball of t.
    Pick dual_pick(const NormTree& t, const Vec& row) const {
        if (t.kind == NormTree::Kind::Leaf) return {{t.coord, row[t.coord] < 0 ? -1 : 1}};
        if (t.kind == NormTree::Kind::Max) {
            Pick p;
            for (const auto& c : t.children) {
                auto sub = dual_pick(c, row);
                p.insert(p.end(), sub.begin(), sub.end());
            }
            return p;
        }
        std::vector<NormValue> vals;
        for (const auto& c : t.children) vals.push_back(dom.dual_norm(c, row));
        return dual_pick(t.children[best_index(vals)], row);
    }

    struct Result {
        NormValue value;
        Pick pick;
    };

    Result run(const NormTree& domtree, const NormTree& codtree) const {
        const ValuedField& f = dom.field();
        if (domtree.kind == NormTree::Kind::Leaf) {
            std::size_t i = domtree.coord;
            NormValue v = cod.dim() == 0 ? f.zero() : cod.tree_norm(codtree, m.column_dense(i)) / dom.weight(i);
            return {v, {{i, 1}}};
        }
        if (domtree.children.empty()) return {f.zero(), {}};
        if (domtree.kind == NormTree::Kind::Sum) {
            std::vector<Result> parts;
            std::vector<NormValue> vals;
            for (const auto& c : domtree.children) {
                parts.push_back(run(c, codtree));
                vals.push_back(parts.back().value);
            }
            std::size_t b = best_index(vals);
            return {max_all(f, vals), parts[b].pick};
        }
        if (cod.dim() == 0) return {f.zero(), {}};
        if (codtree.is_flat(NormTree::Kind::Max)) {
            std::vector<NormValue> vals;
            for (std::size_t k = 0; k < cod.dim(); ++k)
                vals.push_back(cod.weight(k) * dom.dual_norm(domtree, mt.column_dense(k)));
            std::size_t b = best_index(vals);
            return {max_all(f, vals), dual_pick(domtree, mt.column_dense(b))};
        }
        auto pts = extremes(domtree);
        std::vector<NormValue> vals;
        for (const auto& p : pts) vals.push_back(image_norm(codtree, p));
        std::size_t b = best_index(vals);
        return {max_all(f, vals), pts[b]};
    }
};

OperatorNorm padic_norm(const DiagSpace& dom, const DiagSpace& cod, const Matrix& m) {
    const ValuedField& f = dom.field();
    NormValue best = f.zero();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (const auto& [k, x] : m.column(i)) {
            NormValue v = cod.weight(k) * f.abs(x) / dom.weight(i);
            if (compare(v, best) > 0) {
                best = v;
                arg = i;
            }
        }
    OperatorNorm out;
    out.value = {best, best};
    out.exact = true;
    bool rational = true;
    for (const auto& w : dom.weights()) rational = rational && w.is_rational();
    if (dom.dim() > 0) out.witness = unit_vector(dom.dim(), arg);
    (void)rational;
    out.method = "non-archimedean entry formula";
    return out;
}

} // namespace

OperatorNorm operator_norm(const DiagSpace& dom, const DiagSpace& cod, const Matrix& m, std::size_t cap) {
    if (m.rows() != cod.dim() || m.cols() != dom.dim())
        throw Error(ErrorKind::DimensionMismatch, "matrix shape differs from the spaces");
    if (dom.field() != cod.field()) throw Error(ErrorKind::MixedBackends, "operator between different fields");
    if (!dom.field().archimedean_backend()) return padic_norm(dom, cod, m);
    Engine e{dom, cod, m, cap, m.transpose()};
    OperatorNorm out;
    if (dom.dim() == 0) {
        out.value = {dom.field().zero(), dom.field().zero()};
        out.exact = true;
        out.method = "zero space";
        return out;
    }
    auto hi = e.run(dom.lower_tree(), cod.tree());
    if (dom.exact() && cod.exact()) {
        out.value = {hi.value, hi.value};
        out.exact = true;
        if (e.rational_weights(dom)) out.witness = e.pick_vector(hi.pick);
    } else {
        auto lo = e.run(dom.tree(), cod.lower_tree());
        out.value = {lo.value, hi.value};
        out.exact = out.value.exact();
    }
    if (dom.tree().kind == NormTree::Kind::Leaf || dom.tree().kind == NormTree::Kind::Sum)
        out.method = "column formula";
    else if (cod.tree().is_flat(NormTree::Kind::Max))
        out.method = "row dual formula";
    else
        out.method = "extreme-point enumeration";
    return out;
}

OperatorNorm operator_norm_or_bound(const DiagSpace& dom, const DiagSpace& cod, const Matrix& m, std::size_t cap) {
    try {
        return operator_norm(dom, cod, m, cap);
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::DimensionCapExceeded) throw;
    }
    const ValuedField& f = dom.field();
    std::vector<NormValue> lows;
    for (std::size_t i = 0; i < dom.dim(); ++i)
        lows.push_back(cod.tree_norm(cod.lower_tree(), m.column_dense(i)) / dom.weight(i));
    Matrix mt = m.transpose();
    std::vector<Real> ups;
    for (std::size_t k = 0; k < cod.dim(); ++k)
        ups.push_back((cod.weight(k) * dom.dual_norm(dom.lower_tree(), mt.column_dense(k))).real());
    OperatorNorm out;
    out.value = {max_all(f, lows), NormValue::arch(sum_of(ups))};
    out.exact = false;
    out.method = "enclosure: basis vectors below, weighted row duals above";
    return out;
}

BoundedMap::BoundedMap(SpacePtr dom, SpacePtr cod, Matrix m) : dom_(std::move(dom)), cod_(std::move(cod)), m_(std::move(m)) {
    norm_ = operator_norm_or_bound(*dom_, *cod_, m_);
}

BoundedMap BoundedMap::identity(SpacePtr space) {
    std::size_t n = space->dim();
    return BoundedMap(space, space, Matrix::identity(n));
}

BoundedMap BoundedMap::then(const BoundedMap& next) const {
    if (next.dom_->dim() != cod_->dim()) throw Error(ErrorKind::DimensionMismatch, "composition");
    return BoundedMap(dom_, next.cod_, next.m_ * m_);
}

namespace {

const ValuedField& common_field(const std::vector<SpacePtr>& family) {
    for (const auto& s : family)
        if (s->field() != family.front()->field()) throw Error(ErrorKind::MixedBackends, "family mixes field backends");
    return family.front()->field();
}

struct Stacked {
    std::vector<std::string> labels;
    std::vector<NormValue> weights;
    std::vector<NormTree> upper, lower;
    bool exact = true;
    std::vector<std::size_t> offsets;
    std::size_t dim = 0;
};

Stacked stack(const std::vector<SpacePtr>& family) {
    Stacked s;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const auto& sp = *family[k];
        s.offsets.push_back(s.dim);
        for (std::size_t i = 0; i < sp.dim(); ++i) {
            s.labels.push_back(std::to_string(k) + "." + sp.labels()[i]);
            s.weights.push_back(sp.weight(i));
        }
        if (sp.dim() > 0) {
            s.upper.push_back(sp.tree().shifted(s.dim));
            s.lower.push_back(sp.lower_tree().shifted(s.dim));
        }
        s.exact = s.exact && sp.exact();
        s.dim += sp.dim();
    }
    return s;
}

} // namespace

ProductData contracting_product(const std::vector<SpacePtr>& family) {
    ProductData out;
    if (family.empty()) {
        out.space = share(DiagSpace::zero(ValuedField::archimedean()));
        return out;
    }
    const ValuedField& f = common_field(family);
    Stacked s = stack(family);
    std::optional<NormTree> lower;
    if (!s.exact) lower = NormTree::max(s.lower);
    out.space = share(DiagSpace(f, s.labels, s.weights, NormTree::max(s.upper), lower));
    for (std::size_t k = 0; k < family.size(); ++k) {
        Matrix p(family[k]->dim(), s.dim);
        for (std::size_t i = 0; i < family[k]->dim(); ++i) p.set(i, s.offsets[k] + i, 1);
        out.projections.push_back(std::move(p));
    }
    return out;
}

CoproductData contracting_coproduct(const std::vector<SpacePtr>& family) {
    CoproductData out;
    if (family.empty()) {
        out.space = share(DiagSpace::zero(ValuedField::archimedean()));
        return out;
    }
    const ValuedField& f = common_field(family);
    Stacked s = stack(family);
    bool arch = f.archimedean_backend();
    NormTree upper = arch ? NormTree::sum(s.upper) : NormTree::max(s.upper);
    std::optional<NormTree> lower;
    if (!s.exact) lower = arch ? NormTree::sum(s.lower) : NormTree::max(s.lower);
    out.space = share(DiagSpace(f, s.labels, s.weights, upper, lower));
    for (std::size_t k = 0; k < family.size(); ++k) {
        Matrix inj(s.dim, family[k]->dim());
        for (std::size_t i = 0; i < family[k]->dim(); ++i) inj.set(s.offsets[k] + i, i, 1);
        out.injections.push_back(std::move(inj));
    }
    return out;
}

DiagSpace l1(const ValuedField& field, const std::vector<std::string>& labels) {
    return DiagSpace::flat(field, labels, std::vector<NormValue>(labels.size(), field.one()),
                           field.archimedean_backend() ? Flavor::Sum : Flavor::Max);
}

namespace {

void check_bound(const BoundedMap& f, const NormValue& bound, std::size_t i) {
    if (less_equal(f.norm().upper, bound) != Tri::True)
        throw Error(ErrorKind::BoundViolated,
                    "member " + std::to_string(i) + " has norm " + f.norm().str() + " above " + bound.str());
}

} // namespace

BoundedMap assemble_into_product(const std::vector<BoundedMap>& maps, const NormValue& bound) {
    if (maps.empty()) throw Error(ErrorKind::InvalidArgument, "empty family of maps");
    std::vector<SpacePtr> targets;
    Matrix stacked(0, maps.front().domain()->dim());
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (maps[i].domain()->dim() != maps.front().domain()->dim())
            throw Error(ErrorKind::DimensionMismatch, "maps into a product need a common domain");
        check_bound(maps[i], bound, i);
        targets.push_back(maps[i].codomain());
        stacked = stacked.vstack(maps[i].matrix());
    }
    auto prod = contracting_product(targets);
    return BoundedMap(maps.front().domain(), prod.space, stacked);
}

BoundedMap assemble_from_coproduct(const std::vector<BoundedMap>& maps, const NormValue& bound) {
    if (maps.empty()) throw Error(ErrorKind::InvalidArgument, "empty family of maps");
    std::vector<SpacePtr> sources;
    Matrix joined(maps.front().codomain()->dim(), 0);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (maps[i].codomain()->dim() != maps.front().codomain()->dim())
            throw Error(ErrorKind::DimensionMismatch, "maps out of a coproduct need a common codomain");
        check_bound(maps[i], bound, i);
        sources.push_back(maps[i].domain());
        joined = joined.hstack(maps[i].matrix());
    }
    auto co = contracting_coproduct(sources);
    return BoundedMap(co.space, maps.front().codomain(), joined);
}

DeltaSwapResult delta_swap(std::size_t n) {
    if (n == 0 || n > 6) throw Error(ErrorKind::CapExceeded, "delta swap is limited to 1 <= N <= 6");
    ValuedField f = ValuedField::archimedean();
    std::vector<std::string> src_labels, dst_labels;
    std::vector<NormTree> src_rows, dst_cols;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<NormTree> inner_src, inner_dst;
        for (std::size_t j = 0; j < n; ++j) {
            src_labels.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
            dst_labels.push_back("y" + std::to_string(i) + "_" + std::to_string(j));
            inner_src.push_back(NormTree::leaf(i * n + j));
            inner_dst.push_back(NormTree::leaf(i * n + j));
        }
        src_rows.push_back(NormTree::max(std::move(inner_src)));
        dst_cols.push_back(NormTree::sum(std::move(inner_dst)));
    }
    std::vector<NormValue> ones(n * n, f.one());
    // source: coproduct over i of products over j; target: product over j of coproducts over i
    DiagSpace src(f, src_labels, ones, NormTree::sum(std::move(src_rows)));
    DiagSpace dst(f, dst_labels, ones, NormTree::max(std::move(dst_cols)));
    Matrix canon = swap_matrix(n, n);
    Vec delta(n * n);
    for (std::size_t j = 0; j < n; ++j) delta[j * n + j] = 1;
    Matrix x0;
    if (!solve(canon, Matrix::column_vector(delta), x0))
        throw Error(ErrorKind::InvalidArgument, "identity pattern has no preimage");
    Matrix K = kernel(canon);
    auto best = affine_min_norm(src, x0.column_dense(0), K);
    DeltaSwapResult r;
    r.preimage_norm = best.value.upper;
    r.image_norm = dst.norm(delta);
    r.kernel_dim = K.cols();
    return r;
}

NormValue delta_swap_norm(std::size_t n) { return delta_swap(n).preimage_norm; }

} // namespace indban
