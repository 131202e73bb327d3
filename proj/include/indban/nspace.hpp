#pragma once

#include "indban/field.hpp"
#include "indban/matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace indban {

// Nested SUM/MAX expression over weighted coordinates. A leaf contributes w_i |v_i|.
struct NormTree {
    enum class Kind { Leaf, Sum, Max };
    Kind kind = Kind::Max;
    std::size_t coord = 0;
    std::vector<NormTree> children;

    static NormTree leaf(std::size_t i);
    static NormTree sum(std::vector<NormTree> children);
    static NormTree max(std::vector<NormTree> children);
    static NormTree flat(Kind kind, std::size_t n, std::size_t offset = 0);

    bool empty() const { return kind != Kind::Leaf && children.empty(); }
    std::vector<std::size_t> coords() const;
    bool is_flat(Kind k) const; // leaf or single-level node of kind k
    NormTree shifted(std::size_t offset) const;
    NormTree remapped(const std::vector<std::size_t>& index) const;
    // Keeps the listed coordinates (renumbered in the given order); drops empty nodes.
    std::optional<NormTree> restricted(const std::vector<std::size_t>& keep) const;
    NormTree dual() const; // SUM <-> MAX
    NormTree normalized() const; // merges nested nodes of equal kind, collapses single children
    std::string str(const std::vector<std::string>& labels) const;
};

bool operator==(const NormTree& a, const NormTree& b);

enum class Flavor { Sum, Max, Tree };
const char* to_string(Flavor f);

class DiagSpace;
using SpacePtr = std::shared_ptr<const DiagSpace>;

// Finite-dimensional normed space with named basis, positive weights and a norm tree.
// Inexact spaces carry a lower tree: the true norm lies between the two trees.
class DiagSpace {
public:
    DiagSpace(ValuedField field, std::vector<std::string> labels, std::vector<NormValue> weights, NormTree tree,
              std::optional<NormTree> lower = std::nullopt);

    static DiagSpace flat(ValuedField field, std::vector<std::string> labels, std::vector<NormValue> weights,
                          Flavor flavor);
    static DiagSpace flat_unit(ValuedField field, std::size_t n, Flavor flavor, const std::string& prefix = "e");
    static DiagSpace scalar(ValuedField field, const NormValue& weight);
    static DiagSpace scalar(ValuedField field);
    static DiagSpace zero(ValuedField field);

    const ValuedField& field() const { return field_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<NormValue>& weights() const { return weights_; }
    const NormValue& weight(std::size_t i) const { return weights_.at(i); }
    const NormTree& tree() const { return tree_; }
    const NormTree& lower_tree() const { return lower_ ? *lower_ : tree_; }
    bool exact() const { return !lower_.has_value(); }
    Flavor flavor() const;

    NormValue norm(const Vec& v) const; // exact spaces only
    NormEnclosure norm_bounds(const Vec& v) const;
    NormValue tree_norm(const NormTree& t, const Vec& v) const;
    NormValue dual_norm(const NormTree& t, const Vec& row) const;

    DiagSpace scaled(const NormValue& lambda) const;
    DiagSpace relabeled(std::vector<std::string> labels) const;
    std::string describe() const;

private:
    ValuedField field_;
    std::vector<std::string> labels_;
    std::vector<NormValue> weights_;
    NormTree tree_;
    std::optional<NormTree> lower_;
};

bool same_norm_structure(const DiagSpace& a, const DiagSpace& b);

template <class... Args>
SpacePtr make_space(Args&&... args) {
    return std::make_shared<const DiagSpace>(std::forward<Args>(args)...);
}
inline SpacePtr share(DiagSpace s) { return std::make_shared<const DiagSpace>(std::move(s)); }

struct OperatorNorm {
    NormEnclosure value;
    bool exact = false;
    std::optional<Vec> witness; // v with ||Tv|| = value * ||v|| when exact
    std::string method;
};

// Extreme-point enumeration cap, as a dimension (2^cap points).
constexpr std::size_t kEnumerationCap = 12;

// Exact operator norm where computable; throws DimensionCapExceeded when enumeration is needed beyond the cap.
OperatorNorm operator_norm(const DiagSpace& dom, const DiagSpace& cod, const Matrix& m,
                           std::size_t cap = kEnumerationCap);
// Never throws on caps: falls back to a certified enclosure.
OperatorNorm operator_norm_or_bound(const DiagSpace& dom, const DiagSpace& cod, const Matrix& m,
                                    std::size_t cap = kEnumerationCap);

class BoundedMap {
public:
    BoundedMap(SpacePtr dom, SpacePtr cod, Matrix m);
    static BoundedMap identity(SpacePtr space);

    const SpacePtr& domain() const { return dom_; }
    const SpacePtr& codomain() const { return cod_; }
    const Matrix& matrix() const { return m_; }
    const OperatorNorm& opnorm() const { return norm_; }
    NormEnclosure norm() const { return norm_.value; }

    Vec apply(const Vec& v) const { return m_.apply(v); }
    BoundedMap then(const BoundedMap& next) const; // next ∘ this

private:
    SpacePtr dom_, cod_;
    Matrix m_;
    OperatorNorm norm_;
};

// Contracting (co)products of a finite family.
struct ProductData {
    SpacePtr space;
    std::vector<Matrix> projections; // space -> member
};
struct CoproductData {
    SpacePtr space;
    std::vector<Matrix> injections; // member -> space
};

ProductData contracting_product(const std::vector<SpacePtr>& family);
CoproductData contracting_coproduct(const std::vector<SpacePtr>& family);
// l1(S): contracting coproduct of copies of k indexed by labels.
DiagSpace l1(const ValuedField& field, const std::vector<std::string>& labels);

// Unique map into the product (from maps U -> V_i) or out of the coproduct (from maps V_i -> W).
BoundedMap assemble_into_product(const std::vector<BoundedMap>& maps, const NormValue& bound);
BoundedMap assemble_from_coproduct(const std::vector<BoundedMap>& maps, const NormValue& bound);

// Minimal norm of any preimage of the N x N identity pattern under the canonical swap map.
struct DeltaSwapResult {
    NormValue preimage_norm;
    NormValue image_norm;
    std::size_t kernel_dim = 0;
};
DeltaSwapResult delta_swap(std::size_t n);
NormValue delta_swap_norm(std::size_t n);

} // namespace indban
