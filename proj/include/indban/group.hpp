#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace indban {

constexpr std::size_t kGroupOrderCap = 8;

// Finite group given by its multiplication table on 0..n-1.
class FiniteGroup {
public:
    static FiniteGroup from_table(std::string name, std::vector<std::vector<std::size_t>> table,
                                  std::vector<std::string> element_names = {});
    static FiniteGroup trivial();
    static FiniteGroup cyclic(std::size_t n);
    static FiniteGroup dihedral(std::size_t n); // order 2n
    static FiniteGroup quaternion();
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
    // Group generated by permutations of {0..m-1} (images lists).
    static FiniteGroup from_permutations(std::string name, const std::vector<std::vector<std::size_t>>& generators);
    static FiniteGroup symmetric3();

    const std::string& name() const { return name_; }
    std::size_t order() const { return table_.size(); }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t identity() const { return e_; }
    std::size_t inverse(std::size_t a) const { return inv_[a]; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }
    const std::string& element_name(std::size_t g) const { return names_.at(g); }
    const std::vector<std::string>& element_names() const { return names_; }
    bool abelian() const;

private:
    std::string name_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::string> names_;
    std::size_t e_ = 0;
    std::vector<std::size_t> inv_;
};

// One group of each isomorphism type of order at most 8 (14 types).
std::vector<FiniteGroup> groups_up_to_order_8();

} // namespace indban
