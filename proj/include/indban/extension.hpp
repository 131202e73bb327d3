#pragma once

#include "indban/nspace.hpp"
#include "indban/polynomial.hpp"

#include <string>
#include <vector>

namespace indban {

constexpr std::size_t kDegreeCap = 8;

// Finite Galois extension L = K[a]/(f) in the power basis 1, a, ..., a^{n-1}.
class FieldExtension {
public:
    // generators: images of the primitive element, as power-basis coefficient vectors.
    static FieldExtension build(const ValuedField& base, const Poly& minpoly, const std::vector<Vec>& generators);

    const ValuedField& base() const { return base_; }
    std::size_t degree() const { return n_; }
    const Poly& minpoly() const { return f_; }
    const std::vector<std::string>& labels() const { return labels_; }

    // n x n^2 structure matrix: column i*n+j is e_i e_j.
    const Matrix& mult_table() const { return mult_; }
    Vec multiply(const Vec& a, const Vec& b) const;
    Matrix mult_by(const Vec& a) const; // left multiplication as an n x n matrix
    Vec inverse(const Vec& a) const;
    Vec one() const { return unit_vector(n_, 0); }
    Vec from_rational(const Q& q) const;
    Q norm_K(const Vec& a) const;  // determinant of multiplication
    Q trace(const Vec& a) const;

    // Galois group; element 0 is the identity.
    std::size_t group_order() const { return galois_.size(); }
    const Matrix& galois(std::size_t s) const;
    const std::vector<Matrix>& galois_matrices() const { return galois_; }
    Vec apply_galois(std::size_t s, const Vec& a) const;
    std::size_t compose(std::size_t s, std::size_t t) const { return compose_.at(s).at(t); } // s ∘ t
    std::size_t inverse_index(std::size_t s) const { return inverse_.at(s); }
    std::size_t index_of(const Matrix& sigma) const;

    // chosen norm on L as a K-space
    const SpacePtr& norm_space() const { return norm_space_; }
    const std::string& norm_description() const { return norm_desc_; }

    std::string element_str(const Vec& a) const;

private:
    ValuedField base_;
    std::size_t n_ = 0;
    Poly f_;
    std::vector<std::string> labels_;
    Matrix mult_;
    std::vector<Matrix> galois_;
    std::vector<std::vector<std::size_t>> compose_;
    std::vector<std::size_t> inverse_;
    SpacePtr norm_space_;
    std::string norm_desc_;
};

// ||e_i e_j|| <= ||e_i|| ||e_j|| on all basis pairs.
struct SubmultiplicativityReport {
    bool holds = true;
    NormValue worst_ratio; // max ||e_i e_j|| / (||e_i|| ||e_j||)
    std::size_t worst_i = 0, worst_j = 0;
};
SubmultiplicativityReport check_submultiplicative(const FieldExtension& ext);

} // namespace indban
