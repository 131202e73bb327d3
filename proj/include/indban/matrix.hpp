#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace indban {

using Q = mpq_class;
using Vec = std::vector<Q>;

Q parse_rational(const std::string& text);
std::string format_rational(const Q& q);

// Column-sparse rational matrix. Entries in each column are sorted by row and nonzero.
class Matrix {
public:
    using Entry = std::pair<std::size_t, Q>;
    using Column = std::vector<Entry>;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols = 0);
    static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);
    static Matrix column_vector(const Vec& v);
    static Matrix row_vector(const Vec& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }

    Q at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Q& value);
    void add_to(std::size_t r, std::size_t c, const Q& value);

    const Column& column(std::size_t c) const { return cols_[c]; }
    void set_column(std::size_t c, Column entries);
    Vec column_dense(std::size_t c) const;
    Vec row_dense(std::size_t r) const;
    std::vector<Vec> to_dense() const;
    std::size_t nonzeros() const;

    Vec apply(const Vec& v) const;
    Matrix transpose() const;
    Matrix select_columns(const std::vector<std::size_t>& idx) const;
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix hstack(const Matrix& other) const;
    Matrix vstack(const Matrix& other) const;
    bool is_zero() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Q& s, const Matrix& a);
    friend bool operator==(const Matrix& a, const Matrix& b);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::vector<Column> cols_;
};

Matrix kron(const Matrix& a, const Matrix& b);

// Permutation that maps coordinate (i, j) of A⊗B to (j, i) of B⊗A.
Matrix swap_matrix(std::size_t m, std::size_t n);

// Dense elimination helpers.
struct Rref {
    std::vector<Vec> rows;
    std::vector<std::size_t> pivots;
};

Rref rref(std::vector<Vec> rows, std::size_t cols);
std::size_t rank(const Matrix& m);
Matrix kernel(const Matrix& m);      // columns form a basis of the null space
Matrix image_basis(const Matrix& m); // independent columns spanning the column space
Q determinant(const Matrix& m);
bool invertible(const Matrix& m);
Matrix inverse(const Matrix& m);
// Solve a·x = b for a single solution; returns false if inconsistent.
bool solve(const Matrix& a, const Matrix& b, Matrix& x);

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Q& s, const Vec& a);
bool vec_is_zero(const Vec& a);
Vec unit_vector(std::size_t n, std::size_t i);

} // namespace indban
