#include "indban/matrix.hpp"

#include "indban/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace indban {

Q parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
    if (s.front() == '+') s.erase(s.begin());
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) throw Error(ErrorKind::ParseError, "bad rational: " + text);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac = s.size() - dot - 1;
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac; ++i) den *= 10;
        mpz_class num;
        if (num.set_str(digits, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational: " + text);
        Q q(num, den);
        q.canonicalize();
        return q;
    }
    Q q;
    if (q.set_str(s, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational: " + text);
    if (q.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string format_rational(const Q& q) { return q.get_str(); }

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.cols_[i].emplace_back(i, Q(1));
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    std::size_t c = rows.empty() ? cols : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j)
            if (rows[i][j] != 0) m.cols_[j].emplace_back(i, rows[i][j]);
    }
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw Error(ErrorKind::DimensionMismatch, "ragged matrix columns");
        for (std::size_t i = 0; i < rows; ++i)
            if (cols[j][i] != 0) m.cols_[j].emplace_back(i, cols[j][i]);
    }
    return m;
}

Matrix Matrix::column_vector(const Vec& v) { return from_columns(v.size(), {v}); }

Matrix Matrix::row_vector(const Vec& v) { return from_rows({v}, v.size()); }

Q Matrix::at(std::size_t r, std::size_t c) const {
    const auto& col = cols_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    if (it != col.end() && it->first == r) return it->second;
    return Q(0);
}

void Matrix::set(std::size_t r, std::size_t c, const Q& value) {
    if (r >= rows_ || c >= cols_.size()) throw Error(ErrorKind::IndexOutOfRange, "matrix index");
    auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
        if (value == 0)
            col.erase(it);
        else
            it->second = value;
    } else if (value != 0) {
        col.insert(it, Entry(r, value));
    }
}

void Matrix::add_to(std::size_t r, std::size_t c, const Q& value) {
    if (value == 0) return;
    set(r, c, at(r, c) + value);
}

void Matrix::set_column(std::size_t c, Column entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Column merged;
    for (auto& e : entries) {
        if (e.first >= rows_) throw Error(ErrorKind::IndexOutOfRange, "column entry row");
        if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
        else
            merged.push_back(std::move(e));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Entry& e) { return e.second == 0; }),
                 merged.end());
    cols_.at(c) = std::move(merged);
}

Vec Matrix::column_dense(std::size_t c) const {
    Vec v(rows_);
    for (const auto& [r, x] : cols_.at(c)) v[r] = x;
    return v;
}

Vec Matrix::row_dense(std::size_t r) const {
    Vec v(cols_.size());
    for (std::size_t c = 0; c < cols_.size(); ++c) v[c] = at(r, c);
    return v;
}

std::vector<Vec> Matrix::to_dense() const {
    std::vector<Vec> d(rows_, Vec(cols_.size()));
    for (std::size_t c = 0; c < cols_.size(); ++c)
        for (const auto& [r, x] : cols_[c]) d[r][c] = x;
    return d;
}

std::size_t Matrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    Vec out(rows_);
    for (std::size_t c = 0; c < cols_.size(); ++c) {
        if (v[c] == 0) continue;
        for (const auto& [r, x] : cols_[c]) out[r] += x * v[c];
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_.size(), rows_);
    for (std::size_t c = 0; c < cols_.size(); ++c)
        for (const auto& [r, x] : cols_[c]) t.cols_[r].emplace_back(c, x);
    return t;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) m.cols_[k] = cols_.at(idx[k]);
    return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    std::map<std::size_t, std::vector<std::size_t>> where;
    for (std::size_t k = 0; k < idx.size(); ++k) where[idx[k]].push_back(k);
    Matrix m(idx.size(), cols_.size());
    for (std::size_t c = 0; c < cols_.size(); ++c) {
        Column col;
        for (const auto& [r, x] : cols_[c]) {
            auto it = where.find(r);
            if (it == where.end()) continue;
            for (auto k : it->second) col.emplace_back(k, x);
        }
        m.set_column(c, std::move(col));
    }
    return m;
}

Matrix Matrix::hstack(const Matrix& other) const {
    if (other.rows_ != rows_) throw Error(ErrorKind::DimensionMismatch, "hstack");
    Matrix m = *this;
    m.cols_.insert(m.cols_.end(), other.cols_.begin(), other.cols_.end());
    return m;
}

Matrix Matrix::vstack(const Matrix& other) const {
    if (other.cols() != cols()) throw Error(ErrorKind::DimensionMismatch, "vstack");
    Matrix m(rows_ + other.rows_, cols());
    for (std::size_t c = 0; c < cols(); ++c) {
        m.cols_[c] = cols_[c];
        for (const auto& [r, x] : other.cols_[c]) m.cols_[c].emplace_back(r + rows_, x);
    }
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& c : cols_)
        if (!c.empty()) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product");
    Matrix m(a.rows(), b.cols());
    std::vector<Q> acc(a.rows());
    std::vector<char> touched(a.rows(), 0);
    std::vector<std::size_t> rows;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        rows.clear();
        for (const auto& [k, y] : b.cols_[c]) {
            for (const auto& [r, x] : a.cols_[k]) {
                if (!touched[r]) {
                    touched[r] = 1;
                    rows.push_back(r);
                    acc[r] = 0;
                }
                acc[r] += x * y;
            }
        }
        std::sort(rows.begin(), rows.end());
        Matrix::Column col;
        for (auto r : rows) {
            if (acc[r] != 0) col.emplace_back(r, acc[r]);
            touched[r] = 0;
        }
        m.cols_[c] = std::move(col);
    }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
    Matrix m(a.rows(), a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        const auto& x = a.cols_[c];
        const auto& y = b.cols_[c];
        Matrix::Column out;
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
                out.push_back(x[i++]);
            } else if (i == x.size() || y[j].first < x[i].first) {
                out.push_back(y[j++]);
            } else {
                Q s = x[i].second + y[j].second;
                if (s != 0) out.emplace_back(x[i].first, s);
                ++i;
                ++j;
            }
        }
        m.cols_[c] = std::move(out);
    }
    return m;
}

Matrix operator*(const Q& s, const Matrix& a) {
    Matrix m(a.rows(), a.cols());
    if (s == 0) return m;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        m.cols_[c] = a.cols_[c];
        for (auto& e : m.cols_[c]) e.second *= s;
    }
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + Q(-1) * b; }

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << ", ";
        os << "[";
        for (std::size_t c = 0; c < cols(); ++c) {
            if (c) os << ", ";
            os << at(r, c).get_str();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
        for (std::size_t cb = 0; cb < b.cols(); ++cb) {
            Matrix::Column col;
            for (const auto& [ra, x] : a.column(ca))
                for (const auto& [rb, y] : b.column(cb)) col.emplace_back(ra * b.rows() + rb, x * y);
            m.set_column(ca * b.cols() + cb, std::move(col));
        }
    }
    return m;
}

Matrix swap_matrix(std::size_t m, std::size_t n) {
    Matrix s(n * m, m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) s.set(j * m + i, i * n + j, 1);
    return s;
}

Rref rref(std::vector<Vec> rows, std::size_t cols) {
    Rref out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        Q inv = 1 / rows[r][c];
        for (std::size_t k = c; k < cols; ++k) rows[r][k] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Q f = rows[i][c];
            for (std::size_t k = c; k < cols; ++k)
                if (rows[r][k] != 0) rows[i][k] -= f * rows[r][k];
        }
        out.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

std::size_t rank(const Matrix& m) { return rref(m.to_dense(), m.cols()).pivots.size(); }

Matrix kernel(const Matrix& m) {
    Rref R = rref(m.to_dense(), m.cols());
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto p : R.pivots) is_pivot[p] = 1;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < R.pivots.size(); ++i) v[R.pivots[i]] = -R.rows[i][f];
        basis.push_back(std::move(v));
    }
    return Matrix::from_columns(m.cols(), basis);
}

Matrix image_basis(const Matrix& m) {
    Rref R = rref(m.to_dense(), m.cols());
    return m.select_columns(R.pivots);
}

Q determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
    auto a = m.to_dense();
    std::size_t n = a.size();
    Q det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Q f = a[i][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
        }
    }
    return det;
}

bool invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
    std::size_t n = m.rows();
    auto a = m.to_dense();
    for (std::size_t i = 0; i < n; ++i) {
        a[i].resize(2 * n);
        a[i][n + i] = 1;
    }
    Rref R = rref(std::move(a), 2 * n);
    if (R.pivots.size() < n || R.pivots[n - 1] != n - 1)
        throw Error(ErrorKind::DimensionMismatch, "matrix is singular");
    std::vector<Vec> inv(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = R.rows[i][n + j];
    return Matrix::from_rows(inv, n);
}

bool solve(const Matrix& a, const Matrix& b, Matrix& x) {
    if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "solve");
    std::size_t n = a.cols(), k = b.cols();
    auto aug = a.hstack(b).to_dense();
    Rref R = rref(std::move(aug), n + k);
    for (auto p : R.pivots)
        if (p >= n) return false;
    x = Matrix(n, k);
    for (std::size_t i = 0; i < R.pivots.size(); ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (R.rows[i][n + j] != 0) x.set(R.pivots[i], j, R.rows[i][n + j]);
    return true;
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector sum");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector difference");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vec vec_scale(const Q& s, const Vec& a) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
    return out;
}

bool vec_is_zero(const Vec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

Vec unit_vector(std::size_t n, std::size_t i) {
    Vec v(n);
    v.at(i) = 1;
    return v;
}

} // namespace indban
