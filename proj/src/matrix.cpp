#include "emalg/matrix.hpp"

#include <numeric>
#include <stdexcept>

namespace emalg {

Matrix Matrix::identity(size_t n) { return scalar(n, Scalar(1)); }

Matrix Matrix::scalar(size_t n, const Scalar& s) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, size_t cols) {
    Matrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged rows");
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, size_t rows) {
    Matrix m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("ragged columns");
        for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Matrix Matrix::unflatten(const Vec& v, size_t rows, size_t cols) {
    if (v.size() != rows * cols) throw std::invalid_argument("unflatten size mismatch");
    Matrix m(rows, cols);
    m.a_ = v;
    return m;
}

Vec Matrix::row(size_t i) const { return Vec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

Vec Matrix::col(size_t j) const {
    Vec v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != c_) throw std::invalid_argument("matrix-vector size mismatch");
    Vec r(r_);
    for (size_t j = 0; j < c_; ++j) {
        if (v[j].is_zero()) continue;
        for (size_t i = 0; i < r_; ++i) {
            const Scalar& x = (*this)(i, j);
            if (!x.is_zero()) r[i] += x * v[j];
        }
    }
    return r;
}

Matrix Matrix::transpose() const {
    Matrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_diagonal() const {
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j)
            if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
}

std::string Matrix::str() const {
    std::string s = "[";
    for (size_t i = 0; i < r_; ++i) {
        if (i) s += ",";
        s += "[";
        for (size_t j = 0; j < c_; ++j) {
            if (j) s += ",";
            s += (*this)(i, j).str();
        }
        s += "]";
    }
    return s + "]";
}

Matrix& Matrix::operator+=(const Matrix& b) {
    if (r_ != b.r_ || c_ != b.c_) throw std::invalid_argument("matrix size mismatch");
    for (size_t i = 0; i < a_.size(); ++i)
        if (!b.a_[i].is_zero()) a_[i] += b.a_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& b) {
    if (r_ != b.r_ || c_ != b.c_) throw std::invalid_argument("matrix size mismatch");
    for (size_t i = 0; i < a_.size(); ++i)
        if (!b.a_[i].is_zero()) a_[i] -= b.a_[i];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
    for (auto& x : a_)
        if (!x.is_zero()) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product size mismatch");
    Matrix m(a.r_, b.c_);
    for (size_t i = 0; i < a.r_; ++i)
        for (size_t k = 0; k < a.c_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < b.c_; ++j) {
                const Scalar& y = b(k, j);
                if (!y.is_zero()) m(i, j) += x * y;
            }
        }
    return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (size_t k = 0; k < b.rows(); ++k)
                for (size_t l = 0; l < b.cols(); ++l)
                    if (!b(k, l).is_zero()) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

Scalar trace(const Matrix& a) {
    Scalar t;
    for (size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
    return t;
}

Scalar trace_product(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) throw std::invalid_argument("trace size mismatch");
    Scalar t;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const Scalar& x = a(i, k);
            if (!x.is_zero() && !b(k, i).is_zero()) t += x * b(k, i);
        }
    return t;
}

int conductor_of(const Matrix& m) {
    int c = 1;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) c = std::lcm(c, m(i, j).conductor());
    return c;
}

int conductor_of(const Vec& v) {
    int c = 1;
    for (const auto& x : v) c = std::lcm(c, x.conductor());
    return c;
}

Matrix lift(Matrix m, int n) {
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_rational()) m(i, j) = m(i, j).lift(n);
    return m;
}

Vec lift(Vec v, int n) {
    for (auto& x : v)
        if (!x.is_rational()) x = x.lift(n);
    return v;
}

}  // namespace emalg
