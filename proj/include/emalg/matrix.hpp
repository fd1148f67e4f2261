#ifndef EMALG_MATRIX_HPP
#define EMALG_MATRIX_HPP

#include "emalg/scalar.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace emalg {

// Dense row-major matrix over Scalar.
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    static Matrix identity(size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, size_t cols);
    static Matrix from_columns(const std::vector<Vec>& cols, size_t rows);
    static Matrix scalar(size_t n, const Scalar& s);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Scalar& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Scalar& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    Vec row(size_t i) const;
    Vec col(size_t j) const;
    Vec apply(const Vec& v) const;     // M v
    Vec flatten() const { return a_; }  // row-major
    static Matrix unflatten(const Vec& v, size_t rows, size_t cols);

    Matrix transpose() const;
    bool is_zero() const;
    bool is_diagonal() const;
    std::string str() const;

    Matrix& operator+=(const Matrix& b);
    Matrix& operator-=(const Matrix& b);
    Matrix& operator*=(const Scalar& s);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Scalar trace(const Matrix& a);
Scalar trace_product(const Matrix& a, const Matrix& b);  // tr(ab)
// lcm of the entry conductors
int conductor_of(const Matrix& m);
int conductor_of(const Vec& v);
// every non-rational entry lifted to conductor n
Matrix lift(Matrix m, int n);
Vec lift(Vec v, int n);

}  // namespace emalg

#endif
