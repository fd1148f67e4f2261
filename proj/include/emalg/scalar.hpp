#ifndef EMALG_SCALAR_HPP
#define EMALG_SCALAR_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace emalg {

class ConductorMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(int n);
int euler_phi(int n);

// Element of Q(zeta_N). Values lying in Q are stored as plain rationals with
// conductor 1 and combine with any conductor; two non-rational values must
// share their conductor, otherwise lift() one of them first.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : q_(v) {}
    Scalar(int v) : q_(v) {}
    Scalar(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    Scalar(long num, long den);

    static Scalar zeta(int n);
    // coeffs are taken modulo Phi_n; any length is accepted
    static Scalar from_coeffs(int n, std::vector<mpq_class> coeffs);
    static Scalar parse(std::string_view text);

    int conductor() const { return n_; }
    bool is_rational() const { return n_ == 1; }
    bool is_zero() const { return n_ == 1 && sgn(q_) == 0; }
    bool is_one() const { return n_ == 1 && q_ == 1; }
    const mpq_class& rational() const;
    // coefficients of length phi(n) in Q(zeta_n); requires conductor() | n
    std::vector<mpq_class> coeffs(int n) const;

    Scalar lift(int m) const;  // same value, reported with conductor m basis
    Scalar inverse() const;
    Scalar pow(long e) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& b);
    Scalar& operator-=(const Scalar& b);
    Scalar& operator*=(const Scalar& b);
    Scalar& operator/=(const Scalar& b);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string str() const;

private:
    static int joint_conductor(const Scalar& a, const Scalar& b);
    void normalize();

    int n_ = 1;
    mpq_class q_;               // value when n_ == 1
    std::vector<mpq_class> c_;  // residue mod Phi_n when n_ > 1
};

// Total order on text forms; used for canonical representatives.
bool text_less(const Scalar& a, const Scalar& b);

// Square root inside Q(zeta_n) when one exists there (rational radicands and
// squares of field elements are handled); empty vector otherwise.
std::vector<Scalar> square_roots(const Scalar& a, int n);

using Vec = std::vector<Scalar>;
bool is_zero(const Vec& v);
std::string str(const Vec& v);

}  // namespace emalg

#endif
