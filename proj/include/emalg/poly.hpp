#ifndef EMALG_POLY_HPP
#define EMALG_POLY_HPP

#include "emalg/matrix.hpp"

#include <utility>
#include <vector>

namespace emalg {

// Univariate polynomial, coefficients lowest degree first, no trailing zeros.
using Poly = std::vector<Scalar>;

Poly trim(Poly p);
int degree(const Poly& p);  // -1 for the zero polynomial
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
// a = q*b + r
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Scalar poly_eval(const Poly& p, const Scalar& x);
Poly poly_from_roots(const std::vector<Scalar>& roots);  // monic
std::string poly_str(const Poly& p, const std::string& var = "u");

// monic minimal polynomial of a square matrix, by Krylov iteration on powers
Poly minimal_polynomial(const Matrix& m);

struct LinearFactorization {
    std::vector<std::pair<Scalar, int>> roots;  // root, multiplicity
    Poly rest;  // cofactor with no rational roots (monic, possibly constant 1)
    Scalar leading;
};
// Splits off every rational linear factor; coefficients must be rational.
// Throws std::runtime_error if a constant term is too large to enumerate divisors.
LinearFactorization factor_rational_linear(const Poly& p);

}  // namespace emalg

#endif
