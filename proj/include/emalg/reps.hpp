#ifndef EMALG_REPS_HPP
#define EMALG_REPS_HPP

#include "emalg/emap.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace emalg {

class RepError : public std::runtime_error {
public:
    RepError(const std::string& msg, size_t i = 0, size_t j = 0) : std::runtime_error(msg), witness{i, j} {}
    size_t witness[2];
};

// One square matrix per element of a source spanning set (a Lie algebra basis,
// a subalgebra basis or the first elements of a window).
struct MatrixRep {
    std::string source;
    size_t dim = 0;
    std::vector<Matrix> mats;
    Matrix act(const Vec& c) const;  // sum c_i mats[i]
};

// V(d) on the Chevalley basis of a type A1 algebra
MatrixRep sl2_irrep(const LieAlgebra& L, int d);
MatrixRep defining_rep(const LieAlgebra& L);
// lambda given on the basis; must vanish on [L, L]
MatrixRep one_dim_rep(const LieAlgebra& L, const Vec& values);
MatrixRep user_rep(const LieAlgebra& L, std::vector<Matrix> mats);
// RepError with the failing basis pair
void check_rep(const LieAlgebra& L, const MatrixRep& r);

// Leibniz action a (x) 1 + 1 (x) b; sources must agree
MatrixRep tensor_rep(const MatrixRep& a, const MatrixRep& b);
MatrixRep direct_sum(const MatrixRep& a, const MatrixRep& b);
// rho o phi on the basis of L
MatrixRep compose_automorphism(const MatrixRep& r, const LieAutomorphism& phi);
// lambda (x) rho: rho(a) + lambda(a) Id
MatrixRep twist_by_character(const MatrixRep& r, const Vec& lambda);

// A representation of g^x, given on gx.basis().
struct LocalRep {
    PointIsotropy iso;
    MatrixRep rep;
    Matrix act(const Vec& v) const;  // v in g^x, coordinates in g
};

// g^x must equal g, of type A1
LocalRep local_sl2(const GroupActionBundle& B, const Point& x, int d);
LocalRep local_defining(const GroupActionBundle& B, const Point& x);
// values of the functional on the complement basis z_basis of [g^x, g^x]
LocalRep local_one_dim(const GroupActionBundle& B, const Point& x, const Vec& values);
LocalRep local_matrices(const GroupActionBundle& B, const Point& x, std::vector<Matrix> mats);
// rho o g^{-1} at g.x
LocalRep transport(const GroupActionBundle& B, size_t g, const LocalRep& r);

// alpha -> sum of rho_x(alpha(x)) on the tensor product, for the first
// 'count' window elements (all when count is 0); points in distinct orbits
MatrixRep evaluation_rep(const MapAlgebraWindow& w, const std::vector<LocalRep>& reps, size_t count = 0);
// rho(alpha(x)) (x) 1 + rho(alpha'(x)) (x) eps on V (x) k[eps]/(eps^2); one-variable rings
MatrixRep first_jet_rep(const MapAlgebraWindow& w, const LocalRep& r, size_t count = 0);
// bracket compatibility on pairs whose bracket stays among the stored elements
void check_window_rep(const MapAlgebraWindow& w, const MatrixRep& r);

// basis of the associative algebra generated by the matrices and the identity
std::vector<Matrix> closure_basis(const MatrixRep& r);
bool burnside_irreducible(const MatrixRep& r);
size_t intertwiner_dimension(const MatrixRep& a, const MatrixRep& b);

struct OneDimSplit {
    Vec lambda;              // tr rho(a) / dim V
    MatrixRep rho2;          // rho - lambda Id
    size_t image_dim = 0;    // dim of the Lie algebra generated by rho2
    bool semisimple = false;
};
// RepError unless rho is Burnside-irreducible
OneDimSplit decompose_one_dim_factor(const MatrixRep& r);
// zero radical of the trace form on the closure algebra
bool completely_reducible(const MatrixRep& r);

}  // namespace emalg

#endif
