#ifndef EMALG_CLASSIFY_HPP
#define EMALG_CLASSIFY_HPP

#include "emalg/orbits.hpp"
#include "emalg/reps.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace emalg {

class EquivarianceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedLabel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Isomorphism class of an irreducible representation of g^x.
struct RepLabel {
    enum class Kind { Sl2, OneDim, DominantWeight, Explicit };
    Kind kind = Kind::Sl2;
    int d = 0;                  // Sl2: V(d)
    Vec values;                 // OneDim: values on the z basis of g^x
    std::string type;           // DominantWeight: Cartan type of g^x
    std::vector<int> weight;    // DominantWeight: fundamental-weight coordinates
    std::vector<Matrix> mats;   // Explicit: on the basis of g^x

    static RepLabel sl2(int d);
    static RepLabel one_dim(Vec values);
    static RepLabel dominant(std::string type, std::vector<int> weight);
    static RepLabel explicit_matrices(std::vector<Matrix> mats);

    bool trivial() const;
    std::string str() const;
    friend bool operator==(const RepLabel& a, const RepLabel& b);
};

// Finitely supported equivariant function, stored on canonical orbit representatives.
struct EquivariantFunction {
    std::vector<std::pair<Point, RepLabel>> entries;  // sorted by point_less
    bool is_zero() const { return entries.empty(); }
    std::string str() const;
    friend bool operator==(const EquivariantFunction& a, const EquivariantFunction& b) { return a.entries == b.entries; }
};

// RepError / DomainError / EquivarianceError when the label does not fit g^x
void validate_label(const GroupActionBundle& B, const Point& x, const RepLabel& l);
// the class of rho o g^{-1} at g.x
RepLabel transport_label(const GroupActionBundle& B, size_t g, const Point& x, const RepLabel& l);
EquivariantFunction canonicalize_psi(const GroupActionBundle& B, const std::vector<std::pair<Point, RepLabel>>& raw);
// pointwise tensor product; UnsupportedLabel for dominant-weight pairs
EquivariantFunction psi_tensor(const GroupActionBundle& B, const EquivariantFunction& a, const EquivariantFunction& b);
LocalRep local_rep(const GroupActionBundle& B, const Point& x, const RepLabel& l);
MatrixRep ev_psi(const MapAlgebraWindow& w, const EquivariantFunction& psi, size_t count = 0);

struct InjectivityReport {
    size_t functions = 0;  // assignments enumerated
    size_t invalid = 0;    // rejected by canonicalization
    std::vector<EquivariantFunction> classes;
    std::vector<size_t> dims;
    bool diagonal_ok = true;   // End = k on every class
    bool injective = true;     // Hom = 0 between distinct classes
    std::vector<std::pair<size_t, size_t>> collisions;
};

InjectivityReport injectivity_harness(const MapAlgebraWindow& w, const std::vector<Point>& points,
                                      const std::vector<RepLabel>& labels, size_t count = 0);

enum class Regime { Perfect, FiniteTilde, InfiniteTilde, Undetermined };
std::string regime_name(Regime r);

struct RegimeReport {
    Regime regime = Regime::Undetermined;
    std::vector<std::string> evidence;
    std::vector<Point> tilde_points;
    size_t kernel_dim = 0;
    bool all_evaluation = false;  // every irreducible is an evaluation representation
};

// depth 0 selects the default window depth
RegimeReport classification_regime(std::shared_ptr<const GroupActionBundle> B, int depth = 0);

// lambda (x) ev_Psi read back from its matrices: lambda as one-dimensional labels at
// the representatives of X-tilde, Psi by matching against candidates over a point pool
struct Recovered {
    EquivariantFunction lambda;
    EquivariantFunction psi;
    size_t matches = 0;
};
Recovered recover_decomposition(const MapAlgebraWindow& w, const MatrixRep& rho, const std::vector<Point>& tilde,
                                const std::vector<Point>& pool, const std::vector<RepLabel>& labels);

// n polynomials prod_i (1 - x_i u)^{N_ij}
struct DrinfeldTuple {
    std::vector<std::vector<std::pair<Scalar, int>>> polys;
    DrinfeldTuple normalized() const;  // merged, zero exponents dropped, factors sorted
    std::string str() const;
};

EquivariantFunction drinfeld_to_psi(const GroupActionBundle& B, const DrinfeldTuple& pi);
DrinfeldTuple psi_to_drinfeld(const GroupActionBundle& B, const EquivariantFunction& psi);

}  // namespace emalg

#endif
