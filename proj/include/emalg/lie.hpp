#ifndef EMALG_LIE_HPP
#define EMALG_LIE_HPP

#include "emalg/linalg.hpp"

#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace emalg {

class JacobiError : public std::runtime_error {
public:
    JacobiError(const std::string& msg, size_t i, size_t j, size_t k)
        : std::runtime_error(msg), witness{i, j, k} {}
    size_t witness[3];
};

class AutomorphismError : public std::runtime_error {
public:
    AutomorphismError(const std::string& msg, size_t i, size_t j)
        : std::runtime_error(msg), witness{i, j} {}
    size_t witness[2];
};

// Root data kept with an algebra built from a Cartan type.
struct CartanData {
    std::string type;  // e.g. "D4"
    int rank = 0;
    std::vector<std::vector<int>> cartan;     // cartan[i][j] = alpha_j(h_i)
    std::vector<std::vector<int>> pos_roots;  // simple-root coordinates, basis order
    std::vector<size_t> h_index, e_index, f_index;
    // e_beta = [e_simple, e_from] / (p+1), f_beta = -[f_simple, f_from] / (p+1)
    struct Step {
        size_t root, simple, from;
        int p;
    };
    std::vector<Step> steps;
    std::string sign_convention;
};

class LieAlgebra {
public:
    // table[i*n+j] = coordinates of [b_i, b_j]; antisymmetry and Jacobi are checked
    LieAlgebra(std::string name, std::vector<std::string> labels, std::vector<SparseVec> table);

    static LieAlgebra from_cartan_type(const std::string& type);
    static LieAlgebra matrix_family(const std::string& family, int n);
    // basis matrices must be independent and closed under commutators
    static LieAlgebra from_matrices(std::string name, std::vector<std::string> labels,
                                    const std::vector<Matrix>& basis);
    // the bracket-closed subspace s with basis s.basis(), labels b0, b1, ...
    static LieAlgebra subalgebra(const LieAlgebra& parent, const Subspace& s);

    size_t dim() const { return n_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const SparseVec& constants(size_t i, size_t j) const { return table_[i * n_ + j]; }
    Vec unit(size_t i) const;
    Vec bracket(const Vec& x, const Vec& y) const;
    Matrix ad(const Vec& x) const;
    Matrix ad_basis(size_t i) const;
    const std::optional<CartanData>& cartan() const { return cartan_; }
    // matrices of a faithful representation on the basis, when known
    const std::vector<Matrix>& defining() const { return defining_; }
    // when built as a subalgebra: parent coordinates of each basis element
    const std::vector<Vec>& embedding() const { return embedding_; }

private:
    void check_jacobi() const;

    std::string name_;
    size_t n_ = 0;
    std::vector<std::string> labels_;
    std::vector<SparseVec> table_;
    std::optional<CartanData> cartan_;
    std::vector<Matrix> defining_;
    std::vector<Vec> embedding_;
};

// Bracket-preserving invertible linear map; matrix columns are images of the basis.
class LieAutomorphism {
public:
    LieAutomorphism() = default;
    LieAutomorphism(const LieAlgebra& L, Matrix m);
    static LieAutomorphism identity(const LieAlgebra& L);

    const Matrix& matrix() const { return m_; }
    const Matrix& inverse_matrix() const { return inv_; }
    Vec apply(const Vec& v) const { return m_.apply(v); }
    Vec apply_inverse(const Vec& v) const { return inv_.apply(v); }
    int order(int bound = 1000) const;
    friend bool operator==(const LieAutomorphism& a, const LieAutomorphism& b) { return a.m_ == b.m_; }

private:
    Matrix m_, inv_;
};

Matrix inverse(const Matrix& m);  // throws if singular

LieAutomorphism chevalley_involution(const LieAlgebra& L);
// perm is 0-based: node i goes to node perm[i]
LieAutomorphism diagram_automorphism(const LieAlgebra& L, const std::vector<int>& perm);
LieAutomorphism explicit_automorphism(const LieAlgebra& L, const Matrix& m);
// automorphism induced by a map on the defining matrices (e.g. conjugation)
LieAutomorphism automorphism_from_defining_map(const LieAlgebra& L,
                                               const std::function<Matrix(const Matrix&)>& f);
// extends images of the Chevalley generators e_i, f_i
LieAutomorphism automorphism_from_generators(const LieAlgebra& L, const std::vector<Vec>& e_img,
                                             const std::vector<Vec>& f_img);
LieAutomorphism compose(const LieAlgebra& L, const LieAutomorphism& a, const LieAutomorphism& b);

Subspace fixed_subalgebra(const LieAlgebra& L, const std::vector<LieAutomorphism>& autos);
bool is_bracket_closed(const LieAlgebra& L, const Subspace& s);
Subspace derived_subspace(const LieAlgebra& L, const Subspace& s);
Subspace bracket_span(const LieAlgebra& L, const Subspace& a, const Subspace& b);

struct GradedPiece {
    std::vector<int> character;  // exponent of each generator's root of unity
    Subspace space;
};
// simultaneous eigenspaces of commuting automorphisms of finite order; piece
// for character (a_1..a_k) is where auto j acts by zeta_{m_j}^{a_j}; roots of
// unity are taken in conductor lcm(orders, entry conductors, conductor)
std::vector<GradedPiece> xi_grading(const LieAlgebra& L, const std::vector<LieAutomorphism>& autos,
                                    const std::vector<int>& orders, int conductor = 1);

struct StructureReport {
    size_t dim = 0, derived_dim = 0, center_dim = 0, killing_rank = 0, rank_estimate = 0,
           centroid_dim = 0;
    bool reductive = false, semisimple = false;
    std::vector<size_t> ideal_dims;
    std::vector<std::string> ideal_types;
    std::string label;  // e.g. "k^1+A1", "G2", "unidentified"
    std::string notes;
};

StructureReport analyze_structure(const LieAlgebra& L, unsigned long seed = 0);
StructureReport analyze_structure(const LieAlgebra& L, const Subspace& s, unsigned long seed = 0);

// basis of the centroid, i.e. the commutant of ad(L), as matrices
std::vector<Matrix> centroid(const LieAlgebra& L, unsigned long seed = 0);
size_t rank_estimate(const LieAlgebra& L, unsigned long seed = 0);
Matrix killing_form(const LieAlgebra& L);
// simple-type label by dimension, rank and, for B/C collisions, root strings
std::string identify_simple(const LieAlgebra& S, unsigned long seed = 0);
// number of positive roots of a Cartan type
int positive_root_count(const std::string& type);
int cartan_rank(const std::string& type);

// small deterministic probe values in [-3, 3] drawn from a seeded mt19937_64
class Probe {
public:
    explicit Probe(unsigned long seed);
    long next();
    Vec vec(size_t n);

private:
    std::mt19937_64 rng_;
};

}  // namespace emalg

#endif
