#ifndef EMALG_LINALG_HPP
#define EMALG_LINALG_HPP

#include "emalg/matrix.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace emalg {

struct Echelon {
    Matrix rref;
    std::vector<size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form. Forward pass is fraction-free (Bareiss), rows are
// normalized by their pivots at the end.
Echelon rref(const Matrix& m);
size_t rank(const Matrix& m);
// Rank by column-major Gauss elimination choosing the bottom-most usable pivot;
// an independent elimination order kept for cross-checking.
size_t rank_bottom_pivot(const Matrix& m);

// Subspace of k^n held in canonical reduced row echelon form.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(size_t ambient) : n_(ambient) {}
    static Subspace span(const std::vector<Vec>& vectors, size_t ambient);
    static Subspace full(size_t ambient);

    size_t ambient() const { return n_; }
    size_t dim() const { return rows_.size(); }
    const std::vector<Vec>& basis() const { return rows_; }
    const std::vector<size_t>& pivots() const { return piv_; }

    // inserts v, returns false if v was already contained
    bool add(const Vec& v);
    Vec reduce(const Vec& v) const;  // v minus its projection along pivots
    bool contains(const Vec& v) const;
    bool contains(const Subspace& s) const;
    // coordinates with respect to basis(); throws if v is not contained
    Vec coords(const Vec& v) const;
    // unit vectors at non-pivot columns: a canonical complement
    std::vector<Vec> complement() const;

    Subspace operator+(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.n_ == b.n_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    size_t n_ = 0;
    std::vector<Vec> rows_;  // sorted by pivot
    std::vector<size_t> piv_;
};

Subspace kernel_basis(const Matrix& m);
// kernel of the vertically stacked matrices
Subspace common_kernel(const std::vector<Matrix>& ms, size_t cols);

// Coordinates with respect to a fixed independent family of vectors.
class Coordinatizer {
public:
    Coordinatizer() = default;
    Coordinatizer(const std::vector<Vec>& family, size_t ambient);
    size_t size() const { return k_; }
    const std::vector<Vec>& family() const { return fam_; }
    std::optional<Vec> try_coords(const Vec& v) const;
    Vec coords(const Vec& v) const;  // throws when v is outside the span

private:
    size_t n_ = 0, k_ = 0;
    std::vector<Vec> fam_;
    Echelon ech_;
    Matrix t_;  // rref = t_ * family
};

using SparseVec = std::vector<std::pair<uint32_t, Scalar>>;

SparseVec to_sparse(const Vec& v);
Vec to_dense(const SparseVec& v, size_t n);
// a + c*b
SparseVec axpy(const SparseVec& a, const Scalar& c, const SparseVec& b);

// Row echelon form over sparse rows, built incrementally; the pivot of a row is
// its smallest column index. Not fully reduced: enough for ranks and for
// "which pivots lie in a column range" queries.
class SparseEchelon {
public:
    // returns the pivot column, or nullopt if v depends on earlier rows
    std::optional<uint32_t> add(SparseVec v);
    SparseVec reduce(SparseVec v) const;
    size_t rank() const { return rows_.size(); }
    const std::vector<SparseVec>& rows() const { return rows_; }
    std::vector<uint32_t> pivots() const;

private:
    std::vector<SparseVec> rows_;
    std::unordered_map<uint32_t, size_t> by_pivot_;
};

}  // namespace emalg

#endif
