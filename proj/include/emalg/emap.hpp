#ifndef EMALG_EMAP_HPP
#define EMALG_EMAP_HPP

#include "emalg/group.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace emalg {

class WindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotApplicable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// sum_m terms[m] (x) m, coefficient vectors in the basis of g
struct MapElement {
    std::map<Monomial, Vec> terms;
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const MapElement& a, const MapElement& b) { return a.terms == b.terms; }
};

MapElement map_bracket(const LieAlgebra& L, const GradedRing& R, const MapElement& a, const MapElement& b);
// g.(u (x) f) = (g.u) (x) (g.f)
MapElement map_act(const GroupActionBundle& B, size_t g, const MapElement& a);
MapElement map_reynolds(const GroupActionBundle& B, const MapElement& a);
MapElement map_scale(const MapElement& a, const Scalar& c);
MapElement map_add(const MapElement& a, const MapElement& b);
// alpha(x) in g
Vec map_evaluate(const GradedRing& R, const MapElement& a, const Point& x);
std::string map_str(const LieAlgebra& L, const GradedRing& R, const MapElement& a);

// filtration degree: max |d_i|, taken over the whole orbit
int degree_norm(const Degree& d);

// A Gamma-orbit of degrees and the invariants of g (x) (sum of its pieces).
struct DegreeBlock {
    std::vector<Degree> degrees;  // sorted; degrees.front() is the representative
    int norm = 0;
    std::vector<MapElement> basis;
};

// (g (x) A)^Gamma on a Gamma-saturated set of degrees, split into orbit blocks
// ordered by norm. Only families with a grading preserved by Gamma qualify.
class MapAlgebraWindow {
public:
    // all blocks of norm <= max_norm
    MapAlgebraWindow(std::shared_ptr<const GroupActionBundle> B, int max_norm);
    // the saturation of the ring window [lo, hi]
    MapAlgebraWindow(std::shared_ptr<const GroupActionBundle> B, int lo, int hi);

    const GroupActionBundle& bundle() const { return *B_; }
    std::shared_ptr<const GroupActionBundle> bundle_ptr() const { return B_; }
    const std::vector<DegreeBlock>& blocks() const { return blocks_; }
    size_t dim() const { return elems_.size(); }
    const MapElement& element(size_t i) const { return elems_.at(i); }
    size_t block_of(size_t i) const { return owner_.at(i); }
    int norm_of(size_t i) const { return blocks_[owner_.at(i)].norm; }
    // window elements of norm <= n
    size_t count_up_to(int n) const;
    std::string label(size_t i) const;

    // raw coordinates over (monomial, basis of g) columns, higher blocks first
    SparseVec raw(const MapElement& a) const;
    MapElement from_raw(const SparseVec& v) const;
    size_t raw_dim() const { return ncols_; }
    size_t block_of_column(uint32_t c) const;
    std::pair<uint32_t, uint32_t> block_columns(size_t k) const { return block_cols_.at(k); }
    // coordinates in the window basis; WindowError outside the window
    Vec coords(const MapElement& a) const;
    bool contains(const MapElement& a) const;
    // [alpha_i, alpha_j], WindowError when the product leaves the window
    MapElement bracket(size_t i, size_t j) const;
    Vec bracket_coords(size_t i, size_t j) const;

private:
    void build(const std::vector<Degree>& degrees, int max_norm);

    std::shared_ptr<const GroupActionBundle> B_;
    std::vector<DegreeBlock> blocks_;
    std::vector<MapElement> elems_;
    std::vector<size_t> owner_;
    std::vector<size_t> first_;  // first element index of each block
    std::map<Monomial, uint32_t> base_;
    std::map<Monomial, size_t> mono_block_;
    std::vector<std::pair<uint32_t, uint32_t>> block_cols_;  // column range of each block
    size_t ncols_ = 0;
    std::vector<Coordinatizer> coord_;  // per block, over its columns
};

struct DerivedRow {
    size_t block = 0;
    int norm = 0;
    std::vector<Degree> degrees;
    size_t dim_m = 0;
    std::vector<size_t> derived;   // dim of the associated graded piece of [M,M], per depth
    std::vector<size_t> quotient;  // dim_m - derived
    bool stable = false;
    std::vector<MapElement> classes;  // representatives of the quotient (stable rows)
};

// [M,M] near the window: spans of brackets of window elements of norm <= D,
// read per target block through the associated graded of the norm filtration.
// Depths are D, D + step, D + 2 step; a row is stable when the three readings agree.
struct DerivedWindowReport {
    int target = 0;
    std::vector<int> depths;
    std::vector<DerivedRow> rows;
    size_t total_quotient = 0;  // at the largest depth
    bool all_stable = false;
    std::shared_ptr<MapAlgebraWindow> window;
    std::vector<SparseVec> derived_rows;  // echelon rows at the largest depth, raw coordinates
};

DerivedWindowReport derived_window(std::shared_ptr<const GroupActionBundle> B, int target, int depth, int step = 2);

// isotropy data at one point: g^x and a splitting g^x = [g^x, g^x] + complement
struct PointIsotropy {
    Point x;
    std::vector<size_t> stabilizer;
    Subspace gx, derived;
    std::vector<Vec> z_basis;  // complement of derived inside gx
    Coordinatizer coord;       // over derived.basis() followed by z_basis
    // coordinates of v in g^x with respect to derived.basis() + z_basis
    Vec split_coords(const Vec& v) const;
    Vec z_coords(const Vec& v) const;  // trailing part
};

PointIsotropy point_isotropy(const GroupActionBundle& B, const Point& x);

struct EvaluationReport {
    std::vector<Point> points;
    Matrix matrix;        // rows: coordinates of alpha(x) in g^x per point, stacked
    size_t rank = 0, target_dim = 0;
    bool surjective = false;
    bool contained = true;  // alpha(x) in g^x for every window element
};

// alpha -> (alpha(x))_x on the window; points must lie in distinct orbits
EvaluationReport evaluation_map(const MapAlgebraWindow& w, const std::vector<Point>& points);

struct GammaReport {
    std::vector<PointIsotropy> points;
    size_t z_dim = 0;        // sum of dim z^x
    size_t gamma_rank = 0;
    bool surjective = false;
    bool derived_in_md = true;
    struct Row {
        size_t block;
        int norm;
        size_t md, derived, kernel;  // associated graded dims of M^d, [M,M] and M^d/[M,M]
    };
    std::vector<Row> rows;
    size_t kernel_dim = 0;       // dim M^d/[M,M] = dim ker gamma
    size_t md_quotient_dim = 0;  // same number, kept for the report
    std::vector<MapElement> kernel_classes;
};

// gamma : M/[M,M] -> sum z^x over representatives of X-tilde; uses the largest
// depth of the derived report
GammaReport gamma_kernel(const DerivedWindowReport& d, const std::vector<Point>& reps);

struct PerfectnessCertificate {
    std::vector<int> satisfied;  // subset of {1, 2, 3}
    std::vector<std::string> evidence;
    bool perfect() const { return !satisfied.empty(); }
    std::string verdict() const;  // "PerfectBy(k)" with the first condition, or "Inconclusive"
};

PerfectnessCertificate perfectness_certificate(const GroupActionBundle& B);

}  // namespace emalg

#endif
