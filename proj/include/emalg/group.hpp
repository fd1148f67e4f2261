#ifndef EMALG_GROUP_HPP
#define EMALG_GROUP_HPP

#include "emalg/lie.hpp"
#include "emalg/ring.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace emalg {

class GroupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Finite group with elements 0..n-1, 0 the identity. Products follow the word
// convention: the element of the word "sr" is s*r, and (gh).x = g.(h.x).
class FiniteGroup {
public:
    // relations are words in the generator names, e.g. "ss", "srsr", "s^-1 r s r",
    // or equations "sr = rs"
    static FiniteGroup from_presentation(const std::vector<std::string>& gens,
                                         const std::vector<std::string>& relations, size_t bound = 10000);
    // images[i] is the permutation of generator i on {0..m-1}; domain names
    // label the points in cycle notation
    static FiniteGroup from_permutations(const std::vector<std::string>& gens,
                                         const std::vector<std::vector<int>>& images,
                                         const std::vector<std::string>& domain = {}, size_t bound = 10000);
    static FiniteGroup trivial();

    size_t order() const { return labels_.size(); }
    size_t identity() const { return 0; }
    size_t mul(size_t a, size_t b) const;
    size_t inv(size_t a) const { return inv_.at(a); }
    size_t conjugate(size_t g, size_t h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
    const std::string& label(size_t g) const { return labels_.at(g); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<size_t> find(const std::string& label) const;
    size_t generator_count() const { return gen_names_.size(); }
    const std::vector<std::string>& generator_names() const { return gen_names_; }
    size_t generator(size_t i) const { return gen_elem_.at(i); }
    // shortest positive word (generator indices) of g
    const std::vector<int>& word(size_t g) const { return words_.at(g); }
    bool is_abelian() const;
    int element_order(size_t g) const;
    std::vector<size_t> subgroup_generated(const std::vector<size_t>& gens) const;
    // elements of a word with signed letters (i+1 for generator i, -(i+1) for its inverse)
    size_t evaluate_word(const std::vector<int>& letters) const;
    // parses generator words as accepted in relations
    std::vector<int> parse_word(const std::string& w) const;

private:
    void finish(std::vector<std::vector<int>> right);  // right[k][a] = a * gen_k
    std::vector<std::string> gen_names_;
    std::vector<size_t> gen_elem_;
    std::vector<std::vector<int>> right_;  // per generator: a -> a * gen
    std::vector<std::vector<int>> right_inv_;
    std::vector<size_t> inv_;
    std::vector<std::vector<int>> words_;
    std::vector<std::string> labels_;
    std::vector<std::vector<uint32_t>> table_;  // full table for small groups
};

// A finite group acting on g by automorphisms, on X by point maps, and on the
// coordinate ring through g.f = f o phi_{g^-1}.
class GroupActionBundle {
public:
    GroupActionBundle(FiniteGroup G, std::shared_ptr<const LieAlgebra> L, std::shared_ptr<const GradedRing> R,
                      const std::vector<LieAutomorphism>& gen_lie, const std::vector<PointMap>& gen_point,
                      bool diagram_action = false, int conductor = 1);

    const FiniteGroup& group() const { return G_; }
    const LieAlgebra& lie() const { return *L_; }
    const GradedRing& ring() const { return *R_; }
    std::shared_ptr<const LieAlgebra> lie_ptr() const { return L_; }
    std::shared_ptr<const GradedRing> ring_ptr() const { return R_; }
    const LieAutomorphism& lie_action(size_t g) const { return lie_.at(g); }
    const PointMap& point_map(size_t g) const { return point_.at(g); }
    bool diagram_action() const { return diagram_; }
    // lcm of the requested conductor, the group exponent and all entry
    // conductors; every action datum is lifted to it
    int conductor() const { return N_; }

    Point act_on_point(size_t g, const Point& x) const;
    RingElement act_on_ring(size_t g, const RingElement& f) const;
    Degree act_on_degree(size_t g, const Degree& d) const;
    std::vector<size_t> stabilizer(const Point& x) const;
    std::vector<Point> orbit(const Point& x) const;
    bool same_orbit(const Point& x, const Point& y) const;

private:
    FiniteGroup G_;
    std::shared_ptr<const LieAlgebra> L_;
    std::shared_ptr<const GradedRing> R_;
    std::vector<LieAutomorphism> lie_;
    std::vector<PointMap> point_;
    bool diagram_ = false;
    int N_ = 1;
};

std::string point_str(const Point& x);

}  // namespace emalg

#endif
