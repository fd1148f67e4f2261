#ifndef EMALG_RING_HPP
#define EMALG_RING_HPP

#include "emalg/matrix.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace emalg {

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class WindowUnsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Monomial = std::vector<int>;  // exponent per ring variable
using Degree = std::vector<int>;
using Point = std::vector<Scalar>;

struct RingElement {
    std::map<Monomial, Scalar> terms;  // no zero coefficients
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const RingElement& a, const RingElement& b) { return a.terms == b.terms; }
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }
};

enum class RingFamily { Affine, Torus, P1Minus, GradedQuotient };

// Coordinate rings of the built-in scheme families.
//   affine(n):   k[t_1..t_n], degree = exponent vector
//   torus(n):    k[t_1^{+-1}..t_n^{+-1}], degree = exponent vector
//   p1_minus:    functions on P^1 minus points (inf must be removed); the
//                variables are (t - c) for the finite removed c, allowed any
//                integer power. These products span but are not a basis, and
//                the family has no window grading.
//   graded_quotient: k[vars]/(relation), homogeneous for positive weights,
//                degree = weighted degree; normal form keeps the exponent of the
//                lead variable below its power in the relation.
class GradedRing {
public:
    static GradedRing affine(int n);
    static GradedRing torus(int n);
    // nullopt stands for the point at infinity
    static GradedRing p1_minus(const std::vector<std::optional<Scalar>>& removed);
    static GradedRing graded_quotient(const std::string& relation, const std::map<std::string, int>& weights);

    RingFamily family() const { return fam_; }
    std::string family_name() const;
    size_t nvars() const { return names_.size(); }
    const std::vector<std::string>& var_names() const { return names_; }
    size_t point_dim() const;  // coordinates of a point
    bool windowable() const { return fam_ != RingFamily::P1Minus; }
    size_t degree_rank() const;  // length of a Degree
    const std::vector<Scalar>& removed_finite() const { return removed_; }
    const std::vector<int>& weights() const { return weights_; }
    const RingElement& relation() const { return relation_; }

    RingElement one() const;
    RingElement var(size_t i) const;
    RingElement monomial(const Monomial& m, const Scalar& c = Scalar(1)) const;
    RingElement add(const RingElement& a, const RingElement& b) const;
    RingElement sub(const RingElement& a, const RingElement& b) const;
    RingElement mul(const RingElement& a, const RingElement& b) const;
    RingElement scale(const RingElement& a, const Scalar& c) const;
    RingElement pow(const RingElement& a, int e) const;
    RingElement normalize(const RingElement& a) const;  // reduction modulo the relation

    Degree degree(const Monomial& m) const;  // throws WindowUnsupported for p1_minus
    // normal-form monomials spanning A_d (a basis for the windowable families)
    std::vector<Monomial> piece(const Degree& d) const;
    // all degrees with every coordinate in [lo, hi] and a nonzero piece
    std::vector<Degree> window(int lo, int hi) const;
    // p1_minus: the spanning products with every exponent in [-b, b]
    std::vector<Monomial> spanning_monomials(int bound) const;

    bool in_domain(const Point& x) const;
    void check_point(const Point& x) const;  // throws DomainError
    Scalar evaluate(const RingElement& f, const Point& x) const;

    std::string str(const RingElement& f) const;
    std::string str_monomial(const Monomial& m) const;

private:
    RingFamily fam_ = RingFamily::Affine;
    std::vector<std::string> names_;
    std::vector<Scalar> removed_;  // p1_minus finite removed points
    std::vector<int> weights_;     // graded_quotient
    RingElement relation_;
    size_t lead_ = 0;    // lead variable of the relation
    int lead_pow_ = 0;   // its power
    RingElement tail_;   // lead^k = tail in the quotient
    std::string relation_text_;
};

// Maps X -> X between points of one family.
//   monomial: z_i -> s_i * prod_j z_j^{E_ij}
//   moebius:  t -> (a t + b) / (c t + d), stored as a 2x2 matrix up to scale
struct PointMap {
    enum class Kind { Monomial, Moebius };
    Kind kind = Kind::Monomial;
    std::vector<std::vector<int>> E;
    Vec s;
    Matrix m;

    static PointMap identity_monomial(size_t n);
    static PointMap monomial(std::vector<std::vector<int>> E, Vec s);
    static PointMap moebius(const Matrix& m);

    Point apply(const Point& x) const;  // DomainError on poles / zero to negative power
    std::string str() const;
};

// phi o psi
PointMap compose(const PointMap& phi, const PointMap& psi);
bool same_map(const PointMap& a, const PointMap& b);  // moebius compared up to scale
// f o phi as a ring element; throws DomainError if phi does not preserve the
// ring (relation or removed set)
RingElement pull_back(const GradedRing& R, const PointMap& phi, const RingElement& f);
// throws DomainError when phi does not induce an automorphism of R: negative
// exponents on affine space, relation not preserved up to a scalar, removed
// points not permuted
void check_ring_map(const GradedRing& R, const PointMap& phi);
// degree of the pull back of a monomial of degree d (monomial maps only)
Degree pull_back_degree(const GradedRing& R, const PointMap& phi, const Degree& d);

// parses "p/q" or cyclotomic text, plus "inf" as nullopt
std::optional<Scalar> parse_extended(const std::string& s);

}  // namespace emalg

#endif
