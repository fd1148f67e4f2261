#ifndef EMALG_INVARIANTS_HPP
#define EMALG_INVARIANTS_HPP

#include "emalg/group.hpp"

#include <string>
#include <vector>

namespace emalg {

// The induced action on the coordinate ring, g.f = f o phi_{g^-1}.
struct RingActionReport {
    std::vector<std::string> images;  // per generator, images of the ring variables
    bool grading_preserved = false;   // generators permute the graded pieces
    std::vector<std::vector<std::pair<Degree, Degree>>> degree_moves;  // per generator, sample d -> g.d
    std::string note;
};

RingActionReport ring_action(const GroupActionBundle& B);

// (1/|G|) sum_g g.f
RingElement reynolds(const GroupActionBundle& B, const RingElement& f);
// (1/|G|) sum_g chi(g)^-1 g.f for a character given by its values on the elements
RingElement character_projector(const GroupActionBundle& B, const std::vector<Scalar>& chi, const RingElement& f);

// smallest Gamma-stable degree set containing ds, sorted
std::vector<Degree> saturate(const GroupActionBundle& B, const std::vector<Degree>& ds);

// basis of A^Gamma inside the span of the pieces of the saturated degree set;
// each element is the normalized image of one monomial
std::vector<RingElement> invariant_piece(const GroupActionBundle& B, const std::vector<Degree>& ds);
// same for an arbitrary list of monomials (used for p1_minus spanning sets,
// saturated under the action first)
std::vector<RingElement> invariant_span(const GroupActionBundle& B, const std::vector<Monomial>& monos);

// Characters of an abelian group. The label a_j says generator j acts by
// zeta_{m_j}^{a_j}, m_j its order, matching xi_grading.
struct Character {
    std::vector<int> label;
    std::vector<Scalar> values;  // per group element
};
std::vector<Character> abelian_characters(const FiniteGroup& G, int conductor);
// label of the inverse character
std::vector<int> dual_label(const FiniteGroup& G, const std::vector<int>& label);

struct IsotypicPiece {
    std::vector<int> label;
    std::vector<RingElement> basis;  // A_xi = {f : g.f = xi(g) f}
};
std::vector<IsotypicPiece> isotypic_pieces(const GroupActionBundle& B, const std::vector<Degree>& ds);

}  // namespace emalg

#endif
