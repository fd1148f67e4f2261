#ifndef EMALG_TEST_FIXTURES_HPP
#define EMALG_TEST_FIXTURES_HPP

#include "emalg/group.hpp"

#include <memory>

namespace fixtures {

using namespace emalg;

inline std::shared_ptr<LieAlgebra> cartan(const std::string& type) {
    return std::make_shared<LieAlgebra>(LieAlgebra::from_cartan_type(type));
}

inline Matrix mat2(long a, long b, long c, long d) {
    Matrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

// sigma: t -> t^-1 together with the Chevalley involution
inline GroupActionBundle onsager(const std::string& type) {
    auto L = cartan(type);
    auto R = std::make_shared<GradedRing>(GradedRing::torus(1));
    auto G = FiniteGroup::from_presentation({"s"}, {"ss"});
    return GroupActionBundle(G, L, R, {chevalley_involution(*L)}, {PointMap::monomial({{-1}}, {Scalar(1)})});
}

// trivial group on the loop algebra g (x) k[t, t^-1]
inline GroupActionBundle loop(const std::string& type) {
    auto L = cartan(type);
    auto R = std::make_shared<GradedRing>(GradedRing::torus(1));
    return GroupActionBundle(FiniteGroup::trivial(), L, R, {}, {});
}

// order-two diagram automorphism with t -> -t
inline GroupActionBundle twisted_loop_a2() {
    auto L = cartan("A2");
    auto R = std::make_shared<GradedRing>(GradedRing::torus(1));
    auto G = FiniteGroup::from_presentation({"s"}, {"ss"});
    return GroupActionBundle(G, L, R, {diagram_automorphism(*L, {1, 0})}, {PointMap::monomial({{1}}, {Scalar(-1)})},
                             true);
}

// y^2 = x^3 with y -> -y and the Chevalley involution of sl2
inline GroupActionBundle nodal_cubic() {
    auto L = cartan("A1");
    auto R = std::make_shared<GradedRing>(GradedRing::graded_quotient("y^2 - x^3", {{"x", 2}, {"y", 3}}));
    auto G = FiniteGroup::from_presentation({"s"}, {"ss"});
    return GroupActionBundle(G, L, R, {chevalley_involution(*L)},
                             {PointMap::monomial({{1, 0}, {0, 1}}, {Scalar(-1), Scalar(1)})});
}

// (x1, x2) -> (x1, -x2) on the affine plane with the Chevalley involution of sl2
inline GroupActionBundle plane_involution() {
    auto L = cartan("A1");
    auto R = std::make_shared<GradedRing>(GradedRing::affine(2));
    auto G = FiniteGroup::from_presentation({"s"}, {"ss"});
    return GroupActionBundle(G, L, R, {chevalley_involution(*L)},
                             {PointMap::monomial({{1, 0}, {0, 1}}, {Scalar(1), Scalar(-1)})});
}

// S3 on P^1 minus {0, 1, inf}: s = (0 1) is t -> 1 - t, r = (0 1 inf) is t -> 1/(1 - t).
// Lie side: diagram automorphisms of D4 permuting the outer nodes 0, 2, 3.
inline GroupActionBundle s3_so8() {
    auto L = cartan("D4");
    auto R = std::make_shared<GradedRing>(GradedRing::p1_minus({Scalar(0), Scalar(1), std::nullopt}));
    auto G = FiniteGroup::from_permutations({"s", "r"}, {{1, 0, 2}, {1, 2, 0}}, {"0", "1", "inf"});
    return GroupActionBundle(G, L, R, {diagram_automorphism(*L, {2, 1, 0, 3}), diagram_automorphism(*L, {2, 1, 3, 0})},
                             {PointMap::moebius(mat2(-1, 1, 0, 1)), PointMap::moebius(mat2(0, 1, -1, 1))}, true, 6);
}

// S3 point action only, with identity Lie action on sl2
inline GroupActionBundle s3_points() {
    auto L = cartan("A1");
    auto R = std::make_shared<GradedRing>(GradedRing::p1_minus({Scalar(0), Scalar(1), std::nullopt}));
    auto G = FiniteGroup::from_permutations({"s", "r"}, {{1, 0, 2}, {1, 2, 0}}, {"0", "1", "inf"});
    auto id = LieAutomorphism::identity(*L);
    return GroupActionBundle(G, L, R, {id, id},
                             {PointMap::moebius(mat2(-1, 1, 0, 1)), PointMap::moebius(mat2(0, 1, -1, 1))}, false, 6);
}

}  // namespace fixtures

#endif
