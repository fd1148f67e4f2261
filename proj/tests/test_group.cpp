#include "doctest.h"

#include "emalg/invariants.hpp"
#include "fixtures.hpp"

#include <algorithm>
#include <set>

using namespace emalg;

namespace {

std::set<std::string> as_set(const std::vector<Point>& pts) {
    std::set<std::string> s;
    for (const auto& p : pts) s.insert(point_str(p));
    return s;
}

std::set<std::string> labels_of(const FiniteGroup& G, const std::vector<size_t>& elems) {
    std::set<std::string> s;
    for (size_t g : elems) s.insert(G.label(g));
    return s;
}

// sampled points of the domain, avoiding removed points and curve conditions
std::vector<Point> sample_points(const GradedRing& R) {
    std::vector<Point> out;
    for (long k = 2; out.size() < 10; ++k) {
        Point x;
        switch (R.family()) {
        case RingFamily::Torus:
        case RingFamily::Affine:
            for (size_t i = 0; i < R.point_dim(); ++i) x.push_back(Scalar(k + static_cast<long>(i), 3));
            break;
        case RingFamily::P1Minus: x = {Scalar(k, 7)}; break;
        case RingFamily::GradedQuotient: x = {Scalar(k * k * k), Scalar(k * k)}; break;
        }
        if (R.in_domain(x)) out.push_back(x);
    }
    return out;
}

}  // namespace

TEST_CASE("finite groups from presentations and permutations") {
    auto C2 = FiniteGroup::from_presentation({"s"}, {"ss"});
    CHECK(C2.order() == 2);
    CHECK(C2.element_order(1) == 2);

    auto C6 = FiniteGroup::from_presentation({"a", "b"}, {"a^2", "b^3", "ab = ba"});
    CHECK(C6.order() == 6);
    CHECK(C6.is_abelian());

    auto S3 = FiniteGroup::from_permutations({"s", "r"}, {{1, 0, 2}, {1, 2, 0}}, {"0", "1", "inf"});
    CHECK(S3.order() == 6);
    CHECK_FALSE(S3.is_abelian());
    CHECK(S3.label(0) == "Id");
    CHECK(S3.find("(0 1)").has_value());
    CHECK(S3.find("(0 1 inf)").has_value());

    auto S3p = FiniteGroup::from_presentation({"s", "r"}, {"ss", "rrr", "srsr"});
    CHECK(S3p.order() == 6);
    CHECK_FALSE(S3p.is_abelian());
    // subgroup orders divide the group order
    for (size_t g = 0; g < S3p.order(); ++g) CHECK(6 % S3p.subgroup_generated({g}).size() == 0);

    CHECK(FiniteGroup::trivial().order() == 1);
    CHECK_THROWS_AS(FiniteGroup::from_presentation({"a"}, {}, 50), GroupError);
    CHECK_THROWS_AS(FiniteGroup::from_presentation({"a", "b"}, {"aa", "bb"}, 100), GroupError);
    CHECK_THROWS_AS(FiniteGroup::from_presentation({"a"}, {"ac"}), GroupError);
    CHECK_THROWS_AS(FiniteGroup::from_permutations({"a"}, {{0, 0, 1}}), GroupError);

    // larger: Z/4 x Z/5 x Z/3
    auto big = FiniteGroup::from_presentation({"a", "b", "c"}, {"a^4", "b^5", "c^3", "ab=ba", "bc=cb", "ac=ca"});
    CHECK(big.order() == 60);
}

TEST_CASE("points: Onsager involution") {
    auto B = fixtures::onsager("A1");
    CHECK(B.act_on_point(1, {Scalar(2)}) == Point{Scalar(1, 2)});
    CHECK(B.act_on_point(0, {Scalar(7)}) == Point{Scalar(7)});
    CHECK(B.stabilizer({Scalar(1)}).size() == 2);
    CHECK(B.stabilizer({Scalar(-1)}).size() == 2);
    CHECK(B.stabilizer({Scalar(2)}).size() == 1);
    CHECK(as_set(B.orbit({Scalar(2)})) == std::set<std::string>{"2", "1/2"});
    CHECK(B.orbit({Scalar(1)}).size() == 1);
    CHECK_THROWS_AS(B.act_on_point(1, {Scalar(0)}), DomainError);
}

TEST_CASE("points: S3 by Moebius maps") {
    auto B = fixtures::s3_points();
    const auto& G = B.group();
    CHECK(B.conductor() == 6);
    CHECK(B.act_on_point(*G.find("(0 1)"), {Scalar(1, 2)}) == Point{Scalar(1, 2)});
    CHECK(labels_of(G, B.stabilizer({Scalar(-1)})) == std::set<std::string>{"Id", "(0 inf)"});
    CHECK(labels_of(G, B.stabilizer({Scalar(2)})) == std::set<std::string>{"Id", "(1 inf)"});
    CHECK(labels_of(G, B.stabilizer({Scalar(1, 2)})) == std::set<std::string>{"Id", "(0 1)"});
    Scalar w = Scalar::zeta(6);  // e^{i pi/3}
    auto st = B.stabilizer({w});
    CHECK(labels_of(G, st) == std::set<std::string>{"Id", "(0 1 inf)", "(0 inf 1)"});
    CHECK(as_set(B.orbit({Scalar(-1)})) == std::set<std::string>{"-1", "2", "1/2"});
    auto o = B.orbit({w});
    CHECK(o.size() == 2);
    CHECK(std::find(o.begin(), o.end(), Point{w.pow(5)}) != o.end());
    CHECK(B.same_orbit({Scalar(-1)}, {Scalar(1, 2)}));
    CHECK_FALSE(B.same_orbit({Scalar(-1)}, {Scalar(3)}));
    CHECK_THROWS_AS(B.stabilizer({Scalar(1)}), DomainError);
}

TEST_CASE("bundle relation checks") {
    auto L = fixtures::cartan("A1");
    auto R = std::make_shared<GradedRing>(GradedRing::torus(1));
    auto G = FiniteGroup::from_presentation({"s"}, {"ss"});
    // t -> 2t has infinite order
    CHECK_THROWS_AS(GroupActionBundle(G, L, R, {chevalley_involution(*L)}, {PointMap::monomial({{1}}, {Scalar(2)})}),
                    GroupError);
    // identity on points but the Lie action has order 2 within a group of order 3
    auto G3 = FiniteGroup::from_presentation({"s"}, {"sss"});
    CHECK_THROWS_AS(GroupActionBundle(G3, L, R, {chevalley_involution(*L)}, {PointMap::identity_monomial(1)}),
                    GroupError);
    // Moebius map on a torus
    CHECK_THROWS_AS(GroupActionBundle(G, L, R, {chevalley_involution(*L)}, {PointMap::moebius(fixtures::mat2(0, 1, 1, 0))}),
                    GroupError);
}

TEST_CASE("orbit-stabilizer, compatibility and conjugated stabilizers") {
    std::vector<GroupActionBundle> bundles{fixtures::onsager("A1"), fixtures::nodal_cubic(), fixtures::plane_involution(),
                                           fixtures::twisted_loop_a2(), fixtures::s3_points()};
    for (const auto& B : bundles) {
        const auto& G = B.group();
        const auto& R = B.ring();
        auto pts = sample_points(R);
        if (R.family() == RingFamily::Torus) pts.push_back({Scalar(1)});
        if (R.family() == RingFamily::P1Minus) {
            pts.push_back({Scalar(-1)});
            pts.push_back({Scalar::zeta(6)});
        }
        for (const auto& x : pts) {
            auto st = B.stabilizer(x);
            auto orb = B.orbit(x);
            CHECK(st.size() * orb.size() == G.order());
            // orbit is stable
            for (const auto& y : orb)
                for (size_t g = 0; g < G.order(); ++g)
                    CHECK(std::find(orb.begin(), orb.end(), B.act_on_point(g, y)) != orb.end());
            // stabilizer is a subgroup
            for (size_t a : st)
                for (size_t b : st) CHECK(std::find(st.begin(), st.end(), G.mul(a, G.inv(b))) != st.end());
            // (g.f)(x) = f(g^-1 x) on ring generators
            for (size_t g = 0; g < G.order(); ++g)
                for (size_t i = 0; i < R.nvars(); ++i) {
                    RingElement f = R.var(i);
                    Point gx = B.act_on_point(G.inv(g), x);
                    CHECK(R.evaluate(B.act_on_ring(g, f), x) == R.evaluate(f, gx));
                }
            // Gamma_{g.x} = g Gamma_x g^-1
            for (size_t g = 0; g < G.order(); ++g) {
                std::vector<size_t> conj;
                for (size_t h : st) conj.push_back(G.conjugate(g, h));
                std::sort(conj.begin(), conj.end());
                CHECK(conj == B.stabilizer(B.act_on_point(g, x)));
            }
            // multiplicativity (gh).x = g.(h.x)
            for (size_t g = 0; g < G.order(); ++g)
                for (size_t h = 0; h < G.order(); ++h)
                    CHECK(B.act_on_point(G.mul(g, h), x) == B.act_on_point(g, B.act_on_point(h, x)));
        }
    }
}

TEST_CASE("S3 diagram action on so8 is a homomorphism") {
    auto B = fixtures::s3_so8();
    const auto& G = B.group();
    for (size_t g = 0; g < G.order(); ++g)
        for (size_t h = 0; h < G.order(); ++h)
            CHECK(B.lie_action(G.mul(g, h)).matrix() == B.lie_action(g).matrix() * B.lie_action(h).matrix());
    std::vector<LieAutomorphism> all;
    for (size_t g = 0; g < G.order(); ++g) all.push_back(B.lie_action(g));
    CHECK(fixed_subalgebra(B.lie(), all).dim() == 14);
}
