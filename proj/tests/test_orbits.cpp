#include "doctest.h"

#include "emalg/orbits.hpp"
#include "fixtures.hpp"

using namespace emalg;

TEST_CASE("isotropy subalgebras") {
    auto B = fixtures::onsager("A1");
    auto r1 = isotropy(B, {Scalar(1)});
    CHECK(r1.stabilizer.size() == 2);
    CHECK(r1.gx.dim() == 1);
    CHECK(r1.z_dim == 1);
    auto r2 = isotropy(B, {Scalar(2)});
    CHECK(r2.stabilizer.size() == 1);
    CHECK(r2.gx.dim() == 3);
    CHECK(r2.report.label == "A1");
    CHECK(r2.z_dim == 0);

    auto S = fixtures::s3_so8();
    auto r = isotropy(S, {Scalar(2)});
    CHECK(r.stabilizer.size() == 2);
    CHECK(r.gx.dim() == 21);
    CHECK(r.report.label == "B3");
    auto half = isotropy(S, {Scalar(1, 2)});
    CHECK(half.gx.dim() == 21);
    for (const Point& x : {Point{Scalar(2)}, Point{Scalar(1, 2)}, Point{Scalar(5)}})
        CHECK(isotropy_transport_holds(S, x));
    CHECK(isotropy_transport_holds(B, {Scalar(-1)}));
}

TEST_CASE("subgroup enumeration") {
    auto S = fixtures::s3_so8();
    CHECK(all_subgroups(S.group()).size() == 6);
    auto cls = subgroup_classes(S.group());
    REQUIRE(cls.size() == 4);
    CHECK(cls[0].size() == 1);
    CHECK(cls[1].size() == 2);
    CHECK(cls[2].size() == 3);
    CHECK(cls[3].size() == 6);
}

TEST_CASE("fixed loci") {
    auto B = fixtures::onsager("A1");
    auto loc = fixed_locus(B, {0, 1});
    CHECK(loc.kind == LocusKind::Finite);
    CHECK(loc.points.size() == 2);
    CHECK(fixed_locus(B, {0}).kind == LocusKind::Infinite);

    auto S = fixtures::s3_so8();
    auto cls = subgroup_classes(S.group());
    auto l3 = fixed_locus(S, cls[2]);
    CHECK(l3.kind == LocusKind::Finite);
    CHECK(l3.points.size() == 2);  // (1 +- sqrt(-3))/2
    for (const auto& x : l3.points) CHECK(S.stabilizer(x).size() == 3);
    CHECK(fixed_locus(S, cls[3]).kind == LocusKind::Empty);

    auto P = fixtures::plane_involution();
    auto lp = fixed_locus(P, {0, 1});
    CHECK(lp.kind == LocusKind::Infinite);
    CHECK(lp.dimension == 1);

    auto N = fixtures::nodal_cubic();
    auto ln = fixed_locus(N, {0, 1});
    CHECK(ln.kind == LocusKind::Finite);
    CHECK(ln.points == std::vector<Point>{{Scalar(0), Scalar(0)}});
}

TEST_CASE("tilde analysis") {
    auto B = fixtures::onsager("A1");
    auto t = tilde_analysis(B);
    CHECK(t.verdict == TildeVerdict::Finite);
    REQUIRE(t.representatives.size() == 2);
    CHECK(std::find(t.representatives.begin(), t.representatives.end(), Point{Scalar(1)}) != t.representatives.end());
    CHECK(std::find(t.representatives.begin(), t.representatives.end(), Point{Scalar(-1)}) != t.representatives.end());

    CHECK(tilde_analysis(fixtures::plane_involution()).verdict == TildeVerdict::Infinite);
    CHECK(tilde_analysis(fixtures::s3_so8()).verdict == TildeVerdict::Empty);
    CHECK(tilde_analysis(fixtures::loop("A1")).verdict == TildeVerdict::Empty);
    CHECK(tilde_analysis(fixtures::twisted_loop_a2()).verdict == TildeVerdict::Empty);
    auto n = tilde_analysis(fixtures::nodal_cubic());
    CHECK(n.verdict == TildeVerdict::Finite);
    CHECK(n.representatives == std::vector<Point>{{Scalar(0), Scalar(0)}});
    CHECK(tilde_analysis(B, 1).verdict == TildeVerdict::Undetermined);
}

TEST_CASE("canonical representatives") {
    auto S = fixtures::s3_so8();
    Point a = canonical_representative(S, {Scalar(2)});
    for (const auto& y : S.orbit({Scalar(2)})) CHECK(canonical_representative(S, y) == a);
    CHECK(S.same_orbit(a, {Scalar(2)}));
}
