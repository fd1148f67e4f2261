#include "doctest.h"

#include "emalg/classify.hpp"
#include "fixtures.hpp"

#include <random>

using namespace emalg;

namespace {

std::shared_ptr<const GroupActionBundle> share(GroupActionBundle b) {
    return std::make_shared<const GroupActionBundle>(std::move(b));
}

using Raw = std::vector<std::pair<Point, RepLabel>>;

}  // namespace

TEST_CASE("canonical equivariant functions") {
    auto B = fixtures::onsager("A1");
    auto f = canonicalize_psi(B, {{{Scalar(2)}, RepLabel::sl2(1)}});
    REQUIRE(f.entries.size() == 1);
    CHECK(f.entries[0].first == Point{Scalar(1, 2)});
    CHECK(f.entries[0].second == RepLabel::sl2(1));
    CHECK(f == canonicalize_psi(B, {{{Scalar(1, 2)}, RepLabel::sl2(1)}}));
    CHECK(f == canonicalize_psi(B, {{{Scalar(2)}, RepLabel::sl2(1)}, {{Scalar(1, 2)}, RepLabel::sl2(1)}}));
    CHECK_THROWS_AS(canonicalize_psi(B, {{{Scalar(2)}, RepLabel::sl2(1)}, {{Scalar(1, 2)}, RepLabel::sl2(2)}}),
                    EquivarianceError);
    CHECK_THROWS_AS(canonicalize_psi(B, {{{Scalar(2)}, RepLabel::one_dim({Scalar(1)})}}), RepError);
    CHECK_THROWS_AS(canonicalize_psi(B, {{{Scalar(1)}, RepLabel::sl2(1)}}), RepError);
    CHECK_THROWS_AS(canonicalize_psi(B, {{{Scalar(0)}, RepLabel::sl2(1)}}), DomainError);
    CHECK(canonicalize_psi(B, {{{Scalar(3)}, RepLabel::sl2(0)}}).is_zero());
    // one-dimensional labels at the fixed points 1 and -1
    auto g = canonicalize_psi(B, {{{Scalar(-1)}, RepLabel::one_dim({Scalar(2)})}, {{Scalar(1)}, RepLabel::one_dim({Scalar(1)})}});
    CHECK(g.entries.size() == 2);

    auto S = fixtures::s3_so8();
    auto b3 = RepLabel::dominant("B3", {1, 0, 0});
    auto p = canonicalize_psi(S, {{{Scalar(-1)}, b3}});
    REQUIRE(p.entries.size() == 1);
    CHECK(p.entries[0].first == Point{Scalar(-1)});
    CHECK(p == canonicalize_psi(S, {{{Scalar(2)}, b3}}));
    CHECK(p == canonicalize_psi(S, {{{Scalar(1, 2)}, b3}, {{Scalar(2)}, b3}}));
    CHECK(S.orbit({Scalar(-1)}).size() == 3);
    CHECK_THROWS_AS(canonicalize_psi(S, {{{Scalar(-1)}, RepLabel::dominant("C3", {1, 0, 0})}}), RepError);
    CHECK_THROWS_AS(canonicalize_psi(S, {{{Scalar(-1)}, RepLabel::dominant("B3", {1, 0})}}), RepError);
    CHECK_THROWS_AS(canonicalize_psi(S, {{{Scalar(-1)}, RepLabel::dominant("B3", {-1, 0, 0})}}), RepError);
    auto d4 = canonicalize_psi(S, {{{Scalar(5)}, RepLabel::dominant("D4", {1, 0, 0, 0})}});
    CHECK(d4.entries.size() == 1);
}

TEST_CASE("diagram transport of dominant weights") {
    auto T = fixtures::twisted_loop_a2();
    auto f = canonicalize_psi(T, {{{Scalar(2)}, RepLabel::dominant("A2", {1, 0})}});
    auto g = canonicalize_psi(T, {{{Scalar(-2)}, RepLabel::dominant("A2", {0, 1})}});
    CHECK(f == g);
    CHECK_THROWS_AS(canonicalize_psi(T, {{{Scalar(2)}, RepLabel::dominant("A2", {1, 0})},
                                         {{Scalar(-2)}, RepLabel::dominant("A2", {1, 0})}}),
                    EquivarianceError);
}

TEST_CASE("tensor products of equivariant functions") {
    auto B = share(fixtures::onsager("A1"));
    MapAlgebraWindow w(B, 3);
    auto psi = canonicalize_psi(*B, {{{Scalar(2)}, RepLabel::sl2(1)}});
    CHECK(psi_tensor(*B, psi, EquivariantFunction{}) == psi);
    auto a = canonicalize_psi(*B, {{{Scalar(1)}, RepLabel::one_dim({Scalar(2)})}});
    auto b = canonicalize_psi(*B, {{{Scalar(1)}, RepLabel::one_dim({Scalar(3)})}});
    auto ab = psi_tensor(*B, a, b);
    REQUIRE(ab.entries.size() == 1);
    CHECK(ab.entries[0].second == RepLabel::one_dim({Scalar(5)}));
    auto c = canonicalize_psi(*B, {{{Scalar(1)}, RepLabel::one_dim({Scalar(-2)})}});
    CHECK(psi_tensor(*B, a, c).is_zero());

    auto pp = psi_tensor(*B, psi, psi);
    CHECK(ev_psi(w, pp).mats == tensor_rep(ev_psi(w, psi), ev_psi(w, psi)).mats);
    auto phi = canonicalize_psi(*B, {{{Scalar(3)}, RepLabel::sl2(2)}});
    auto pf = psi_tensor(*B, psi, phi);
    CHECK(intertwiner_dimension(ev_psi(w, pf), tensor_rep(ev_psi(w, psi), ev_psi(w, phi))) == 1);

    auto S = fixtures::s3_so8();
    auto d = canonicalize_psi(S, {{{Scalar(-1)}, RepLabel::dominant("B3", {1, 0, 0})}});
    CHECK_THROWS_AS(psi_tensor(S, d, d), UnsupportedLabel);
}

TEST_CASE("evaluation of equivariant functions") {
    auto B = share(fixtures::onsager("A1"));
    MapAlgebraWindow w(B, 3);
    auto zero = ev_psi(w, EquivariantFunction{});
    CHECK(zero.dim == 1);
    auto psi = canonicalize_psi(*B, {{{Scalar(2)}, RepLabel::sl2(1)}});
    auto e = ev_psi(w, psi);
    CHECK(e.dim == 2);
    CHECK(burnside_irreducible(e));
    // representative independence
    auto other = evaluation_rep(w, {transport(*B, 1, local_sl2(*B, {Scalar(1, 2)}, 1))});
    CHECK(intertwiner_dimension(e, other) == 1);

    auto mixed = canonicalize_psi(*B, {{{Scalar(1)}, RepLabel::one_dim({Scalar(1)})}, {{Scalar(2)}, RepLabel::sl2(1)}});
    auto m = ev_psi(w, mixed);
    CHECK(m.dim == 2);
    CHECK(burnside_irreducible(m));
    auto split = decompose_one_dim_factor(m);
    auto lam = ev_psi(w, canonicalize_psi(*B, {{{Scalar(1)}, RepLabel::one_dim({Scalar(1)})}}));
    for (size_t a = 0; a < w.dim(); ++a) CHECK(split.lambda[a] == lam.mats[a](0, 0));
    CHECK(split.rho2.mats == e.mats);

    auto S = share(fixtures::s3_so8());
    CHECK_THROWS_AS(local_rep(*S, {Scalar(-1)}, RepLabel::dominant("B3", {1, 0, 0})), UnsupportedLabel);
}

TEST_CASE("lifting from the untwisted algebra") {
    // for points with g^x = g the equivariant evaluation is the restriction of the loop evaluation
    auto B = share(fixtures::onsager("A1"));
    auto U = share(fixtures::loop("A1"));
    MapAlgebraWindow w(B, 3);
    auto twisted = evaluation_rep(w, {local_sl2(*B, {Scalar(3)}, 2)});
    auto ul = local_sl2(*U, {Scalar(3)}, 2);
    for (size_t a = 0; a < w.dim(); ++a)
        CHECK(twisted.mats[a] == ul.act(map_evaluate(U->ring(), w.element(a), {Scalar(3)})));
}

TEST_CASE("injectivity harness") {
    auto B = share(fixtures::onsager("A1"));
    MapAlgebraWindow w(B, 3);
    auto r = injectivity_harness(w, {{Scalar(2)}, {Scalar(3)}}, {RepLabel::sl2(0), RepLabel::sl2(1)});
    CHECK(r.functions == 4);
    CHECK(r.classes.size() == 4);
    CHECK(r.injective);
    CHECK(r.diagonal_ok);

    auto one = injectivity_harness(w, {{Scalar(2)}}, {RepLabel::sl2(1), RepLabel::sl2(2)});
    CHECK(one.classes.size() == 2);
    CHECK(one.dims == std::vector<size_t>{2, 3});
    CHECK(one.injective);

    auto same = injectivity_harness(w, {{Scalar(2)}, {Scalar(1, 2)}}, {RepLabel::sl2(0), RepLabel::sl2(1)});
    CHECK(same.classes.size() == 2);
    CHECK(same.injective);
}

TEST_CASE("classification regimes") {
    auto loop = classification_regime(share(fixtures::loop("A1")));
    CHECK(loop.regime == Regime::Perfect);
    auto tw = classification_regime(share(fixtures::twisted_loop_a2()));
    CHECK(tw.regime == Regime::Perfect);
    auto so8 = classification_regime(share(fixtures::s3_so8()));
    CHECK(so8.regime == Regime::Perfect);
    auto ons = classification_regime(share(fixtures::onsager("A1")));
    CHECK(ons.regime == Regime::FiniteTilde);
    CHECK(ons.kernel_dim == 0);
    CHECK(ons.all_evaluation);
    CHECK(ons.tilde_points.size() == 2);
    auto plane = classification_regime(share(fixtures::plane_involution()));
    CHECK(plane.regime == Regime::InfiniteTilde);
    auto nodal = classification_regime(share(fixtures::nodal_cubic()), 8);
    CHECK(nodal.regime == Regime::FiniteTilde);
    CHECK(nodal.kernel_dim == 2);
    CHECK_FALSE(nodal.all_evaluation);
    CHECK(regime_name(Regime::FiniteTilde) == "FINITE-X~");
}

TEST_CASE("decomposition round trip") {
    auto B = share(fixtures::onsager("A1"));
    MapAlgebraWindow w(B, 3);
    std::vector<Point> tilde{{Scalar(-1)}, {Scalar(1)}};
    std::vector<Point> pool{{Scalar(2)}, {Scalar(3)}};
    std::vector<RepLabel> labels{RepLabel::sl2(0), RepLabel::sl2(1), RepLabel::sl2(2)};
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> val(-3, 3), lab(0, 2);
    for (int trial = 0; trial < 4; ++trial) {
        Raw lam_raw{{{Scalar(1)}, RepLabel::one_dim({Scalar(val(rng), 2)})},
                    {{Scalar(-1)}, RepLabel::one_dim({Scalar(val(rng))})}};
        Raw psi_raw{{{Scalar(2)}, labels[lab(rng)]}, {{Scalar(3)}, labels[lab(rng)]}};
        auto lam = canonicalize_psi(*B, lam_raw);
        auto psi = canonicalize_psi(*B, psi_raw);
        auto rho = ev_psi(w, psi_tensor(*B, lam, psi));
        auto rec = recover_decomposition(w, rho, tilde, pool, labels);
        CHECK(rec.lambda == lam);
        CHECK(rec.psi == psi);
        CHECK(rec.matches == 1);
    }
}

TEST_CASE("drinfeld correspondence") {
    auto L3 = fixtures::loop("A2");
    DrinfeldTuple pi{{{{Scalar(2), 2}}, {{Scalar(2), 1}}}};
    auto psi = drinfeld_to_psi(L3, pi);
    REQUIRE(psi.entries.size() == 1);
    CHECK(psi.entries[0].first == Point{Scalar(2)});
    CHECK(psi.entries[0].second == RepLabel::dominant("A2", {2, 1}));
    CHECK(pi.str() == "((1 - 2u)^2, (1 - 2u))");
    CHECK(drinfeld_to_psi(L3, DrinfeldTuple{{{}, {}}}).is_zero());
    DrinfeldTuple rt{{{{Scalar(2), 1}, {Scalar(3), 1}}, {{Scalar(3), 1}}}};
    CHECK(psi_to_drinfeld(L3, drinfeld_to_psi(L3, rt)).str() == rt.normalized().str());
    CHECK(psi_to_drinfeld(L3, drinfeld_to_psi(L3, rt)).polys == rt.normalized().polys);
    // repeated points merge by exponent addition
    DrinfeldTuple rep{{{{Scalar(2), 1}, {Scalar(2), 1}}, {}}};
    CHECK(drinfeld_to_psi(L3, rep).entries[0].second == RepLabel::dominant("A2", {2, 0}));
    CHECK_THROWS_AS(drinfeld_to_psi(L3, DrinfeldTuple{{{{Scalar(0), 1}}, {}}}), DomainError);
    CHECK_THROWS_AS(drinfeld_to_psi(L3, DrinfeldTuple{{{{Scalar(2), 1}}}}), DomainError);
    CHECK_THROWS_AS(drinfeld_to_psi(fixtures::onsager("A1"), DrinfeldTuple{{{}}}), NotApplicable);
    DrinfeldTuple neg{{{{Scalar(-1, 2), 3}}}};
    CHECK(neg.str() == "((1 + 1/2u)^3)");
}
