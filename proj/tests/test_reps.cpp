#include "doctest.h"

#include "emalg/reps.hpp"
#include "fixtures.hpp"

using namespace emalg;

namespace {

std::shared_ptr<const GroupActionBundle> share(GroupActionBundle b) {
    return std::make_shared<const GroupActionBundle>(std::move(b));
}

}  // namespace

TEST_CASE("sl2 modules and constructors") {
    auto L = fixtures::cartan("A1");
    auto v0 = sl2_irrep(*L, 0);
    CHECK(v0.dim == 1);
    for (const auto& m : v0.mats) CHECK(m.is_zero());
    auto v1 = sl2_irrep(*L, 1);
    CHECK(v1.dim == 2);
    const auto& c = *L->cartan();
    Matrix e(2, 2), f(2, 2), h(2, 2);
    e(0, 1) = Scalar(1);
    f(1, 0) = Scalar(1);
    h(0, 0) = Scalar(1);
    h(1, 1) = Scalar(-1);
    CHECK(v1.mats[c.e_index[0]] == e);
    CHECK(v1.mats[c.f_index[0]] == f);
    CHECK(v1.mats[c.h_index[0]] == h);
    auto v4 = sl2_irrep(*L, 4);
    for (int k = 0; k <= 4; ++k) CHECK(v4.mats[c.h_index[0]](k, k) == Scalar(4 - 2 * k));

    auto D4 = fixtures::cartan("D4");
    auto def = defining_rep(*D4);
    CHECK(def.dim == 8);
    for (const auto& m : def.mats) CHECK(trace(m).is_zero());

    // user matrices failing the bracket relation
    std::vector<Matrix> bad = v1.mats;
    bad[c.h_index[0]] = Matrix::identity(2);
    CHECK_THROWS_AS(user_rep(*L, bad), RepError);
    CHECK_THROWS_AS(one_dim_rep(*L, {Scalar(1), Scalar(0), Scalar(0)}), RepError);
    CHECK(one_dim_rep(*L, {Scalar(0), Scalar(0), Scalar(0)}).dim == 1);
}

TEST_CASE("tensor products and intertwiners") {
    auto L = fixtures::cartan("A1");
    auto v0 = sl2_irrep(*L, 0), v1 = sl2_irrep(*L, 1), v2 = sl2_irrep(*L, 2);
    CHECK(intertwiner_dimension(tensor_rep(v1, v0), v1) == 1);
    auto v11 = tensor_rep(v1, v1);
    check_rep(*L, v11);
    CHECK(intertwiner_dimension(v11, direct_sum(v2, v0)) == 2);
    CHECK(intertwiner_dimension(v2, v11) == 1);
    CHECK(intertwiner_dimension(v0, v11) == 1);
    CHECK_FALSE(burnside_irreducible(v11));
    CHECK(intertwiner_dimension(v2, v2) == 1);
    CHECK(intertwiner_dimension(v1, v2) == 0);
    CHECK(completely_reducible(v11));
    auto theta = chevalley_involution(*L);
    CHECK(intertwiner_dimension(compose_automorphism(v2, theta), v2) == 1);
}

TEST_CASE("evaluation representations") {
    auto B = share(fixtures::onsager("A1"));
    MapAlgebraWindow w(B, 3);
    auto r2 = evaluation_rep(w, {local_sl2(*B, {Scalar(2)}, 1)});
    CHECK(r2.dim == 2);
    check_window_rep(w, r2);
    CHECK(burnside_irreducible(r2));
    auto r1 = evaluation_rep(w, {local_one_dim(*B, {Scalar(1)}, {Scalar(3, 2)})});
    CHECK(r1.dim == 1);
    check_window_rep(w, r1);
    // value c times the z-coordinate of alpha(1)
    auto iso = point_isotropy(*B, {Scalar(1)});
    for (size_t a = 0; a < w.dim(); ++a) {
        Vec z = iso.z_coords(map_evaluate(B->ring(), w.element(a), {Scalar(1)}));
        CHECK(r1.mats[a](0, 0) == Scalar(3, 2) * z[0]);
    }
    auto triv = evaluation_rep(w, {});
    CHECK(triv.dim == 1);
    for (const auto& m : triv.mats) CHECK(m.is_zero());
    CHECK_THROWS_AS(evaluation_rep(w, {local_sl2(*B, {Scalar(2)}, 1), local_sl2(*B, {Scalar(1, 2)}, 1)}), DomainError);
    CHECK_THROWS_AS(local_sl2(*B, {Scalar(1)}, 1), RepError);
    CHECK_THROWS_AS(local_one_dim(*B, {Scalar(2)}, {Scalar(1)}), RepError);
    CHECK_THROWS_AS(local_matrices(*B, {Scalar(1)}, {Matrix::identity(2), Matrix::identity(2)}), RepError);
}

TEST_CASE("burnside irreducibility") {
    auto U = share(fixtures::loop("A1"));
    MapAlgebraWindow uw(U, 2);
    auto a = evaluation_rep(uw, {local_sl2(*U, {Scalar(2)}, 1), local_sl2(*U, {Scalar(3)}, 1)});
    CHECK(a.dim == 4);
    CHECK(closure_basis(a).size() == 16);
    CHECK(burnside_irreducible(a));
    CHECK(evaluation_map(uw, {{Scalar(2)}, {Scalar(3)}}).surjective);

    auto B = share(fixtures::onsager("A1"));
    MapAlgebraWindow w(B, 3);
    auto e2 = evaluation_rep(w, {local_sl2(*B, {Scalar(2)}, 1)});
    auto eh = evaluation_rep(w, {local_sl2(*B, {Scalar(1, 2)}, 1)});
    auto e3 = evaluation_rep(w, {local_sl2(*B, {Scalar(3)}, 1)});
    CHECK_FALSE(burnside_irreducible(tensor_rep(e2, eh)));
    CHECK(burnside_irreducible(tensor_rep(e2, e3)));
    auto one = evaluation_rep(w, {local_one_dim(*B, {Scalar(-1)}, {Scalar(5)})});
    CHECK(burnside_irreducible(one));
}

TEST_CASE("intertwiners of evaluation representations") {
    auto U = share(fixtures::loop("A1"));
    MapAlgebraWindow uw(U, 2);
    auto u2 = evaluation_rep(uw, {local_sl2(*U, {Scalar(2)}, 1)});
    auto u3 = evaluation_rep(uw, {local_sl2(*U, {Scalar(3)}, 1)});
    CHECK(intertwiner_dimension(u2, u3) == 0);
    CHECK(intertwiner_dimension(u2, u2) == 1);

    auto B = share(fixtures::onsager("A1"));
    MapAlgebraWindow w(B, 3);
    auto loc = local_sl2(*B, {Scalar(2)}, 1);
    auto moved = transport(*B, 1, loc);
    CHECK(moved.iso.x == Point{Scalar(1, 2)});
    CHECK(intertwiner_dimension(evaluation_rep(w, {loc}), evaluation_rep(w, {moved})) == 1);
    // V(1) o theta is isomorphic to V(1), so the untransported label gives the same class
    CHECK(intertwiner_dimension(evaluation_rep(w, {loc}), evaluation_rep(w, {local_sl2(*B, {Scalar(1, 2)}, 1)})) == 1);
}

TEST_CASE("one-dimensional factor decomposition") {
    auto B = share(fixtures::onsager("A1"));
    MapAlgebraWindow w(B, 3);
    auto rho2 = evaluation_rep(w, {local_sl2(*B, {Scalar(2)}, 1)});
    auto lam = evaluation_rep(w, {local_one_dim(*B, {Scalar(1)}, {Scalar(2)})});
    auto both = evaluation_rep(w, {local_one_dim(*B, {Scalar(1)}, {Scalar(2)}), local_sl2(*B, {Scalar(2)}, 1)});
    auto split = decompose_one_dim_factor(both);
    CHECK(split.semisimple);
    CHECK(split.image_dim == 3);
    for (size_t a = 0; a < w.dim(); ++a) {
        CHECK(split.lambda[a] == lam.mats[a](0, 0));
        CHECK(split.rho2.mats[a] == rho2.mats[a]);
    }
    CHECK(twist_by_character(split.rho2, split.lambda).mats == both.mats);

    auto pure = decompose_one_dim_factor(rho2);
    for (const auto& l : pure.lambda) CHECK(l.is_zero());
    CHECK(pure.rho2.mats == rho2.mats);

    auto triv = decompose_one_dim_factor(evaluation_rep(w, {}));
    CHECK(triv.image_dim == 0);
    CHECK(triv.semisimple);

    auto L = fixtures::cartan("A1");
    CHECK_THROWS_AS(decompose_one_dim_factor(tensor_rep(sl2_irrep(*L, 1), sl2_irrep(*L, 1))), RepError);
}

TEST_CASE("complete reducibility") {
    auto B = share(fixtures::onsager("A1"));
    MapAlgebraWindow w(B, 3);
    auto e2 = evaluation_rep(w, {local_sl2(*B, {Scalar(2)}, 1)});
    auto e3 = evaluation_rep(w, {local_sl2(*B, {Scalar(3)}, 1)});
    CHECK(completely_reducible(e2));
    CHECK(completely_reducible(direct_sum(e2, e3)));

    // jets at 2: V(1) (x) k[eps]/(eps^2), an indecomposable non-split extension of V(1) by V(1)
    auto U = share(fixtures::loop("A1"));
    MapAlgebraWindow uw(U, 2);
    auto jet = first_jet_rep(uw, local_sl2(*U, {Scalar(2)}, 1));
    CHECK(jet.dim == 4);
    check_window_rep(uw, jet);
    CHECK_FALSE(completely_reducible(jet));
    CHECK(intertwiner_dimension(jet, jet) == 2);
    CHECK_FALSE(burnside_irreducible(jet));
}
