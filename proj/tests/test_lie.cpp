#include "doctest.h"

#include "emalg/lie.hpp"
#include "emalg/poly.hpp"

using namespace emalg;

namespace {

// classical dimension and positive-root counts, written out independently
size_t classical_dim(char X, int n) {
    switch (X) {
    case 'A': return n * (n + 2);
    case 'B':
    case 'C': return n * (2 * n + 1);
    case 'D': return n * (2 * n - 1);
    case 'G': return 14;
    }
    return 0;
}

int positive_roots_oracle(char X, int n) {
    // |Phi+| = (dim - rank) / 2
    return static_cast<int>((classical_dim(X, n) - n) / 2);
}

Vec scaled(Vec v, long k) {
    for (auto& x : v) x *= Scalar(k);
    return v;
}

Vec sum(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

size_t label_index(const LieAlgebra& L, const std::string& s) {
    for (size_t i = 0; i < L.dim(); ++i)
        if (L.labels()[i] == s) return i;
    FAIL("missing label " << s);
    return 0;
}

}  // namespace

TEST_CASE("A1 Chevalley basis") {
    LieAlgebra L = LieAlgebra::from_cartan_type("A1");
    REQUIRE(L.dim() == 3);
    size_t h = label_index(L, "h1"), e = label_index(L, "e1"), f = label_index(L, "f1");
    CHECK(L.bracket(L.unit(h), L.unit(e)) == scaled(L.unit(e), 2));
    CHECK(L.bracket(L.unit(h), L.unit(f)) == scaled(L.unit(f), -2));
    CHECK(L.bracket(L.unit(e), L.unit(f)) == L.unit(h));
}

TEST_CASE("Cartan types: dimensions, integrality, Chevalley involution") {
    for (std::string t : {"A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2"}) {
        CAPTURE(t);
        LieAlgebra L = LieAlgebra::from_cartan_type(t);
        int n = t[1] - '0';
        CHECK(L.dim() == classical_dim(t[0], n));
        CHECK(positive_root_count(t) == positive_roots_oracle(t[0], n));
        for (size_t i = 0; i < L.dim(); ++i)
            for (size_t j = 0; j < L.dim(); ++j)
                for (const auto& [k, v] : L.constants(i, j)) {
                    CHECK(v.is_rational());
                    CHECK(v.rational().get_den() == 1);
                }
        auto sigma = chevalley_involution(L);
        CHECK(sigma.order() == 2);
        Subspace fx = fixed_subalgebra(L, {sigma});
        CHECK(fx.dim() == static_cast<size_t>(positive_roots_oracle(t[0], n)));
        CHECK(is_bracket_closed(L, fx));
    }
}

TEST_CASE("G2 Cartan matrix has a triple bond") {
    LieAlgebra L = LieAlgebra::from_cartan_type("G2");
    const auto& c = L.cartan()->cartan;
    CHECK(c[0][1] * c[1][0] == 3);
    CHECK(L.cartan()->pos_roots.size() == 6);
}

TEST_CASE("matrix families") {
    CHECK(LieAlgebra::matrix_family("so", 8).dim() == 28);
    CHECK(LieAlgebra::matrix_family("sl", 3).dim() == 8);
    CHECK(LieAlgebra::matrix_family("sp", 4).dim() == 10);
    CHECK_THROWS(LieAlgebra::matrix_family("gl", 3));
    CHECK_THROWS(LieAlgebra::matrix_family("sp", 3));
    auto r = analyze_structure(LieAlgebra::matrix_family("sl", 3));
    CHECK(r.label == "A2");
}

TEST_CASE("explicit constants with a Jacobi failure report a witness") {
    // [b0,b1] = b2, [b1,b2] = b0, [b0,b2] = b0: not a Lie algebra
    std::vector<SparseVec> t(9);
    auto set = [&](size_t i, size_t j, size_t k) {
        t[i * 3 + j] = {{static_cast<uint32_t>(k), Scalar(1)}};
        t[j * 3 + i] = {{static_cast<uint32_t>(k), Scalar(-1)}};
    };
    set(0, 1, 2);
    set(1, 2, 0);
    set(0, 2, 0);
    try {
        LieAlgebra bad("bad", {"x", "y", "z"}, t);
        FAIL("expected a Jacobi failure");
    } catch (const JacobiError& e) {
        CHECK(e.witness[0] == 0);
        CHECK(e.witness[1] == 1);
        CHECK(e.witness[2] == 2);
    }
    // antisymmetry violation
    std::vector<SparseVec> u(4);
    u[1] = {{0, Scalar(1)}};
    CHECK_THROWS_AS(LieAlgebra("u", {"a", "b"}, u), std::invalid_argument);
}

TEST_CASE("automorphism recipes") {
    LieAlgebra A1 = LieAlgebra::from_cartan_type("A1");
    auto s = chevalley_involution(A1);
    size_t h = label_index(A1, "h1"), e = label_index(A1, "e1"), f = label_index(A1, "f1");
    CHECK(s.apply(A1.unit(e)) == scaled(A1.unit(f), -1));
    CHECK(s.apply(A1.unit(h)) == scaled(A1.unit(h), -1));

    LieAlgebra A2 = LieAlgebra::from_cartan_type("A2");
    CHECK(diagram_automorphism(A2, {1, 0}).order() == 2);
    LieAlgebra D4 = LieAlgebra::from_cartan_type("D4");
    // node 1 is the central node
    CHECK(diagram_automorphism(D4, {2, 1, 3, 0}).order() == 3);
    CHECK_THROWS(diagram_automorphism(D4, {1, 0, 2, 3}));
    CHECK_THROWS(diagram_automorphism(D4, {0, 0, 2, 3}));

    Matrix m = Matrix::identity(3);
    m(0, 0) = Scalar(2);  // scaling h alone breaks [h,e] = 2e
    try {
        explicit_automorphism(A1, m);
        FAIL("expected a non-automorphism");
    } catch (const AutomorphismError& err) {
        CHECK(err.witness[0] < err.witness[1]);
    }
    CHECK_THROWS_AS(explicit_automorphism(A1, Matrix(3, 3)), AutomorphismError);
}

TEST_CASE("fixed subalgebras") {
    LieAlgebra A1 = LieAlgebra::from_cartan_type("A1");
    CHECK(fixed_subalgebra(A1, {LieAutomorphism::identity(A1)}) == Subspace::full(3));
    Subspace fx = fixed_subalgebra(A1, {chevalley_involution(A1)});
    REQUIRE(fx.dim() == 1);
    size_t e = label_index(A1, "e1"), f = label_index(A1, "f1");
    CHECK(fx.contains(sum(A1.unit(e), scaled(A1.unit(f), -1))));

    LieAlgebra D4 = LieAlgebra::from_cartan_type("D4");
    auto s = diagram_automorphism(D4, {2, 1, 0, 3});
    auto r = diagram_automorphism(D4, {2, 1, 3, 0});
    Subspace g2 = fixed_subalgebra(D4, {s, r});
    CHECK(g2.dim() == 14);
    CHECK(is_bracket_closed(D4, g2));
    auto rep = analyze_structure(D4, g2);
    CHECK(rep.label == "G2");
    CHECK(rep.semisimple);
}

TEST_CASE("gradings") {
    LieAlgebra A1 = LieAlgebra::from_cartan_type("A1");
    auto pieces = xi_grading(A1, {chevalley_involution(A1)}, {2});
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0].space.dim() == 1);
    CHECK(pieces[1].space.dim() == 2);
    CHECK(pieces[0].space == fixed_subalgebra(A1, {chevalley_involution(A1)}));

    LieAlgebra A2 = LieAlgebra::from_cartan_type("A2");
    auto p2 = xi_grading(A2, {diagram_automorphism(A2, {1, 0})}, {2});
    CHECK(p2[0].space.dim() == 3);
    CHECK(p2[1].space.dim() == 5);
    CHECK(analyze_structure(A2, p2[0].space).label == "A1");

    auto triv = xi_grading(A2, {}, {});
    REQUIRE(triv.size() == 1);
    CHECK(triv[0].space.dim() == 8);

    // Z2 x Z2 by the Chevalley involution and the diagram swap on A2
    auto sig = chevalley_involution(A2), tau = diagram_automorphism(A2, {1, 0});
    auto p4 = xi_grading(A2, {sig, tau}, {2, 2});
    size_t total = 0;
    for (const auto& p : p4) total += p.space.dim();
    CHECK(total == 8);

    // order-3 grading needs the cube roots of unity
    LieAlgebra D4 = LieAlgebra::from_cartan_type("D4");
    auto p3 = xi_grading(D4, {diagram_automorphism(D4, {2, 1, 3, 0})}, {3});
    CHECK(p3[0].space.dim() == 14);
    CHECK(p3[1].space.dim() == 7);
    CHECK(p3[2].space.dim() == 7);

    // non-commuting generators
    auto s = diagram_automorphism(D4, {2, 1, 0, 3});
    auto r = diagram_automorphism(D4, {2, 1, 3, 0});
    CHECK_THROWS_AS(xi_grading(D4, {s, r}, {2, 3}), AutomorphismError);
}

TEST_CASE("structure analysis") {
    auto sl2 = analyze_structure(LieAlgebra::from_cartan_type("A1"));
    CHECK(sl2.dim == 3);
    CHECK(sl2.center_dim == 0);
    CHECK(sl2.derived_dim == 3);
    CHECK(sl2.semisimple);
    CHECK(sl2.label == "A1");
    CHECK(sl2.centroid_dim == 1);

    LieAlgebra C2 = LieAlgebra::from_cartan_type("C2");
    auto gl2 = analyze_structure(C2, fixed_subalgebra(C2, {chevalley_involution(C2)}));
    CHECK(gl2.center_dim == 1);
    CHECK(gl2.reductive);
    CHECK_FALSE(gl2.semisimple);
    CHECK(gl2.ideal_types == std::vector<std::string>{"A1"});
    CHECK(gl2.label == "k^1+A1");

    // so4 + so4 = four copies of A1
    LieAlgebra D4 = LieAlgebra::from_cartan_type("D4");
    auto four = analyze_structure(D4, fixed_subalgebra(D4, {chevalley_involution(D4)}));
    CHECK(four.semisimple);
    CHECK(four.centroid_dim == 4);
    CHECK(four.label == "A1+A1+A1+A1");

    // the B3 / C3 collision is settled by root strings
    CHECK(analyze_structure(LieAlgebra::from_cartan_type("B3")).label == "B3");
    CHECK(analyze_structure(LieAlgebra::from_cartan_type("C3")).label == "C3");
    auto b3 = analyze_structure(D4, fixed_subalgebra(D4, {diagram_automorphism(D4, {2, 1, 0, 3})}));
    CHECK(b3.dim == 21);
    CHECK(b3.label == "B3");

    // a non-reductive algebra: upper triangular 2x2
    Matrix a(2, 2), b(2, 2);
    a(0, 0) = Scalar(1);
    b(0, 1) = Scalar(1);
    auto tri = analyze_structure(LieAlgebra::from_matrices("b", {"a", "b"}, {a, b}));
    CHECK_FALSE(tri.reductive);
    CHECK(tri.label == "unidentified");
    CHECK(tri.derived_dim == 1);
}

TEST_CASE("centroid dimension counts simple ideals") {
    LieAlgebra A1 = LieAlgebra::from_cartan_type("A1");
    CHECK(centroid(A1).size() == 1);
    CHECK(centroid(LieAlgebra::from_cartan_type("G2")).size() == 1);
    // abelian algebras: every linear map
    LieAlgebra ab("ab", {"x", "y"}, std::vector<SparseVec>(4));
    CHECK(centroid(ab).size() == 4);
}

TEST_CASE("automorphisms from a defining map") {
    LieAlgebra sl2 = LieAlgebra::matrix_family("sl", 2);
    // X -> -X^T is the Chevalley-type involution on the defining matrices
    auto a = automorphism_from_defining_map(sl2, [](const Matrix& m) { return m.transpose() * Scalar(-1); });
    CHECK(a.order() == 2);
    CHECK(fixed_subalgebra(sl2, {a}).dim() == 1);
}

TEST_CASE("polynomial helpers") {
    Matrix m(3, 3);
    m(0, 0) = Scalar(2);
    m(1, 1) = Scalar(2);
    m(2, 2) = Scalar(-3);
    Poly p = minimal_polynomial(m);
    CHECK(p == poly_from_roots({Scalar(2), Scalar(-3)}));
    auto f = factor_rational_linear(poly_mul(poly_from_roots({Scalar(1, 2), Scalar(1, 2), Scalar(4)}),
                                             Poly{Scalar(1), Scalar(0), Scalar(1)}));
    REQUIRE(f.roots.size() == 2);
    CHECK(f.roots[0].first == Scalar(1, 2));
    CHECK(f.roots[0].second == 2);
    CHECK(f.roots[1].first == Scalar(4));
    CHECK(f.rest == Poly{Scalar(1), Scalar(0), Scalar(1)});
}
