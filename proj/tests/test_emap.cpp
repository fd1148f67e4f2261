#include "doctest.h"

#include "emalg/emap.hpp"
#include "emalg/invariants.hpp"
#include "fixtures.hpp"

#include <chrono>

using namespace emalg;

namespace {

template <class F>
std::shared_ptr<const GroupActionBundle> share(F&& b) {
    return std::make_shared<const GroupActionBundle>(std::forward<F>(b));
}

size_t index_of(const LieAlgebra& L, const std::string& s) {
    for (size_t i = 0; i < L.dim(); ++i)
        if (L.labels()[i] == s) return i;
    return L.dim();
}

MapElement pure(const LieAlgebra& L, const Vec& u, const Monomial& m) {
    MapElement a;
    a.terms[m] = u;
    (void)L;
    return a;
}

}  // namespace

TEST_CASE("window bases") {
    auto B = share(fixtures::onsager("A1"));
    MapAlgebraWindow w(B, -2, 2);
    CHECK(w.dim() == 7);
    REQUIRE(w.blocks().size() == 3);
    CHECK(w.blocks()[0].basis.size() == 1);
    CHECK(w.blocks()[1].basis.size() == 3);
    CHECK(w.blocks()[2].basis.size() == 3);
    // every basis element is invariant
    for (size_t i = 0; i < w.dim(); ++i)
        for (size_t g = 0; g < B->group().order(); ++g) CHECK(map_act(*B, g, w.element(i)) == w.element(i));

    auto T = share(fixtures::twisted_loop_a2());
    MapAlgebraWindow tw(T, -2, 2);
    REQUIRE(tw.blocks().size() == 5);
    std::vector<size_t> dims;
    for (const auto& b : tw.blocks()) dims.push_back(b.basis.size());
    // blocks sorted by norm: 0, -1, 1, -2, 2
    CHECK(dims == std::vector<size_t>{3, 5, 5, 3, 3});

    auto U = share(fixtures::loop("A1"));
    MapAlgebraWindow uw(U, 0, 3);
    for (const auto& b : uw.blocks()) CHECK(b.basis.size() == 3);

    auto P = share(fixtures::s3_points());
    CHECK_THROWS_AS(MapAlgebraWindow(P, 2), WindowUnsupported);
}

TEST_CASE("window brackets") {
    auto U = share(fixtures::loop("A1"));
    const auto& L = U->lie();
    const auto& R = U->ring();
    size_t h = index_of(L, "h1"), e = index_of(L, "e1"), f = index_of(L, "f1");
    MapElement h1 = pure(L, L.unit(h), {0}), et = pure(L, L.unit(e), {1});
    Vec two_e = L.unit(e);
    two_e[e] = Scalar(2);
    CHECK(map_bracket(L, R, h1, et) == pure(L, two_e, {1}));
    CHECK(map_bracket(L, R, et, et).is_zero());

    auto B = share(fixtures::onsager("A1"));
    const auto& T = B->ring();
    Vec emf = L.unit(e);
    emf[f] = Scalar(-1);
    MapElement a = pure(L, emf, {0});
    MapElement b;
    b.terms[{1}] = L.unit(h);
    b.terms[{-1}] = L.unit(h);
    b.terms[{-1}][h] = Scalar(-1);
    Vec m2e2f(L.dim());
    m2e2f[e] = Scalar(-2);
    m2e2f[f] = Scalar(-2);
    MapElement expect;
    expect.terms[{1}] = m2e2f;
    Vec p2e2f(L.dim());
    p2e2f[e] = Scalar(2);
    p2e2f[f] = Scalar(2);
    expect.terms[{-1}] = p2e2f;
    CHECK(map_bracket(L, T, a, b) == expect);

    // containment [M_a, M_b] in the window and invariance of products
    MapAlgebraWindow w(B, 4);
    size_t m = w.count_up_to(2);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            MapElement br = w.bracket(i, j);
            CHECK(w.contains(br));
            CHECK(map_act(*B, 1, br) == br);
        }
    MapAlgebraWindow small(B, 1);
    size_t top = small.dim() - 1;
    CHECK_THROWS_AS(small.bracket(top, top - 1), WindowError);
}

TEST_CASE("abelian grading formula for the window") {
    // M_d = sum_xi g_xi (x) (A_{-xi} cap A_d)
    std::vector<GroupActionBundle> list{fixtures::onsager("A2"), fixtures::twisted_loop_a2(), fixtures::nodal_cubic()};
    for (auto& b : list) {
        auto B = share(std::move(b));
        const auto& G = B->group();
        std::vector<LieAutomorphism> gens;
        std::vector<int> orders;
        for (size_t s = 0; s < G.generator_count(); ++s) {
            gens.push_back(B->lie_action(G.generator(s)));
            orders.push_back(G.element_order(G.generator(s)));
        }
        auto grading = xi_grading(B->lie(), gens, orders, B->conductor());
        MapAlgebraWindow w(B, 3);
        for (const auto& blk : w.blocks()) {
            auto pieces = isotypic_pieces(*B, blk.degrees);
            size_t expect = 0;
            for (const auto& gp : grading)
                for (const auto& ap : pieces)
                    if (ap.label == dual_label(G, gp.character)) expect += gp.space.dim() * ap.basis.size();
            CHECK(blk.basis.size() == expect);
        }
    }
}

TEST_CASE("derived windows") {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    auto B = share(fixtures::onsager("A1"));
    auto d = derived_window(B, 3, 6);
    CHECK(d.all_stable);
    CHECK(d.total_quotient == 2);
    CHECK(d.rows[0].quotient.back() == 1);
    CHECK(d.rows[1].quotient.back() == 1);

    auto A2 = share(fixtures::onsager("A2"));
    auto d2 = derived_window(A2, 3, 6);
    CHECK(d2.all_stable);
    CHECK(d2.total_quotient == 0);

    auto N = share(fixtures::nodal_cubic());
    auto dn = derived_window(N, 4, 8);
    CHECK(dn.all_stable);
    CHECK(dn.total_quotient == 3);
    for (const auto& r : dn.rows) {
        int deg = r.degrees.front()[0];
        CHECK(r.quotient.back() == ((deg == 0 || deg == 2 || deg == 4) ? 1u : 0u));
    }

    auto U = share(fixtures::loop("A1"));
    auto du = derived_window(U, 2, 4);
    CHECK(du.total_quotient == 0);
    MESSAGE("derived windows: " << std::chrono::duration<double>(clock::now() - t0).count() << " s");
}

TEST_CASE("evaluation maps") {
    auto B = share(fixtures::onsager("A1"));
    MapAlgebraWindow w(B, -2, 2);
    auto e2 = evaluation_map(w, {{Scalar(2)}});
    CHECK(e2.target_dim == 3);
    CHECK(e2.rank == 3);
    CHECK(e2.surjective);
    CHECK(e2.contained);
    auto e1 = evaluation_map(w, {{Scalar(1)}});
    CHECK(e1.target_dim == 1);
    CHECK(e1.surjective);
    CHECK(e1.contained);
    CHECK_THROWS_AS(evaluation_map(w, {{Scalar(2)}, {Scalar(1, 2)}}), DomainError);
    auto both = evaluation_map(w, {{Scalar(2)}, {Scalar(3)}, {Scalar(1)}, {Scalar(-1)}});
    CHECK(both.contained);
    CHECK(both.target_dim == 8);
}

TEST_CASE("gamma kernel and M^d") {
    auto N = share(fixtures::nodal_cubic());
    auto dn = derived_window(N, 4, 8);
    auto g = gamma_kernel(dn, {{Scalar(0), Scalar(0)}});
    CHECK(g.z_dim == 1);
    CHECK(g.surjective);
    CHECK(g.derived_in_md);
    CHECK(g.kernel_dim == 2);
    CHECK(g.kernel_classes.size() == 2);

    auto B = share(fixtures::onsager("A1"));
    auto d = derived_window(B, 3, 6);
    auto go = gamma_kernel(d, {{Scalar(1)}, {Scalar(-1)}});
    CHECK(go.z_dim == 2);
    CHECK(go.surjective);
    CHECK(go.kernel_dim == 0);

    auto U = share(fixtures::loop("A1"));
    auto du = derived_window(U, 2, 4);
    auto gu = gamma_kernel(du, {});
    CHECK(gu.kernel_dim == 0);
    CHECK(gu.z_dim == 0);
}

TEST_CASE("perfectness certificates") {
    auto c1 = perfectness_certificate(fixtures::onsager("A1"));
    CHECK(c1.verdict() == "Inconclusive");
    auto c2 = perfectness_certificate(fixtures::loop("A1"));
    CHECK(c2.verdict() == "PerfectBy(1)");
    auto c3 = perfectness_certificate(fixtures::s3_so8());
    CHECK(c3.perfect());
    CHECK(std::find(c3.satisfied.begin(), c3.satisfied.end(), 2) != c3.satisfied.end());
    CHECK(std::find(c3.satisfied.begin(), c3.satisfied.end(), 3) != c3.satisfied.end());
    auto c4 = perfectness_certificate(fixtures::twisted_loop_a2());
    CHECK(std::find(c4.satisfied.begin(), c4.satisfied.end(), 3) != c4.satisfied.end());
    // a perfect verdict agrees with the window computation
    auto d = derived_window(std::make_shared<const GroupActionBundle>(fixtures::twisted_loop_a2()), 2, 4);
    CHECK(d.total_quotient == 0);
}
