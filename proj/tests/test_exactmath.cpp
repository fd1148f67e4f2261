#include "doctest.h"

#include "emalg/linalg.hpp"

#include <random>

using namespace emalg;

namespace {

Scalar q(long n, long d = 1) { return Scalar(n, d); }

Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Vec> rs;
    for (auto& r : rows) {
        Vec v;
        for (long x : r) v.push_back(q(x));
        rs.push_back(v);
    }
    return Matrix::from_rows(rs, rs.empty() ? 0 : rs[0].size());
}

Scalar random_scalar(std::mt19937_64& rng, int n) {
    std::vector<mpq_class> c(euler_phi(n));
    for (auto& x : c) x = mpq_class(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
    return Scalar::from_coeffs(n, c);
}

}  // namespace

TEST_CASE("rational arithmetic") {
    CHECK(q(1, 2) + q(1, 3) == q(5, 6));
    CHECK((q(1, 2) + q(1, 3)).str() == "5/6");
    CHECK(q(-4, 6).str() == "-2/3");
    CHECK(q(6, 3).str() == "2");
    CHECK_THROWS_AS(q(1) / q(0), DivisionByZero);
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
    CHECK(euler_phi(8) == 4);
    CHECK(euler_phi(9) == 6);
}

TEST_CASE("roots of unity") {
    Scalar z6 = Scalar::zeta(6);
    CHECK((z6 * z6 - z6 + q(1)).is_zero());
    CHECK(z6.pow(6) == q(1));
    CHECK(z6.pow(3) == q(-1));
    Scalar z4 = Scalar::zeta(4);
    CHECK(z4.inverse() == -z4);
    for (int n : {3, 5, 7, 8, 9, 12}) {
        Scalar z = Scalar::zeta(n);
        CHECK(z.pow(n) == q(1));
        // Phi_n(zeta) = 0
        Scalar acc;
        const auto& p = cyclotomic_polynomial(n);
        for (size_t k = 0; k < p.size(); ++k) acc += q(p[k]) * z.pow(static_cast<long>(k));
        CHECK(acc.is_zero());
    }
}

TEST_CASE("conductor mixing needs an explicit lift") {
    Scalar a = Scalar::zeta(4), b = Scalar::zeta(3);
    CHECK_THROWS_AS(a + b, ConductorMismatch);
    Scalar a12 = a.lift(12), b12 = b.lift(12);
    CHECK(a12.conductor() == 12);
    CHECK(a12.pow(4) == q(1));
    CHECK((a12 * b12).pow(12) == q(1));
    // rationals combine with any conductor
    CHECK((a + q(1)) - q(1) == a);
}

TEST_CASE("field axioms on random cyclotomic elements") {
    std::mt19937_64 rng(11);
    for (int n : {1, 3, 4, 6, 8, 12}) {
        for (int t = 0; t < 20; ++t) {
            Scalar a = random_scalar(rng, n), b = random_scalar(rng, n), c = random_scalar(rng, n);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b) * c == a * (b * c));
            if (!a.is_zero()) CHECK(a * a.inverse() == q(1));
        }
    }
}

TEST_CASE("text form round trip") {
    std::mt19937_64 rng(5);
    for (int n : {1, 4, 6, 12}) {
        for (int t = 0; t < 30; ++t) {
            Scalar a = random_scalar(rng, n);
            CHECK(Scalar::parse(a.str()) == a);
            CHECK(Scalar::parse(a.str()).str() == a.str());
        }
    }
    CHECK(Scalar::parse("cyc(6)[0,1]") == Scalar::zeta(6));
    CHECK(Scalar::parse("cyc(6)[1,0]").str() == "1");
    CHECK(Scalar::parse(" -3/9 ").str() == "-1/3");
    CHECK_THROWS(Scalar::parse("1/0"));
    CHECK_THROWS(Scalar::parse("abc"));
    CHECK_THROWS(Scalar::parse("cyc(6)[1]"));
}

TEST_CASE("square roots in cyclotomic fields") {
    auto r = square_roots(q(-3), 6);
    REQUIRE(r.size() == 2);
    CHECK(r[0] * r[0] == q(-3));
    CHECK(square_roots(q(-1), 1).empty());
    CHECK(square_roots(q(-1), 4).size() == 2);
    CHECK(square_roots(q(9, 4), 1).front() * square_roots(q(9, 4), 1).front() == q(9, 4));
    auto r2 = square_roots(q(2), 8);
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] * r2[0] == q(2));
    auto r5 = square_roots(q(5), 5);
    REQUIRE(r5.size() == 2);
    CHECK(r5[0] * r5[0] == q(5));
    CHECK(square_roots(q(2), 1).empty());
}

TEST_CASE("kernel basis") {
    Subspace k = kernel_basis(mat({{1, 2}, {2, 4}}));
    REQUIRE(k.dim() == 1);
    // canonical form normalizes the leading entry; (-2,1) spans the same line
    CHECK(k.contains(Vec{q(-2), q(1)}));
    CHECK(kernel_basis(Matrix::identity(3)).dim() == 0);
    CHECK(kernel_basis(Matrix(2, 3)).dim() == 3);
}

TEST_CASE("subspace operations") {
    auto e = [](size_t i) {
        Vec v(3);
        v[i] = Scalar(1);
        return v;
    };
    Subspace a = Subspace::span({e(0)}, 3), b = Subspace::span({e(1)}, 3);
    CHECK((a + b).dim() == 2);
    Subspace u = Subspace::span({e(0), e(1)}, 3), v = Subspace::span({e(1), e(2)}, 3);
    CHECK(u.intersect(v) == Subspace::span({e(1)}, 3));
    CHECK(u.intersect(u) == u);
    CHECK_THROWS(u + Subspace(4));
}

TEST_CASE("rank is independent of the elimination order") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        Matrix m(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) m(i, j) = (rng() % 3 == 0) ? q(0) : random_scalar(rng, t % 2 ? 1 : 6);
        // force dependencies sometimes
        if (r > 2 && t % 3 == 0)
            for (size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * q(2) - m(1, j);
        CHECK(rank(m) == rank_bottom_pivot(m));
        CHECK(rank(m) + kernel_basis(m).dim() == c);
    }
}

TEST_CASE("Grassmann identity on random subspace pairs") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 40; ++t) {
        size_t n = 2 + rng() % 5;
        auto rand_space = [&]() {
            std::vector<Vec> vs;
            size_t k = rng() % (n + 1);
            for (size_t i = 0; i < k; ++i) {
                Vec v(n);
                for (auto& x : v) x = (rng() % 2) ? q(static_cast<long>(rng() % 5) - 2) : q(0);
                vs.push_back(v);
            }
            return Subspace::span(vs, n);
        };
        Subspace u = rand_space(), v = rand_space();
        CHECK(u.dim() + v.dim() == (u + v).dim() + u.intersect(v).dim());
        CHECK((u + v).contains(u));
        CHECK(u.contains(u.intersect(v)));
    }
}

TEST_CASE("coordinatizer and sparse echelon agree with dense rank") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
        size_t n = 6;
        std::vector<Vec> vs;
        SparseEchelon se;
        Subspace dense(n);
        for (int i = 0; i < 8; ++i) {
            Vec v(n);
            for (auto& x : v) x = (rng() % 3 == 0) ? q(static_cast<long>(rng() % 5) - 2) : q(0);
            bool a = dense.add(v);
            bool b = se.add(to_sparse(v)).has_value();
            CHECK(a == b);
            if (a) vs.push_back(v);
        }
        CHECK(se.rank() == dense.dim());
        if (vs.empty()) continue;
        Coordinatizer co(vs, n);
        Vec c(vs.size());
        Vec target(n);
        for (size_t i = 0; i < vs.size(); ++i) {
            c[i] = q(static_cast<long>(i) + 1);
            for (size_t j = 0; j < n; ++j) target[j] += c[i] * vs[i][j];
        }
        CHECK(co.coords(target) == c);
    }
}
