#include "emalg/poly.hpp"

#include "emalg/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace emalg {

Poly trim(Poly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

int degree(const Poly& p) { return static_cast<int>(trim(p).size()) - 1; }

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(r);
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return trim(r);
}

std::pair<Poly, Poly> poly_divmod(const Poly& a0, const Poly& b0) {
    Poly a = trim(a0), b = trim(b0);
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    Poly q(a.size() - b.size() + 1);
    Scalar lead = b.back().inverse();
    for (size_t k = q.size(); k-- > 0;) {
        Scalar c = a[k + b.size() - 1] * lead;
        q[k] = c;
        if (c.is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
    }
    return {trim(q), trim(a)};
}

Scalar poly_eval(const Poly& p, const Scalar& x) {
    Scalar acc;
    for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

Poly poly_from_roots(const std::vector<Scalar>& roots) {
    Poly r{Scalar(1)};
    for (const auto& a : roots) r = poly_mul(r, Poly{-a, Scalar(1)});
    return r;
}

std::string poly_str(const Poly& p0, const std::string& var) {
    Poly p = trim(p0);
    if (p.empty()) return "0";
    std::string out;
    for (size_t k = p.size(); k-- > 0;) {
        if (p[k].is_zero()) continue;
        std::string c = p[k].str();
        bool simple = p[k].is_rational();
        std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
        std::string term;
        if (k > 0 && p[k].is_one())
            term = mono;
        else if (k > 0 && (-p[k]).is_one())
            term = "-" + mono;
        else if (k > 0)
            term = (simple ? c : "(" + c + ")") + "*" + mono;
        else
            term = simple ? c : "(" + c + ")";
        if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
        else out = term;
    }
    return out;
}

Poly minimal_polynomial(const Matrix& m) {
    size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("minimal polynomial of a non-square matrix");
    std::vector<Vec> powers;
    Subspace span(n * n);
    Matrix p = Matrix::identity(n);
    while (true) {
        Vec f = p.flatten();
        if (!span.add(f)) {
            Vec c = Coordinatizer(powers, n * n).coords(f);
            Poly r(powers.size() + 1);
            for (size_t i = 0; i < c.size(); ++i) r[i] = -c[i];
            r.back() = Scalar(1);
            return r;
        }
        powers.push_back(f);
        p = p * m;
    }
}

namespace {

// all positive divisors of |a| (a != 0)
std::vector<mpz_class> divisors(mpz_class a) {
    a = abs(a);
    std::vector<std::pair<mpz_class, int>> fac;
    long steps = 0;
    for (mpz_class p = 2; p * p <= a; ++p) {
        if (++steps > 20000000) throw std::runtime_error("rational root search: constant term too large");
        if (a % p != 0) continue;
        int e = 0;
        while (a % p == 0) {
            a /= p;
            ++e;
        }
        fac.push_back({p, e});
    }
    if (a > 1) fac.push_back({a, 1});
    std::vector<mpz_class> out{1};
    for (auto& [p, e] : fac) {
        size_t k = out.size();
        mpz_class pw = 1;
        for (int i = 1; i <= e; ++i) {
            pw *= p;
            for (size_t j = 0; j < k; ++j) out.push_back(out[j] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

LinearFactorization factor_rational_linear(const Poly& p0) {
    Poly p = trim(p0);
    if (p.empty()) throw std::invalid_argument("factoring the zero polynomial");
    LinearFactorization out;
    out.leading = p.back();
    for (auto& c : p) {
        if (!c.is_rational()) throw std::invalid_argument("factor_rational_linear needs rational coefficients");
        c = c / out.leading;
    }
    auto split_root = [&](const Scalar& r) {
        int mult = 0;
        while (degree(p) >= 1) {
            auto [q, rem] = poly_divmod(p, Poly{-r, Scalar(1)});
            if (!rem.empty()) break;
            p = q;
            ++mult;
        }
        if (mult) out.roots.push_back({r, mult});
    };
    split_root(Scalar(0));
    if (degree(p) >= 1) {
        // integer coefficients
        mpz_class l = 1;
        for (auto& c : p) l = lcm(l, c.rational().get_den());
        std::vector<mpz_class> z;
        for (auto& c : p) z.push_back(mpz_class(c.rational() * l));
        auto num = divisors(z.front()), den = divisors(z.back());
        std::vector<mpq_class> cand;
        for (auto& a : num)
            for (auto& b : den) {
                mpq_class r(a, b);
                r.canonicalize();
                cand.push_back(r);
                cand.push_back(-r);
            }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (auto& r : cand) {
            if (degree(p) < 1) break;
            if (poly_eval(p, Scalar(r)).is_zero()) split_root(Scalar(r));
        }
    }
    out.rest = p;
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first.rational() < b.first.rational(); });
    return out;
}

}  // namespace emalg
