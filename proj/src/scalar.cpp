#include "emalg/scalar.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace emalg {

namespace {

using QPoly = std::vector<mpq_class>;  // lowest degree first

void trim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
    std::vector<long> quo(num.size() - den.size() + 1, 0);
    for (size_t k = quo.size(); k-- > 0;) {
        long c = num[k + den.size() - 1] / den.back();
        quo[k] = c;
        for (size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    return quo;
}

// remainder of p modulo a monic integer polynomial
void reduce_mod(QPoly& p, const std::vector<long>& m) {
    size_t d = m.size() - 1;
    for (size_t k = p.size(); k-- > d;) {
        if (sgn(p[k]) == 0) continue;
        mpq_class c = p[k];
        for (size_t j = 0; j <= d; ++j) p[k - d + j] -= c * m[j];
    }
    if (p.size() > d) p.resize(d);
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// (quotient, remainder) of a by b over Q
std::pair<QPoly, QPoly> poly_divmod(QPoly a, const QPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    QPoly q(a.size() - b.size() + 1);
    for (size_t k = q.size(); k-- > 0;) {
        mpq_class c = a[k + b.size() - 1] / b.back();
        q[k] = c;
        for (size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
    }
    trim(a);
    return {q, a};
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

}  // namespace

int euler_phi(int n) {
    if (n < 1) throw std::invalid_argument("conductor must be positive");
    int r = n, m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        r -= r / p;
    }
    if (m > 1) r -= r / m;
    return r;
}

const std::vector<long>& cyclotomic_polynomial(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<long>> cache;
    if (n < 1) throw std::invalid_argument("conductor must be positive");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    std::vector<long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div_exact(p, cyclotomic_polynomial(d));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(p)).first->second;
}

Scalar::Scalar(long num, long den) {
    if (den == 0) throw DivisionByZero("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Scalar Scalar::zeta(int n) {
    std::vector<mpq_class> c(2);
    c[1] = 1;
    return from_coeffs(n, std::move(c));
}

Scalar Scalar::from_coeffs(int n, std::vector<mpq_class> coeffs) {
    for (auto& c : coeffs) c.canonicalize();
    Scalar s;
    if (n == 1 || n == 2) {
        // Q(zeta_1) = Q(zeta_2) = Q; zeta_2 = -1
        mpq_class v = 0, x = 1;
        for (auto& c : coeffs) {
            v += c * x;
            if (n == 2) x = -x;
        }
        s.q_ = v;
        return s;
    }
    reduce_mod(coeffs, cyclotomic_polynomial(n));
    coeffs.resize(euler_phi(n));
    s.n_ = n;
    s.c_ = std::move(coeffs);
    s.normalize();
    return s;
}

void Scalar::normalize() {
    if (n_ == 1) return;
    bool rational = true;
    for (size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) rational = false;
    if (rational) {
        q_ = c_[0];
        c_.clear();
        n_ = 1;
    }
}

const mpq_class& Scalar::rational() const {
    if (n_ != 1) throw std::domain_error("scalar " + str() + " is not rational");
    return q_;
}

std::vector<mpq_class> Scalar::coeffs(int n) const {
    int phi = euler_phi(n);
    std::vector<mpq_class> r(phi);
    if (n_ == 1) {
        r[0] = q_;
        return r;
    }
    if (n == n_) return c_;
    return lift(n).c_;
}

Scalar Scalar::lift(int m) const {
    if (n_ == 1 || m == n_) return *this;
    if (m % n_ != 0)
        throw ConductorMismatch("cannot lift conductor " + std::to_string(n_) + " to " +
                                std::to_string(m));
    int step = m / n_;
    std::vector<mpq_class> c((c_.size() - 1) * step + 1);
    for (size_t i = 0; i < c_.size(); ++i) c[i * step] = c_[i];
    return from_coeffs(m, std::move(c));
}

int Scalar::joint_conductor(const Scalar& a, const Scalar& b) {
    if (a.n_ == 1) return b.n_;
    if (b.n_ == 1 || a.n_ == b.n_) return a.n_;
    throw ConductorMismatch("mixing conductors " + std::to_string(a.n_) + " and " +
                            std::to_string(b.n_) + " without lift");
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.q_ = -r.q_;
    for (auto& c : r.c_) c = -c;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& b) {
    int n = joint_conductor(*this, b);
    if (n == 1) {
        q_ += b.q_;
        return *this;
    }
    if (n_ == 1) {
        c_ = b.c_;
        c_[0] += q_;
        n_ = n;
        q_ = 0;
    } else if (b.n_ == 1) {
        c_[0] += b.q_;
    } else {
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    }
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& b) { return *this += -b; }

Scalar& Scalar::operator*=(const Scalar& b) {
    int n = joint_conductor(*this, b);
    if (n == 1) {
        q_ *= b.q_;
        return *this;
    }
    if (n_ == 1 || b.n_ == 1) {
        const mpq_class f = n_ == 1 ? q_ : b.q_;
        if (n_ == 1) c_ = b.c_;
        n_ = n;
        q_ = 0;
        for (auto& c : c_) c *= f;
        normalize();
        return *this;
    }
    QPoly p = poly_mul(c_, b.c_);
    reduce_mod(p, cyclotomic_polynomial(n));
    p.resize(c_.size());
    c_ = std::move(p);
    normalize();
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    if (n_ == 1) return Scalar(mpq_class(1) / q_);
    // extended Euclid: find s with s*a = 1 mod Phi_n
    const auto& phi_int = cyclotomic_polynomial(n_);
    QPoly m(phi_int.begin(), phi_int.end());
    QPoly a = c_;
    trim(a);
    QPoly r0 = m, r1 = a, s0, s1 = {mpq_class(1)};
    while (!(r1.size() == 1)) {
        auto [q, r] = poly_divmod(r0, r1);
        QPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        if (r1.empty()) throw DivisionByZero("non-invertible cyclotomic residue");
    }
    for (auto& c : s1) c /= r1[0];
    return from_coeffs(n_, s1);
}

Scalar& Scalar::operator/=(const Scalar& b) { return *this *= b.inverse(); }

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(1), base = *this;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.n_ == 1 || b.n_ == 1) return a.n_ == b.n_ && a.q_ == b.q_;
    if (a.n_ == b.n_) return a.c_ == b.c_;
    // comparison is not arithmetic: compare in the common field
    int m = std::lcm(a.n_, b.n_);
    return a.lift(m).c_ == b.lift(m).c_;
}

std::string Scalar::str() const {
    if (n_ == 1) return q_.get_str();
    std::string s = "cyc(" + std::to_string(n_) + ")[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += c_[i].get_str();
    }
    return s + "]";
}

namespace {

mpq_class parse_rational(std::string_view t) {
    std::string s;
    for (char ch : t)
        if (!isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty scalar");
    size_t slash = s.find('/');
    auto valid_int = [](const std::string& x) {
        size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
        if (i >= x.size()) return false;
        for (; i < x.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(x[i]))) return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num = num.substr(1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational '" + std::string(t) + "'");
    mpq_class q{mpz_class(num), mpz_class(den)};
    if (sgn(q.get_den()) == 0) throw DivisionByZero("zero denominator in '" + std::string(t) + "'");
    q.canonicalize();
    return q;
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
    std::string_view t = text;
    while (!t.empty() && isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
    while (!t.empty() && isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
    if (t.substr(0, 4) == "cyc(") {
        size_t close = t.find(')');
        size_t lb = t.find('[');
        size_t rb = t.rfind(']');
        if (close == std::string_view::npos || lb != close + 1 || rb != t.size() - 1)
            throw std::invalid_argument("malformed cyclotomic scalar '" + std::string(text) + "'");
        int n = std::stoi(std::string(t.substr(4, close - 4)));
        if (n < 1) throw std::invalid_argument("conductor must be positive");
        std::vector<mpq_class> c;
        std::string_view body = t.substr(lb + 1, rb - lb - 1);
        size_t start = 0;
        while (start <= body.size()) {
            size_t comma = body.find(',', start);
            if (comma == std::string_view::npos) comma = body.size();
            c.push_back(parse_rational(body.substr(start, comma - start)));
            start = comma + 1;
        }
        if (static_cast<int>(c.size()) != euler_phi(n))
            throw std::invalid_argument("cyclotomic scalar needs phi(N) coefficients");
        return from_coeffs(n, std::move(c));
    }
    return Scalar(parse_rational(t));
}

bool text_less(const Scalar& a, const Scalar& b) { return a.str() < b.str(); }

namespace {

// squarefree decomposition a = s^2 * m of a nonzero integer; returns m
mpz_class squarefree_part(mpz_class a, mpz_class& s) {
    s = 1;
    mpz_class m = a < 0 ? mpz_class(-1) : mpz_class(1);
    a = abs(a);
    for (mpz_class p = 2; p * p <= a; ++p) {
        int e = 0;
        while (a % p == 0) {
            a /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2) m *= p;
    }
    m *= a;
    return m;
}

// zeta_k expressed in Q(zeta_n), when that field contains it
bool zeta_in(int k, int n, Scalar& out) {
    if (n % k == 0) {
        out = Scalar::zeta(n).pow(n / k);
        return true;
    }
    if (n % 2 == 1 && (2 * n) % k == 0) {
        // zeta_{2n} = -zeta_n^{(n+1)/2}
        Scalar z2n = -Scalar::zeta(n).pow((n + 1) / 2);
        out = z2n.pow(2 * n / k);
        return true;
    }
    return false;
}

// sqrt of a squarefree integer m inside Q(zeta_n) via Gauss sums
bool sqrt_squarefree(const mpz_class& m, int n, Scalar& out) {
    if (m == 1) {
        out = Scalar(1);
        return true;
    }
    Scalar r(1);
    mpz_class prod = 1;  // value of r^2
    mpz_class a = abs(m);
    for (long p = 2; a > 1; ++p) {
        if (a % p != 0) continue;
        a /= p;
        Scalar g;
        if (p == 2) {
            Scalar z8;
            if (!zeta_in(8, n, z8)) return false;
            g = z8 + z8.pow(7);  // sqrt(2)
            prod *= 2;
        } else {
            Scalar zp;
            if (!zeta_in(static_cast<int>(p), n, zp)) return false;
            g = Scalar(0);
            for (long x = 1; x < p; ++x) {
                // Legendre symbol via Euler's criterion
                mpz_class e;
                mpz_class base(x), mod(p);
                mpz_powm_ui(e.get_mpz_t(), base.get_mpz_t(), (p - 1) / 2, mod.get_mpz_t());
                int leg = (e == 1) ? 1 : -1;
                g += Scalar(leg) * zp.pow(x);
            }
            prod *= (p % 4 == 1) ? mpz_class(p) : mpz_class(-p);
        }
        r *= g;
    }
    if (prod != m) {
        Scalar i4;
        if (!zeta_in(4, n, i4)) return false;
        r *= i4;  // fixes the sign of the radicand
    }
    out = r;
    return true;
}

}  // namespace

std::vector<Scalar> square_roots(const Scalar& a, int n) {
    if (a.is_zero()) return {Scalar(0)};
    if (a.is_rational()) {
        const mpq_class& q = a.rational();
        mpz_class num = q.get_num() * q.get_den();  // sqrt(p/q) = sqrt(pq)/q
        mpz_class s;
        mpz_class m = squarefree_part(num, s);
        Scalar root;
        if (!sqrt_squarefree(m, n, root)) return {};
        Scalar r = root * Scalar(mpq_class(s, q.get_den()));
        if (r * r != a) return {};
        return {r, -r};
    }
    return {};
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::string str(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

}  // namespace emalg
