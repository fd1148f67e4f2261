#include "emalg/ring.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace emalg {

namespace {

void add_term(RingElement& r, const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = r.terms.find(m);
    if (it == r.terms.end()) {
        r.terms.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) r.terms.erase(it);
}

Monomial add_mono(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

// polynomial text in variables x, y, ... with rational coefficients
struct ParsedPoly {
    std::vector<std::string> vars;  // order of first appearance
    std::vector<std::pair<std::map<std::string, int>, Scalar>> terms;
};

ParsedPoly parse_poly(const std::string& text) {
    ParsedPoly out;
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse relation '" + text + "': " + why);
    };
    auto read_int = [&]() {
        skip();
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
        size_t s = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (s == i) fail("expected an integer");
        long v = std::stol(text.substr(s, i - s));
        return neg ? -v : v;
    };
    skip();
    bool first = true;
    while (i < text.size()) {
        Scalar sign(1);
        skip();
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') sign = Scalar(-1);
            ++i;
        } else if (!first) {
            fail("expected + or -");
        }
        first = false;
        std::map<std::string, int> mono;
        Scalar coef = sign;
        bool any = false;
        while (true) {
            skip();
            if (i >= text.size()) break;
            char ch = text[i];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                long num = read_int(), den = 1;
                skip();
                if (i < text.size() && text[i] == '/') {
                    ++i;
                    den = read_int();
                }
                coef *= Scalar(num, den);
            } else if (std::isalpha(static_cast<unsigned char>(ch))) {
                size_t s = i;
                while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
                std::string v = text.substr(s, i - s);
                if (std::find(out.vars.begin(), out.vars.end(), v) == out.vars.end()) out.vars.push_back(v);
                int e = 1;
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    e = static_cast<int>(read_int());
                    if (e < 0) fail("negative exponent");
                }
                mono[v] += e;
            } else {
                fail(std::string("unexpected character '") + ch + "'");
            }
            any = true;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        out.terms.push_back({mono, coef});
    }
    if (out.terms.empty()) fail("empty relation");
    return out;
}

std::string name_of_point(const Scalar& c) {
    if (c.is_zero()) return "t";
    if (c.is_rational() && c.rational() < 0) return "(t+" + (-c).str() + ")";
    return "(t-" + c.str() + ")";
}

}  // namespace

std::optional<Scalar> parse_extended(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "inf" || t == "oo") return std::nullopt;
    return Scalar::parse(t);
}

GradedRing GradedRing::affine(int n) {
    if (n < 1) throw std::invalid_argument("affine space needs n >= 1");
    GradedRing R;
    R.fam_ = RingFamily::Affine;
    for (int i = 0; i < n; ++i) R.names_.push_back(n == 1 ? "t" : "t" + std::to_string(i + 1));
    return R;
}

GradedRing GradedRing::torus(int n) {
    GradedRing R = affine(n);
    R.fam_ = RingFamily::Torus;
    return R;
}

GradedRing GradedRing::p1_minus(const std::vector<std::optional<Scalar>>& removed) {
    GradedRing R;
    R.fam_ = RingFamily::P1Minus;
    bool inf = false;
    for (const auto& c : removed) {
        if (!c) {
            inf = true;
            continue;
        }
        if (std::find(R.removed_.begin(), R.removed_.end(), *c) != R.removed_.end())
            throw std::invalid_argument("removed point listed twice");
        R.removed_.push_back(*c);
    }
    if (!inf) throw std::invalid_argument("p1_minus requires inf among the removed points");
    for (const auto& c : R.removed_) R.names_.push_back(name_of_point(c));
    return R;
}

GradedRing GradedRing::graded_quotient(const std::string& relation, const std::map<std::string, int>& weights) {
    ParsedPoly p = parse_poly(relation);
    GradedRing R;
    R.fam_ = RingFamily::GradedQuotient;
    R.relation_text_ = relation;
    R.names_ = p.vars;
    for (const auto& [v, w] : weights)
        if (std::find(R.names_.begin(), R.names_.end(), v) == R.names_.end())
            throw std::invalid_argument("weight given for unknown variable '" + v + "'");
    for (const auto& v : R.names_) {
        auto it = weights.find(v);
        if (it == weights.end()) throw std::invalid_argument("missing weight for variable '" + v + "'");
        if (it->second <= 0) throw std::invalid_argument("weights must be positive");
        R.weights_.push_back(it->second);
    }
    for (const auto& [mono, c] : p.terms) {
        Monomial m(R.names_.size(), 0);
        for (const auto& [v, e] : mono)
            m[std::find(R.names_.begin(), R.names_.end(), v) - R.names_.begin()] += e;
        add_term(R.relation_, m, c);
    }
    if (R.relation_.is_zero()) throw std::invalid_argument("relation is zero");
    std::optional<int> deg;
    for (const auto& [m, c] : R.relation_.terms) {
        int d = 0;
        for (size_t i = 0; i < m.size(); ++i) d += m[i] * R.weights_[i];
        if (deg && *deg != d)
            throw std::invalid_argument("relation '" + relation + "' is not homogeneous for the given weights");
        deg = d;
    }
    // lead variable: the first one; it must occur as a pure power above all others
    R.lead_ = 0;
    Scalar lead_coef;
    for (const auto& [m, c] : R.relation_.terms) {
        bool pure = true;
        for (size_t i = 1; i < m.size(); ++i)
            if (m[i]) pure = false;
        if (pure && m[0] > R.lead_pow_) {
            R.lead_pow_ = m[0];
            lead_coef = c;
        }
    }
    if (R.lead_pow_ == 0) throw std::invalid_argument("relation needs a pure power of its first variable");
    for (const auto& [m, c] : R.relation_.terms) {
        if (m[0] == R.lead_pow_) {
            bool pure = std::all_of(m.begin() + 1, m.end(), [](int e) { return e == 0; });
            if (pure) continue;
        }
        if (m[0] >= R.lead_pow_)
            throw std::invalid_argument("relation terms must have lower degree in the first variable");
        add_term(R.tail_, m, -c / lead_coef);
    }
    return R;
}

std::string GradedRing::family_name() const {
    switch (fam_) {
    case RingFamily::Affine: return "affine(" + std::to_string(nvars()) + ")";
    case RingFamily::Torus: return "torus(" + std::to_string(nvars()) + ")";
    case RingFamily::P1Minus: {
        std::string s = "p1_minus(";
        for (const auto& c : removed_) s += c.str() + ",";
        return s + "inf)";
    }
    case RingFamily::GradedQuotient: return "graded_quotient(" + relation_text_ + ")";
    }
    return "";
}

size_t GradedRing::point_dim() const { return fam_ == RingFamily::P1Minus ? 1 : nvars(); }

size_t GradedRing::degree_rank() const {
    switch (fam_) {
    case RingFamily::Affine:
    case RingFamily::Torus: return nvars();
    case RingFamily::GradedQuotient: return 1;
    case RingFamily::P1Minus: break;
    }
    throw WindowUnsupported("p1_minus has no window grading");
}

RingElement GradedRing::one() const { return monomial(Monomial(nvars(), 0)); }

RingElement GradedRing::var(size_t i) const {
    Monomial m(nvars(), 0);
    m.at(i) = 1;
    return monomial(m);
}

RingElement GradedRing::monomial(const Monomial& m, const Scalar& c) const {
    if (m.size() != nvars()) throw std::invalid_argument("monomial has wrong length");
    if (fam_ == RingFamily::Affine || fam_ == RingFamily::GradedQuotient)
        for (int e : m)
            if (e < 0) throw DomainError("negative exponent in a polynomial ring");
    RingElement r;
    add_term(r, m, c);
    return normalize(r);
}

RingElement GradedRing::add(const RingElement& a, const RingElement& b) const {
    RingElement r = a;
    for (const auto& [m, c] : b.terms) add_term(r, m, c);
    return r;
}

RingElement GradedRing::sub(const RingElement& a, const RingElement& b) const { return add(a, scale(b, Scalar(-1))); }

RingElement GradedRing::scale(const RingElement& a, const Scalar& c) const {
    RingElement r;
    if (c.is_zero()) return r;
    for (const auto& [m, x] : a.terms) r.terms.emplace(m, x * c);
    return r;
}

RingElement GradedRing::mul(const RingElement& a, const RingElement& b) const {
    RingElement r;
    for (const auto& [m1, c1] : a.terms)
        for (const auto& [m2, c2] : b.terms) add_term(r, add_mono(m1, m2), c1 * c2);
    return normalize(r);
}

RingElement GradedRing::pow(const RingElement& a, int e) const {
    if (e < 0) {
        if (a.terms.size() != 1 || fam_ == RingFamily::Affine || fam_ == RingFamily::GradedQuotient)
            throw DomainError("only monomials of Laurent-type rings are invertible here");
        Monomial m = a.terms.begin()->first;
        Scalar c = a.terms.begin()->second;
        for (auto& x : m) x = -x;
        return pow(monomial(m, c.inverse()), -e);
    }
    RingElement r = one();
    for (int k = 0; k < e; ++k) r = mul(r, a);
    return r;
}

RingElement GradedRing::normalize(const RingElement& a) const {
    if (fam_ != RingFamily::GradedQuotient) return a;
    RingElement done;
    std::vector<std::pair<Monomial, Scalar>> work(a.terms.begin(), a.terms.end());
    while (!work.empty()) {
        auto [m, c] = work.back();
        work.pop_back();
        if (m[lead_] < lead_pow_) {
            add_term(done, m, c);
            continue;
        }
        Monomial rest = m;
        rest[lead_] -= lead_pow_;
        for (const auto& [t, tc] : tail_.terms) work.push_back({add_mono(rest, t), c * tc});
    }
    return done;
}

Degree GradedRing::degree(const Monomial& m) const {
    switch (fam_) {
    case RingFamily::Affine:
    case RingFamily::Torus: return m;
    case RingFamily::GradedQuotient: {
        int d = 0;
        for (size_t i = 0; i < m.size(); ++i) d += m[i] * weights_[i];
        return {d};
    }
    case RingFamily::P1Minus: break;
    }
    throw WindowUnsupported("p1_minus has no window grading");
}

std::vector<Monomial> GradedRing::piece(const Degree& d) const {
    if (d.size() != degree_rank()) throw std::invalid_argument("degree has wrong length");
    switch (fam_) {
    case RingFamily::Torus: return {d};
    case RingFamily::Affine:
        for (int e : d)
            if (e < 0) return {};
        return {d};
    case RingFamily::GradedQuotient: {
        std::vector<Monomial> out;
        Monomial m(nvars(), 0);
        std::function<void(size_t, int)> rec = [&](size_t i, int left) {
            if (i == nvars()) {
                if (left == 0) out.push_back(m);
                return;
            }
            for (int e = 0; e * weights_[i] <= left; ++e) {
                if (i == lead_ && e >= lead_pow_) break;
                m[i] = e;
                rec(i + 1, left - e * weights_[i]);
            }
            m[i] = 0;
        };
        if (d[0] >= 0) rec(0, d[0]);
        std::sort(out.begin(), out.end());
        return out;
    }
    case RingFamily::P1Minus: break;
    }
    throw WindowUnsupported("p1_minus has no window grading");
}

std::vector<Degree> GradedRing::window(int lo, int hi) const {
    if (!windowable()) throw WindowUnsupported("window-unsupported: the p1_minus family has no grading");
    std::vector<Degree> out;
    size_t k = degree_rank();
    int from = fam_ == RingFamily::Torus ? lo : std::max(lo, 0);
    if (from > hi) return out;
    Degree d(k, from);
    while (true) {
        if (!piece(d).empty()) out.push_back(d);
        size_t i = 0;
        while (i < k && ++d[i] > hi) d[i++] = from;
        if (i == k) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> GradedRing::spanning_monomials(int bound) const {
    std::vector<Monomial> out;
    size_t k = nvars();
    Monomial m(k, -bound);
    while (true) {
        out.push_back(m);
        size_t i = 0;
        while (i < k && ++m[i] > bound) m[i++] = -bound;
        if (i == k) break;
    }
    return out;
}

bool GradedRing::in_domain(const Point& x) const {
    if (x.size() != point_dim()) return false;
    switch (fam_) {
    case RingFamily::Affine: return true;
    case RingFamily::Torus:
        return std::none_of(x.begin(), x.end(), [](const Scalar& s) { return s.is_zero(); });
    case RingFamily::P1Minus: return std::find(removed_.begin(), removed_.end(), x[0]) == removed_.end();
    case RingFamily::GradedQuotient: {
        Scalar v;
        for (const auto& [m, c] : relation_.terms) {
            Scalar t = c;
            for (size_t i = 0; i < m.size(); ++i) t *= x[i].pow(m[i]);
            v += t;
        }
        return v.is_zero();
    }
    }
    return false;
}

void GradedRing::check_point(const Point& x) const {
    if (in_domain(x)) return;
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + x[i].str();
    throw DomainError("point " + s + ") is outside the domain of " + family_name());
}

Scalar GradedRing::evaluate(const RingElement& f, const Point& x) const {
    check_point(x);
    std::vector<Scalar> base = x;
    if (fam_ == RingFamily::P1Minus) {
        base.clear();
        for (const auto& c : removed_) base.push_back(x[0] - c);
    }
    Scalar v;
    for (const auto& [m, c] : f.terms) {
        Scalar t = c;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (m[i] < 0 && base[i].is_zero()) throw DomainError("evaluating a negative power at zero");
            t *= base[i].pow(m[i]);
        }
        v += t;
    }
    return v;
}

std::string GradedRing::str_monomial(const Monomial& m) const {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += names_[i];
        if (m[i] != 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::string GradedRing::str(const RingElement& f) const {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : f.terms) {
        std::string mono = str_monomial(m), coef = c.str();
        std::string term;
        bool one_mono = mono == "1";
        if (c.is_one()) term = mono;
        else if ((-c).is_one()) term = one_mono ? "-1" : "-" + mono;
        else if (!c.is_rational()) term = "(" + coef + ")" + (one_mono ? "" : "*" + mono);
        else term = coef + (one_mono ? "" : "*" + mono);
        if (out.empty()) out = term;
        else if (term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    }
    return out;
}

// ---------------------------------------------------------------------------

PointMap PointMap::identity_monomial(size_t n) {
    std::vector<std::vector<int>> E(n, std::vector<int>(n, 0));
    for (size_t i = 0; i < n; ++i) E[i][i] = 1;
    return monomial(E, Vec(n, Scalar(1)));
}

PointMap PointMap::monomial(std::vector<std::vector<int>> E, Vec s) {
    size_t n = E.size();
    if (s.size() != n) throw std::invalid_argument("monomial map: scalars and exponent rows differ in number");
    for (const auto& r : E)
        if (r.size() != n) throw std::invalid_argument("monomial map: exponent matrix must be square");
    for (const auto& x : s)
        if (x.is_zero()) throw std::invalid_argument("monomial map: scalars must be nonzero");
    PointMap p;
    p.kind = Kind::Monomial;
    p.E = std::move(E);
    p.s = std::move(s);
    return p;
}

PointMap PointMap::moebius(const Matrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("Moebius map needs a 2x2 matrix");
    if ((m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).is_zero()) throw std::invalid_argument("Moebius matrix is singular");
    PointMap p;
    p.kind = Kind::Moebius;
    p.m = m;
    return p;
}

Point PointMap::apply(const Point& x) const {
    if (kind == Kind::Moebius) {
        if (x.size() != 1) throw DomainError("Moebius maps act on one coordinate");
        Scalar den = m(1, 0) * x[0] + m(1, 1);
        if (den.is_zero()) throw DomainError("point " + x[0].str() + " is sent to infinity");
        return {(m(0, 0) * x[0] + m(0, 1)) / den};
    }
    if (x.size() != E.size()) throw DomainError("point has wrong number of coordinates");
    Point y(x.size());
    for (size_t i = 0; i < E.size(); ++i) {
        Scalar v = s[i];
        for (size_t j = 0; j < E.size(); ++j) {
            if (E[i][j] == 0) continue;
            if (E[i][j] < 0 && x[j].is_zero()) throw DomainError("negative power of a zero coordinate");
            v *= x[j].pow(E[i][j]);
        }
        y[i] = v;
    }
    return y;
}

std::string PointMap::str() const {
    if (kind == Kind::Moebius) return "moebius " + m.str();
    std::ostringstream o;
    o << "monomial E=[";
    for (size_t i = 0; i < E.size(); ++i) {
        o << (i ? "," : "") << "[";
        for (size_t j = 0; j < E[i].size(); ++j) o << (j ? "," : "") << E[i][j];
        o << "]";
    }
    o << "] s=" << emalg::str(s);
    return o.str();
}

PointMap compose(const PointMap& phi, const PointMap& psi) {
    if (phi.kind != psi.kind) throw std::invalid_argument("composing point maps of different kinds");
    if (phi.kind == PointMap::Kind::Moebius) return PointMap::moebius(phi.m * psi.m);
    size_t n = phi.E.size();
    if (psi.E.size() != n) throw std::invalid_argument("composing monomial maps of different sizes");
    std::vector<std::vector<int>> E(n, std::vector<int>(n, 0));
    Vec s(n);
    for (size_t i = 0; i < n; ++i) {
        s[i] = phi.s[i];
        for (size_t j = 0; j < n; ++j) {
            if (phi.E[i][j] == 0) continue;
            s[i] *= psi.s[j].pow(phi.E[i][j]);
            for (size_t k = 0; k < n; ++k) E[i][k] += phi.E[i][j] * psi.E[j][k];
        }
    }
    return PointMap::monomial(E, s);
}

bool same_map(const PointMap& a, const PointMap& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == PointMap::Kind::Monomial) return a.E == b.E && a.s == b.s;
    // proportional 2x2 matrices
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            for (size_t k = 0; k < 2; ++k)
                for (size_t l = 0; l < 2; ++l)
                    if (a.m(i, j) * b.m(k, l) != a.m(k, l) * b.m(i, j)) return false;
    return true;
}

namespace {

size_t removed_index(const GradedRing& R, const Scalar& c) {
    const auto& rem = R.removed_finite();
    auto it = std::find(rem.begin(), rem.end(), c);
    if (it == rem.end()) throw DomainError("Moebius map does not permute the removed points (" + c.str() + ")");
    return it - rem.begin();
}

RingElement pull_back_raw(const GradedRing& R, const PointMap& phi, const RingElement& f) {
    RingElement out;
    if (R.family() == RingFamily::P1Minus) {
        if (phi.kind != PointMap::Kind::Moebius) throw DomainError("p1_minus needs Moebius point maps");
        const Matrix& m = phi.m;
        const auto& rem = R.removed_finite();
        for (const auto& [mono, c] : f.terms) {
            Monomial img(rem.size(), 0);
            Scalar coef = c;
            for (size_t k = 0; k < rem.size(); ++k) {
                int a = mono[k];
                if (a == 0) continue;
                // (t - c_k) o phi = ((A t + B) / (C t + D))
                Scalar A = m(0, 0) - rem[k] * m(1, 0), B = m(0, 1) - rem[k] * m(1, 1);
                if (!A.is_zero()) {
                    img[removed_index(R, -B / A)] += a;
                    coef *= A.pow(a);
                } else {
                    coef *= B.pow(a);
                }
                if (!m(1, 0).is_zero()) {
                    img[removed_index(R, -m(1, 1) / m(1, 0))] -= a;
                    coef *= m(1, 0).pow(-a);
                } else {
                    coef *= m(1, 1).pow(-a);
                }
            }
            add_term(out, img, coef);
        }
        return out;
    }
    if (phi.kind != PointMap::Kind::Monomial) throw DomainError("Moebius maps need the p1_minus family");
    size_t n = R.nvars();
    if (phi.E.size() != n) throw DomainError("point map size differs from the number of variables");
    for (const auto& [mono, c] : f.terms) {
        Monomial img(n, 0);
        Scalar coef = c;
        for (size_t i = 0; i < n; ++i) {
            if (mono[i] == 0) continue;
            coef *= phi.s[i].pow(mono[i]);
            for (size_t j = 0; j < n; ++j) img[j] += mono[i] * phi.E[i][j];
        }
        if (R.family() == RingFamily::Affine || R.family() == RingFamily::GradedQuotient)
            for (int e : img)
                if (e < 0) throw DomainError("point map does not preserve the polynomial ring");
        add_term(out, img, coef);
    }
    return out;
}

}  // namespace

void check_ring_map(const GradedRing& R, const PointMap& phi) {
    if (R.family() == RingFamily::P1Minus) {
        if (phi.kind != PointMap::Kind::Moebius) throw DomainError("p1_minus needs Moebius point maps");
        // every removed finite point maps into the removed set (pull back of each variable exists)
        for (size_t k = 0; k < R.nvars(); ++k) pull_back_raw(R, phi, R.var(k));
        return;
    }
    for (size_t k = 0; k < R.nvars(); ++k) pull_back_raw(R, phi, R.var(k));
    if (R.family() == RingFamily::Torus) {
        // unimodular exponent matrix: checked by the caller through the group relations
        return;
    }
    if (R.family() == RingFamily::GradedQuotient) {
        RingElement img = pull_back_raw(R, phi, R.relation());
        const auto& [m0, c0] = *R.relation().terms.begin();
        auto it = img.terms.find(m0);
        if (it == img.terms.end()) throw DomainError("point map does not preserve the relation");
        Scalar lam = it->second / c0;
        RingElement expect;
        for (const auto& [m, c] : R.relation().terms) expect.terms.emplace(m, c * lam);
        if (img != expect) throw DomainError("point map does not preserve the relation");
        // weights must be preserved so that degrees are kept
        for (size_t i = 0; i < R.nvars(); ++i) {
            int w = 0;
            for (size_t j = 0; j < R.nvars(); ++j) w += phi.E[i][j] * R.weights()[j];
            if (w != R.weights()[i]) throw DomainError("point map does not preserve the weights");
        }
    }
}

RingElement pull_back(const GradedRing& R, const PointMap& phi, const RingElement& f) {
    return R.normalize(pull_back_raw(R, phi, f));
}

Degree pull_back_degree(const GradedRing& R, const PointMap& phi, const Degree& d) {
    if (phi.kind != PointMap::Kind::Monomial || !R.windowable())
        throw WindowUnsupported("degree action needs a monomial map on a graded family");
    if (R.family() == RingFamily::GradedQuotient) return d;
    size_t n = R.nvars();
    Degree out(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[j] += d[i] * phi.E[i][j];
    return out;
}

}  // namespace emalg
