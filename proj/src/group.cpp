#include "emalg/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>

namespace emalg {

namespace {

// Todd-Coxeter coset enumeration over the trivial subgroup (HLT strategy with
// coincidence processing). Column 2i is generator i, column 2i+1 its inverse.
class CosetTable {
public:
    CosetTable(int ncols, size_t limit) : ncols_(ncols), limit_(limit) { new_row(); }

    void enumerate(const std::vector<std::vector<int>>& relators) {
        for (size_t c = 0; c < t_.size(); ++c) {
            if (!live(c)) continue;
            for (const auto& r : relators) {
                if (!live(c)) break;
                scan_and_fill(static_cast<int>(c), r);
            }
            if (!live(c)) continue;
            for (int x = 0; x < ncols_; ++x)
                if (t_[c][x] < 0) define(static_cast<int>(c), x);
        }
    }

    bool live(size_t c) const { return p_[c] == static_cast<int>(c); }
    size_t size() const { return t_.size(); }
    int at(size_t c, int x) { return rep(t_[c][x]); }

private:
    void new_row() {
        if (t_.size() >= limit_) throw GroupError("presentation does not close within the element bound");
        t_.emplace_back(ncols_, -1);
        p_.push_back(static_cast<int>(p_.size()));
    }
    int define(int c, int x) {
        new_row();
        int d = static_cast<int>(t_.size()) - 1;
        t_[c][x] = d;
        t_[d][x ^ 1] = c;
        return d;
    }
    int rep(int k) {
        int l = k;
        while (p_[l] != l) l = p_[l];
        while (p_[k] != k) {
            int n = p_[k];
            p_[k] = l;
            k = n;
        }
        return l;
    }
    void merge(int k, int l, std::vector<int>& q) {
        k = rep(k);
        l = rep(l);
        if (k == l) return;
        int m = std::min(k, l), n = std::max(k, l);
        p_[n] = m;
        q.push_back(n);
    }
    void coincidence(int a, int b) {
        std::vector<int> q;
        merge(a, b, q);
        for (size_t i = 0; i < q.size(); ++i) {
            int e = q[i];
            for (int x = 0; x < ncols_; ++x) {
                int f = t_[e][x];
                if (f < 0) continue;
                t_[f][x ^ 1] = -1;
                int e1 = rep(e), f1 = rep(f);
                if (t_[e1][x] >= 0)
                    merge(f1, t_[e1][x], q);
                else if (t_[f1][x ^ 1] >= 0)
                    merge(e1, t_[f1][x ^ 1], q);
                else {
                    t_[e1][x] = f1;
                    t_[f1][x ^ 1] = e1;
                }
            }
        }
    }
    void scan_and_fill(int c, const std::vector<int>& w) {
        if (w.empty()) return;
        int f = c, b = c;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        while (true) {
            while (i <= j && t_[f][w[i]] >= 0) f = t_[f][w[i++]];
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && t_[b][w[j] ^ 1] >= 0) b = t_[b][w[j--] ^ 1];
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                t_[f][w[i]] = b;
                t_[b][w[i] ^ 1] = f;
                return;
            }
            define(f, w[i]);
        }
    }

    int ncols_;
    size_t limit_;
    std::vector<std::vector<int>> t_;
    std::vector<int> p_;
};

std::string cycle_label(const std::vector<int>& p, const std::vector<std::string>& names) {
    std::vector<bool> seen(p.size(), false);
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i)) continue;
        std::string cyc = "(";
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            cyc += (first ? "" : " ") + names[j];
            first = false;
            j = p[j];
        }
        out += cyc + ")";
    }
    return out.empty() ? "Id" : out;
}

}  // namespace

std::vector<int> FiniteGroup::parse_word(const std::string& w) const {
    std::vector<int> out;
    size_t i = 0;
    while (i < w.size()) {
        char c = w[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
            ++i;
            continue;
        }
        if (c == '1' && (i + 1 == w.size() || !std::isdigit(static_cast<unsigned char>(w[i + 1])))) {
            ++i;  // explicit identity
            continue;
        }
        size_t best = 0;
        int gen = -1;
        for (size_t g = 0; g < gen_names_.size(); ++g) {
            const auto& n = gen_names_[g];
            if (n.size() > best && w.compare(i, n.size(), n) == 0) {
                best = n.size();
                gen = static_cast<int>(g);
            }
        }
        if (gen < 0) throw GroupError("unknown generator in word '" + w + "'");
        i += best;
        long e = 1;
        if (i < w.size() && w[i] == '^') {
            size_t s = ++i;
            if (i < w.size() && w[i] == '-') ++i;
            while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) ++i;
            if (s == i || (i == s + 1 && w[s] == '-')) throw GroupError("bad exponent in word '" + w + "'");
            e = std::stol(w.substr(s, i - s));
        }
        for (long k = 0; k < std::labs(e); ++k) out.push_back(e > 0 ? gen + 1 : -(gen + 1));
    }
    return out;
}

FiniteGroup FiniteGroup::from_presentation(const std::vector<std::string>& gens,
                                           const std::vector<std::string>& relations, size_t bound) {
    FiniteGroup G;
    G.gen_names_ = gens;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].empty()) throw GroupError("empty generator name");
        for (size_t j = 0; j < i; ++j)
            if (gens[i] == gens[j]) throw GroupError("duplicate generator '" + gens[i] + "'");
    }
    auto to_cols = [](const std::vector<int>& letters) {
        std::vector<int> c;
        for (int l : letters) c.push_back(l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1);
        return c;
    };
    std::vector<std::vector<int>> relators;
    for (const auto& r : relations) {
        auto eq = r.find('=');
        std::vector<int> letters = G.parse_word(r.substr(0, eq));
        if (eq != std::string::npos) {
            std::vector<int> rhs = G.parse_word(r.substr(eq + 1));
            for (auto it = rhs.rbegin(); it != rhs.rend(); ++it) letters.push_back(-*it);
        }
        relators.push_back(to_cols(letters));
    }
    int ncols = static_cast<int>(2 * gens.size());
    std::vector<std::vector<int>> right;
    if (ncols == 0) {
        G.finish({});
        return G;
    }
    CosetTable ct(ncols, std::max<size_t>(bound * 32, 4096));
    ct.enumerate(relators);
    std::map<size_t, int> index;
    for (size_t c = 0; c < ct.size(); ++c)
        if (ct.live(c)) index.emplace(c, static_cast<int>(index.size()));
    if (index.size() > bound)
        throw GroupError("group has more than " + std::to_string(bound) + " elements");
    right.assign(gens.size(), std::vector<int>(index.size()));
    for (const auto& [c, i] : index)
        for (size_t g = 0; g < gens.size(); ++g) right[g][i] = index.at(ct.at(c, static_cast<int>(2 * g)));
    G.finish(right);
    return G;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::string>& gens,
                                           const std::vector<std::vector<int>>& images,
                                           const std::vector<std::string>& domain, size_t bound) {
    if (gens.size() != images.size()) throw GroupError("one permutation per generator required");
    size_t m = images.empty() ? domain.size() : images[0].size();
    std::vector<std::string> names = domain;
    if (names.empty())
        for (size_t i = 0; i < m; ++i) names.push_back(std::to_string(i));
    if (names.size() != m) throw GroupError("domain names do not match the permutation size");
    for (const auto& p : images) {
        if (p.size() != m) throw GroupError("permutations must act on one common set");
        std::vector<int> s = p;
        std::sort(s.begin(), s.end());
        for (size_t i = 0; i < m; ++i)
            if (s[i] != static_cast<int>(i)) throw GroupError("generator image is not a permutation");
    }
    std::vector<int> id(m);
    for (size_t i = 0; i < m; ++i) id[i] = static_cast<int>(i);
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    std::vector<std::vector<int>> right(gens.size());
    for (size_t a = 0; a < elems.size(); ++a)
        for (size_t g = 0; g < gens.size(); ++g) {
            std::vector<int> prod(m);
            for (size_t x = 0; x < m; ++x) prod[x] = elems[a][images[g][x]];  // a o gen
            auto it = index.find(prod);
            if (it == index.end()) {
                if (elems.size() >= bound) throw GroupError("permutation group exceeds the element bound");
                it = index.emplace(prod, static_cast<int>(elems.size())).first;
                elems.push_back(prod);
            }
            right[g].push_back(it->second);
        }
    FiniteGroup G;
    G.gen_names_ = gens;
    G.finish(right);
    // finish relabels in breadth-first order, which is the order used above
    for (size_t a = 0; a < elems.size(); ++a) G.labels_[a] = cycle_label(elems[a], names);
    return G;
}

FiniteGroup FiniteGroup::trivial() {
    FiniteGroup G;
    G.finish({});
    return G;
}

void FiniteGroup::finish(std::vector<std::vector<int>> right) {
    size_t n = right.empty() ? 1 : right[0].size();
    size_t k = right.size();
    // breadth-first relabelling from the identity
    std::vector<int> order, pos(n, -1);
    std::vector<std::vector<int>> words(n);
    order.push_back(0);
    pos[0] = 0;
    for (size_t q = 0; q < order.size(); ++q)
        for (size_t g = 0; g < k; ++g) {
            int b = right[g][order[q]];
            if (pos[b] >= 0) continue;
            pos[b] = static_cast<int>(order.size());
            order.push_back(b);
            words[b] = words[order[q]];
            words[b].push_back(static_cast<int>(g));
        }
    if (order.size() != n) throw GroupError("generators do not generate the enumerated group");
    right_.assign(k, std::vector<int>(n));
    right_inv_.assign(k, std::vector<int>(n));
    words_.assign(n, {});
    for (size_t g = 0; g < k; ++g)
        for (size_t a = 0; a < n; ++a) {
            right_[g][pos[a]] = pos[right[g][a]];
            right_inv_[g][pos[right[g][a]]] = pos[a];
        }
    for (size_t a = 0; a < n; ++a) words_[pos[a]] = words[a];
    gen_elem_.clear();
    for (size_t g = 0; g < k; ++g) gen_elem_.push_back(right_[g][0]);
    labels_.assign(n, "");
    for (size_t a = 0; a < n; ++a) {
        if (words_[a].empty()) {
            labels_[a] = "Id";
            continue;
        }
        std::string s;
        for (int l : words_[a]) s += gen_names_[l];
        labels_[a] = s;
    }
    inv_.assign(n, 0);
    for (size_t a = 0; a < n; ++a) {
        size_t x = 0;
        for (auto it = words_[a].rbegin(); it != words_[a].rend(); ++it) x = right_inv_[*it][x];
        inv_[a] = x;
    }
    table_.clear();
    if (n <= 512) {
        table_.assign(n, std::vector<uint32_t>(n));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                size_t x = a;
                for (int l : words_[b]) x = right_[l][x];
                table_[a][b] = static_cast<uint32_t>(x);
            }
        if (n <= 64)
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b)
                    for (size_t c = 0; c < n; ++c)
                        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                            throw GroupError("multiplication table is not associative");
    }
    for (size_t a = 0; a < n; ++a)
        if (mul(a, inv_[a]) != 0 || mul(inv_[a], a) != 0) throw GroupError("inverse check failed");
}

size_t FiniteGroup::mul(size_t a, size_t b) const {
    if (!table_.empty()) return table_.at(a).at(b);
    size_t x = a;
    for (int l : words_.at(b)) x = right_[l][x];
    return x;
}

std::optional<size_t> FiniteGroup::find(const std::string& label) const {
    for (size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

bool FiniteGroup::is_abelian() const {
    for (size_t i = 0; i < gen_elem_.size(); ++i)
        for (size_t j = i + 1; j < gen_elem_.size(); ++j)
            if (mul(gen_elem_[i], gen_elem_[j]) != mul(gen_elem_[j], gen_elem_[i])) return false;
    return true;
}

int FiniteGroup::element_order(size_t g) const {
    size_t x = g;
    int k = 1;
    while (x != 0) {
        x = mul(x, g);
        ++k;
    }
    return k;
}

std::vector<size_t> FiniteGroup::subgroup_generated(const std::vector<size_t>& gens) const {
    std::vector<size_t> out{0};
    std::vector<bool> in(order(), false);
    in[0] = true;
    for (size_t q = 0; q < out.size(); ++q)
        for (size_t g : gens) {
            size_t x = mul(out[q], g);
            if (!in[x]) {
                in[x] = true;
                out.push_back(x);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

size_t FiniteGroup::evaluate_word(const std::vector<int>& letters) const {
    size_t x = 0;
    for (int l : letters) {
        if (l == 0 || static_cast<size_t>(std::abs(l)) > gen_names_.size()) throw GroupError("bad letter");
        x = l > 0 ? right_[l - 1][x] : right_inv_[-l - 1][x];
    }
    return x;
}

// ---------------------------------------------------------------------------

std::string point_str(const Point& x) {
    if (x.size() == 1) return x[0].str();
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + x[i].str();
    return s + ")";
}

GroupActionBundle::GroupActionBundle(FiniteGroup G, std::shared_ptr<const LieAlgebra> L,
                                     std::shared_ptr<const GradedRing> R, const std::vector<LieAutomorphism>& gen_lie0,
                                     const std::vector<PointMap>& gen_point0, bool diagram_action, int conductor)
    : G_(std::move(G)), L_(std::move(L)), R_(std::move(R)), diagram_(diagram_action) {
    size_t k = G_.generator_count(), n = G_.order();
    if (gen_lie0.size() != k || gen_point0.size() != k)
        throw GroupError("each generator needs a Lie action and a point action");
    N_ = std::max(conductor, 1);
    for (size_t g = 0; g < n; ++g) N_ = std::lcm(N_, G_.element_order(g));
    for (const auto& a : gen_lie0) N_ = std::lcm(N_, conductor_of(a.matrix()));
    for (const auto& p : gen_point0) N_ = std::lcm(N_, p.kind == PointMap::Kind::Moebius ? conductor_of(p.m) : conductor_of(p.s));
    std::vector<LieAutomorphism> gen_lie;
    std::vector<PointMap> gen_point;
    for (const auto& a : gen_lie0) gen_lie.push_back(LieAutomorphism(*L_, lift(a.matrix(), N_)));
    for (auto p : gen_point0) {
        if (p.kind == PointMap::Kind::Moebius) p.m = lift(p.m, N_);
        else p.s = lift(p.s, N_);
        gen_point.push_back(p);
    }
    bool moebius = R_->family() == RingFamily::P1Minus;
    for (const auto& p : gen_point) {
        if ((p.kind == PointMap::Kind::Moebius) != moebius)
            throw GroupError("point map kind does not fit the scheme family " + R_->family_name());
        if (!moebius && p.E.size() != R_->nvars()) throw GroupError("point map size does not match the scheme");
        check_ring_map(*R_, p);
    }
    lie_.assign(n, LieAutomorphism::identity(*L_));
    point_.assign(n, moebius ? PointMap::moebius(Matrix::identity(2)) : PointMap::identity_monomial(R_->nvars()));
    for (size_t g = 1; g < n; ++g) {
        const auto& w = G_.word(g);
        std::vector<int> prefix;
        for (size_t i = 0; i + 1 < w.size(); ++i) prefix.push_back(w[i] + 1);
        size_t parent = G_.evaluate_word(prefix);
        int s = w.back();
        lie_[g] = LieAutomorphism(*L_, lie_[parent].matrix() * gen_lie[s].matrix());
        point_[g] = compose(point_[parent], gen_point[s]);
    }
    for (size_t h = 0; h < n; ++h)
        for (size_t s = 0; s < k; ++s) {
            size_t hs = G_.mul(h, G_.generator(s));
            if (lie_[hs].matrix() != lie_[h].matrix() * gen_lie[s].matrix())
                throw GroupError("Lie action does not respect the group relations (element " + G_.label(h) +
                                 ", generator " + G_.generator_names()[s] + ")");
            if (!same_map(point_[hs], compose(point_[h], gen_point[s])))
                throw GroupError("point action does not respect the group relations (element " + G_.label(h) +
                                 ", generator " + G_.generator_names()[s] + ")");
        }
}

Point GroupActionBundle::act_on_point(size_t g, const Point& x) const {
    R_->check_point(x);
    Point y = point_.at(g).apply(x);
    R_->check_point(y);
    return y;
}

RingElement GroupActionBundle::act_on_ring(size_t g, const RingElement& f) const {
    return pull_back(*R_, point_.at(G_.inv(g)), f);
}

Degree GroupActionBundle::act_on_degree(size_t g, const Degree& d) const {
    return pull_back_degree(*R_, point_.at(G_.inv(g)), d);
}

std::vector<size_t> GroupActionBundle::stabilizer(const Point& x) const {
    std::vector<size_t> out;
    for (size_t g = 0; g < G_.order(); ++g)
        if (act_on_point(g, x) == x) out.push_back(g);
    return out;
}

std::vector<Point> GroupActionBundle::orbit(const Point& x) const {
    std::vector<Point> out;
    for (size_t g = 0; g < G_.order(); ++g) {
        Point y = act_on_point(g, x);
        if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
    }
    return out;
}

bool GroupActionBundle::same_orbit(const Point& x, const Point& y) const {
    auto o = orbit(x);
    return std::find(o.begin(), o.end(), y) != o.end();
}

}  // namespace emalg
