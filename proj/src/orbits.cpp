#include "emalg/orbits.hpp"

#include "emalg/poly.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace emalg {

IsotropyRecord isotropy(const GroupActionBundle& B, const Point& x, unsigned long seed) {
    IsotropyRecord r;
    r.x = x;
    r.stabilizer = B.stabilizer(x);
    for (size_t g : r.stabilizer) r.stabilizer_labels.push_back(B.group().label(g));
    std::vector<LieAutomorphism> autos;
    for (size_t g : r.stabilizer) autos.push_back(B.lie_action(g));
    r.gx = fixed_subalgebra(B.lie(), autos);
    r.derived = derived_subspace(B.lie(), r.gx);
    r.report = analyze_structure(B.lie(), r.gx, seed);
    r.z_dim = r.gx.dim() - r.derived.dim();
    return r;
}

bool isotropy_transport_holds(const GroupActionBundle& B, const Point& x) {
    auto fixed_at = [&](const Point& p) {
        std::vector<LieAutomorphism> autos;
        for (size_t g : B.stabilizer(p)) autos.push_back(B.lie_action(g));
        return fixed_subalgebra(B.lie(), autos);
    };
    Subspace gx = fixed_at(x);
    for (size_t g = 0; g < B.group().order(); ++g) {
        std::vector<Vec> img;
        for (const auto& v : gx.basis()) img.push_back(B.lie_action(g).apply(v));
        if (Subspace::span(img, B.lie().dim()) != fixed_at(B.act_on_point(g, x))) return false;
    }
    return true;
}

std::vector<std::vector<size_t>> all_subgroups(const FiniteGroup& G) {
    std::set<std::vector<size_t>> subs;
    for (size_t g = 0; g < G.order(); ++g) subs.insert(G.subgroup_generated({g}));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<size_t>> cur(subs.begin(), subs.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                std::vector<size_t> gens = cur[i];
                gens.insert(gens.end(), cur[j].begin(), cur[j].end());
                if (subs.insert(G.subgroup_generated(gens)).second) grew = true;
            }
    }
    std::vector<std::vector<size_t>> out(subs.begin(), subs.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

std::vector<std::vector<size_t>> subgroup_classes(const FiniteGroup& G) {
    std::vector<std::vector<size_t>> out;
    std::set<std::vector<size_t>> seen;
    for (const auto& H : all_subgroups(G)) {
        if (seen.count(H)) continue;
        out.push_back(H);
        for (size_t g = 0; g < G.order(); ++g) {
            std::vector<size_t> c;
            for (size_t h : H) c.push_back(G.conjugate(g, h));
            std::sort(c.begin(), c.end());
            seen.insert(c);
        }
    }
    return out;
}

std::string locus_name(LocusKind k) {
    switch (k) {
    case LocusKind::Empty: return "empty";
    case LocusKind::Finite: return "finite";
    case LocusKind::Infinite: return "infinite";
    case LocusKind::Undetermined: return "undetermined";
    }
    return "?";
}

std::string tilde_name(TildeVerdict v) {
    switch (v) {
    case TildeVerdict::Empty: return "empty";
    case TildeVerdict::Finite: return "finite";
    case TildeVerdict::Infinite: return "infinite";
    case TildeVerdict::Undetermined: return "undetermined";
    }
    return "?";
}

bool point_less(const Point& a, const Point& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (text_less(a[i], b[i])) return true;
        if (text_less(b[i], a[i])) return false;
    }
    return a.size() < b.size();
}

Point canonical_representative(const GroupActionBundle& B, const Point& x) {
    auto orb = B.orbit(x);
    return *std::min_element(orb.begin(), orb.end(), point_less);
}

namespace {

std::optional<mpq_class> rational_root(const mpq_class& q, int k) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class a, b;
    if (!mpz_root(a.get_mpz_t(), q.get_num().get_mpz_t(), k)) return std::nullopt;
    if (!mpz_root(b.get_mpz_t(), q.get_den().get_mpz_t(), k)) return std::nullopt;
    return mpq_class(a, b);
}

// solutions of z^k = c inside Q(zeta_N); 'complete' when all |k| were found
std::vector<Scalar> roots_of(int k, Scalar c, int N, bool& complete) {
    if (k < 0) {
        k = -k;
        c = c.inverse();
    }
    std::vector<Scalar> out;
    std::vector<Scalar> radii{Scalar(1)};
    if (c.is_rational()) {
        mpq_class a = abs(c.rational());
        if (auto q = rational_root(a, k)) radii = {Scalar(*q)};
    }
    Scalar z = Scalar::zeta(N);
    for (const auto& r : radii)
        for (int j = 0; j < N; ++j) {
            Scalar cand = z.pow(j) * r;
            if (cand.pow(k) == c && std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
        }
    complete = static_cast<int>(out.size()) == k;
    return out;
}

bool is_permutation_matrix(const std::vector<std::vector<int>>& E, std::vector<size_t>& perm) {
    size_t n = E.size();
    perm.assign(n, 0);
    std::vector<int> hits(n, 0);
    for (size_t i = 0; i < n; ++i) {
        int ones = 0;
        for (size_t j = 0; j < n; ++j) {
            if (E[i][j] == 1) {
                ++ones;
                perm[i] = j;
                ++hits[j];
            } else if (E[i][j] != 0) {
                return false;
            }
        }
        if (ones != 1) return false;
    }
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

FixedLocus torus_locus(const GroupActionBundle& B, const std::vector<size_t>& H) {
    FixedLocus loc;
    size_t n = B.ring().nvars();
    int N = B.conductor();
    std::vector<bool> free(n, true);
    std::vector<std::vector<Scalar>> cand(n);
    std::vector<bool> have(n, false);
    for (size_t h : H) {
        const PointMap& p = B.point_map(h);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (i != j && p.E[i][j] != 0) {
                    loc.note = "non-diagonal monomial action on a torus";
                    return loc;
                }
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t h : H) {
            const PointMap& p = B.point_map(h);
            int e = p.E[i][i];
            const Scalar& s = p.s[i];
            if (e == 1 && s.is_one()) continue;
            free[i] = false;
            if (e == 1) {
                loc.kind = LocusKind::Empty;
                return loc;
            }
            if (!have[i]) {
                bool complete = true;
                cand[i] = roots_of(e - 1, s.inverse(), N, complete);
                if (!complete) {
                    std::string var = B.ring().var_names()[i];
                    loc.missing.push_back("roots of " + var + "^" + std::to_string(e - 1) + " = " + s.inverse().str());
                }
                have[i] = true;
            }
            std::vector<Scalar> keep;
            for (const auto& z : cand[i])
                if (s * z.pow(e) == z) keep.push_back(z);
            cand[i] = keep;
        }
    }
    int nfree = static_cast<int>(std::count(free.begin(), free.end(), true));
    for (size_t i = 0; i < n; ++i)
        if (!free[i] && cand[i].empty() && loc.missing.empty()) {
            loc.kind = LocusKind::Empty;
            return loc;
        }
    if (nfree > 0) {
        loc.kind = LocusKind::Infinite;
        loc.dimension = nfree;
        return loc;
    }
    loc.kind = LocusKind::Finite;
    std::vector<Point> pts{Point{}};
    for (size_t i = 0; i < n; ++i) {
        std::vector<Point> next;
        for (const auto& p : pts)
            for (const auto& z : cand[i]) {
                Point q = p;
                q.push_back(z);
                next.push_back(q);
            }
        pts = next;
    }
    loc.points = pts;
    if (pts.empty() && loc.missing.empty()) loc.kind = LocusKind::Empty;
    return loc;
}

FixedLocus linear_locus(const GroupActionBundle& B, const std::vector<size_t>& H) {
    FixedLocus loc;
    const auto& R = B.ring();
    size_t n = R.nvars();
    std::vector<Vec> rows;
    for (size_t h : H) {
        const PointMap& p = B.point_map(h);
        std::vector<size_t> perm;
        if (!is_permutation_matrix(p.E, perm)) {
            loc.note = "point map is not linear";
            return loc;
        }
        for (size_t i = 0; i < n; ++i) {
            Vec row(n);
            row[perm[i]] += p.s[i];
            row[i] -= Scalar(1);
            rows.push_back(row);
        }
    }
    Subspace V = rows.empty() ? Subspace::full(n) : kernel_basis(Matrix::from_rows(rows, n));
    Point origin(n, Scalar(0));
    if (R.family() == RingFamily::Affine) {
        if (V.dim() == 0) {
            loc.kind = LocusKind::Finite;
            loc.points = {origin};
        } else {
            loc.kind = LocusKind::Infinite;
            loc.dimension = static_cast<int>(V.dim());
        }
        return loc;
    }
    // graded quotient: the curve inside V
    if (V.dim() == 0) {
        loc.kind = LocusKind::Finite;
        loc.points = {origin};
        return loc;
    }
    if (V.dim() >= 2) {
        loc.kind = LocusKind::Infinite;
        loc.dimension = static_cast<int>(V.dim()) - 1;
        return loc;
    }
    const Vec& v = V.basis()[0];
    Poly p;
    for (const auto& [m, c] : R.relation().terms) {
        Scalar t = c;
        int deg = 0;
        for (size_t i = 0; i < n; ++i) {
            t *= v[i].pow(m[i]);
            deg += m[i];
        }
        if (p.size() <= static_cast<size_t>(deg)) p.resize(deg + 1);
        p[deg] += t;
    }
    p = trim(p);
    if (p.empty()) {
        loc.kind = LocusKind::Infinite;
        loc.dimension = 1;
        return loc;
    }
    for (const auto& c : p)
        if (!c.is_rational()) {
            loc.note = "restricted relation has non-rational coefficients";
            return loc;
        }
    auto fac = factor_rational_linear(p);
    loc.kind = LocusKind::Finite;
    for (const auto& [lam, mult] : fac.roots) {
        Point q(n);
        for (size_t i = 0; i < n; ++i) q[i] = lam * v[i];
        loc.points.push_back(q);
    }
    if (degree(fac.rest) > 0) loc.missing.push_back("roots of " + poly_str(fac.rest, "l") + " along " + str(v));
    return loc;
}

FixedLocus moebius_locus(const GroupActionBundle& B, const std::vector<size_t>& H) {
    FixedLocus loc;
    const auto& R = B.ring();
    std::optional<size_t> first;
    for (size_t h : H)
        if (h != 0) {
            first = h;
            break;
        }
    if (!first) {
        loc.kind = LocusKind::Infinite;
        loc.dimension = 1;
        return loc;
    }
    const Matrix& m = B.point_map(*first).m;
    const Scalar &a = m(0, 0), &b = m(0, 1), &c = m(1, 0), &d = m(1, 1);
    std::vector<Scalar> cands;
    if (c.is_zero()) {
        if (!(d - a).is_zero()) cands.push_back(b / (d - a));
    } else {
        // c t^2 + (d - a) t - b = 0
        Scalar disc = (d - a) * (d - a) + Scalar(4) * b * c;
        auto roots = square_roots(disc, B.conductor());
        if (roots.empty()) {
            Poly q{-b, d - a, c};
            loc.missing.push_back("roots of " + poly_str(q, "t") + " outside the scalar field");
        } else {
            for (const auto& r : roots) {
                Scalar t = (a - d + r) / (Scalar(2) * c);
                if (std::find(cands.begin(), cands.end(), t) == cands.end()) cands.push_back(t);
            }
        }
    }
    for (const auto& t : cands) {
        Point x{t};
        if (!R.in_domain(x)) continue;
        bool fixed = true;
        for (size_t h : H)
            if (B.point_map(h).apply(x) != x) fixed = false;
        if (fixed) loc.points.push_back(x);
    }
    loc.kind = loc.points.empty() && loc.missing.empty() ? LocusKind::Empty : LocusKind::Finite;
    return loc;
}

}  // namespace

FixedLocus fixed_locus(const GroupActionBundle& B, const std::vector<size_t>& H) {
    FixedLocus loc;
    switch (B.ring().family()) {
    case RingFamily::Torus: loc = torus_locus(B, H); break;
    case RingFamily::Affine:
    case RingFamily::GradedQuotient: loc = linear_locus(B, H); break;
    case RingFamily::P1Minus: loc = moebius_locus(B, H); break;
    }
    std::sort(loc.points.begin(), loc.points.end(), point_less);
    return loc;
}

TildeReport tilde_analysis(const GroupActionBundle& B, size_t group_bound) {
    TildeReport rep;
    const auto& G = B.group();
    if (G.order() > group_bound) {
        rep.verdict = TildeVerdict::Undetermined;
        rep.note = "group order exceeds the subgroup enumeration bound";
        return rep;
    }
    auto subs = all_subgroups(G);
    std::map<std::vector<size_t>, FixedLocus> loci;
    auto locus_of = [&](const std::vector<size_t>& H) -> const FixedLocus& {
        auto it = loci.find(H);
        if (it == loci.end()) it = loci.emplace(H, fixed_locus(B, H)).first;
        return it->second;
    };
    bool any_infinite = false, any_undet = false, any_finite = false;
    std::set<Point, bool (*)(const Point&, const Point&)> reps(point_less);
    for (const auto& H : subgroup_classes(G)) {
        StratumRow row;
        row.subgroup = H;
        for (size_t i = 0; i < H.size(); ++i) row.name += (i ? ", " : "") + G.label(H[i]);
        row.name = "{" + row.name + "}";
        std::vector<LieAutomorphism> autos;
        for (size_t h : H) autos.push_back(B.lie_action(h));
        Subspace gH = fixed_subalgebra(B.lie(), autos);
        row.gH_dim = gH.dim();
        row.perfect = derived_subspace(B.lie(), gH) == gH;
        row.locus = locus_of(H);
        switch (row.locus.kind) {
        case LocusKind::Empty: row.stratum = LocusKind::Empty; break;
        case LocusKind::Undetermined: row.stratum = LocusKind::Undetermined; break;
        case LocusKind::Finite:
            for (const auto& x : row.locus.points)
                if (B.stabilizer(x) == H) row.stratum_points.push_back(x);
            row.stratum = row.stratum_points.empty() && row.locus.missing.empty() ? LocusKind::Empty : LocusKind::Finite;
            break;
        case LocusKind::Infinite: {
            row.stratum = LocusKind::Infinite;
            for (const auto& K : subs) {
                if (K.size() <= H.size() || !std::includes(K.begin(), K.end(), H.begin(), H.end())) continue;
                const FixedLocus& lk = locus_of(K);
                if (lk.kind == LocusKind::Undetermined) row.stratum = LocusKind::Undetermined;
                if (lk.kind != LocusKind::Infinite) continue;
                if (lk.dimension < 0 || row.locus.dimension < 0) {
                    row.stratum = LocusKind::Undetermined;
                } else if (lk.dimension == row.locus.dimension) {
                    // a linear locus of equal dimension inside X^H is all of X^H
                    bool linear = B.ring().family() != RingFamily::Torus;
                    row.stratum = linear ? LocusKind::Empty : LocusKind::Undetermined;
                    break;
                }
            }
            break;
        }
        }
        row.contributes = !row.perfect && row.stratum != LocusKind::Empty;
        if (row.contributes) {
            if (row.stratum == LocusKind::Infinite) any_infinite = true;
            if (row.stratum == LocusKind::Undetermined) any_undet = true;
            if (row.stratum == LocusKind::Finite) {
                any_finite = true;
                for (const auto& x : row.stratum_points) reps.insert(canonical_representative(B, x));
                if (!row.locus.missing.empty()) rep.representatives_complete = false;
            }
        }
        rep.rows.push_back(std::move(row));
    }
    if (any_infinite) rep.verdict = TildeVerdict::Infinite;
    else if (any_undet) rep.verdict = TildeVerdict::Undetermined;
    else if (any_finite) rep.verdict = TildeVerdict::Finite;
    else rep.verdict = TildeVerdict::Empty;
    rep.representatives.assign(reps.begin(), reps.end());
    if (!rep.representatives_complete) rep.note = "some fixed points lie outside the scalar field";
    return rep;
}

}  // namespace emalg
