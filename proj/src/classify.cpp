#include "emalg/classify.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace emalg {

RepLabel RepLabel::sl2(int d) {
    RepLabel l;
    l.kind = Kind::Sl2;
    l.d = d;
    return l;
}

RepLabel RepLabel::one_dim(Vec values) {
    RepLabel l;
    l.kind = Kind::OneDim;
    l.values = std::move(values);
    return l;
}

RepLabel RepLabel::dominant(std::string type, std::vector<int> weight) {
    RepLabel l;
    l.kind = Kind::DominantWeight;
    l.type = std::move(type);
    l.weight = std::move(weight);
    return l;
}

RepLabel RepLabel::explicit_matrices(std::vector<Matrix> mats) {
    RepLabel l;
    l.kind = Kind::Explicit;
    l.mats = std::move(mats);
    return l;
}

bool RepLabel::trivial() const {
    switch (kind) {
    case Kind::Sl2: return d == 0;
    case Kind::OneDim:
        return std::all_of(values.begin(), values.end(), [](const Scalar& s) { return s.is_zero(); });
    case Kind::DominantWeight: return std::all_of(weight.begin(), weight.end(), [](int w) { return w == 0; });
    case Kind::Explicit:
        return !mats.empty() && mats[0].rows() == 1 &&
               std::all_of(mats.begin(), mats.end(), [](const Matrix& m) { return m.is_zero(); });
    }
    return false;
}

std::string RepLabel::str() const {
    switch (kind) {
    case Kind::Sl2: return "V(" + std::to_string(d) + ")";
    case Kind::OneDim: {
        std::string s = "one_dim(";
        for (size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + values[i].str();
        return s + ")";
    }
    case Kind::DominantWeight: {
        std::string s = type + "(";
        for (size_t i = 0; i < weight.size(); ++i) s += (i ? "," : "") + std::to_string(weight[i]);
        return s + ")";
    }
    case Kind::Explicit:
        return "matrices[dim " + std::to_string(mats.empty() ? 0 : mats[0].rows()) + "]";
    }
    return "?";
}

bool operator==(const RepLabel& a, const RepLabel& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case RepLabel::Kind::Sl2: return a.d == b.d;
    case RepLabel::Kind::OneDim: return a.values == b.values;
    case RepLabel::Kind::DominantWeight: return a.type == b.type && a.weight == b.weight;
    case RepLabel::Kind::Explicit: return a.mats == b.mats;
    }
    return false;
}

std::string EquivariantFunction::str() const {
    if (entries.empty()) return "0";
    std::string s = "{";
    for (size_t i = 0; i < entries.size(); ++i)
        s += (i ? ", " : "") + point_str(entries[i].first) + " -> " + entries[i].second.str();
    return s + "}";
}

namespace {

std::string isotropy_type(const GroupActionBundle& B, const PointIsotropy& iso) {
    if (iso.gx.dim() == B.lie().dim() && B.lie().cartan()) return B.lie().cartan()->type;
    return analyze_structure(B.lie(), iso.gx).label;
}

// node permutation induced by a diagram automorphism on the simple root vectors
std::optional<std::vector<int>> node_permutation(const LieAlgebra& L, const LieAutomorphism& a) {
    if (!L.cartan()) return std::nullopt;
    const auto& c = *L.cartan();
    std::vector<int> perm;
    for (size_t i = 0; i < c.e_index.size(); ++i) {
        Vec img = a.apply(L.unit(c.e_index[i]));
        std::optional<int> to;
        for (size_t j = 0; j < c.e_index.size(); ++j) {
            Subspace line = Subspace::span({L.unit(c.e_index[j])}, L.dim());
            if (line.contains(img)) to = static_cast<int>(j);
        }
        if (!to) return std::nullopt;
        perm.push_back(*to);
    }
    return perm;
}

}  // namespace

void validate_label(const GroupActionBundle& B, const Point& x, const RepLabel& l) {
    B.ring().check_point(x);
    PointIsotropy iso = point_isotropy(B, x);
    switch (l.kind) {
    case RepLabel::Kind::Sl2:
        if (l.d < 0) throw RepError("highest weight must be nonnegative");
        if (l.d > 0 && (iso.gx.dim() != B.lie().dim() || !B.lie().cartan() || B.lie().cartan()->type != "A1"))
            throw RepError("V(d) labels need g^x = sl2 at " + point_str(x));
        break;
    case RepLabel::Kind::OneDim:
        if (iso.z_basis.empty()) {
            if (!l.trivial())
                throw RepError("nonzero one-dimensional form at " + point_str(x) +
                               " where g^x is perfect (support must lie in X-tilde)");
        } else if (l.values.size() != iso.z_basis.size()) {
            throw RepError("one-dimensional form at " + point_str(x) + " needs " +
                           std::to_string(iso.z_basis.size()) + " values");
        }
        break;
    case RepLabel::Kind::DominantWeight: {
        for (int w : l.weight)
            if (w < 0) throw RepError("dominant weight coordinates must be nonnegative");
        if (l.trivial()) break;
        std::string t = isotropy_type(B, iso);
        if (t != l.type) throw RepError("label type " + l.type + " differs from g^x type " + t + " at " + point_str(x));
        if (static_cast<int>(l.weight.size()) != cartan_rank(l.type))
            throw RepError("weight for " + l.type + " needs " + std::to_string(cartan_rank(l.type)) + " coordinates");
        break;
    }
    case RepLabel::Kind::Explicit: local_matrices(B, x, l.mats); break;
    }
}

RepLabel transport_label(const GroupActionBundle& B, size_t g, const Point& x, const RepLabel& l) {
    switch (l.kind) {
    case RepLabel::Kind::Sl2: return l;
    case RepLabel::Kind::OneDim: {
        PointIsotropy ix = point_isotropy(B, x);
        if (ix.z_basis.empty()) return l;
        PointIsotropy iy = point_isotropy(B, B.act_on_point(g, x));
        Vec out;
        for (const auto& z : iy.z_basis) {
            Vec c = ix.z_coords(B.lie_action(g).apply_inverse(z));
            Scalar s(0);
            for (size_t i = 0; i < c.size(); ++i) s += l.values[i] * c[i];
            out.push_back(s);
        }
        return RepLabel::one_dim(out);
    }
    case RepLabel::Kind::DominantWeight: {
        const auto& L = B.lie();
        if (!B.diagram_action() || !L.cartan() || L.cartan()->type != l.type) return l;
        auto perm = node_permutation(L, B.lie_action(g));
        if (!perm) return l;
        RepLabel out = l;
        for (size_t i = 0; i < perm->size(); ++i) out.weight[(*perm)[i]] = l.weight[i];
        return out;
    }
    case RepLabel::Kind::Explicit: {
        LocalRep moved = transport(B, g, local_matrices(B, x, l.mats));
        return RepLabel::explicit_matrices(moved.rep.mats);
    }
    }
    return l;
}

namespace {

bool same_class(const GroupActionBundle& B, const Point& x, const RepLabel& a, const RepLabel& b) {
    if (a.kind == RepLabel::Kind::Explicit && b.kind == RepLabel::Kind::Explicit) {
        if (a.mats.empty() || b.mats.empty() || a.mats[0].rows() != b.mats[0].rows()) return false;
        return intertwiner_dimension(local_matrices(B, x, a.mats).rep, local_matrices(B, x, b.mats).rep) == 1;
    }
    return a == b;
}

void sort_entries(EquivariantFunction& f) {
    std::sort(f.entries.begin(), f.entries.end(),
              [](const auto& a, const auto& b) { return point_less(a.first, b.first); });
}

}  // namespace

EquivariantFunction canonicalize_psi(const GroupActionBundle& B, const std::vector<std::pair<Point, RepLabel>>& raw) {
    EquivariantFunction f;
    for (const auto& [x, l] : raw) {
        validate_label(B, x, l);
        if (l.trivial()) continue;
        Point y = canonical_representative(B, x);
        size_t g = 0;
        while (B.act_on_point(g, x) != y) ++g;
        RepLabel moved = transport_label(B, g, x, l);
        auto it = std::find_if(f.entries.begin(), f.entries.end(), [&](const auto& e) { return e.first == y; });
        if (it == f.entries.end()) {
            f.entries.emplace_back(y, moved);
        } else if (!same_class(B, y, it->second, moved)) {
            throw EquivarianceError("labels " + it->second.str() + " and " + l.str() + " on the orbit of " +
                                    point_str(y) + " are not related by the group action");
        }
    }
    sort_entries(f);
    return f;
}

LocalRep local_rep(const GroupActionBundle& B, const Point& x, const RepLabel& l) {
    switch (l.kind) {
    case RepLabel::Kind::Sl2: return l.d == 0 ? local_one_dim(B, x, Vec(point_isotropy(B, x).z_basis.size())) : local_sl2(B, x, l.d);
    case RepLabel::Kind::OneDim: {
        PointIsotropy iso = point_isotropy(B, x);
        return local_one_dim(B, x, iso.z_basis.empty() ? Vec{} : l.values);
    }
    case RepLabel::Kind::DominantWeight:
        if (l.type == "A1" && l.weight.size() == 1) return local_sl2(B, x, l.weight[0]);
        if (l.trivial()) return local_one_dim(B, x, Vec(point_isotropy(B, x).z_basis.size()));
        throw UnsupportedLabel("no module matrices for the dominant-weight label " + l.str());
    case RepLabel::Kind::Explicit: return local_matrices(B, x, l.mats);
    }
    throw UnsupportedLabel("unknown label");
}

EquivariantFunction psi_tensor(const GroupActionBundle& B, const EquivariantFunction& a, const EquivariantFunction& b) {
    EquivariantFunction out = a;
    for (const auto& [x, l] : b.entries) {
        auto it = std::find_if(out.entries.begin(), out.entries.end(), [&](const auto& e) { return e.first == x; });
        if (it == out.entries.end()) {
            out.entries.emplace_back(x, l);
            continue;
        }
        const RepLabel& m = it->second;
        if (m.kind == RepLabel::Kind::OneDim && l.kind == RepLabel::Kind::OneDim) {
            Vec v = m.values;
            for (size_t i = 0; i < v.size(); ++i) v[i] += l.values[i];
            it->second = RepLabel::one_dim(v);
        } else if (m.kind == RepLabel::Kind::DominantWeight && l.kind == RepLabel::Kind::DominantWeight) {
            throw UnsupportedLabel("tensor products of dominant-weight labels are not decomposed");
        } else {
            MatrixRep t = tensor_rep(local_rep(B, x, m).rep, local_rep(B, x, l).rep);
            it->second = RepLabel::explicit_matrices(t.mats);
        }
    }
    out.entries.erase(std::remove_if(out.entries.begin(), out.entries.end(), [](const auto& e) { return e.second.trivial(); }),
                      out.entries.end());
    sort_entries(out);
    return out;
}

MatrixRep ev_psi(const MapAlgebraWindow& w, const EquivariantFunction& psi, size_t count) {
    std::vector<LocalRep> reps;
    for (const auto& [x, l] : psi.entries) reps.push_back(local_rep(w.bundle(), x, l));
    return evaluation_rep(w, reps, count);
}

namespace {

// every canonical function assigning a pool label to each pool point
std::vector<EquivariantFunction> enumerate_functions(const GroupActionBundle& B, const std::vector<Point>& points,
                                                     const std::vector<RepLabel>& labels, size_t& total, size_t& invalid) {
    std::vector<EquivariantFunction> out;
    total = invalid = 0;
    if (labels.empty()) return out;
    std::vector<size_t> idx(points.size(), 0);
    while (true) {
        ++total;
        std::vector<std::pair<Point, RepLabel>> raw;
        for (size_t i = 0; i < points.size(); ++i) raw.emplace_back(points[i], labels[idx[i]]);
        try {
            EquivariantFunction f = canonicalize_psi(B, raw);
            if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
        } catch (const EquivarianceError&) {
            ++invalid;
        } catch (const RepError&) {
            ++invalid;
        }
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == labels.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return out;
}

}  // namespace

InjectivityReport injectivity_harness(const MapAlgebraWindow& w, const std::vector<Point>& points,
                                      const std::vector<RepLabel>& labels, size_t count) {
    InjectivityReport rep;
    rep.classes = enumerate_functions(w.bundle(), points, labels, rep.functions, rep.invalid);
    std::vector<MatrixRep> evs;
    for (const auto& f : rep.classes) {
        evs.push_back(ev_psi(w, f, count));
        rep.dims.push_back(evs.back().dim);
    }
    for (size_t i = 0; i < evs.size(); ++i) {
        if (intertwiner_dimension(evs[i], evs[i]) != 1) rep.diagonal_ok = false;
        for (size_t j = i + 1; j < evs.size(); ++j)
            if (intertwiner_dimension(evs[i], evs[j]) != 0) {
                rep.injective = false;
                rep.collisions.emplace_back(i, j);
            }
    }
    return rep;
}

std::string regime_name(Regime r) {
    switch (r) {
    case Regime::Perfect: return "PERFECT";
    case Regime::FiniteTilde: return "FINITE-X~";
    case Regime::InfiniteTilde: return "INFINITE-X~";
    case Regime::Undetermined: return "UNDETERMINED";
    }
    return "?";
}

RegimeReport classification_regime(std::shared_ptr<const GroupActionBundle> B, int depth) {
    RegimeReport rep;
    auto cert = perfectness_certificate(*B);
    for (const auto& e : cert.evidence) rep.evidence.push_back("certificate: " + e);
    if (cert.perfect()) {
        std::string sat;
        for (int k : cert.satisfied) sat += (sat.empty() ? "" : ", ") + std::to_string(k);
        rep.evidence.push_back("certificate conditions satisfied: " + sat);
    }
    rep.evidence.push_back("certificate verdict: " + cert.verdict());
    if (cert.perfect()) {
        rep.regime = Regime::Perfect;
        rep.all_evaluation = true;
        return rep;
    }
    bool windowable = B->ring().windowable();
    std::optional<DerivedWindowReport> d;
    if (windowable) {
        if (depth <= 0) depth = 6;
        d = derived_window(B, depth / 2, depth);
        rep.evidence.push_back("window depth " + std::to_string(depth) + ": dim M/[M,M] near degree 0 = " +
                               std::to_string(d->total_quotient) + (d->all_stable ? " (stable)" : " (not stable)"));
        if (d->total_quotient == 0 && d->all_stable) {
            rep.regime = Regime::Perfect;
            rep.all_evaluation = true;
            rep.evidence.push_back("[M,M] = M on the window");
            return rep;
        }
    }
    auto tilde = tilde_analysis(*B);
    rep.evidence.push_back("X-tilde: " + tilde_name(tilde.verdict));
    for (const auto& row : tilde.rows)
        if (row.contributes)
            rep.evidence.push_back("stratum " + row.name + ": g^H dim " + std::to_string(row.gH_dim) +
                                   " not perfect, stratum " + locus_name(row.stratum));
    rep.tilde_points = tilde.representatives;
    switch (tilde.verdict) {
    case TildeVerdict::Infinite:
        rep.regime = Regime::InfiniteTilde;
        rep.evidence.push_back("one-dimensional representations that are not evaluation representations exist");
        return rep;
    case TildeVerdict::Undetermined:
        rep.regime = Regime::Undetermined;
        if (!tilde.note.empty()) rep.evidence.push_back(tilde.note);
        return rep;
    default: break;
    }
    if (!d || !tilde.representatives_complete) {
        rep.regime = Regime::Undetermined;
        rep.evidence.push_back(!d ? "ker gamma needs a graded window" : "X-tilde has points outside the scalar field");
        return rep;
    }
    auto g = gamma_kernel(*d, tilde.representatives);
    rep.kernel_dim = g.kernel_dim;
    rep.evidence.push_back("gamma: rank " + std::to_string(g.gamma_rank) + " onto sum of z^x of dim " +
                           std::to_string(g.z_dim) + (g.surjective ? ", surjective" : ", not surjective"));
    rep.evidence.push_back("dim ker gamma = " + std::to_string(g.kernel_dim));
    if (!d->all_stable) {
        rep.regime = Regime::Undetermined;
        rep.evidence.push_back("window readings did not stabilize");
        return rep;
    }
    rep.regime = Regime::FiniteTilde;
    rep.all_evaluation = g.kernel_dim == 0;
    return rep;
}

Recovered recover_decomposition(const MapAlgebraWindow& w, const MatrixRep& rho, const std::vector<Point>& tilde,
                                const std::vector<Point>& pool, const std::vector<RepLabel>& labels) {
    const auto& B = w.bundle();
    auto split = decompose_one_dim_factor(rho);
    size_t count = rho.mats.size();
    // lambda(alpha) = sum_x c_x . z(alpha(x))
    std::vector<PointIsotropy> isos;
    std::vector<Vec> cols;
    for (const auto& x : tilde) {
        isos.push_back(point_isotropy(B, x));
        for (size_t k = 0; k < isos.back().z_basis.size(); ++k) cols.emplace_back(count);
    }
    size_t col = 0;
    for (const auto& iso : isos) {
        for (size_t a = 0; a < count; ++a) {
            Vec z = iso.z_coords(map_evaluate(B.ring(), w.element(a), iso.x));
            for (size_t k = 0; k < z.size(); ++k) cols[col + k][a] = z[k];
        }
        col += iso.z_basis.size();
    }
    Recovered out;
    std::vector<std::pair<Point, RepLabel>> raw;
    if (!cols.empty()) {
        auto c = Coordinatizer(cols, count).try_coords(split.lambda);
        if (!c) throw RepError("the one-dimensional factor is not an evaluation character");
        col = 0;
        for (const auto& iso : isos) {
            Vec v(c->begin() + col, c->begin() + col + iso.z_basis.size());
            raw.emplace_back(iso.x, RepLabel::one_dim(v));
            col += iso.z_basis.size();
        }
    } else if (std::any_of(split.lambda.begin(), split.lambda.end(), [](const Scalar& s) { return !s.is_zero(); })) {
        throw RepError("the one-dimensional factor is not an evaluation character");
    }
    out.lambda = canonicalize_psi(B, raw);
    size_t total = 0, invalid = 0;
    for (const auto& f : enumerate_functions(B, pool, labels, total, invalid)) {
        MatrixRep e = ev_psi(w, f, count);
        if (e.dim != split.rho2.dim) continue;
        if (intertwiner_dimension(e, split.rho2) == 1) {
            if (out.matches == 0) out.psi = f;
            ++out.matches;
        }
    }
    if (out.matches == 0) throw RepError("no candidate over the pool matches the semisimple factor");
    return out;
}

DrinfeldTuple DrinfeldTuple::normalized() const {
    DrinfeldTuple out;
    for (const auto& p : polys) {
        std::vector<std::pair<Scalar, int>> merged;
        for (const auto& [x, n] : p) {
            if (x.is_zero()) throw DomainError("Drinfeld factor points must be nonzero");
            if (n < 0) throw DomainError("Drinfeld exponents must be nonnegative");
            auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& e) { return e.first == x; });
            if (it == merged.end()) merged.emplace_back(x, n);
            else it->second += n;
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& e) { return e.second == 0; }),
                     merged.end());
        std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return text_less(a.first, b.first); });
        out.polys.push_back(merged);
    }
    return out;
}

std::string DrinfeldTuple::str() const {
    std::string s = "(";
    for (size_t j = 0; j < polys.size(); ++j) {
        s += j ? ", " : "";
        if (polys[j].empty()) s += "1";
        for (const auto& [x, n] : polys[j]) {
            std::string f;
            if (x.is_rational() && x.rational() < 0) f = "(1 + " + (-x).str() + "u)";
            else if (x.is_rational()) f = "(1 - " + x.str() + "u)";
            else f = "(1 - (" + x.str() + ")u)";
            s += f + (n == 1 ? "" : "^" + std::to_string(n));
        }
    }
    return s + ")";
}

namespace {

void require_loop(const GroupActionBundle& B) {
    if (B.group().order() != 1) throw NotApplicable("Drinfeld tuples are implemented for untwisted loop algebras only");
    if (!B.lie().cartan()) throw NotApplicable("Drinfeld tuples need a Lie algebra given by a Cartan type");
}

}  // namespace

EquivariantFunction drinfeld_to_psi(const GroupActionBundle& B, const DrinfeldTuple& pi) {
    require_loop(B);
    const auto& type = B.lie().cartan()->type;
    size_t n = static_cast<size_t>(cartan_rank(type));
    if (pi.polys.size() != n)
        throw DomainError("Drinfeld tuple for " + type + " needs " + std::to_string(n) + " polynomials");
    DrinfeldTuple t = pi.normalized();
    std::vector<std::pair<Scalar, std::vector<int>>> weights;
    for (size_t j = 0; j < n; ++j)
        for (const auto& [x, e] : t.polys[j]) {
            auto it = std::find_if(weights.begin(), weights.end(), [&](const auto& w) { return w.first == x; });
            if (it == weights.end()) {
                weights.emplace_back(x, std::vector<int>(n, 0));
                it = weights.end() - 1;
            }
            it->second[j] = e;
        }
    std::vector<std::pair<Point, RepLabel>> raw;
    for (const auto& [x, wt] : weights) raw.emplace_back(Point{x}, RepLabel::dominant(type, wt));
    return canonicalize_psi(B, raw);
}

DrinfeldTuple psi_to_drinfeld(const GroupActionBundle& B, const EquivariantFunction& psi) {
    require_loop(B);
    const auto& type = B.lie().cartan()->type;
    size_t n = static_cast<size_t>(cartan_rank(type));
    DrinfeldTuple t;
    t.polys.resize(n);
    for (const auto& [x, l] : psi.entries) {
        if (x.size() != 1) throw DomainError("Drinfeld tuples need points of a one-dimensional torus");
        std::vector<int> wt;
        if (l.kind == RepLabel::Kind::DominantWeight && l.type == type) wt = l.weight;
        else if (l.kind == RepLabel::Kind::Sl2 && type == "A1") wt = {l.d};
        else throw UnsupportedLabel("label " + l.str() + " has no Drinfeld reading for " + type);
        for (size_t j = 0; j < n; ++j)
            if (wt[j] > 0) t.polys[j].emplace_back(x[0], wt[j]);
    }
    return t.normalized();
}

}  // namespace emalg
