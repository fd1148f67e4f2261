#include "emalg/emap.hpp"

#include "emalg/invariants.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace emalg {

namespace {

void add_into(std::map<Monomial, Vec>& acc, const Monomial& m, const Vec& v, const Scalar& c) {
    auto it = acc.find(m);
    if (it == acc.end()) it = acc.emplace(m, Vec(v.size())).first;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) it->second[i] += c * v[i];
    if (is_zero(it->second)) acc.erase(it);
}

SparseVec sorted(SparseVec v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

}  // namespace

MapElement map_bracket(const LieAlgebra& L, const GradedRing& R, const MapElement& a, const MapElement& b) {
    MapElement out;
    for (const auto& [m1, u] : a.terms)
        for (const auto& [m2, v] : b.terms) {
            Vec w = L.bracket(u, v);
            if (is_zero(w)) continue;
            RingElement f = R.mul(R.monomial(m1), R.monomial(m2));
            for (const auto& [m, c] : f.terms) add_into(out.terms, m, w, c);
        }
    return out;
}

MapElement map_act(const GroupActionBundle& B, size_t g, const MapElement& a) {
    MapElement out;
    const auto& R = B.ring();
    for (const auto& [m, v] : a.terms) {
        Vec gv = B.lie_action(g).apply(v);
        for (const auto& [mm, c] : B.act_on_ring(g, R.monomial(m)).terms) add_into(out.terms, mm, gv, c);
    }
    return out;
}

MapElement map_scale(const MapElement& a, const Scalar& c) {
    if (c.is_zero()) return {};
    MapElement out = a;
    for (auto& [m, v] : out.terms)
        for (auto& x : v) x *= c;
    return out;
}

MapElement map_add(const MapElement& a, const MapElement& b) {
    MapElement out = a;
    for (const auto& [m, v] : b.terms) add_into(out.terms, m, v, Scalar(1));
    return out;
}

MapElement map_reynolds(const GroupActionBundle& B, const MapElement& a) {
    MapElement acc;
    for (size_t g = 0; g < B.group().order(); ++g) acc = map_add(acc, map_act(B, g, a));
    return map_scale(acc, Scalar(1, static_cast<long>(B.group().order())));
}

Vec map_evaluate(const GradedRing& R, const MapElement& a, const Point& x) {
    Vec out;
    for (const auto& [m, v] : a.terms) {
        if (out.empty()) out.assign(v.size(), Scalar());
        Scalar f = R.evaluate(R.monomial(m), x);
        for (size_t i = 0; i < v.size(); ++i) out[i] += f * v[i];
    }
    return out;
}

std::string map_str(const LieAlgebra& L, const GradedRing& R, const MapElement& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& [m, v] : a.terms) {
        std::string lie;
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero()) continue;
            std::string c = v[i].str();
            std::string term = v[i].is_one() ? L.labels()[i]
                               : (-v[i]).is_one() ? "-" + L.labels()[i]
                               : (v[i].is_rational() ? c : "(" + c + ")") + "*" + L.labels()[i];
            if (lie.empty()) lie = term;
            else if (term[0] == '-') lie += " - " + term.substr(1);
            else lie += " + " + term;
        }
        std::string t = "(" + lie + ")(x)" + R.str_monomial(m);
        out += (out.empty() ? "" : " + ") + t;
    }
    return out;
}

int degree_norm(const Degree& d) {
    int n = 0;
    for (int x : d) n = std::max(n, std::abs(x));
    return n;
}

// ---------------------------------------------------------------------------

MapAlgebraWindow::MapAlgebraWindow(std::shared_ptr<const GroupActionBundle> B, int max_norm) : B_(std::move(B)) {
    if (!B_->ring().windowable())
        throw WindowUnsupported("window-unsupported: " + B_->ring().family_name() + " has no window grading");
    if (max_norm < 0) throw std::invalid_argument("window norm must be nonnegative");
    build(B_->ring().window(-max_norm, max_norm), max_norm);
}

MapAlgebraWindow::MapAlgebraWindow(std::shared_ptr<const GroupActionBundle> B, int lo, int hi) : B_(std::move(B)) {
    if (!B_->ring().windowable())
        throw WindowUnsupported("window-unsupported: " + B_->ring().family_name() + " has no window grading");
    if (lo > hi) throw std::invalid_argument("empty window");
    build(B_->ring().window(lo, hi), INT_MAX);
}

void MapAlgebraWindow::build(const std::vector<Degree>& degrees, int max_norm) {
    const auto& R = B_->ring();
    const auto& L = B_->lie();
    auto rep = ring_action(*B_);
    if (!rep.grading_preserved) throw WindowUnsupported("window-unsupported: the action does not permute graded pieces");
    std::set<std::vector<Degree>> orbits;
    for (const auto& d : saturate(*B_, degrees)) orbits.insert(saturate(*B_, {d}));
    for (const auto& o : orbits) {
        if (R.piece(o.front()).empty()) continue;
        DegreeBlock b;
        b.degrees = o;
        for (const auto& d : o) b.norm = std::max(b.norm, degree_norm(d));
        if (b.norm > max_norm) continue;
        blocks_.push_back(std::move(b));
    }
    std::sort(blocks_.begin(), blocks_.end(), [](const DegreeBlock& a, const DegreeBlock& b) {
        return a.norm != b.norm ? a.norm < b.norm : a.degrees < b.degrees;
    });
    size_t n = L.dim();
    block_cols_.assign(blocks_.size(), {0, 0});
    for (size_t k = blocks_.size(); k-- > 0;) {
        uint32_t start = static_cast<uint32_t>(ncols_);
        for (const auto& d : blocks_[k].degrees)
            for (const auto& m : R.piece(d)) {
                base_[m] = static_cast<uint32_t>(ncols_);
                mono_block_[m] = k;
                ncols_ += n;
            }
        block_cols_[k] = {start, static_cast<uint32_t>(ncols_)};
    }
    for (size_t k = 0; k < blocks_.size(); ++k) {
        auto& b = blocks_[k];
        SparseEchelon ech;
        std::vector<Vec> dense;
        auto [c0, c1] = block_cols_[k];
        for (const auto& m : R.piece(b.degrees.front()))
            for (size_t i = 0; i < n; ++i) {
                MapElement a;
                a.terms[m] = L.unit(i);
                MapElement r = map_reynolds(*B_, a);
                if (r.is_zero()) continue;
                SparseVec v = raw(r);
                if (!ech.add(v)) continue;
                Scalar lead = v.front().second;
                auto it = r.terms.find(m);
                if (it != r.terms.end() && !it->second[i].is_zero()) lead = it->second[i];
                r = map_scale(r, lead.inverse());
                Vec d(c1 - c0);
                for (const auto& [c, x] : raw(r)) d[c - c0] = x;
                dense.push_back(std::move(d));
                b.basis.push_back(std::move(r));
            }
        first_.push_back(elems_.size());
        for (const auto& e : b.basis) {
            elems_.push_back(e);
            owner_.push_back(k);
        }
        coord_.emplace_back(dense, c1 - c0);
    }
}

size_t MapAlgebraWindow::count_up_to(int n) const {
    size_t c = 0;
    for (size_t i = 0; i < elems_.size(); ++i)
        if (norm_of(i) <= n) ++c;
    return c;
}

std::string MapAlgebraWindow::label(size_t i) const {
    size_t b = owner_.at(i);
    std::string d = "(";
    const auto& deg = blocks_[b].degrees.front();
    for (size_t k = 0; k < deg.size(); ++k) d += (k ? "," : "") + std::to_string(deg[k]);
    return "M" + d + ")#" + std::to_string(i - first_[b]);
}

SparseVec MapAlgebraWindow::raw(const MapElement& a) const {
    SparseVec v;
    for (const auto& [m, x] : a.terms) {
        auto it = base_.find(m);
        if (it == base_.end()) throw WindowError("product degree outside the window (monomial " + B_->ring().str_monomial(m) + ")");
        for (size_t i = 0; i < x.size(); ++i)
            if (!x[i].is_zero()) v.push_back({it->second + static_cast<uint32_t>(i), x[i]});
    }
    return sorted(std::move(v));
}

MapElement MapAlgebraWindow::from_raw(const SparseVec& v) const {
    size_t n = B_->lie().dim();
    std::map<uint32_t, Monomial> by_base;
    for (const auto& [m, b] : base_) by_base.emplace(b, m);
    MapElement out;
    for (const auto& [c, x] : v) {
        auto it = std::prev(by_base.upper_bound(c));
        auto& slot = out.terms[it->second];
        if (slot.empty()) slot.assign(n, Scalar());
        slot[c - it->first] += x;
    }
    return out;
}

size_t MapAlgebraWindow::block_of_column(uint32_t c) const {
    // blocks occupy consecutive column ranges in reverse block order
    size_t lo = 0, hi = block_cols_.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (c >= block_cols_[mid].second) hi = mid;
        else if (c < block_cols_[mid].first) lo = mid + 1;
        else return mid;
    }
    throw std::out_of_range("column outside the window");
}

Vec MapAlgebraWindow::coords(const MapElement& a) const {
    Vec out(elems_.size());
    SparseVec v = raw(a);
    std::map<size_t, Vec> parts;
    for (const auto& [c, x] : v) {
        size_t k = block_of_column(c);
        auto& d = parts[k];
        if (d.empty()) d.assign(block_cols_[k].second - block_cols_[k].first, Scalar());
        d[c - block_cols_[k].first] = x;
    }
    for (const auto& [k, d] : parts) {
        auto c = coord_[k].try_coords(d);
        if (!c) throw WindowError("element is not in the span of the window basis");
        for (size_t j = 0; j < c->size(); ++j) out[first_[k] + j] = (*c)[j];
    }
    return out;
}

bool MapAlgebraWindow::contains(const MapElement& a) const {
    try {
        coords(a);
        return true;
    } catch (const WindowError&) {
        return false;
    }
}

MapElement MapAlgebraWindow::bracket(size_t i, size_t j) const {
    MapElement r = map_bracket(B_->lie(), B_->ring(), element(i), element(j));
    raw(r);  // range check
    return r;
}

Vec MapAlgebraWindow::bracket_coords(size_t i, size_t j) const { return coords(bracket(i, j)); }

// ---------------------------------------------------------------------------

namespace {

// rows whose leading column falls in block k contribute to the k-th graded piece
std::vector<size_t> pivot_counts(const MapAlgebraWindow& w, const SparseEchelon& e) {
    std::vector<size_t> c(w.blocks().size(), 0);
    for (uint32_t p : e.pivots()) ++c[w.block_of_column(p)];
    return c;
}

SparseVec restrict_to(const SparseVec& v, uint32_t c0, uint32_t c1) {
    SparseVec r;
    for (const auto& e : v)
        if (e.first >= c0 && e.first < c1) r.push_back(e);
    return r;
}

// representatives of (top parts of 'upper' rows in block k) modulo (top parts of 'lower' rows)
std::vector<SparseVec> classes_in_block(const MapAlgebraWindow& w, size_t k, const std::vector<SparseVec>& lower,
                                        const std::vector<SparseVec>& upper) {
    auto [c0, c1] = w.block_columns(k);
    SparseEchelon e;
    for (const auto& r : lower)
        if (!r.empty() && w.block_of_column(r.front().first) == k) e.add(restrict_to(r, c0, c1));
    std::vector<SparseVec> out;
    for (const auto& r : upper) {
        if (r.empty() || w.block_of_column(r.front().first) != k) continue;
        if (e.add(restrict_to(r, c0, c1))) out.push_back(r);
    }
    return out;
}

}  // namespace

DerivedWindowReport derived_window(std::shared_ptr<const GroupActionBundle> B, int target, int depth, int step) {
    if (target < 0 || depth < target) throw std::invalid_argument("source depth must be at least the target norm");
    if (step <= 0) throw std::invalid_argument("depth step must be positive");
    DerivedWindowReport rep;
    rep.target = target;
    rep.depths = {depth, depth + step, depth + 2 * step};
    int dmax = rep.depths.back();
    auto w = std::make_shared<MapAlgebraWindow>(B, 2 * dmax);
    rep.window = w;
    const auto& L = B->lie();
    const auto& R = B->ring();
    SparseEchelon ech;
    std::vector<std::vector<size_t>> readings;
    int prev = -1;
    for (int D : rep.depths) {
        size_t m = w->count_up_to(D);
        for (size_t j = 0; j < m; ++j)
            for (size_t i = 0; i < j; ++i) {
                if (std::max(w->norm_of(i), w->norm_of(j)) <= prev) continue;
                MapElement br = map_bracket(L, R, w->element(i), w->element(j));
                if (!br.is_zero()) ech.add(w->raw(br));
            }
        readings.push_back(pivot_counts(*w, ech));
        prev = D;
    }
    rep.derived_rows = ech.rows();
    rep.all_stable = true;
    for (size_t k = 0; k < w->blocks().size(); ++k) {
        const auto& b = w->blocks()[k];
        if (b.norm > target) continue;
        DerivedRow row;
        row.block = k;
        row.norm = b.norm;
        row.degrees = b.degrees;
        row.dim_m = b.basis.size();
        for (const auto& r : readings) {
            row.derived.push_back(r[k]);
            row.quotient.push_back(row.dim_m - r[k]);
        }
        row.stable = row.derived[0] == row.derived[1] && row.derived[1] == row.derived[2];
        rep.all_stable = rep.all_stable && row.stable;
        if (row.stable) {
            std::vector<SparseVec> basis_raw;
            for (const auto& e : b.basis) basis_raw.push_back(w->raw(e));
            for (const auto& v : classes_in_block(*w, k, rep.derived_rows, basis_raw)) row.classes.push_back(w->from_raw(v));
        }
        rep.total_quotient += row.quotient.back();
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// ---------------------------------------------------------------------------

Vec PointIsotropy::split_coords(const Vec& v) const { return coord.coords(v); }

Vec PointIsotropy::z_coords(const Vec& v) const {
    Vec c = split_coords(v);
    return Vec(c.begin() + static_cast<long>(derived.dim()), c.end());
}

PointIsotropy point_isotropy(const GroupActionBundle& B, const Point& x) {
    PointIsotropy p;
    p.x = x;
    p.stabilizer = B.stabilizer(x);
    std::vector<LieAutomorphism> autos;
    for (size_t g : p.stabilizer) autos.push_back(B.lie_action(g));
    const auto& L = B.lie();
    p.gx = fixed_subalgebra(L, autos);
    p.derived = derived_subspace(L, p.gx);
    Subspace acc = p.derived;
    for (const auto& v : p.gx.basis())
        if (acc.add(v)) p.z_basis.push_back(v);
    std::vector<Vec> fam = p.derived.basis();
    fam.insert(fam.end(), p.z_basis.begin(), p.z_basis.end());
    p.coord = Coordinatizer(fam, L.dim());
    return p;
}

namespace {

void check_distinct_orbits(const GroupActionBundle& B, const std::vector<Point>& pts) {
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (B.same_orbit(pts[i], pts[j]))
                throw DomainError("points " + point_str(pts[i]) + " and " + point_str(pts[j]) +
                                  " share a Gamma-orbit; evaluation needs points of X_n in distinct orbits");
}

}  // namespace

EvaluationReport evaluation_map(const MapAlgebraWindow& w, const std::vector<Point>& points) {
    const auto& B = w.bundle();
    check_distinct_orbits(B, points);
    EvaluationReport rep;
    rep.points = points;
    std::vector<Vec> rows;
    for (const auto& x : points) {
        PointIsotropy iso = point_isotropy(B, x);
        rep.target_dim += iso.gx.dim();
        std::vector<Vec> cols;
        for (size_t i = 0; i < w.dim(); ++i) {
            Vec v = map_evaluate(B.ring(), w.element(i), x);
            if (!iso.gx.contains(v)) {
                rep.contained = false;
                cols.push_back(Vec(iso.gx.dim()));
                continue;
            }
            cols.push_back(iso.gx.coords(v));
        }
        for (size_t r = 0; r < iso.gx.dim(); ++r) {
            Vec row(w.dim());
            for (size_t i = 0; i < w.dim(); ++i) row[i] = cols[i][r];
            rows.push_back(std::move(row));
        }
    }
    rep.matrix = Matrix::from_rows(rows, w.dim());
    rep.rank = rows.empty() ? 0 : rank(rep.matrix);
    rep.surjective = rep.rank == rep.target_dim;
    return rep;
}

GammaReport gamma_kernel(const DerivedWindowReport& d, const std::vector<Point>& reps) {
    const auto& w = *d.window;
    const auto& B = w.bundle();
    check_distinct_orbits(B, reps);
    GammaReport g;
    size_t ncols = w.count_up_to(d.target);
    std::vector<Vec> rows;
    for (const auto& x : reps) {
        PointIsotropy iso = point_isotropy(B, x);
        g.z_dim += iso.z_basis.size();
        std::vector<Vec> cols;
        for (size_t i = 0; i < ncols; ++i) cols.push_back(iso.z_coords(map_evaluate(B.ring(), w.element(i), x)));
        for (size_t r = 0; r < iso.z_basis.size(); ++r) {
            Vec row(ncols);
            for (size_t i = 0; i < ncols; ++i) row[i] = cols[i][r];
            rows.push_back(std::move(row));
        }
        // [M,M] lies in M^d: derived rows inside the target evaluate into [g^x, g^x]
        for (const auto& r : d.derived_rows) {
            if (w.blocks()[w.block_of_column(r.front().first)].norm > d.target) continue;
            if (!is_zero(iso.z_coords(map_evaluate(B.ring(), w.from_raw(r), x)))) g.derived_in_md = false;
        }
        g.points.push_back(std::move(iso));
    }
    Matrix gm = Matrix::from_rows(rows, ncols);
    g.gamma_rank = rows.empty() ? 0 : rank(gm);
    g.surjective = g.gamma_rank == g.z_dim;
    std::vector<Vec> kernel;
    if (rows.empty()) {
        for (size_t i = 0; i < ncols; ++i) {
            Vec e(ncols);
            e[i] = Scalar(1);
            kernel.push_back(e);
        }
    } else {
        kernel = kernel_basis(gm).basis();
    }
    SparseEchelon md;
    std::vector<SparseVec> md_rows;
    for (const auto& kv : kernel) {
        MapElement a;
        for (size_t i = 0; i < ncols; ++i)
            if (!kv[i].is_zero()) a = map_add(a, map_scale(w.element(i), kv[i]));
        if (a.is_zero()) continue;
        md.add(w.raw(a));
    }
    md_rows = md.rows();
    auto md_counts = pivot_counts(w, md);
    for (const auto& row : d.rows) {
        size_t der = row.derived.back(), m = md_counts[row.block];
        size_t ker = m >= der ? m - der : 0;
        if (m < der) g.derived_in_md = false;
        g.rows.push_back({row.block, row.norm, m, der, ker});
        g.kernel_dim += ker;
        for (const auto& v : classes_in_block(w, row.block, d.derived_rows, md_rows))
            g.kernel_classes.push_back(w.from_raw(v));
    }
    g.md_quotient_dim = g.kernel_dim;
    return g;
}

// ---------------------------------------------------------------------------

std::string PerfectnessCertificate::verdict() const {
    if (satisfied.empty()) return "Inconclusive";
    return "PerfectBy(" + std::to_string(satisfied.front()) + ")";
}

PerfectnessCertificate perfectness_certificate(const GroupActionBundle& B) {
    PerfectnessCertificate cert;
    const auto& L = B.lie();
    const auto& G = B.group();
    size_t n = L.dim();
    std::vector<LieAutomorphism> gens;
    for (size_t s = 0; s < G.generator_count(); ++s) gens.push_back(B.lie_action(G.generator(s)));
    Subspace fixed = fixed_subalgebra(L, gens);
    Subspace full = Subspace::full(n);

    Subspace br = bracket_span(L, fixed, full);
    if (br == full) {
        cert.satisfied.push_back(1);
        cert.evidence.push_back("[g^G, g] = g (dim " + std::to_string(n) + ")");
    } else {
        cert.evidence.push_back("[g^G, g] has dim " + std::to_string(br.dim()) + " < " + std::to_string(n));
    }

    StructureReport st = analyze_structure(L);
    bool simple = st.semisimple && st.ideal_dims.size() == 1;
    bool fixed_perfect = fixed.dim() > 0 && derived_subspace(L, fixed) == fixed;
    bool no_trivial = false;
    if (simple && fixed_perfect) {
        // g_G spanned by v - (Reynolds v)
        std::vector<Vec> comp;
        for (size_t i = 0; i < n; ++i) {
            Vec e = L.unit(i), r(n);
            for (size_t g = 0; g < G.order(); ++g) {
                Vec ge = B.lie_action(g).apply(e);
                for (size_t k = 0; k < n; ++k) r[k] += ge[k];
            }
            for (size_t k = 0; k < n; ++k) e[k] -= r[k] / Scalar(static_cast<long>(G.order()));
            comp.push_back(e);
        }
        Subspace gG = Subspace::span(comp, n);
        // c with sum_k c_k [y, w_k] = 0 for every y in g^G
        std::vector<Vec> eq_rows;
        for (const auto& y : fixed.basis()) {
            std::vector<Vec> img;
            for (const auto& wk : gG.basis()) img.push_back(L.bracket(y, wk));
            for (size_t r = 0; r < n; ++r) {
                Vec row(gG.dim());
                for (size_t k = 0; k < gG.dim(); ++k) row[k] = img[k][r];
                eq_rows.push_back(std::move(row));
            }
        }
        no_trivial = gG.dim() == 0 || kernel_basis(Matrix::from_rows(eq_rows, gG.dim())).dim() == 0;
    }
    if (simple && fixed_perfect && no_trivial) {
        cert.satisfied.push_back(2);
        cert.evidence.push_back("g simple, g^G perfect of dim " + std::to_string(fixed.dim()) +
                                ", no trivial g^G-submodule in g_G");
    } else {
        cert.evidence.push_back(std::string("condition 2 fails: ") + (!simple ? "g not simple" : !fixed_perfect ? "g^G not perfect" : "trivial submodule in g_G"));
    }

    bool diagram = false;
    if (B.diagram_action() && L.cartan()) {
        // each generator must permute the Chevalley generators e_i
        const auto& cd = *L.cartan();
        diagram = true;
        for (const auto& a : gens) {
            for (size_t i : cd.e_index) {
                Vec img = a.apply(L.unit(i));
                bool hit = false;
                for (size_t j : cd.e_index)
                    if (img == L.unit(j)) hit = true;
                if (!hit) diagram = false;
            }
        }
    }
    if (diagram) {
        cert.satisfied.push_back(3);
        cert.evidence.push_back("Gamma acts by diagram automorphisms");
    } else {
        cert.evidence.push_back("condition 3 fails: no verified diagram action");
    }
    return cert;
}

}  // namespace emalg
