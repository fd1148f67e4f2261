#include "emalg/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace emalg {

namespace {

using Json = nlohmann::ordered_json;

std::string cell_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_null()) return "-";
    if (v.is_array()) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + cell_text(v[i]);
        return s.empty() ? "-" : s;
    }
    return v.dump();
}

// Accumulates one report in both forms.
class Builder {
public:
    Builder(const Session& S, const std::string& echo, unsigned long seed) {
        rec_["command"] = echo;
        rec_["config"] = {{"name", S.name}, {"digest", S.digest}};
        rec_["conductor"] = S.conductor;
        rec_["seed"] = seed;
        rec_["summary"] = Json::object();
        rec_["tables"] = Json::object();
        rec_["evidence"] = Json::array();
        rec_["stability"] = Json::object();
        head_ << "command: " << echo << "\n";
        head_ << "config: " << S.name << " (digest " << S.digest << ")\n";
        head_ << "conductor: " << S.conductor << "\n";
        head_ << "seed: " << seed << "\n";
    }

    void kv(const std::string& key, Json value) {
        summary_.emplace_back(key, cell_text(value));
        rec_["summary"][key] = std::move(value);
    }

    void table(const std::string& name, const std::vector<std::string>& columns, const std::vector<Json>& rows) {
        Json t;
        t["columns"] = columns;
        t["rows"] = Json::array();
        std::vector<std::vector<std::string>> cells{columns};
        for (const auto& r : rows) {
            t["rows"].push_back(r);
            std::vector<std::string> line;
            for (const auto& c : r) line.push_back(cell_text(c));
            cells.push_back(std::move(line));
        }
        rec_["tables"][name] = std::move(t);
        std::vector<size_t> width(columns.size(), 0);
        for (const auto& line : cells)
            for (size_t j = 0; j < line.size() && j < width.size(); ++j) width[j] = std::max(width[j], line[j].size());
        std::ostringstream out;
        out << "\n[table " << name << "]\n";
        for (size_t i = 0; i < cells.size(); ++i) {
            std::string line;
            for (size_t j = 0; j < cells[i].size(); ++j) {
                std::string c = cells[i][j];
                if (j + 1 < cells[i].size()) c.resize(width[j], ' ');
                line += (j ? "  " : "") + c;
            }
            out << line << "\n";
            if (i == 0) {
                std::string rule;
                for (size_t j = 0; j < width.size(); ++j) rule += (j ? "  " : "") + std::string(width[j], '-');
                out << rule << "\n";
            }
        }
        tables_ += out.str();
    }

    void evidence(const std::string& e) {
        evidence_.push_back(e);
        rec_["evidence"].push_back(e);
    }

    void stability(const std::string& key, Json value) {
        stability_.emplace_back(key, cell_text(value));
        rec_["stability"][key] = std::move(value);
    }

    Report finish() const {
        std::ostringstream out;
        out << head_.str() << "\n[summary]\n";
        size_t w = 0;
        for (const auto& [k, v] : summary_) w = std::max(w, k.size());
        for (const auto& [k, v] : summary_) out << k << ":" << std::string(w - k.size() + 1, ' ') << v << "\n";
        out << tables_;
        out << "\n[evidence]\n";
        if (evidence_.empty()) out << "- none\n";
        for (const auto& e : evidence_) out << "- " << e << "\n";
        out << "\n[stability]\n";
        if (stability_.empty()) out << "exact: no window truncation involved\n";
        for (const auto& [k, v] : stability_) out << k << ": " << v << "\n";
        return {out.str(), rec_.dump(2) + "\n"};
    }

private:
    Json rec_;
    std::ostringstream head_;
    std::vector<std::pair<std::string, std::string>> summary_, stability_;
    std::string tables_;
    std::vector<std::string> evidence_;
};

std::string degree_str(const Degree& d) {
    if (d.size() == 1) return std::to_string(d[0]);
    std::string s = "(";
    for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

Json degrees_json(const std::vector<Degree>& ds) {
    Json a = Json::array();
    for (const auto& d : ds) a.push_back(degree_str(d));
    return a;
}

Json points_json(const std::vector<Point>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(point_str(x));
    return a;
}

std::string subgroup_name(const FiniteGroup& G, const std::vector<size_t>& H) {
    std::string s = "{";
    for (size_t i = 0; i < H.size(); ++i) s += (i ? "," : "") + G.label(H[i]);
    return s + "}";
}

struct Context {
    const Session& S;
    const RunOptions& opt;
    unsigned long seed;
    const GroupActionBundle& B() const { return *S.bundle; }

    std::pair<int, int> window() const {
        if (opt.window) return *opt.window;
        return {S.window.lo, S.window.hi};
    }
    int target() const {
        auto [lo, hi] = window();
        return std::max(1, std::max(std::abs(lo), std::abs(hi)));
    }
    int depth() const {
        if (opt.depth) return *opt.depth;
        if (S.window.depth > 0) return S.window.depth;
        return 2 * target();
    }
    std::vector<Point> points() const {
        if (opt.points.empty()) {
            if (S.points.empty()) throw UsageError("no points: pass --point or add 'points' to the config");
            return S.points;
        }
        std::vector<Point> out;
        for (const auto& p : opt.points) out.push_back(lift_point(parse_point_text(B().ring(), p), S.conductor));
        return out;
    }
    std::shared_ptr<MapAlgebraWindow> map_window() const {
        auto [lo, hi] = window();
        return std::make_shared<MapAlgebraWindow>(S.bundle, lo, hi);
    }
};

void cmd_analyze_structure(const Context& c, Builder& b) {
    const LieAlgebra& L = c.B().lie();
    auto r = analyze_structure(L, c.seed);
    b.kv("algebra", L.name());
    b.kv("dim", r.dim);
    b.kv("derived dim", r.derived_dim);
    b.kv("center dim", r.center_dim);
    b.kv("killing rank", r.killing_rank);
    b.kv("rank estimate", r.rank_estimate);
    b.kv("centroid dim", r.centroid_dim);
    b.kv("reductive", r.reductive);
    b.kv("semisimple", r.semisimple);
    b.kv("type", r.label);
    std::vector<Json> rows;
    for (size_t i = 0; i < r.ideal_dims.size(); ++i)
        rows.push_back(Json::array({i, r.ideal_dims[i], i < r.ideal_types.size() ? r.ideal_types[i] : "?"}));
    b.table("ideals", {"ideal", "dim", "type"}, rows);
    if (L.cartan()) b.evidence("Chevalley basis signs: " + L.cartan()->sign_convention);
    b.evidence("simple ideals split by a generic centroid element; types matched on dim, rank and Killing form");
    if (!r.notes.empty()) b.evidence(r.notes);
}

void cmd_fixed_subalgebra(const Context& c, Builder& b) {
    const auto& G = c.B().group();
    const LieAlgebra& L = c.B().lie();
    std::vector<Json> rows;
    for (const auto& H : subgroup_classes(G)) {
        std::vector<LieAutomorphism> autos;
        for (size_t h : H) autos.push_back(c.B().lie_action(h));
        Subspace s = fixed_subalgebra(L, autos);
        auto r = analyze_structure(L, s, c.seed);
        rows.push_back(Json::array({H.size(), subgroup_name(G, H), r.dim, r.derived_dim, r.derived_dim == r.dim, r.label}));
        if (H.size() == G.order()) {
            b.kv("group order", G.order());
            b.kv("dim g^G", r.dim);
            b.kv("type g^G", r.label);
            b.kv("center dim", r.center_dim);
        }
    }
    b.table("fixed subalgebras", {"|H|", "H", "dim g^H", "dim [g^H,g^H]", "perfect", "type"}, rows);
    b.evidence("g^H is the common fixed space of the Lie actions of the elements of H");
}

DerivedWindowReport run_derived(const Context& c, Builder& b) {
    auto d = derived_window(c.S.bundle, c.target(), c.depth());
    std::vector<Json> rows;
    for (const auto& r : d.rows) {
        Json readings = Json::array();
        for (size_t q : r.quotient) readings.push_back(q);
        rows.push_back(Json::array({degrees_json(r.degrees), r.norm, r.dim_m, r.derived.back(), r.quotient.back(),
                                    readings, r.stable}));
    }
    b.table("derived window", {"degree", "norm", "dim M_d", "dim [M,M]_d", "dim quotient", "readings", "stable?"},
            rows);
    std::vector<Json> classes;
    for (const auto& r : d.rows)
        for (const auto& m : r.classes)
            classes.push_back(Json::array({degrees_json(r.degrees), map_str(c.B().lie(), c.B().ring(), m)}));
    if (!classes.empty()) b.table("quotient classes", {"degree", "representative"}, classes);
    Json depths = Json::array();
    for (int x : d.depths) depths.push_back(x);
    b.stability("depths", depths);
    b.stability("all rows stable", d.all_stable);
    size_t unstable = 0;
    for (const auto& r : d.rows) unstable += !r.stable;
    b.stability("unstable rows", unstable);
    return d;
}

void cmd_derived(const Context& c, Builder& b) {
    auto d = run_derived(c, b);
    b.kv("target norm", d.target);
    b.kv("source depth", d.depths.front());
    b.kv("dim M/[M,M] on window", d.total_quotient);
    b.evidence("[M,M] read per block through the associated graded of the norm filtration");
    auto t = tilde_analysis(c.B());
    if ((t.verdict == TildeVerdict::Finite || t.verdict == TildeVerdict::Empty) && t.representatives_complete) {
        auto g = gamma_kernel(d, t.representatives);
        b.kv("X-tilde", tilde_name(t.verdict));
        b.kv("M^d/[M,M]", g.md_quotient_dim);
        b.evidence(t.representatives.empty()
                       ? "X-tilde is empty, so M^d = M"
                       : "M^d = kernel of evaluation at the X-tilde representatives " +
                             cell_text(points_json(t.representatives)));
    } else {
        b.kv("X-tilde", tilde_name(t.verdict));
        b.kv("M^d/[M,M]", "not applicable");
    }
}

TildeReport run_tilde(const Context& c, Builder& b) {
    auto t = tilde_analysis(c.B());
    std::vector<Json> rows;
    for (const auto& r : t.rows) {
        std::string locus = locus_name(r.locus.kind);
        if (r.locus.kind == LocusKind::Finite) locus += " " + cell_text(points_json(r.locus.points));
        if (r.locus.kind == LocusKind::Infinite && r.locus.dimension >= 0)
            locus += " (dim " + std::to_string(r.locus.dimension) + ")";
        for (const auto& m : r.locus.missing) locus += "; " + m;
        rows.push_back(Json::array({r.subgroup.size(), r.name, r.gH_dim, r.perfect, locus, locus_name(r.stratum),
                                    points_json(r.stratum_points), r.contributes}));
    }
    b.table("strata", {"|H|", "H", "dim g^H", "g^H perfect?", "fixed locus", "stratum", "stratum points",
                       "contributes to X-tilde?"},
            rows);
    return t;
}

void cmd_tilde(const Context& c, Builder& b) {
    auto t = run_tilde(c, b);
    b.kv("verdict", tilde_name(t.verdict));
    b.kv("representatives", points_json(t.representatives));
    b.kv("representatives complete", t.representatives_complete);
    b.evidence("X-tilde is the union of strata X_H (stabilizer exactly H) with g^H not perfect");
    if (!t.note.empty()) b.evidence(t.note);
}

void cmd_gamma(const Context& c, Builder& b) {
    auto t = tilde_analysis(c.B());
    if (!((t.verdict == TildeVerdict::Finite || t.verdict == TildeVerdict::Empty) && t.representatives_complete))
        throw NotApplicable("gamma needs a finite X-tilde with representable points; verdict is " +
                            tilde_name(t.verdict));
    auto d = run_derived(c, b);
    auto g = gamma_kernel(d, t.representatives);
    b.kv("X-tilde representatives", points_json(t.representatives));
    b.kv("dim sum z^x", g.z_dim);
    b.kv("gamma rank", g.gamma_rank);
    b.kv("gamma surjective", g.surjective);
    b.kv("[M,M] inside M^d", g.derived_in_md);
    b.kv("dim ker gamma", g.kernel_dim);
    std::vector<Json> pts;
    for (const auto& p : g.points)
        pts.push_back(Json::array({point_str(p.x), p.stabilizer.size(), p.gx.dim(), p.derived.dim(), p.z_basis.size()}));
    b.table("isotropy", {"x", "|G_x|", "dim g^x", "dim [g^x,g^x]", "dim z^x"}, pts);
    std::vector<Json> rows;
    for (const auto& r : g.rows)
        rows.push_back(Json::array({degrees_json(d.window->blocks()[r.block].degrees), r.norm, r.md, r.derived, r.kernel}));
    b.table("kernel", {"degree", "norm", "dim M^d", "dim [M,M]", "dim ker"}, rows);
    b.evidence("gamma: M/[M,M] -> sum of z^x = g^x/[g^x,g^x] over X-tilde representatives, kernel M^d/[M,M]");
}

EquivariantFunction psi_of(const Context& c, const std::vector<std::pair<Point, RepLabel>>& raw,
                           const std::string& what) {
    if (raw.empty()) throw UsageError("config has no [[" + what + "]] entries");
    return canonicalize_psi(c.B(), raw);
}

void cmd_eval_rep(const Context& c, Builder& b) {
    auto psi = psi_of(c, c.S.psi, "psi");
    auto w = c.map_window();
    MatrixRep r = ev_psi(*w, psi);
    check_window_rep(*w, r);
    std::vector<Point> pts;
    for (const auto& e : psi.entries) pts.push_back(e.first);
    auto ev = evaluation_map(*w, pts);
    b.kv("Psi", psi.str());
    b.kv("window elements", w->dim());
    b.kv("dim V", r.dim);
    b.kv("evaluation rank", ev.rank);
    b.kv("dim sum g^x", ev.target_dim);
    b.kv("window surjects", ev.surjective);
    b.kv("Burnside irreducible", burnside_irreducible(r));
    std::vector<Json> rows;
    for (const auto& e : psi.entries) {
        auto lr = local_rep(c.B(), e.first, e.second);
        rows.push_back(Json::array({point_str(e.first), e.second.str(), lr.iso.stabilizer.size(), lr.iso.gx.dim(), lr.rep.dim}));
    }
    b.table("factors", {"x", "label", "|G_x|", "dim g^x", "dim"}, rows);
    b.evidence("bracket compatibility checked on window pairs whose bracket stays in the window");
    b.evidence("ev_Psi is the tensor product of the local representations composed with evaluation");
    b.stability("window", cell_text(Json::array({c.window().first, c.window().second})));
}

void cmd_irreducible(const Context& c, Builder& b) {
    if (c.S.psi.empty()) throw UsageError("config has no [[psi]] entries");
    auto w = c.map_window();
    std::vector<Json> rows;
    std::optional<MatrixRep> total;
    for (const auto& [x, l] : c.S.psi) {
        auto lr = local_rep(c.B(), x, l);
        MatrixRep e = evaluation_rep(*w, {lr});
        bool irr = burnside_irreducible(e);
        rows.push_back(Json::array({point_str(x), l.str(), e.dim, irr}));
        total = total ? tensor_rep(*total, e) : e;
    }
    bool distinct = true;
    for (size_t i = 0; i < c.S.psi.size(); ++i)
        for (size_t j = i + 1; j < c.S.psi.size(); ++j)
            if (c.B().same_orbit(c.S.psi[i].first, c.S.psi[j].first)) distinct = false;
    b.table("single-point evaluations", {"x", "label", "dim", "irreducible"}, rows);
    b.kv("points in distinct orbits", distinct);
    b.kv("dim tensor", total->dim);
    b.kv("Burnside irreducible", burnside_irreducible(*total));
    b.kv("dim End", intertwiner_dimension(*total, *total));
    b.evidence(distinct ? "orbit-distinct points: the tensor of evaluations is an evaluation representation"
                        : "two points share an orbit: the tensor need not be irreducible");
    b.stability("window", cell_text(Json::array({c.window().first, c.window().second})));
}

void cmd_intertwine(const Context& c, Builder& b) {
    auto psi = psi_of(c, c.S.psi, "psi");
    auto phi = psi_of(c, c.S.phi, "phi");
    auto w = c.map_window();
    MatrixRep a = ev_psi(*w, psi), r = ev_psi(*w, phi);
    size_t hom = intertwiner_dimension(a, r);
    b.kv("Psi", psi.str());
    b.kv("Phi", phi.str());
    b.kv("dim ev_Psi", a.dim);
    b.kv("dim ev_Phi", r.dim);
    b.kv("dim End ev_Psi", intertwiner_dimension(a, a));
    b.kv("dim End ev_Phi", intertwiner_dimension(r, r));
    b.kv("dim Hom", hom);
    b.kv("Psi = Phi", psi == phi);
    b.evidence("Psi and Phi canonicalized on orbit representatives before comparison");
    b.evidence(hom == (psi == phi ? 1u : 0u) ? "Hom dimension agrees with the equivariant-function comparison"
                                             : "Hom dimension differs from the equivariant-function comparison");
    b.stability("window", cell_text(Json::array({c.window().first, c.window().second})));
}

void cmd_classify(const Context& c, Builder& b) {
    int depth = c.opt.depth ? *c.opt.depth : c.S.window.depth;
    auto r = classification_regime(c.S.bundle, depth);
    b.kv("regime", regime_name(r.regime));
    b.kv("X-tilde representatives", points_json(r.tilde_points));
    if (r.regime == Regime::FiniteTilde) b.kv("dim ker gamma", r.kernel_dim);
    b.kv("all irreducibles are evaluation", r.all_evaluation);
    for (const auto& e : r.evidence) b.evidence(e);
    bool windowed = false;
    for (const auto& e : r.evidence)
        if (e.rfind("window depth", 0) == 0) windowed = true;
    bool stable = true;
    for (const auto& e : r.evidence)
        if (e.find("not stable") != std::string::npos || e.find("did not stabilize") != std::string::npos) stable = false;
    b.stability("window used", windowed);
    if (windowed) b.stability("window readings stable", stable);
}

void cmd_drinfeld(const Context& c, Builder& b) {
    if (!c.S.drinfeld) throw UsageError("config has no [drinfeld] section");
    const DrinfeldTuple& pi = *c.S.drinfeld;
    auto psi = drinfeld_to_psi(c.B(), pi);
    auto back = psi_to_drinfeld(c.B(), psi);
    bool ok = back.polys == pi.normalized().polys && drinfeld_to_psi(c.B(), back) == psi;
    b.kv("pi", pi.normalized().str());
    b.kv("Psi", psi.str());
    b.kv("pi from Psi", back.str());
    b.kv("round trip", ok);
    // A1(k) is V(k); other dominant weights stay symbolic
    EquivariantFunction inst = psi;
    bool instantiable = true;
    for (auto& e : inst.entries) {
        if (e.second.kind == RepLabel::Kind::DominantWeight && e.second.type == "A1")
            e.second = RepLabel::sl2(e.second.weight.at(0));
        instantiable = instantiable && e.second.kind == RepLabel::Kind::Sl2;
    }
    if (instantiable && !psi.is_zero()) {
        auto w = c.map_window();
        MatrixRep r = ev_psi(*w, inst);
        b.kv("dim ev_Psi", r.dim);
        b.kv("Burnside irreducible", burnside_irreducible(r));
        b.stability("window", cell_text(Json::array({c.window().first, c.window().second})));
    } else if (!psi.is_zero()) {
        b.kv("dim ev_Psi", "not instantiated (dominant-weight labels)");
    }
    b.evidence("a factor (1 - x u)^n of pi_i adds n to the i-th fundamental-weight coordinate at the point x");
}

void cmd_injectivity(const Context& c, Builder& b) {
    if (c.S.injectivity_points.empty() || c.S.injectivity_labels.empty())
        throw UsageError("config has no [injectivity] points and labels");
    auto w = c.map_window();
    auto r = injectivity_harness(*w, c.S.injectivity_points, c.S.injectivity_labels);
    b.kv("assignments", r.functions);
    b.kv("rejected", r.invalid);
    b.kv("classes", r.classes.size());
    b.kv("End = k on every class", r.diagonal_ok);
    b.kv("injective", r.injective);
    b.kv("collisions", r.collisions.size());
    std::vector<Json> rows;
    for (size_t i = 0; i < r.classes.size(); ++i) rows.push_back(Json::array({i, r.classes[i].str(), r.dims[i]}));
    b.table("classes", {"index", "Psi", "dim ev_Psi"}, rows);
    std::vector<Json> col;
    for (auto [i, j] : r.collisions) col.push_back(Json::array({i, j}));
    if (!col.empty()) b.table("collisions", {"i", "j"}, col);
    b.evidence("distinct canonical Psi compared by intertwiner dimension of ev_Psi");
    b.stability("window", cell_text(Json::array({c.window().first, c.window().second})));
}

void cmd_orbit(const Context& c, Builder& b) {
    std::vector<Json> rows;
    for (const auto& x : c.points()) {
        auto orb = c.B().orbit(x);
        std::sort(orb.begin(), orb.end(), point_less);
        rows.push_back(Json::array({point_str(x), point_str(canonical_representative(c.B(), x)), orb.size(),
                                    c.B().stabilizer(x).size(), points_json(orb)}));
    }
    b.kv("group order", c.B().group().order());
    b.table("orbits", {"x", "representative", "|orbit|", "|G_x|", "orbit"}, rows);
    b.evidence("orbit size times stabilizer order equals the group order");
}

void cmd_stabilizer(const Context& c, Builder& b) {
    std::vector<Json> rows;
    bool transport = true;
    for (const auto& x : c.points()) {
        auto r = isotropy(c.B(), x, c.seed);
        bool t = isotropy_transport_holds(c.B(), x);
        transport = transport && t;
        std::string elems = "{";
        for (size_t i = 0; i < r.stabilizer_labels.size(); ++i) elems += (i ? "," : "") + r.stabilizer_labels[i];
        elems += "}";
        rows.push_back(Json::array({point_str(x), r.stabilizer.size(), elems, r.report.dim, r.report.label, r.z_dim,
                                    r.report.derived_dim == r.report.dim}));
    }
    b.kv("group order", c.B().group().order());
    b.table("stabilizers", {"x", "|G_x|", "G_x", "dim g^x", "type g^x", "dim z^x", "perfect"}, rows);
    b.kv("g^{g.x} = g.g^x", transport);
    b.evidence("g^x is the fixed subalgebra of the stabilizer G_x");
}

using Handler = std::function<void(const Context&, Builder&)>;

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> h{
        {"analyze-structure", cmd_analyze_structure},
        {"fixed-subalgebra", cmd_fixed_subalgebra},
        {"derived", cmd_derived},
        {"tilde", cmd_tilde},
        {"gamma", cmd_gamma},
        {"eval-rep", cmd_eval_rep},
        {"irreducible", cmd_irreducible},
        {"intertwine", cmd_intertwine},
        {"classify", cmd_classify},
        {"drinfeld", cmd_drinfeld},
        {"injectivity", cmd_injectivity},
        {"orbit", cmd_orbit},
        {"stabilizer", cmd_stabilizer},
    };
    return h;
}

std::string echo(const std::string& command, const RunOptions& opt) {
    std::string s = command + " --config " + opt.config_name;
    if (opt.depth) s += " --depth " + std::to_string(*opt.depth);
    if (opt.window) s += " --window " + std::to_string(opt.window->first) + ".." + std::to_string(opt.window->second);
    if (opt.seed) s += " --seed " + std::to_string(*opt.seed);
    for (const auto& p : opt.points) s += " --point \"" + p + "\"";
    return s;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, h] : handlers()) v.push_back(n);
        return v;
    }();
    return names;
}

Report run_command(const Session& S, const std::string& command, const RunOptions& opt) {
    auto it = std::find_if(handlers().begin(), handlers().end(), [&](const auto& p) { return p.first == command; });
    if (it == handlers().end()) throw UsageError("unknown command '" + command + "'");
    if (opt.depth && *opt.depth < 1) throw UsageError("--depth must be positive");
    if (opt.window && opt.window->first > opt.window->second) throw UsageError("--window needs LO <= HI");
    unsigned long seed = opt.seed ? *opt.seed : S.seed;
    Context c{S, opt, seed};
    Builder b(S, echo(command, opt), seed);
    it->second(c, b);
    return b.finish();
}

int exit_code_for(const std::exception& e) {
    if (auto* c = dynamic_cast<const ConfigError*>(&e)) return c->kind == "parse" ? 2 : c->kind == "io" ? 4 : 3;
    if (dynamic_cast<const UsageError*>(&e)) return 64;
    if (dynamic_cast<const NotApplicable*>(&e)) return 5;
    return 6;
}

std::string error_record(const std::string& command, const std::exception& e) {
    std::string type = "error";
    int line = 0, column = 0;
    if (auto* c = dynamic_cast<const ConfigError*>(&e)) {
        type = c->kind == "parse" ? "parse_error" : c->kind == "io" ? "io_error" : "config_error";
        line = c->line;
        column = c->column;
    } else if (dynamic_cast<const UsageError*>(&e)) {
        type = "usage_error";
    } else if (dynamic_cast<const NotApplicable*>(&e)) {
        type = "not_applicable";
    } else if (dynamic_cast<const DomainError*>(&e)) {
        type = "domain_error";
    } else if (dynamic_cast<const RepError*>(&e)) {
        type = "rep_error";
    } else if (dynamic_cast<const EquivarianceError*>(&e)) {
        type = "equivariance_error";
    } else if (dynamic_cast<const UnsupportedLabel*>(&e)) {
        type = "unsupported_label";
    } else if (dynamic_cast<const WindowError*>(&e) || dynamic_cast<const WindowUnsupported*>(&e)) {
        type = "window_error";
    } else if (dynamic_cast<const GroupError*>(&e)) {
        type = "group_error";
    } else if (dynamic_cast<const std::invalid_argument*>(&e)) {
        type = "invalid_value";
    } else if (dynamic_cast<const ConductorMismatch*>(&e) || dynamic_cast<const DivisionByZero*>(&e)) {
        type = "arithmetic_error";
    }
    Json r;
    r["error"] = {{"type", type}, {"command", command}, {"message", e.what()}};
    if (line > 0) {
        r["error"]["line"] = line;
        r["error"]["column"] = column;
    }
    r["error"]["exit_code"] = exit_code_for(e);
    return r.dump() + "\n";
}

}  // namespace emalg
