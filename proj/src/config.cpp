#include "emalg/config.hpp"

#include <toml.hpp>

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace emalg {

namespace {

[[noreturn]] void fail(const toml::node* n, const std::string& msg) {
    if (n) throw ConfigError("semantic", msg, static_cast<int>(n->source().begin.line),
                             static_cast<int>(n->source().begin.column));
    throw ConfigError("semantic", msg);
}

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

void check_keys(const toml::table& t, const std::set<std::string>& allowed, const std::string& where) {
    for (auto&& [k, v] : t)
        if (!allowed.count(std::string(k.str()))) fail(&v, "unknown key '" + std::string(k.str()) + "' in " + where);
}

const toml::table& as_table(const toml::node* n, const std::string& what) {
    if (!n || !n->is_table()) fail(n, what + " must be a table");
    return *n->as_table();
}

const toml::array& as_array(const toml::node* n, const std::string& what) {
    if (!n || !n->is_array()) fail(n, what + " must be an array");
    return *n->as_array();
}

std::string as_string(const toml::node* n, const std::string& what) {
    if (!n || !n->is_string()) fail(n, what + " must be a string");
    return n->as_string()->get();
}

long as_int(const toml::node* n, const std::string& what) {
    if (!n || !n->is_integer()) fail(n, what + " must be an integer");
    return static_cast<long>(n->as_integer()->get());
}

const toml::node* required(const toml::table& t, const std::string& key, const toml::node* owner,
                           const std::string& where) {
    const toml::node* n = t.get(key);
    if (!n) fail(owner, where + " needs key '" + key + "'");
    return n;
}

std::vector<std::string> string_list(const toml::node* n, const std::string& what) {
    std::vector<std::string> out;
    for (auto&& e : as_array(n, what)) out.push_back(as_string(&e, what + " entry"));
    return out;
}

std::vector<int> int_list(const toml::node* n, const std::string& what) {
    std::vector<int> out;
    for (auto&& e : as_array(n, what)) out.push_back(static_cast<int>(as_int(&e, what + " entry")));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("semantic", "cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Per-load state: the declared conductor and the directory for relative paths.
struct Reader {
    int declared = 0;
    std::string dir;

    Scalar scalar(const toml::node* n, const std::string& what) const {
        Scalar s;
        if (n && n->is_integer()) {
            s = Scalar(static_cast<long>(n->as_integer()->get()));
        } else if (n && n->is_string()) {
            try {
                s = parse_config_scalar(n->as_string()->get());
            } catch (const std::exception& e) {
                fail(n, what + ": " + e.what());
            }
        } else if (n && n->is_floating_point()) {
            fail(n, what + " must be exact; write \"p/q\" instead of a float");
        } else {
            fail(n, what + " must be an integer or a scalar string");
        }
        if (declared > 0 && declared % s.conductor() != 0)
            fail(n, what + " has conductor " + std::to_string(s.conductor()) + ", which does not divide the declared conductor " +
                        std::to_string(declared));
        return s;
    }

    Vec vec(const toml::node* n, const std::string& what) const {
        Vec v;
        for (auto&& e : as_array(n, what)) v.push_back(scalar(&e, what + " entry"));
        return v;
    }

    Matrix matrix(const toml::node* n, const std::string& what) const {
        std::vector<Vec> rows;
        for (auto&& r : as_array(n, what)) rows.push_back(vec(&r, what + " row"));
        if (rows.empty()) fail(n, what + " is empty");
        for (auto& r : rows)
            if (r.size() != rows[0].size()) fail(n, what + " rows have different lengths");
        return Matrix::from_rows(rows, rows[0].size());
    }

    Point point(const toml::node* n, const GradedRing& R, const std::string& what) const {
        Point x;
        if (n && n->is_array()) {
            x = vec(n, what);
        } else if (n && n->is_string()) {
            try {
                x = parse_point_text(R, n->as_string()->get());
            } catch (const std::exception& e) {
                fail(n, what + ": " + e.what());
            }
            for (auto& c : x)
                if (declared > 0 && declared % c.conductor() != 0)
                    fail(n, what + " has a coordinate outside the declared conductor");
        } else if (n && n->is_integer()) {
            x = {scalar(n, what)};
        } else {
            fail(n, what + " must be a string, an integer or an array of coordinates");
        }
        try {
            R.check_point(x);
        } catch (const std::exception& e) {
            fail(n, what + ": " + e.what());
        }
        return x;
    }

    RepLabel label(const toml::node* n, const std::string& what) const {
        const toml::table& t = as_table(n, what);
        std::string kind = as_string(required(t, "kind", n, what), what + ".kind");
        if (kind == "sl2") {
            check_keys(t, {"kind", "d"}, what);
            long d = as_int(required(t, "d", n, what), what + ".d");
            if (d < 0) fail(t.get("d"), what + ".d must be nonnegative");
            return RepLabel::sl2(static_cast<int>(d));
        }
        if (kind == "one_dim") {
            check_keys(t, {"kind", "value", "values"}, what);
            if (t.get("value") && t.get("values")) fail(n, what + " takes either value or values");
            if (const toml::node* v = t.get("value")) return RepLabel::one_dim({scalar(v, what + ".value")});
            return RepLabel::one_dim(vec(required(t, "values", n, what), what + ".values"));
        }
        if (kind == "dominant") {
            check_keys(t, {"kind", "type", "weight"}, what);
            std::string type = as_string(required(t, "type", n, what), what + ".type");
            std::vector<int> w = int_list(required(t, "weight", n, what), what + ".weight");
            for (int c : w)
                if (c < 0) fail(t.get("weight"), what + ".weight must be dominant (nonnegative)");
            return RepLabel::dominant(type, w);
        }
        if (kind == "matrices") {
            check_keys(t, {"kind", "file", "matrices"}, what);
            if (t.get("file") && t.get("matrices")) fail(n, what + " takes either file or matrices");
            std::vector<Matrix> mats;
            if (const toml::node* f = t.get("file")) {
                std::string path = as_string(f, what + ".file");
                std::filesystem::path p(path);
                if (p.is_relative() && !dir.empty()) p = std::filesystem::path(dir) / p;
                try {
                    mats = parse_matrix_blocks(read_file(p.string()));
                } catch (const std::exception& e) {
                    fail(f, what + ".file: " + e.what());
                }
                for (auto& m : mats)
                    for (size_t i = 0; i < m.rows(); ++i)
                        for (size_t j = 0; j < m.cols(); ++j)
                            if (declared > 0 && declared % m(i, j).conductor() != 0)
                                fail(f, what + ".file has an entry outside the declared conductor");
            } else {
                for (auto&& m : as_array(required(t, "matrices", n, what), what + ".matrices"))
                    mats.push_back(matrix(&m, what + ".matrices entry"));
            }
            return RepLabel::explicit_matrices(std::move(mats));
        }
        fail(t.get("kind"), "unknown label kind '" + kind + "' in " + what + " (sl2, one_dim, dominant, matrices)");
    }
};

std::shared_ptr<LieAlgebra> read_lie(const Reader& rd, const toml::node* n) {
    const toml::table& t = as_table(n, "lie");
    std::string kind = as_string(required(t, "kind", n, "lie"), "lie.kind");
    try {
        if (kind == "cartan") {
            check_keys(t, {"kind", "type"}, "lie");
            return std::make_shared<LieAlgebra>(
                LieAlgebra::from_cartan_type(as_string(required(t, "type", n, "lie"), "lie.type")));
        }
        if (kind == "matrix") {
            check_keys(t, {"kind", "family", "n"}, "lie");
            std::string fam = as_string(required(t, "family", n, "lie"), "lie.family");
            long m = as_int(required(t, "n", n, "lie"), "lie.n");
            return std::make_shared<LieAlgebra>(LieAlgebra::matrix_family(fam, static_cast<int>(m)));
        }
        if (kind == "explicit") {
            check_keys(t, {"kind", "name", "dim", "labels", "constants"}, "lie");
            long dim = as_int(required(t, "dim", n, "lie"), "lie.dim");
            if (dim < 1) fail(t.get("dim"), "lie.dim must be positive");
            size_t d = static_cast<size_t>(dim);
            std::vector<std::string> labels;
            if (t.get("labels")) labels = string_list(t.get("labels"), "lie.labels");
            else
                for (size_t i = 0; i < d; ++i) labels.push_back("b" + std::to_string(i));
            if (labels.size() != d) fail(t.get("labels"), "lie.labels must have dim entries");
            std::vector<Vec> dense(d * d, Vec(d));
            for (auto&& e : as_array(required(t, "constants", n, "lie"), "lie.constants")) {
                const toml::array& a = as_array(&e, "lie.constants entry");
                if (a.size() != 4) fail(&e, "lie.constants entries are [i, j, k, c] for [b_i, b_j] += c b_k");
                long i = as_int(a.get(0), "i"), j = as_int(a.get(1), "j"), k = as_int(a.get(2), "k");
                if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
                    fail(&e, "lie.constants index out of range");
                if (i == j) fail(&e, "lie.constants entry brackets a basis element with itself");
                Scalar c = rd.scalar(a.get(3), "lie.constants coefficient");
                dense[i * d + j][k] += c;
                dense[j * d + i][k] -= c;
            }
            std::vector<SparseVec> table;
            for (auto& v : dense) table.push_back(to_sparse(v));
            std::string name = t.get("name") ? as_string(t.get("name"), "lie.name") : "L";
            return std::make_shared<LieAlgebra>(name, labels, table);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        fail(n, std::string("lie: ") + e.what());
    }
    fail(t.get("kind"), "unknown lie kind '" + kind + "' (cartan, matrix, explicit)");
}

std::shared_ptr<GradedRing> read_scheme(const Reader& rd, const toml::node* n) {
    const toml::table& t = as_table(n, "scheme");
    std::string fam = as_string(required(t, "family", n, "scheme"), "scheme.family");
    try {
        if (fam == "torus" || fam == "affine") {
            check_keys(t, {"family", "n"}, "scheme");
            int m = static_cast<int>(as_int(required(t, "n", n, "scheme"), "scheme.n"));
            return std::make_shared<GradedRing>(fam == "torus" ? GradedRing::torus(m) : GradedRing::affine(m));
        }
        if (fam == "p1_minus") {
            check_keys(t, {"family", "removed"}, "scheme");
            std::vector<std::optional<Scalar>> removed;
            for (auto&& e : as_array(required(t, "removed", n, "scheme"), "scheme.removed")) {
                if (e.is_string() && trim(e.as_string()->get()) == "inf") removed.push_back(std::nullopt);
                else removed.push_back(rd.scalar(&e, "scheme.removed entry"));
            }
            return std::make_shared<GradedRing>(GradedRing::p1_minus(removed));
        }
        if (fam == "graded_quotient") {
            check_keys(t, {"family", "relation", "weights"}, "scheme");
            std::string rel = as_string(required(t, "relation", n, "scheme"), "scheme.relation");
            std::map<std::string, int> w;
            for (auto&& [k, v] : as_table(required(t, "weights", n, "scheme"), "scheme.weights"))
                w[std::string(k.str())] = static_cast<int>(as_int(&v, "scheme.weights entry"));
            return std::make_shared<GradedRing>(GradedRing::graded_quotient(rel, w));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        fail(n, std::string("scheme: ") + e.what());
    }
    fail(t.get("family"), "unknown scheme family '" + fam + "' (affine, torus, p1_minus, graded_quotient)");
}

FiniteGroup read_group(const toml::node* n) {
    if (!n) return FiniteGroup::trivial();
    const toml::table& t = as_table(n, "group");
    check_keys(t, {"generators", "relations", "permutations", "domain", "bound"}, "group");
    std::vector<std::string> gens = string_list(required(t, "generators", n, "group"), "group.generators");
    std::set<std::string> seen;
    for (auto& g : gens) {
        if (g.empty() || !std::isalpha(static_cast<unsigned char>(g[0])))
            fail(t.get("generators"), "generator names must start with a letter");
        if (!seen.insert(g).second) fail(t.get("generators"), "duplicate generator '" + g + "'");
    }
    long bound = t.get("bound") ? as_int(t.get("bound"), "group.bound") : 10000;
    if (bound < 1) fail(t.get("bound"), "group.bound must be positive");
    if (t.get("relations") && t.get("permutations")) fail(n, "group takes either relations or permutations");
    try {
        if (gens.empty()) return FiniteGroup::trivial();
        if (const toml::node* p = t.get("permutations")) {
            std::vector<std::vector<int>> images;
            for (auto&& e : as_array(p, "group.permutations")) images.push_back(int_list(&e, "group.permutations entry"));
            std::vector<std::string> domain;
            if (t.get("domain")) domain = string_list(t.get("domain"), "group.domain");
            return FiniteGroup::from_permutations(gens, images, domain, static_cast<size_t>(bound));
        }
        std::vector<std::string> rels;
        if (t.get("relations")) rels = string_list(t.get("relations"), "group.relations");
        return FiniteGroup::from_presentation(gens, rels, static_cast<size_t>(bound));
    } catch (const std::exception& e) {
        fail(n, std::string("group: ") + e.what());
    }
}

LieAutomorphism read_lie_action(const Reader& rd, const LieAlgebra& L, const toml::node* n, const std::string& where,
                                bool& diagram, bool& other) {
    const toml::table& t = as_table(n, where);
    std::string kind = as_string(required(t, "kind", n, where), where + ".kind");
    try {
        if (kind == "identity") {
            check_keys(t, {"kind"}, where);
            return LieAutomorphism::identity(L);
        }
        if (kind == "chevalley") {
            check_keys(t, {"kind"}, where);
            other = true;
            return chevalley_involution(L);
        }
        if (kind == "diagram") {
            check_keys(t, {"kind", "perm"}, where);
            diagram = true;
            return diagram_automorphism(L, int_list(required(t, "perm", n, where), where + ".perm"));
        }
        if (kind == "explicit") {
            check_keys(t, {"kind", "matrix"}, where);
            other = true;
            return explicit_automorphism(L, rd.matrix(required(t, "matrix", n, where), where + ".matrix"));
        }
        if (kind == "conjugation") {
            // X -> g X g^-1 on the defining matrices
            check_keys(t, {"kind", "matrix"}, where);
            other = true;
            Matrix g = rd.matrix(required(t, "matrix", n, where), where + ".matrix");
            Matrix gi = inverse(g);
            return automorphism_from_defining_map(L, [&](const Matrix& x) { return g * x * gi; });
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        fail(n, where + ": " + e.what());
    }
    fail(t.get("kind"), "unknown Lie action kind '" + kind + "' (identity, chevalley, diagram, explicit, conjugation)");
}

PointMap read_point_action(const Reader& rd, const GradedRing& R, const toml::node* n, const std::string& where) {
    const toml::table& t = as_table(n, where);
    std::string kind = as_string(required(t, "kind", n, where), where + ".kind");
    if (kind == "identity") {
        check_keys(t, {"kind"}, where);
        if (R.family() == RingFamily::P1Minus) {
            Matrix m = Matrix::identity(2);
            return PointMap::moebius(m);
        }
        return PointMap::identity_monomial(R.nvars());
    }
    if (kind == "moebius") {
        check_keys(t, {"kind", "matrix"}, where);
        Matrix m = rd.matrix(required(t, "matrix", n, where), where + ".matrix");
        if (m.rows() != 2 || m.cols() != 2) fail(t.get("matrix"), where + ".matrix must be 2x2");
        if ((m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).is_zero()) fail(t.get("matrix"), where + ".matrix is singular");
        return PointMap::moebius(m);
    }
    if (kind == "monomial") {
        check_keys(t, {"kind", "exponents", "scalars"}, where);
        std::vector<std::vector<int>> E;
        for (auto&& r : as_array(required(t, "exponents", n, where), where + ".exponents"))
            E.push_back(int_list(&r, where + ".exponents row"));
        Vec s = t.get("scalars") ? rd.vec(t.get("scalars"), where + ".scalars") : Vec(E.size(), Scalar(1));
        if (s.size() != E.size()) fail(t.get("scalars"), where + ".scalars needs one entry per exponent row");
        for (auto& row : E)
            if (row.size() != E.size()) fail(t.get("exponents"), where + ".exponents must be square");
        return PointMap::monomial(E, s);
    }
    fail(t.get("kind"), "unknown point action kind '" + kind + "' (identity, moebius, monomial)");
}

std::vector<std::pair<Point, RepLabel>> read_entries(const Reader& rd, const GroupActionBundle& B, const toml::node* n,
                                                     const std::string& what) {
    std::vector<std::pair<Point, RepLabel>> out;
    if (!n) return out;
    for (auto&& e : as_array(n, what)) {
        const toml::table& t = as_table(&e, what + " entry");
        check_keys(t, {"point", "label"}, what);
        Point x = rd.point(required(t, "point", &e, what), B.ring(), what + ".point");
        RepLabel l = lift_label(rd.label(required(t, "label", &e, what), what + ".label"), B.conductor());
        x = lift_point(x, B.conductor());
        try {
            validate_label(B, x, l);
        } catch (const std::exception& ex) {
            fail(&e, what + " entry at " + point_str(x) + ": " + ex.what());
        }
        out.emplace_back(std::move(x), std::move(l));
    }
    return out;
}

Session build(const toml::table& doc, const std::string& text, const std::string& origin) {
    check_keys(doc,
               {"name", "conductor", "seed", "lie", "group", "lie_action", "point_action", "scheme", "window", "psi",
                "phi", "drinfeld", "injectivity", "points"},
               "the top level");
    Session S;
    S.origin = origin;
    S.digest = fnv1a_hex(text);
    Reader rd;
    if (origin != "<text>") rd.dir = std::filesystem::path(origin).parent_path().string();
    S.name = doc.get("name") ? as_string(doc.get("name"), "name") : std::filesystem::path(origin).stem().string();
    if (const toml::node* c = doc.get("conductor")) {
        long N = as_int(c, "conductor");
        if (N < 1) fail(c, "conductor must be positive");
        rd.declared = static_cast<int>(N);
    }
    if (const toml::node* s = doc.get("seed")) {
        long v = as_int(s, "seed");
        if (v < 0) fail(s, "seed must be nonnegative");
        S.seed = static_cast<unsigned long>(v);
    }

    auto L = read_lie(rd, required(doc, "lie", nullptr, "config"));
    auto R = read_scheme(rd, required(doc, "scheme", nullptr, "config"));
    FiniteGroup G = read_group(doc.get("group"));

    std::vector<LieAutomorphism> lie_gens;
    std::vector<PointMap> point_gens;
    bool diagram = false, other = false;
    const toml::node* la = doc.get("lie_action");
    const toml::node* pa = doc.get("point_action");
    if (G.generator_count() > 0) {
        const toml::table& lt = as_table(la, "lie_action");
        const toml::table& pt = as_table(pa, "point_action");
        std::set<std::string> names(G.generator_names().begin(), G.generator_names().end());
        check_keys(lt, names, "lie_action");
        check_keys(pt, names, "point_action");
        for (auto& g : G.generator_names()) {
            lie_gens.push_back(
                read_lie_action(rd, *L, required(lt, g, la, "lie_action"), "lie_action." + g, diagram, other));
            point_gens.push_back(read_point_action(rd, *R, required(pt, g, pa, "point_action"), "point_action." + g));
        }
    } else if (la || pa) {
        fail(la ? la : pa, "actions given for a trivial group");
    }
    for (size_t i = 0; i < point_gens.size(); ++i) {
        try {
            check_ring_map(*R, point_gens[i]);
        } catch (const std::exception& e) {
            fail(as_table(pa, "point_action").get(G.generator_names()[i]),
                 "point_action." + G.generator_names()[i] + ": " + e.what());
        }
    }
    try {
        S.bundle = std::make_shared<GroupActionBundle>(G, L, R, lie_gens, point_gens, diagram && !other,
                                                       rd.declared > 0 ? rd.declared : 1);
    } catch (const std::exception& e) {
        fail(doc.get("group"), std::string("actions: ") + e.what());
    }
    S.conductor = S.bundle->conductor();
    if (rd.declared > 0 && S.conductor != rd.declared)
        fail(doc.get("conductor"), "declared conductor " + std::to_string(rd.declared) +
                                       " does not contain the roots of unity of the group (needs " +
                                       std::to_string(S.conductor) + ")");

    if (const toml::node* w = doc.get("window")) {
        const toml::table& t = as_table(w, "window");
        check_keys(t, {"lo", "hi", "depth"}, "window");
        S.window.lo = static_cast<int>(as_int(required(t, "lo", w, "window"), "window.lo"));
        S.window.hi = static_cast<int>(as_int(required(t, "hi", w, "window"), "window.hi"));
        if (S.window.lo > S.window.hi) fail(w, "window.lo must not exceed window.hi");
        if (t.get("depth")) {
            S.window.depth = static_cast<int>(as_int(t.get("depth"), "window.depth"));
            if (S.window.depth < 1) fail(t.get("depth"), "window.depth must be positive");
        }
        S.has_window = true;
    }

    S.psi = read_entries(rd, *S.bundle, doc.get("psi"), "psi");
    S.phi = read_entries(rd, *S.bundle, doc.get("phi"), "phi");

    if (const toml::node* d = doc.get("drinfeld")) {
        const toml::table& t = as_table(d, "drinfeld");
        check_keys(t, {"pi"}, "drinfeld");
        DrinfeldTuple pi;
        for (auto&& poly : as_array(required(t, "pi", d, "drinfeld"), "drinfeld.pi")) {
            std::vector<std::pair<Scalar, int>> factors;
            for (auto&& f : as_array(&poly, "drinfeld.pi polynomial")) {
                const toml::table& ft = as_table(&f, "drinfeld.pi factor");
                check_keys(ft, {"x", "n"}, "drinfeld.pi factor");
                Scalar x = rd.scalar(required(ft, "x", &f, "drinfeld.pi factor"), "drinfeld.pi factor x");
                long e = as_int(required(ft, "n", &f, "drinfeld.pi factor"), "drinfeld.pi factor n");
                if (e < 0) fail(ft.get("n"), "drinfeld exponents must be nonnegative");
                factors.emplace_back(x, static_cast<int>(e));
            }
            pi.polys.push_back(std::move(factors));
        }
        S.drinfeld = std::move(pi);
    }

    if (const toml::node* inj = doc.get("injectivity")) {
        const toml::table& t = as_table(inj, "injectivity");
        check_keys(t, {"points", "labels"}, "injectivity");
        for (auto&& p : as_array(required(t, "points", inj, "injectivity"), "injectivity.points"))
            S.injectivity_points.push_back(
                lift_point(rd.point(&p, S.bundle->ring(), "injectivity.points entry"), S.conductor));
        for (auto&& l : as_array(required(t, "labels", inj, "injectivity"), "injectivity.labels"))
            S.injectivity_labels.push_back(lift_label(rd.label(&l, "injectivity.labels entry"), S.conductor));
    }

    if (const toml::node* p = doc.get("points"))
        for (auto&& e : as_array(p, "points"))
            S.points.push_back(lift_point(rd.point(&e, S.bundle->ring(), "points entry"), S.conductor));
    return S;
}

}  // namespace

Point lift_point(const Point& x, int conductor) {
    Point y;
    for (const auto& c : x) y.push_back(c.is_rational() ? c : c.lift(conductor));
    return y;
}

RepLabel lift_label(const RepLabel& l, int conductor) {
    RepLabel r = l;
    r.values = lift_point(l.values, conductor);
    for (auto& m : r.mats)
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j)
                if (!m(i, j).is_rational()) m(i, j) = m(i, j).lift(conductor);
    return r;
}

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Scalar parse_config_scalar(const std::string& text) {
    std::string t = trim(text);
    bool neg = false;
    std::string body = t;
    if (!body.empty() && body[0] == '-' && body.compare(1, 5, "zeta(") == 0) {
        neg = true;
        body = body.substr(1);
    }
    if (body.compare(0, 5, "zeta(") == 0) {
        size_t close = body.find(')');
        if (close == std::string::npos) throw std::invalid_argument("malformed root of unity '" + t + "'");
        int n = std::stoi(body.substr(5, close - 5));
        if (n < 1) throw std::invalid_argument("root of unity order must be positive");
        long k = 1;
        std::string rest = body.substr(close + 1);
        if (!rest.empty()) {
            if (rest[0] != '^') throw std::invalid_argument("malformed root of unity '" + t + "'");
            size_t used = 0;
            k = std::stol(rest.substr(1), &used);
            if (used + 1 != rest.size()) throw std::invalid_argument("malformed root of unity '" + t + "'");
        }
        Scalar z = Scalar::zeta(n).pow(((k % n) + n) % n);
        return neg ? -z : z;
    }
    return Scalar::parse(t);
}

Point parse_point_text(const GradedRing& R, const std::string& text) {
    std::string t = trim(text);
    if (!t.empty() && t.front() == '(') {
        if (t.back() != ')') throw std::invalid_argument("unbalanced parentheses in point '" + text + "'");
        t = t.substr(1, t.size() - 2);
    }
    // commas inside cyc(N)[...] belong to the scalar
    Point x;
    int depth = 0;
    std::string cur;
    for (char c : t) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            x.push_back(parse_config_scalar(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    x.push_back(parse_config_scalar(cur));
    if (x.size() != R.point_dim())
        throw DomainError("point '" + text + "' has " + std::to_string(x.size()) + " coordinates, the scheme needs " +
                          std::to_string(R.point_dim()));
    R.check_point(x);
    return x;
}

std::vector<Matrix> parse_matrix_blocks(const std::string& text) {
    std::vector<Matrix> out;
    std::vector<Vec> rows;
    auto flush = [&] {
        if (rows.empty()) return;
        for (auto& r : rows)
            if (r.size() != rows[0].size()) throw std::invalid_argument("matrix rows have different lengths");
        out.push_back(Matrix::from_rows(rows, rows[0].size()));
        rows.clear();
    };
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        Vec row;
        std::string tok;
        while (ls >> tok) row.push_back(parse_config_scalar(tok));
        if (row.empty()) flush();
        else rows.push_back(std::move(row));
    }
    flush();
    if (out.empty()) throw std::invalid_argument("no matrices found");
    return out;
}

Session parse_session(const std::string& text, const std::string& origin) {
    toml::table doc;
    try {
        doc = toml::parse(text, origin);
    } catch (const toml::parse_error& e) {
        throw ConfigError("parse", std::string(e.description()), static_cast<int>(e.source().begin.line),
                          static_cast<int>(e.source().begin.column));
    }
    return build(doc, text, origin);
}

Session load_session(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("io", "cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_session(ss.str(), path);
}

}  // namespace emalg
