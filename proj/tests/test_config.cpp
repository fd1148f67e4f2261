#include "doctest.h"

#include "emalg/report.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace emalg;

namespace {

const std::string kConfigs = std::string(EMALG_SOURCE_DIR) + "/configs/";

const char* kOnsager = R"(
[lie]
kind = "cartan"
type = "A1"

[group]
generators = ["s"]
relations = ["ss"]

[lie_action]
s = { kind = "chevalley" }

[point_action]
s = { kind = "monomial", exponents = [[-1]], scalars = ["1"] }

[scheme]
family = "torus"
n = 1
)";

nlohmann::json records(const Session& S, const std::string& cmd, RunOptions opt = {}) {
    opt.config_name = S.name;
    return nlohmann::json::parse(run_command(S, cmd, opt).records);
}

std::string matrix_toml(const std::vector<Matrix>& mats) {
    std::string s = "[";
    for (size_t k = 0; k < mats.size(); ++k) {
        s += k ? ", [" : "[";
        for (size_t i = 0; i < mats[k].rows(); ++i) {
            s += i ? ", [" : "[";
            for (size_t j = 0; j < mats[k].cols(); ++j) s += (j ? ", \"" : "\"") + mats[k](i, j).str() + "\"";
            s += "]";
        }
        s += "]";
    }
    return s + "]";
}

}  // namespace

TEST_CASE("config scalars and points") {
    CHECK(parse_config_scalar("zeta(6)") == Scalar::zeta(6));
    CHECK(parse_config_scalar("zeta(6)").str() == "cyc(6)[0,1]");
    CHECK(parse_config_scalar("-zeta(4)^3") == -Scalar::zeta(4).pow(3));
    CHECK(parse_config_scalar("zeta(3)^-1") == Scalar::zeta(3).pow(2));
    CHECK(parse_config_scalar(" 3/6 ") == Scalar(1, 2));
    CHECK_THROWS(parse_config_scalar("zeta(0)"));
    CHECK_THROWS(parse_config_scalar("zeta(3)x"));

    auto torus2 = GradedRing::torus(2);
    auto p = parse_point_text(torus2, "(cyc(3)[0,1], 2)");
    REQUIRE(p.size() == 2);
    CHECK(p[0] == Scalar::zeta(3));
    CHECK(p[1] == Scalar(2));
    CHECK_THROWS_AS(parse_point_text(torus2, "2"), DomainError);
    CHECK_THROWS_AS(parse_point_text(torus2, "0,1"), DomainError);
    CHECK(parse_point_text(GradedRing::affine(2), "0,0") == Point{Scalar(0), Scalar(0)});

    auto lifted = lift_point({Scalar::zeta(3), Scalar(1)}, 6);
    CHECK(lifted[0].conductor() == 6);
    CHECK(lifted[0] == Scalar::zeta(3));
}

TEST_CASE("matrix blocks and digests") {
    auto mats = parse_matrix_blocks("# e\n0 1\n0 0\n\n1/2 0\n0 -1/2\n");
    REQUIRE(mats.size() == 2);
    CHECK(mats[0](0, 1) == Scalar(1));
    CHECK(mats[1](1, 1) == Scalar(-1, 2));
    CHECK_THROWS(parse_matrix_blocks("1 2\n3\n"));
    CHECK_THROWS(parse_matrix_blocks("# nothing\n"));
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("config error positions") {
    try {
        parse_session("[lie]\nkind = \"cartan\"\ntype = \n");
        FAIL("expected a parse error");
    } catch (const ConfigError& e) {
        CHECK(e.kind == "parse");
        CHECK(e.line == 3);
        CHECK(e.column > 0);
    }
    try {
        parse_session(std::string(kOnsager) + "\n[window]\nlo = 1\nhi = 2\ndepth = -4\n");
        FAIL("expected a semantic error");
    } catch (const ConfigError& e) {
        CHECK(e.kind == "semantic");
        CHECK(e.line == 23);
        CHECK(std::string(e.what()).find("window.depth") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_session(std::string(kOnsager) + "\nseed = -1\n"), ConfigError);
}

TEST_CASE("explicit Lie algebras and conjugation actions") {
    // sl2 from structure constants: [h,e] = 2e, [h,f] = -2f, [e,f] = h
    auto S = parse_session(R"(
[lie]
kind = "explicit"
name = "sl2"
dim = 3
labels = ["h", "e", "f"]
constants = [[0, 1, 1, 2], [0, 2, 2, -2], [1, 2, 0, 1]]

[scheme]
family = "affine"
n = 1
)");
    CHECK(S.bundle->lie().dim() == 3);
    CHECK(analyze_structure(S.bundle->lie()).label == "A1");
    CHECK(S.bundle->group().order() == 1);

    auto C = parse_session(R"(
[lie]
kind = "cartan"
type = "A1"

[group]
generators = ["s"]
relations = ["ss"]

[lie_action]
s = { kind = "conjugation", matrix = [[0, 1], [-1, 0]] }

[point_action]
s = { kind = "monomial", exponents = [[-1]] }

[scheme]
family = "torus"
n = 1
)");
    const auto& L = C.bundle->lie();
    CHECK(C.bundle->lie_action(C.bundle->group().generator(0)) == chevalley_involution(L));
    CHECK_FALSE(C.bundle->diagram_action());
}

TEST_CASE("matrix labels inline and from files") {
    auto L = LieAlgebra::from_cartan_type("A1");
    std::string mats = matrix_toml(L.defining());
    std::string text = std::string(kOnsager) +
                       "\n[[psi]]\npoint = \"2\"\nlabel = { kind = \"matrices\", matrices = " + mats +
                       " }\n\n[[phi]]\npoint = \"1/2\"\nlabel = { kind = \"sl2\", d = 1 }\n";
    auto S = parse_session(text);
    REQUIRE(S.psi.size() == 1);
    CHECK(S.psi[0].second.kind == RepLabel::Kind::Explicit);
    auto r = records(S, "intertwine");
    CHECK(r["summary"]["dim Hom"] == 1);
    CHECK(r["summary"]["dim ev_Psi"] == 2);

    auto dir = std::filesystem::temp_directory_path() / "emalg_config_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream m(dir / "defining.txt");
        for (const auto& M : L.defining()) {
            for (size_t i = 0; i < M.rows(); ++i) {
                for (size_t j = 0; j < M.cols(); ++j) m << (j ? " " : "") << M(i, j).str();
                m << "\n";
            }
            m << "\n";
        }
        std::ofstream c(dir / "session.toml");
        c << kOnsager << "\n[[psi]]\npoint = \"2\"\nlabel = { kind = \"matrices\", file = \"defining.txt\" }\n";
    }
    auto F = load_session((dir / "session.toml").string());
    REQUIRE(F.psi.size() == 1);
    CHECK(F.psi[0].second == S.psi[0].second);
    CHECK(F.name == "session");
    std::filesystem::remove_all(dir);
}

TEST_CASE("bundled reports") {
    auto s3 = load_session(kConfigs + "s3_so8.toml");
    RunOptions opt;
    opt.points = {"-1"};
    auto st = records(s3, "stabilizer", opt);
    const auto& row = st["tables"]["stabilizers"]["rows"][0];
    CHECK(row[1] == 2);
    CHECK(row[3] == 21);
    CHECK(row[4] == "B3");

    auto onsager = load_session(kConfigs + "onsager_sl2.toml");
    auto cl = records(onsager, "classify");
    CHECK(cl["summary"]["regime"] == "FINITE-X~");
    CHECK(cl["summary"]["dim ker gamma"] == 0);

    auto nodal = load_session(kConfigs + "nodal_cubic.toml");
    RunOptions d8;
    d8.depth = 8;
    auto dr = records(nodal, "derived", d8);
    CHECK(dr["summary"]["M^d/[M,M]"] == 2);
    CHECK(dr["stability"]["all rows stable"] == true);

    auto plane = load_session(kConfigs + "plane_involution.toml");
    CHECK(records(plane, "classify")["summary"]["regime"] == "INFINITE-X~");
}

TEST_CASE("reports are deterministic") {
    auto S = load_session(kConfigs + "untwisted_loop_sl2.toml");
    RunOptions opt;
    opt.config_name = "untwisted_loop_sl2.toml";
    auto a = run_command(S, "drinfeld", opt);
    auto b = run_command(load_session(kConfigs + "untwisted_loop_sl2.toml"), "drinfeld", opt);
    CHECK(a.text == b.text);
    CHECK(a.records == b.records);
    CHECK(a.text.find("round trip:           yes") != std::string::npos);
    CHECK_THROWS_AS(run_command(S, "frobnicate", opt), UsageError);
    RunOptions bad = opt;
    bad.window = std::make_pair(2, -2);
    CHECK_THROWS_AS(run_command(S, "derived", bad), UsageError);
}
