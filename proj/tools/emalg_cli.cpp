#include "emalg/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>

namespace {

std::pair<int, int> parse_window(const std::string& s) {
    static const std::regex re(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw emalg::UsageError("--window expects LO..HI, got '" + s + "'");
    return {std::stoi(m[1]), std::stoi(m[2])};
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw emalg::UsageError("cannot write '" + path + "'");
    out << body;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant map algebra analysis"};
    std::string command, config, window, out, format = "text";
    std::optional<int> depth;
    std::optional<unsigned long> seed;
    std::vector<std::string> points;
    app.add_option("command", command, "analysis command")->required()->check(CLI::IsMember(emalg::command_names()));
    app.add_option("--config", config, "session config (TOML)")->required();
    app.add_option("--depth", depth, "source depth of derived-algebra windows");
    app.add_option("--window", window, "ring window LO..HI");
    app.add_option("--seed", seed, "probe seed");
    app.add_option("--out", out, "report path; the other form is written next to it");
    app.add_option("--format", format, "stdout form")->check(CLI::IsMember({"text", "records"}));
    app.add_option("--point", points, "point, e.g. \"2\" or \"0,0\"");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << emalg::error_record(command, emalg::UsageError(e.what()));
        return 64;
    }

    try {
        emalg::RunOptions opt;
        opt.depth = depth;
        opt.seed = seed;
        opt.points = points;
        if (!window.empty()) opt.window = parse_window(window);
        opt.config_name = std::filesystem::path(config).filename().string();
        emalg::Session S = emalg::load_session(config);
        emalg::Report r = emalg::run_command(S, command, opt);
        const std::string& primary = format == "text" ? r.text : r.records;
        std::cout << primary;
        if (!out.empty()) {
            write_file(out, primary);
            write_file(out + (format == "text" ? ".records.json" : ".txt"), format == "text" ? r.records : r.text);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << emalg::error_record(command, e);
        return emalg::exit_code_for(e);
    }
}
