// mlg: sweep a minimal Lagrangian graph definition and emit a JSON report.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mlg/commands.hpp"
#include "mlg/error.hpp"

namespace {

mlg::Point parsePoint(const std::string& text) {
    mlg::Point p;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        try {
            p.push_back(std::stod(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
            throw mlg::ConfigError("--point: cannot read coordinate '" + item + "'");
        }
    }
    if (p.empty()) throw mlg::ConfigError("--point is empty");
    return p;
}

void writeFile(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mlg::ConfigError("cannot open '" + path + "' for writing");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for minimal Lagrangian graphs (x, grad u1, grad u2, grad u3) in R^4n.\n"
                 "Exit codes: 0 all checks pass, 2 a check failed, 1 usage/parse/runtime error.\n"
                 "MLG_THREADS caps the number of worker threads."};
    app.set_version_flag("--version", std::string(mlg::report::kToolVersion));

    std::string command, defPath, fixtureName, outPath, csvPath, mode = "complex", pointText;
    std::optional<int> grid;
    std::optional<double> eta, cBound;

    const auto names = mlg::cli::commandNames();
    app.add_option("command", command, "check | frame | curvature | bochner | hypotheses | lewy")
        ->required()
        ->check(CLI::IsMember(names));
    auto* defOpt = app.add_option("--def", defPath, "graph definition file (key = value lines)");
    auto* fixOpt = app.add_option("--fixture", fixtureName, "built-in graph instead of --def")
                       ->check(CLI::IsMember(mlg::fixtureNames()));
    defOpt->excludes(fixOpt);
    app.add_option("--out", outPath, "write the report here instead of stdout");
    app.add_option("--csv", csvPath, "also write a per-point CSV grid dump");
    app.add_option("--grid", grid, "points per axis (overrides the definition; default 21)");
    app.add_option("--eta", eta, "finite-difference step (overrides fd_step; default 1e-3)");
    app.add_option("--mode", mode, "Lewy mode (default complex)")->check(CLI::IsMember({"complex", "quaternionic"}));
    app.add_option("--c-bound", cBound, "Lewy lower-bound constant C (default: measured C*)");
    app.add_option("--point", pointText, "frame point \"x1,x2,...\" (default: box center)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mlg::cli::kExitError;
    }

    try {
        if (defPath.empty() && fixtureName.empty()) throw mlg::ConfigError("one of --def or --fixture is required");
        const mlg::GraphDefinition def = defPath.empty() ? mlg::fixture(fixtureName) : mlg::loadDefinition(defPath);

        mlg::cli::RunOptions opt;
        opt.grid = grid;
        opt.eta = eta;
        opt.mode = mlg::lewyModeFromString(mode);
        opt.cBound = cBound;
        if (!pointText.empty()) opt.point = parsePoint(pointText);
        opt.wantCsv = !csvPath.empty();

        const mlg::cli::RunReport rep = mlg::cli::runCommand(command, def, opt);
        const std::string text = mlg::report::render(rep.doc);
        if (outPath.empty()) {
            std::cout << text;
        } else {
            writeFile(outPath, text);
        }
        if (opt.wantCsv) writeFile(csvPath, rep.csv);
        return rep.exitCode;
    } catch (const std::exception& e) {
        std::cerr << "mlg: " << e.what() << "\n";
        return mlg::cli::kExitError;
    }
}
