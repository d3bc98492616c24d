#include "mlg/definition.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mlg/error.hpp"

namespace mlg {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("line " + std::to_string(line) + ": " + what);
}

double toDouble(const std::string& s, int line, const std::string& key) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        fail(line, "invalid number '" + s + "' for " + key);
    }
    return v;
}

int toInt(const std::string& s, int line, const std::string& key) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(line, "invalid integer '" + s + "' for " + key);
    return v;
}

std::vector<std::pair<double, double>> parseBox(const std::string& value, int line) {
    std::vector<std::pair<double, double>> axes;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        const auto colon = item.find(':');
        if (colon == std::string::npos) fail(line, "box interval '" + item + "' must be lo:hi");
        const double lo = toDouble(trim(item.substr(0, colon)), line, "box");
        const double hi = toDouble(trim(item.substr(colon + 1)), line, "box");
        if (!(lo < hi)) fail(line, "box interval '" + item + "' needs lo < hi");
        axes.emplace_back(lo, hi);
    }
    if (axes.empty()) fail(line, "box is empty");
    return axes;
}

}  // namespace

PotentialTriple GraphDefinition::potentials() const { return PotentialTriple::fromText(n, u[0], u[1], u[2]); }

GraphDefinition parseDefinition(std::string_view text, const std::string& source) {
    GraphDefinition def;
    def.source = source;
    std::map<std::string, int> seen;
    std::vector<std::pair<double, double>> boxAxes = {{-1.0, 1.0}};
    int boxLine = 0;
    int grid = 21;
    bool haveN = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (value.empty()) fail(line, "missing value for '" + key + "'");
        if (seen.count(key)) fail(line, "duplicate key '" + key + "' (first on line " + std::to_string(seen[key]) + ")");
        seen[key] = line;

        if (key == "n") {
            def.n = toInt(value, line, key);
            if (def.n < 1 || def.n > kMaxDimension) {
                fail(line, "n must be between 1 and " + std::to_string(kMaxDimension));
            }
            haveN = true;
        } else if (key == "shape") {
            try {
                def.shape = shapeFromString(value);
            } catch (const ConfigError& e) {
                fail(line, e.what());
            }
        } else if (key == "u1" || key == "u2" || key == "u3") {
            def.u[static_cast<std::size_t>(key[1] - '1')] = value;
        } else if (key == "box") {
            boxAxes = parseBox(value, line);
            boxLine = line;
        } else if (key == "grid") {
            grid = toInt(value, line, key);
            if (grid < 2) fail(line, "grid must be at least 2");
        } else if (key == "lagrangian_tol") {
            def.tol.lagrangianTol = toDouble(value, line, key);
        } else if (key == "minimality_tol") {
            def.tol.minimalityTol = toDouble(value, line, key);
        } else if (key == "fd_step") {
            def.tol.fdStep = toDouble(value, line, key);
            if (!(def.tol.fdStep > 0.0)) fail(line, "fd_step must be positive");
        } else {
            fail(line, "unknown key '" + key + "'");
        }
    }
    if (!haveN) throw ConfigError("line " + std::to_string(line) + ": missing required key 'n'");

    if (boxAxes.size() == 1) {
        def.box.axes.assign(static_cast<std::size_t>(def.n), boxAxes.front());
    } else if (static_cast<int>(boxAxes.size()) == def.n) {
        def.box.axes = boxAxes;
    } else {
        fail(boxLine, "box has " + std::to_string(boxAxes.size()) + " intervals but n = " + std::to_string(def.n));
    }
    def.box.grid = grid;

    for (std::size_t s = 0; s < 3; ++s) {
        const std::string key = "u" + std::to_string(s + 1);
        try {
            parse(def.u[s], def.n);
        } catch (const ParseError& e) {
            fail(seen.count(key) ? seen[key] : 0, key + ": " + e.what());
        }
    }
    const PotentialTriple pt = def.potentials();
    if (!pt.hasShape(def.shape)) {
        fail(seen.count("shape") ? seen["shape"] : 0,
             "potentials do not have the declared shape '" + toString(def.shape) + "'");
    }
    return def;
}

GraphDefinition loadDefinition(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open definition file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parseDefinition(buf.str(), path.string());
}

std::vector<std::string> fixtureNames() { return {"sigma1", "sigma2", "cubic-sl", "quadratic", "zero"}; }

GraphDefinition fixture(std::string_view name) {
    // Harmonic cubic u = Re z^3; its gradient graphs are holomorphic curves, hence minimal.
    const std::string cubic = "x1^3 - 3*x1*x2^2";
    std::string text;
    if (name == "sigma1") {
        // (x, grad u, x, grad u) with x = grad(|x|^2 / 2).
        text = "n = 2\nshape = general-triple\nu1 = " + cubic + "\nu2 = 0.5*(x1^2 + x2^2)\nu3 = " + cubic + "\n";
    } else if (name == "sigma2") {
        text = "n = 2\nshape = triple-equal\nu1 = " + cubic + "\nu2 = " + cubic + "\nu3 = " + cubic + "\n";
    } else if (name == "cubic-sl") {
        text = "n = 2\nshape = special-lagrangian\nu1 = " + cubic + "\nu2 = 0\nu3 = 0\n";
    } else if (name == "quadratic") {
        text = "n = 2\nshape = general-triple\nu1 = 0.5*(x1^2 + x2^2)\nu2 = 0.3*x1^2 - 0.2*x2^2\n"
               "u3 = 0.1*x1^2 + 0.4*x2^2\n";
    } else if (name == "zero") {
        text = "n = 2\nshape = triple-equal\nu1 = 0\nu2 = 0\nu3 = 0\n";
    } else {
        throw ConfigError("unknown fixture '" + std::string(name) + "'");
    }
    text += "box = -1:1\ngrid = 21\n";
    return parseDefinition(text, "fixture:" + std::string(name));
}

}  // namespace mlg
