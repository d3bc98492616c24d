#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mlg/lagrangian.hpp"
#include "mlg/sampling.hpp"

namespace mlg {

inline constexpr int kMaxDimension = 8;

struct Tolerances {
    double lagrangianTol = 1e-9;
    double minimalityTol = 1e-7;
    double fdStep = 1e-3;
};

/// A graph to sweep: potentials, declared shape, sampling box and tolerances.
struct GraphDefinition {
    std::string source;  // file path or "fixture:<name>"
    int n = 2;
    GraphShape shape = GraphShape::GeneralTriple;
    std::array<std::string, 3> u = {"0", "0", "0"};
    Box box;
    Tolerances tol;

    PotentialTriple potentials() const;
};

/// Parses the `key = value` definition format; `#` starts a comment.
///
///   n = 2
///   shape = triple-equal            # general-triple | special-lagrangian | triple-equal
///   u1 = x1^3 - 3*x1*x2^2
///   u2 = x1^3 - 3*x1*x2^2
///   u3 = x1^3 - 3*x1*x2^2
///   box = -1:1                      # one interval for every axis, or one per axis: -1:1, 0:2
///   grid = 21
///   lagrangian_tol = 1e-9
///   minimality_tol = 1e-7
///   fd_step = 1e-3
///
/// Throws ConfigError with the offending line number.
GraphDefinition parseDefinition(std::string_view text, const std::string& source = "<string>");
GraphDefinition loadDefinition(const std::filesystem::path& path);

/// Built-in graphs: sigma1, sigma2, cubic-sl, quadratic, zero.
GraphDefinition fixture(std::string_view name);
std::vector<std::string> fixtureNames();

}  // namespace mlg
