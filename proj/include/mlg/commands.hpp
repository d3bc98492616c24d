#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlg/definition.hpp"
#include "mlg/lewy.hpp"
#include "mlg/report.hpp"

namespace mlg::cli {

/// Exit-code contract of every command.
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

/// Fixed comparison tolerances used by the sweeps.
inline constexpr double kFrameTol = 1e-10;
inline constexpr double kStarOmegaRelTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-9;
inline constexpr double kSymmetryTol = 1e-9;
inline constexpr double kGradientCheckTol = 1e-5;
inline constexpr double kBochnerRelTol = 1e-4;
inline constexpr double kRewriteTol = 1e-10;
inline constexpr double kConvergenceRatio = 3.0;
inline constexpr double kConvergenceFloor = 1e-9;
inline constexpr double kLewyIntervalTol = 1e-9;
inline constexpr double kLewyRouteTol = 1e-10;
inline constexpr double kLewyRoundTripTol = 1e-5;
inline constexpr double kRotationTol = 1e-12;
inline constexpr int kInteriorMargin = 2;
inline constexpr std::size_t kInjectivityPairs = 1000;

struct RunOptions {
    std::optional<int> grid;
    std::optional<double> eta;
    LewyMode mode = LewyMode::Complex;
    std::optional<double> cBound;
    std::optional<Point> point;
    bool wantCsv = false;
};

struct RunReport {
    report::Json doc;
    int exitCode = kExitPass;
    std::string csv;  // filled when RunOptions::wantCsv
};

RunReport cmdCheck(const GraphDefinition& def, const RunOptions& opt = {});
RunReport cmdFrame(const GraphDefinition& def, const RunOptions& opt = {});
RunReport cmdCurvature(const GraphDefinition& def, const RunOptions& opt = {});
RunReport cmdBochner(const GraphDefinition& def, const RunOptions& opt = {});
RunReport cmdHypotheses(const GraphDefinition& def, const RunOptions& opt = {});
RunReport cmdLewy(const GraphDefinition& def, const RunOptions& opt = {});

std::vector<std::string> commandNames();

/// Dispatches by name and stamps tool, command, definition echo and wall time.
RunReport runCommand(std::string_view name, const GraphDefinition& def, const RunOptions& opt = {});

/// Per-point CSV: coordinates, *Omega, mean curvature and the three spectral margins.
std::string gridCsv(const GraphDefinition& def);

/// Applies --grid / --eta overrides.
GraphDefinition withOverrides(GraphDefinition def, const RunOptions& opt);

}  // namespace mlg::cli
