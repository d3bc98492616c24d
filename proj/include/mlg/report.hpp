#pragma once

#include <string>

#include <json.hpp>

#include "mlg/sampling.hpp"

namespace mlg::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "mlg";
inline constexpr const char* kToolVersion = "1.0.0";

/// Rounds to 10 significant digits so reports are stable under last-bit noise.
/// Negative zero becomes zero; non-finite values become strings.
Json num(double v);

Json point(const Point& p);

/// {"value", "tol", "pass"}: every compared number travels with its tolerance.
Json compared(double value, double tol, bool pass);

/// Pretty-printed document with a trailing newline.
std::string render(const Json& doc);

/// Fixed-format number for CSV cells.
std::string cell(double v);

}  // namespace mlg::report
