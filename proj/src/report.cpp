#include "mlg/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace mlg::report {

Json num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

Json point(const Point& p) {
    Json arr = Json::array();
    for (double v : p) arr.push_back(num(v));
    return arr;
}

Json compared(double value, double tol, bool pass) {
    Json j;
    j["value"] = num(value);
    j["tol"] = num(tol);
    j["pass"] = pass;
    return j;
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

std::string cell(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace mlg::report
