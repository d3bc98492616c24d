#include "mlg/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "mlg/bernstein.hpp"
#include "mlg/curvature.hpp"
#include "mlg/error.hpp"

namespace mlg::cli {

using report::Json;
using report::num;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Running maximum with the first sample that attains it.
struct Sup {
    double value = 0.0;
    Point witness;
    bool set = false;

    void update(double v, const Point& x) {
        if (std::isnan(v)) v = kInf;
        if (!set || v > value) {
            value = v;
            witness = x;
            set = true;
        }
    }

    Json toJson(double tol) const {
        Json j = report::compared(value, tol, value <= tol);
        j["witness"] = report::point(witness);
        return j;
    }
    bool within(double tol) const { return value <= tol; }
};

std::string describe(const Point& x) {
    std::ostringstream s;
    s << "(";
    for (std::size_t i = 0; i < x.size(); ++i) s << (i ? "," : "") << x[i];
    s << ")";
    return s.str();
}

/// Evaluates f on every point in parallel; a DomainError at any point is
/// rethrown for the first such point in lattice order.
template <class R, class F>
std::vector<R> sweep(const std::vector<Point>& pts, F f) {
    std::vector<R> out(pts.size());
    std::vector<std::string> errors(pts.size());
    parallelFor(pts.size(), [&](std::size_t i) {
        try {
            out[i] = f(pts[i]);
        } catch (const DomainError& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!errors[i].empty()) throw DomainError(errors[i] + " at " + describe(pts[i]));
    }
    return out;
}

Json definitionEcho(const GraphDefinition& def) {
    Json d;
    d["source"] = def.source;
    d["n"] = def.n;
    d["shape"] = toString(def.shape);
    d["u1"] = def.u[0];
    d["u2"] = def.u[1];
    d["u3"] = def.u[2];
    Json box = Json::array();
    for (const auto& [lo, hi] : def.box.axes) box.push_back(Json::array({num(lo), num(hi)}));
    d["box"] = box;
    d["grid"] = def.box.grid;
    d["tolerances"] = {{"lagrangian_tol", num(def.tol.lagrangianTol)},
                       {"minimality_tol", num(def.tol.minimalityTol)},
                       {"fd_step", num(def.tol.fdStep)}};
    return d;
}

Json entryJson(const HypothesisEntry& e, const std::string& bound) {
    Json j;
    j["id"] = toString(e.id);
    j["hypothesis"] = bound;
    j["holds"] = e.holds;
    j["margin"] = num(e.margin);
    j["witness"] = report::point(e.witness);
    j["K"] = num(e.K);
    j["K_kind"] = "sample-sup";
    j["sampled_points"] = e.sampledPoints;
    j["conclusion_if_global"] = conclusion(e.id);
    return j;
}

std::string hypothesisText(TheoremId id) {
    switch (id) {
        case TheoremId::Thm32: return "|lambda| <= K and S_ij + S_jk + S_ki >= (-3 + delta) I";
        case TheoremId::CorSij: return "|lambda| <= K and S_ij >= (-3/2 + delta) I";
        case TheoremId::CorLambdaNorm: return "|Lambda_i|^2 <= 3/2 - delta";
        case TheoremId::ThmCnSqrt6: return "Hess u >= -C I with C < sqrt(6)/12";
        case TheoremId::ThmHnSqrt2: return "Hess u >= -C I with C < sqrt(2)/12";
        case TheoremId::CorConvex: return "Hess u >= 0";
    }
    return "";
}

int exitFor(bool pass) { return pass ? kExitPass : kExitCheckFailed; }

}  // namespace

GraphDefinition withOverrides(GraphDefinition def, const RunOptions& opt) {
    if (opt.grid) {
        if (*opt.grid < 2) throw ConfigError("--grid must be at least 2");
        def.box.grid = *opt.grid;
    }
    if (opt.eta) {
        if (!(*opt.eta > 0.0)) throw ConfigError("--eta must be positive");
        def.tol.fdStep = *opt.eta;
    }
    return def;
}

RunReport cmdCheck(const GraphDefinition& def, const RunOptions&) {
    const PotentialTriple pt = def.potentials();
    const auto pts = def.box.lattice();
    const auto sym = SymplecticStructures::forDimension(def.n);
    struct Row {
        double commutator = 0.0, general = 0.0;
        std::array<double, 3> pullback{};
    };
    const auto rows = sweep<Row>(pts, [&](const Point& x) {
        const auto jets = potentialJets(pt, x);
        const Hessians h = hessiansOf(jets);
        Row r;
        r.commutator = commutatorResidual(h);
        r.general = lagrangianResidualGeneral(h);
        r.pullback = pullbackResidual(embed(x, jets), sym);
        return r;
    });

    const double tol = def.tol.lagrangianTol;
    Sup comm, general;
    std::array<Sup, 3> pull;
    bool consistent = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Row& r = rows[i];
        comm.update(r.commutator, pts[i]);
        general.update(r.general, pts[i]);
        for (std::size_t s = 0; s < 3; ++s) pull[s].update(r.pullback[s], pts[i]);
        const bool a = r.commutator <= tol;
        const bool b = r.general <= tol;
        const bool c = std::max({r.pullback[0], r.pullback[1], r.pullback[2]}) <= tol;
        consistent = consistent && a == b && b == c;
    }

    Json res;
    res["sampled_points"] = pts.size();
    res["commutator_residual"] = comm.toJson(tol);
    res["general_residual"] = general.toJson(tol);
    Json pb;
    const char* names[] = {"I", "J", "K"};
    for (std::size_t s = 0; s < 3; ++s) pb[names[s]] = pull[s].toJson(tol);
    res["pullback_residual"] = pb;
    res["criteria_agree_at_every_point"] = consistent;

    const bool pass = comm.within(tol) && general.within(tol) && pull[0].within(tol) && pull[1].within(tol) &&
                      pull[2].within(tol);
    RunReport out;
    out.doc["results"] = res;
    out.exitCode = exitFor(pass);
    return out;
}

RunReport cmdFrame(const GraphDefinition& def, const RunOptions& opt) {
    const PotentialTriple pt = def.potentials();
    Point x;
    if (opt.point) {
        x = *opt.point;
        if (static_cast<int>(x.size()) != def.n) {
            throw ConfigError("--point has " + std::to_string(x.size()) + " coordinates but n = " +
                              std::to_string(def.n));
        }
    } else {
        for (const auto& [lo, hi] : def.box.axes) x.push_back(0.5 * (lo + hi));
    }

    const PointGeometry g = analyzePoint(pt, x, def.tol.lagrangianTol);
    const auto sym = SymplecticStructures::forDimension(def.n);
    const FrameDefects defects = frameDefects(g.frame, g.spectrum, g.hess, g.embedding, sym);
    const double viaDet = starOmegaDet(g.hess);
    const double rel = std::abs(g.starOmega - viaDet) / viaDet;

    Json res;
    res["point"] = report::point(x);
    res["commutator_residual"] = report::compared(g.spectrum.commutatorResidual, def.tol.lagrangianTol,
                                                  !g.spectrum.approximate);
    Json lambdas = Json::array();
    Json normalizers = Json::array();
    Json basis = Json::array();
    for (int i = 0; i < def.n; ++i) {
        lambdas.push_back(Json::array({num(g.spectrum.lambdas(i, 0)), num(g.spectrum.lambdas(i, 1)),
                                       num(g.spectrum.lambdas(i, 2))}));
        normalizers.push_back(num(g.spectrum.normalizers(i)));
        Json col = Json::array();
        for (int a = 0; a < def.n; ++a) col.push_back(num(g.spectrum.basis(a, i)));
        basis.push_back(col);
    }
    res["Lambda"] = lambdas;
    res["A"] = normalizers;
    res["basis"] = basis;
    res["star_omega"] = {{"spectral", num(g.starOmega)},
                         {"determinant", num(viaDet)},
                         {"relative_difference", report::compared(rel, kStarOmegaRelTol, rel <= kStarOmegaRelTol)}};
    Json frame;
    const Eigen::MatrixXd all = g.frame.all();
    for (int c = 0; c < all.cols(); ++c) {
        Json v = Json::array();
        for (int r = 0; r < all.rows(); ++r) v.push_back(num(all(r, c)));
        frame["e" + std::to_string(c + 1)] = v;
    }
    res["frame"] = frame;
    res["defects"] = {
        {"orthonormality", report::compared(defects.orthonormality, kFrameTol, defects.orthonormality <= kFrameTol)},
        {"complex_structure",
         report::compared(defects.complexStructure, kFrameTol, defects.complexStructure <= kFrameTol)},
        {"tangency", report::compared(defects.tangency, kFrameTol, defects.tangency <= kFrameTol)},
        {"reconstruction",
         report::compared(defects.reconstruction, kReconstructionTol, defects.reconstruction <= kReconstructionTol)},
    };

    const bool pass = defects.worst() <= kFrameTol && defects.reconstruction <= kReconstructionTol &&
                      rel <= kStarOmegaRelTol && !g.spectrum.approximate;
    RunReport out;
    out.doc["results"] = res;
    out.exitCode = exitFor(pass);
    return out;
}

RunReport cmdCurvature(const GraphDefinition& def, const RunOptions&) {
    const PotentialTriple pt = def.potentials();
    const auto pts = def.box.lattice();
    const auto sym = SymplecticStructures::forDimension(def.n);
    const double eta = def.tol.fdStep;
    struct Row {
        bool lagrangian = true;
        double starOmega = 0.0, routeRel = 0.0, frame = 0.0, reconstruction = 0.0;
        double meanCurvature = 0.0, asymmetry = 0.0, gradient = 0.0;
    };
    const auto rows = sweep<Row>(pts, [&](const Point& x) {
        Row r;
        try {
            const PointGeometry g = analyzePoint(pt, x, def.tol.lagrangianTol);
            const FrameDefects d = frameDefects(g.frame, g.spectrum, g.hess, g.embedding, sym);
            const double viaDet = starOmegaDet(g.hess);
            r.starOmega = g.starOmega;
            r.routeRel = std::abs(g.starOmega - viaDet) / viaDet;
            r.frame = d.worst();
            r.reconstruction = d.reconstruction;
            r.meanCurvature = meanCurvatureNorm(g.sff);
            r.asymmetry = g.sff.asymmetry();
            r.gradient = starOmegaGradientCheck(pt, x, eta, def.tol.lagrangianTol);
        } catch (const NotCommuting&) {
            r.lagrangian = false;
        }
        return r;
    });

    Sup route, frame, recon, mean, asym, grad;
    double omegaMin = kInf, omegaMax = -kInf;
    std::size_t nonLagrangian = 0;
    Point firstNonLagrangian;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Row& r = rows[i];
        if (!r.lagrangian) {
            if (nonLagrangian++ == 0) firstNonLagrangian = pts[i];
            continue;
        }
        omegaMin = std::min(omegaMin, r.starOmega);
        omegaMax = std::max(omegaMax, r.starOmega);
        route.update(r.routeRel, pts[i]);
        frame.update(r.frame, pts[i]);
        recon.update(r.reconstruction, pts[i]);
        mean.update(r.meanCurvature, pts[i]);
        asym.update(r.asymmetry, pts[i]);
        grad.update(r.gradient, pts[i]);
    }

    Json res;
    res["sampled_points"] = pts.size();
    res["not_lagrangian_points"] = {{"count", nonLagrangian}, {"first", report::point(firstNonLagrangian)}};
    res["star_omega"] = {{"min", num(omegaMin)}, {"max", num(omegaMax)}, {"route_relative_difference", route.toJson(kStarOmegaRelTol)}};
    res["frame_defect"] = frame.toJson(kFrameTol);
    res["reconstruction_defect"] = recon.toJson(kReconstructionTol);
    res["h_asymmetry"] = asym.toJson(kSymmetryTol);
    Json mc = mean.toJson(def.tol.minimalityTol);
    mc["minimal_on_sample"] = mc["pass"];
    mc.erase("pass");
    res["mean_curvature"] = mc;
    Json gj = grad.toJson(kGradientCheckTol);
    gj["eta"] = num(eta);
    res["star_omega_gradient"] = gj;

    const bool pass = nonLagrangian == 0 && route.within(kStarOmegaRelTol) && frame.within(kFrameTol) &&
                      recon.within(kReconstructionTol) && asym.within(kSymmetryTol) && grad.within(kGradientCheckTol);
    RunReport out;
    out.doc["results"] = res;
    out.exitCode = exitFor(pass);
    return out;
}

RunReport cmdBochner(const GraphDefinition& def, const RunOptions&) {
    const PotentialTriple pt = def.potentials();
    const auto pts = def.box.interior(kInteriorMargin);
    const double eta0 = def.tol.fdStep;
    const std::array<double, 3> steps = {4.0 * eta0, 2.0 * eta0, eta0};
    BochnerOptions bopt;
    bopt.minimalityTol = def.tol.minimalityTol;
    bopt.lagrangianTol = def.tol.lagrangianTol;

    struct Row {
        std::string failure;  // NotMinimal / NotCommuting message
        std::array<BochnerReport, 3> reports;
    };
    const auto rows = sweep<Row>(pts, [&](const Point& x) {
        Row r;
        try {
            for (std::size_t k = 0; k < steps.size(); ++k) r.reports[k] = bochnerVerify(pt, x, steps[k], bopt);
        } catch (const NotMinimal& e) {
            r.failure = std::string("not minimal: ") + e.what();
        } catch (const NotCommuting& e) {
            r.failure = std::string("not Lagrangian: ") + e.what();
        }
        return r;
    });

    std::size_t failures = 0;
    Json failed = Json::array();
    Sup normalized, rewrite;
    std::array<Sup, 3> absolute;
    Json worst;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Row& r = rows[i];
        if (!r.failure.empty()) {
            if (failures++ < 10) failed.push_back({{"point", report::point(pts[i])}, {"reason", r.failure}});
            continue;
        }
        for (std::size_t k = 0; k < steps.size(); ++k) absolute[k].update(r.reports[k].discrepancy(), pts[i]);
        const BochnerReport& fine = r.reports[2];
        const double rel = fine.discrepancy() / (1.0 + std::abs(fine.rhsQuadratic));
        if (!normalized.set || rel > normalized.value) {
            worst = {{"lhs", num(fine.lhs)}, {"rhs", num(fine.rhsQuadratic)}};
        }
        normalized.update(rel, pts[i]);
        for (const auto& rep : r.reports) {
            rewrite.update(std::abs(rep.rhsQuadratic - rep.rhsSymmetrized) / std::max(1.0, std::abs(rep.rhsQuadratic)),
                           pts[i]);
        }
    }

    Json res;
    res["interior_points"] = pts.size();
    res["interior_margin_cells"] = kInteriorMargin;
    res["failed_points"] = {{"count", failures}, {"first", failed}};
    Json disc = normalized.toJson(kBochnerRelTol);
    disc["eta"] = num(eta0);
    disc["measure"] = "|lhs - rhs| / (1 + |rhs|)";
    disc["at_witness"] = worst;
    res["discrepancy"] = disc;
    Json rw = rewrite.toJson(kRewriteTol);
    rw["measure"] = "|rhs_quadratic - rhs_symmetrized| / max(1, |rhs_quadratic|)";
    res["rewrite_identity"] = rw;

    Json table = Json::array();
    for (std::size_t k = 0; k < steps.size(); ++k) {
        table.push_back({{"eta", num(steps[k])}, {"sup_abs_discrepancy", num(absolute[k].value)}});
    }
    Json ratios = Json::array();
    bool convergencePass = true;
    for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
        const double coarse = absolute[k].value, finer = absolute[k + 1].value;
        if (coarse <= kConvergenceFloor) {
            ratios.push_back("below-floor");
            continue;
        }
        const double ratio = finer > 0.0 ? coarse / finer : kInf;
        ratios.push_back(num(ratio));
        convergencePass = convergencePass && ratio >= kConvergenceRatio;
    }
    res["convergence"] = {{"table", table},
                          {"ratios", ratios},
                          {"required_ratio", num(kConvergenceRatio)},
                          {"floor", num(kConvergenceFloor)},
                          {"pass", convergencePass}};

    const bool pass = failures == 0 && normalized.within(kBochnerRelTol) && rewrite.within(kRewriteTol) &&
                      convergencePass;
    RunReport out;
    out.doc["results"] = res;
    out.exitCode = exitFor(pass);
    return out;
}

RunReport cmdHypotheses(const GraphDefinition& def, const RunOptions&) {
    const PotentialTriple pt = def.potentials();
    const auto pts = def.box.lattice();
    struct Row {
        bool lagrangian = true;
        SampledSpectrum spectrum;
        SampledHessian hessian;
    };
    const auto rows = sweep<Row>(pts, [&](const Point& x) {
        Row r;
        const auto jets = potentialJets(pt, x);
        r.hessian = {x, jets[0].hess};
        try {
            r.spectrum = {x, jointDiagonalize(hessiansOf(jets), def.tol.lagrangianTol)};
            r.lagrangian = !r.spectrum.spectrum.approximate;
        } catch (const NotCommuting&) {
            r.lagrangian = false;
        }
        return r;
    });

    std::vector<SampledSpectrum> spectra;
    std::vector<SampledHessian> hessians;
    std::size_t nonLagrangian = 0;
    for (const Row& r : rows) {
        hessians.push_back(r.hessian);
        if (r.lagrangian) {
            spectra.push_back(r.spectrum);
        } else {
            ++nonLagrangian;
        }
    }

    Json entries = Json::array();
    bool allHold = nonLagrangian == 0;
    for (const HypothesisEntry& e :
         {checkTheorem32(spectra), checkCorollarySij(spectra), checkCorollaryLambdaNorm(spectra)}) {
        entries.push_back(entryJson(e, hypothesisText(e.id)));
        allHold = allHold && e.holds;
    }
    Json notApplicable = Json::array();
    if (pt.isSpecialLagrangian() || pt.isTripleEqual()) {
        for (const HypothesisEntry& e : checkHessianLowerBound(pt, hessians)) {
            entries.push_back(entryJson(e, hypothesisText(e.id)));
            allHold = allHold && e.holds;
        }
    }
    if (!pt.isSpecialLagrangian()) notApplicable.push_back(toString(TheoremId::ThmCnSqrt6));
    if (!pt.isTripleEqual()) {
        notApplicable.push_back(toString(TheoremId::ThmHnSqrt2));
        notApplicable.push_back(toString(TheoremId::CorConvex));
    }

    Json res;
    res["scope"] = "hypotheses certified on the sampled lattice only, not on all of R^n";
    res["sampled_points"] = pts.size();
    res["not_lagrangian_points"] = nonLagrangian;
    res["entries"] = entries;
    res["not_applicable"] = notApplicable;
    RunReport out;
    out.doc["results"] = res;
    out.exitCode = exitFor(allHold);
    return out;
}

RunReport cmdLewy(const GraphDefinition& def, const RunOptions& opt) {
    const PotentialTriple pt = def.potentials();
    const LewyMode mode = opt.mode;
    if (mode == LewyMode::Complex && !pt.isSpecialLagrangian()) {
        throw ShapeMismatch("complex Lewy transform needs the shape (x, grad u, 0, 0)");
    }
    if (mode == LewyMode::Quaternionic && !pt.isTripleEqual()) {
        throw ShapeMismatch("quaternionic Lewy transform needs the shape (x, grad u, grad u, grad u)");
    }
    const Expr& u = pt.u[0];
    const auto pts = def.box.lattice();
    const auto jets = sweep<Jet3>(pts, [&](const Point& x) { return jetEval(u, x); });

    std::vector<SampledHessian> hs;
    for (std::size_t i = 0; i < pts.size(); ++i) hs.push_back({pts[i], jets[i].hess});
    const auto [measured, measuredWitness] = measuredLowerBound(hs);
    const double C = opt.cBound.value_or(measured);
    const LewyParams p = lewyParams(mode, C);

    const double sqrt3 = std::sqrt(3.0);
    const double fixedPoint = mode == LewyMode::Complex
                                  ? std::abs(p.h - (1.0 + p.h * C) / (p.h - C))
                                  : std::abs(p.h / sqrt3 - (1.0 / sqrt3 + p.h * C) / (p.h - sqrt3 * C));
    const double unit = mode == LewyMode::Complex ? p.a * p.a + p.b * p.b : p.a * p.a + 3.0 * p.b * p.b;

    const int n = def.n;
    const Eigen::MatrixXd rot = ambientRotation(p, n);
    const int blocks = mode == LewyMode::Complex ? 2 : 4;
    const double orthogonality =
        (rot.transpose() * rot - Eigen::MatrixXd::Identity(blocks * n, blocks * n)).cwiseAbs().maxCoeff();

    std::size_t violations = 0;
    Point firstViolation;
    Sup interval, routes, rotationRoute, asymmetry;
    double eigMin = kInf, eigMax = -kInf;
    std::vector<TransformedPoint> transformed(pts.size());
    std::vector<bool> ok(pts.size(), false);
    std::vector<SampledSpectrum> barSpectra;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        try {
            transformed[i] = lewyTransform(jets[i], pts[i], p);
        } catch (const BoundViolated&) {
            if (violations++ == 0) firstViolation = pts[i];
            continue;
        }
        ok[i] = true;
        const TransformedPoint& t = transformed[i];
        asymmetry.update((t.hessUbar - t.hessUbar.transpose()).cwiseAbs().maxCoeff(), pts[i]);
        const Eigen::MatrixXd symmetric = 0.5 * (t.hessUbar + t.hessUbar.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric, Eigen::EigenvaluesOnly);
        const Eigen::VectorXd matrixRoute = eig.eigenvalues();
        const Eigen::VectorXd eigenRoute = transformedEigenvalues(jets[i].hess, p);
        routes.update((matrixRoute - eigenRoute).cwiseAbs().maxCoeff(), pts[i]);
        eigMin = std::min(eigMin, matrixRoute.minCoeff());
        eigMax = std::max(eigMax, matrixRoute.maxCoeff());
        const double below = p.lowerEndpoint() - matrixRoute.minCoeff();
        const double above = matrixRoute.maxCoeff() - p.upperEndpoint();
        interval.update(std::max({0.0, below, above}), pts[i]);

        Eigen::VectorXd embedded(blocks * n);
        embedded.head(n) = Eigen::Map<const Eigen::VectorXd>(pts[i].data(), n);
        for (int b = 1; b < blocks; ++b) embedded.segment(b * n, n) = jets[i].grad;
        const Eigen::VectorXd rotated = rot * embedded;
        double diff = (rotated.head(n) - t.xbar).cwiseAbs().maxCoeff();
        for (int b = 1; b < blocks; ++b) diff = std::max(diff, (rotated.segment(b * n, n) - t.ybar).cwiseAbs().maxCoeff());
        rotationRoute.update(diff, pts[i]);

        Eigen::MatrixXd lambdas = Eigen::MatrixXd::Zero(n, 3);
        for (int k = 0; k < n; ++k) {
            lambdas(k, 0) = matrixRoute(k);
            if (mode == LewyMode::Quaternionic) lambdas(k, 1) = lambdas(k, 2) = matrixRoute(k);
        }
        barSpectra.push_back({pts[i], Spectrum::fromLambdas(lambdas)});
    }

    // Injectivity on deterministic pseudo-random pairs of lattice points.
    std::mt19937_64 rng(0x5eedULL);
    double worstRatio = kInf;
    std::size_t pairs = 0;
    Json worstPair = Json::array();
    if (pts.size() > 1) {
        for (std::size_t trial = 0; trial < kInjectivityPairs; ++trial) {
            const std::size_t i = static_cast<std::size_t>(rng() % pts.size());
            const std::size_t j = static_cast<std::size_t>(rng() % pts.size());
            if (i == j || !ok[i] || !ok[j]) continue;
            ++pairs;
            double dx = 0.0;
            for (int a = 0; a < n; ++a) {
                const double d = pts[i][static_cast<std::size_t>(a)] - pts[j][static_cast<std::size_t>(a)];
                dx += d * d;
            }
            const double ratio = (transformed[i].xbar - transformed[j].xbar).squaredNorm() / dx;
            if (ratio < worstRatio) {
                worstRatio = ratio;
                worstPair = Json::array({report::point(pts[i]), report::point(pts[j])});
            }
        }
    }
    const double jacobianBound = p.jacobianLowerBound();
    const bool injective = pairs == 0 || worstRatio >= jacobianBound * (1.0 - 1e-12);

    RoundTrip rt;
    bool roundTripRan = false;
    if (violations == 0) {
        rt = verifyLewyRoundTrip(u, p, pts, def.tol.fdStep);
        roundTripRan = true;
    }
    const HypothesisEntry lambdaNorm = checkCorollaryLambdaNorm(barSpectra);

    Json params;
    params["mode"] = toString(mode);
    params["C"] = num(C);
    params["C_source"] = opt.cBound ? "given" : "measured";
    params["measured_C"] = {{"value", num(measured)}, {"witness", report::point(measuredWitness)}};
    params["h"] = num(p.h);
    params["a"] = num(p.a);
    params["b"] = num(p.b);
    params["unit_identity_residual"] = num(std::abs(unit - 1.0));
    params["fixed_point_residual"] = num(fixedPoint);
    params["lower_endpoint"] = num(p.lowerEndpoint());
    params["upper_endpoint"] = num(p.upperEndpoint());
    params["jacobian_lower_bound"] = num(jacobianBound);

    Json res;
    res["params"] = params;
    res["sampled_points"] = pts.size();
    res["bound_violations"] = {{"count", violations}, {"first", report::point(firstViolation)}};
    res["hess_ubar"] = {{"min_eigenvalue", num(eigMin)},
                        {"max_eigenvalue", num(eigMax)},
                        {"interval_violation", interval.toJson(kLewyIntervalTol)},
                        {"asymmetry", asymmetry.toJson(kLewyRouteTol)},
                        {"matrix_vs_eigen_route", routes.toJson(kLewyRouteTol)}};
    res["injectivity"] = {{"pairs", pairs},
                          {"min_ratio", num(pairs ? worstRatio : 0.0)},
                          {"bound", num(jacobianBound)},
                          {"worst_pair", worstPair},
                          {"pass", injective}};
    res["ambient_rotation"] = {{"orthogonality", report::compared(orthogonality, kRotationTol, orthogonality <= kRotationTol)},
                               {"rotation_vs_formula_route", rotationRoute.toJson(kRotationTol)}};
    Json round;
    round["ran"] = roundTripRan;
    round["eta"] = num(def.tol.fdStep);
    round["asymmetry"] = report::compared(rt.asymmetry, kLewyRouteTol, rt.asymmetry <= kLewyRouteTol);
    round["fd_discrepancy"] = report::compared(rt.discrepancy, kLewyRoundTripTol, rt.discrepancy <= kLewyRoundTripTol);
    res["gradient_graph_round_trip"] = round;
    res["transformed_lambda_norm"] = entryJson(lambdaNorm, hypothesisText(lambdaNorm.id));

    const bool pass = violations == 0 && interval.within(kLewyIntervalTol) && routes.within(kLewyRouteTol) &&
                      asymmetry.within(kLewyRouteTol) && injective && orthogonality <= kRotationTol &&
                      rotationRoute.within(kRotationTol) && rt.asymmetry <= kLewyRouteTol &&
                      rt.discrepancy <= kLewyRoundTripTol;
    RunReport out;
    out.doc["results"] = res;
    out.exitCode = exitFor(pass);
    return out;
}

std::vector<std::string> commandNames() { return {"check", "frame", "curvature", "bochner", "hypotheses", "lewy"}; }

std::string gridCsv(const GraphDefinition& def) {
    const PotentialTriple pt = def.potentials();
    const auto pts = def.box.lattice();
    struct Row {
        double starOmega = NAN, mean = NAN, thm = NAN, sij = NAN, norm = NAN;
    };
    const auto rows = sweep<Row>(pts, [&](const Point& x) {
        Row r;
        try {
            const PointGeometry g = analyzePoint(pt, x, def.tol.lagrangianTol);
            r.starOmega = g.starOmega;
            r.mean = meanCurvatureNorm(g.sff);
            r.thm = 3.0 + tripleSumMinEigenvalue(g.spectrum);
            r.sij = 1.5 + pairMinEigenvalue(g.spectrum);
            r.norm = 1.5 - maxLambdaNormSquared(g.spectrum);
        } catch (const NotCommuting&) {
        }
        return r;
    });
    std::ostringstream out;
    for (int a = 0; a < def.n; ++a) out << "x" << a + 1 << ",";
    out << "star_omega,mean_curvature,margin_thm32,margin_sij,margin_lambda_norm\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (double v : pts[i]) out << report::cell(v) << ",";
        const Row& r = rows[i];
        out << report::cell(r.starOmega) << "," << report::cell(r.mean) << "," << report::cell(r.thm) << ","
            << report::cell(r.sij) << "," << report::cell(r.norm) << "\n";
    }
    return out.str();
}

RunReport runCommand(std::string_view name, const GraphDefinition& rawDef, const RunOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    const GraphDefinition def = withOverrides(rawDef, opt);

    RunReport body;
    if (name == "check") {
        body = cmdCheck(def, opt);
    } else if (name == "frame") {
        body = cmdFrame(def, opt);
    } else if (name == "curvature") {
        body = cmdCurvature(def, opt);
    } else if (name == "bochner") {
        body = cmdBochner(def, opt);
    } else if (name == "hypotheses") {
        body = cmdHypotheses(def, opt);
    } else if (name == "lewy") {
        body = cmdLewy(def, opt);
    } else {
        throw ConfigError("unknown command '" + std::string(name) + "'");
    }

    RunReport out;
    out.exitCode = body.exitCode;
    out.doc["tool"] = {{"name", report::kToolName}, {"version", report::kToolVersion}};
    out.doc["command"] = std::string(name);
    out.doc["definition"] = definitionEcho(def);
    out.doc["results"] = body.doc["results"];
    out.doc["status"] = body.exitCode == kExitPass ? "pass" : "fail";
    out.doc["exit_code"] = body.exitCode;
    if (opt.wantCsv) out.csv = gridCsv(def);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.doc["wall_time_s"] = num(elapsed);
    return out;
}

}  // namespace mlg::cli
