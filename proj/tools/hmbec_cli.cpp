// Batch front end: every subcommand writes a CSV table to --out and,
// with --svg, a rendered plot next to it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hmbec/bethe.hpp"
#include "hmbec/model.hpp"
#include "hmbec/observables.hpp"
#include "hmbec/semiclassical.hpp"
#include "hmbec/spectral.hpp"
#include "hmbec/svg.hpp"
#include "hmbec/sweep.hpp"

namespace {

using hmbec::Axis;
using hmbec::format_double;
using hmbec::SweepResult;

std::string svg_path(const std::string& out) {
    const auto dot = out.rfind('.');
    const auto slash = out.find_last_of("/\\");
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return out.substr(0, dot) + ".svg";
    return out + ".svg";
}

void emit(const SweepResult& table, std::size_t n_axes, const std::string& out,
          bool svg) {
    hmbec::persist(table, out);
    if (svg) hmbec::render_svg(table, n_axes, svg_path(out));
}

std::vector<double> axis_values(const Axis& axis) {
    std::vector<double> v;
    v.reserve(axis.count);
    for (long i = 0; i < axis.count; ++i) v.push_back(hmbec::axis_value(axis, i));
    return v;
}

int default_workers() {
    if (const char* env = std::getenv("HMBEC_WORKERS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw CLI::ValidationError("HMBEC_WORKERS",
                                       "cannot parse as a worker count: " +
                                           std::string(env));
        }
    }
    return 1;
}

// Shared model flags; alpha/lambda are converted to mu_c/U_cc for the
// no-scattering family when given.
struct ModelFlags {
    long n = 0;
    long j = 0;
    double omega = 1.0;
    double mu = 0.0;
    double alpha = 0.0;
    double lambda = 0.0;
    CLI::Option* alpha_opt = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", n, "total particle number N = N_a + N_b + 2 N_c")
            ->required();
        cmd->add_option("--j", j, "population imbalance J = N_a - N_b (>= 0)");
        cmd->add_option("--omega", omega, "conversion amplitude Omega")
            ->capture_default_str();
        auto* mu_opt = cmd->add_option("--mu", mu, "molecular potential mu_c");
        alpha_opt = cmd->add_option(
            "--alpha", alpha, "scaled coupling alpha; sets mu = -alpha Omega sqrt(2N)");
        mu_opt->excludes(alpha_opt);
        cmd->add_option("--lambda", lambda,
                        "scaled molecular scattering lambda; sets U_cc = 4 lambda "
                        "Omega / sqrt(2N)");
    }

    hmbec::ModelParams params() const {
        hmbec::ModelParams p;
        p.omega = omega;
        p.mu_c = (alpha_opt && alpha_opt->count() > 0)
                     ? hmbec::mu_from_alpha(alpha, omega, n)
                     : mu;
        p.u_cc = 4.0 * lambda * omega / std::sqrt(2.0 * static_cast<double>(n));
        return p;
    }
};

void add_fixed_points(CLI::App& app, const std::string& out_flag_help) {
    auto* cmd = app.add_subcommand("fixed-points",
                                   "stationary points of the classical Hamiltonian");
    auto k = std::make_shared<double>(0.0);
    auto lambda = std::make_shared<double>(0.0);
    auto alpha = std::make_shared<double>(0.0);
    auto beta = std::make_shared<double>(0.0);
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<bool>(false);
    cmd->add_option("--k", *k, "imbalance fraction k = J/N")->capture_default_str();
    cmd->add_option("--lambda", *lambda, "coupling lambda")->required();
    cmd->add_option("--alpha", *alpha, "coupling alpha")->required();
    cmd->add_option("--beta", *beta, "energy offset beta")->capture_default_str();
    cmd->add_option("--out", *out, out_flag_help)->required();
    cmd->add_flag("--svg", *svg, "also render an SVG plot");
    cmd->callback([=] {
        const hmbec::SemiclassicalCouplings c{*lambda, *alpha, *beta};
        const auto report = hmbec::region_classify(c, *k);
        SweepResult table;
        table.meta.push_back("# fixed-points k=" + format_double(*k) +
                             " lambda=" + format_double(*lambda) +
                             " alpha=" + format_double(*alpha) +
                             " beta=" + format_double(*beta));
        table.meta.push_back("# region=" + report.label);
        table.columns = {"z", "theta", "energy", "branch", "character",
                         "phase_arbitrary", "error"};
        for (const auto& fp : hmbec::fixed_points(c, *k)) {
            table.rows.push_back({format_double(fp.point.z),
                                  format_double(fp.point.theta),
                                  format_double(hmbec::classical_energy(fp.point, c, *k)),
                                  hmbec::to_string(fp.branch),
                                  hmbec::to_string(fp.character),
                                  fp.phase_arbitrary ? "1" : "0", ""});
        }
        emit(table, 1, *out, *svg);
    });
}

void add_phase_diagram(CLI::App& app, const std::string& out_flag_help) {
    auto* cmd =
        app.add_subcommand("phase-diagram", "bifurcation boundaries in (alpha, lambda)");
    auto k = std::make_shared<double>(0.0);
    auto z_range = std::make_shared<std::string>("-0.999:0.999:400");
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<bool>(false);
    cmd->add_option("--k", *k, "imbalance fraction k = J/N")->capture_default_str();
    cmd->add_option("--z", *z_range, "tangency parameter grid start:stop:count")
        ->capture_default_str();
    cmd->add_option("--out", *out, out_flag_help)->required();
    cmd->add_flag("--svg", *svg, "also render an SVG plot");
    cmd->callback([=] {
        const Axis axis = hmbec::parse_range("z", *z_range);
        const auto curves = hmbec::boundary_curves(*k, axis_values(axis));
        SweepResult table;
        table.meta.push_back("# phase-diagram k=" + format_double(*k));
        table.columns = {"alpha", "lambda", "z0", "branch_sign", "source", "error"};
        for (const auto& curve : curves) {
            const char* src =
                curve.source == hmbec::BoundaryCurve::Source::tangency ? "tangency"
                                                                       : "z_boundary";
            for (const auto& s : curve.samples)
                table.rows.push_back({format_double(s.alpha), format_double(s.lambda),
                                      format_double(s.z0),
                                      std::to_string(curve.branch_sign), src, ""});
        }
        emit(table, 1, *out, *svg);
    });
}

void add_level_curves(CLI::App& app, const std::string& out_flag_help) {
    auto* cmd = app.add_subcommand("level-curves",
                                   "classical energy on a (z, theta) grid");
    auto k = std::make_shared<double>(0.0);
    auto lambda = std::make_shared<double>(0.0);
    auto alpha = std::make_shared<double>(0.0);
    auto beta = std::make_shared<double>(0.0);
    auto z_range = std::make_shared<std::string>("-0.999:0.999:101");
    auto theta_range = std::make_shared<std::string>("-3.14159:3.14159:101");
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<bool>(false);
    cmd->add_option("--k", *k, "imbalance fraction k = J/N")->capture_default_str();
    cmd->add_option("--lambda", *lambda, "coupling lambda")->required();
    cmd->add_option("--alpha", *alpha, "coupling alpha")->required();
    cmd->add_option("--beta", *beta, "energy offset beta")->capture_default_str();
    cmd->add_option("--z", *z_range, "z grid start:stop:count")->capture_default_str();
    cmd->add_option("--theta", *theta_range, "theta grid start:stop:count")
        ->capture_default_str();
    cmd->add_option("--out", *out, out_flag_help)->required();
    cmd->add_flag("--svg", *svg, "also render an SVG heat map");
    cmd->callback([=] {
        const hmbec::SemiclassicalCouplings c{*lambda, *alpha, *beta};
        const Axis za = hmbec::parse_range("z", *z_range);
        const Axis ta = hmbec::parse_range("theta", *theta_range);
        const auto grid =
            hmbec::level_curve_grid(c, *k, axis_values(za), axis_values(ta));
        SweepResult table;
        table.meta.push_back("# level-curves k=" + format_double(*k) +
                             " lambda=" + format_double(*lambda) +
                             " alpha=" + format_double(*alpha) +
                             " beta=" + format_double(*beta));
        table.columns = {"z", "theta", "energy", "error"};
        for (std::size_t iz = 0; iz < grid.z.size(); ++iz)
            for (std::size_t it = 0; it < grid.theta.size(); ++it) {
                const double e = grid.energy[iz * grid.theta.size() + it];
                table.rows.push_back({format_double(grid.z[iz]),
                                      format_double(grid.theta[it]),
                                      std::isfinite(e) ? format_double(e) : "",
                                      std::isfinite(e) ? "" : "outside domain"});
            }
        emit(table, 2, *out, *svg);
    });
}

void add_spectrum(CLI::App& app, const std::string& out_flag_help) {
    auto* cmd = app.add_subcommand("spectrum", "full sector eigenvalue spectrum");
    auto mf = std::make_shared<ModelFlags>();
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<bool>(false);
    mf->attach(cmd);
    cmd->add_option("--out", *out, out_flag_help)->required();
    cmd->add_flag("--svg", *svg, "also render an SVG plot");
    cmd->callback([=] {
        const auto sector = hmbec::sector_new(mf->n, mf->j);
        const auto op = hmbec::build_tridiagonal(mf->params(), sector);
        const auto decomp = hmbec::eigendecompose(op);
        SweepResult table;
        table.meta.push_back("# spectrum n=" + std::to_string(mf->n) +
                             " j=" + std::to_string(mf->j) +
                             " mu=" + format_double(mf->params().mu_c) +
                             " omega=" + format_double(mf->omega));
        table.columns = {"index", "energy", "error"};
        for (std::size_t i = 0; i < decomp.eigenvalues.size(); ++i)
            table.rows.push_back({std::to_string(i),
                                  format_double(decomp.eigenvalues[i]), ""});
        emit(table, 1, *out, *svg);
    });
}

void add_bethe(CLI::App& app, const std::string& out_flag_help) {
    auto* cmd = app.add_subcommand("bethe", "Bethe roots of the sector eigenstates");
    auto mf = std::make_shared<ModelFlags>();
    auto level = std::make_shared<long>(-1);
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<bool>(false);
    mf->attach(cmd);
    cmd->add_option("--level", *level, "only this eigenlevel (default: all)");
    cmd->add_option("--out", *out, out_flag_help)->required();
    cmd->add_flag("--svg", *svg, "also render an SVG plot");
    cmd->callback([=] {
        const auto sector = hmbec::sector_new(mf->n, mf->j);
        const auto params = mf->params();
        const auto op = hmbec::build_tridiagonal(params, sector);
        const auto decomp = hmbec::eigendecompose(op);
        SweepResult table;
        table.meta.push_back("# bethe n=" + std::to_string(mf->n) +
                             " j=" + std::to_string(mf->j) +
                             " mu=" + format_double(params.mu_c) +
                             " omega=" + format_double(mf->omega));
        table.columns = {"level",  "q",        "u_re",
                         "u_im",   "energy",   "energy_reconstructed",
                         "residual", "error"};
        long lo = 0, hi = static_cast<long>(decomp.eigenvalues.size()) - 1;
        if (*level >= 0) {
            if (*level > hi)
                throw std::invalid_argument("bethe: --level beyond sector dimension");
            lo = hi = *level;
        }
        for (long i = lo; i <= hi; ++i) {
            const auto roots =
                hmbec::bethe_roots(params, sector, decomp.eigenvalues[i]);
            for (std::size_t q = 0; q < roots.roots.size(); ++q)
                table.rows.push_back(
                    {std::to_string(i), std::to_string(q),
                     format_double(roots.roots[q].real()),
                     format_double(roots.roots[q].imag()),
                     format_double(roots.energy),
                     format_double(roots.energy_reconstructed),
                     format_double(roots.max_bae_residual),
                     roots.repeated_roots ? "repeated roots; BAE residual skipped"
                                          : ""});
        }
        emit(table, 1, *out, *svg);
    });
}

void add_potential(CLI::App& app, const std::string& out_flag_help) {
    auto* cmd = app.add_subcommand(
        "potential", "effective one-dimensional Schrodinger potential");
    auto mf = std::make_shared<ModelFlags>();
    auto x_range = std::make_shared<std::string>("0.05:8:400");
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<bool>(false);
    mf->attach(cmd);
    cmd->add_option("--x", *x_range, "coordinate grid start:stop:count")
        ->capture_default_str();
    cmd->add_option("--out", *out, out_flag_help)->required();
    cmd->add_flag("--svg", *svg, "also render an SVG plot");
    cmd->callback([=] {
        const auto sector = hmbec::sector_new(mf->n, mf->j);
        const auto params = mf->params();
        const auto abc = hmbec::abc_coefficients(params, sector);
        const Axis xa = hmbec::parse_range("x", *x_range);
        SweepResult table;
        table.meta.push_back("# potential n=" + std::to_string(mf->n) +
                             " j=" + std::to_string(mf->j) +
                             " mu=" + format_double(params.mu_c) +
                             " omega=" + format_double(mf->omega));
        table.columns = {"x", "v", "error"};
        for (long i = 0; i < xa.count; ++i) {
            const double x = hmbec::axis_value(xa, i);
            try {
                const double v = hmbec::potential_a0(x, abc.b_coef, abc.c_coef,
                                                     mf->omega, mf->n, mf->j);
                table.rows.push_back({format_double(x), format_double(v), ""});
            } catch (const std::exception& ex) {
                table.rows.push_back({format_double(x), "", ex.what()});
            }
        }
        emit(table, 1, *out, *svg);
    });
}

void add_threshold(CLI::App& app, const std::string& out_flag_help) {
    auto* cmd = app.add_subcommand(
        "threshold", "quantum-corrected bifurcation threshold of the potential");
    auto n_range = std::make_shared<std::string>();
    auto omega = std::make_shared<double>(1.0);
    auto exact = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<bool>(false);
    cmd->add_option("--n", *n_range, "particle number N or range start:stop:count")
        ->required();
    cmd->add_option("--omega", *omega, "conversion amplitude Omega")
        ->capture_default_str();
    cmd->add_flag("--exact", *exact, "also solve the degenerate coupling by bisection");
    cmd->add_option("--out", *out, out_flag_help)->required();
    cmd->add_flag("--svg", *svg, "also render an SVG plot");
    cmd->callback([=] {
        const Axis na = hmbec::parse_range("n", *n_range);
        SweepResult table;
        table.meta.push_back("# threshold omega=" + format_double(*omega));
        table.columns = {"n", "mu_star", "alpha_star"};
        if (*exact) table.columns.push_back("mu_exact");
        table.columns.push_back("error");
        for (long i = 0; i < na.count; ++i) {
            const long n = std::lround(hmbec::axis_value(na, i));
            std::vector<std::string> row{std::to_string(n)};
            try {
                const double mu = hmbec::threshold_correction(n, *omega);
                row.push_back(format_double(mu));
                row.push_back(format_double(
                    -mu / (*omega * std::sqrt(2.0 * static_cast<double>(n)))));
                if (*exact)
                    row.push_back(format_double(hmbec::degenerate_mu(n, *omega)));
                row.emplace_back();
            } catch (const std::exception& ex) {
                while (row.size() + 1 < table.columns.size()) row.emplace_back();
                row.push_back(ex.what());
            }
            table.rows.push_back(std::move(row));
        }
        emit(table, 1, *out, *svg);
    });
}

void add_expectation(CLI::App& app, const std::string& out_flag_help) {
    auto* cmd = app.add_subcommand(
        "expectation", "ground-state molecular fraction and imbalance vs alpha");
    auto n = std::make_shared<long>(0);
    auto j = std::make_shared<long>(0);
    auto omega = std::make_shared<double>(1.0);
    auto lambda = std::make_shared<double>(0.0);
    auto alpha_range = std::make_shared<std::string>("0:2:201");
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<bool>(false);
    cmd->add_option("--n", *n, "total particle number N")->required();
    cmd->add_option("--j", *j, "population imbalance J");
    cmd->add_option("--omega", *omega, "conversion amplitude Omega")
        ->capture_default_str();
    cmd->add_option("--lambda", *lambda, "scaled molecular scattering lambda")
        ->capture_default_str();
    cmd->add_option("--alpha", *alpha_range, "alpha grid start:stop:count")
        ->capture_default_str();
    cmd->add_option("--out", *out, out_flag_help)->required();
    cmd->add_flag("--svg", *svg, "also render an SVG plot");
    cmd->callback([=] {
        hmbec::SweepSpec spec;
        spec.target = "expectation";
        spec.fixed = {{"n", static_cast<double>(*n)},
                      {"j", static_cast<double>(*j)},
                      {"omega", *omega},
                      {"lambda", *lambda}};
        spec.axes = {hmbec::parse_range("alpha", *alpha_range)};
        emit(hmbec::run_sweep(spec, 1), 1, *out, *svg);
    });
}

void add_dynamics(CLI::App& app, const std::string& out_flag_help) {
    auto* cmd = app.add_subcommand(
        "dynamics", "imbalance evolution from the all-molecule initial state");
    auto mf = std::make_shared<ModelFlags>();
    auto t_range = std::make_shared<std::string>("0:50:501");
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<bool>(false);
    mf->attach(cmd);
    cmd->add_option("--t", *t_range, "time grid start:stop:count")
        ->capture_default_str();
    cmd->add_option("--out", *out, out_flag_help)->required();
    cmd->add_flag("--svg", *svg, "also render an SVG plot");
    cmd->callback([=] {
        const auto sector = hmbec::sector_new(mf->n, mf->j);
        const auto op = hmbec::build_tridiagonal(mf->params(), sector);
        const auto decomp = hmbec::eigendecompose(op);
        const auto initial = hmbec::basis_state(sector, sector.m);
        const Axis ta = hmbec::parse_range("t", *t_range);
        const auto trace = hmbec::z_trace(decomp, initial, axis_values(ta));
        SweepResult table;
        table.meta.push_back("# dynamics n=" + std::to_string(mf->n) +
                             " j=" + std::to_string(mf->j) +
                             " mu=" + format_double(mf->params().mu_c) +
                             " omega=" + format_double(mf->omega));
        table.columns = {"t", "z", "error"};
        for (std::size_t i = 0; i < trace.times.size(); ++i)
            table.rows.push_back({format_double(trace.times[i]),
                                  format_double(trace.values[i]), ""});
        emit(table, 1, *out, *svg);
    });
}

void add_fidelity(CLI::App& app, const std::string& out_flag_help) {
    auto* cmd = app.add_subcommand(
        "fidelity", "ground-state overlap W_Delta(alpha) and its minima");
    auto n = std::make_shared<long>(0);
    auto j = std::make_shared<long>(0);
    auto omega = std::make_shared<double>(1.0);
    auto lambda = std::make_shared<double>(0.0);
    auto delta = std::make_shared<double>(0.01);
    auto alpha_range = std::make_shared<std::string>("0:2:400");
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<bool>(false);
    cmd->add_option("--n", *n, "total particle number N")->required();
    cmd->add_option("--j", *j, "population imbalance J");
    cmd->add_option("--omega", *omega, "conversion amplitude Omega")
        ->capture_default_str();
    cmd->add_option("--lambda", *lambda, "scaled molecular scattering lambda")
        ->capture_default_str();
    cmd->add_option("--delta", *delta, "relative separation Delta of the two couplings")
        ->capture_default_str();
    cmd->add_option("--alpha", *alpha_range, "alpha grid start:stop:count")
        ->capture_default_str();
    cmd->add_option("--out", *out, out_flag_help)->required();
    cmd->add_flag("--svg", *svg, "also render an SVG plot");
    cmd->callback([=] {
        const auto sector = hmbec::sector_new(*n, *j);
        const auto family = hmbec::alpha_family(*n, *lambda, *omega);
        const Axis aa = hmbec::parse_range("alpha", *alpha_range);
        const auto curve =
            hmbec::fidelity_curve(family, sector, *delta, axis_values(aa));
        SweepResult table;
        table.meta.push_back("# fidelity n=" + std::to_string(*n) +
                             " j=" + std::to_string(*j) +
                             " delta=" + format_double(*delta) +
                             " lambda=" + format_double(*lambda) +
                             " omega=" + format_double(*omega));
        for (const auto& mn : curve.minima)
            table.meta.push_back("# minimum alpha_c=" + format_double(mn.delta_c) +
                                 " w=" + format_double(mn.w) +
                                 (mn.refined ? "" : " (unrefined)"));
        table.columns = {"alpha", "w", "error"};
        for (std::size_t i = 0; i < curve.couplings.size(); ++i)
            table.rows.push_back({format_double(curve.couplings[i]),
                                  curve.flagged[i] ? ""
                                                   : format_double(curve.overlaps[i]),
                                  curve.flagged[i] ? "degenerate ground state" : ""});
        emit(table, 1, *out, *svg);
    });
}

void add_sweep(CLI::App& app, const std::string& out_flag_help) {
    auto* cmd = app.add_subcommand(
        "sweep", "generic parameter sweep over a registered target quantity");
    auto target = std::make_shared<std::string>();
    auto axes = std::make_shared<std::vector<std::string>>();
    auto fixed = std::make_shared<std::vector<std::string>>();
    auto workers = std::make_shared<int>(0);
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<bool>(false);
    cmd->add_option("--target", *target,
                    "one of: region, classical-energy, fidelity, expectation, threshold")
        ->required();
    cmd->add_option("--axis", *axes, "swept axis, name=start:stop:count (one or two)")
        ->required();
    cmd->add_option("--set", *fixed, "fixed parameter, name=value (repeatable)");
    cmd->add_option("--workers", *workers,
                    "worker threads (default: HMBEC_WORKERS or 1)");
    cmd->add_option("--out", *out, out_flag_help)->required();
    cmd->add_flag("--svg", *svg, "also render an SVG plot");
    cmd->callback([=] {
        hmbec::SweepSpec spec;
        spec.target = *target;
        for (const auto& a : *axes) {
            const auto eq = a.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("--axis expects name=start:stop:count, got '" +
                                            a + "'");
            spec.axes.push_back(hmbec::parse_range(a.substr(0, eq), a.substr(eq + 1)));
        }
        for (const auto& f : *fixed) {
            const auto eq = f.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("--set expects name=value, got '" + f + "'");
            try {
                spec.fixed[f.substr(0, eq)] = std::stod(f.substr(eq + 1));
            } catch (const std::exception&) {
                throw std::invalid_argument("--set: cannot parse value in '" + f + "'");
            }
        }
        const int n_workers = *workers > 0 ? *workers : default_workers();
        const auto result = hmbec::run_sweep(spec, n_workers);
        emit(result, spec.axes.size(), *out, *svg);
        if (result.any_failed())
            throw std::runtime_error("sweep: some cells failed; see the error column in " +
                                     *out);
    });
}

// Expand a flat "key = value" config file into --key value tokens, skipping
// keys already present on the command line so explicit flags win.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") path = args[i + 1];
    if (path.empty()) {
        for (const std::string& a : args)
            if (a.rfind("--config=", 0) == 0) path = a.substr(9);
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::vector<std::string> out = args;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r\"");
            const auto b = s.find_last_not_of(" \t\r\"");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") continue;
        bool given = false;
        for (const std::string& a : out)
            if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) given = true;
        if (given) continue;
        out.push_back("--" + key);
        if (!value.empty()) out.push_back(value);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-mode atom-molecule condensate toolbox"};
    app.require_subcommand(1);

    const std::string out_help = "output CSV path";
    add_fixed_points(app, out_help);
    add_phase_diagram(app, out_help);
    add_level_curves(app, out_help);
    add_spectrum(app, out_help);
    add_bethe(app, out_help);
    add_potential(app, out_help);
    add_threshold(app, out_help);
    add_expectation(app, out_help);
    add_dynamics(app, out_help);
    add_fidelity(app, out_help);
    add_sweep(app, out_help);
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->set_config("--config", "",
                        "flat key = value config file; flags override it");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = apply_config(args);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::invalid_argument& ex) {
        // malformed values (unparseable ranges, inconsistent sector flags)
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
