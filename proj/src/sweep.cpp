#include "hmbec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hmbec/bethe.hpp"
#include "hmbec/model.hpp"
#include "hmbec/observables.hpp"
#include "hmbec/semiclassical.hpp"
#include "hmbec/spectral.hpp"

namespace hmbec {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double axis_value(const Axis& axis, long index) {
    if (axis.count == 1) return axis.start;
    return axis.start + (axis.stop - axis.start) * static_cast<double>(index) /
                            static_cast<double>(axis.count - 1);
}

Axis parse_range(const std::string& name, const std::string& text) {
    Axis axis;
    axis.name = name;
    const auto c1 = text.find(':');
    try {
        if (c1 == std::string::npos) {
            std::size_t used = 0;
            axis.start = axis.stop = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing garbage");
            axis.count = 1;
            return axis;
        }
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw std::invalid_argument("expected start:stop:count");
        axis.start = std::stod(text.substr(0, c1));
        std::size_t used = 0;
        const std::string stop_text = text.substr(c1 + 1, c2 - c1 - 1);
        axis.stop = std::stod(stop_text, &used);
        if (used != stop_text.size()) throw std::invalid_argument("trailing garbage");
        const std::string count_text = text.substr(c2 + 1);
        axis.count = std::stol(count_text, &used);
        if (used != count_text.size()) throw std::invalid_argument("trailing garbage");
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse range for --" + name + ": '" + text +
                                    "' (expected value or start:stop:count)");
    }
    if (axis.count < 1 || axis.stop < axis.start)
        throw std::invalid_argument("invalid range for --" + name + ": '" + text + "'");
    return axis;
}

bool SweepResult::any_failed() const {
    for (const auto& row : rows)
        if (!row.back().empty()) return true;
    return false;
}

namespace {

using ParamMap = std::map<std::string, double>;

double require(const ParamMap& p, const std::string& name) {
    const auto it = p.find(name);
    if (it == p.end())
        throw std::invalid_argument("sweep: missing parameter '" + name + "'");
    return it->second;
}

double get_or(const ParamMap& p, const std::string& name, double fallback) {
    const auto it = p.find(name);
    return it == p.end() ? fallback : it->second;
}

struct Target {
    std::vector<std::string> outputs;
    std::function<std::vector<std::string>(const ParamMap&)> eval;
};

Target make_target(const std::string& name) {
    if (name == "region") {
        return {{"region", "n_phi0", "n_phi_pi", "n_boundary"}, [](const ParamMap& p) {
                    SemiclassicalCouplings c{require(p, "lambda"), require(p, "alpha"),
                                             get_or(p, "beta", 0.0)};
                    const RegionReport rep = region_classify(c, require(p, "k"));
                    return std::vector<std::string>{
                        rep.label, std::to_string(rep.n_phi_zero),
                        std::to_string(rep.n_phi_pi), std::to_string(rep.n_boundary)};
                }};
    }
    if (name == "classical-energy") {
        return {{"energy"}, [](const ParamMap& p) {
                    SemiclassicalCouplings c{require(p, "lambda"), require(p, "alpha"),
                                             get_or(p, "beta", 0.0)};
                    const double e = classical_energy(
                        {require(p, "z"), require(p, "theta")}, c, require(p, "k"));
                    return std::vector<std::string>{format_double(e)};
                }};
    }
    if (name == "fidelity") {
        return {{"w"}, [](const ParamMap& p) {
                    const long n = static_cast<long>(require(p, "n"));
                    const Sector sector =
                        sector_new(n, static_cast<long>(get_or(p, "j", 0.0)));
                    const auto family =
                        alpha_family(n, get_or(p, "lambda", 0.0), get_or(p, "omega", 1.0));
                    const double w = overlap_at(family, sector, require(p, "delta"),
                                                require(p, "alpha"));
                    return std::vector<std::string>{format_double(w)};
                }};
    }
    if (name == "expectation") {
        return {{"nc_scaled", "z"}, [](const ParamMap& p) {
                    const long n = static_cast<long>(require(p, "n"));
                    const Sector sector =
                        sector_new(n, static_cast<long>(get_or(p, "j", 0.0)));
                    const auto family =
                        alpha_family(n, get_or(p, "lambda", 0.0), get_or(p, "omega", 1.0));
                    const auto op = build_tridiagonal(family(require(p, "alpha")), sector);
                    const auto gs = ground_state_fast(op);
                    QuantumState st;
                    st.sector = sector;
                    for (double x : gs.vector) st.amplitudes.emplace_back(x, 0.0);
                    const double nc = expectation_nc(st);
                    return std::vector<std::string>{
                        format_double(2.0 * nc / static_cast<double>(n)),
                        format_double(expectation_z(st))};
                }};
    }
    if (name == "threshold") {
        return {{"mu_star", "alpha_star"}, [](const ParamMap& p) {
                    const long n = static_cast<long>(require(p, "n"));
                    const double omega = get_or(p, "omega", 1.0);
                    const double mu = threshold_correction(n, omega);
                    const double alpha =
                        -mu / (omega * std::sqrt(2.0 * static_cast<double>(n)));
                    return std::vector<std::string>{format_double(mu),
                                                    format_double(alpha)};
                }};
    }
    throw std::invalid_argument("sweep: unknown target '" + name + "'");
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int workers) {
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw std::invalid_argument("run_sweep: need one or two axes");
    for (const Axis& a : spec.axes) {
        if (a.name.empty()) throw std::invalid_argument("run_sweep: unnamed axis");
        if (a.count < 1) throw std::invalid_argument("run_sweep: axis count must be >= 1");
        if (a.stop < a.start) throw std::invalid_argument("run_sweep: axis stop < start");
        if (spec.fixed.count(a.name))
            throw std::invalid_argument("run_sweep: axis '" + a.name + "' also fixed");
    }
    const Target target = make_target(spec.target);  // validates the name up front

    SweepResult result;
    {
        std::ostringstream meta;
        meta << "# target=" << spec.target;
        for (const auto& [k, v] : spec.fixed) meta << " " << k << "=" << format_double(v);
        result.meta.push_back(meta.str());
        for (const Axis& a : spec.axes) {
            std::ostringstream am;
            am << "# axis " << a.name << "=" << format_double(a.start) << ":"
               << format_double(a.stop) << ":" << a.count;
            result.meta.push_back(am.str());
        }
    }
    for (const Axis& a : spec.axes) result.columns.push_back(a.name);
    result.columns.insert(result.columns.end(), target.outputs.begin(),
                          target.outputs.end());
    result.columns.push_back("error");

    const long n0 = spec.axes[0].count;
    const long n1 = spec.axes.size() == 2 ? spec.axes[1].count : 1;
    const long total = n0 * n1;
    result.rows.assign(total, {});

    auto eval_cell = [&](long idx) {
        const long i0 = idx / n1;
        const long i1 = idx % n1;
        ParamMap params = spec.fixed;
        std::vector<std::string> row;
        row.push_back(format_double(axis_value(spec.axes[0], i0)));
        params[spec.axes[0].name] = axis_value(spec.axes[0], i0);
        if (spec.axes.size() == 2) {
            row.push_back(format_double(axis_value(spec.axes[1], i1)));
            params[spec.axes[1].name] = axis_value(spec.axes[1], i1);
        }
        try {
            const std::vector<std::string> out = target.eval(params);
            row.insert(row.end(), out.begin(), out.end());
            row.emplace_back();
        } catch (const std::exception& ex) {
            for (std::size_t k = 0; k < target.outputs.size(); ++k) row.emplace_back();
            row.push_back(sanitize(ex.what()));
        }
        result.rows[idx] = std::move(row);
    };

    workers = std::max(1, workers);
    if (workers == 1 || total < 2) {
        for (long idx = 0; idx < total; ++idx) eval_cell(idx);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        const int n_threads = static_cast<int>(std::min<long>(workers, total));
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back([&] {
                for (long idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1))
                    eval_cell(idx);
            });
        for (auto& th : pool) th.join();
    }
    return result;
}

void persist(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("persist: cannot open '" + path + "' for writing");
    for (const auto& m : result.meta) out << m << "\n";
    for (std::size_t i = 0; i < result.columns.size(); ++i)
        out << (i ? "," : "") << result.columns[i];
    out << "\n";
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    if (!out) throw std::runtime_error("persist: write failed for '" + path + "'");
}

SweepResult load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load: cannot open '" + path + "'");
    SweepResult result;
    std::string line;
    long line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!have_header && !line.empty() && line[0] == '#') {
            result.meta.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (!have_header) {
            if (cells.empty())
                throw std::runtime_error("load: missing header at line " +
                                         std::to_string(line_no));
            result.columns = std::move(cells);
            have_header = true;
            continue;
        }
        if (line.empty()) continue;
        if (cells.size() != result.columns.size())
            throw std::runtime_error("load: column count mismatch at line " +
                                     std::to_string(line_no));
        result.rows.push_back(std::move(cells));
    }
    if (!have_header) throw std::runtime_error("load: no header found in '" + path + "'");
    return result;
}

}  // namespace hmbec
