#include "hmbec/observables.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hmbec {

double expectation_z(const QuantumState& state) {
    const double n = static_cast<double>(state.sector.n_total);
    double acc = 0.0;
    for (std::size_t j = 0; j < state.amplitudes.size(); ++j)
        acc += std::norm(state.amplitudes[j]) * (n - 4.0 * static_cast<double>(j)) / n;
    return acc;
}

double expectation_nc(const QuantumState& state) {
    double acc = 0.0;
    for (std::size_t j = 0; j < state.amplitudes.size(); ++j)
        acc += std::norm(state.amplitudes[j]) * static_cast<double>(j);
    return acc;
}

double expectation_energy(const TridiagonalOperator& op, const QuantumState& state) {
    const long n = op.dim();
    double acc = 0.0;
    for (long j = 0; j < n; ++j) {
        acc += op.diag[j] * std::norm(state.amplitudes[j]);
        if (j + 1 < n)
            acc += 2.0 * op.offdiag[j] *
                   (state.amplitudes[j] * std::conj(state.amplitudes[j + 1])).real();
    }
    return acc;
}

QuantumState basis_state(const Sector& sector, long j) {
    if (j < 0 || j > sector.m)
        throw std::out_of_range("basis_state: j out of range");
    QuantumState st;
    st.sector = sector;
    st.amplitudes.assign(sector.dim, {0.0, 0.0});
    st.amplitudes[j] = {1.0, 0.0};
    return st;
}

QuantumState evolve(const SpectralDecomposition& decomp, const QuantumState& initial,
                    double t) {
    const std::size_t dim = initial.amplitudes.size();
    if (decomp.eigenvalues.size() != dim)
        throw std::invalid_argument("evolve: sector mismatch between decomposition and state");
    QuantumState out;
    out.sector = initial.sector;
    out.amplitudes.assign(dim, {0.0, 0.0});
    for (std::size_t k = 0; k < dim; ++k) {
        std::complex<double> ck(0.0);
        for (std::size_t j = 0; j < dim; ++j)
            ck += decomp.eigenvectors[k][j] * initial.amplitudes[j];
        const std::complex<double> phase =
            std::polar(1.0, -decomp.eigenvalues[k] * t) * ck;
        for (std::size_t j = 0; j < dim; ++j)
            out.amplitudes[j] += decomp.eigenvectors[k][j] * phase;
    }
    return out;
}

TimeSeries z_trace(const SpectralDecomposition& decomp, const QuantumState& initial,
                   const std::vector<double>& t_grid) {
    const std::size_t dim = initial.amplitudes.size();
    if (decomp.eigenvalues.size() != dim)
        throw std::invalid_argument("z_trace: sector mismatch");
    std::vector<std::complex<double>> c(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        c[k] = {0.0, 0.0};
        for (std::size_t j = 0; j < dim; ++j)
            c[k] += decomp.eigenvectors[k][j] * initial.amplitudes[j];
    }
    TimeSeries ts;
    ts.times = t_grid;
    ts.values.reserve(t_grid.size());
    const double n = static_cast<double>(initial.sector.n_total);
    std::vector<std::complex<double>> psi(dim);
    for (double t : t_grid) {
        std::fill(psi.begin(), psi.end(), std::complex<double>(0.0));
        for (std::size_t k = 0; k < dim; ++k) {
            const std::complex<double> phase = std::polar(1.0, -decomp.eigenvalues[k] * t) * c[k];
            for (std::size_t j = 0; j < dim; ++j) psi[j] += decomp.eigenvectors[k][j] * phase;
        }
        double z = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
            z += std::norm(psi[j]) * (n - 4.0 * static_cast<double>(j)) / n;
        ts.values.push_back(z);
    }
    return ts;
}

double overlap_at(const ParamsFamily& family, const Sector& sector, double delta_rel,
                  double delta) {
    const auto lo = build_tridiagonal(family(delta * (1.0 - delta_rel)), sector);
    const auto hi = build_tridiagonal(family(delta * (1.0 + delta_rel)), sector);
    const auto gs_lo = ground_state_fast(lo);
    const auto gs_hi = ground_state_fast(hi);
    double dot = 0.0;
    for (std::size_t j = 0; j < gs_lo.vector.size(); ++j)
        dot += gs_lo.vector[j] * gs_hi.vector[j];
    return std::abs(dot);
}

namespace {

// Golden-section minimization of W(delta) on [a, b] to 1e-4 in delta.
OverlapCurve::Minimum refine_minimum(const ParamsFamily& family, const Sector& sector,
                                     double delta_rel, double a, double b) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    auto eval = [&](double d) { return overlap_at(family, sector, delta_rel, d); };
    double f1 = eval(x1);
    double f2 = eval(x2);
    while (b - a > 1e-4) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = eval(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = eval(x2);
        }
    }
    const double dmin = 0.5 * (a + b);
    return {dmin, eval(dmin), true};
}

}  // namespace

OverlapCurve fidelity_curve(const ParamsFamily& family, const Sector& sector,
                            double delta_rel, const std::vector<double>& grid) {
    OverlapCurve curve;
    curve.delta_rel = delta_rel;
    curve.couplings = grid;
    curve.overlaps.reserve(grid.size());
    curve.flagged.reserve(grid.size());
    for (double delta : grid) {
        try {
            curve.overlaps.push_back(overlap_at(family, sector, delta_rel, delta));
            curve.flagged.push_back(false);
        } catch (const std::runtime_error&) {
            curve.overlaps.push_back(std::numeric_limits<double>::quiet_NaN());
            curve.flagged.push_back(true);
        }
    }
    curve.minima = pre_transitions(curve, family, sector);
    return curve;
}

std::vector<OverlapCurve::Minimum> pre_transitions(const OverlapCurve& curve,
                                                   const ParamsFamily& family,
                                                   const Sector& sector) {
    std::vector<OverlapCurve::Minimum> minima;
    if (curve.couplings.size() < 3) return minima;
    for (std::size_t i = 1; i + 1 < curve.couplings.size(); ++i) {
        if (curve.flagged[i - 1] || curve.flagged[i] || curve.flagged[i + 1]) continue;
        if (curve.overlaps[i] < curve.overlaps[i - 1] &&
            curve.overlaps[i] < curve.overlaps[i + 1]) {
            try {
                minima.push_back(refine_minimum(family, sector, curve.delta_rel,
                                                curve.couplings[i - 1],
                                                curve.couplings[i + 1]));
            } catch (const std::runtime_error&) {
                minima.push_back({curve.couplings[i], curve.overlaps[i], false});
            }
        }
    }
    return minima;
}

ParamsFamily alpha_family(long n_total, double lambda, double omega) {
    const double root2n = std::sqrt(2.0 * static_cast<double>(n_total));
    return [=](double alpha) {
        ModelParams p;
        p.omega = omega;
        p.u_cc = 4.0 * lambda * omega / root2n;
        p.mu_c = -alpha * omega * root2n;
        return p;
    };
}

}  // namespace hmbec
