#ifndef HMBEC_OBSERVABLES_HPP
#define HMBEC_OBSERVABLES_HPP

#include <functional>
#include <vector>

#include "hmbec/model.hpp"
#include "hmbec/spectral.hpp"

namespace hmbec {

// <z> = sum_j |psi_j|^2 (N - 4j)/N.
double expectation_z(const QuantumState& state);

// <N_c> = sum_j |psi_j|^2 j.
double expectation_nc(const QuantumState& state);

// Energy expectation of a (possibly complex) state under the tridiagonal operator.
double expectation_energy(const TridiagonalOperator& op, const QuantumState& state);

// Basis state |l-j; m-j; j> of the sector.
QuantumState basis_state(const Sector& sector, long j);

// Spectral propagation exp(-i H t) applied to the initial state.
QuantumState evolve(const SpectralDecomposition& decomp, const QuantumState& initial,
                    double t);

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
};

TimeSeries z_trace(const SpectralDecomposition& decomp, const QuantumState& initial,
                   const std::vector<double>& t_grid);

struct OverlapCurve {
    double delta_rel = 0.0;
    std::vector<double> couplings;  // delta grid
    std::vector<double> overlaps;   // W values
    std::vector<bool> flagged;      // degenerate ground state at delta(1 +- Delta)
    struct Minimum {
        double delta_c;
        double w;
        bool refined;
    };
    std::vector<Minimum> minima;
};

// Family of Hamiltonians parameterized by a scalar coupling delta.
using ParamsFamily = std::function<ModelParams(double)>;

// W_Delta(delta) = |<gs(delta(1-Delta)) | gs(delta(1+Delta))>| on the grid,
// with interior local minima refined by golden-section to 1e-4 in delta.
OverlapCurve fidelity_curve(const ParamsFamily& family, const Sector& sector,
                            double delta_rel, const std::vector<double>& grid);

// Interior local minima of a sampled curve, golden-section refined.
std::vector<OverlapCurve::Minimum> pre_transitions(const OverlapCurve& curve,
                                                   const ParamsFamily& family,
                                                   const Sector& sector);

// Single fidelity sample W_Delta(delta).
double overlap_at(const ParamsFamily& family, const Sector& sector, double delta_rel,
                  double delta);

// No-scattering-plus-U_cc family: U_cc fixes lambda, mu_c sweeps alpha.
ParamsFamily alpha_family(long n_total, double lambda, double omega);

}  // namespace hmbec

#endif
