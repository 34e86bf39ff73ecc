#ifndef HMBEC_SPECTRAL_HPP
#define HMBEC_SPECTRAL_HPP

#include <complex>
#include <vector>

#include "hmbec/model.hpp"

namespace hmbec {

// Sector Hamiltonian in the normalized basis: symmetric tridiagonal with
// diag[j] = U_j and offdiag[j-1] = t_j.
struct TridiagonalOperator {
    std::vector<double> diag;
    std::vector<double> offdiag;
    long dim() const { return static_cast<long>(diag.size()); }
};

struct SpectralDecomposition {
    std::vector<double> eigenvalues;                // ascending
    std::vector<std::vector<double>> eigenvectors;  // eigenvectors[i] is the i-th pair
};

struct QuantumState {
    std::vector<std::complex<double>> amplitudes;
    Sector sector;
};

TridiagonalOperator build_tridiagonal(const ModelParams& params, const Sector& sector);

// Full spectrum by implicit-shift QL with eigenvector accumulation.
SpectralDecomposition eigendecompose(const TridiagonalOperator& op);

// Lowest eigenvector with deterministic sign (largest-magnitude amplitude
// positive). Rejects a near-degenerate ground state.
QuantumState ground_state(const SpectralDecomposition& decomp, const Sector& sector);

// Ground-state fast path: Sturm-sequence bisection for the two lowest
// eigenvalues plus inverse iteration, O(dim) per sample. Same gap check and
// sign convention as ground_state.
struct GroundStateResult {
    double energy = 0.0;
    double gap = 0.0;  // E1 - E0
    std::vector<double> vector;
};
GroundStateResult ground_state_fast(const TridiagonalOperator& op);

// Number of eigenvalues of op strictly below x.
long sturm_count(const TridiagonalOperator& op, double x);

// Lowest `count` eigenvalues by Sturm bisection (no eigenvectors).
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, long count);

// Normalized eigenvector for an eigenvalue estimate, by inverse iteration.
std::vector<double> inverse_iteration(const TridiagonalOperator& op, double eigenvalue);

// Defect of the coefficient recursion at trial energy e: zero iff e is an
// eigenvalue. Rescaled internally (positive factor) to delay overflow; capped
// at m <= 60.
double char_poly_eval(const ModelParams& params, const Sector& sector, double e_trial);

}  // namespace hmbec

#endif
