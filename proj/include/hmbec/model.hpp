#ifndef HMBEC_MODEL_HPP
#define HMBEC_MODEL_HPP

#include <cstdint>

namespace hmbec {

// Couplings of the three-mode atom-molecule Hamiltonian
//   H = U_aa N_a^2 + U_bb N_b^2 + U_cc N_c^2 + U_ab N_a N_b + U_ac N_a N_c
//     + U_bc N_b N_c + mu_a N_a + mu_b N_b + mu_c N_c + Omega (a+ b+ c + c+ b a).
struct ModelParams {
    double u_aa = 0.0;
    double u_bb = 0.0;
    double u_cc = 0.0;
    double u_ab = 0.0;
    double u_ac = 0.0;
    double u_bc = 0.0;
    double mu_a = 0.0;
    double mu_b = 0.0;
    double mu_c = 0.0;
    double omega = 0.0;

    // H = mu N_c + Omega (a+ b+ c + h.c.), all scattering terms off.
    static ModelParams no_scattering(double mu, double omega);

    // Relabel the two atomic species (a <-> b).
    ModelParams swapped_ab() const;
};

// Conserved-sector bookkeeping. N = N_a + N_b + 2 N_c and J = N_a - N_b are
// conserved; the invariant subspace is spanned by |l-j; m-j; j>, j = 0..m.
struct Sector {
    long n_total = 0;      // N
    long j_imbalance = 0;  // J >= 0
    long l = 0;            // (N+J)/2
    long m = 0;            // (N-J)/2
    double k = 0.0;        // J/N
    long dim = 1;          // m+1
};

// Validates 0 <= J <= N with N-J even. Negative J is rejected; callers map
// J < 0 by swapping the a/b labels.
Sector sector_new(long n_total, long j_imbalance);

// Effective couplings of the one-degree-of-freedom classical Hamiltonian.
struct SemiclassicalCouplings {
    double lambda = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

// U_j = A (m-j)(m-j-1) + B (m-j) + C reproduces the diagonal elements.
struct AbcCoefficients {
    double a_coef = 0.0;
    double b_coef = 0.0;
    double c_coef = 0.0;
};

// Diagonal element U_j, evaluated directly from the occupation numbers
// n_a = l-j, n_b = m-j, n_c = j. This form is authoritative; the A/B/C
// form is a cross-check.
double u_diag(const ModelParams& params, const Sector& sector, long j);

AbcCoefficients abc_coefficients(const ModelParams& params, const Sector& sector);

// Symmetric off-diagonal element t_j = Omega sqrt(j (l-j+1) (m-j+1)) between
// normalized basis states j-1 and j, for 1 <= j <= m.
double hopping(const Sector& sector, double omega, long j);

SemiclassicalCouplings semiclassical_couplings(const ModelParams& params,
                                               const Sector& sector);

// mu_c giving semiclassical coupling alpha for the no-scattering model:
// mu = -alpha Omega sqrt(2N).
double mu_from_alpha(double alpha, double omega, long n_total);

}  // namespace hmbec

#endif
