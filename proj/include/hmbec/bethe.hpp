#ifndef HMBEC_BETHE_HPP
#define HMBEC_BETHE_HPP

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "hmbec/model.hpp"
#include "hmbec/semiclassical.hpp"

namespace hmbec {

using Complex = std::complex<double>;

// Coefficients of the second-order ODE a(u) G'' + b(u) G' + c(u) G = E G
// satisfied by the eigenstate polynomial G(u):
//   a(u) = A u^2 + Omega u
//   b(u) = B u + Omega (l - m + 1 - u^2)
//   c(u) = Omega m u + C
struct OdeCoefficients {
    AbcCoefficients abc;
    double omega = 0.0;
    long l = 0, m = 0;

    Complex a(Complex u) const;
    Complex b(Complex u) const;
    Complex c(Complex u) const;
};

OdeCoefficients ode_coefficients(const ModelParams& params, const Sector& sector);

// Coefficients rho_0..rho_m of G(u) = sum_j rho_j u^(m-j) from the recursion
// with rho_0 = 1, at trial energy e.
std::vector<double> polynomial_g(const ModelParams& params, const Sector& sector, double e);

struct BetheRoots {
    std::vector<Complex> roots;   // u_q, q = 1..m
    double energy = 0.0;          // input eigenvalue
    double energy_reconstructed = 0.0;  // A m(m-1) + B m + C - Omega sum u_q
    double max_bae_residual = 0.0;
    bool repeated_roots = false;  // some pair within 1e-8 (BAE singular)
};

// Roots of G(u) for eigenvalue e, polished against the Bethe ansatz equations.
BetheRoots bethe_roots(const ModelParams& params, const Sector& sector, double e);

// Residual of the q-th Bethe ansatz equation,
//   b(u_q)/a(u_q) - sum_{p != q} 2/(u_p - u_q).
Complex bae_residual(const OdeCoefficients& ode, const std::vector<Complex>& roots,
                     std::size_t q);

// General root finder for a monic complex polynomial given coefficients
// c[0..n] with c[0] = 1 (descending powers), by Aberth-Ehrlich iteration.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

// --- Schrodinger mapping ---------------------------------------------------

// Full trigonometric potential of the mapping for A > 0, built from the
// mapping relations V = c(u) + f'' + (f')^2 with
// u(x) = (Omega/2A)(cos(sqrt(A) x) - 1).
double potential_general(double x, const AbcCoefficients& abc, double omega,
                         const Sector& sector);

// A -> 0 limit of the potential, parametrized by N = l+m and J = l-m:
//   C - B(J+1)/2 + (J^2 - 1/4) x^-2 + (B^2/16 - Omega^2 (N+2)/8) x^2
//   + Omega^2 B x^4 / 32 + Omega^4 x^6 / 256.
double potential_a0(double x, double b_coef, double c_coef, double omega, long n_total,
                    long j_imbalance);

// Quasi-exactly-solvable wavefunction for the no-scattering model:
//   x^(J+1/2) exp(-Omega^2 x^4/64 + mu x^2/8) prod_p (-Omega x^2/4 - u_p).
double wavefunction_no_scatter(double x, const BetheRoots& roots, double mu, double omega,
                               long j_imbalance);

// Lowest eigenvalues of -psi'' + V psi = E psi on (0, L] discretized with
// second-order central differences, Dirichlet at x = 1e-6 L and x = L.
// When the potential carries a known inverse-square term A x^-2 (A >= -1/4),
// pass its coefficient: the singular factor x^(1/2+nu) is then split off
// analytically and the remaining weighted operator is finite-volume
// discretized, which restores O(h^2) convergence at the critical coupling
// A = -1/4 where a plain Dirichlet cutoff stalls on the x^(1/2) log branch.
struct FdResult {
    std::vector<double> eigenvalues;
    bool decayed = true;  // false if some eigenfunction has not decayed at L
};
FdResult fd_schrodinger(const std::function<double(double)>& potential, double length,
                        long grid_size, int n_eigenvalues, double centrifugal = 0.0);

// --- Sextic critical-point analysis ----------------------------------------

// V(x) = A x^-2 + B x^2 + C x^4 + D x^6 + offset (script coefficients).
struct SexticPotential {
    double centrifugal = 0.0;  // script A
    double quadratic = 0.0;    // script B
    double quartic = 0.0;      // script C, > 0 for bifurcation analysis
    double sextic = 0.0;       // script D, > 0
    double offset = 0.0;
};

struct CriticalPointReport {
    struct StationaryPoint {
        double x;
        double value;
        Character type;
    };
    std::vector<StationaryPoint> points;  // x > 0, ascending
    // True when dV/dx = d2V/dx2 = 0 is satisfiable for some quadratic
    // coefficient at the given centrifugal/quartic/sextic values.
    bool bifurcation_possible = false;
    std::optional<double> degenerate_x;  // present when this V itself is degenerate
};

CriticalPointReport critical_point_analysis(const SexticPotential& p);

// Quadratic coefficient at which V develops a degenerate stationary point,
// for centrifugal < 0 and quartic, sextic > 0. Exact solve; the small-B
// closed form 3 (A C^2)^(1/3) is only a seed.
double degenerate_quadratic_coef(double centrifugal, double quartic, double sextic);

// SexticPotential matching the A -> 0 no-scattering potential at coupling mu.
SexticPotential sextic_from_no_scattering(double mu, double omega, long n_total,
                                          long j_imbalance);

// Leading quantum correction to the semi-classical threshold:
//   mu* = -Omega (2(N+2))^(1/2) + (3 Omega/2) (2(N+2))^(-1/6).
double threshold_correction(long n_total, double omega);

// Exact degenerate coupling of the J = 0 no-scattering potential, solved by
// bisection over mu; threshold_correction approximates this.
double degenerate_mu(long n_total, double omega);

}  // namespace hmbec

#endif
