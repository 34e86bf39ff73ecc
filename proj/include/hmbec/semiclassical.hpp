#ifndef HMBEC_SEMICLASSICAL_HPP
#define HMBEC_SEMICLASSICAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "hmbec/model.hpp"

namespace hmbec {

// Phase-space point of the classical Hamiltonian
//   H = lambda z^2 + 2(alpha-lambda) z + lambda - 2 alpha + beta
//     + sqrt(2(1-z)(z+c+)(z+c-)) cos(theta),
// with c_pm = 1 +- 2k and theta = 4 phi / N stored directly.
struct PhasePoint {
    double z = 0.0;
    double theta = 0.0;
};

enum class Branch { phi_zero, phi_pi, z_boundary };
enum class Character { minimum, maximum, saddle, degenerate };

struct FixedPoint {
    PhasePoint point;
    Branch branch = Branch::phi_zero;
    Character character = Character::degenerate;
    // z_boundary minimum edge: every theta is equivalent, point.theta is a
    // representative.
    bool phase_arbitrary = false;
};

struct RegionReport {
    // "A"/"B"/"C" for k != 0, "I".."V" for k = 0, or "?" when the counts fall
    // on no catalogued pattern (numerically on a boundary).
    std::string label;
    int n_phi_zero = 0;
    int n_phi_pi = 0;
    int n_boundary = 0;  // z = -1 phase solutions, k = 0 only
};

struct BoundaryCurve {
    enum class Source { tangency, z_boundary_line };
    struct Sample {
        double z0;
        double alpha;
        double lambda;
    };
    std::vector<Sample> samples;
    int branch_sign = +1;
    Source source = Source::tangency;
};

struct LevelCurveGrid {
    std::vector<double> z;       // rows
    std::vector<double> theta;   // columns
    std::vector<double> energy;  // row-major, z.size() * theta.size()
};

// 2(1-z)(z+c+)(z+c-); the phase-space domain is where this is non-negative.
double radicand(double z, double k);

double classical_energy(const PhasePoint& p, const SemiclassicalCouplings& c, double k);

// (dz/dt, dphi/dt) = (dH/dphi, -dH/dz). Throws on the boundary (vanishing
// radicand) where dH/dz is not defined for k != 0.
std::pair<double, double> hamilton_rhs(const PhasePoint& p, const SemiclassicalCouplings& c,
                                       double k, long n_total);

// g(z) of the fixed-point condition f(z) = +-g(z), f(z) = lambda z + alpha - lambda.
// Equals -(1/2) d/dz sqrt(2(1-z)(z+c+)(z+c-)). Diverges at both endpoints for
// k != 0; for k = 0 the value at z = -1 is the finite limit -1.
double g_value(double z, double k);
double g_derivative(double z, double k);

std::vector<FixedPoint> fixed_points(const SemiclassicalCouplings& c, double k);

RegionReport region_classify(const SemiclassicalCouplings& c, double k);

// Bifurcation boundaries in the (alpha, lambda) plane, parametric in z0:
// lambda = +-g'(z0), alpha = +-g(z0) - lambda (z0 - 1). For k = 0 the two
// closed-form lines lambda = (alpha +- 1)/2 are appended, sampled over
// alpha in [-20, 20].
std::vector<BoundaryCurve> boundary_curves(double k, const std::vector<double>& z_grid);

// Energy on the z x theta grid, row-major; cells with negative radicand
// (outside the phase-space domain) hold NaN.
LevelCurveGrid level_curve_grid(const SemiclassicalCouplings& c, double k,
                                const std::vector<double>& z_samples,
                                const std::vector<double>& theta_samples);

const char* to_string(Branch b);
const char* to_string(Character c);

}  // namespace hmbec

#endif
