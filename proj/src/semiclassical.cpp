#include "hmbec/semiclassical.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hmbec {

namespace {

constexpr double kPi = 3.14159265358979323846;

double domain_lo(double k) { return 2.0 * k - 1.0; }

// R(z) expanded: 2(-z^3 - z^2 + (1+4k^2) z + 1 - 4k^2).
double rad_d1(double z, double k) {
    return 2.0 * (-3.0 * z * z - 2.0 * z + 1.0 + 4.0 * k * k);
}
double rad_d2(double z) { return 2.0 * (-6.0 * z - 2.0); }

}  // namespace

double radicand(double z, double k) {
    const double cp = 1.0 + 2.0 * k;
    const double cm = 1.0 - 2.0 * k;
    return 2.0 * (1.0 - z) * (z + cp) * (z + cm);
}

double classical_energy(const PhasePoint& p, const SemiclassicalCouplings& c, double k) {
    double rad = radicand(p.z, k);
    if (rad < -1e-12 * (1.0 + std::abs(p.z)))
        throw std::domain_error("classical_energy: z outside phase-space domain");
    if (rad < 0.0) rad = 0.0;
    return c.lambda * p.z * p.z + 2.0 * (c.alpha - c.lambda) * p.z + c.lambda -
           2.0 * c.alpha + c.beta + std::sqrt(rad) * std::cos(p.theta);
}

double g_value(double z, double k) {
    if (k == 0.0) {
        // Reduced form (3z-1)/(2 sqrt(2(1-z))), finite at z = -1.
        if (z < -1.0 || z >= 1.0)
            throw std::domain_error("g_value: divergent at domain endpoint");
        return (3.0 * z - 1.0) / (2.0 * std::sqrt(2.0 * (1.0 - z)));
    }
    if (z <= domain_lo(k) || z >= 1.0)
        throw std::domain_error("g_value: divergent at domain endpoint");
    return -rad_d1(z, k) / (4.0 * std::sqrt(radicand(z, k)));
}

double g_derivative(double z, double k) {
    if (k == 0.0) {
        if (z < -1.0 || z >= 1.0)
            throw std::domain_error("g_derivative: divergent at domain endpoint");
        const double h = std::sqrt(2.0 * (1.0 - z));
        return (5.0 - 3.0 * z) / (2.0 * h * h * h);
    }
    if (z <= domain_lo(k) || z >= 1.0)
        throw std::domain_error("g_derivative: divergent at domain endpoint");
    const double r = radicand(z, k);
    const double r1 = rad_d1(z, k);
    return -rad_d2(z) / (4.0 * std::sqrt(r)) + r1 * r1 / (8.0 * r * std::sqrt(r));
}

std::pair<double, double> hamilton_rhs(const PhasePoint& p, const SemiclassicalCouplings& c,
                                       double k, long n_total) {
    const double rad = radicand(p.z, k);
    if (rad <= 0.0)
        throw std::domain_error("hamilton_rhs: boundary evaluation (vanishing radicand)");
    const double n = static_cast<double>(n_total);
    const double dz_dt = -(4.0 / n) * std::sqrt(rad) * std::sin(p.theta);
    const double dH_dz = 2.0 * c.lambda * p.z + 2.0 * c.alpha - 2.0 * c.lambda -
                         2.0 * g_value(p.z, k) * std::cos(p.theta);
    return {dz_dt, -dH_dz};
}

namespace {

// Hessian classification of the energy surface at (z, theta).
Character classify(double z, double theta, const SemiclassicalCouplings& c, double k) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double g = g_value(z, k);
    const double gp = g_derivative(z, k);
    const double s = std::sqrt(std::max(radicand(z, k), 0.0));
    const double h_zz = 2.0 * c.lambda - 2.0 * gp * ct;
    const double h_tt = -s * ct;
    const double h_zt = -2.0 * g * st;
    const double det = h_zz * h_tt - h_zt * h_zt;
    const double scale = h_zz * h_zz + h_tt * h_tt + h_zt * h_zt;
    if (std::abs(det) < 1e-10 * (1.0 + scale)) return Character::degenerate;
    if (det < 0.0) return Character::saddle;
    return (h_zz + h_tt) > 0.0 ? Character::minimum : Character::maximum;
}

// Roots of f(z) = sign * g(z) by bracketing on a fine grid plus bisection.
std::vector<double> branch_roots(const SemiclassicalCouplings& c, double k, int sign) {
    const double lo = domain_lo(k);
    const double width = 1.0 - lo;
    // g diverges at both endpoints for k != 0 and at z = 1 for k = 0.
    const double eps = 1e-8 * width;
    const double a = lo + eps;
    const double b = 1.0 - eps;
    const int n_grid = 10000;

    auto f_minus_g = [&](double z) {
        return c.lambda * z + c.alpha - c.lambda - sign * g_value(z, k);
    };

    std::vector<double> roots;
    double z_prev = a;
    double v_prev = f_minus_g(a);
    for (int i = 1; i <= n_grid; ++i) {
        const double z = a + (b - a) * static_cast<double>(i) / n_grid;
        const double v = f_minus_g(z);
        if (v_prev == 0.0) {
            roots.push_back(z_prev);
        } else if (v_prev * v < 0.0) {
            double zl = z_prev, zr = z, vl = v_prev;
            while (zr - zl > 1e-12) {
                const double zm = 0.5 * (zl + zr);
                const double vm = f_minus_g(zm);
                if (vl * vm <= 0.0) {
                    zr = zm;
                } else {
                    zl = zm;
                    vl = vm;
                }
            }
            roots.push_back(0.5 * (zl + zr));
        }
        z_prev = z;
        v_prev = v;
    }
    return roots;
}

}  // namespace

std::vector<FixedPoint> fixed_points(const SemiclassicalCouplings& c, double k) {
    if (k < 0.0) throw std::invalid_argument("fixed_points: k must be >= 0");
    std::vector<FixedPoint> out;
    for (int sign : {+1, -1}) {
        const double theta = sign > 0 ? 0.0 : kPi;
        for (double z : branch_roots(c, k, sign)) {
            FixedPoint fp;
            fp.point = {z, theta};
            fp.branch = sign > 0 ? Branch::phi_zero : Branch::phi_pi;
            fp.character = classify(z, theta, c, k);
            out.push_back(fp);
        }
    }
    if (k == 0.0) {
        // Boundary z = -1: dH/dz vanishes when cos(theta) = 2 lambda - alpha.
        const double c0 = 2.0 * c.lambda - c.alpha;
        const double tol = 1e-12;
        if (std::abs(c0) < 1.0 - tol) {
            const double t1 = std::acos(c0);
            for (double theta : {t1, 2.0 * kPi - t1}) {
                FixedPoint fp;
                fp.point = {-1.0, theta};
                fp.branch = Branch::z_boundary;
                fp.character = classify(-1.0, theta, c, 0.0);
                out.push_back(fp);
            }
        } else if (c0 < -1.0 - tol) {
            // dH/dz > 0 for every theta: the edge is a minimum with arbitrary phase.
            FixedPoint fp;
            fp.point = {-1.0, 0.0};
            fp.branch = Branch::z_boundary;
            fp.character = Character::minimum;
            fp.phase_arbitrary = true;
            out.push_back(fp);
        } else if (c0 > 1.0 + tol) {
            FixedPoint fp;
            fp.point = {-1.0, 0.0};
            fp.branch = Branch::z_boundary;
            fp.character = Character::maximum;
            fp.phase_arbitrary = true;
            out.push_back(fp);
        } else {
            FixedPoint fp;
            fp.point = {-1.0, c0 >= 0.0 ? 0.0 : kPi};
            fp.branch = Branch::z_boundary;
            fp.character = Character::degenerate;
            out.push_back(fp);
        }
    }
    return out;
}

RegionReport region_classify(const SemiclassicalCouplings& c, double k) {
    if (k < 0.0) throw std::invalid_argument("region_classify: k must be >= 0");
    RegionReport rep;
    rep.n_phi_zero = static_cast<int>(branch_roots(c, k, +1).size());
    rep.n_phi_pi = static_cast<int>(branch_roots(c, k, -1).size());
    if (k == 0.0) {
        const double c0 = 2.0 * c.lambda - c.alpha;
        const double tol = 1e-9;
        if (std::abs(std::abs(c0) - 1.0) < tol) {
            rep.label = "?";
            rep.n_boundary = 1;
            return rep;
        }
        rep.n_boundary = std::abs(c0) < 1.0 ? 2 : 0;
        const int n0 = rep.n_phi_zero, npi = rep.n_phi_pi, nb = rep.n_boundary;
        if (n0 == 0 && npi == 1 && nb == 0)
            rep.label = "I";
        else if (n0 == 2 && npi == 1 && nb == 0)
            rep.label = "II";
        else if (n0 == 1 && npi == 1 && nb == 2)
            rep.label = "III";
        else if (n0 == 1 && npi == 0 && nb == 0)
            rep.label = "IV";
        else if (n0 == 1 && npi == 2 && nb == 0)
            rep.label = "V";
        else
            rep.label = "?";
    } else {
        const int n0 = rep.n_phi_zero, npi = rep.n_phi_pi;
        if (n0 == 1 && npi == 1)
            rep.label = "A";
        else if (n0 == 3 && npi == 1)
            rep.label = "B";
        else if (n0 == 1 && npi == 3)
            rep.label = "C";
        else
            rep.label = "?";
    }
    return rep;
}

std::vector<BoundaryCurve> boundary_curves(double k, const std::vector<double>& z_grid) {
    std::vector<BoundaryCurve> out;
    for (int sign : {+1, -1}) {
        BoundaryCurve curve;
        curve.branch_sign = sign;
        curve.source = BoundaryCurve::Source::tangency;
        for (double z0 : z_grid) {
            const double lambda = sign * g_derivative(z0, k);
            const double alpha = sign * g_value(z0, k) - lambda * (z0 - 1.0);
            curve.samples.push_back({z0, alpha, lambda});
        }
        out.push_back(std::move(curve));
    }
    if (k == 0.0) {
        // Solvability edges of cos(theta) = 2 lambda - alpha on z = -1.
        const std::size_t n = z_grid.empty() ? 2 : z_grid.size();
        for (int sign : {+1, -1}) {
            BoundaryCurve curve;
            curve.branch_sign = sign;
            curve.source = BoundaryCurve::Source::z_boundary_line;
            for (std::size_t i = 0; i < n; ++i) {
                const double alpha =
                    -20.0 + 40.0 * static_cast<double>(i) / static_cast<double>(n - 1);
                curve.samples.push_back({-1.0, alpha, (alpha + sign) / 2.0});
            }
            out.push_back(std::move(curve));
        }
    }
    return out;
}

LevelCurveGrid level_curve_grid(const SemiclassicalCouplings& c, double k,
                                const std::vector<double>& z_samples,
                                const std::vector<double>& theta_samples) {
    LevelCurveGrid grid;
    grid.z = z_samples;
    grid.theta = theta_samples;
    grid.energy.reserve(z_samples.size() * theta_samples.size());
    for (double z : z_samples)
        for (double theta : theta_samples)
            grid.energy.push_back(radicand(z, k) >= 0.0
                                      ? classical_energy({z, theta}, c, k)
                                      : std::numeric_limits<double>::quiet_NaN());
    return grid;
}

const char* to_string(Branch b) {
    switch (b) {
        case Branch::phi_zero: return "phi0";
        case Branch::phi_pi: return "phiPi";
        case Branch::z_boundary: return "zBoundary";
    }
    return "?";
}

const char* to_string(Character c) {
    switch (c) {
        case Character::minimum: return "minimum";
        case Character::maximum: return "maximum";
        case Character::saddle: return "saddle";
        case Character::degenerate: return "degenerate";
    }
    return "?";
}

}  // namespace hmbec
