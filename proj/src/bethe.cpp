#include "hmbec/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hmbec/spectral.hpp"

namespace hmbec {

Complex OdeCoefficients::a(Complex u) const { return abc.a_coef * u * u + omega * u; }

Complex OdeCoefficients::b(Complex u) const {
    return abc.b_coef * u + omega * (static_cast<double>(l - m + 1) - u * u);
}

Complex OdeCoefficients::c(Complex u) const {
    return omega * static_cast<double>(m) * u + abc.c_coef;
}

OdeCoefficients ode_coefficients(const ModelParams& params, const Sector& sector) {
    OdeCoefficients ode;
    ode.abc = abc_coefficients(params, sector);
    ode.omega = params.omega;
    ode.l = sector.l;
    ode.m = sector.m;
    return ode;
}

std::vector<double> polynomial_g(const ModelParams& p, const Sector& s, double e) {
    if (s.m > 100)
        throw std::invalid_argument("polynomial_g: m > 100, m = " + std::to_string(s.m));
    if (p.omega == 0.0)
        throw std::domain_error("polynomial_g: Omega must be non-zero");
    std::vector<double> rho(s.m + 1);
    rho[0] = 1.0;
    double prev = 0.0;
    for (long j = 0; j < s.m; ++j) {
        rho[j + 1] = ((e - u_diag(p, s, j)) * rho[j] -
                      p.omega * static_cast<double>(s.l + 1 - j) *
                          static_cast<double>(s.m + 1 - j) * prev) /
                     (p.omega * static_cast<double>(j + 1));
        prev = rho[j];
        if (!std::isfinite(rho[j + 1]) || std::abs(rho[j + 1]) > 1e290)
            throw std::overflow_error("polynomial_g: coefficient overflow at j = " +
                                      std::to_string(j + 1) + ", |rho| ~ " +
                                      std::to_string(std::abs(rho[j + 1])));
    }
    return rho;
}

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex p = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) p = p * z + c[i];
    return p;
}

Complex horner_deriv(const std::vector<Complex>& c, Complex z) {
    const std::size_t n = c.size() - 1;
    Complex p = static_cast<double>(n) * c[0];
    for (std::size_t i = 1; i < n; ++i)
        p = p * z + static_cast<double>(n - i) * c[i];
    return n >= 1 ? p : Complex(0.0);
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
    if (coeffs.empty() || std::abs(coeffs[0] - Complex(1.0)) > 1e-12)
        throw std::invalid_argument("polynomial_roots: expected monic coefficients");
    const std::size_t n = coeffs.size() - 1;
    if (n == 0) return {};

    // Fujiwara bound for the initial circle radius.
    double radius = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
        radius = std::max(radius, std::pow(std::abs(coeffs[k]), 1.0 / static_cast<double>(k)));
    radius = std::max(2.0 * radius, 1e-3);

    std::vector<Complex> z(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double angle =
            2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n) + 0.4;
        z[j] = radius * Complex(std::cos(angle), std::sin(angle));
    }

    for (int iter = 0; iter < 500; ++iter) {
        double max_step = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const Complex p = horner(coeffs, z[j]);
            const Complex dp = horner_deriv(coeffs, z[j]);
            if (p == Complex(0.0)) continue;
            Complex ratio = dp == Complex(0.0) ? Complex(1e-30) : p / dp;
            Complex sum(0.0);
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                Complex d = z[j] - z[k];
                if (d == Complex(0.0)) d = Complex(1e-30);
                sum += 1.0 / d;
            }
            const Complex denom = 1.0 - ratio * sum;
            const Complex step = denom == Complex(0.0) ? ratio : ratio / denom;
            z[j] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[j])));
        }
        if (max_step < 1e-14) break;
    }
    return z;
}

Complex bae_residual(const OdeCoefficients& ode, const std::vector<Complex>& roots,
                     std::size_t q) {
    const Complex u = roots[q];
    Complex sum(0.0);
    for (std::size_t p = 0; p < roots.size(); ++p) {
        if (p == q) continue;
        sum += 2.0 / (roots[p] - u);
    }
    return ode.b(u) / ode.a(u) - sum;
}

namespace {

// Solve J dx = r in place by Gaussian elimination with partial pivoting.
// Returns false on a (numerically) singular pivot.
bool solve_dense(std::vector<std::vector<Complex>>& jac, std::vector<Complex>& rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(jac[r][col]) > std::abs(jac[piv][col])) piv = r;
        if (std::abs(jac[piv][col]) < 1e-300) return false;
        std::swap(jac[piv], jac[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = jac[r][col] / jac[col][col];
            for (std::size_t c = col; c < n; ++c) jac[r][c] -= f * jac[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        for (std::size_t c = col + 1; c < n; ++c) rhs[col] -= jac[col][c] * rhs[c];
        rhs[col] /= jac[col][col];
    }
    return true;
}

// Full Newton on the coupled root equations; keeps the best iterate seen.
void polish_on_bae(const OdeCoefficients& ode, std::vector<Complex>& roots) {
    const std::size_t n = roots.size();
    auto max_residual = [&](const std::vector<Complex>& r) {
        double worst = 0.0;
        for (std::size_t q = 0; q < n; ++q)
            worst = std::max(worst, std::abs(bae_residual(ode, r, q)));
        return worst;
    };
    std::vector<Complex> best = roots;
    double best_res = max_residual(roots);
    for (int iter = 0; iter < 30 && best_res > 1e-13; ++iter) {
        std::vector<std::vector<Complex>> jac(n, std::vector<Complex>(n, Complex(0.0)));
        std::vector<Complex> rhs(n);
        for (std::size_t q = 0; q < n; ++q) {
            const Complex u = roots[q];
            const Complex a = ode.a(u);
            const Complex b = ode.b(u);
            if (a == Complex(0.0)) return;
            const Complex da = 2.0 * ode.abc.a_coef * u + ode.omega;
            const Complex db = ode.abc.b_coef - 2.0 * ode.omega * u;
            Complex diag = (db * a - b * da) / (a * a);
            for (std::size_t p = 0; p < n; ++p) {
                if (p == q) continue;
                const Complex d = roots[p] - u;
                if (d == Complex(0.0)) return;  // coincident pair: leave as-is
                const Complex d2 = 2.0 / (d * d);
                jac[q][p] = d2;
                diag -= d2;
            }
            jac[q][q] = diag;
            rhs[q] = bae_residual(ode, roots, q);
        }
        if (!solve_dense(jac, rhs)) break;
        for (std::size_t q = 0; q < n; ++q) roots[q] -= rhs[q];
        const double res = max_residual(roots);
        if (res < best_res) {
            best_res = res;
            best = roots;
        } else if (res > 10.0 * best_res) {
            break;  // diverging from a poor Jacobian: stop on the best iterate
        }
    }
    roots = best;
}

}  // namespace

BetheRoots bethe_roots(const ModelParams& p, const Sector& s, double e) {
    const std::vector<double> rho = polynomial_g(p, s, e);
    std::vector<Complex> coeffs(rho.begin(), rho.end());
    BetheRoots out;
    out.energy = e;
    out.roots = polynomial_roots(coeffs);

    const OdeCoefficients ode = ode_coefficients(p, s);
    if (!out.roots.empty()) polish_on_bae(ode, out.roots);

    std::sort(out.roots.begin(), out.roots.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    Complex sum(0.0);
    for (const Complex& u : out.roots) sum += u;
    const double m = static_cast<double>(s.m);
    out.energy_reconstructed = ode.abc.a_coef * m * (m - 1.0) + ode.abc.b_coef * m +
                               ode.abc.c_coef - p.omega * sum.real();

    for (std::size_t q = 0; q < out.roots.size(); ++q) {
        out.max_bae_residual =
            std::max(out.max_bae_residual, std::abs(bae_residual(ode, out.roots, q)));
        for (std::size_t r = q + 1; r < out.roots.size(); ++r)
            if (std::abs(out.roots[q] - out.roots[r]) <
                1e-8 * (1.0 + std::abs(out.roots[q])))
                out.repeated_roots = true;
    }
    return out;
}

// --- Schrodinger mapping ----------------------------------------------------

double potential_general(double x, const AbcCoefficients& abc, double omega,
                         const Sector& sector) {
    const double A = abc.a_coef;
    if (A <= 0.0)
        throw std::invalid_argument("potential_general: requires A > 0");
    const double sa = std::sqrt(A);
    const double sx = std::sin(sa * x);
    const double cx = std::cos(sa * x);
    if (std::abs(sx) < 1e-12)
        throw std::domain_error("potential_general: singular lattice point sqrt(A) x in pi Z");

    const double B = abc.b_coef;
    const double lm1 = static_cast<double>(sector.l - sector.m + 1);
    const double u = omega / (2.0 * A) * (cx - 1.0);
    const double u1 = -omega / (2.0 * sa) * sx;       // du/dx
    const double u2 = -0.5 * omega * cx;              // d2u/dx2
    const double u3 = 0.5 * omega * sa * sx;          // d3u/dx3
    const double bu = B * u + omega * (lm1 - u * u);
    const double dbu = B - 2.0 * omega * u;           // db/du
    const double f1 = (-u2 - bu) / (2.0 * u1);
    const double f2 =
        ((-u3 - dbu * u1) * 2.0 * u1 - (-u2 - bu) * 2.0 * u2) / (4.0 * u1 * u1);
    const double cu = omega * static_cast<double>(sector.m) * u + abc.c_coef;
    return cu + f2 + f1 * f1;
}

double potential_a0(double x, double b_coef, double c_coef, double omega, long n_total,
                    long j_imbalance) {
    if (x <= 0.0) throw std::domain_error("potential_a0: requires x > 0");
    const double n = static_cast<double>(n_total);
    const double j = static_cast<double>(j_imbalance);
    const double x2 = x * x;
    const double o2 = omega * omega;
    // Constant term C - B(J+1)/2: the printed A -> 0 limit has N where the
    // mapping gives J (they agree only at m = 0).
    return c_coef - 0.5 * b_coef * (j + 1.0) + (j * j - 0.25) / x2 +
           (b_coef * b_coef / 16.0 - o2 * (n + 2.0) / 8.0) * x2 +
           o2 * b_coef * x2 * x2 / 32.0 + o2 * o2 * x2 * x2 * x2 / 256.0;
}

double wavefunction_no_scatter(double x, const BetheRoots& roots, double mu, double omega,
                               long j_imbalance) {
    if (x <= 0.0) throw std::domain_error("wavefunction_no_scatter: requires x > 0");
    const double x2 = x * x;
    const double pre = std::pow(x, static_cast<double>(j_imbalance) + 0.5) *
                       std::exp(-omega * omega * x2 * x2 / 64.0 + mu * x2 / 8.0);
    Complex prod(1.0);
    for (const Complex& u : roots.roots) prod *= (-omega * x2 / 4.0 - u);
    return pre * prod.real();
}

FdResult fd_schrodinger(const std::function<double(double)>& potential, double length,
                        long grid_size, int n_eigenvalues, double centrifugal) {
    if (length <= 0.0 || grid_size < 3)
        throw std::invalid_argument("fd_schrodinger: bad domain or grid");
    TridiagonalOperator op;
    op.diag.resize(grid_size);
    if (centrifugal == 0.0) {
        const double x0 = 1e-6 * length;
        const double h = (length - x0) / static_cast<double>(grid_size + 1);
        op.offdiag.assign(grid_size - 1, -1.0 / (h * h));
        for (long i = 0; i < grid_size; ++i) {
            const double x = x0 + h * static_cast<double>(i + 1);
            op.diag[i] = 2.0 / (h * h) + potential(x);
        }
    } else {
        // Inverse-square term handled analytically: psi = x^(1/2+nu) phi with
        // nu = sqrt(centrifugal + 1/4), then finite-volume discretization of
        // -(1/w)(w phi')' + U phi with weight w = x^(1+2nu) on a staggered
        // grid. The zero-flux inner face at x = 0 selects the regular branch,
        // which a Dirichlet cutoff cannot do at the critical coupling -1/4.
        if (centrifugal < -0.25)
            throw std::invalid_argument(
                "fd_schrodinger: inverse-square coefficient below -1/4 (fall to the "
                "centre; operator not bounded below)");
        const double p = 1.0 + 2.0 * std::sqrt(centrifugal + 0.25);
        const double h = length / static_cast<double>(grid_size);
        auto w_face = [p](double x) { return std::pow(x, p); };
        std::vector<double> w_node(grid_size);
        for (long i = 0; i < grid_size; ++i)
            w_node[i] = std::pow((static_cast<double>(i) + 0.5) * h, p);
        op.offdiag.resize(grid_size - 1);
        for (long i = 0; i < grid_size; ++i) {
            const double x = (static_cast<double>(i) + 0.5) * h;
            const double f_lo = w_face(static_cast<double>(i) * h);
            const double f_hi = w_face(static_cast<double>(i + 1) * h);
            op.diag[i] =
                (f_lo + f_hi) / (w_node[i] * h * h) + potential(x) - centrifugal / (x * x);
            if (i + 1 < grid_size)
                op.offdiag[i] = -f_hi / (h * h * std::sqrt(w_node[i] * w_node[i + 1]));
        }
    }
    FdResult res;
    res.eigenvalues = lowest_eigenvalues(op, n_eigenvalues);
    for (double e : res.eigenvalues) {
        const std::vector<double> v = inverse_iteration(op, e);
        double vmax = 0.0;
        for (double c : v) vmax = std::max(vmax, std::abs(c));
        if (std::abs(v.back()) > 1e-5 * vmax) res.decayed = false;
    }
    return res;
}

// --- Sextic critical-point analysis -----------------------------------------

namespace {

double sextic_value(const SexticPotential& p, double x) {
    const double w = x * x;
    return p.centrifugal / w + p.quadratic * w + p.quartic * w * w +
           p.sextic * w * w * w + p.offset;
}

double sextic_d1(const SexticPotential& p, double x) {
    return -2.0 * p.centrifugal / (x * x * x) + 2.0 * p.quadratic * x +
           4.0 * p.quartic * x * x * x + 6.0 * p.sextic * x * x * x * x * x;
}

double sextic_d2(const SexticPotential& p, double x) {
    const double w = x * x;
    return 6.0 * p.centrifugal / (w * w) + 2.0 * p.quadratic + 12.0 * p.quartic * w +
           30.0 * p.sextic * w * w;
}

}  // namespace

CriticalPointReport critical_point_analysis(const SexticPotential& p) {
    if (p.quartic <= 0.0 || p.sextic <= 0.0)
        throw std::invalid_argument(
            "critical_point_analysis: requires quartic and sextic coefficients > 0");
    CriticalPointReport rep;
    rep.bifurcation_possible = p.centrifugal <= 0.0;

    if (p.centrifugal == 0.0) {
        // x -> 0 limit point: dV/dx -> 0, d2V/dx2 -> 2 quadratic.
        CriticalPointReport::StationaryPoint sp;
        sp.x = 0.0;
        sp.value = p.offset;
        if (std::abs(p.quadratic) < 1e-12) {
            sp.type = Character::degenerate;
            rep.degenerate_x = 0.0;
        } else {
            sp.type = p.quadratic > 0.0 ? Character::minimum : Character::maximum;
        }
        rep.points.push_back(sp);
    }

    // x^3 dV/dx = 6 D w^4 + 4 C w^3 + 2 B w^2 - 2 A, w = x^2.
    std::vector<Complex> coeffs = {Complex(1.0), Complex(4.0 * p.quartic / (6.0 * p.sextic)),
                                   Complex(2.0 * p.quadratic / (6.0 * p.sextic)), Complex(0.0),
                                   Complex(-2.0 * p.centrifugal / (6.0 * p.sextic))};
    for (const Complex& w : polynomial_roots(coeffs)) {
        if (std::abs(w.imag()) > 1e-8 * (1.0 + std::abs(w.real()))) continue;
        if (w.real() <= 1e-14) continue;
        double x = std::sqrt(w.real());
        // Newton polish on dV/dx
        for (int it = 0; it < 40; ++it) {
            const double d1 = sextic_d1(p, x);
            const double d2 = sextic_d2(p, x);
            if (d2 == 0.0) break;
            const double step = d1 / d2;
            x -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        if (!(x > 0.0)) continue;
        bool dup = false;
        for (const auto& q : rep.points)
            if (std::abs(q.x - x) < 1e-9 * (1.0 + x)) dup = true;
        if (dup) continue;
        CriticalPointReport::StationaryPoint sp;
        sp.x = x;
        sp.value = sextic_value(p, x);
        const double d2 = sextic_d2(p, x);
        const double scale = std::abs(p.quadratic) + std::abs(p.quartic) * x * x +
                             std::abs(p.sextic) * x * x * x * x +
                             std::abs(p.centrifugal) / (x * x * x * x) + 1.0;
        if (std::abs(d2) < 1e-9 * scale) {
            sp.type = Character::degenerate;
            rep.degenerate_x = x;
        } else {
            sp.type = d2 > 0.0 ? Character::minimum : Character::maximum;
        }
        rep.points.push_back(sp);
    }
    std::sort(rep.points.begin(), rep.points.end(),
              [](const auto& a, const auto& b) { return a.x < b.x; });
    return rep;
}

double degenerate_quadratic_coef(double centrifugal, double quartic, double sextic) {
    if (centrifugal >= 0.0 || quartic <= 0.0 || sextic <= 0.0)
        throw std::invalid_argument(
            "degenerate_quadratic_coef: requires centrifugal < 0, quartic, sextic > 0");
    // Eliminating the quadratic coefficient from dV = d2V = 0 leaves
    // quartic x^6 + 3 sextic x^8 = -centrifugal, monotone in x.
    auto h = [&](double x) {
        const double w = x * x;
        return quartic * w * w * w + 3.0 * sextic * w * w * w * w + centrifugal;
    };
    double lo = 0.0;
    double hi = std::max({1.0, std::pow(-centrifugal / quartic, 1.0 / 6.0),
                          std::pow(-centrifugal / (3.0 * sextic), 1.0 / 8.0)}) *
                2.0;
    while (h(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    const double x = 0.5 * (lo + hi);
    const double w = x * x;
    return -3.0 * quartic * w - 6.0 * sextic * w * w;
}

SexticPotential sextic_from_no_scattering(double mu, double omega, long n_total,
                                          long j_imbalance) {
    const double n = static_cast<double>(n_total);
    const double j = static_cast<double>(j_imbalance);
    const double o2 = omega * omega;
    SexticPotential p;
    p.centrifugal = j * j - 0.25;
    p.quadratic = (mu * mu - 2.0 * o2 * (n + 2.0)) / 16.0;
    p.quartic = -mu * o2 / 32.0;
    p.sextic = o2 * o2 / 256.0;
    p.offset = mu * (n + 1.0) / 2.0;
    return p;
}

double threshold_correction(long n_total, double omega) {
    if (n_total < 2 || omega <= 0.0)
        throw std::invalid_argument("threshold_correction: requires N >= 2 and Omega > 0");
    const double q = 2.0 * (static_cast<double>(n_total) + 2.0);
    return -omega * std::sqrt(q) + 1.5 * omega * std::pow(q, -1.0 / 6.0);
}

double degenerate_mu(long n_total, double omega) {
    if (n_total < 2 || omega <= 0.0)
        throw std::invalid_argument("degenerate_mu: requires N >= 2 and Omega > 0");
    auto mismatch = [&](double mu) {
        const SexticPotential p = sextic_from_no_scattering(mu, omega, n_total, 0);
        return p.quadratic - degenerate_quadratic_coef(p.centrifugal, p.quartic, p.sextic);
    };
    double lo = -3.0 * omega * std::sqrt(2.0 * (static_cast<double>(n_total) + 2.0));
    double hi = -1e-8 * omega;
    if (mismatch(lo) < 0.0 || mismatch(hi) > 0.0)
        throw std::runtime_error("degenerate_mu: bracketing failed");
    for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (mismatch(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace hmbec
