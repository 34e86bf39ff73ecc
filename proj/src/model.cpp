#include "hmbec/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hmbec {

ModelParams ModelParams::no_scattering(double mu, double omega) {
    ModelParams p;
    p.mu_c = mu;
    p.omega = omega;
    return p;
}

ModelParams ModelParams::swapped_ab() const {
    ModelParams p = *this;
    std::swap(p.u_aa, p.u_bb);
    std::swap(p.u_ac, p.u_bc);
    std::swap(p.mu_a, p.mu_b);
    return p;
}

Sector sector_new(long n_total, long j_imbalance) {
    if (n_total < 0)
        throw std::invalid_argument("sector_new: N must be non-negative, got " +
                                    std::to_string(n_total));
    if (j_imbalance < 0)
        throw std::invalid_argument(
            "sector_new: J must be non-negative (map J<0 by swapping a<->b labels), got " +
            std::to_string(j_imbalance));
    if (j_imbalance > n_total)
        throw std::invalid_argument("sector_new: J exceeds N (" +
                                    std::to_string(j_imbalance) + " > " +
                                    std::to_string(n_total) + ")");
    if ((n_total - j_imbalance) % 2 != 0)
        throw std::invalid_argument("sector_new: N-J must be even, got N=" +
                                    std::to_string(n_total) + " J=" +
                                    std::to_string(j_imbalance));
    Sector s;
    s.n_total = n_total;
    s.j_imbalance = j_imbalance;
    s.l = (n_total + j_imbalance) / 2;
    s.m = (n_total - j_imbalance) / 2;
    s.k = n_total > 0 ? static_cast<double>(j_imbalance) / static_cast<double>(n_total) : 0.0;
    s.dim = s.m + 1;
    return s;
}

double u_diag(const ModelParams& p, const Sector& s, long j) {
    if (j < 0 || j > s.m)
        throw std::out_of_range("u_diag: j out of range 0.." + std::to_string(s.m) +
                                ", got " + std::to_string(j));
    const double na = static_cast<double>(s.l - j);
    const double nb = static_cast<double>(s.m - j);
    const double nc = static_cast<double>(j);
    return p.u_aa * na * na + p.u_bb * nb * nb + p.u_cc * nc * nc +
           p.u_ab * na * nb + p.u_ac * na * nc + p.u_bc * nb * nc +
           p.mu_a * na + p.mu_b * nb + p.mu_c * nc;
}

AbcCoefficients abc_coefficients(const ModelParams& p, const Sector& s) {
    const double l = static_cast<double>(s.l);
    const double m = static_cast<double>(s.m);
    AbcCoefficients abc;
    abc.a_coef = p.u_aa + p.u_bb + p.u_cc + p.u_ab - p.u_ac - p.u_bc;
    abc.b_coef = (1.0 + 2.0 * l - 2.0 * m) * p.u_aa + p.u_bb +
                 (1.0 - 2.0 * m) * p.u_cc + (1.0 + l - m) * p.u_ab +
                 (2.0 * m - l - 1.0) * p.u_ac + (m - 1.0) * p.u_bc +
                 p.mu_a + p.mu_b - p.mu_c;
    // Constant term re-derived from the diagonal element with t = m-j:
    // the published expression has (1-m)^2 U_aa and (m-l) mu_a in place of
    // (l-m)^2 U_aa and (l-m) mu_a, which breaks U_j consistency.
    abc.c_coef = (l - m) * (l - m) * p.u_aa + m * (l - m) * p.u_ac +
                 m * m * p.u_cc + (l - m) * p.mu_a + m * p.mu_c;
    return abc;
}

double hopping(const Sector& s, double omega, long j) {
    if (j < 1 || j > s.m)
        throw std::out_of_range("hopping: j out of range 1.." + std::to_string(s.m) +
                                ", got " + std::to_string(j));
    const double jj = static_cast<double>(j);
    return omega * std::sqrt(jj * static_cast<double>(s.l - j + 1) *
                             static_cast<double>(s.m - j + 1));
}

SemiclassicalCouplings semiclassical_couplings(const ModelParams& p, const Sector& s) {
    if (p.omega == 0.0)
        throw std::domain_error("semiclassical_couplings: Omega must be non-zero");
    if (s.n_total <= 0)
        throw std::domain_error("semiclassical_couplings: N must be positive");
    const double n = static_cast<double>(s.n_total);
    const double k = s.k;
    const double pref = std::sqrt(2.0 * n) / p.omega;

    SemiclassicalCouplings c;
    c.lambda = pref * 0.25 * (p.u_aa + p.u_bb + p.u_cc + p.u_ab - p.u_ac - p.u_bc);
    c.alpha = pref * (0.5 * (1.0 + k) * p.u_aa + 0.5 * (1.0 - k) * p.u_bb +
                      0.5 * p.u_ab - 0.25 * (1.0 + k) * p.u_ac -
                      0.25 * (1.0 - k) * p.u_bc +
                      (p.mu_a + p.mu_b - p.mu_c) / (2.0 * n));
    c.beta = pref * ((1.0 + k) * (1.0 + k) * p.u_aa + (1.0 - k) * (1.0 - k) * p.u_bb +
                     (1.0 - k * k) * p.u_ab +
                     2.0 / n * ((1.0 + k) * p.mu_a + (1.0 - k) * p.mu_b));
    return c;
}

double mu_from_alpha(double alpha, double omega, long n_total) {
    return -alpha * omega * std::sqrt(2.0 * static_cast<double>(n_total));
}

}  // namespace hmbec
