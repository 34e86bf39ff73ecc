#include "hmbec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hmbec {

TridiagonalOperator build_tridiagonal(const ModelParams& p, const Sector& s) {
    TridiagonalOperator op;
    op.diag.resize(s.dim);
    op.offdiag.resize(s.dim - 1);
    for (long j = 0; j <= s.m; ++j) op.diag[j] = u_diag(p, s, j);
    for (long j = 1; j <= s.m; ++j) op.offdiag[j - 1] = hopping(s, p.omega, j);
    return op;
}

namespace {

// Implicit-shift QL for a symmetric tridiagonal matrix, accumulating the
// rotations into v (n x n row-major, columns become eigenvectors).
void tql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>& v,
                  long n) {
    const double eps = std::numeric_limits<double>::epsilon();
    e.push_back(0.0);
    for (long l = 0; l < n; ++l) {
        int iter = 0;
        long m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 80)
                    throw std::runtime_error("eigendecompose: QL failed to converge at index " +
                                             std::to_string(l));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                long i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (long kk = 0; kk < n; ++kk) {
                        f = v[kk * n + i + 1];
                        v[kk * n + i + 1] = s * v[kk * n + i] + c * f;
                        v[kk * n + i] = c * v[kk * n + i] - s * f;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void fix_sign(std::vector<double>& vec) {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < vec.size(); ++i)
        if (std::abs(vec[i]) > std::abs(vec[imax])) imax = i;
    if (vec[imax] < 0.0)
        for (double& x : vec) x = -x;
}

}  // namespace

SpectralDecomposition eigendecompose(const TridiagonalOperator& op) {
    const long n = op.dim();
    if (n < 1) throw std::invalid_argument("eigendecompose: empty operator");
    std::vector<double> d = op.diag;
    std::vector<double> e = op.offdiag;
    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (long i = 0; i < n; ++i) v[i * n + i] = 1.0;
    tql_implicit(d, e, v, n);

    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0L);
    std::sort(order.begin(), order.end(), [&](long a, long b) { return d[a] < d[b]; });

    SpectralDecomposition dec;
    dec.eigenvalues.resize(n);
    dec.eigenvectors.assign(n, std::vector<double>(n));
    for (long k = 0; k < n; ++k) {
        dec.eigenvalues[k] = d[order[k]];
        for (long i = 0; i < n; ++i) dec.eigenvectors[k][i] = v[i * n + order[k]];
        fix_sign(dec.eigenvectors[k]);
    }
    return dec;
}

QuantumState ground_state(const SpectralDecomposition& decomp, const Sector& sector) {
    if (decomp.eigenvalues.empty())
        throw std::invalid_argument("ground_state: empty decomposition");
    if (decomp.eigenvalues.size() > 1) {
        const double e0 = decomp.eigenvalues[0];
        const double gap = decomp.eigenvalues[1] - e0;
        if (gap <= 1e-10 * (1.0 + std::abs(e0)))
            throw std::runtime_error("ground_state: near-degenerate ground state, gap = " +
                                     std::to_string(gap));
    }
    QuantumState st;
    st.sector = sector;
    st.amplitudes.reserve(decomp.eigenvectors[0].size());
    for (double x : decomp.eigenvectors[0]) st.amplitudes.emplace_back(x, 0.0);
    return st;
}

long sturm_count(const TridiagonalOperator& op, double x) {
    const long n = op.dim();
    long count = 0;
    double d = op.diag[0] - x;
    if (d < 0.0) ++count;
    for (long i = 1; i < n; ++i) {
        const double b = op.offdiag[i - 1];
        if (d == 0.0) d = 1e-300;
        d = (op.diag[i] - x) - b * b / d;
        if (d < 0.0) ++count;
    }
    return count;
}

namespace {

// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double bisect_eigenvalue(const TridiagonalOperator& op, long k, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(op, mid) >= k + 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Solve (T - sigma) x = b by LU with partial pivoting on the tridiagonal band.
std::vector<double> shifted_solve(const TridiagonalOperator& op, double sigma,
                                  std::vector<double> b) {
    const long n = op.dim();
    std::vector<double> du(n, 0.0), dm(n, 0.0), du2(n, 0.0);
    std::vector<double> dl(n, 0.0);
    for (long i = 0; i < n; ++i) dm[i] = op.diag[i] - sigma;
    for (long i = 0; i + 1 < n; ++i) {
        du[i] = op.offdiag[i];
        dl[i] = op.offdiag[i];
    }
    // forward elimination with row swaps
    for (long i = 0; i + 1 < n; ++i) {
        if (std::abs(dl[i]) > std::abs(dm[i])) {
            std::swap(dm[i], dl[i]);
            std::swap(du[i], dm[i + 1]);
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = 0.0;
            }
            std::swap(b[i], b[i + 1]);
        }
        if (dm[i] == 0.0) dm[i] = 1e-300;
        const double w = dl[i] / dm[i];
        dm[i + 1] -= w * du[i];
        if (i + 2 < n) du[i + 1] -= w * du2[i];
        b[i + 1] -= w * b[i];
    }
    if (dm[n - 1] == 0.0) dm[n - 1] = 1e-300;
    // back substitution
    std::vector<double> x(n);
    x[n - 1] = b[n - 1] / dm[n - 1];
    if (n > 1) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / dm[n - 2];
    for (long i = n - 3; i >= 0; --i)
        x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dm[i];
    return x;
}

}  // namespace

GroundStateResult ground_state_fast(const TridiagonalOperator& op) {
    const long n = op.dim();
    if (n < 1) throw std::invalid_argument("ground_state_fast: empty operator");
    // Gerschgorin bounds
    double lo = op.diag[0], hi = op.diag[0];
    for (long i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(op.offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(op.offdiag[i]);
        lo = std::min(lo, op.diag[i] - r);
        hi = std::max(hi, op.diag[i] + r);
    }
    GroundStateResult res;
    res.energy = bisect_eigenvalue(op, 0, lo, hi);
    if (n == 1) {
        res.gap = std::numeric_limits<double>::infinity();
        res.vector = {1.0};
        return res;
    }
    res.gap = bisect_eigenvalue(op, 1, res.energy, hi) - res.energy;
    if (res.gap <= 1e-10 * (1.0 + std::abs(res.energy)))
        throw std::runtime_error("ground_state_fast: near-degenerate ground state, gap = " +
                                 std::to_string(res.gap));

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < 4; ++it) {
        v = shifted_solve(op, res.energy, std::move(v));
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    fix_sign(v);
    res.vector = std::move(v);
    return res;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, long count) {
    const long n = op.dim();
    count = std::min(count, n);
    double lo = op.diag[0], hi = op.diag[0];
    for (long i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(op.offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(op.offdiag[i]);
        lo = std::min(lo, op.diag[i] - r);
        hi = std::max(hi, op.diag[i] + r);
    }
    std::vector<double> out;
    out.reserve(count);
    double prev = lo;
    for (long k = 0; k < count; ++k) {
        prev = bisect_eigenvalue(op, k, prev, hi);
        out.push_back(prev);
    }
    return out;
}

std::vector<double> inverse_iteration(const TridiagonalOperator& op, double eigenvalue) {
    const long n = op.dim();
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < 4; ++it) {
        v = shifted_solve(op, eigenvalue, std::move(v));
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    fix_sign(v);
    return v;
}

double char_poly_eval(const ModelParams& p, const Sector& s, double e_trial) {
    if (s.m > 60)
        throw std::invalid_argument("char_poly_eval: m > 60 (overflow risk), m = " +
                                    std::to_string(s.m));
    if (p.omega == 0.0) {
        // Diagonal Hamiltonian: the defect reduces to prod_j (U_j - E).
        double prod = 1.0;
        for (long j = 0; j <= s.m; ++j) {
            prod *= (u_diag(p, s, j) - e_trial);
            if (std::abs(prod) > 1e100) prod /= 1e100;
        }
        return prod;
    }
    double rho_prev = 0.0;  // rho_{-1}
    double rho = 1.0;       // rho_0
    for (long j = 0; j < s.m; ++j) {
        const double rho_next =
            ((e_trial - u_diag(p, s, j)) * rho -
             p.omega * static_cast<double>(s.l + 1 - j) * static_cast<double>(s.m + 1 - j) *
                 rho_prev) /
            (p.omega * static_cast<double>(j + 1));
        rho_prev = rho;
        rho = rho_next;
        const double mag = std::max(std::abs(rho), std::abs(rho_prev));
        if (mag > 1e100) {
            rho /= mag;
            rho_prev /= mag;
        }
    }
    // rho = rho_m, rho_prev = rho_{m-1}
    return (u_diag(p, s, s.m) - e_trial) * rho +
           p.omega * static_cast<double>(s.l - s.m + 1) * rho_prev;
}

}  // namespace hmbec
