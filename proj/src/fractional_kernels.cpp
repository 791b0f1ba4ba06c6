#include "tfch/fractional_kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tfch {

double omega(double beta, double t) {
    if (!(beta > 0.0))
        throw std::invalid_argument("omega: beta must be positive");
    if (t < 0.0)
        throw std::invalid_argument("omega: t must be non-negative");
    if (t == 0.0) {
        if (beta <= 1.0)
            throw std::domain_error("omega: singular at t = 0 for beta <= 1");
        return 0.0;
    }
    return std::pow(t, beta - 1.0) / std::tgamma(beta);
}

namespace {

void check_row_args(const TimeMesh& mesh, int n, double alpha) {
    if (n < 1 || n > mesh.step_count())
        throw std::invalid_argument("kernel row: step index out of range");
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("kernel row: alpha must lie in (0, 1)");
}

// omega_beta(x + d) - omega_beta(x) for beta > 1, x >= 0, d > 0, without
// cancellation: the bracket (1 + d/x)^(beta-1) - 1 goes through expm1/log1p.
double omega_diff(double beta, double x, double d) {
    if (x == 0.0)
        return omega(beta, d);
    return omega(beta, x) * std::expm1((beta - 1.0) * std::log1p(d / x));
}

// Mean of omega_{1-alpha}(t - s) over [t_nm1, t_n] x [t_km1, t_k] by a 2x2
// Gauss rule. Only used when both steps are at most 1e-4 of the gap between
// the intervals, where the rule is exact to machine precision and the
// closed form would lose half its digits to the second-order difference.
double short_step_mean(double alpha, double t_km1, double t_k, double t_nm1, double t_n) {
    static constexpr double node = 0.57735026918962576; // 1/sqrt(3)
    const double tm = 0.5 * (t_nm1 + t_n), th = 0.5 * (t_n - t_nm1);
    const double sm = 0.5 * (t_km1 + t_k), sh = 0.5 * (t_k - t_km1);
    double sum = 0.0;
    for (int i = -1; i <= 1; i += 2)
        for (int j = -1; j <= 1; j += 2)
            sum += omega(1.0 - alpha, (tm + i * node * th) - (sm + j * node * sh));
    return 0.25 * sum;
}

// abar^n_{n-k} for k < n. The double integral reduces to the second
// difference of F = omega_{3-alpha} over the corner points,
//   F(gap+a+b) - F(gap+a) - F(gap+b) + F(gap),   gap = t_{n-1} - t_k,
// which is evaluated as a difference of two expm1-factored pair
// differences taken in the shorter of the two step lengths.
double l1plus_coeff_past(double alpha, double t_km1, double t_k, double t_nm1, double t_n) {
    const double tau_k = t_k - t_km1;
    const double tau_n = t_n - t_nm1;
    const double gap = t_nm1 - t_k;
    const double a = std::min(tau_k, tau_n);
    const double b = std::max(tau_k, tau_n);
    if (gap > 0.0 && b <= 1e-4 * gap)
        return short_step_mean(alpha, t_km1, t_k, t_nm1, t_n);
    const double beta = 3.0 - alpha;
    const double bracket = omega_diff(beta, gap + b, a) - omega_diff(beta, gap, a);
    return bracket / (tau_k * tau_n);
}

} // namespace

KernelRow l1_row(const TimeMesh& mesh, int n, double alpha) {
    check_row_args(mesh, n, alpha);
    const auto& t = mesh.times();
    KernelRow row;
    row.alpha = alpha;
    row.n = n;
    row.times.assign(t.begin(), t.begin() + n + 1);
    row.coeffs.resize(n);
    for (int k = 1; k <= n; ++k) {
        const double tau_k = t[k] - t[k - 1];
        row.coeffs[k - 1] = omega_diff(2.0 - alpha, t[n] - t[k], tau_k) / tau_k;
    }
    return row;
}

KernelRow l1plus_row(const TimeMesh& mesh, int n, double alpha) {
    check_row_args(mesh, n, alpha);
    const auto& t = mesh.times();
    KernelRow row;
    row.alpha = alpha;
    row.n = n;
    row.times.assign(t.begin(), t.begin() + n + 1);
    row.coeffs.resize(n);
    const double tau_n = t[n] - t[n - 1];
    for (int k = 1; k < n; ++k)
        row.coeffs[k - 1] = l1plus_coeff_past(alpha, t[k - 1], t[k], t[n - 1], t[n]);
    // current step: abar^n_0 = omega_{3-alpha}(tau_n) / tau_n^2 = tau_n^(-alpha)/Gamma(3-alpha)
    row.coeffs[n - 1] = std::pow(tau_n, -alpha) / std::tgamma(3.0 - alpha);
    return row;
}

double apply_row(const KernelRow& row, std::span<const double> increments) {
    if (static_cast<int>(increments.size()) != row.n)
        throw std::invalid_argument("apply_row: need exactly n increments");
    double sum = 0.0;
    for (int k = 0; k < row.n; ++k)
        sum += row.coeffs[k] * increments[k];
    return sum;
}

double psd_quadratic_form(std::span<const KernelRow> rows, std::span<const double> w) {
    const int n = static_cast<int>(rows.size());
    if (static_cast<int>(w.size()) != n)
        throw std::invalid_argument("psd_quadratic_form: rows and w must have equal length");
    for (int k = 0; k < n; ++k) {
        if (rows[k].n != k + 1)
            throw std::invalid_argument("psd_quadratic_form: rows[k] must be built for step k+1");
        for (int j = 0; j <= k + 1; ++j)
            if (rows[k].times[j] != rows[n - 1].times[j])
                throw std::invalid_argument("psd_quadratic_form: rows built on different meshes");
    }
    double total = 0.0;
    for (int k = 1; k <= n; ++k) {
        double inner = 0.0;
        for (int j = 1; j <= k; ++j)
            inner += rows[k - 1].coeffs[j - 1] * w[j - 1];
        total += w[k - 1] * inner;
    }
    return total;
}

} // namespace tfch
