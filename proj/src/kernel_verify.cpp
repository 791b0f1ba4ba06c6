#include "tfch/kernel_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tfch/fractional_kernels.hpp"

namespace tfch::verify {

namespace {

constexpr double kTMax = 7.0; // covers d^(-0.9)-type endpoint singularities

// Trapezoid sum over the tanh-sinh nodes at spacing d, odd multiples only
// when refining (skip_even), plus the center node at level 0.
double level_sum(const std::function<double(double)>& f, double a, double b, double d,
                 bool odd_only) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double sum = 0.0;
    const int start = odd_only ? 1 : 0;
    const int stride = odd_only ? 2 : 1;
    for (int i = start;; i += stride) {
        const double t = i * d;
        if (t > kTMax)
            break;
        if (i == 0) {
            sum += 0.5 * std::numbers::pi * f(c);
            continue;
        }
        const double sh = std::numbers::pi * std::sinh(t);
        const double q = std::exp(-sh); // e^{-2z}, z = (pi/2) sinh t
        const double one_plus = 1.0 + q;
        const double dist = 2.0 * h * q / one_plus;        // offset from either endpoint
        const double w = std::numbers::pi * std::cosh(t) * 2.0 * q / (one_plus * one_plus);
        if (dist <= 0.0 || w <= 0.0)
            break; // underflowed past useful range
        sum += w * (f(a + dist) + f(b - dist));
    }
    return sum;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (!(b > a))
        throw std::invalid_argument("integrate: need b > a");
    const double h = 0.5 * (b - a);
    double d = 1.0;
    double node_sum = level_sum(f, a, b, d, false);
    double result = h * d * node_sum;
    for (int level = 1; level <= 12; ++level) {
        d *= 0.5;
        node_sum += level_sum(f, a, b, d, true); // nodes at odd multiples of the new spacing
        const double estimate = h * d * node_sum;
        if (level >= 3 && std::abs(estimate - result) <= rel_tol * std::abs(estimate) + 1e-300)
            return estimate;
        result = estimate;
    }
    return result;
}

double l1_coeff_quadrature(const TimeMesh& mesh, int n, int k, double alpha) {
    const auto& t = mesh.times();
    const double tau_k = t[k] - t[k - 1];
    // integrate in u = s - t_{k-1} so the interval width is tau_k exactly;
    // sigma = t_n - s = gap + (tau_k - u) with gap = t_n - t_k
    const double gap = t[n] - t[k];
    const auto f = [&](double u) { return omega(1.0 - alpha, gap + u); };
    return integrate(f, 0.0, tau_k, 1e-13) / tau_k;
}

double l1plus_coeff_quadrature(const TimeMesh& mesh, int n, int k, double alpha) {
    const auto& t = mesh.times();
    const double tau_k = t[k] - t[k - 1];
    const double tau_n = t[n] - t[n - 1];
    const auto f = [alpha](double sigma) { return omega(1.0 - alpha, sigma); };
    // outer variable xi = t - t_{n-1} in [0, tau_n]; inner intervals are
    // parameterized by their exact widths so that nothing cancels when the
    // steps are much shorter than the elapsed span
    if (k == n) {
        // inner over sigma = t - s in [0, xi], singular at sigma = 0
        const auto inner = [&](double xi) { return integrate(f, 0.0, xi, 1e-13); };
        return integrate(inner, 0.0, tau_n, 1e-12) / (tau_k * tau_n);
    }
    const double gap = t[n - 1] - t[k];
    const auto inner = [&](double xi) {
        // sigma = (gap + xi) + u, u in [0, tau_k]; u = 0 is the singular
        // corner when gap = xi = 0 (k = n-1)
        return integrate([&](double u) { return f(gap + xi + u); }, 0.0, tau_k, 1e-13);
    };
    return integrate(inner, 0.0, tau_n, 1e-12) / (tau_k * tau_n);
}

double l1_coeff_uniform_reference(double tau, int n, int k, double alpha) {
    const auto w = [alpha](double s) {
        return s == 0.0 ? 0.0 : std::pow(s, 1.0 - alpha) / std::tgamma(2.0 - alpha);
    };
    return std::pow(tau, -alpha) * (w(n - k + 1.0) - w(static_cast<double>(n - k)));
}

double uniform_sample(std::mt19937_64& rng, double lo, double hi) {
    const double u = (rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

TimeMesh random_mesh(std::mt19937_64& rng, int steps, double ratio_lo, double ratio_hi) {
    TimeMesh mesh;
    double tau = std::pow(10.0, uniform_sample(rng, -3.0, 0.0));
    mesh.append(tau);
    for (int k = 1; k < steps; ++k) {
        tau *= std::pow(10.0, uniform_sample(rng, std::log10(ratio_lo), std::log10(ratio_hi)));
        mesh.append(tau);
    }
    return mesh;
}

std::string KernelCheckReport::summary() const {
    std::ostringstream out;
    out << "kernel checks over " << samples << " random meshes (" << coefficients
        << " coefficients)\n"
        << "  L1+ closed form vs 2-D quadrature: max rel err " << max_rel_err_l1plus << "\n"
        << "  uniform L1 vs printed closed form: max rel err " << max_rel_err_l1_uniform << "\n"
        << "  smallest coefficient: " << min_coefficient << "\n"
        << "  L1 monotonicity: " << (monotonicity_ok ? "ok" : "VIOLATED") << "\n"
        << (pass ? "PASS" : "FAIL");
    return out.str();
}

KernelCheckReport run_kernel_checks(int samples, std::uint64_t seed, int max_steps,
                                    double tol_l1plus, double tol_l1_uniform) {
    std::mt19937_64 rng(seed);
    KernelCheckReport report;
    report.samples = samples;
    report.min_coefficient = std::numeric_limits<double>::infinity();
    const double alphas[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

    for (int s = 0; s < samples; ++s) {
        const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_steps));
        const double alpha = alphas[rng() % 9];
        const TimeMesh mesh = random_mesh(rng, n, 0.1, 10.0);

        const KernelRow plus = l1plus_row(mesh, n, alpha);
        const KernelRow l1 = l1_row(mesh, n, alpha);
        for (int k = 1; k <= n; ++k) {
            const double closed = plus.coeffs[k - 1];
            const double quad = l1plus_coeff_quadrature(mesh, n, k, alpha);
            const double rel = std::abs(closed - quad) / std::abs(quad);
            report.max_rel_err_l1plus = std::max(report.max_rel_err_l1plus, rel);
            report.min_coefficient = std::min(report.min_coefficient, closed);
            ++report.coefficients;
        }
        for (int k = 1; k + 1 <= n; ++k)
            if (l1.coeffs[k] < l1.coeffs[k - 1])
                report.monotonicity_ok = false;
        report.min_coefficient =
            std::min(report.min_coefficient, *std::min_element(l1.coeffs.begin(), l1.coeffs.end()));
    }

    // uniform rows against the printed closed form
    for (double alpha : alphas) {
        const double tau = 0.37;
        const TimeMesh mesh = TimeMesh::uniform(tau * 12, 12);
        for (int n = 1; n <= 12; ++n) {
            const KernelRow row = l1_row(mesh, n, alpha);
            for (int k = 1; k <= n; ++k) {
                const double ref = l1_coeff_uniform_reference(mesh.step(1), n, k, alpha);
                const double rel = std::abs(row.coeffs[k - 1] - ref) / std::abs(ref);
                report.max_rel_err_l1_uniform = std::max(report.max_rel_err_l1_uniform, rel);
            }
        }
    }

    report.pass = report.max_rel_err_l1plus <= tol_l1plus &&
                  report.max_rel_err_l1_uniform <= tol_l1_uniform &&
                  report.min_coefficient > 0.0 && report.monotonicity_ok;
    return report;
}

} // namespace tfch::verify
