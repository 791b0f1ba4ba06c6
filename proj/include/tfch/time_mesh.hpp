#pragma once

#include <vector>

namespace tfch {

/// Non-uniform time grid 0 = t_0 < t_1 < ... < t_N.
///
/// Step tau_n = t_n - t_{n-1} for n = 1..N (1-based step indexing).
/// Meshes are either prebuilt up to a target horizon T (uniform/graded)
/// or grown one step at a time by an adaptive driver via append().
class TimeMesh {
public:
    /// Single-point mesh {0}; grow with append().
    TimeMesh();

    /// Uniform grid t_k = k T / N.
    static TimeMesh uniform(double final_time, int steps);

    /// Graded grid t_k = T (k/N)^r, clustering points near t = 0.
    /// r = 1 reduces to the uniform grid; r < 1 is rejected.
    static TimeMesh graded(double final_time, int steps, double grading);

    /// Validates and adopts an explicit strictly increasing grid with times[0] = 0.
    static TimeMesh from_times(std::vector<double> times);

    /// Extend the mesh by one step of size dt > 0.
    void append(double dt);

    int step_count() const { return static_cast<int>(times_.size()) - 1; }
    double time(int k) const;
    double final_time() const { return times_.back(); }

    /// tau_n = t_n - t_{n-1}, 1 <= n <= step_count().
    double step(int n) const;

    /// Local step ratio rho_n = tau_n / tau_{n+1}; needs steps n and n+1.
    double step_ratio(int n) const;

    const std::vector<double>& times() const { return times_; }

private:
    std::vector<double> times_;
};

/// Parameters of the energy-slope time step controller.
struct AdaptiveParams {
    double dt_min = 1e-4;
    double dt_max = 1e-1;
    double beta = 1e7;      // slope sensitivity
    int warmup_steps = 100; // K: steps forced to dt_min

    void validate() const;
};

/// Next step size from the energy slope:
///   dt_{n+1} = dt_min                                           for n < K,
///   dt_{n+1} = max(dt_min, dt_max / sqrt(1 + beta |dE/dt_n|^2)) otherwise.
/// The result is always in [dt_min, dt_max].
double next_dt(double energy, double energy_prev, double dt_n, int n,
               const AdaptiveParams& params);

} // namespace tfch
