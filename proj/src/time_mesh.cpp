#include "tfch/time_mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tfch {

TimeMesh::TimeMesh() : times_{0.0} {}

TimeMesh TimeMesh::uniform(double final_time, int steps) {
    if (!(final_time > 0.0))
        throw std::invalid_argument("uniform mesh: final time must be positive");
    if (steps < 1)
        throw std::invalid_argument("uniform mesh: need at least one step");
    TimeMesh mesh;
    mesh.times_.resize(steps + 1);
    for (int k = 0; k <= steps; ++k)
        mesh.times_[k] = final_time * k / steps;
    return mesh;
}

TimeMesh TimeMesh::graded(double final_time, int steps, double grading) {
    if (!(final_time > 0.0))
        throw std::invalid_argument("graded mesh: final time must be positive");
    if (steps < 1)
        throw std::invalid_argument("graded mesh: need at least one step");
    if (!(grading >= 1.0))
        throw std::invalid_argument("graded mesh: grading exponent must be >= 1");
    TimeMesh mesh;
    mesh.times_.resize(steps + 1);
    for (int k = 0; k <= steps; ++k)
        mesh.times_[k] = final_time * std::pow(static_cast<double>(k) / steps, grading);
    return mesh;
}

TimeMesh TimeMesh::from_times(std::vector<double> times) {
    if (times.empty() || times.front() != 0.0)
        throw std::invalid_argument("time mesh must start at t = 0");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1]))
            throw std::invalid_argument("time mesh must be strictly increasing");
        if (!std::isfinite(times[k]))
            throw std::invalid_argument("time mesh points must be finite");
    }
    TimeMesh mesh;
    mesh.times_ = std::move(times);
    return mesh;
}

void TimeMesh::append(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("append: step size must be positive");
    times_.push_back(times_.back() + dt);
}

double TimeMesh::time(int k) const {
    if (k < 0 || k >= static_cast<int>(times_.size()))
        throw std::invalid_argument("time index out of range");
    return times_[k];
}

double TimeMesh::step(int n) const {
    if (n < 1 || n > step_count())
        throw std::invalid_argument("step index out of range: " + std::to_string(n));
    return times_[n] - times_[n - 1];
}

double TimeMesh::step_ratio(int n) const {
    if (n < 1 || n + 1 > step_count())
        throw std::invalid_argument("step ratio needs steps n and n+1");
    return step(n) / step(n + 1);
}

void AdaptiveParams::validate() const {
    if (!(dt_min > 0.0) || !(dt_min <= dt_max))
        throw std::invalid_argument("adaptive params: need 0 < dt_min <= dt_max");
    if (beta < 0.0)
        throw std::invalid_argument("adaptive params: beta must be >= 0");
    if (warmup_steps < 0)
        throw std::invalid_argument("adaptive params: warmup_steps must be >= 0");
}

double next_dt(double energy, double energy_prev, double dt_n, int n,
               const AdaptiveParams& params) {
    params.validate();
    if (!(dt_n > 0.0))
        throw std::invalid_argument("next_dt: dt_n must be positive");
    if (n < params.warmup_steps)
        return params.dt_min;
    const double slope = (energy - energy_prev) / dt_n;
    const double dt = params.dt_max / std::sqrt(1.0 + params.beta * slope * slope);
    return std::max(params.dt_min, dt);
}

} // namespace tfch
