#include "tfch/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "tfch/initial_conditions.hpp"
#include "tfch/snapshot_io.hpp"

namespace tfch {

Field make_initial_condition(const RunConfig& config) {
    switch (config.ic) {
    case InitialProfile::star:
        return ic_star(config.grid, config.physics.epsilon, config.ic_x0, config.ic_y0);
    case InitialProfile::random:
        return ic_uniform_random(config.grid, config.ic_mean, config.ic_amplitude, config.seed);
    case InitialProfile::wedge:
        return ic_wedge(config.grid, config.seed);
    case InitialProfile::thinfilm:
        return ic_thinfilm(config.grid, config.ic_r0, config.seed);
    case InitialProfile::constant:
        return Field(config.grid, config.ic_value);
    }
    throw std::logic_error("unhandled initial profile");
}

namespace {

DiagnosticsRecord make_record(const SolverState& state, const RunConfig& config, double dt) {
    DiagnosticsRecord rec;
    rec.n = state.step_index();
    rec.t = state.time();
    rec.dt = dt;
    rec.energy = free_energy(state.current(), config.physics.epsilon);
    rec.mass = integral(state.current());
    rec.mass_drift = std::abs(rec.mass - state.initial_mass());
    rec.picard_iters = state.last_picard_iters();
    return rec;
}

class RunWriter {
public:
    RunWriter(const RunConfig& config) : config_(config) {
        std::filesystem::create_directories(config.out_dir);
        dir_ = config.out_dir;

        std::ofstream meta(dir_ / "metadata.txt");
        meta << config.serialize();

        energy_.open(dir_ / "energy.csv");
        energy_ << "n,t,dt,energy,mass,mass_drift,picard_iters\n";
        energy_.precision(17);
        dt_log_.open(dir_ / "dt.csv");
        dt_log_ << "n,t,dt\n";
        dt_log_.precision(17);
        if (!meta || !energy_ || !dt_log_)
            throw std::runtime_error("cannot write run outputs under " + dir_.string());

        schedule_ = config.snapshot_times;
        std::sort(schedule_.begin(), schedule_.end());
    }

    void record(const SolverState& state, const DiagnosticsRecord& rec) {
        energy_ << rec.n << ',' << rec.t << ',' << rec.dt << ',' << rec.energy << ',' << rec.mass
                << ',' << rec.mass_drift << ',' << rec.picard_iters << '\n';
        if (rec.n > 0)
            dt_log_ << rec.n << ',' << rec.t << ',' << rec.dt << '\n';
        // emit every scheduled snapshot this step has reached
        while (next_snapshot_ < schedule_.size() &&
               rec.t >= schedule_[next_snapshot_] - 1e-15) {
            char name[64];
            std::snprintf(name, sizeof(name), "snapshot_%03zu.bin", next_snapshot_);
            write_snapshot(state.current(), {rec.t, config_.physics.alpha, config_.seed},
                           dir_ / name);
            ++next_snapshot_;
        }
    }

    void close() {
        if (next_snapshot_ < schedule_.size())
            std::cerr << "warning: " << schedule_.size() - next_snapshot_
                      << " snapshot target(s) beyond the reached horizon\n";
        energy_.close();
        dt_log_.close();
    }

private:
    const RunConfig& config_;
    std::filesystem::path dir_;
    std::ofstream energy_;
    std::ofstream dt_log_;
    std::vector<double> schedule_;
    std::size_t next_snapshot_ = 0;
};

} // namespace

RunResult run_simulation(const RunConfig& config) {
    config.validate();
    RunResult result;
    RunWriter writer(config);

    SolverState state(make_initial_condition(config), config.physics, config.variant,
                      config.solve);
    DiagnosticsRecord rec = make_record(state, config, 0.0);
    result.records.push_back(rec);
    writer.record(state, rec);

    try {
        if (config.mode != MeshMode::adaptive) {
            const TimeMesh mesh = config.mode == MeshMode::uniform
                                      ? TimeMesh::uniform(config.final_time, config.steps)
                                      : TimeMesh::graded(config.final_time, config.steps,
                                                         config.grading);
            for (int n = 1; n <= mesh.step_count(); ++n) {
                state.advance(mesh.step(n));
                rec = make_record(state, config, mesh.step(n));
                result.records.push_back(rec);
                writer.record(state, rec);
            }
        } else {
            const AdaptiveParams& ap = config.adaptive;
            const double T = config.final_time;
            double dt_accepted = ap.dt_min;
            while (T - state.time() > 1e-12 * T) {
                const int n = state.step_index();
                double dt = n == 0 ? ap.dt_min
                                   : next_dt(result.records[n].energy,
                                             result.records[n - 1].energy, dt_accepted, n, ap);
                if (config.variant == ExtrapolationVariant::ratio_corrected && n > 0)
                    dt = std::min(dt, 2.0 * dt_accepted); // keep rho_{n-1} >= 0.5
                dt = std::min(dt, T - state.time());      // land exactly on T

                for (;;) {
                    try {
                        state.advance(dt);
                        break;
                    } catch (const StepFailure& e) {
                        if (dt <= ap.dt_min)
                            throw StepFailure(std::string(e.what()) + " at dt_min");
                        dt = std::max(ap.dt_min, 0.5 * dt);
                    }
                }
                dt_accepted = dt;
                rec = make_record(state, config, dt);
                result.records.push_back(rec);
                writer.record(state, rec);
            }
        }
    } catch (const std::exception& e) {
        writer.close();
        result.exit_code = 1;
        result.error = e.what();
        result.final_field = state.current();
        std::cerr << "run aborted at t = " << state.time() << ": " << e.what() << "\n";
        return result;
    }

    writer.close();
    result.final_field = state.current();
    return result;
}

StudyResult run_convergence_study(const RunConfig& config, int levels) {
    config.validate();
    if (levels < 3)
        throw std::invalid_argument("convergence study needs at least 3 levels");
    if (config.mode != MeshMode::uniform)
        throw std::invalid_argument("convergence study requires a uniform base mesh");

    const Field initial = make_initial_condition(config);
    StudyResult result;
    std::vector<Field> finals;
    for (int j = 0; j <= levels; ++j) {
        const int steps = config.steps << j;
        const TimeMesh mesh = TimeMesh::uniform(config.final_time, steps);
        SolverState state(initial, config.physics, config.variant, config.solve);
        for (int n = 1; n <= steps; ++n)
            state.advance(mesh.step(n));
        finals.push_back(state.current());
        result.dts.push_back(config.final_time / steps);
    }
    for (int j = 0; j < levels; ++j)
        result.errors.push_back(l2_error(finals[j], finals[j + 1]));
    result.orders = estimate_orders(result.errors, 2.0);

    std::filesystem::create_directories(config.out_dir);
    std::ofstream csv(std::filesystem::path(config.out_dir) / "study.csv");
    csv.precision(17);
    csv << "dt,error,order\n";
    for (std::size_t j = 0; j < result.errors.size(); ++j) {
        csv << result.dts[j] << ',' << result.errors[j] << ',';
        if (j > 0)
            csv << result.orders[j - 1];
        csv << '\n';
    }
    return result;
}

} // namespace tfch
