#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tfch/simulation.hpp"
#include "tfch/snapshot_io.hpp"

using namespace tfch;
namespace fs = std::filesystem;

namespace {

RunConfig small_run(const fs::path& out) {
    RunConfig cfg;
    cfg.physics = {0.5, 0.1, 0.05};
    cfg.grid = {32, 32, 1.0, 1.0};
    cfg.mode = MeshMode::uniform;
    cfg.final_time = 5e-3;
    cfg.steps = 10;
    cfg.ic = InitialProfile::random;
    cfg.ic_mean = 0.0;
    cfg.ic_amplitude = 1e-3;
    cfg.seed = 2024;
    cfg.out_dir = out.string();
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("constant initial field stays put through the driver") {
    const fs::path dir = fs::temp_directory_path() / "tfch_sim_const";
    RunConfig cfg = small_run(dir);
    cfg.ic = InitialProfile::constant;
    cfg.ic_value = 0.3;
    cfg.snapshot_times = {0.0, 2.5e-3, 5e-3};

    const RunResult result = run_simulation(cfg);
    CHECK(result.exit_code == 0);
    REQUIRE(result.records.size() == 11);
    for (const auto& rec : result.records) {
        CHECK(rec.energy == doctest::Approx(result.records[0].energy).epsilon(1e-12));
        CHECK(rec.mass_drift <= 1e-13);
    }
    for (int s = 0; s < 3; ++s) {
        const auto snap = read_snapshot(dir / ("snapshot_00" + std::to_string(s) + ".bin"));
        for (double v : snap.field.values())
            CHECK(v == doctest::Approx(0.3).epsilon(1e-12));
    }
    fs::remove_all(dir);
}

TEST_CASE("energy log format and determinism") {
    const fs::path dir_a = fs::temp_directory_path() / "tfch_sim_a";
    const fs::path dir_b = fs::temp_directory_path() / "tfch_sim_b";
    RunConfig cfg = small_run(dir_a);

    const RunResult first = run_simulation(cfg);
    CHECK(first.exit_code == 0);

    const std::string log = slurp(dir_a / "energy.csv");
    CHECK(log.rfind("n,t,dt,energy,mass,mass_drift,picard_iters\n", 0) == 0);

    cfg.out_dir = dir_b.string();
    const RunResult second = run_simulation(cfg);
    REQUIRE(second.records.size() == first.records.size());
    for (std::size_t i = 0; i < first.records.size(); ++i)
        CHECK(second.records[i].energy ==
              doctest::Approx(first.records[i].energy).epsilon(1e-13));
    CHECK(second.final_field.values() == first.final_field.values());

    const std::string meta = slurp(dir_a / "metadata.txt");
    CHECK(meta.find("seed = 2024") != std::string::npos);
    CHECK(meta.find("alpha = 0.5") != std::string::npos);

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("adaptive run honors the controller bounds") {
    const fs::path dir = fs::temp_directory_path() / "tfch_sim_adaptive";
    RunConfig cfg = small_run(dir);
    cfg.mode = MeshMode::adaptive;
    cfg.final_time = 0.02;
    cfg.adaptive = {1e-3, 1e-2, 1e7, 5};
    cfg.solve.damping = 0.5;

    const RunResult result = run_simulation(cfg);
    CHECK(result.exit_code == 0);
    const auto& recs = result.records;
    REQUIRE(recs.size() > 6);
    for (std::size_t i = 1; i + 1 < recs.size(); ++i) { // final step may be truncated
        CHECK(recs[i].dt >= cfg.adaptive.dt_min - 1e-15);
        CHECK(recs[i].dt <= cfg.adaptive.dt_max + 1e-15);
    }
    for (int i = 1; i <= 5 && i < static_cast<int>(recs.size()); ++i)
        CHECK(recs[i].dt == doctest::Approx(cfg.adaptive.dt_min));
    CHECK(recs.back().t == doctest::Approx(cfg.final_time).epsilon(1e-12));
    for (const auto& rec : recs)
        CHECK(rec.mass_drift <= 1e-12 * cfg.grid.area());
    fs::remove_all(dir);
}

TEST_CASE("graded-mesh run reaches T") {
    const fs::path dir = fs::temp_directory_path() / "tfch_sim_graded";
    RunConfig cfg = small_run(dir);
    cfg.mode = MeshMode::graded;
    cfg.grading = 2.0;
    cfg.steps = 12;

    const RunResult result = run_simulation(cfg);
    CHECK(result.exit_code == 0);
    CHECK(result.records.back().t == doctest::Approx(cfg.final_time).epsilon(1e-12));
    CHECK(result.records.back().n == 12);
    fs::remove_all(dir);
}

TEST_CASE("convergence study wiring on a sandbox problem") {
    const fs::path dir = fs::temp_directory_path() / "tfch_sim_study";
    RunConfig cfg = small_run(dir);
    cfg.ic = InitialProfile::star;
    cfg.physics = {0.5, 1e-4, 0.01};
    cfg.grid = {32, 32, 1.0, 1.0};
    cfg.final_time = 4e-3;
    cfg.steps = 4;

    const StudyResult study = run_convergence_study(cfg, 3);
    REQUIRE(study.dts.size() == 4);
    REQUIRE(study.errors.size() == 3);
    REQUIRE(study.orders.size() == 2);
    for (double e : study.errors)
        CHECK(e > 0.0);
    // halving the step shrinks the error
    CHECK(study.errors[1] < study.errors[0]);
    CHECK(study.errors[2] < study.errors[1]);

    const std::string csv = slurp(dir / "study.csv");
    CHECK(csv.rfind("dt,error,order\n", 0) == 0);
    CHECK_THROWS_AS(run_convergence_study(cfg, 2), std::invalid_argument);
    fs::remove_all(dir);
}
