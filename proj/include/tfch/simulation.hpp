#pragma once

#include <vector>

#include "tfch/config.hpp"
#include "tfch/diagnostics.hpp"
#include "tfch/stepper.hpp"

namespace tfch {

Field make_initial_condition(const RunConfig& config);

struct RunResult {
    int exit_code = 0;
    std::vector<DiagnosticsRecord> records; // row 0 is the initial state
    Field final_field;
    std::string error;
};

/// Run one simulation to T. Writes metadata.txt, energy.csv, dt.csv and the
/// scheduled snapshots into config.out_dir. Adaptive runs retry failed steps
/// at halved dt down to dt_min; the exit code is nonzero on blowup or an
/// unrecoverable solve failure.
RunResult run_simulation(const RunConfig& config);

struct StudyResult {
    std::vector<double> dts;    // level step sizes, coarse to fine
    std::vector<double> errors; // error of level j against level j+1 at T
    std::vector<double> orders; // between consecutive errors
};

/// Temporal refinement study: levels+1 uniform-mesh runs at dt_0 / 2^j,
/// each level measured against the next finer one at T. Writes study.csv
/// into config.out_dir. Requires levels >= 3.
StudyResult run_convergence_study(const RunConfig& config, int levels);

} // namespace tfch
