#pragma once

#include "axipot/config.hpp"

#include <json.hpp>

namespace axipot {

inline constexpr const char* kToolVersion = "axipot 0.1.0";

struct RunResult {
    int exit_code = 0;  // 0 pass, 1 verification failure, 3 solver non-convergence
    nlohmann::json summary;
};

/// verify: sample (or solve) the potential, recover the pressure, evaluate
/// every residual, gate the correct-equation norms against thresholds, emit
/// fields.csv + summary.json into out.dir (when set).
RunResult run_verify(const Config& cfg);

/// falsify: side-by-side correct vs axis-term-free phi-equation residuals
/// across grid levels, with the u+w surrogate diagnostics; emits
/// falsify.csv + summary.json.
RunResult run_falsify(const Config& cfg);

/// convergence: Dirichlet solves against the analytic potential across grid
/// levels; emits convergence.csv + summary.json.
RunResult run_convergence(const Config& cfg);

} // namespace axipot
