#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sp2spec/wigner.hpp"

namespace sp2spec {

enum class OutputFormat { csv, json };

// One parsed invocation. The first block mirrors the global flags; the rest
// is per-subcommand state with documented defaults (each subcommand reads
// only its own slice).
struct RunConfig {
    std::string subcommand;
    std::uint64_t seed = 1;
    Half lmax = Half::from_int(10);
    double tol = 1e-3;
    bool tol_given = false;  // the certified-width gate only arms when set
    std::string output;      // empty: standard output
    OutputFormat format = OutputFormat::csv;

    // schatten / holder-fit
    std::string kind = "S";
    double q = 12.0;
    double theta1 = 0.0;
    double theta2 = 1.5707963267948966;

    // kak
    std::vector<double> matrix;  // 16 row-major entries, or empty
    bool random_input = false;

    // quasi
    int defect_sweep = 0;
    int eta_sweep = 0;

    // envelope
    double s1 = 0.25;
    double s2 = 0.125;
    double s = 0.0;
    double kappa = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    bool sweep = false;
    double sweep_max = 5.0;
    int sweep_steps = 20;

    // ridge
    double ridge_max = 50.0;
    double ridge_step = 0.5;
};

// Runs one configured subcommand, writing the full report (provenance
// header, data rows, summary lines) to `out`. Returns 0 on success and 1
// when a verified bound is violated; input problems surface as domain
// errors for the caller to map.
int run(const RunConfig& config, std::ostream& out);

// Parses argv, dispatches run(), and maps failures onto the exit contract:
// 0 success, 1 violated bound, 2 input error (unknown subcommand, malformed
// matrix input, unreachable tolerance, ... each with its own message on
// `err`). The report goes to `out` or to --output <file>.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace sp2spec
