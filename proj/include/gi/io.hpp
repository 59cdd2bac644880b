#ifndef GI_IO_HPP
#define GI_IO_HPP

// Command-line front end and serialization: CSV/JSON/SVG sweep emission,
// argument parsing, and the verify suites.

#include <map>
#include <string>
#include <vector>

#include "gi/optimize.hpp"

namespace gi {

struct usage_error : error {
    using error::error;
};

struct NGridSpec {
    double lo = 1.0, hi = 100.0;
    int count = 20;
    bool log_scale = true;
    bool single = false; // --ntot given as one number

    std::vector<double> values() const;
    std::string str() const;
};

struct RunSpec {
    std::string command;                  // qfi | sensitivity | sweep | optimize | verify
    std::string config;                   // pp | pa | ap | aa | qfi-passive | qfi-active
    std::map<std::string, double> params; // explicit name=value assignments
    double eta = 1.0;
    NGridSpec ngrid;
    std::string format;                   // csv | json | svg (default from --out extension)
    std::string out;                      // empty: stdout
    std::uint64_t seed = 0;
    std::string suite = "all";            // verify only
};

// Throws usage_error naming the offending token.
RunSpec parse_args(const std::vector<std::string>& argv);

// Executes a parsed run request.  Returns 0 on success, 1 on numerical failure,
// 2 on usage errors (parse_args throws before this is reached).
int run(const RunSpec& spec);

// main() body: parse, run, map exceptions to exit codes.
int cli_main(int argc, char** argv);

// Search spaces and objectives backing `sweep`/`optimize`; frozen parameters
// (phi, delta, the stage OPA modulus) follow the per-configuration working
// points.  `stage_r` is the measurement OPA modulus for pa/aa.
SearchBox default_box(const std::string& config);
FamilyObjective objective_for(const std::string& config, double eta, double stage_r);

// True when larger objective values are better (the QFI configurations);
// sweep values are negated back to the physical sign by run_sweep.
bool is_maximization(const std::string& config);

SweepResult run_sweep(const RunSpec& spec);

std::string emit_csv(const SweepResult& result);
std::string emit_json(const SweepResult& result);
std::string emit_svg(const SweepResult& result);
SweepResult sweep_from_json(const std::string& text);

struct VerifyRow {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};
std::vector<VerifyRow> run_verify(const std::string& suite);

} // namespace gi

#endif
