#ifndef GI_OPTIMIZE_HPP
#define GI_OPTIMIZE_HPP

// Deterministic derivative-free minimization: coarse grid scan followed by
// Nelder-Mead refinement from the best grid cells.  Chosen because several
// objectives have singular ridges where gradients are useless.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gi/gaussian.hpp"

namespace gi {

struct SearchBox {
    std::vector<std::string> names;
    std::vector<std::pair<double, double>> bounds;

    void add(const std::string& name, double lo, double hi) {
        names.push_back(name);
        bounds.emplace_back(lo, hi);
    }
    int dims() const { return static_cast<int>(bounds.size()); }
};

struct MinimizeSettings {
    int grid_points = 17;       // per dimension
    int max_evals = 2000;       // per simplex refinement
    double simplex_tol = 1e-9;  // diameter convergence threshold
    int refine_starts = 3;      // best grid cells used as simplex seeds
    std::uint64_t seed = 0;     // recorded in metadata; the search is deterministic
};

struct MinimizeResult {
    Vec x;
    double value = 0.0;
    long evals = 0;
};

using Objective = std::function<double(const Vec&)>;

// Throws all_infeasible when every grid point evaluates to +inf.  Exceptions
// from the objective count as +inf.  Never returns worse than the grid best.
MinimizeResult minimize(const Objective& objective, const SearchBox& box,
                        const MinimizeSettings& settings = {});

// Same, with extra simplex seeds (used for warm starts across a sweep).
MinimizeResult minimize(const Objective& objective, const SearchBox& box,
                        const MinimizeSettings& settings,
                        const std::vector<Vec>& extra_starts);

struct SweepPoint {
    double n_tot = 0.0;
    double value = 0.0;
    Vec params;
    bool ok = true;
    std::string error;
};

struct SweepResult {
    std::vector<SweepPoint> points; // sorted by n_tot
    std::vector<std::string> param_names;
    std::map<std::string, std::string> meta;
};

using FamilyObjective = std::function<double(double n_tot, const Vec&)>;

// One minimize call per grid point, warm-started from the previous optimum.
// Per-point failures are recorded, not fatal.
SweepResult sweep(const FamilyObjective& objective, const std::vector<double>& n_grid,
                  const SearchBox& box, const MinimizeSettings& settings = {});

// Negated log-log least-squares slope of value vs n_tot over [n_lo, n_hi].
double scaling_exponent(const SweepResult& result, double n_lo, double n_hi);

// Per-point (n_tot, value * n_tot).
std::vector<std::pair<double, double>> ratio_to_heisenberg(const SweepResult& result);

// Number of concurrent objective evaluations: GI_THREADS if set, else the
// machine parallelism.
int worker_threads();

} // namespace gi

#endif
