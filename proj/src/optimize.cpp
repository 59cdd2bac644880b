#include "gi/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace gi {

static const double kInf = std::numeric_limits<double>::infinity();

int worker_threads() {
    if (const char* env = std::getenv("GI_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

static double guarded(const Objective& f, const Vec& x) {
    try {
        const double v = f(x);
        return std::isnan(v) ? kInf : v;
    } catch (const std::exception&) {
        return kInf;
    }
}

static bool inside(const SearchBox& box, const Vec& x) {
    for (int d = 0; d < box.dims(); ++d)
        if (x(d) < box.bounds[d].first || x(d) > box.bounds[d].second) return false;
    return true;
}

// Standard Nelder-Mead with out-of-box points scored +inf.
static MinimizeResult nelder_mead(const Objective& f, const SearchBox& box,
                                  const Vec& start, const MinimizeSettings& st) {
    const int n = box.dims();
    auto eval = [&](const Vec& x) { return inside(box, x) ? guarded(f, x) : kInf; };

    std::vector<Vec> xs(n + 1, start);
    std::vector<double> fs(n + 1);
    long evals = 0;
    for (int d = 0; d < n; ++d) {
        const double width = box.bounds[d].second - box.bounds[d].first;
        double step = 0.05 * width;
        if (xs[d + 1](d) + step > box.bounds[d].second) step = -step;
        xs[d + 1](d) += step;
    }
    for (int i = 0; i <= n; ++i) {
        fs[i] = eval(xs[i]);
        ++evals;
    }

    auto order = [&] {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::vector<Vec> xs2(n + 1);
        std::vector<double> fs2(n + 1);
        for (int i = 0; i <= n; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs.swap(xs2);
        fs.swap(fs2);
    };

    while (evals < st.max_evals) {
        order();
        double diam = 0.0;
        for (int i = 1; i <= n; ++i) diam = std::max(diam, (xs[i] - xs[0]).norm());
        if (diam < st.simplex_tol) break;

        Vec centroid = Vec::Zero(n);
        for (int i = 0; i < n; ++i) centroid += xs[i];
        centroid /= n;

        const Vec xr = centroid + (centroid - xs[n]);
        const double fr = eval(xr);
        ++evals;
        if (fr < fs[0]) {
            const Vec xe = centroid + 2.0 * (centroid - xs[n]);
            const double fe = eval(xe);
            ++evals;
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            const bool outside_c = fr < fs[n];
            const Vec xc = centroid + 0.5 * ((outside_c ? xr : xs[n]) - centroid);
            const double fc = eval(xc);
            ++evals;
            if (fc < (outside_c ? fr : fs[n])) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
                    fs[i] = eval(xs[i]);
                    ++evals;
                }
            }
        }
    }
    order();
    return MinimizeResult{xs[0], fs[0], evals};
}

MinimizeResult minimize(const Objective& objective, const SearchBox& box,
                        const MinimizeSettings& settings) {
    return minimize(objective, box, settings, {});
}

MinimizeResult minimize(const Objective& objective, const SearchBox& box,
                        const MinimizeSettings& settings,
                        const std::vector<Vec>& extra_starts) {
    const int n = box.dims();
    if (n == 0) throw error("minimize: empty search box");
    const int g = std::max(2, settings.grid_points);

    long total = 1;
    for (int d = 0; d < n; ++d) total *= g;

    std::vector<double> values(total);
    auto point_at = [&](long index) {
        Vec x(n);
        long rest = index;
        for (int d = 0; d < n; ++d) {
            const int cell = static_cast<int>(rest % g);
            rest /= g;
            const auto [lo, hi] = box.bounds[d];
            x(d) = lo + (hi - lo) * cell / (g - 1);
        }
        return x;
    };

    const int workers = std::min<long>(worker_threads(), total);
    if (workers <= 1) {
        for (long i = 0; i < total; ++i) values[i] = guarded(objective, point_at(i));
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                long i;
                while ((i = next.fetch_add(1)) < total)
                    values[i] = guarded(objective, point_at(i));
            });
        for (auto& t : pool) t.join();
    }

    std::vector<long> ranked(total);
    for (long i = 0; i < total; ++i) ranked[i] = i;
    std::sort(ranked.begin(), ranked.end(),
              [&](long a, long b) { return values[a] < values[b]; });
    if (!std::isfinite(values[ranked[0]]))
        throw all_infeasible("minimize: every grid point is infeasible");

    MinimizeResult best;
    best.x = point_at(ranked[0]);
    best.value = values[ranked[0]];
    best.evals = total;

    std::vector<Vec> starts = extra_starts;
    for (int k = 0; k < settings.refine_starts && k < total; ++k)
        if (std::isfinite(values[ranked[k]])) starts.push_back(point_at(ranked[k]));

    for (const Vec& s : starts) {
        if (!inside(box, s)) continue;
        const MinimizeResult r = nelder_mead(objective, box, s, settings);
        best.evals += r.evals;
        if (r.value < best.value) {
            best.value = r.value;
            best.x = r.x;
        }
    }
    return best;
}

SweepResult sweep(const FamilyObjective& objective, const std::vector<double>& n_grid,
                  const SearchBox& box, const MinimizeSettings& settings) {
    SweepResult result;
    result.param_names = box.names;
    std::vector<double> grid = n_grid;
    std::sort(grid.begin(), grid.end());

    std::vector<Vec> warm;
    for (const double n_tot : grid) {
        SweepPoint pt;
        pt.n_tot = n_tot;
        try {
            const Objective f = [&](const Vec& x) { return objective(n_tot, x); };
            const MinimizeResult r = minimize(f, box, settings, warm);
            pt.value = r.value;
            pt.params = r.x;
            warm = {r.x};
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.error = e.what();
            pt.params = Vec::Zero(box.dims());
        }
        result.points.push_back(std::move(pt));
    }
    return result;
}

double scaling_exponent(const SweepResult& result, double n_lo, double n_hi) {
    std::vector<double> lx, ly;
    for (const SweepPoint& p : result.points) {
        if (!p.ok || p.n_tot < n_lo || p.n_tot > n_hi || p.value <= 0.0) continue;
        lx.push_back(std::log(p.n_tot));
        ly.push_back(std::log(p.value));
    }
    if (lx.size() < 5) throw error("scaling_exponent: fewer than 5 points in window");
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

std::vector<std::pair<double, double>> ratio_to_heisenberg(const SweepResult& result) {
    std::vector<std::pair<double, double>> out;
    out.reserve(result.points.size());
    for (const SweepPoint& p : result.points)
        out.emplace_back(p.n_tot, p.value * p.n_tot);
    return out;
}

} // namespace gi
