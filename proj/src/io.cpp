#include "gi/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gi/detection.hpp"
#include "gi/interferometer.hpp"
#include "gi/qfi.hpp"

namespace gi {

static const double kPi = 3.14159265358979323846;
static const double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- grids ----

std::vector<double> NGridSpec::values() const {
    if (single) return {lo};
    std::vector<double> v;
    v.reserve(count);
    if (count == 1) {
        v.push_back(lo);
        return v;
    }
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        v.push_back(log_scale ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
    return v;
}

std::string NGridSpec::str() const {
    char buf[128];
    if (single) {
        std::snprintf(buf, sizeof buf, "%.17g", lo);
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g:%.17g:%d:%s", lo, hi, count,
                  log_scale ? "log" : "linear");
    return buf;
}

static NGridSpec parse_ngrid(const std::string& text) {
    NGridSpec g;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    try {
        if (parts.size() == 1) {
            g.single = true;
            g.lo = std::stod(parts[0]);
            return g;
        }
        if (parts.size() != 4) throw std::invalid_argument(text);
        g.lo = std::stod(parts[0]);
        g.hi = std::stod(parts[1]);
        g.count = std::stoi(parts[2]);
        if (parts[3] == "log")
            g.log_scale = true;
        else if (parts[3] == "linear")
            g.log_scale = false;
        else
            throw std::invalid_argument(parts[3]);
    } catch (const std::exception&) {
        throw usage_error("--ntot: expected a number or lo:hi:count:{log|linear}, got '" +
                          text + "'");
    }
    if (g.lo <= 0.0 || (!g.single && (g.hi < g.lo || g.count < 1)))
        throw usage_error("--ntot: invalid grid '" + text + "'");
    return g;
}

// ---------------------------------------------------------- arg parsing ----

namespace {
struct help_requested {};
} // namespace

RunSpec parse_args(const std::vector<std::string>& argv) {
    RunSpec spec;
    CLI::App app{"Gaussian two-mode interferometry: QFI, sensitivity, sweeps"};
    app.name("gaussint");
    app.require_subcommand(1);

    static const std::vector<std::string> kConfigs = {"pp", "pa", "ap", "aa",
                                                      "qfi-passive", "qfi-active"};
    std::string ntot_text;

    struct ParamOpt {
        const char* flag;
        const char* key;
        double value = 0.0;
        std::vector<CLI::Option*> opts; // one per subcommand carrying the flag
    };
    std::vector<ParamOpt> popts = {
        {"--alpha", "alpha"}, {"--gamma", "gamma"}, {"--xi", "xi"}, {"--r", "r"},
        {"--theta", "theta"}, {"--phi", "phi"},     {"--beta", "beta"},
        {"--beta-tot", "beta_tot"}, {"--delta", "delta"}, {"--r1", "r1"},
        {"--r2", "r2"},       {"--theta2", "theta2"},
    };

    auto add_common = [&](CLI::App* sub, bool with_params) {
        sub->add_option("--config", spec.config, "configuration label")
            ->check(CLI::IsMember(kConfigs));
        sub->add_option("--eta", spec.eta, "quantum efficiency")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--ntot", ntot_text, "photon budget: value or lo:hi:count:{log|linear}");
        sub->add_option("--out", spec.out, "output path (default stdout)");
        sub->add_option("--format", spec.format, "csv|json|svg")
            ->check(CLI::IsMember({"csv", "json", "svg"}));
        sub->add_option("--seed", spec.seed, "recorded in output metadata");
        if (with_params)
            for (auto& p : popts) p.opts.push_back(sub->add_option(p.flag, p.value));
    };

    CLI::App* c_qfi = app.add_subcommand("qfi", "closed-form QFI at a single point");
    CLI::App* c_sens = app.add_subcommand("sensitivity", "sensitivity at a single point");
    CLI::App* c_sweep = app.add_subcommand("sweep", "optimized curve over an n_tot grid");
    CLI::App* c_opt = app.add_subcommand("optimize", "optimize at a single n_tot");
    CLI::App* c_verify = app.add_subcommand("verify", "closed-form / pipeline identity suites");
    add_common(c_qfi, true);
    add_common(c_sens, true);
    add_common(c_sweep, true);
    add_common(c_opt, true);
    c_verify->add_option("--suite", spec.suite,
                         "all|qfi-closed|se-act|s1-pp|clbi2|s1-aa");

    std::vector<const char*> cargv = {"gaussint"};
    for (const std::string& a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help() << std::flush;
        throw help_requested{};
    } catch (const CLI::ParseError& e) {
        throw usage_error(e.what());
    }

    for (CLI::App* sub : {c_qfi, c_sens, c_sweep, c_opt, c_verify})
        if (sub->parsed()) spec.command = sub->get_name();
    for (const auto& p : popts)
        for (const CLI::Option* opt : p.opts)
            if (opt->count() > 0) spec.params[p.key] = p.value;
    if (!ntot_text.empty()) spec.ngrid = parse_ngrid(ntot_text);

    if (spec.command != "verify" && spec.config.empty())
        throw usage_error("--config is required for '" + spec.command + "'");
    if (spec.command == "qfi" && spec.config != "qfi-passive" && spec.config != "qfi-active")
        throw usage_error("qfi expects --config qfi-passive or qfi-active");
    if ((spec.command == "sensitivity" || spec.command == "optimize") && !spec.ngrid.single)
        throw usage_error(spec.command + " expects a single --ntot value");
    return spec;
}

// ------------------------------------------------- boxes and objectives ----

bool is_maximization(const std::string& config) {
    return config == "qfi-passive" || config == "qfi-active";
}

SearchBox default_box(const std::string& config) {
    SearchBox box;
    if (config == "pp") {
        box.add("beta_tot", 0.0, 1.0);
        box.add("beta", 0.0, 1.0);
    } else if (config == "pa") {
        box.add("beta", 0.0, 0.9999);
        box.add("theta", 0.0, 2.0 * kPi);
        box.add("phi", -kPi, kPi);
    } else if (config == "ap") {
        box.add("beta", 1e-4, 0.9999);
    } else if (config == "aa") {
        box.add("beta", 0.0, 1.0);
        box.add("theta", 0.0, 2.0 * kPi);
        box.add("phi", 0.0, 2.0 * kPi);
    } else if (config == "qfi-passive") {
        box.add("delta", 0.0, 1.0);
        box.add("beta_tot", 0.0, 1.0);
        box.add("beta", 0.0, 1.0);
        box.add("theta", 0.0, 2.0 * kPi);
    } else if (config == "qfi-active") {
        box.add("delta", 0.0, 1.0);
        box.add("beta", 0.0, 0.9999);
        box.add("theta", 0.0, 2.0 * kPi);
    } else {
        throw usage_error("unknown configuration '" + config + "'");
    }
    return box;
}

FamilyObjective objective_for(const std::string& config, double eta, double stage_r) {
    if (config == "pp") {
        // working point phi = pi/2, theta = 0, coherent light in the squeezed arm
        return [eta](double n, const Vec& x) {
            if (x(1) > x(0)) return kInf;
            const PassiveInputParams p{n, 1.0, x(0), x(1), 0.0};
            return sensitivity_of(make_pp(p, eta), kPi / 2.0, eta);
        };
    }
    if (config == "pa") {
        return [eta, stage_r](double n, const Vec& x) {
            const PassiveInputParams p{n, 1.0, x(0), x(0), x(1)};
            return sensitivity_of(make_pa(p, stage_r, eta), x(2), eta);
        };
    }
    if (config == "ap") {
        return [eta](double n, const Vec& x) { return s_eta_ap_closed(n, x(0), eta); };
    }
    if (config == "aa") {
        return [eta, stage_r](double n, const Vec& x) {
            const ActiveInputParams p{n, 0.5, x(0), x(1)};
            return sensitivity_of(make_aa(p, stage_r, eta), x(2), eta);
        };
    }
    if (config == "qfi-passive") {
        return [](double n, const Vec& x) {
            if (x(2) > x(1)) return kInf;
            const PassivePhysical ph =
                recover_physical_params(PassiveInputParams{n, x(0), x(1), x(2), x(3)});
            return -qfi_passive_closed(ph.alpha, ph.gamma, ph.xi, ph.r, ph.theta);
        };
    }
    if (config == "qfi-active") {
        return [](double n, const Vec& x) {
            const ActivePhysical ph =
                recover_physical_params(ActiveInputParams{n, x(0), x(1), x(2)});
            return -qfi_active_closed(ph.alpha, ph.gamma, ph.r, ph.theta);
        };
    }
    throw usage_error("unknown configuration '" + config + "'");
}

static double stage_modulus(const RunSpec& spec) {
    auto it = spec.params.find("r2");
    if (it != spec.params.end()) return it->second;
    it = spec.params.find("r1");
    if (it != spec.params.end()) return it->second;
    return 10.0; // large-gain regime
}

SweepResult run_sweep(const RunSpec& spec) {
    const SearchBox box = default_box(spec.config);
    MinimizeSettings settings;
    settings.seed = spec.seed;
    SweepResult result =
        sweep(objective_for(spec.config, spec.eta, stage_modulus(spec)),
              spec.ngrid.values(), box, settings);
    if (is_maximization(spec.config))
        for (SweepPoint& p : result.points) p.value = -p.value;

    char buf[64];
    result.meta["command"] = spec.command;
    result.meta["config"] = spec.config;
    std::snprintf(buf, sizeof buf, "%.17g", spec.eta);
    result.meta["eta"] = buf;
    result.meta["ntot"] = spec.ngrid.str();
    result.meta["seed"] = std::to_string(spec.seed);
    result.meta["objective"] = is_maximization(spec.config) ? "max" : "min";
    std::snprintf(buf, sizeof buf, "%d", settings.grid_points);
    result.meta["grid_points"] = buf;
    std::snprintf(buf, sizeof buf, "%d", settings.max_evals);
    result.meta["max_evals"] = buf;
    if (spec.config == "pa" || spec.config == "aa") {
        std::snprintf(buf, sizeof buf, "%.17g", stage_modulus(spec));
        result.meta["stage_r"] = buf;
    }
    for (const auto& [k, v] : spec.params) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        result.meta["param." + k] = buf;
    }
    return result;
}

// ------------------------------------------------------------- emission ----

static std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string emit_csv(const SweepResult& result) {
    std::string out;
    for (const auto& [k, v] : result.meta) out += "# " + k + ": " + v + "\n";
    out += "n_tot,value";
    for (const std::string& n : result.param_names) out += "," + n;
    out += "\n";
    for (const SweepPoint& p : result.points) {
        if (!p.ok) continue;
        out += num17(p.n_tot) + "," + num17(p.value);
        for (int d = 0; d < p.params.size(); ++d) out += "," + num17(p.params(d));
        out += "\n";
    }
    return out;
}

std::string emit_json(const SweepResult& result) {
    nlohmann::ordered_json j;
    j["meta"] = result.meta;
    j["meta"]["param_names"] = result.param_names;
    j["points"] = nlohmann::ordered_json::array();
    for (const SweepPoint& p : result.points) {
        nlohmann::ordered_json jp;
        jp["n_tot"] = p.n_tot;
        jp["value"] = p.value;
        std::vector<double> xs(p.params.data(), p.params.data() + p.params.size());
        jp["params"] = xs;
        jp["ok"] = p.ok;
        if (!p.ok) jp["error"] = p.error;
        j["points"].push_back(jp);
    }
    return j.dump(2) + "\n";
}

SweepResult sweep_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    SweepResult r;
    for (auto it = j.at("meta").begin(); it != j.at("meta").end(); ++it) {
        if (it.key() == "param_names") {
            r.param_names = it.value().get<std::vector<std::string>>();
        } else {
            r.meta[it.key()] = it.value().get<std::string>();
        }
    }
    for (const auto& jp : j.at("points")) {
        SweepPoint p;
        p.n_tot = jp.at("n_tot").get<double>();
        p.value = jp.at("value").get<double>();
        const auto xs = jp.at("params").get<std::vector<double>>();
        p.params = Eigen::Map<const Vec>(xs.data(), static_cast<long>(xs.size()));
        p.ok = jp.at("ok").get<bool>();
        if (jp.contains("error")) p.error = jp.at("error").get<std::string>();
        r.points.push_back(std::move(p));
    }
    return r;
}

std::string emit_svg(const SweepResult& result) {
    const double W = 640, H = 480, ml = 70, mr = 20, mt = 20, mb = 50;
    std::vector<std::pair<double, double>> data;
    for (const SweepPoint& p : result.points)
        if (p.ok && p.n_tot > 0 && p.value > 0) data.emplace_back(p.n_tot, p.value);

    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!data.empty()) {
        x0 = x1 = std::log10(data.front().first);
        y0 = y1 = std::log10(data.front().second);
        for (const auto& [n, v] : data) {
            x0 = std::min(x0, std::log10(n));
            x1 = std::max(x1, std::log10(n));
            y0 = std::min(y0, std::log10(v));
            y1 = std::max(y1, std::log10(v));
        }
        // keep the reference curves 1/sqrt(N) and 1/N in frame
        y0 = std::min(y0, -x1);
        y1 = std::max(y1, -0.5 * x0);
    }
    if (x1 - x0 < 1e-12) x1 = x0 + 1;
    if (y1 - y0 < 1e-12) y1 = y0 + 1;
    auto X = [&](double lx) { return ml + (lx - x0) / (x1 - x0) * (W - ml - mr); };
    auto Y = [&](double ly) { return H - mb - (ly - y0) / (y1 - y0) * (H - mt - mb); };

    auto polyline = [&](const std::vector<std::pair<double, double>>& pts,
                        const char* stroke, const char* dash) {
        std::string s = "  <polyline fill=\"none\" stroke=\"";
        s += stroke;
        s += "\"";
        if (dash[0]) s += std::string(" stroke-dasharray=\"") + dash + "\"";
        s += " points=\"";
        for (const auto& [n, v] : pts)
            s += num17(X(std::log10(n))) + "," + num17(Y(std::log10(v))) + " ";
        s += "\"/>\n";
        return s;
    };

    std::vector<std::pair<double, double>> shot, heis;
    for (const auto& [n, v] : data) {
        (void)v;
        shot.emplace_back(n, 1.0 / std::sqrt(n));
        heis.emplace_back(n, 1.0 / n);
    }
    if (data.empty()) {
        shot = {{1, 1}, {10, 1 / std::sqrt(10.0)}};
        heis = {{1, 1}, {10, 0.1}};
    }

    std::string desc;
    for (const auto& [k, v] : result.meta) desc += k + ": " + v + "; ";

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    svg += "  <desc>" + desc + "</desc>\n";
    svg += "  <rect x=\"" + num17(ml) + "\" y=\"" + num17(mt) + "\" width=\"" +
           num17(W - ml - mr) + "\" height=\"" + num17(H - mt - mb) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += polyline(data.empty() ? shot : data, "#1f6fd0", "");
    svg += polyline(shot, "#c03030", "6,4");
    svg += polyline(heis, "#209050", "2,3");
    svg += "  <text x=\"" + num17(W - mr - 100) + "\" y=\"" +
           num17(Y(std::log10(shot.back().second)) - 6) +
           "\" font-size=\"12\" fill=\"#c03030\">shot noise</text>\n";
    svg += "  <text x=\"" + num17(W - mr - 100) + "\" y=\"" +
           num17(Y(std::log10(heis.back().second)) - 6) +
           "\" font-size=\"12\" fill=\"#209050\">Heisenberg</text>\n";
    svg += "  <text x=\"" + num17(W / 2) + "\" y=\"" + num17(H - 12) +
           "\" font-size=\"13\">n_tot (log)</text>\n";
    svg += "</svg>\n";
    return svg;
}

// --------------------------------------------------------------- verify ----

static GaussianState random_passive_output(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double a = 1.2 * u01(rng), g = 1.2 * u01(rng);
    const double x = 0.8 * u01(rng), r = 0.8 * u01(rng);
    const double th = 2.0 * kPi * u01(rng);
    GaussianState s = tensor(displaced_squeezed(a, x),
                             displaced_squeezed(g, r * std::exp(cplx(0, -th))));
    return apply(beam_splitter(kPi / 4.0), s);
}

std::vector<VerifyRow> run_verify(const std::string& suite) {
    std::vector<VerifyRow> rows;
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const bool all = suite == "all";

    if (all || suite == "qfi-closed") {
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const double a = 2.0 * u01(rng), g = 2.0 * u01(rng);
            const double x = 1.2 * u01(rng), r = 1.2 * u01(rng);
            const double th = 2.0 * kPi * u01(rng);
            {
                auto fam = [&](double phi) {
                    GaussianState s = tensor(displaced_squeezed(a, x),
                                             displaced_squeezed(g, r * std::exp(cplx(0, -th))));
                    s = apply(beam_splitter(kPi / 4.0), s);
                    return apply(phase_shift(phi), s);
                };
                const GaussianState s0 = fam(0.0);
                const double Hn = qfi(s0, phase_family_derivative(fam, 0.0));
                const double Hc = qfi_passive_closed(a, g, x, r, th);
                worst = std::max(worst, std::abs(Hn - Hc) / std::max(1.0, std::abs(Hc)));
            }
            {
                auto fam = [&](double phi) {
                    GaussianState s = tensor(displaced_squeezed(a, 0.0),
                                             displaced_squeezed(g, 0.0));
                    s = apply(two_mode_squeezer(r * std::exp(cplx(0, -th))), s);
                    return apply(phase_shift(phi), s);
                };
                const GaussianState s0 = fam(0.0);
                const double Hn = qfi(s0, phase_family_derivative(fam, 0.0));
                const double Hc = qfi_active_closed(a, g, r, th);
                worst = std::max(worst, std::abs(Hn - Hc) / std::max(1.0, std::abs(Hc)));
            }
        }
        rows.push_back({"qfi-closed", worst, 1e-6, worst < 1e-6});
    }

    if (all || suite == "se-act") {
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const GaussianState pre = random_passive_output(rng);
            const double r2 = 3.0 * u01(rng);
            const double eta = 0.2 + 0.8 * u01(rng);
            const double phi = 0.3 + 0.9 * u01(rng);
            auto stats = [&](double e, double ph) {
                const GaussianState s = apply(phase_shift(ph), pre);
                return sum_current_after_opa(number_moments(s), r2, e);
            };
            // The mean photocurrent is linear in the detector efficiency, so the
            // slope at efficiency eta is exactly eta times the ideal slope; sharing
            // one finite-difference estimate keeps the identity free of FD noise.
            auto mean1 = [&](double ph) { return stats(1.0, ph).mean; };
            const double h = 1e-4;
            const double der =
                (4.0 * (mean1(phi + h / 2) - mean1(phi - h / 2)) / h -
                 (mean1(phi + h) - mean1(phi - h)) / (2.0 * h)) / 3.0;
            const double s_eta = std::sqrt(stats(eta, phi).variance) / (eta * std::abs(der));
            const double s_one = std::sqrt(stats(1.0, phi).variance) / std::abs(der);
            const GaussianState at = apply(phase_shift(phi), pre);
            const double fac = loss_compensation_factor(number_moments(at), r2, eta);
            worst = std::max(worst, std::abs(s_eta - s_one * fac));
        }
        rows.push_back({"se-act", worst, 1e-10, worst < 1e-10});
    }

    if (all || suite == "s1-pp") {
        double worst = 0.0;
        for (int k = 0; k < 40; ++k) {
            const double n = 0.5 + 50.0 * u01(rng);
            const double btot = u01(rng);
            double b = btot * u01(rng);
            if (std::abs(b - 0.5) < 1e-3) b += 2e-3;
            const double closed = s1_pp_closed(n, btot, b);
            const double numeric = sensitivity_of(
                make_pp(PassiveInputParams{n, 1.0, btot, b, 0.0}, 1.0), kPi / 2.0, 1.0);
            worst = std::max(worst, std::abs(closed - numeric) / closed);
        }
        rows.push_back({"s1-pp", worst, 1e-6, worst < 1e-6});
    }

    if (all || suite == "clbi2") {
        double worst = 0.0;
        for (int k = 0; k < 40; ++k) {
            const double n = 0.5 + 50.0 * u01(rng);
            const double b = 0.05 + 0.9 * u01(rng);
            const double eta = 0.2 + 0.8 * u01(rng);
            const double closed = s_eta_ap_closed(n, b, eta);
            const double numeric = sensitivity_of(
                make_ap(ActiveInputParams{n, 0.5, b, kPi}, eta), kPi / 2.0, eta);
            worst = std::max(worst, std::abs(closed - numeric) / closed);
        }
        rows.push_back({"clbi2", worst, 1e-6, worst < 1e-6});
    }

    if (all || suite == "s1-aa") {
        double worst = 0.0;
        for (int k = 0; k < 40; ++k) {
            const double n = 0.5 + 20.0 * u01(rng);
            const double th1 = 2.0 * kPi * u01(rng);
            const double phi = -th1 + 0.4 + 2.2 * u01(rng); // keep away from the cosecant poles
            const double closed = s1_aa_closed(n, th1 + phi);
            const double numeric = sensitivity_of(
                make_aa(ActiveInputParams{n, 0.5, 1.0, th1}, 9.0, 1.0), phi, 1.0);
            worst = std::max(worst, std::abs(closed - numeric) / closed);
        }
        rows.push_back({"s1-aa", worst, 1e-6, worst < 1e-6});
    }

    if (rows.empty()) throw usage_error("verify: unknown suite '" + suite + "'");
    return rows;
}

// ------------------------------------------------------------------ run ----

static double param_or(const RunSpec& spec, const char* key, double fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

static int write_output(const RunSpec& spec, const SweepResult& result) {
    std::string format = spec.format;
    if (format.empty()) {
        const auto dot = spec.out.rfind('.');
        const std::string ext = dot == std::string::npos ? "" : spec.out.substr(dot + 1);
        format = (ext == "json" || ext == "svg") ? ext : "csv";
    }
    std::string payload;
    if (format == "csv")
        payload = emit_csv(result);
    else if (format == "json")
        payload = emit_json(result);
    else
        payload = emit_svg(result);

    if (spec.out.empty()) {
        std::cout << payload << std::flush;
    } else {
        std::ofstream f(spec.out, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write '" << spec.out << "'\n";
            return 1;
        }
        f << payload;
    }
    for (const SweepPoint& p : result.points)
        if (!p.ok) {
            std::cerr << "point n_tot=" << num17(p.n_tot) << " failed: " << p.error << "\n";
            return 1;
        }
    return 0;
}

int run(const RunSpec& spec) {
    if (spec.command == "qfi") {
        double H;
        if (spec.config == "qfi-passive")
            H = qfi_passive_closed(param_or(spec, "alpha", 0), param_or(spec, "gamma", 0),
                                   param_or(spec, "xi", 0), param_or(spec, "r", 0),
                                   param_or(spec, "theta", 0));
        else
            H = qfi_active_closed(param_or(spec, "alpha", 0), param_or(spec, "gamma", 0),
                                  param_or(spec, "r", 0), param_or(spec, "theta", 0));
        std::cout << num17(H) << "\n";
        return 0;
    }

    if (spec.command == "sensitivity") {
        const double n = spec.ngrid.lo;
        const double phi = param_or(spec, "phi", kPi / 2.0);
        Configuration config;
        if (spec.config == "pp") {
            config = make_pp(PassiveInputParams{n, param_or(spec, "delta", 1.0),
                                                param_or(spec, "beta_tot", param_or(spec, "beta", 0)),
                                                param_or(spec, "beta", 0),
                                                param_or(spec, "theta", 0)},
                             spec.eta);
        } else if (spec.config == "pa") {
            config = make_pa(PassiveInputParams{n, param_or(spec, "delta", 1.0), 0,
                                                param_or(spec, "beta", 0),
                                                param_or(spec, "theta", 0)},
                             stage_modulus(spec), spec.eta);
        } else if (spec.config == "ap") {
            config = make_ap(ActiveInputParams{n, param_or(spec, "delta", 0.5),
                                               param_or(spec, "beta", 0),
                                               param_or(spec, "theta", kPi)},
                             spec.eta);
        } else if (spec.config == "aa") {
            config = make_aa(ActiveInputParams{n, param_or(spec, "delta", 0.5),
                                               param_or(spec, "beta", 1.0),
                                               param_or(spec, "theta", 0)},
                             stage_modulus(spec), spec.eta);
        } else {
            throw usage_error("sensitivity expects --config pp|pa|ap|aa");
        }
        std::cout << num17(sensitivity_of(config, phi, spec.eta)) << "\n";
        return 0;
    }

    if (spec.command == "optimize" || spec.command == "sweep") {
        RunSpec effective = spec;
        if (spec.command == "optimize") effective.command = "optimize";
        const SweepResult result = run_sweep(effective);
        if (spec.command == "optimize" && spec.out.empty()) {
            const SweepPoint& p = result.points.front();
            if (!p.ok) {
                std::cerr << "optimization failed: " << p.error << "\n";
                return 1;
            }
            std::cout << "value " << num17(p.value) << "\n";
            for (size_t d = 0; d < result.param_names.size(); ++d)
                std::cout << result.param_names[d] << " " << num17(p.params(d)) << "\n";
            return 0;
        }
        return write_output(spec, result);
    }

    if (spec.command == "verify") {
        const std::vector<VerifyRow> rows = run_verify(spec.suite);
        bool ok = true;
        std::printf("%-12s %-13s %-10s %s\n", "suite", "max-residual", "tolerance", "status");
        for (const VerifyRow& r : rows) {
            std::printf("%-12s %-13.3e %-10.0e %s\n", r.name.c_str(), r.residual,
                        r.tolerance, r.pass ? "PASS" : "FAIL");
            ok = ok && r.pass;
        }
        return ok ? 0 : 1;
    }

    throw usage_error("unknown command '" + spec.command + "'");
}

int cli_main(int argc, char** argv) {
    RunSpec spec;
    try {
        spec = parse_args(std::vector<std::string>(argv + 1, argv + argc));
    } catch (const help_requested&) {
        return 0;
    } catch (const usage_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    try {
        return run(spec);
    } catch (const usage_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}

} // namespace gi
