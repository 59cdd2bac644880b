#include "gi/interferometer.hpp"

#include <cmath>

namespace gi {

static const double kPi = 3.14159265358979323846;

PassivePhysical recover_physical_params(const PassiveInputParams& p) {
    if (p.n_tot < 0.0) throw infeasible_params("passive params: n_tot < 0");
    if (p.delta < 0.0 || p.delta > 1.0) throw infeasible_params("passive params: delta out of [0,1]");
    if (p.beta < 0.0 || p.beta_tot > 1.0 || p.beta > p.beta_tot + 1e-15)
        throw infeasible_params("passive params: need 0 <= beta <= beta_tot <= 1");
    PassivePhysical out;
    const double coh = (1.0 - p.beta_tot) * p.n_tot;
    out.alpha = std::sqrt(p.delta * coh);
    out.gamma = std::sqrt((1.0 - p.delta) * coh);
    out.xi = std::asinh(std::sqrt(std::max(0.0, (p.beta_tot - p.beta) * p.n_tot)));
    out.r = std::asinh(std::sqrt(p.beta * p.n_tot));
    out.theta = p.theta;
    return out;
}

ActivePhysical recover_physical_params(const ActiveInputParams& p) {
    if (p.n_tot < 0.0) throw infeasible_params("active params: n_tot < 0");
    if (p.delta < 0.0 || p.delta > 1.0) throw infeasible_params("active params: delta out of [0,1]");
    if (p.beta < 0.0 || p.beta > 1.0) throw infeasible_params("active params: beta out of [0,1]");
    ActivePhysical out;
    out.r = std::asinh(std::sqrt(p.beta * p.n_tot / 2.0));
    out.theta = p.theta;
    const double c2r = std::cosh(2.0 * out.r), s2r = std::sinh(2.0 * out.r);
    const double den = c2r + 2.0 * std::sqrt(p.delta * (1.0 - p.delta)) * std::cos(p.theta) * s2r;
    double P = (p.n_tot + 1.0 - c2r) / den;
    if (P < -1e-12)
        throw infeasible_params("active params: coherent budget negative");
    if (P < 0.0) P = 0.0;
    out.alpha = std::sqrt(p.delta * P);
    out.gamma = std::sqrt((1.0 - p.delta) * P);
    return out;
}

Configuration make_pp(const PassiveInputParams& in, double eta) {
    Configuration c;
    c.kind = ConfigKind::pp;
    c.passive = in;
    c.stage.kind = StageKind::passive;
    c.stage.detectors.eta = eta;
    return c;
}

Configuration make_pa(const PassiveInputParams& in, double r2, double eta) {
    Configuration c;
    c.kind = ConfigKind::pa;
    c.passive = in;
    c.passive.beta_tot = in.beta; // single squeezed input, on arm a
    c.stage.kind = StageKind::active;
    c.stage.r2 = r2;
    c.stage.detectors.eta = eta;
    return c;
}

Configuration make_ap(const ActiveInputParams& in, double eta) {
    Configuration c;
    c.kind = ConfigKind::ap;
    c.active = in;
    c.stage.kind = StageKind::passive;
    c.stage.detectors.eta = eta;
    return c;
}

Configuration make_aa(const ActiveInputParams& in, double r2, double eta) {
    Configuration c;
    c.kind = ConfigKind::aa;
    c.active = in;
    c.stage.kind = StageKind::active;
    c.stage.r2 = r2;
    c.stage.detectors.eta = eta;
    return c;
}

GaussianState build_pre_phase_state(const Configuration& config) {
    const cplx i1(0.0, 1.0);
    switch (config.kind) {
        case ConfigKind::pp: {
            const PassivePhysical ph = recover_physical_params(config.passive);
            GaussianState s = tensor(displaced_squeezed(ph.alpha, ph.xi),
                                     displaced_squeezed(ph.gamma, ph.r * std::exp(-i1 * ph.theta)));
            return apply(beam_splitter(kPi / 4.0), s);
        }
        case ConfigKind::pa: {
            // squeezing only on arm a, carrying the phase theta
            const PassiveInputParams& p = config.passive;
            const double coh = (1.0 - p.beta) * p.n_tot;
            const double x = std::asinh(std::sqrt(p.beta * p.n_tot));
            GaussianState s = tensor(
                displaced_squeezed(std::sqrt(p.delta * coh), x * std::exp(-i1 * p.theta)),
                displaced_squeezed(std::sqrt((1.0 - p.delta) * coh), 0.0));
            return apply(beam_splitter(kPi / 4.0), s);
        }
        case ConfigKind::ap:
        case ConfigKind::aa: {
            const ActivePhysical ph = recover_physical_params(config.active);
            GaussianState s = tensor(displaced_squeezed(ph.alpha, 0.0),
                                     displaced_squeezed(ph.gamma, 0.0));
            return apply(two_mode_squeezer(ph.r * std::exp(-i1 * ph.theta)), s);
        }
    }
    throw error("build_pre_phase_state: unreachable");
}

GaussianState build_output_state(const Configuration& config, double phi) {
    const cplx i1(0.0, 1.0);
    GaussianState s = apply(phase_shift(phi), build_pre_phase_state(config));
    if (config.stage.kind == StageKind::passive)
        return apply(beam_splitter(kPi / 4.0 * std::exp(i1 * config.stage.bs_phase)), s);
    return apply(two_mode_squeezer(config.stage.r2 * std::exp(-i1 * config.stage.theta2)), s);
}

double sensitivity_of(const Configuration& config, double phi, double eta) {
    const bool diff = config.stage.kind == StageKind::passive;
    auto stats = [&](double ph) {
        const GaussianState out = build_output_state(config, ph);
        return diff ? difference_current(out, eta) : sum_current(out, eta);
    };
    return sensitivity(stats, phi);
}

static double s1_pp_core(double n, double btot, double b) {
    const double t1 = 4.0 * (1.0 - b) * b * n * n;
    const double t2 = 4.0 * std::sqrt(b * n) * std::sqrt(b * n + 1.0) *
                      ((btot - 1.0) * n -
                       std::sqrt(n * (btot - b)) * std::sqrt(n * (btot - b) + 1.0));
    const double t3 = 2.0 * n;
    return std::sqrt(t1 + t2 + t3) / (std::sqrt(2.0) * std::abs(n - 2.0 * n * b));
}

double s1_pp_closed(double n_tot, double beta_tot, double beta) {
    if (n_tot <= 0.0) throw error("s1_pp_closed: n_tot must be positive");
    if (beta < 0.0 || beta_tot > 1.0 || beta > beta_tot + 1e-15)
        throw infeasible_params("s1_pp_closed: need 0 <= beta <= beta_tot <= 1");
    if (std::abs(beta - 0.5) > 1e-5)
        return s1_pp_core(n_tot, beta_tot, beta);
    if (std::abs(beta_tot - 1.0) > 1e-9)
        throw divergent_sensitivity("s1_pp_closed: beta = 1/2 with beta_tot < 1");
    // 0/0 point.  With u = N/2 the radicand factors as (u^2-x^2)((u+1)^2-x^2),
    // x = (beta-1/2)N, and expanding around x = 0 gives S^2 -> 1/(N(N+2)).
    // The window around 1/2 is wide enough to mask the cancellation noise of
    // the direct formula.
    return 1.0 / std::sqrt(n_tot * (n_tot + 2.0));
}

double s_eta_pp_low_energy(double n_tot, double eta) {
    if (eta <= 0.0 || eta > 1.0) throw error("s_eta_pp_low_energy: eta out of (0,1]");
    if (n_tot <= 0.0) throw error("s_eta_pp_low_energy: n_tot must be positive");
    return std::sqrt(1.0 / (2.0 * eta) +
                     0.5 * std::sqrt((1.0 - eta * eta) / (eta * eta))) /
           std::sqrt(n_tot);
}

HighEnergySensitivity s_eta_pp_high_energy(double n_tot, double eta) {
    if (eta <= 0.0 || eta > 1.0) throw error("s_eta_pp_high_energy: eta out of (0,1]");
    if (n_tot <= 0.0) throw error("s_eta_pp_high_energy: n_tot must be positive");
    HighEnergySensitivity out;
    if (eta == 1.0) {
        out.expansion_breakdown = true; // leading order vanishes at eta = 1
        return out;
    }
    out.value = std::sqrt((1.0 - eta) / eta) / std::sqrt(n_tot);
    return out;
}

double s_eta_ap_closed(double n_tot, double beta, double eta) {
    if (beta <= 0.0 || beta >= 1.0) throw error("s_eta_ap_closed: beta out of (0,1)");
    if (eta <= 0.0 || eta > 1.0) throw error("s_eta_ap_closed: eta out of (0,1]");
    const double n = n_tot, b = beta;
    const double s = std::sqrt(b * n * (b * n + 2.0));
    const double num = eta * (b - 2.0) * b * b * n * n - eta * b +
                       b * n * (eta * (b - 3.0) - 1.0) +
                       s * (eta * (1.0 - (b - 2.0) * b * n) + 1.0) - 1.0;
    const double den = eta * (b - 1.0) * (b - 1.0) * n * (s - 1.0 - b * n);
    return std::sqrt(num / den);
}

double s1_aa_closed(double n_tot, double theta1_plus_phi) {
    if (n_tot <= 0.0) throw error("s1_aa_closed: n_tot must be positive");
    const double sd = std::sin(theta1_plus_phi);
    if (std::abs(sd) < 1e-12)
        throw divergent_sensitivity("s1_aa_closed: theta1 + phi is a multiple of pi");
    const double n = n_tot, c = std::cos(theta1_plus_phi);
    const double nn2 = n * (n + 2.0);
    const double num = (nn2 * std::cos(2.0 * theta1_plus_phi) +
                        4.0 * (n + 1.0) * std::sqrt(nn2) * c + 3.0 * nn2 + 2.0) /
                       (sd * sd);
    return std::sqrt(num / (2.0 * nn2));
}

double s1_aa_optimal(double n_tot) {
    if (n_tot <= 0.0) throw error("s1_aa_optimal: n_tot must be positive");
    return 1.0 / std::sqrt(n_tot * (n_tot + 2.0));
}

} // namespace gi
