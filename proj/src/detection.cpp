#include "gi/detection.hpp"

#include <cmath>

namespace gi {

static double clamp_variance(double v) {
    if (v < -1e-10)
        throw inconsistent_moments("photocurrent variance negative beyond tolerance");
    return v < 0.0 ? 0.0 : v;
}

static void check_eta(double eta) {
    if (eta < 0.0 || eta > 1.0) throw error("quantum efficiency out of [0,1]");
}

PhotocurrentStats difference_current(const GaussianState& state, double eta) {
    check_eta(eta);
    const NumberMoments m = number_moments(state);
    PhotocurrentStats s;
    s.mean = eta * (m.na - m.nb);
    s.variance = clamp_variance(eta * eta * (m.var_na + m.var_nb - 2.0 * m.cov_nab) +
                                eta * (1.0 - eta) * (m.na + m.nb));
    return s;
}

PhotocurrentStats sum_current(const GaussianState& state, double eta) {
    check_eta(eta);
    const NumberMoments m = number_moments(state);
    PhotocurrentStats s;
    s.mean = eta * (m.na + m.nb);
    s.variance = clamp_variance(eta * eta * (m.var_na + m.var_nb + 2.0 * m.cov_nab) +
                                eta * (1.0 - eta) * (m.na + m.nb));
    return s;
}

PhotocurrentStats sum_current_after_opa(const NumberMoments& pre, double r2, double eta) {
    check_eta(eta);
    if (r2 < 0.0) throw error("sum_current_after_opa: r2 must be >= 0");
    const double n_opa = 2.0 * std::sinh(r2) * std::sinh(r2);
    const double c1 = 1.0 + n_opa;
    const double c2 = std::sqrt(n_opa * (2.0 + n_opa));
    const double n_in = pre.na + pre.nb;
    const double var_n = pre.var_na + pre.var_nb + 2.0 * pre.cov_nab;

    const double d_plus = c1 * n_in + n_opa + c2 * pre.X;
    const double var_ideal = c1 * c1 * var_n + n_opa * (2.0 + n_opa) * pre.var_X +
                             2.0 * c1 * c2 * pre.cov_NX;

    PhotocurrentStats s;
    s.mean = eta * d_plus;
    s.variance = clamp_variance(eta * eta * var_ideal + eta * (1.0 - eta) * d_plus);
    return s;
}

double sensitivity(const std::function<PhotocurrentStats(double)>& stats_of_phi,
                   double phi, double h) {
    const PhotocurrentStats at = stats_of_phi(phi);
    auto slope = [&](double step) {
        return (stats_of_phi(phi + step).mean - stats_of_phi(phi - step).mean) / (2.0 * step);
    };
    // Richardson-extrapolated central difference; unconditional so that
    // rescaled photocurrents yield exactly rescaled derivatives.
    const double der = (4.0 * slope(h / 2.0) - slope(h)) / 3.0;
    if (std::abs(der) <= 1e-12)
        throw vanishing_slope("sensitivity: |d<X>/dphi| <= 1e-12, blind working point");
    return std::sqrt(at.variance) / std::abs(der);
}

double fisher_gaussian_approx(const std::function<double(double)>& mean_of_phi,
                              const std::function<double(double)>& sigma_of_phi,
                              double phi, double h) {
    const double sig = sigma_of_phi(phi);
    if (sig <= 0.0) throw error("fisher_gaussian_approx: sigma must be positive");
    const double dmean = (mean_of_phi(phi + h) - mean_of_phi(phi - h)) / (2.0 * h);
    const double dsig = (sigma_of_phi(phi + h) - sigma_of_phi(phi - h)) / (2.0 * h);
    return (dmean * dmean + 2.0 * dsig * dsig) / (sig * sig);
}

double loss_compensation_factor(const NumberMoments& pre, double r2, double eta) {
    if (eta <= 0.0 || eta > 1.0) throw error("loss_compensation_factor: eta out of (0,1]");
    const PhotocurrentStats ideal = sum_current_after_opa(pre, r2, 1.0);
    return std::sqrt(1.0 + (1.0 - eta) / eta * ideal.mean / ideal.variance);
}

} // namespace gi
