#ifndef GI_DETECTION_HPP
#define GI_DETECTION_HPP

// Sum/difference photocurrents with quantum efficiency eta, sensitivity,
// the Gaussian-approximation Fisher information, and the loss-compensation
// factor of the amplified (OPA) measurement stage.

#include <functional>

#include "gi/gaussian.hpp"

namespace gi {

struct PhotocurrentStats {
    double mean = 0.0;
    double variance = 0.0;
};

struct DetectorPair {
    double eta = 1.0; // shared by both detectors
};

// D_-(eta): mean eta(<n_a> - <n_b>),
// variance eta^2(Var n_a + Var n_b - 2Cov) + eta(1-eta)(<n_a> + <n_b>).
PhotocurrentStats difference_current(const GaussianState& state, double eta);

// D_+(eta): same with the covariance sign flipped and summed mean.
PhotocurrentStats sum_current(const GaussianState& state, double eta);

// D_+(eta) measured after an OPA of modulus r2, assembled from the moments of
// the state entering the amplifier.  N_OPA = 2 sinh^2 r2.
PhotocurrentStats sum_current_after_opa(const NumberMoments& pre, double r2, double eta);

// S = sqrt(variance)/|d mean/dphi|, derivative via Richardson-extrapolated
// central differences at steps h and h/2.
double sensitivity(const std::function<PhotocurrentStats(double)>& stats_of_phi,
                   double phi, double h = 1e-5);

// F = [(dX/dphi)^2 + 2 (dsigma/dphi)^2] / sigma^2 for a Gaussian outcome
// distribution of mean X(phi) and spread sigma(phi).
double fisher_gaussian_approx(const std::function<double(double)>& mean_of_phi,
                              const std::function<double(double)>& sigma_of_phi,
                              double phi, double h = 1e-5);

// sqrt(1 + (1-eta)/eta * D_+/DeltaD_+^2) at the given r2; S_eta = S_1 * factor.
double loss_compensation_factor(const NumberMoments& pre, double r2, double eta);

} // namespace gi

#endif
