#ifndef GI_INTERFEROMETER_HPP
#define GI_INTERFEROMETER_HPP

// The four two-mode configurations: input preparation, first element
// (balanced splitter or OPA), phase shift on arm a, measurement stage
// (inverse splitter or second OPA), and the closed-form sensitivities.

#include "gi/detection.hpp"
#include "gi/gaussian.hpp"

namespace gi {

// Energy split of the two displaced-squeezed inputs feeding a splitter:
//   alpha^2 = delta (1 - beta_tot) N,   gamma^2 = (1 - delta)(1 - beta_tot) N,
//   sinh^2 xi = (beta_tot - beta) N (arm a),   sinh^2 r = beta N (arm b),
// so that N_tot = alpha^2 + gamma^2 + sinh^2 xi + sinh^2 r exactly.  theta is
// the phase of the arm-b squeezing (arm a for the pa configuration, which
// squeezes only its first input).
struct PassiveInputParams {
    double n_tot = 0.0;
    double delta = 1.0;
    double beta_tot = 0.0;
    double beta = 0.0;
    double theta = 0.0;
};

// Coherent seeds amplified by the input OPA; beta = 2 sinh^2 r / N_tot and
// the budget constraint reads
//   N_tot = (alpha^2 + gamma^2 + 1) cosh 2r + 4 alpha gamma cos(theta) sinh r cosh r - 1.
struct ActiveInputParams {
    double n_tot = 0.0;
    double delta = 0.5;
    double beta = 0.0;
    double theta = 0.0;
};

struct PassivePhysical {
    double alpha = 0, gamma = 0, xi = 0, r = 0, theta = 0;
};
struct ActivePhysical {
    double alpha = 0, gamma = 0, r = 0, theta = 0;
};

PassivePhysical recover_physical_params(const PassiveInputParams& p);

// Closed-form inversion: sinh^2 r = beta N/2, then alpha^2 + gamma^2 from the
// budget with alpha*gamma = sqrt(delta(1-delta)) (alpha^2 + gamma^2).
// Throws infeasible_params when no nonnegative solution exists.
ActivePhysical recover_physical_params(const ActiveInputParams& p);

enum class StageKind { passive, active };

struct MeasurementStage {
    StageKind kind = StageKind::passive;
    double bs_phase = 3.14159265358979323846; // passive stage: inverse of the input splitter
    double r2 = 0.0;                          // active stage OPA modulus
    double theta2 = 0.0;
    DetectorPair detectors;                   // passive measures D_-, active D_+
};

enum class ConfigKind { pp, pa, ap, aa };

struct Configuration {
    ConfigKind kind = ConfigKind::pp;
    PassiveInputParams passive; // used by pp, pa
    ActiveInputParams active;   // used by ap, aa
    MeasurementStage stage;
};

Configuration make_pp(const PassiveInputParams& in, double eta = 1.0);
Configuration make_pa(const PassiveInputParams& in, double r2, double eta = 1.0);
Configuration make_ap(const ActiveInputParams& in, double eta = 1.0);
Configuration make_aa(const ActiveInputParams& in, double r2, double eta = 1.0);

// State just before the detectors (losses are not applied; they live in the
// photocurrent formulas).
GaussianState build_output_state(const Configuration& config, double phi);

// State entering the phase shifter; its photon number equals n_tot.
GaussianState build_pre_phase_state(const Configuration& config);

// Numeric sensitivity of the configuration's photocurrent at working point phi.
double sensitivity_of(const Configuration& config, double phi, double eta);

// Ideal splitter/splitter sensitivity at the working point phi = pi/2,
// theta = 0, all coherent light in the squeezed arm.  beta = 1/2 with
// beta_tot = 1 is an indeterminate 0/0 whose limit is 1/sqrt(N(N+2));
// beta = 1/2 with beta_tot < 1 diverges.
double s1_pp_closed(double n_tot, double beta_tot, double beta);

// Optimized lossy splitter/splitter forms.
double s_eta_pp_low_energy(double n_tot, double eta);

struct HighEnergySensitivity {
    double value = 0.0;
    bool expansion_breakdown = false; // eta = 1: leading order vanishes
};
HighEnergySensitivity s_eta_pp_high_energy(double n_tot, double eta);

// OPA-input / splitter-readout sensitivity at delta = 1/2, phi = pi/2, theta = pi.
double s_eta_ap_closed(double n_tot, double beta, double eta);

// OPA/OPA sensitivity at beta = 1 (vacuum-seeded input OPA) in the large
// readout-gain limit, as a function of theta1 + phi, and its minimum
// 1/sqrt(N(N+2)).
double s1_aa_closed(double n_tot, double theta1_plus_phi);
double s1_aa_optimal(double n_tot);

} // namespace gi

#endif
