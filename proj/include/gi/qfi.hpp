#ifndef GI_QFI_HPP
#define GI_QFI_HPP

// Symmetric logarithmic derivative and quantum Fisher information for
// Gaussian families, plus the closed-form QFI expressions of the two-mode
// phase-estimation setups.

#include <functional>

#include "gi/gaussian.hpp"

namespace gi {

struct SymplecticSpectrum {
    Vec lambdas;      // n symplectic eigenvalues, each >= 1/2
    SymplecticMap S;  // S sigma S^T = diag(l1,l1,...,ln,ln), S Omega S^T = Omega
};

struct StateDerivative {
    Mat dcov;   // sigma-dot, symmetric
    Vec dmean;  // d<R>/dphi
};

// L = R^T Phi R + R^T zeta - nu, with <L> = 0.
struct SldOperator {
    Mat Phi;
    Vec zeta;
    double nu = 0.0;
};

// Williamson decomposition via real Schur form of sigma^{-1/2} Omega sigma^{-1/2}.
SymplecticSpectrum williamson(const Mat& cov);

SldOperator sld(const GaussianState& state, const StateDerivative& deriv);

// H = Tr[Omega^T sigma-dot Omega Phi] + dmean^T sigma^{-1} dmean.
double qfi(const GaussianState& state, const StateDerivative& deriv);

enum class DerivMode { analytic, finite_difference };

// Derivative of a phase family phi -> state.  The analytic path assumes the
// phase enters through V(phi) acting last on `mode`, so the derivative is the
// rotation generator acting on the current moments; the finite-difference
// path uses central differences with step h.
StateDerivative phase_family_derivative(const std::function<GaussianState(double)>& builder,
                                        double phi,
                                        DerivMode mode_kind = DerivMode::analytic,
                                        double h = 1e-5,
                                        int mode = 0);

// QFI of |alpha, xi> (x) |gamma, r e^{-i theta}> through a balanced splitter,
// phase on arm a.
double qfi_passive_closed(double alpha, double gamma, double xi, double r, double theta);

// QFI of |alpha> (x) |gamma> through an OPA of coupling r e^{-i theta},
// phase on arm a.
double qfi_active_closed(double alpha, double gamma, double r, double theta);

// Passive QFI at the asymptotically optimal fractions (delta = 1/2,
// beta_tot = 2/3, beta = beta_tot/2, theta = 0) for a fixed photon budget:
// (4N/9)(2 sqrt(N(N+3)) + 4N + 9), which is (8/3)(N^2 + 2N) + O(N).
// At finite N the true optimum sits at slightly smaller beta_tot and exceeds
// this value by a relative O(1/N).
double qfi_passive_max(double n_tot);

// Variance bound 1/(M H) for M repetitions.
double cramer_rao(double H, long M);

} // namespace gi

#endif
