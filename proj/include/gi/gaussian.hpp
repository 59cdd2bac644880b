#ifndef GI_GAUSSIAN_HPP
#define GI_GAUSSIAN_HPP

// Two-mode (and general n-mode) Gaussian states over quadratures
// R = (q1, p1, ..., qn, pn) with [q, p] = i and vacuum covariance I/2.
// Mode operators relate to quadratures by a = (q + i p)/sqrt(2).

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "gi/errors.hpp"

namespace gi {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using cplx = std::complex<double>;

// Omega = direct sum of n blocks [[0,1],[-1,0]].
Mat omega(int n_modes);

struct GaussianState {
    int n_modes = 0;
    Vec mean;   // length 2n
    Mat cov;    // 2n x 2n, kept symmetric

    int dim() const { return 2 * n_modes; }
};

// Symmetrizes cov and validates dimensions.
GaussianState make_state(const Vec& mean, const Mat& cov);

// Linear map: mean -> matrix*mean + displacement, cov -> matrix*cov*matrix^T.
struct SymplecticMap {
    Mat matrix;
    Vec displacement;
};

// Quadrature matrix of the mode map a_i' = sum_j u_ij a_j + v_ij a_j^dag.
Mat modemap_matrix(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);

GaussianState vacuum(int n_modes);

// Single-mode |alpha, xi>: squeeze S(xi) then displace.  <n> = |alpha|^2 + sinh^2|xi|.
GaussianState displaced_squeezed(cplx alpha, cplx xi);

GaussianState tensor(const GaussianState& a, const GaussianState& b);

// exp{nu a^dag b - nu* a b^dag}; |nu| = pi/4 with zero phase is the balanced splitter.
SymplecticMap beam_splitter(cplx nu, int n_modes = 2, std::pair<int, int> modes = {0, 1});

// OPA, exp{zeta a^dag b^dag - zeta* a b}; on vacuum adds N = 2 sinh^2|zeta| photons.
SymplecticMap two_mode_squeezer(cplx zeta, int n_modes = 2, std::pair<int, int> modes = {0, 1});

// V(phi) = exp{-i a^dag a phi}: clockwise rotation of (q, p) by phi.
SymplecticMap phase_shift(double phi, int n_modes = 2, int mode = 0);

GaussianState apply(const SymplecticMap& map, const GaussianState& state);

// Detector-loss model: beam splitter of transmissivity eta with a vacuum
// ancilla, ancilla traced out.  Acts on a single mode.
GaussianState loss_channel(double eta, int mode, const GaussianState& state);

// Moments of n_a, n_b and X_ab = a^dag b^dag + a b, from Wick factorization
// of fourth-order quadrature moments.  All covariances are symmetrized.
struct NumberMoments {
    double na = 0, nb = 0;
    double var_na = 0, var_nb = 0, cov_nab = 0;
    double X = 0;            // <X_ab>
    double cov_NX = 0;       // Cov(n_a + n_b, X_ab)
    double var_X = 0;
};

NumberMoments number_moments(const GaussianState& state, int mode_a = 0, int mode_b = 1);

double mean_total_photons(const GaussianState& state);

// det(2 cov) = 1 within tol.
bool is_pure(const GaussianState& state, double tol = 1e-9);

// Mean and symmetrized covariance of quadratic observables A = R^T G R + c.
double quad_mean(const Mat& G, const GaussianState& state, double constant = 0.0);
double quad_cov(const Mat& G, const Mat& Gp, const GaussianState& state);

} // namespace gi

#endif
