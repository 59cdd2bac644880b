#include "gi/qfi.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace gi {

SymplecticSpectrum williamson(const Mat& cov) {
    const int dim = static_cast<int>(cov.rows());
    const int n = dim / 2;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (cov + cov.transpose()));
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw not_positive_definite("williamson: covariance not positive definite");

    const Mat isq = es.eigenvectors() *
                    es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                    es.eigenvectors().transpose();
    const Mat A = isq * omega(n) * isq; // antisymmetric, nonsingular

    Eigen::RealSchur<Mat> schur(A);
    Mat T = schur.matrixT();
    Mat O = schur.matrixU();

    // A antisymmetric => T is block diagonal with 2x2 blocks [[0, mu], [-mu, 0]];
    // flip block columns when mu < 0 so every mu is positive.
    Vec lambdas(n);
    Vec dsqrt(dim);
    for (int j = 0; j < n; ++j) {
        double mu = T(2 * j, 2 * j + 1);
        if (mu < 0.0) {
            O.col(2 * j).swap(O.col(2 * j + 1));
            mu = -mu;
        }
        lambdas(j) = 1.0 / mu;
        dsqrt(2 * j) = dsqrt(2 * j + 1) = std::sqrt(lambdas(j));
    }

    SymplecticSpectrum out;
    out.lambdas = lambdas;
    out.S.matrix = dsqrt.asDiagonal() * O.transpose() * isq;
    out.S.displacement = Vec::Zero(dim);
    return out;
}

static Mat sld_phi_matrix(const GaussianState& state, const Mat& dcov) {
    const int n = state.n_modes;
    const int dim = state.dim();
    const SymplecticSpectrum ws = williamson(state.cov);

    bool pure = true;
    for (int j = 0; j < n; ++j)
        if (ws.lambdas(j) >= 0.5 + 1e-7) pure = false;
    if (pure) return -dcov;

    const Mat& S = ws.S.matrix;
    const Mat covS = S * state.cov * S.transpose();
    const Mat dcovS = S * dcov * S.transpose();
    const Mat W = omega(n);
    const Mat num = W.transpose() * covS * dcovS * covS * W + 0.25 * dcovS;

    Mat phiS(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < dim; ++k) {
            const double lj = ws.lambdas(j / 2), lk = ws.lambdas(k / 2);
            double den = 2.0 * lj * lj * lk * lk - 0.125;
            if (std::abs(den) < 1e-8) {
                if (std::abs(num(j, k)) > 1e-8)
                    throw singular_quotient("sld: vanishing denominator with nonzero numerator");
                const double ljp = lj * (1.0 + 1e-6), lkp = lk * (1.0 + 1e-6);
                den = 2.0 * ljp * ljp * lkp * lkp - 0.125;
            }
            phiS(j, k) = num(j, k) / den;
        }
    }
    const Mat Sinv = S.inverse();
    Mat phi = Sinv * phiS * Sinv.transpose();
    return 0.5 * (phi + phi.transpose());
}

SldOperator sld(const GaussianState& state, const StateDerivative& deriv) {
    SldOperator op;
    op.Phi = sld_phi_matrix(state, 0.5 * (deriv.dcov + deriv.dcov.transpose()));
    const Mat W = omega(state.n_modes);
    op.zeta = W.transpose() * state.cov.ldlt().solve(deriv.dmean);
    // nu fixed by the zero-mean property of the SLD
    op.nu = (state.cov * op.Phi).trace() +
            state.mean.dot(op.Phi * state.mean) +
            state.mean.dot(op.zeta);
    return op;
}

double qfi(const GaussianState& state, const StateDerivative& deriv) {
    const Mat dcov = 0.5 * (deriv.dcov + deriv.dcov.transpose());
    const Mat phi = sld_phi_matrix(state, dcov);
    const Mat W = omega(state.n_modes);
    const double quad = (W.transpose() * dcov * W * phi).trace();
    const double lin = deriv.dmean.dot(state.cov.ldlt().solve(deriv.dmean));
    return quad + lin;
}

StateDerivative phase_family_derivative(const std::function<GaussianState(double)>& builder,
                                        double phi, DerivMode mode_kind, double h, int mode) {
    StateDerivative d;
    if (mode_kind == DerivMode::analytic) {
        const GaussianState s = builder(phi);
        Mat G = Mat::Zero(s.dim(), s.dim());
        G(2 * mode, 2 * mode + 1) = 1.0;
        G(2 * mode + 1, 2 * mode) = -1.0; // dV/dphi at 0, clockwise rotation
        d.dcov = G * s.cov + s.cov * G.transpose();
        d.dmean = G * s.mean;
    } else {
        const GaussianState sp = builder(phi + h);
        const GaussianState sm = builder(phi - h);
        d.dcov = (sp.cov - sm.cov) / (2.0 * h);
        d.dmean = (sp.mean - sm.mean) / (2.0 * h);
    }
    d.dcov = 0.5 * (d.dcov + d.dcov.transpose()).eval();
    return d;
}

double qfi_passive_closed(double alpha, double gamma, double xi, double r, double theta) {
    const double ag2 = (alpha + gamma) * (alpha + gamma);
    return 0.25 * (4.0 * std::exp(2.0 * xi) * ag2 + std::cosh(4.0 * xi) +
                   2.0 * std::cos(theta) * std::sinh(2.0 * r) * (2.0 * ag2 + std::sinh(2.0 * xi)) +
                   4.0 * ag2 * std::cosh(2.0 * r) +
                   std::cosh(2.0 * (r - xi)) + std::cosh(2.0 * (xi + r)) +
                   std::cosh(4.0 * r) - 4.0);
}

double qfi_active_closed(double alpha, double gamma, double r, double theta) {
    const double p = alpha * alpha + gamma * gamma;
    return p + (p + 0.5) * std::cosh(4.0 * r) +
           2.0 * alpha * gamma * std::cos(theta) * std::sinh(4.0 * r) +
           2.0 * (alpha * alpha - gamma * gamma) * std::cosh(2.0 * r) - 0.5;
}

double qfi_passive_max(double n_tot) {
    if (n_tot < 0.0) throw error("qfi_passive_max: negative photon number");
    return (4.0 * n_tot / 9.0) * (2.0 * std::sqrt(n_tot * (n_tot + 3.0)) + 4.0 * n_tot + 9.0);
}

double cramer_rao(double H, long M) {
    if (H <= 0.0) throw error("cramer_rao: H must be positive");
    if (M < 1) throw error("cramer_rao: M must be >= 1");
    return 1.0 / (static_cast<double>(M) * H);
}

} // namespace gi
