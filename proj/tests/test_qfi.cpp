#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fock.hpp"
#include "gi/qfi.hpp"

using namespace gi;
namespace {

constexpr double kPi = 3.14159265358979323846;

GaussianState lossy_probe(double eta) {
    GaussianState s =
        tensor(displaced_squeezed({0.9, 0.3}, {0.6, -0.2}), displaced_squeezed({0.2, 0.0}, 0.4));
    s = apply(beam_splitter(cplx(kPi / 4, 0.0)), s);
    return loss_channel(eta, 0, s);
}

StateDerivative phase_derivative_of(const GaussianState& s, int mode) {
    const auto builder = [&](double phi) {
        return apply(phase_shift(phi, s.n_modes, mode), s);
    };
    return phase_family_derivative(builder, 0.0, DerivMode::analytic, 1e-5, mode);
}

// QFI of e^{-i phi n} rho e^{i phi n} on a single mode, by eigendecomposition
// of the number-basis density matrix: H = 2 sum |rho_dot_ij|^2 / (p_i + p_j).
double fock_qfi_phase_1mode(const Eigen::MatrixXcd& rho) {
    const int d = static_cast<int>(rho.rows());
    Eigen::MatrixXcd rho_dot(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            rho_dot(j, k) = cplx(0.0, -(double)(j - k)) * rho(j, k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const Eigen::VectorXd p = es.eigenvalues();
    const Eigen::MatrixXcd r = es.eigenvectors().adjoint() * rho_dot * es.eigenvectors();
    double h = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (p(i) + p(j) > 1e-11) h += 2.0 * std::norm(r(i, j)) / (p(i) + p(j));
    return h;
}

Eigen::MatrixXcd reduce_mode_a(const fock::TwoMode& s) {
    const int c = s.cutoff;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(c, c);
    for (int na = 0; na < c; ++na)
        for (int ma = 0; ma < c; ++ma)
            for (int nb = 0; nb < c; ++nb)
                rho(na, ma) += s.psi(na * c + nb) * std::conj(s.psi(ma * c + nb));
    return rho;
}

} // namespace

TEST_CASE("williamson of the vacuum") {
    const SymplecticSpectrum ws = williamson(0.5 * Mat::Identity(4, 4));
    CHECK(ws.lambdas(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ws.lambdas(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("williamson diagonalizes and is symplectic") {
    for (const double eta : {1.0, 0.8, 0.35}) {
        const GaussianState s = lossy_probe(eta);
        const SymplecticSpectrum ws = williamson(s.cov);
        const Mat& S = ws.S.matrix;
        const Mat Om = omega(2);
        CHECK((S * Om * S.transpose() - Om).cwiseAbs().maxCoeff() < 1e-9);
        Mat D = Mat::Zero(4, 4);
        for (int j = 0; j < 2; ++j) D(2 * j, 2 * j) = D(2 * j + 1, 2 * j + 1) = ws.lambdas(j);
        CHECK((S * s.cov * S.transpose() - D).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(ws.lambdas.minCoeff() >= 0.5 - 1e-10);
    }
}

TEST_CASE("williamson eigenvalue of a lossy single mode is sqrt(det sigma)") {
    GaussianState s = displaced_squeezed({0.3, 0.1}, {0.7, 0.4});
    s = loss_channel(0.55, 0, s);
    const SymplecticSpectrum ws = williamson(s.cov);
    CHECK(ws.lambdas(0) == doctest::Approx(std::sqrt(s.cov.determinant())).epsilon(1e-10));
}

TEST_CASE("williamson rejects non positive definite input") {
    Mat bad = Mat::Identity(4, 4);
    bad(0, 0) = -1.0;
    CHECK_THROWS_AS(williamson(bad), not_positive_definite);
}

TEST_CASE("sld satisfies the defining moment equations") {
    for (const double eta : {0.9, 0.5}) {
        const GaussianState s = lossy_probe(eta);
        const StateDerivative d = phase_derivative_of(s, 0);
        const SldOperator L = sld(s, d);

        // sigma-dot = 2 sigma Omega Phi Omega^T sigma - Phi/2
        const Mat Om = omega(2);
        const Mat resid = 2.0 * s.cov * Om * L.Phi * Om.transpose() * s.cov - 0.5 * L.Phi - d.dcov;
        CHECK(resid.cwiseAbs().maxCoeff() < 1e-7);

        // dmean = sigma Omega^T ... equivalently zeta = Omega^T sigma^{-1} dmean
        const Vec zeta_ref = Om.transpose() * s.cov.ldlt().solve(d.dmean);
        CHECK((L.zeta - zeta_ref).cwiseAbs().maxCoeff() < 1e-9);

        // <L> = 0: nu absorbs the quadratic and linear means
        const double mean_L = (L.Phi * s.cov).trace() + s.mean.dot(L.Phi * s.mean) +
                              s.mean.dot(L.zeta) - L.nu;
        CHECK(std::abs(mean_L) < 1e-9);
    }
}

TEST_CASE("pure-state shortcut agrees with the generic quotient") {
    GaussianState s =
        tensor(displaced_squeezed({0.8, 0.0}, {0.5, 0.3}), displaced_squeezed({0.0, 0.4}, 0.2));
    s = apply(beam_splitter(cplx(kPi / 4, 0.0)), s);
    const StateDerivative d = phase_derivative_of(s, 0);
    const double h_pure = qfi(s, d);

    // nudge the state slightly mixed so the quotient branch is taken
    GaussianState mixed = s;
    mixed.cov *= 1.0 + 1e-6;
    const double h_quot = qfi(mixed, d);
    CHECK(h_pure == doctest::Approx(h_quot).epsilon(1e-4));
}

TEST_CASE("phase QFI of a coherent state is 4|alpha|^2") {
    const GaussianState s = tensor(displaced_squeezed({1.5, 0.0}, 0.0), vacuum(1));
    CHECK(qfi(s, phase_derivative_of(s, 0)) == doctest::Approx(9.0).epsilon(1e-10));
}

TEST_CASE("phase QFI of the vacuum vanishes") {
    const GaussianState s = vacuum(2);
    CHECK(std::abs(qfi(s, phase_derivative_of(s, 0))) < 1e-10);
}

TEST_CASE("pure-state phase QFI equals 4 Var(n)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> mag(0.0, 0.8), ang(0.0, 2 * kPi);
    for (int trial = 0; trial < 8; ++trial) {
        GaussianState s = tensor(
            displaced_squeezed(std::polar(mag(rng), ang(rng)), std::polar(mag(rng), ang(rng))),
            displaced_squeezed(std::polar(mag(rng), ang(rng)), std::polar(mag(rng), ang(rng))));
        s = apply(beam_splitter(std::polar(kPi / 4, ang(rng))), s);
        const double h = qfi(s, phase_derivative_of(s, 0));
        CHECK(h == doctest::Approx(4.0 * number_moments(s).var_na).epsilon(1e-8));
    }
}

TEST_CASE("analytic and finite-difference derivatives agree") {
    const GaussianState s0 = lossy_probe(0.7);
    const auto builder = [&](double phi) { return apply(phase_shift(phi, 2, 0), s0); };
    const StateDerivative da = phase_family_derivative(builder, 0.4, DerivMode::analytic);
    const StateDerivative df =
        phase_family_derivative(builder, 0.4, DerivMode::finite_difference, 1e-5);
    CHECK((da.dcov - df.dcov).cwiseAbs().maxCoeff() < 1e-7);
    CHECK((da.dmean - df.dmean).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("phase QFI does not depend on the phase offset") {
    const GaussianState s0 = lossy_probe(0.6);
    const auto builder = [&](double phi) { return apply(phase_shift(phi, 2, 0), s0); };
    const double h0 = qfi(builder(0.0), phase_family_derivative(builder, 0.0));
    for (const double phi : {0.3, 1.7, 3.0}) {
        const auto shifted = [&](double x) { return builder(x); };
        const double h = qfi(builder(phi), phase_family_derivative(shifted, phi));
        CHECK(h == doctest::Approx(h0).epsilon(1e-9));
    }
}

TEST_CASE("mixed-state phase QFI matches the Fock oracle") {
    // two-mode pure state, phase and QFI on the reduced (mixed) mode a
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mag(0.1, 0.6), ang(0.0, 2 * kPi);
    for (int trial = 0; trial < 3; ++trial) {
        const cplx alpha = std::polar(mag(rng), ang(rng));
        const cplx zeta = std::polar(mag(rng), ang(rng));

        GaussianState two = tensor(displaced_squeezed(alpha, 0.0), vacuum(1));
        two = apply(two_mode_squeezer(zeta), two);
        GaussianState red;
        red.n_modes = 1;
        red.mean = two.mean.head(2);
        red.cov = two.cov.topLeftCorner(2, 2);
        const double h_gauss = qfi(red, phase_derivative_of(red, 0));

        fock::TwoMode f = fock::vacuum2(30);
        fock::displace(f, alpha, 0);
        fock::two_mode_squeeze(f, zeta);
        REQUIRE(fock::truncation_error(f) < 1e-10);
        const double h_fock = fock_qfi_phase_1mode(reduce_mode_a(f));
        CHECK(h_gauss == doctest::Approx(h_fock).epsilon(2e-4));
    }
}

TEST_CASE("closed-form passive QFI matches the measured pipeline") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> mag(0.0, 1.0), ang(0.0, 2 * kPi);
    for (int trial = 0; trial < 10; ++trial) {
        const double alpha = mag(rng), gamma = mag(rng), xi = mag(rng), r = mag(rng);
        const double theta = ang(rng);
        GaussianState s = tensor(displaced_squeezed(alpha, xi),
                                 displaced_squeezed(gamma, std::polar(r, -theta)));
        s = apply(beam_splitter(cplx(kPi / 4, 0.0)), s);
        const double h = qfi(s, phase_derivative_of(s, 0));
        CHECK(h == doctest::Approx(qfi_passive_closed(alpha, gamma, xi, r, theta)).epsilon(1e-8));
    }
}

TEST_CASE("closed-form active QFI matches the measured pipeline") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> mag(0.0, 1.0), ang(0.0, 2 * kPi);
    for (int trial = 0; trial < 10; ++trial) {
        const double alpha = mag(rng), gamma = mag(rng), r = mag(rng);
        const double theta = ang(rng);
        GaussianState s = tensor(displaced_squeezed(alpha, 0.0), displaced_squeezed(gamma, 0.0));
        s = apply(two_mode_squeezer(std::polar(r, -theta)), s);
        const double h = qfi(s, phase_derivative_of(s, 0));
        CHECK(h == doctest::Approx(qfi_active_closed(alpha, gamma, r, theta)).epsilon(1e-8));
    }
}

TEST_CASE("qfi_passive_max formula") {
    for (const double n : {0.1, 1.0, 10.0}) {
        CHECK(qfi_passive_max(n) ==
              doctest::Approx((4.0 * n / 9.0) * (2.0 * std::sqrt(n * (n + 3.0)) + 4.0 * n + 9.0))
                  .epsilon(1e-14));
    }
}

TEST_CASE("cramer_rao") {
    CHECK(cramer_rao(100.0, 1) == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(cramer_rao(4.0, 25) == doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("qfi is invariant under reordering Omega blocks sign convention") {
    // flipping phi -> -phi flips dcov and dmean signs; QFI is quadratic in them
    const GaussianState s = lossy_probe(0.8);
    StateDerivative d = phase_derivative_of(s, 0);
    const double h = qfi(s, d);
    d.dcov = -d.dcov;
    d.dmean = -d.dmean;
    CHECK(qfi(s, d) == doctest::Approx(h).epsilon(1e-12));
}
