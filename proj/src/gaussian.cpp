#include "gi/gaussian.hpp"

#include <cmath>

namespace gi {

Mat omega(int n_modes) {
    Mat W = Mat::Zero(2 * n_modes, 2 * n_modes);
    for (int j = 0; j < n_modes; ++j) {
        W(2 * j, 2 * j + 1) = 1.0;
        W(2 * j + 1, 2 * j) = -1.0;
    }
    return W;
}

GaussianState make_state(const Vec& mean, const Mat& cov) {
    if (cov.rows() != cov.cols() || cov.rows() != mean.size() || mean.size() % 2 != 0)
        throw error("make_state: inconsistent dimensions");
    GaussianState s;
    s.n_modes = static_cast<int>(mean.size()) / 2;
    s.mean = mean;
    s.cov = 0.5 * (cov + cov.transpose());
    return s;
}

Mat modemap_matrix(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
    const int n = static_cast<int>(u.rows());
    Mat M = Mat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cplx s = u(i, j) + v(i, j);
            const cplx d = u(i, j) - v(i, j);
            M(2 * i, 2 * j) = s.real();
            M(2 * i, 2 * j + 1) = -d.imag();
            M(2 * i + 1, 2 * j) = s.imag();
            M(2 * i + 1, 2 * j + 1) = d.real();
        }
    }
    return M;
}

GaussianState vacuum(int n_modes) {
    if (n_modes < 1) throw error("vacuum: n_modes must be >= 1");
    GaussianState s;
    s.n_modes = n_modes;
    s.mean = Vec::Zero(2 * n_modes);
    s.cov = 0.5 * Mat::Identity(2 * n_modes, 2 * n_modes);
    return s;
}

GaussianState displaced_squeezed(cplx alpha, cplx xi) {
    const double r = std::abs(xi);
    const cplx ph = (r > 0) ? xi / r : cplx(1.0, 0.0);
    Eigen::MatrixXcd u(1, 1), v(1, 1);
    u(0, 0) = std::cosh(r);
    v(0, 0) = ph * std::sinh(r);
    const Mat S = modemap_matrix(u, v);

    GaussianState s = vacuum(1);
    s.cov = S * s.cov * S.transpose();
    s.mean(0) = std::sqrt(2.0) * alpha.real();
    s.mean(1) = std::sqrt(2.0) * alpha.imag();
    s.cov = 0.5 * (s.cov + s.cov.transpose()).eval();
    return s;
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
    GaussianState s;
    s.n_modes = a.n_modes + b.n_modes;
    s.mean = Vec::Zero(s.dim());
    s.mean.head(a.dim()) = a.mean;
    s.mean.tail(b.dim()) = b.mean;
    s.cov = Mat::Zero(s.dim(), s.dim());
    s.cov.topLeftCorner(a.dim(), a.dim()) = a.cov;
    s.cov.bottomRightCorner(b.dim(), b.dim()) = b.cov;
    return s;
}

static void check_pair(int n_modes, std::pair<int, int> modes, const char* who) {
    if (modes.first == modes.second || modes.first < 0 || modes.second < 0 ||
        modes.first >= n_modes || modes.second >= n_modes)
        throw error(std::string(who) + ": invalid mode indices");
}

SymplecticMap beam_splitter(cplx nu, int n_modes, std::pair<int, int> modes) {
    check_pair(n_modes, modes, "beam_splitter");
    const double t = std::abs(nu);
    const cplx ph = (t > 0) ? nu / t : cplx(1.0, 0.0);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n_modes, n_modes);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n_modes, n_modes);
    const int i = modes.first, j = modes.second;
    u(i, i) = std::cos(t);
    u(i, j) = ph * std::sin(t);
    u(j, j) = std::cos(t);
    u(j, i) = -std::conj(ph) * std::sin(t);
    return SymplecticMap{modemap_matrix(u, v), Vec::Zero(2 * n_modes)};
}

SymplecticMap two_mode_squeezer(cplx zeta, int n_modes, std::pair<int, int> modes) {
    check_pair(n_modes, modes, "two_mode_squeezer");
    const double r = std::abs(zeta);
    const cplx ph = (r > 0) ? zeta / r : cplx(1.0, 0.0);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n_modes, n_modes);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n_modes, n_modes);
    const int i = modes.first, j = modes.second;
    u(i, i) = std::cosh(r);
    v(i, j) = ph * std::sinh(r);
    u(j, j) = std::cosh(r);
    v(j, i) = ph * std::sinh(r);
    return SymplecticMap{modemap_matrix(u, v), Vec::Zero(2 * n_modes)};
}

SymplecticMap phase_shift(double phi, int n_modes, int mode) {
    if (mode < 0 || mode >= n_modes) throw error("phase_shift: invalid mode index");
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n_modes, n_modes);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n_modes, n_modes);
    u(mode, mode) = std::exp(cplx(0.0, -phi));
    return SymplecticMap{modemap_matrix(u, v), Vec::Zero(2 * n_modes)};
}

GaussianState apply(const SymplecticMap& map, const GaussianState& state) {
    if (map.matrix.rows() != state.dim())
        throw error("apply: dimension mismatch");
    GaussianState s;
    s.n_modes = state.n_modes;
    s.mean = map.matrix * state.mean + map.displacement;
    Mat c = map.matrix * state.cov * map.matrix.transpose();
    s.cov = 0.5 * (c + c.transpose());
    return s;
}

GaussianState loss_channel(double eta, int mode, const GaussianState& state) {
    if (eta < 0.0 || eta > 1.0) throw error("loss_channel: eta out of [0,1]");
    if (mode < 0 || mode >= state.n_modes) throw error("loss_channel: invalid mode index");
    GaussianState s = state;
    const int q = 2 * mode, p = 2 * mode + 1;
    const double se = std::sqrt(eta);
    // cross blocks scale by sqrt(eta), the mode block by eta with vacuum refill
    s.mean(q) *= se;
    s.mean(p) *= se;
    s.cov.row(q) *= se;
    s.cov.row(p) *= se;
    s.cov.col(q) *= se;
    s.cov.col(p) *= se;
    s.cov(q, q) += (1.0 - eta) / 2.0;
    s.cov(p, p) += (1.0 - eta) / 2.0;
    return s;
}

double quad_mean(const Mat& G, const GaussianState& state, double constant) {
    return (G * state.cov).trace() + state.mean.dot(G * state.mean) + constant;
}

double quad_cov(const Mat& G, const Mat& Gp, const GaussianState& state) {
    const Mat& c = state.cov;
    const Mat W = omega(state.n_modes);
    const double t1 = 2.0 * (G * c * Gp * c).trace();
    const double t2 = 0.5 * (G * W * Gp * W).trace();
    const double t3 = 2.0 * state.mean.dot((G * c * Gp + Gp * c * G) * state.mean);
    return t1 + t2 + t3;
}

static Mat number_form(int n_modes, int mode) {
    Mat G = Mat::Zero(2 * n_modes, 2 * n_modes);
    G(2 * mode, 2 * mode) = 0.5;
    G(2 * mode + 1, 2 * mode + 1) = 0.5;
    return G; // n = R^T G R - 1/2
}

static Mat cross_form(int n_modes, int a, int b) {
    Mat G = Mat::Zero(2 * n_modes, 2 * n_modes);
    G(2 * a, 2 * b) = G(2 * b, 2 * a) = 0.5;
    G(2 * a + 1, 2 * b + 1) = G(2 * b + 1, 2 * a + 1) = -0.5;
    return G; // X_ab = q_a q_b - p_a p_b = a^dag b^dag + a b
}

NumberMoments number_moments(const GaussianState& state, int mode_a, int mode_b) {
    if (mode_a == mode_b || mode_a < 0 || mode_b < 0 ||
        mode_a >= state.n_modes || mode_b >= state.n_modes)
        throw error("number_moments: need two distinct modes");
    const int n = state.n_modes;
    const Mat Ga = number_form(n, mode_a);
    const Mat Gb = number_form(n, mode_b);
    const Mat Gx = cross_form(n, mode_a, mode_b);
    const Mat Gn = Ga + Gb;

    NumberMoments m;
    m.na = quad_mean(Ga, state, -0.5);
    m.nb = quad_mean(Gb, state, -0.5);
    m.X = quad_mean(Gx, state);
    m.var_na = quad_cov(Ga, Ga, state);
    m.var_nb = quad_cov(Gb, Gb, state);
    m.cov_nab = quad_cov(Ga, Gb, state);
    m.cov_NX = quad_cov(Gn, Gx, state);
    m.var_X = quad_cov(Gx, Gx, state);
    return m;
}

double mean_total_photons(const GaussianState& state) {
    double total = 0.0;
    for (int j = 0; j < state.n_modes; ++j) {
        const Mat G = number_form(state.n_modes, j);
        total += quad_mean(G, state, -0.5);
    }
    return total;
}

bool is_pure(const GaussianState& state, double tol) {
    const double d = (2.0 * state.cov).determinant();
    return std::abs(d - 1.0) < tol;
}

} // namespace gi
