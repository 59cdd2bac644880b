#ifndef GI_ERRORS_HPP
#define GI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gi {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Williamson input is not positive definite.
struct not_positive_definite : error {
    using error::error;
};

// 2*lam_j^2*lam_k^2 - 1/8 vanishes while the matching numerator entry does not.
struct singular_quotient : error {
    using error::error;
};

// |d<X>/dphi| below threshold: the working point is blind.
struct vanishing_slope : error {
    using error::error;
};

// No nonnegative (alpha, gamma) solves the photon-budget constraint.
struct infeasible_params : error {
    using error::error;
};

// Closed-form denominator vanishes with nonzero numerator (beta = 1/2, beta_tot < 1).
struct divergent_sensitivity : error {
    using error::error;
};

// Every point of a grid scan evaluated to +inf.
struct all_infeasible : error {
    using error::error;
};

// Variance assembled more negative than the floating-point tolerance allows.
struct inconsistent_moments : error {
    using error::error;
};

} // namespace gi

#endif
