#ifndef PLAB_THEORY_HPP
#define PLAB_THEORY_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace plab {

struct TheoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed-form exponent bundle for a model family.
struct ExponentBundle {
    double beta = 0.0;     // local-time scaling index of the driving process
    double alpha = 0.0;    // stability index of the auxiliary stable limit
    double vartheta = 0.0; // skewness of the stable limit
    double rho = 0.0;      // positivity parameter of the auxiliary process
    double theta = 0.0;  // persistence exponent, theta = beta * rho
    std::optional<double> alpha_rho; // ladder-time index when meaningful
};

// The positivity parameter of a strictly stable law admits two equivalent
// parameterizations; both are exposed so callers state explicitly which
// inputs they hold.
enum class RhoParameterization {
    // skewness inputs (vartheta, alpha): rho = 1/2 + arctan(vartheta *
    // tan(pi alpha / 2)) / (pi alpha). Rejects alpha == 1.
    skewness,
    // raw tail weights (f_plus, f_minus, alpha): vartheta is formed from
    // (f+^a - f-^a)/(f+^a + f-^a) * tan(pi alpha / 2) and
    // rho = 1/2 + arctan(vartheta) / (pi alpha). At alpha == 1 the third
    // argument is read as the linear drift coefficient instead.
    raw_tails
};

struct SkewBesselParams {
    double delta = 1.0;  // dimension parameter, 0 < delta < 2
    double eta = 0.0;    // skew parameter, -1 < eta < 1
    double gamma = 1.0;  // homogeneity index of f, gamma > -delta
    double c_plus = 1.0; // weight of f on the positive half-line
    double c_minus = 1.0;
};

// rho for a strictly alpha-stable law.
//   skewness:  stable_rho(p, alpha, vartheta, unused)
//   raw_tails: stable_rho(p, alpha, f_plus, f_minus); at alpha == 1 pass
//              the drift coefficient as f_plus.
double stable_rho(RhoParameterization p, double alpha, double a, double b = 0.0);

// Full bundle for the skew Bessel process with a two-sided power functional.
ExponentBundle skew_bessel_params(const SkewBesselParams& params);

// Named families: "ou", "kinetic_fp" (takes mu > -1), "bessel_walk"
// (takes mu in (-1, 1)), "srw", "integrated_srw".
ExponentBundle family_exponents(const std::string& family, double param = 0.0);

} // namespace plab

#endif
