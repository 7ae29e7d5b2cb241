#include "plab/theory.hpp"

#include <cmath>

namespace plab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double stable_rho(RhoParameterization p, double alpha, double a, double b) {
    if (!(alpha > 0.0) || alpha > 2.0)
        throw TheoryError("stable_rho: alpha must lie in (0, 2]");
    if (alpha == 2.0) return 0.5;
    switch (p) {
    case RhoParameterization::skewness: {
        if (alpha == 1.0)
            throw TheoryError("stable_rho: the skewness form is singular at alpha == 1; "
                              "use the raw-tails form with the drift coefficient");
        double vartheta = a;
        if (vartheta < -1.0 || vartheta > 1.0)
            throw TheoryError("stable_rho: vartheta must lie in [-1, 1]");
        return 0.5 + std::atan(vartheta * std::tan(kPi * alpha / 2.0)) / (kPi * alpha);
    }
    case RhoParameterization::raw_tails: {
        if (alpha == 1.0) {
            // a is the linear drift coefficient of the alpha == 1 limit
            return 0.5 + std::atan(a) / kPi;
        }
        double fp = a, fm = b;
        if (fp < 0.0 || fm < 0.0 || fp + fm <= 0.0)
            throw TheoryError("stable_rho: tail weights must be nonnegative, not both zero");
        double pa = std::pow(fp, alpha), ma = std::pow(fm, alpha);
        double vartheta = (pa - ma) / (pa + ma) * std::tan(kPi * alpha / 2.0);
        return 0.5 + std::atan(vartheta) / (kPi * alpha);
    }
    }
    throw TheoryError("stable_rho: unknown parameterization");
}

ExponentBundle skew_bessel_params(const SkewBesselParams& p) {
    if (!(p.delta > 0.0 && p.delta < 2.0))
        throw TheoryError("skew_bessel_params: delta must lie in (0, 2)");
    if (!(p.eta > -1.0 && p.eta < 1.0))
        throw TheoryError("skew_bessel_params: eta must lie in (-1, 1)");
    if (!(p.gamma > -p.delta))
        throw TheoryError("skew_bessel_params: gamma must exceed -delta");
    if (!(p.c_plus > 0.0 && p.c_minus > 0.0))
        throw TheoryError("skew_bessel_params: weights must be positive");
    ExponentBundle out;
    out.beta = 1.0 - p.delta / 2.0;
    out.alpha = (2.0 - p.delta) / (p.gamma + 2.0);
    if (!(out.alpha > 0.0 && out.alpha < 1.0))
        throw TheoryError("skew_bessel_params: this family requires alpha in (0, 1)");
    double r = std::pow(p.c_minus / p.c_plus, out.alpha);
    out.vartheta =
        (1.0 + p.eta - (1.0 - p.eta) * r) / (1.0 + p.eta + (1.0 - p.eta) * r);
    out.rho = stable_rho(RhoParameterization::skewness, out.alpha, out.vartheta);
    out.theta = out.beta * out.rho;
    out.alpha_rho = out.alpha * out.rho;
    return out;
}

ExponentBundle family_exponents(const std::string& family, double param) {
    ExponentBundle out;
    if (family == "ou") {
        out.beta = 1.0;
        out.alpha = 1.0;
        out.rho = 0.5;
        out.theta = 0.5;
        out.alpha_rho = 0.5;
        return out;
    }
    if (family == "kinetic_fp") {
        double mu = param;
        if (!(mu > -1.0))
            throw TheoryError("family_exponents: kinetic_fp requires mu > -1");
        out.beta = (mu + 1.0) / 2.0;
        out.alpha = (mu + 1.0) / 3.0;
        out.rho = 0.5;
        out.theta = out.beta * out.rho;
        out.alpha_rho = out.alpha * out.rho;
        return out;
    }
    if (family == "bessel_walk") {
        double mu = param;
        if (!(mu > -1.0 && mu < 1.0))
            throw TheoryError("family_exponents: bessel_walk requires mu in (-1, 1); "
                              "mu >= 1 gives a positive-recurrent walk with a different "
                              "persistence regime not covered here");
        out.beta = (1.0 + mu) / 2.0;
        out.alpha = (1.0 + mu) / 2.0;
        out.rho = 0.5;
        out.theta = (1.0 + mu) / 4.0;
        out.alpha_rho = out.alpha * out.rho;
        return out;
    }
    if (family == "srw") {
        out.beta = 0.5;
        out.alpha = 0.5;
        out.rho = 0.5;
        out.theta = 0.25;
        out.alpha_rho = 0.25;
        return out;
    }
    if (family == "integrated_srw") {
        // signed-area functional of the simple random walk: stable index 1/3,
        // symmetric limit so rho = 1/2 and the ladder-time index is 1/6
        out.beta = 0.5;
        out.alpha = 1.0 / 3.0;
        out.rho = 0.5;
        out.theta = 0.25;
        out.alpha_rho = 1.0 / 6.0;
        return out;
    }
    throw TheoryError("family_exponents: unknown family '" + family + "'");
}

} // namespace plab
