#ifndef PLAB_MODEL_HPP
#define PLAB_MODEL_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plab {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strictly increasing continuous map R -> R with s(0) = 0.
class ScaleFunction {
public:
    static ScaleFunction identity();
    // s(x) = sgn(x) (1 - sgn(x) eta) / (2 - delta) |x|^(2-delta)
    static ScaleFunction skew_bessel(double delta, double eta);
    // s'(x) = (1 + x^2)^(mu/2)
    static ScaleFunction kinetic_fp(double mu);
    // s'(x) = exp(x^2 / (2 sigma^2)) up to normalization; Ornstein-Uhlenbeck
    // with drift -x and stationary variance sigma^2 = 1/2 at unit rate.
    static ScaleFunction ornstein_uhlenbeck(double rate);
    // Monotone piecewise-linear interpolation of tabulated values.
    static ScaleFunction tabulated(std::vector<double> breakpoints, std::vector<double> values);

    double operator()(double x) const { return eval_(x); }

private:
    explicit ScaleFunction(std::function<double(double)> eval) : eval_(std::move(eval)) {}
    std::function<double(double)> eval_;
};

// Speed measure, either a density on R or a purely atomic measure. The
// cumulative string uses the m(0) = 0 convention.
class SpeedMeasure {
public:
    static SpeedMeasure lebesgue();
    // dm/dx = |x|^(delta-1) / (1 - sgn(x) eta)
    static SpeedMeasure skew_bessel(double delta, double eta);
    // dm/dx = (1 + x^2)^(-mu/2)
    static SpeedMeasure kinetic_fp(double mu);
    static SpeedMeasure ornstein_uhlenbeck(double rate);
    static SpeedMeasure atomic(std::vector<double> sites, std::vector<double> masses);

    bool is_atomic() const { return !atom_sites_.empty(); }
    const std::vector<double>& atom_sites() const { return atom_sites_; }
    const std::vector<double>& atom_masses() const { return atom_masses_; }
    double density(double x) const { return density_ ? density_(x) : 0.0; }

    // Mass of the interval (a, b]; closed form where available, otherwise
    // adaptive quadrature of the density.
    double mass(double a, double b) const;
    // Cumulative string m(x) with m(0) = 0, i.e. mass of (0, x] (negative x
    // gives -mass((x, 0])).
    double cumulative(double x) const;

private:
    SpeedMeasure() = default;
    std::function<double(double)> density_;
    std::function<double(double)> cumulative_;  // closed-form antiderivative, optional
    std::vector<double> atom_sites_;
    std::vector<double> atom_masses_;
};

// Sign-preserving functional f: f(0) = 0, f >= 0 on (0, inf), f <= 0 on (-inf, 0).
class Functional {
public:
    static Functional identity();
    static Functional sign();
    // f(x) = (c_plus 1{x>0} - c_minus 1{x<0}) |x|^gamma
    static Functional signed_power(double gamma, double c_plus, double c_minus);
    static Functional tabulated(std::vector<double> breakpoints, std::vector<double> values);

    double operator()(double x) const { return eval_(x); }

private:
    explicit Functional(std::function<double(double)> eval) : eval_(std::move(eval)) {}
    std::function<double(double)> eval_;
};

enum class ModelFamily { skew_bessel, ou, kinetic_fp, bessel_walk, srw, custom };

// Continuous-time birth-death chain: the universal simulable object.
// Site i jumps up with probability up_prob[i] after an Exp(hold_rate[i])
// holding time. Boundary sites are reflecting (up_prob forced inward).
struct ChainSpec {
    std::vector<double> sites;      // sorted, contains 0
    std::vector<double> up_prob;    // in (0,1) at interior sites
    std::vector<double> hold_rate;  // > 0
    std::vector<double> f_values;   // f evaluated at sites
    std::size_t zero_index = 0;     // index of site 0
    // Local-time normalization: m L_t = occupation time at site 0,
    // with m the speed-measure mass of the zero cell.
    double mass_at_zero = 1.0;

    void validate() const;
};

struct ModelSpec {
    ModelFamily family = ModelFamily::custom;
    ScaleFunction scale = ScaleFunction::identity();
    SpeedMeasure speed = SpeedMeasure::lebesgue();
    Functional f = Functional::identity();
    // Walk families (bessel_walk, srw) are native chains; others discretize
    // through stone_discretize.
    std::optional<ChainSpec> native_chain;
};

struct BesselWalkParams {
    double mu = 0.0;
    int half_width = 4096;  // sites run over [-half_width, half_width]
    // epsilon_i perturbation, zero when absent
    std::function<double(int)> epsilon;
};

ModelSpec build_model(ModelFamily family, const std::vector<double>& params);
ChainSpec build_bessel_walk(const BesselWalkParams& params, const Functional& f);

// Cumulative strings m^s and m^f of the model (value(0) = 0 convention).
double string_m_s(const ModelSpec& model, double x);
double string_m_f(const ModelSpec& model, double x);

// Grid rule: p_i from scale differences (s(X) is a grid martingale), hold
// rates from speed-measure cell masses so the discrete generator matches
// d/dm d/ds on the grid.
ChainSpec stone_discretize(const ModelSpec& model, const std::vector<double>& grid);

struct TailIndexResult {
    double index = 0.0;
    std::vector<double> residuals;  // log-residuals over the fit window
    double residual_drift = 0.0;    // slope of residuals vs log x (slowly-varying diagnosis)
};

enum class TailSide { plus, minus };

// Least-squares slope of log|string| against log x over the top decade of the
// sampled abscissae.
TailIndexResult tail_index_check(const std::vector<double>& x,
                                 const std::vector<double>& string_values,
                                 TailSide side);

// Exit probability of the chain from (sites[left], sites[right]) through the
// right end, started at start; exact from the scale values (tridiagonal
// harmonic solve collapses to a scale-difference ratio for birth-death chains).
double chain_exit_probability_right(const ChainSpec& chain, std::size_t left,
                                    std::size_t right, std::size_t start);

// Stationary distribution of the chain (exists when positive recurrent on its
// finite window), from detailed balance.
std::vector<double> chain_stationary_distribution(const ChainSpec& chain);

} // namespace plab

#endif
