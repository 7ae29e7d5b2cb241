#ifndef PLAB_ESTIMATOR_HPP
#define PLAB_ESTIMATOR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plab {

struct EstimatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-replica passage outcome: a crossing time, or censored-at-horizon.
struct PassageOutcome {
    std::optional<double> passage_time; // empty: never crossed before the horizon
    bool boundary_touched = false;      // path left the truncated spatial window
};

struct SurvivalCurve {
    std::vector<double> t_grid;
    std::vector<double> survival;
    std::vector<double> ci_halfwidth; // Wilson interval half-width
    double censored_fraction = 0.0;   // boundary-touching replicas, excluded
    double z = 0.0;
    std::size_t replica_count = 0;    // replicas actually used
};

enum class FitMode { pure_power, local_slopes };

struct ExponentFit {
    double theta_hat = 0.0;
    double ci_halfwidth = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    FitMode mode = FitMode::pure_power;
    std::size_t points_used = 0;
    double intercept = 0.0;          // pure_power only
    double residual_rms = 0.0;       // pure_power only
    double suggested_t_hi = 0.0;     // largest usable upper edge when rejected
};

SurvivalCurve survival_curve(const std::vector<PassageOutcome>& outcomes,
                             const std::vector<double>& t_grid, double z, double horizon);

ExponentFit exponent_fit(const SurvivalCurve& curve, double t_lo, double t_hi, FitMode mode);

// Default window: top 2.5 decades of the curve's grid, excluding the last
// half-decade of tail noise.
std::pair<double, double> default_fit_window(const SurvivalCurve& curve);

std::string fit_mode_name(FitMode mode);

} // namespace plab

#endif
