#include "plab/estimator.hpp"

#include <algorithm>
#include <cmath>

namespace plab {

namespace {

double wilson_halfwidth(double p, double n) {
    const double zc = 1.96;
    double denom = 1.0 + zc * zc / n;
    double half = zc / denom * std::sqrt(p * (1.0 - p) / n + zc * zc / (4.0 * n * n));
    return half;
}

} // namespace

SurvivalCurve survival_curve(const std::vector<PassageOutcome>& outcomes,
                             const std::vector<double>& t_grid, double z, double horizon) {
    if (outcomes.size() < 100) throw EstimatorError("survival_curve: need at least 100 replicas");
    for (double t : t_grid)
        if (t > horizon) throw EstimatorError("survival_curve: grid point exceeds the horizon");

    SurvivalCurve out;
    out.t_grid = t_grid;
    out.z = z;

    // Replicas whose path hit the truncated boundary are excluded entirely:
    // keeping them would bias the tail in either direction.
    std::vector<double> times;
    std::size_t used = 0;
    std::size_t touched = 0;
    std::vector<double> sorted_times;
    for (const auto& o : outcomes) {
        if (o.boundary_touched) {
            ++touched;
            continue;
        }
        ++used;
        if (o.passage_time) sorted_times.push_back(*o.passage_time);
    }
    if (used == 0) throw EstimatorError("survival_curve: every replica touched the boundary");
    std::sort(sorted_times.begin(), sorted_times.end());
    out.censored_fraction = double(touched) / double(outcomes.size());
    out.replica_count = used;

    const double n = double(used);
    for (double t : t_grid) {
        auto it = std::upper_bound(sorted_times.begin(), sorted_times.end(), t);
        double crossed = double(it - sorted_times.begin());
        double p = 1.0 - crossed / n;
        out.survival.push_back(p);
        out.ci_halfwidth.push_back(wilson_halfwidth(p, n));
    }
    return out;
}

std::pair<double, double> default_fit_window(const SurvivalCurve& curve) {
    double t_max = curve.t_grid.back();
    double hi = t_max / std::pow(10.0, 0.5);
    double lo = hi / std::pow(10.0, 2.5);
    lo = std::max(lo, curve.t_grid.front());
    return {lo, hi};
}

ExponentFit exponent_fit(const SurvivalCurve& curve, double t_lo, double t_hi, FitMode mode) {
    if (!(t_lo < t_hi)) throw EstimatorError("exponent_fit: empty window");
    if (t_lo < curve.t_grid.front() * 0.999999 || t_hi > curve.t_grid.back() * 1.000001)
        throw EstimatorError("exponent_fit: window outside the grid");

    const double noise_floor = 10.0 / double(curve.replica_count);
    std::vector<double> lt, ls, w, var_log;
    double largest_usable = 0.0;
    for (std::size_t j = 0; j < curve.t_grid.size(); ++j) {
        double t = curve.t_grid[j];
        double s = curve.survival[j];
        if (s > noise_floor) largest_usable = t;
        if (t < t_lo || t > t_hi) continue;
        if (s <= noise_floor) {
            throw EstimatorError("exponent_fit: survival fell below the tail-noise guard inside "
                                 "the window; largest usable upper edge is t = " +
                                 std::to_string(largest_usable));
        }
        lt.push_back(std::log(t));
        ls.push_back(std::log(s));
        // weight = inverse variance of log survival by the delta method
        double sigma = curve.ci_halfwidth[j] / 1.96 / s;
        var_log.push_back(sigma * sigma);
        w.push_back(sigma > 0.0 ? 1.0 / (sigma * sigma) : 1.0);
    }
    if (lt.size() < 6) throw EstimatorError("exponent_fit: fewer than 6 grid points in window");

    ExponentFit out;
    out.window_lo = t_lo;
    out.window_hi = t_hi;
    out.mode = mode;
    out.points_used = lt.size();

    if (mode == FitMode::pure_power) {
        // replicas with exact (noise-free) data have zero CI: fall back to
        // uniform weights so the fit stays well posed
        double wmax = *std::max_element(w.begin(), w.end());
        if (!(wmax > 0.0) || !std::isfinite(wmax)) std::fill(w.begin(), w.end(), 1.0);
        double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lt.size(); ++i) {
            sw += w[i];
            sx += w[i] * lt[i];
            sy += w[i] * ls[i];
            sxx += w[i] * lt[i] * lt[i];
            sxy += w[i] * lt[i] * ls[i];
        }
        double det = sw * sxx - sx * sx;
        double slope = (sw * sxy - sx * sy) / det;
        double inter = (sxx * sy - sx * sxy) / det;
        out.theta_hat = -slope;
        out.intercept = inter;
        double ss = 0.0;
        for (std::size_t i = 0; i < lt.size(); ++i) {
            double r = ls[i] - (inter + slope * lt[i]);
            ss += r * r;
        }
        out.residual_rms = std::sqrt(ss / double(lt.size()));
        // All grid points count the same replicas, so log-survival values at
        // nested times are strongly correlated: for t_i <= t_j the covariance
        // equals the variance at the earlier time. Propagate that covariance
        // through the linear slope estimator; treating the points as
        // independent would understate the interval severely.
        std::vector<double> a(lt.size());
        for (std::size_t i = 0; i < lt.size(); ++i) a[i] = w[i] * (sw * lt[i] - sx) / det;
        double var = 0.0;
        for (std::size_t i = 0; i < lt.size(); ++i)
            for (std::size_t j = 0; j < lt.size(); ++j)
                var += a[i] * a[j] * var_log[std::min(i, j)];
        out.ci_halfwidth = 1.96 * std::sqrt(std::max(var, 0.0));
    } else {
        // median of successive dyadic log-log slopes, spread by IQR: robust
        // to a slowly varying prefactor drifting across the window
        std::vector<double> slopes;
        for (std::size_t i = 0; i + 1 < lt.size(); ++i) {
            std::size_t j = i;
            while (j + 1 < lt.size() && lt[j + 1] - lt[i] < std::log(2.0)) ++j;
            if (j + 1 >= lt.size()) break;
            slopes.push_back(-(ls[j + 1] - ls[i]) / (lt[j + 1] - lt[i]));
        }
        if (slopes.size() < 3) throw EstimatorError("exponent_fit: window too narrow for local slopes");
        std::sort(slopes.begin(), slopes.end());
        auto quantile = [&](double p) {
            double pos = p * double(slopes.size() - 1);
            std::size_t k = std::size_t(pos);
            double fr = pos - double(k);
            return k + 1 < slopes.size() ? slopes[k] * (1 - fr) + slopes[k + 1] * fr : slopes[k];
        };
        out.theta_hat = quantile(0.5);
        out.ci_halfwidth = 0.5 * (quantile(0.75) - quantile(0.25));
    }
    return out;
}

std::string fit_mode_name(FitMode mode) {
    return mode == FitMode::pure_power ? "pure_power" : "local_slopes";
}

} // namespace plab
