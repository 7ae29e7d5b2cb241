#ifndef PLAB_TRACE_HPP
#define PLAB_TRACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "plab/excursion.hpp"

namespace plab {

// Every derived quantity of a path, exact at floating-point rounding: zeta is
// piecewise linear with breakpoints at the jumps, never resampled on a grid.
struct FunctionalTrace {
    std::vector<double> times;       // breakpoints, last one = horizon
    std::vector<double> zeta;        // zeta at breakpoints
    std::vector<double> xi;          // running sup of zeta at breakpoints
    std::vector<double> slope;       // f value per segment [times[k], times[k+1])
    // Maximal intervals where the path holds at site 0.
    std::vector<double> zero_starts;
    std::vector<double> zero_ends;
    std::vector<double> local_time_at_zero_start;  // L at each zero interval start
    double mass_at_zero = 1.0;
    double horizon = 0.0;

    double zeta_at(double t) const;
    double xi_at(double t) const;
    double local_time_at(double t) const;
    double total_local_time() const;
    // Right-continuous inverse of the local time.
    double tau_at(double t_local) const;
    // Z_k = zeta during the k-th holding interval at 0.
    std::vector<double> z_values() const;
};

struct DecompositionQuantities {
    double xi_g = 0.0;     // xi_{g_t}
    double zeta_g = 0.0;   // zeta_{g_t}
    double last_leg = 0.0; // I_t = zeta_t - zeta_{g_t}
    double delta = 0.0;    // Delta_t = I_t - (xi_{g_t} - zeta_{g_t})
    double xi = 0.0;       // xi_t
};

FunctionalTrace compute_trace(const PathTrace& path, const std::vector<double>& f_values,
                              std::size_t zero_index, double mass_at_zero);

inline FunctionalTrace compute_trace(const PathTrace& path, const ChainSpec& chain) {
    return compute_trace(path, chain.f_values, chain.zero_index, chain.mass_at_zero);
}

// inf{t > 0 : zeta_t >= z}; none when the path never crosses before horizon.
std::optional<double> first_passage(const FunctionalTrace& trace, double z);

DecompositionQuantities decomposition_quantities(const FunctionalTrace& trace, double t);

// sup over [0, tau_t] of zeta equals the max of Z over [0, t]; true when the
// two sides agree to 1e-12 relative tolerance.
bool sup_identity_check(const FunctionalTrace& trace, double t_local);

// CSV export (t, X, zeta, xi, L) at breakpoints, for figure reproduction.
void export_trace_csv(const PathTrace& path, const FunctionalTrace& trace,
                      const std::vector<double>& sites, const std::string& filename);

} // namespace plab

#endif
