#include "plab/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace plab {

namespace {

std::size_t segment_index(const std::vector<double>& times, double t) {
    // Largest k with times[k] <= t, capped at the last segment.
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t k = static_cast<std::size_t>(it - times.begin());
    if (k == 0) throw std::invalid_argument("time before path start");
    return std::min(k - 1, times.size() - 2);
}

} // namespace

double FunctionalTrace::zeta_at(double t) const {
    std::size_t k = segment_index(times, t);
    return zeta[k] + slope[k] * (t - times[k]);
}

double FunctionalTrace::xi_at(double t) const {
    std::size_t k = segment_index(times, t);
    // zeta is monotone on each segment, so the sup over [times[k], t] is
    // attained at an endpoint.
    return std::max(xi[k], zeta_at(t));
}

double FunctionalTrace::local_time_at(double t) const {
    double L = 0.0;
    for (std::size_t k = 0; k < zero_starts.size(); ++k) {
        if (zero_starts[k] >= t) break;
        L += (std::min(zero_ends[k], t) - zero_starts[k]) / mass_at_zero;
    }
    return L;
}

double FunctionalTrace::total_local_time() const {
    if (zero_starts.empty()) return 0.0;
    std::size_t last = zero_starts.size() - 1;
    return local_time_at_zero_start[last] + (zero_ends[last] - zero_starts[last]) / mass_at_zero;
}

double FunctionalTrace::tau_at(double t_local) const {
    if (t_local < 0.0 || t_local > total_local_time())
        throw std::invalid_argument("local time outside realized range");
    for (std::size_t k = 0; k < zero_starts.size(); ++k) {
        double L_end = local_time_at_zero_start[k] + (zero_ends[k] - zero_starts[k]) / mass_at_zero;
        if (t_local < L_end || (k + 1 == zero_starts.size() && t_local <= L_end))
            return zero_starts[k] + mass_at_zero * (t_local - local_time_at_zero_start[k]);
    }
    return zero_ends.back();
}

std::vector<double> FunctionalTrace::z_values() const {
    std::vector<double> z;
    z.reserve(zero_starts.size());
    for (double t0 : zero_starts) z.push_back(zeta_at(t0));
    return z;
}

FunctionalTrace compute_trace(const PathTrace& path, const std::vector<double>& f_values,
                              std::size_t zero_index, double mass_at_zero) {
    if (path.jump_times.empty() || path.jump_times.size() != path.site_indices.size())
        throw std::invalid_argument("malformed path");
    if (!(mass_at_zero > 0.0)) throw std::invalid_argument("mass at zero must be > 0");

    FunctionalTrace tr;
    tr.mass_at_zero = mass_at_zero;
    tr.horizon = path.horizon;
    std::size_t n = path.jump_times.size();
    tr.times.reserve(n + 1);
    tr.zeta.reserve(n + 1);
    tr.xi.reserve(n + 1);
    tr.slope.reserve(n);

    double z = 0.0, running_max = 0.0;
    tr.times.push_back(path.jump_times[0]);
    tr.zeta.push_back(0.0);
    tr.xi.push_back(0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double t0 = path.jump_times[k];
        double t1 = k + 1 < n ? path.jump_times[k + 1] : path.horizon;
        double f = f_values[path.site_indices[k]];
        tr.slope.push_back(f);
        z += f * (t1 - t0);
        running_max = std::max(running_max, z);
        tr.times.push_back(t1);
        tr.zeta.push_back(z);
        tr.xi.push_back(running_max);
    }

    // Zero intervals: segments spent at the zero site. The chain only moves
    // by one site per jump, so consecutive segments are never both at 0 and
    // every stay is its own maximal interval.
    double L = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (path.site_indices[k] != zero_index) continue;
        double t0 = path.jump_times[k];
        double t1 = k + 1 < n ? path.jump_times[k + 1] : path.horizon;
        tr.zero_starts.push_back(t0);
        tr.zero_ends.push_back(t1);
        tr.local_time_at_zero_start.push_back(L);
        L += (t1 - t0) / mass_at_zero;
    }
    return tr;
}

std::optional<double> first_passage(const FunctionalTrace& trace, double z) {
    if (!(z > 0.0)) throw std::invalid_argument("barrier must be > 0");
    for (std::size_t k = 0; k + 1 < trace.times.size(); ++k) {
        double z0 = trace.zeta[k], z1 = trace.zeta[k + 1];
        if (z0 >= z) return trace.times[k];
        if (z1 >= z) {
            double f = trace.slope[k];
            return trace.times[k] + (z - z0) / f;
        }
    }
    return std::nullopt;
}

DecompositionQuantities decomposition_quantities(const FunctionalTrace& trace, double t) {
    if (t > trace.horizon) throw std::invalid_argument("t beyond horizon");
    // g_t: start of the current holding interval when at 0, otherwise the end
    // of the last zero interval before t.
    double g = -1.0;
    for (std::size_t k = 0; k < trace.zero_starts.size(); ++k) {
        if (trace.zero_starts[k] > t) break;
        if (t <= trace.zero_ends[k]) { g = trace.zero_starts[k]; break; }
        g = trace.zero_ends[k];
    }
    if (g < 0.0) throw std::invalid_argument("t before the first zero of the path");
    DecompositionQuantities q;
    q.xi_g = trace.xi_at(g);
    q.zeta_g = trace.zeta_at(g);
    q.last_leg = trace.zeta_at(t) - q.zeta_g;
    q.delta = q.last_leg - (q.xi_g - q.zeta_g);
    q.xi = trace.xi_at(t);
    return q;
}

bool sup_identity_check(const FunctionalTrace& trace, double t_local) {
    double tau = trace.tau_at(t_local);
    double lhs = trace.xi_at(tau);
    // Z over [0, t_local]: values of zeta at the zero stays whose local-time
    // range starts at or before t_local.
    double rhs = -1e300;
    for (std::size_t k = 0; k < trace.zero_starts.size(); ++k) {
        if (trace.local_time_at_zero_start[k] > t_local) break;
        rhs = std::max(rhs, trace.zeta_at(trace.zero_starts[k]));
    }
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::abs(lhs - rhs) <= 1e-12 * scale;
}

void export_trace_csv(const PathTrace& path, const FunctionalTrace& trace,
                      const std::vector<double>& sites, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw std::runtime_error("cannot open " + filename);
    out << "t,X,zeta,xi,L\n";
    for (std::size_t k = 0; k < path.jump_times.size(); ++k) {
        double t = path.jump_times[k];
        out << t << ',' << sites[path.site_indices[k]] << ',' << trace.zeta_at(t) << ','
            << trace.xi_at(t) << ',' << trace.local_time_at(t) << '\n';
    }
    out << trace.horizon << ',' << sites[path.site_indices.back()] << ','
        << trace.zeta_at(trace.horizon) << ',' << trace.xi_at(trace.horizon) << ','
        << trace.local_time_at(trace.horizon) << '\n';
}

} // namespace plab
