#include "plab/excursion.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace plab {

ExcursionSample sample_excursion(const ChainSpec& chain, RngStream& rng, std::uint64_t step_cap) {
    const std::size_t zi = chain.zero_index;
    const std::size_t top = chain.sites.size() - 1;
    ExcursionSample out;

    // First jump out of 0: up with probability p_0.
    bool up = rng.bernoulli(chain.up_prob[zi]);
    std::size_t site = up ? zi + 1 : zi - 1;
    out.sign = up ? +1 : -1;

    for (std::uint64_t step = 0; step < step_cap; ++step) {
        double hold = rng.exponential(chain.hold_rate[site]);
        out.length += hold;
        out.area += chain.f_values[site] * hold;
        double amp = std::abs(chain.sites[site]);
        if (amp > out.amplitude) out.amplitude = amp;
        if (site == 0 || site == top) out.boundary_touched = true;
        site = rng.bernoulli(chain.up_prob[site]) ? site + 1 : site - 1;
        if (site == zi) return out;
    }
    out.censored = true;
    return out;
}

LevyIncrement sample_levy_increment(const ChainSpec& chain, double local_time_units,
                                    RngStream& rng, std::uint64_t step_cap) {
    if (!(local_time_units > 0.0)) throw std::invalid_argument("local_time_units must be > 0");
    LevyIncrement inc;
    inc.delta_tau = chain.mass_at_zero * local_time_units;
    double rate = excursion_rate(chain);
    // Sum exponential local-time gaps rather than drawing a Poisson count;
    // the excursion cost dominates anyway.
    double t = rng.exponential(rate);
    while (t < local_time_units) {
        ExcursionSample exc = sample_excursion(chain, rng, step_cap);
        ++inc.excursion_count;
        if (exc.censored) {
            ++inc.censored_count;
        } else {
            inc.delta_tau += exc.length;
            inc.delta_z += exc.area;
        }
        t += rng.exponential(rate);
    }
    return inc;
}

PathTrace sample_path(const ChainSpec& chain, double horizon, std::size_t start_site,
                      RngStream& rng) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    if (start_site >= chain.sites.size()) throw std::invalid_argument("start site out of range");
    PathTrace trace;
    trace.horizon = horizon;
    const std::size_t top = chain.sites.size() - 1;
    double t = 0.0;
    std::size_t site = start_site;
    trace.jump_times.push_back(0.0);
    trace.site_indices.push_back(site);
    for (;;) {
        if (site == 0 || site == top) trace.boundary_touched = true;
        t += rng.exponential(chain.hold_rate[site]);
        if (t >= horizon) break;
        site = rng.bernoulli(chain.up_prob[site]) ? site + 1 : site - 1;
        trace.jump_times.push_back(t);
        trace.site_indices.push_back(site);
    }
    return trace;
}

PassageResult simulate_passage(const ChainSpec& chain, double barrier, double horizon,
                               std::size_t start_site, double zeta0, RngStream& rng) {
    PassageResult res;
    const std::size_t top = chain.sites.size() - 1;
    double t = 0.0;
    double zeta = zeta0;
    std::size_t site = start_site;
    // A start strictly above the barrier, or exactly at it without an
    // immediate downward drift, has already crossed at t = 0. Starting at
    // the barrier with f(start) < 0 means the passage is the first return.
    if (zeta > barrier || (zeta == barrier && chain.f_values[start_site] >= 0.0)) {
        res.passage_time = 0.0;
        return res;
    }
    while (t < horizon) {
        if (site == 0 || site == top) res.boundary_touched = true;
        double f = chain.f_values[site];
        double hold = rng.exponential(chain.hold_rate[site]);
        ++res.steps;
        if (f > 0.0 && zeta + f * hold >= barrier) {
            double cross = t + (barrier - zeta) / f;
            if (cross <= horizon) {
                res.passage_time = cross;
                return res;
            }
        }
        t += hold;
        zeta += f * hold;
        if (t >= horizon) break;
        site = rng.bernoulli(chain.up_prob[site]) ? site + 1 : site - 1;
    }
    return res;  // censored at horizon
}

void dump_path(const PathTrace& trace, const std::string& filename) {
    std::FILE* fp = std::fopen(filename.c_str(), "wb");
    if (!fp) throw std::runtime_error("cannot open path dump file: " + filename);
    for (std::size_t k = 0; k < trace.jump_times.size(); ++k) {
        double t = trace.jump_times[k];
        std::int32_t site = static_cast<std::int32_t>(trace.site_indices[k]);
        // Little-endian layout; this code targets little-endian hosts.
        std::fwrite(&t, sizeof(double), 1, fp);
        std::fwrite(&site, sizeof(std::int32_t), 1, fp);
    }
    std::fclose(fp);
}

} // namespace plab
