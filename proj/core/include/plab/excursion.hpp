#ifndef PLAB_EXCURSION_HPP
#define PLAB_EXCURSION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plab/model.hpp"
#include "plab/rng.hpp"

namespace plab {

// Piecewise-constant sample path. Segment k occupies
// [jump_times[k], jump_times[k+1]) at site_indices[k]; the last segment runs
// to the horizon.
struct PathTrace {
    std::vector<double> jump_times;      // starts at 0, strictly increasing
    std::vector<std::size_t> site_indices;
    double horizon = 0.0;
    bool boundary_touched = false;
};

// One excursion away from 0. The length excludes the initial holding at 0:
// the clock starts at the jump out of 0 and stops at the return.
struct ExcursionSample {
    double length = 0.0;     // ell
    double area = 0.0;       // F = int_0^ell f
    double amplitude = 0.0;  // sup |site value|
    int sign = 0;            // +1 or -1
    bool censored = false;   // hit the step cap before returning
    bool boundary_touched = false;
};

struct LevyIncrement {
    double delta_tau = 0.0;
    double delta_z = 0.0;
    std::uint64_t excursion_count = 0;
    std::uint64_t censored_count = 0;
};

inline constexpr std::uint64_t kDefaultStepCap = 100'000'000;

// Excursion launch rate per unit local time: every departure from 0 opens an
// excursion; occupation at 0 per unit local time is m, departures per unit
// occupation happen at the holding rate.
inline double excursion_rate(const ChainSpec& chain) {
    // A single-site chain has no excursions: the inverse local time is pure
    // drift. Used as a degenerate test double.
    if (chain.sites.size() < 2) return 0.0;
    return chain.hold_rate[chain.zero_index] * chain.mass_at_zero;
}

ExcursionSample sample_excursion(const ChainSpec& chain, RngStream& rng,
                                 std::uint64_t step_cap = kDefaultStepCap);

// One increment of the bivariate subordinator (tau, Z) over the given stretch
// of local time: drift m * t from the holding at 0 plus a Poisson number of
// excursion contributions. Exact for chains (0 is a holding point).
LevyIncrement sample_levy_increment(const ChainSpec& chain, double local_time_units,
                                    RngStream& rng, std::uint64_t step_cap = kDefaultStepCap);

PathTrace sample_path(const ChainSpec& chain, double horizon, std::size_t start_site,
                      RngStream& rng);

// Outcome of a single persistence replica, simulated without storing the path.
struct PassageResult {
    std::optional<double> passage_time;  // none = censored at horizon
    bool boundary_touched = false;
    std::uint64_t steps = 0;
};

// First time z0 + zeta crosses level z (>= z), chain started at start_site.
// Stops stepping as soon as the crossing happens; the crossing time is exact
// by linear interpolation within the crossing hold.
PassageResult simulate_passage(const ChainSpec& chain, double barrier, double horizon,
                               std::size_t start_site, double zeta0, RngStream& rng);

// Binary path dump, little-endian (f64 time, i32 site index) per jump.
void dump_path(const PathTrace& trace, const std::string& filename);

} // namespace plab

#endif
