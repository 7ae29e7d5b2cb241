#ifndef PLAB_FLUCTUATION_HPP
#define PLAB_FLUCTUATION_HPP

#include <cstdint>
#include <vector>

#include "plab/excursion.hpp"
#include "plab/model.hpp"
#include "plab/rng.hpp"

namespace plab {

// Sampled auxiliary Levy walk: steps are per-block sums of excursion areas,
// with their tau companions.
struct AreaWalk {
    std::vector<double> steps;
    std::vector<double> partial_sums;
    std::vector<double> tau_increments;
    std::uint64_t censored_excursions = 0;
    std::uint64_t total_excursions = 0;

    void push(double step, double dtau);
};

// Strict ascending ladder points of the partial-sum walk; S_0 = 0 counts as
// the 0th ladder point, ties with the running max are excluded.
struct LadderDecomposition {
    std::vector<std::size_t> epochs;
    std::vector<double> heights;
    std::vector<double> tau_at_epochs;
};

struct RenewalTable {
    std::vector<double> z_grid;
    std::vector<double> renewal;       // Vhat(z)
    std::vector<double> ci_halfwidth;
    double excluded_fraction = 0.0;    // walks with fewer than K ladder points
};

struct PhiTable {
    std::vector<double> q_grid;
    std::vector<double> phi;
    std::vector<double> ci_halfwidth;
    std::vector<bool> usable;  // false when the sample mean underflowed
};

struct KappaTables {
    std::vector<double> q_grid;
    // log kappa(0,q,0) and log kappa-bar(0,q,0) up to the common additive
    // constant log c, which is never estimated.
    std::vector<double> log_kappa_plus;
    std::vector<double> log_kappa_minus;
    std::vector<double> phi;            // Phi-hat(q) from the same replicas at t = 1
    std::vector<double> head_bound;     // truncation bound below t_min
    std::vector<double> tail_bound;     // truncation bound above t_max
    std::vector<bool> flagged;          // truncation bound exceeded the tolerance
};

struct KappaConfig {
    double t_min = 1e-4;
    double t_max = 0.0;        // 0 = auto from min(q_grid): both exponentials < 1e-12
    int points_per_decade = 64;
    std::size_t replicas = 2000;
    double tolerance = 1e-2;   // acceptable truncation bound on log kappa
    unsigned workers = 1;
    std::uint64_t step_cap = 10'000'000;
};

struct PositivitySummary {
    double fraction = 0.0;        // terminal fraction of 1{S_n >= 0}
    double cesaro = 0.0;          // Cesaro mean of the running fraction
    std::vector<double> running;  // running fraction at each n
};

LadderDecomposition ladder_heights(const AreaWalk& walk);

RenewalTable renewal_estimate(const std::vector<AreaWalk>& walks,
                              const std::vector<double>& z_grid, std::size_t ladder_count = 64);

PhiTable phi_estimate(const std::vector<double>& delta_tau_samples,
                      const std::vector<double>& q_grid);

KappaTables kappa_estimate(const ChainSpec& chain, const std::vector<double>& q_grid,
                           const KappaConfig& config, std::uint64_t seed);

PositivitySummary spitzer_and_positivity(const AreaWalk& walk);

// Sampling helper: walk of n blocks, each block the sum of a fixed number of
// excursion areas. Censored excursions are skipped and counted.
AreaWalk sample_area_walk(const ChainSpec& chain, std::size_t blocks,
                          std::size_t excursions_per_block, RngStream& rng,
                          std::uint64_t step_cap = kDefaultStepCap);

} // namespace plab

#endif
