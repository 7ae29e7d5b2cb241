#ifndef PLAB_RUNNER_HPP
#define PLAB_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plab/estimator.hpp"
#include "plab/model.hpp"

namespace plab {

struct RunnerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Experiment kinds: survival (persistence curve + exponent fit),
// positivity (area-walk positivity fraction), renewal (ladder renewal
// function), fluctuation (Phi and kappa tables), decomposition
// (pre-maximum split consistency), nonzero_start (hitting-time exponent
// from a nonzero starting pair), conditioned (trajectories conditioned to
// stay below the barrier).
enum class ExperimentKind {
    survival,
    positivity,
    renewal,
    fluctuation,
    decomposition,
    nonzero_start,
    conditioned
};

struct StartPoint {
    double z0 = 0.0; // initial value of the additive functional
    double x0 = 0.0; // initial position of the driving chain
};

struct ExperimentConfig {
    std::string name;
    ExperimentKind kind = ExperimentKind::survival;

    // model
    std::string family; // srw | bessel_walk | ou | skew_bessel | kinetic_fp
    double mu = 0.0;
    int half_width = 4096;
    double delta = 1.0, eta = 0.0, gamma = 1.0, c_plus = 1.0, c_minus = 1.0;
    double grid_min = -4.0, grid_max = 4.0, grid_step = 0.25;
    std::string f_name = "sign"; // sign | id | signed_power

    double z = 1.0;
    std::optional<StartPoint> start;
    double horizon = 1e4;
    std::size_t replicas = 1000;
    std::uint64_t seed = 1;
    unsigned workers = 0; // 0 = hardware concurrency

    double t_min = 1.0;
    int t_points_per_decade = 16;

    std::string fit_mode = "pure_power";
    std::optional<std::pair<double, double>> fit_window;

    // positivity / renewal
    std::size_t walks = 2000;
    std::size_t blocks = 50;
    std::size_t ladder_count = 64;
    double z_grid_min = 1.0, z_grid_max = 1e6;
    int z_points_per_decade = 4;

    // fluctuation
    double q_min = 1e-4, q_max = 1e-1;
    int q_points_per_decade = 4;
    std::size_t kappa_replicas = 2000;

    // decomposition
    double q = 1e-3;

    // conditioned
    double t_target = 1e3;
    std::size_t count = 10;

    std::uint64_t step_cap = 100'000'000; // per-excursion step budget for walk sampling
    double truncation_budget = 1e-3;
    std::string out = "results";

    std::string raw_json; // canonical serialized form, hashed into the manifest
};

struct RunResult {
    bool ok = true;
    std::string status = "OK";
    std::string out_dir;
    std::vector<std::string> files;
    std::optional<ExponentFit> fit;
    double scalar = 0.0; // kind-specific headline number (fraction, slope, ...)
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

// Resolves the output directory: $PERSISTENCE_LAB_OUT (when set) is used as
// the root under which config.out is placed.
std::string resolve_out_dir(const ExperimentConfig& config);

ChainSpec build_chain(const ExperimentConfig& config);

RunResult run_experiment(const ExperimentConfig& config);
RunResult run_nonzero_start(const ExperimentConfig& config);
RunResult sample_conditioned_trajectories(const ExperimentConfig& config);

// Replica engine shared by run_experiment and the acceptance suite:
// deterministic (worker-count independent) parallel passage sampling.
std::vector<PassageOutcome> run_passage_replicas(const ChainSpec& chain, double barrier,
                                                 double horizon, std::size_t start_site,
                                                 double zeta0, std::size_t replicas,
                                                 std::uint64_t seed, unsigned workers);

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t file_hash(const std::string& path);

} // namespace plab

#endif
