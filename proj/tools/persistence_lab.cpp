#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plab/runner.hpp"
#include "plab/theory.hpp"

using nlohmann::json;

namespace {

json bundle_to_json(const plab::ExponentBundle& b) {
    json j;
    j["beta"] = b.beta;
    j["alpha"] = b.alpha;
    j["vartheta"] = b.vartheta;
    j["rho"] = b.rho;
    j["theta"] = b.theta;
    if (b.alpha_rho) j["alpha_rho"] = *b.alpha_rho;
    return j;
}

void apply_overrides(plab::ExperimentConfig& cfg, const std::optional<std::uint64_t>& seed,
                     const std::optional<unsigned>& workers,
                     const std::optional<std::size_t>& replicas,
                     const std::optional<std::string>& out) {
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (replicas) cfg.replicas = *replicas;
    if (out) cfg.out = *out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistence-lab: Monte Carlo persistence exponents for additive "
                 "functionals of one-dimensional Markov processes"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::size_t> replicas;
    std::optional<std::string> out;

    auto* run = app.add_subcommand("run", "Run an experiment config and write its result bundle");
    run->add_option("config", config_path, "JSON experiment config")->required();
    run->add_option("--seed", seed, "Override the RNG seed");
    run->add_option("--workers", workers, "Override the worker count (0 = hardware)");
    run->add_option("--replicas", replicas, "Override the replica count");
    run->add_option("--out", out, "Override the output directory");

    auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
    validate->add_option("config", config_path, "JSON experiment config")->required();

    auto* theory = app.add_subcommand("theory", "Print the closed-form exponent bundle as JSON");
    std::string family;
    std::vector<double> params;
    theory->add_option("family", family,
                       "ou | kinetic_fp | bessel_walk | srw | integrated_srw | skew_bessel")
        ->required();
    theory->add_option("params", params, "family parameters (skew_bessel: delta eta gamma c+ c-)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            plab::ExperimentConfig cfg = plab::load_config(config_path);
            apply_overrides(cfg, seed, workers, replicas, out);
            plab::RunResult res = plab::run_experiment(cfg);
            json j;
            j["name"] = cfg.name;
            j["status"] = res.status;
            j["out_dir"] = res.out_dir;
            if (res.fit) {
                j["theta_hat"] = res.fit->theta_hat;
                j["ci"] = res.fit->ci_halfwidth;
            }
            std::cout << j.dump(2) << "\n";
            return res.ok ? 0 : 2;
        }
        if (validate->parsed()) {
            plab::ExperimentConfig cfg = plab::load_config(config_path);
            plab::build_chain(cfg);
            json j;
            j["name"] = cfg.name;
            j["valid"] = true;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (theory->parsed()) {
            plab::ExponentBundle b;
            if (family == "skew_bessel") {
                plab::SkewBesselParams p;
                if (params.size() > 0) p.delta = params[0];
                if (params.size() > 1) p.eta = params[1];
                if (params.size() > 2) p.gamma = params[2];
                if (params.size() > 3) p.c_plus = params[3];
                if (params.size() > 4) p.c_minus = params[4];
                b = plab::skew_bessel_params(p);
            } else {
                b = plab::family_exponents(family, params.empty() ? 0.0 : params[0]);
            }
            std::cout << bundle_to_json(b).dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        json j;
        j["error"] = e.what();
        std::cerr << j.dump(2) << "\n";
        return 1;
    }
    return 0;
}
