#include "plab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "plab/excursion.hpp"
#include "plab/fluctuation.hpp"
#include "plab/theory.hpp"
#include "plab/trace.hpp"

namespace plab {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RunnerError("file_hash: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string bytes = ss.str();
    return fnv1a64(bytes.data(), bytes.size());
}

namespace {

ExperimentKind kind_from_string(const std::string& s) {
    if (s == "survival") return ExperimentKind::survival;
    if (s == "positivity") return ExperimentKind::positivity;
    if (s == "renewal") return ExperimentKind::renewal;
    if (s == "fluctuation") return ExperimentKind::fluctuation;
    if (s == "decomposition") return ExperimentKind::decomposition;
    if (s == "nonzero_start") return ExperimentKind::nonzero_start;
    if (s == "conditioned") return ExperimentKind::conditioned;
    throw RunnerError("unknown experiment kind '" + s + "'");
}

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
    std::vector<double> g;
    double lg0 = std::log10(lo);
    for (int k = 0;; ++k) {
        double v = std::pow(10.0, lg0 + double(k) / double(points_per_decade));
        if (v > hi * 1.0000001) break;
        g.push_back(v);
    }
    if (g.empty() || g.back() < hi * 0.999999) g.push_back(hi);
    return g;
}

unsigned effective_workers(const ExperimentConfig& c) {
    if (c.workers > 0) return c.workers;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

std::string csv_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RunnerError("cannot write " + path);
    out << content;
}

struct ManifestBuilder {
    json j;
    std::string dir;
    explicit ManifestBuilder(const ExperimentConfig& c, const std::string& out_dir) : dir(out_dir) {
        j["name"] = c.name;
        j["seed"] = c.seed;
        char hash[32];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      (unsigned long long)fnv1a64(c.raw_json.data(), c.raw_json.size()));
        j["config_hash"] = hash;
        j["files"] = json::array();
        j["status"] = "OK";
    }
    void add(const std::string& filename) {
        char hash[32];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      (unsigned long long)file_hash(dir + "/" + filename));
        j["files"].push_back({{"path", filename}, {"hash", hash}});
    }
    void finish(RunResult& r) {
        j["status"] = r.status;
        write_file(dir + "/manifest.json", j.dump(2) + "\n");
        r.files.push_back("manifest.json");
        for (const auto& f : j["files"]) r.files.push_back(f["path"].get<std::string>());
    }
};

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw RunnerError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig c;
    c.raw_json = j.dump();
    c.name = j.value("name", "unnamed");
    c.kind = kind_from_string(j.value("kind", "survival"));
    json m = j.value("model", json::object());
    c.family = m.value("family", "srw");
    c.mu = m.value("mu", 0.0);
    c.half_width = m.value("half_width", 4096);
    c.delta = m.value("delta", 1.0);
    c.eta = m.value("eta", 0.0);
    c.gamma = m.value("gamma", 1.0);
    c.c_plus = m.value("c_plus", 1.0);
    c.c_minus = m.value("c_minus", 1.0);
    c.grid_min = m.value("grid_min", -4.0);
    c.grid_max = m.value("grid_max", 4.0);
    c.grid_step = m.value("grid_step", 0.25);
    c.f_name = j.value("f", std::string("sign"));
    c.z = j.value("z", 1.0);
    if (j.contains("start")) {
        StartPoint s;
        s.z0 = j["start"].value("z0", 0.0);
        s.x0 = j["start"].value("x0", 0.0);
        c.start = s;
    }
    c.horizon = j.value("horizon", 1e4);
    c.replicas = j.value("replicas", std::size_t(1000));
    c.seed = j.value("seed", std::uint64_t(1));
    c.workers = j.value("workers", 0u);
    c.t_min = j.value("t_min", 1.0);
    c.t_points_per_decade = j.value("t_points_per_decade", 16);
    json f = j.value("fit", json::object());
    c.fit_mode = f.value("mode", std::string("pure_power"));
    if (f.contains("window"))
        c.fit_window = std::make_pair(f["window"][0].get<double>(), f["window"][1].get<double>());
    c.walks = j.value("walks", std::size_t(2000));
    c.blocks = j.value("blocks", std::size_t(50));
    c.ladder_count = j.value("ladder_count", std::size_t(64));
    c.z_grid_min = j.value("z_grid_min", 1.0);
    c.z_grid_max = j.value("z_grid_max", 1e6);
    c.z_points_per_decade = j.value("z_points_per_decade", 4);
    c.q_min = j.value("q_min", 1e-4);
    c.q_max = j.value("q_max", 1e-1);
    c.q_points_per_decade = j.value("q_points_per_decade", 4);
    c.kappa_replicas = j.value("kappa_replicas", std::size_t(2000));
    c.q = j.value("q", 1e-3);
    c.t_target = j.value("t_target", 1e3);
    c.count = j.value("count", std::size_t(10));
    c.step_cap = j.value("step_cap", std::uint64_t(100000000));
    c.truncation_budget = j.value("truncation_budget", 1e-3);
    c.out = j.value("out", std::string("results/") + c.name);
    if (c.replicas == 0) throw RunnerError("replicas must be positive");
    if (!(c.horizon > 0.0)) throw RunnerError("horizon must be positive");
    if (c.workers > 1024) throw RunnerError("workers out of range");
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RunnerError("cannot open config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string resolve_out_dir(const ExperimentConfig& config) {
    const char* root = std::getenv("PERSISTENCE_LAB_OUT");
    fs::path p = root && *root ? fs::path(root) / config.out : fs::path(config.out);
    fs::create_directories(p);
    return p.string();
}

ChainSpec build_chain(const ExperimentConfig& c) {
    Functional f = Functional::identity();
    if (c.f_name == "sign")
        f = Functional::sign();
    else if (c.f_name == "id" || c.f_name == "identity")
        f = Functional::identity();
    else if (c.f_name == "signed_power")
        f = Functional::signed_power(c.gamma, c.c_plus, c.c_minus);
    else
        throw RunnerError("unknown functional '" + c.f_name + "'");

    if (c.family == "srw" || c.family == "bessel_walk") {
        BesselWalkParams wp;
        wp.mu = c.family == "srw" ? 0.0 : c.mu;
        wp.half_width = c.half_width;
        return build_bessel_walk(wp, f);
    }
    ModelSpec model;
    if (c.family == "ou")
        model = build_model(ModelFamily::ou, {});
    else if (c.family == "skew_bessel")
        model = build_model(ModelFamily::skew_bessel, {c.delta, c.eta, c.gamma, c.c_plus, c.c_minus});
    else if (c.family == "kinetic_fp")
        model = build_model(ModelFamily::kinetic_fp, {c.mu});
    else
        throw RunnerError("unknown model family '" + c.family + "'");
    model.f = f;
    std::vector<double> grid;
    // grid must contain 0 exactly: build outward from 0 in both directions
    for (double x = 0.0; x >= c.grid_min - 1e-12; x -= c.grid_step) grid.push_back(x);
    std::reverse(grid.begin(), grid.end());
    for (double x = c.grid_step; x <= c.grid_max + 1e-12; x += c.grid_step) grid.push_back(x);
    return stone_discretize(model, grid);
}

std::vector<PassageOutcome> run_passage_replicas(const ChainSpec& chain, double barrier,
                                                 double horizon, std::size_t start_site,
                                                 double zeta0, std::size_t replicas,
                                                 std::uint64_t seed, unsigned workers) {
    std::vector<PassageOutcome> out(replicas);
    workers = std::max(1u, workers);
    std::size_t chunk = (replicas + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = std::min(replicas, std::size_t(w) * chunk);
        std::size_t hi = std::min(replicas, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t r = lo; r < hi; ++r) {
                RngStream rng(seed, r);
                PassageResult res = simulate_passage(chain, barrier, horizon, start_site, zeta0, rng);
                out[r].passage_time = res.passage_time;
                out[r].boundary_touched = res.boundary_touched;
            }
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

namespace {

void write_survival_outputs(const ExperimentConfig& c, const SurvivalCurve& curve,
                            const std::string& dir, ManifestBuilder& mb, RunResult& result) {
    std::ostringstream csv;
    csv << "t,survival,ci\n";
    for (std::size_t j = 0; j < curve.t_grid.size(); ++j)
        csv << csv_num(curve.t_grid[j]) << ',' << csv_num(curve.survival[j]) << ','
            << csv_num(curve.ci_halfwidth[j]) << '\n';
    write_file(dir + "/survival.csv", csv.str());
    mb.add("survival.csv");

    auto [wlo, whi] = c.fit_window ? *c.fit_window : default_fit_window(curve);
    FitMode mode = c.fit_mode == "local_slopes" ? FitMode::local_slopes : FitMode::pure_power;
    ExponentFit fit = exponent_fit(curve, wlo, whi, mode);
    json jf;
    jf["theta_hat"] = fit.theta_hat;
    jf["ci"] = fit.ci_halfwidth;
    jf["window"] = {fit.window_lo, fit.window_hi};
    jf["mode"] = fit_mode_name(fit.mode);
    jf["censored_fraction"] = curve.censored_fraction;
    write_file(dir + "/fit.json", jf.dump(2) + "\n");
    mb.add("fit.json");
    result.fit = fit;
    result.scalar = fit.theta_hat;

    if (curve.censored_fraction > c.truncation_budget) {
        result.ok = false;
        result.status = "FAILED";
        mb.j["diagnostics"] = {{"reason", "truncation budget exceeded"},
                               {"censored_fraction", curve.censored_fraction},
                               {"budget", c.truncation_budget}};
    }
}

RunResult run_survival(const ExperimentConfig& c) {
    RunResult result;
    std::string dir = resolve_out_dir(c);
    result.out_dir = dir;
    ManifestBuilder mb(c, dir);
    ChainSpec chain = build_chain(c);
    auto outcomes = run_passage_replicas(chain, c.z, c.horizon, chain.zero_index, 0.0, c.replicas,
                                         c.seed, effective_workers(c));
    std::vector<double> t_grid = log_grid(c.t_min, c.horizon, c.t_points_per_decade);
    SurvivalCurve curve = survival_curve(outcomes, t_grid, c.z, c.horizon);
    write_survival_outputs(c, curve, dir, mb, result);
    mb.finish(result);
    return result;
}

RunResult run_positivity(const ExperimentConfig& c) {
    RunResult result;
    std::string dir = resolve_out_dir(c);
    result.out_dir = dir;
    ManifestBuilder mb(c, dir);
    ChainSpec chain = build_chain(c);

    std::vector<std::vector<double>> running(c.walks);
    unsigned workers = effective_workers(c);
    std::size_t chunk = (c.walks + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = std::min(c.walks, std::size_t(w) * chunk);
        std::size_t hi = std::min(c.walks, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t r = lo; r < hi; ++r) {
                RngStream rng(c.seed, r);
                AreaWalk walk = sample_area_walk(chain, c.blocks, 1, rng, c.step_cap);
                running[r] = spitzer_and_positivity(walk).running;
            }
        });
    }
    for (auto& th : pool) th.join();

    std::ostringstream csv;
    csv << "n,positivity\n";
    double terminal_sum = 0.0;
    for (std::size_t n = 0; n < c.blocks; ++n) {
        double s = 0.0;
        for (std::size_t r = 0; r < c.walks; ++r) s += running[r][n];
        double mean = s / double(c.walks);
        csv << (n + 1) << ',' << csv_num(mean) << '\n';
        if (n + 1 == c.blocks) terminal_sum = mean;
    }
    write_file(dir + "/positivity.csv", csv.str());
    mb.add("positivity.csv");
    result.scalar = terminal_sum;
    json js;
    js["positivity_fraction"] = terminal_sum;
    js["walks"] = c.walks;
    js["blocks"] = c.blocks;
    write_file(dir + "/positivity.json", js.dump(2) + "\n");
    mb.add("positivity.json");
    mb.finish(result);
    return result;
}

RunResult run_renewal(const ExperimentConfig& c) {
    RunResult result;
    std::string dir = resolve_out_dir(c);
    result.out_dir = dir;
    ManifestBuilder mb(c, dir);
    ChainSpec chain = build_chain(c);

    std::vector<AreaWalk> walks(c.walks);
    unsigned workers = effective_workers(c);
    std::size_t chunk = (c.walks + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = std::min(c.walks, std::size_t(w) * chunk);
        std::size_t hi = std::min(c.walks, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t r = lo; r < hi; ++r) {
                RngStream rng(c.seed, r);
                walks[r] = sample_area_walk(chain, c.blocks, 1, rng, c.step_cap);
            }
        });
    }
    for (auto& th : pool) th.join();

    std::vector<double> z_grid = log_grid(c.z_grid_min, c.z_grid_max, c.z_points_per_decade);
    RenewalTable table = renewal_estimate(walks, z_grid, c.ladder_count);
    std::ostringstream csv;
    csv << "z,renewal,ci\n";
    for (std::size_t j = 0; j < z_grid.size(); ++j)
        csv << csv_num(table.z_grid[j]) << ',' << csv_num(table.renewal[j]) << ','
            << csv_num(table.ci_halfwidth[j]) << '\n';
    write_file(dir + "/renewal.csv", csv.str());
    mb.add("renewal.csv");
    result.scalar = table.renewal.back();
    mb.finish(result);
    return result;
}

RunResult run_fluctuation(const ExperimentConfig& c) {
    RunResult result;
    std::string dir = resolve_out_dir(c);
    result.out_dir = dir;
    ManifestBuilder mb(c, dir);
    ChainSpec chain = build_chain(c);

    std::vector<double> q_grid = log_grid(c.q_min, c.q_max, c.q_points_per_decade);
    KappaConfig kc;
    kc.replicas = c.kappa_replicas;
    kc.workers = effective_workers(c);
    KappaTables kappa = kappa_estimate(chain, q_grid, kc, c.seed);

    // independent unit-local-time increments feed the Phi table with a CI
    std::vector<double> dtau(c.kappa_replicas);
    for (std::size_t r = 0; r < c.kappa_replicas; ++r) {
        RngStream rng(c.seed + 0x517cc1b727220a95ULL, r);
        dtau[r] = sample_levy_increment(chain, 1.0, rng).delta_tau;
    }
    PhiTable phi = phi_estimate(dtau, q_grid);

    std::ostringstream csv;
    csv << "q,phi,phi_ci,kappa_plus,kappa_minus\n";
    for (std::size_t j = 0; j < q_grid.size(); ++j)
        csv << csv_num(q_grid[j]) << ',' << csv_num(phi.phi[j]) << ',' << csv_num(phi.ci_halfwidth[j])
            << ',' << csv_num(std::exp(kappa.log_kappa_plus[j])) << ','
            << csv_num(std::exp(kappa.log_kappa_minus[j])) << '\n';
    write_file(dir + "/fluctuation.csv", csv.str());
    mb.add("fluctuation.csv");
    bool flagged = false;
    for (bool f : kappa.flagged) flagged = flagged || f;
    if (flagged) {
        result.ok = false;
        result.status = "FAILED";
        mb.j["diagnostics"] = {{"reason", "kappa truncation bound exceeded tolerance"}};
    }
    mb.finish(result);
    return result;
}

RunResult run_decomposition(const ExperimentConfig& c) {
    RunResult result;
    std::string dir = resolve_out_dir(c);
    result.out_dir = dir;
    ManifestBuilder mb(c, dir);
    ChainSpec chain = build_chain(c);

    struct Rec {
        double xi = 0.0, xi_g = 0.0, delta = 0.0;
        bool valid = false;
    };
    std::vector<Rec> recs(c.replicas);
    unsigned workers = effective_workers(c);
    std::size_t chunk = (c.replicas + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = std::min(c.replicas, std::size_t(w) * chunk);
        std::size_t hi = std::min(c.replicas, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t r = lo; r < hi; ++r) {
                RngStream rng(c.seed, r);
                double e = rng.exponential(c.q);
                PathTrace path = sample_path(chain, e, chain.zero_index, rng);
                FunctionalTrace tr = compute_trace(path, chain);
                DecompositionQuantities dq = decomposition_quantities(tr, e);
                recs[r] = {dq.xi, dq.xi_g, dq.delta, true};
            }
        });
    }
    for (auto& th : pool) th.join();

    // LHS: P(xi_e < z). RHS uses the independence of the pre-maximum part
    // and the final stretch at an exponential time: pair each replica's
    // xi_g with the next replica's delta to form independent draws.
    double z = c.z;
    std::size_t n = 0, lhs_cnt = 0, rhs_cnt = 0;
    for (std::size_t r = 0; r < recs.size(); ++r) {
        if (!recs[r].valid) continue;
        const Rec& a = recs[r];
        const Rec& b = recs[(r + 1) % recs.size()];
        if (!b.valid) continue;
        ++n;
        if (a.xi < z) ++lhs_cnt;
        if (b.delta <= 0.0 ? a.xi_g < z : (b.delta < z && a.xi_g + b.delta < z)) ++rhs_cnt;
    }
    double lhs = double(lhs_cnt) / double(n);
    double rhs = double(rhs_cnt) / double(n);
    double sigma = std::sqrt(lhs * (1 - lhs) / double(n)) + std::sqrt(rhs * (1 - rhs) / double(n));
    json js;
    js["z"] = z;
    js["q"] = c.q;
    js["lhs"] = lhs;
    js["rhs"] = rhs;
    js["joint_sigma"] = sigma;
    js["agree_3sigma"] = std::abs(lhs - rhs) <= 3.0 * sigma;
    write_file(dir + "/decomposition.json", js.dump(2) + "\n");
    mb.add("decomposition.json");
    result.scalar = lhs - rhs;
    if (!js["agree_3sigma"].get<bool>()) {
        result.ok = false;
        result.status = "FAILED";
    }
    mb.finish(result);
    return result;
}

} // namespace

RunResult run_nonzero_start(const ExperimentConfig& c) {
    if (!c.start) throw RunnerError("nonzero_start requires a start block");
    double z0 = c.start->z0, x0 = c.start->x0;
    bool admissible = z0 < 0.0 || (z0 == 0.0 && x0 < 0.0);
    if (!admissible)
        throw RunnerError("inadmissible starting pair: need z0 < 0, or z0 == 0 with x0 < 0");

    RunResult result;
    std::string dir = resolve_out_dir(c);
    result.out_dir = dir;
    ManifestBuilder mb(c, dir);
    ChainSpec chain = build_chain(c);
    // starting site: the grid site nearest to x0
    std::size_t start_site = 0;
    double best = 1e300;
    for (std::size_t i = 0; i < chain.sites.size(); ++i) {
        double d = std::abs(chain.sites[i] - x0);
        if (d < best) {
            best = d;
            start_site = i;
        }
    }
    // hitting time of level 0 from below
    auto outcomes = run_passage_replicas(chain, 0.0, c.horizon, start_site, z0, c.replicas, c.seed,
                                         effective_workers(c));
    std::vector<double> t_grid = log_grid(c.t_min, c.horizon, c.t_points_per_decade);
    SurvivalCurve curve = survival_curve(outcomes, t_grid, 0.0, c.horizon);
    write_survival_outputs(c, curve, dir, mb, result);
    mb.finish(result);
    return result;
}

RunResult sample_conditioned_trajectories(const ExperimentConfig& c) {
    RunResult result;
    std::string dir = resolve_out_dir(c);
    result.out_dir = dir;
    ManifestBuilder mb(c, dir);
    ChainSpec chain = build_chain(c);

    // pilot: acceptance probability must not be hopeless. A target of zero is
    // unconstrained (every path survives to time zero), so no pilot is needed
    // and the trajectories run to the plain horizon.
    const std::size_t pilot = 2000;
    std::size_t accepted = pilot;
    const double traj_horizon = c.t_target > 0.0 ? c.t_target : c.horizon;
    if (c.t_target > 0.0) {
        accepted = 0;
        for (std::size_t r = 0; r < pilot; ++r) {
            RngStream rng(c.seed + 0x9e3779b97f4a7c15ULL, r);
            PassageResult res =
                simulate_passage(chain, c.z, c.t_target, chain.zero_index, 0.0, rng);
            if (!res.passage_time && !res.boundary_touched) ++accepted;
        }
    }
    double rate = std::max(double(accepted) / double(pilot), 0.5 / double(pilot));
    if (c.t_target > 0.0 && rate < 1e-5)
        throw RunnerError("conditioned sampling rejected: pilot acceptance below 1e-5");

    std::size_t got = 0;
    json js;
    js["acceptance_estimate"] = double(accepted) / double(pilot);
    js["t_target"] = c.t_target;
    for (std::uint64_t r = 0; got < c.count; ++r) {
        if (r > 1000 + std::uint64_t(100.0 * double(c.count) / rate))
            throw RunnerError("conditioned sampling stalled: acceptance far below the pilot estimate");
        RngStream rng(c.seed, r);
        PathTrace path = sample_path(chain, traj_horizon, chain.zero_index, rng);
        if (path.boundary_touched) continue;
        FunctionalTrace tr = compute_trace(path, chain);
        if (c.t_target > 0.0) {
            auto fp = first_passage(tr, c.z);
            if (fp && *fp <= c.t_target) continue;
        }
        std::ostringstream csv;
        csv << "t,X,zeta\n";
        for (std::size_t k = 0; k < path.jump_times.size(); ++k) {
            double t = path.jump_times[k];
            csv << csv_num(t) << ',' << csv_num(chain.sites[path.site_indices[k]]) << ','
                << csv_num(tr.zeta_at(t)) << '\n';
        }
        std::string fname = "trajectory_" + std::to_string(got) + ".csv";
        write_file(dir + "/" + fname, csv.str());
        mb.add(fname);
        ++got;
    }
    js["accepted"] = got;
    write_file(dir + "/conditioned.json", js.dump(2) + "\n");
    mb.add("conditioned.json");
    result.scalar = double(accepted) / double(pilot);
    mb.finish(result);
    return result;
}

RunResult run_experiment(const ExperimentConfig& c) {
    switch (c.kind) {
    case ExperimentKind::survival: return run_survival(c);
    case ExperimentKind::positivity: return run_positivity(c);
    case ExperimentKind::renewal: return run_renewal(c);
    case ExperimentKind::fluctuation: return run_fluctuation(c);
    case ExperimentKind::decomposition: return run_decomposition(c);
    case ExperimentKind::nonzero_start: return run_nonzero_start(c);
    case ExperimentKind::conditioned: return sample_conditioned_trajectories(c);
    }
    throw RunnerError("unhandled experiment kind");
}

} // namespace plab
