#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plab/runner.hpp"
#include "plab/trace.hpp"

using namespace plab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TmpOutRoot {
    fs::path root;
    TmpOutRoot(const char* tag) {
        root = fs::path("/tmp") / (std::string("plab_runner_") + tag);
        fs::remove_all(root);
        fs::create_directories(root);
        ::setenv("PERSISTENCE_LAB_OUT", root.c_str(), 1);
    }
    ~TmpOutRoot() {
        ::unsetenv("PERSISTENCE_LAB_OUT");
        fs::remove_all(root);
    }
};

const char* kSmallSurvival = R"({
  "name": "tiny-survival",
  "kind": "survival",
  "model": {"family": "srw", "half_width": 512},
  "f": "id",
  "z": 1.0,
  "horizon": 1000.0,
  "replicas": 3000,
  "seed": 77,
  "t_min": 1.0,
  "t_points_per_decade": 8,
  "fit": {"mode": "pure_power", "window": [10.0, 300.0]},
  "out": "tiny-survival"
})";

} // namespace

TEST_CASE("every shipped config parses and builds its chain") {
    for (auto& entry : fs::directory_iterator("configs")) {
        if (entry.path().extension() != ".json") continue;
        ExperimentConfig cfg = load_config(entry.path().string());
        CHECK(!cfg.name.empty());
        CHECK(cfg.replicas > 0);
        ChainSpec chain = build_chain(cfg);
        CHECK(chain.sites.size() >= 3);
        CHECK(chain.sites[chain.zero_index] == 0.0);
    }
}

TEST_CASE("config fields land where they should") {
    ExperimentConfig cfg = parse_config(kSmallSurvival);
    CHECK(cfg.name == "tiny-survival");
    CHECK(cfg.kind == ExperimentKind::survival);
    CHECK(cfg.family == "srw");
    CHECK(cfg.f_name == "id");
    CHECK(cfg.z == 1.0);
    CHECK(cfg.replicas == 3000);
    CHECK(cfg.seed == 77);
    REQUIRE(cfg.fit_window.has_value());
    CHECK(cfg.fit_window->first == 10.0);
    CHECK(cfg.fit_window->second == 300.0);
}

TEST_CASE("malformed configs are rejected with clear errors") {
    CHECK_THROWS_AS((void)parse_config("{\"kind\": \"no-such-kind\"}"), RunnerError);
    CHECK_THROWS_AS((void)parse_config("not json at all"), RunnerError);
    CHECK_THROWS_AS(
        (void)parse_config(R"({"kind":"survival","model":{"family":"srw"},"replicas":0})"),
        RunnerError);
}

TEST_CASE("survival run writes curve, fit, and a manifest that verifies") {
    TmpOutRoot tmp("survival");
    ExperimentConfig cfg = parse_config(kSmallSurvival);
    RunResult res = run_experiment(cfg);
    CHECK(res.ok);
    REQUIRE(res.fit.has_value());
    CHECK(res.fit->theta_hat > 0.05);
    CHECK(res.fit->theta_hat < 0.6);

    fs::path dir = res.out_dir;
    REQUIRE(fs::exists(dir / "survival.csv"));
    REQUIRE(fs::exists(dir / "fit.json"));
    REQUIRE(fs::exists(dir / "manifest.json"));

    // survival.csv schema
    std::istringstream csv(slurp((dir / "survival.csv").string()));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,survival,ci");

    // fit.json schema
    auto fit = nlohmann::json::parse(slurp((dir / "fit.json").string()));
    CHECK(fit.contains("theta_hat"));
    CHECK(fit.contains("ci"));
    CHECK(fit.contains("window"));
    CHECK(fit.contains("mode"));
    CHECK(fit.contains("censored_fraction"));
    CHECK(fit["theta_hat"].get<double>() == doctest::Approx(res.fit->theta_hat));

    // manifest hashes match the files on disk
    auto manifest = nlohmann::json::parse(slurp((dir / "manifest.json").string()));
    CHECK(manifest.contains("config_hash"));
    REQUIRE(manifest.contains("files"));
    CHECK(!manifest["files"].empty());
    for (auto& entry : manifest["files"]) {
        char hex[32];
        std::snprintf(hex, sizeof hex, "%016llx",
                      (unsigned long long)file_hash((dir / entry["path"].get<std::string>()).string()));
        CHECK(entry["hash"].get<std::string>() == hex);
    }
}

TEST_CASE("worker count never changes the bytes on disk") {
    std::vector<std::string> csvs;
    for (unsigned workers : {1u, 4u, 8u}) {
        TmpOutRoot tmp(("det_w" + std::to_string(workers)).c_str());
        ExperimentConfig cfg = parse_config(kSmallSurvival);
        cfg.workers = workers;
        RunResult res = run_experiment(cfg);
        REQUIRE(res.ok);
        csvs.push_back(slurp((fs::path(res.out_dir) / "survival.csv").string()));
    }
    CHECK(csvs[0] == csvs[1]);
    CHECK(csvs[0] == csvs[2]);
}

TEST_CASE("nonzero starts: admissible pairs run, inadmissible ones are refused") {
    ExperimentConfig cfg = parse_config(kSmallSurvival);
    cfg.kind = ExperimentKind::nonzero_start;
    cfg.replicas = 500;
    cfg.horizon = 200.0;
    cfg.fit_window.reset();

    // starting above the barrier is meaningless: crossing already happened
    cfg.start = StartPoint{1.0, 0.0};
    {
        TmpOutRoot tmp("nz_bad");
        CHECK_THROWS_AS((void)run_nonzero_start(cfg), RunnerError);
    }
    cfg.start = StartPoint{0.0, 2.0};
    {
        TmpOutRoot tmp("nz_bad2");
        CHECK_THROWS_AS((void)run_nonzero_start(cfg), RunnerError);
    }

    // below the barrier: fine
    cfg.start = StartPoint{-1.0, 0.0};
    {
        TmpOutRoot tmp("nz_ok");
        RunResult res = run_nonzero_start(cfg);
        CHECK(res.ok);
        CHECK(fs::exists(fs::path(res.out_dir) / "survival.csv"));
    }
    // at the barrier but pointing down: fine
    cfg.start = StartPoint{0.0, -2.0};
    {
        TmpOutRoot tmp("nz_ok2");
        RunResult res = run_nonzero_start(cfg);
        CHECK(res.ok);
    }
}

TEST_CASE("conditioned sampling: unconstrained target accepts everything") {
    TmpOutRoot tmp("cond");
    ExperimentConfig cfg = parse_config(kSmallSurvival);
    cfg.kind = ExperimentKind::conditioned;
    cfg.t_target = 0.0; // surviving to time zero is free
    cfg.count = 5;
    cfg.horizon = 50.0;
    RunResult res = sample_conditioned_trajectories(cfg);
    CHECK(res.ok);
    CHECK(res.scalar == doctest::Approx(1.0).epsilon(1e-12)); // acceptance rate
    int found = 0;
    for (auto& f : res.files)
        if (f.find("trajectory") != std::string::npos) ++found;
    CHECK(found == 5);
}

TEST_CASE("conditioned trajectories actually satisfy the constraint") {
    TmpOutRoot tmp("cond2");
    ExperimentConfig cfg = parse_config(kSmallSurvival);
    cfg.kind = ExperimentKind::conditioned;
    cfg.t_target = 30.0;
    cfg.count = 4;
    cfg.horizon = 60.0;
    cfg.replicas = 4000;
    RunResult res = sample_conditioned_trajectories(cfg);
    REQUIRE(res.ok);
    for (auto& f : res.files) {
        if (f.find("trajectory") == std::string::npos) continue;
        std::istringstream csv(slurp((fs::path(res.out_dir) / f).string()));
        std::string line;
        std::getline(csv, line);
        CHECK(line == "t,X,zeta");
        double max_zeta_before_target = -1e300;
        while (std::getline(csv, line)) {
            if (line.empty()) continue;
            double t, x, zeta;
            REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &zeta) == 3);
            if (t <= cfg.t_target) max_zeta_before_target = std::max(max_zeta_before_target, zeta);
        }
        CHECK(max_zeta_before_target < cfg.z);
    }
}

TEST_CASE("output root env var relocates results") {
    TmpOutRoot tmp("envroot");
    ExperimentConfig cfg = parse_config(kSmallSurvival);
    std::string dir = resolve_out_dir(cfg);
    CHECK(dir.rfind(tmp.root.string(), 0) == 0);
}

TEST_CASE("hashes are stable and sensitive") {
    const char a[] = "abc";
    const char b[] = "abd";
    CHECK(fnv1a64(a, 3) != fnv1a64(b, 3));
    CHECK(fnv1a64(a, 3) == fnv1a64(a, 3));
}
