#include "plab/fluctuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <thread>

namespace plab {

void AreaWalk::push(double step, double dtau) {
    steps.push_back(step);
    tau_increments.push_back(dtau);
    partial_sums.push_back((partial_sums.empty() ? 0.0 : partial_sums.back()) + step);
}

LadderDecomposition ladder_heights(const AreaWalk& walk) {
    LadderDecomposition out;
    out.epochs.push_back(0);
    out.heights.push_back(0.0);
    out.tau_at_epochs.push_back(0.0);
    double running_max = 0.0;
    double tau = 0.0;
    for (std::size_t n = 0; n < walk.steps.size(); ++n) {
        tau += walk.tau_increments[n];
        double s = walk.partial_sums[n];
        if (s > running_max) {
            running_max = s;
            out.epochs.push_back(n + 1);
            out.heights.push_back(s);
            out.tau_at_epochs.push_back(tau);
        }
    }
    return out;
}

RenewalTable renewal_estimate(const std::vector<AreaWalk>& walks,
                              const std::vector<double>& z_grid, std::size_t ladder_count) {
    RenewalTable out;
    out.z_grid = z_grid;
    std::vector<std::vector<double>> heights;
    std::size_t excluded = 0;
    for (const auto& w : walks) {
        LadderDecomposition lad = ladder_heights(w);
        if (lad.heights.size() < ladder_count) {
            ++excluded;
            continue;
        }
        lad.heights.resize(ladder_count);
        heights.push_back(std::move(lad.heights));
    }
    if (heights.empty()) throw std::runtime_error("renewal_estimate: no walk reached the requested ladder count");
    out.excluded_fraction = walks.empty() ? 0.0 : double(excluded) / double(walks.size());
    const double nw = double(heights.size());
    for (double z : z_grid) {
        double sum = 0.0, sumsq = 0.0;
        for (const auto& h : heights) {
            // ladder heights are nondecreasing, count those <= z
            auto it = std::upper_bound(h.begin(), h.end(), z);
            double c = double(it - h.begin());
            sum += c;
            sumsq += c * c;
        }
        double mean = sum / nw;
        double var = std::max(0.0, sumsq / nw - mean * mean);
        out.renewal.push_back(mean);
        out.ci_halfwidth.push_back(1.96 * std::sqrt(var / nw));
    }
    return out;
}

PhiTable phi_estimate(const std::vector<double>& delta_tau_samples,
                      const std::vector<double>& q_grid) {
    PhiTable out;
    out.q_grid = q_grid;
    const double n = double(delta_tau_samples.size());
    if (delta_tau_samples.empty()) throw std::runtime_error("phi_estimate: empty sample");
    for (double q : q_grid) {
        double sum = 0.0, sumsq = 0.0;
        for (double dt : delta_tau_samples) {
            double e = std::exp(-q * dt);
            sum += e;
            sumsq += e * e;
        }
        double mean = sum / n;
        bool usable = mean > 1e-280;
        double var = std::max(0.0, sumsq / n - mean * mean);
        out.phi.push_back(usable ? -std::log(mean) : 0.0);
        out.ci_halfwidth.push_back(usable ? 1.96 * std::sqrt(var / n) / mean : 0.0);
        out.usable.push_back(usable);
    }
    return out;
}

PositivitySummary spitzer_and_positivity(const AreaWalk& walk) {
    PositivitySummary out;
    out.running.reserve(walk.partial_sums.size());
    double count = 0.0;
    double cesaro_sum = 0.0;
    for (std::size_t n = 0; n < walk.partial_sums.size(); ++n) {
        if (walk.partial_sums[n] >= 0.0) count += 1.0;
        double frac = count / double(n + 1);
        out.running.push_back(frac);
        cesaro_sum += frac;
    }
    if (!out.running.empty()) {
        out.fraction = out.running.back();
        out.cesaro = cesaro_sum / double(out.running.size());
    }
    return out;
}

AreaWalk sample_area_walk(const ChainSpec& chain, std::size_t blocks,
                          std::size_t excursions_per_block, RngStream& rng,
                          std::uint64_t step_cap) {
    AreaWalk out;
    const double rate = excursion_rate(chain);
    const double m = chain.mass_at_zero;
    const double f0 = chain.f_values[chain.zero_index];
    for (std::size_t b = 0; b < blocks; ++b) {
        double step = 0.0, dtau = 0.0;
        std::size_t done = 0;
        while (done < excursions_per_block) {
            double gap = rng.exponential(rate);
            ExcursionSample exc = sample_excursion(chain, rng, step_cap);
            ++out.total_excursions;
            if (exc.censored) {
                ++out.censored_excursions;
                continue;
            }
            dtau += m * gap + exc.length;
            step += f0 * m * gap + exc.area;
            ++done;
        }
        out.push(step, dtau);
    }
    return out;
}

namespace {

struct KappaReplica {
    std::vector<double> tau;       // tau at the covered grid points
    std::vector<signed char> zpos; // sign indicator: 1 if Z >= 0 at that point
    double tau_probe = 0.0;        // tau at local time 1 (drift part added later)
    bool probe_set = false;
};

void run_kappa_replica(const ChainSpec& chain, const std::vector<double>& t_grid,
                       double tau_cap, double t_cut, std::uint64_t step_cap,
                       std::uint64_t seed, std::uint64_t replica_id, KappaReplica& rec) {
    RngStream rng(seed, replica_id);
    const double rate = excursion_rate(chain);
    const double m = chain.mass_at_zero;
    const double f0 = chain.f_values[chain.zero_index];
    double sum_len = 0.0;  // jump part of tau
    double sum_area = 0.0; // jump part of Z
    double t_loc = 0.0;    // local time of the last excursion arrival
    std::size_t g = 0;
    while (g < t_grid.size()) {
        double t_next = t_loc + rng.exponential(rate);
        while (g < t_grid.size() && t_grid[g] < t_next) {
            double tg = t_grid[g];
            rec.tau.push_back(m * tg + sum_len);
            rec.zpos.push_back(f0 * m * tg + sum_area >= 0.0 ? 1 : 0);
            ++g;
        }
        if (!rec.probe_set && t_next > 1.0) {
            rec.tau_probe = m * 1.0 + sum_len;
            rec.probe_set = true;
        }
        ExcursionSample exc = sample_excursion(chain, rng, step_cap);
        // A censored excursion already pushed tau beyond every relevant
        // horizon; its partial sums keep the correct sign for Z.
        sum_len += exc.length;
        sum_area += exc.area;
        t_loc = t_next;
        if (sum_len + m * t_loc > tau_cap && t_loc > t_cut) break;
    }
    if (!rec.probe_set) {
        rec.tau_probe = m * 1.0 + sum_len;
        rec.probe_set = true;
    }
}

// exponential integral E1 upper bound, used for truncation-error reporting
double e1_bound(double x) {
    if (x <= 0.0) return 1e300;
    return std::exp(-x) / x;
}

} // namespace

KappaTables kappa_estimate(const ChainSpec& chain, const std::vector<double>& q_grid,
                           const KappaConfig& config, std::uint64_t seed) {
    if (q_grid.empty()) throw std::invalid_argument("kappa_estimate: empty q grid");
    double q_min = *std::min_element(q_grid.begin(), q_grid.end());
    if (q_min <= 0.0) throw std::invalid_argument("kappa_estimate: q must be positive");

    double t_max = config.t_max > 0.0 ? config.t_max : 3000.0;
    std::vector<double> t_grid;
    const double ppd = double(config.points_per_decade);
    const double lg0 = std::log10(config.t_min);
    for (int k = 0;; ++k) {
        double t = std::pow(10.0, lg0 + double(k) / ppd);
        if (t > t_max * 1.0000001) break;
        t_grid.push_back(t);
    }

    // Per-replica stop: once tau exceeds tau_cap, exp(-q tau) < 1e-12 for
    // every q in the grid, and past t_cut the exp(-t) term is < 1e-13, so
    // the remaining grid points contribute nothing for this replica.
    const double tau_cap = 27.6 / q_min;
    const double t_cut = 30.0;

    std::vector<KappaReplica> recs(config.replicas);
    unsigned workers = std::max(1u, config.workers);
    std::vector<std::thread> pool;
    std::size_t chunk = (config.replicas + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = std::min(config.replicas, std::size_t(w) * chunk);
        std::size_t hi = std::min(config.replicas, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t r = lo; r < hi; ++r)
                run_kappa_replica(chain, t_grid, tau_cap, t_cut, config.step_cap, seed, r, recs[r]);
        });
    }
    for (auto& th : pool) th.join();

    const double R = double(config.replicas);
    KappaTables out;
    out.q_grid = q_grid;
    double phi_mean_min = 1.0;
    for (double q : q_grid) {
        // pointwise means of (e^{-t} - e^{-q tau_t}) on {Z_t >= 0} / {Z_t < 0}
        std::vector<double> mp(t_grid.size(), 0.0), mm(t_grid.size(), 0.0);
        double probe_sum = 0.0;
        for (const auto& rec : recs) {
            for (std::size_t g = 0; g < rec.tau.size(); ++g) {
                double v = std::exp(-t_grid[g]) - std::exp(-q * rec.tau[g]);
                (rec.zpos[g] ? mp[g] : mm[g]) += v;
            }
            probe_sum += std::exp(-q * rec.tau_probe);
        }
        double ip = 0.0, im = 0.0;
        for (std::size_t g = 0; g + 1 < t_grid.size(); ++g) {
            double h = t_grid[g + 1] - t_grid[g];
            ip += 0.5 * h * (mp[g] / t_grid[g] + mp[g + 1] / t_grid[g + 1]) / R;
            im += 0.5 * h * (mm[g] / t_grid[g] + mm[g + 1] / t_grid[g + 1]) / R;
        }
        out.log_kappa_plus.push_back(ip);
        out.log_kappa_minus.push_back(im);
        double probe_mean = probe_sum / R;
        double phi = probe_mean > 1e-280 ? -std::log(probe_mean) : 700.0;
        out.phi.push_back(phi);
        phi_mean_min = std::min(phi_mean_min, probe_mean);
        double head = config.t_min * (1.0 + phi);
        double tail = e1_bound(t_grid.back()) + e1_bound(t_grid.back() * phi);
        out.head_bound.push_back(head);
        out.tail_bound.push_back(tail);
        out.flagged.push_back(head + tail > config.tolerance);
    }
    (void)phi_mean_min;
    return out;
}

} // namespace plab
