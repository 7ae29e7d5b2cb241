#include "plab/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace plab {

namespace {

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

double interp_monotone(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) {
        double slope = (ys[1] - ys[0]) / (xs[1] - xs[0]);
        return ys.front() + slope * (x - xs.front());
    }
    if (x >= xs.back()) {
        std::size_t n = xs.size();
        double slope = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
        return ys.back() + slope * (x - xs.back());
    }
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

void check_tabulated(const std::vector<double>& xs, const std::vector<double>& ys, bool strict) {
    if (xs.size() < 2 || xs.size() != ys.size())
        throw ModelError("tabulated function needs >= 2 matching breakpoints/values");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] <= xs[i - 1]) throw ModelError("tabulated breakpoints must be strictly increasing");
        if (strict && ys[i] <= ys[i - 1]) throw ModelError("tabulated values must be strictly increasing");
    }
}

// Adaptive Simpson on [a, b].
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace

// ---------------------------------------------------------------------------
// ScaleFunction

ScaleFunction ScaleFunction::identity() {
    return ScaleFunction([](double x) { return x; });
}

ScaleFunction ScaleFunction::skew_bessel(double delta, double eta) {
    if (!(delta > 0.0 && delta < 2.0)) throw ModelError("skew_bessel requires delta in (0,2)");
    if (!(eta > -1.0 && eta < 1.0)) throw ModelError("skew_bessel requires eta in (-1,1)");
    return ScaleFunction([delta, eta](double x) {
        if (x == 0.0) return 0.0;
        double s = sgn(x);
        return s * (1.0 - s * eta) / (2.0 - delta) * std::pow(std::abs(x), 2.0 - delta);
    });
}

ScaleFunction ScaleFunction::kinetic_fp(double mu) {
    return ScaleFunction([mu](double x) {
        if (x == 0.0) return 0.0;
        double lo = std::min(0.0, x), hi = std::max(0.0, x);
        double v = integrate([mu](double u) { return std::pow(1.0 + u * u, mu / 2.0); }, lo, hi);
        return x > 0 ? v : -v;
    });
}

ScaleFunction ScaleFunction::ornstein_uhlenbeck(double rate) {
    if (!(rate > 0.0)) throw ModelError("ou requires rate > 0");
    return ScaleFunction([rate](double x) {
        if (x == 0.0) return 0.0;
        double lo = std::min(0.0, x), hi = std::max(0.0, x);
        double v = integrate([rate](double u) { return std::exp(rate * u * u); }, lo, hi);
        return x > 0 ? v : -v;
    });
}

ScaleFunction ScaleFunction::tabulated(std::vector<double> xs, std::vector<double> ys) {
    check_tabulated(xs, ys, /*strict=*/true);
    return ScaleFunction([xs = std::move(xs), ys = std::move(ys)](double x) {
        return interp_monotone(xs, ys, x);
    });
}

// ---------------------------------------------------------------------------
// SpeedMeasure

SpeedMeasure SpeedMeasure::lebesgue() {
    SpeedMeasure m;
    m.density_ = [](double) { return 1.0; };
    m.cumulative_ = [](double x) { return x; };
    return m;
}

SpeedMeasure SpeedMeasure::skew_bessel(double delta, double eta) {
    if (!(delta > 0.0 && delta < 2.0)) throw ModelError("skew_bessel requires delta in (0,2)");
    if (!(eta > -1.0 && eta < 1.0)) throw ModelError("skew_bessel requires eta in (-1,1)");
    SpeedMeasure m;
    m.density_ = [delta, eta](double x) {
        if (x == 0.0) return 0.0;
        return std::pow(std::abs(x), delta - 1.0) / (1.0 - sgn(x) * eta);
    };
    m.cumulative_ = [delta, eta](double x) {
        if (x == 0.0) return 0.0;
        double s = sgn(x);
        return s * std::pow(std::abs(x), delta) / (delta * (1.0 - s * eta));
    };
    return m;
}

SpeedMeasure SpeedMeasure::kinetic_fp(double mu) {
    SpeedMeasure m;
    m.density_ = [mu](double x) { return std::pow(1.0 + x * x, -mu / 2.0); };
    return m;
}

SpeedMeasure SpeedMeasure::ornstein_uhlenbeck(double rate) {
    if (!(rate > 0.0)) throw ModelError("ou requires rate > 0");
    SpeedMeasure m;
    m.density_ = [rate](double x) { return 2.0 * std::exp(-rate * x * x); };
    return m;
}

SpeedMeasure SpeedMeasure::atomic(std::vector<double> sites, std::vector<double> masses) {
    if (sites.size() != masses.size() || sites.empty())
        throw ModelError("atomic speed measure needs matching nonempty sites/masses");
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (i > 0 && sites[i] <= sites[i - 1])
            throw ModelError("atomic sites must be strictly increasing");
        if (!(masses[i] > 0.0)) throw ModelError("atomic masses must be strictly positive");
    }
    if (!std::binary_search(sites.begin(), sites.end(), 0.0))
        throw ModelError("0 must be in the support of the speed measure");
    SpeedMeasure m;
    m.atom_sites_ = std::move(sites);
    m.atom_masses_ = std::move(masses);
    return m;
}

double SpeedMeasure::mass(double a, double b) const {
    if (b < a) return -mass(b, a);
    if (is_atomic()) {
        double total = 0.0;
        auto lo = std::upper_bound(atom_sites_.begin(), atom_sites_.end(), a);
        auto hi = std::upper_bound(atom_sites_.begin(), atom_sites_.end(), b);
        for (auto it = lo; it != hi; ++it)
            total += atom_masses_[static_cast<std::size_t>(it - atom_sites_.begin())];
        return total;
    }
    if (cumulative_) return cumulative_(b) - cumulative_(a);
    return integrate(density_, a, b);
}

double SpeedMeasure::cumulative(double x) const {
    if (x >= 0.0) return mass(0.0, x);
    return -mass(x, 0.0);
}

// ---------------------------------------------------------------------------
// Functional

Functional Functional::identity() {
    return Functional([](double x) { return x; });
}

Functional Functional::sign() {
    return Functional([](double x) { return sgn(x); });
}

Functional Functional::signed_power(double gamma, double c_plus, double c_minus) {
    if (!(c_plus > 0.0 && c_minus > 0.0)) throw ModelError("signed_power requires c_plus, c_minus > 0");
    return Functional([gamma, c_plus, c_minus](double x) {
        if (x == 0.0) return 0.0;
        double mag = std::pow(std::abs(x), gamma);
        return x > 0 ? c_plus * mag : -c_minus * mag;
    });
}

Functional Functional::tabulated(std::vector<double> xs, std::vector<double> ys) {
    check_tabulated(xs, ys, /*strict=*/false);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0 && ys[i] < 0) throw ModelError("tabulated f must be >= 0 for x > 0");
        if (xs[i] < 0 && ys[i] > 0) throw ModelError("tabulated f must be <= 0 for x < 0");
    }
    return Functional([xs = std::move(xs), ys = std::move(ys)](double x) {
        if (x == 0.0) return 0.0;
        return interp_monotone(xs, ys, x);
    });
}

// ---------------------------------------------------------------------------
// ChainSpec

void ChainSpec::validate() const {
    std::size_t n = sites.size();
    if (n < 3) throw ModelError("chain needs at least 3 sites");
    if (up_prob.size() != n || hold_rate.size() != n || f_values.size() != n)
        throw ModelError("chain arrays must match site count");
    if (zero_index == 0 || zero_index + 1 >= n)
        throw ModelError("site 0 must be interior");
    if (sites[zero_index] != 0.0) throw ModelError("zero_index must point at site 0");
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && sites[i] <= sites[i - 1])
            throw ModelError("chain sites must be strictly increasing");
        if (!(hold_rate[i] > 0.0) || !std::isfinite(hold_rate[i]))
            throw ModelError("hold rates must be finite and positive");
        bool interior = i > 0 && i + 1 < n;
        if (interior && !(up_prob[i] > 0.0 && up_prob[i] < 1.0))
            throw ModelError("interior up probabilities must lie strictly in (0,1)");
        if (sites[i] > 0 && f_values[i] < 0)
            throw ModelError("f must be >= 0 above 0");
        if (sites[i] < 0 && f_values[i] > 0)
            throw ModelError("f must be <= 0 below 0");
    }
    if (f_values[zero_index] != 0.0) throw ModelError("f(0) must be 0");
    if (!(mass_at_zero > 0.0)) throw ModelError("mass at zero must be positive");
}

// ---------------------------------------------------------------------------
// Model construction

ModelSpec build_model(ModelFamily family, const std::vector<double>& params) {
    ModelSpec model;
    model.family = family;
    switch (family) {
        case ModelFamily::skew_bessel: {
            if (params.size() < 2) throw ModelError("skew_bessel needs (delta, eta[, gamma, c+, c-])");
            double delta = params[0], eta = params[1];
            double gamma = params.size() > 2 ? params[2] : 1.0;
            double cp = params.size() > 3 ? params[3] : 1.0;
            double cm = params.size() > 4 ? params[4] : 1.0;
            if (gamma <= -delta)
                throw ModelError("skew_bessel requires gamma > -delta (finiteness of the functional)");
            model.scale = ScaleFunction::skew_bessel(delta, eta);
            model.speed = SpeedMeasure::skew_bessel(delta, eta);
            model.f = Functional::signed_power(gamma, cp, cm);
            break;
        }
        case ModelFamily::ou: {
            double rate = params.empty() ? 1.0 : params[0];
            model.scale = ScaleFunction::ornstein_uhlenbeck(rate);
            model.speed = SpeedMeasure::ornstein_uhlenbeck(rate);
            model.f = Functional::identity();
            break;
        }
        case ModelFamily::kinetic_fp: {
            if (params.empty()) throw ModelError("kinetic_fp needs mu");
            double mu = params[0];
            if (!(mu > -1.0)) throw ModelError("kinetic_fp requires mu > -1");
            model.scale = ScaleFunction::kinetic_fp(mu);
            model.speed = SpeedMeasure::kinetic_fp(mu);
            model.f = Functional::identity();
            break;
        }
        case ModelFamily::bessel_walk: {
            if (params.empty()) throw ModelError("bessel_walk needs mu");
            BesselWalkParams wp;
            wp.mu = params[0];
            if (params.size() > 1) wp.half_width = static_cast<int>(params[1]);
            model.native_chain = build_bessel_walk(wp, Functional::sign());
            model.f = Functional::sign();
            break;
        }
        case ModelFamily::srw: {
            BesselWalkParams wp;
            wp.mu = 0.0;
            if (!params.empty()) wp.half_width = static_cast<int>(params[0]);
            model.native_chain = build_bessel_walk(wp, Functional::identity());
            model.f = Functional::identity();
            break;
        }
        case ModelFamily::custom:
            break;
    }
    return model;
}

ChainSpec build_bessel_walk(const BesselWalkParams& params, const Functional& f) {
    int W = params.half_width;
    if (W < 1) throw ModelError("bessel_walk half_width must be >= 1");
    ChainSpec chain;
    std::size_t n = static_cast<std::size_t>(2 * W + 1);
    chain.sites.resize(n);
    chain.up_prob.resize(n);
    chain.hold_rate.assign(n, 1.0);
    chain.f_values.resize(n);
    chain.zero_index = static_cast<std::size_t>(W);
    auto p_up = [&](int i) -> double {
        if (i == 0) return 0.5;
        int a = std::abs(i);
        double eps = params.epsilon ? params.epsilon(a) : 0.0;
        double p_pos = 0.5 * (1.0 - (params.mu + eps) / (2.0 * a));
        if (!(p_pos > 0.0 && p_pos < 1.0))
            throw ModelError("bessel_walk up-probability left (0,1); mu too large for this lattice");
        return i > 0 ? p_pos : 1.0 - p_pos;  // p_i = q_{-i} symmetry
    };
    for (int i = -W; i <= W; ++i) {
        std::size_t k = static_cast<std::size_t>(i + W);
        chain.sites[k] = static_cast<double>(i);
        chain.up_prob[k] = p_up(i);
        chain.f_values[k] = f(static_cast<double>(i));
    }
    // Reflecting boundaries.
    chain.up_prob.front() = 1.0;
    chain.up_prob.back() = 0.0;
    // Stone representation of the walk: scale increments Delta_i = prod q_k/p_k,
    // speed mass at 0 from the generator identity lambda_0 p_0 Delta_0 m_0 = 1.
    double delta0 = 1.0;
    chain.mass_at_zero = 1.0 / (chain.hold_rate[chain.zero_index] *
                                chain.up_prob[chain.zero_index] * delta0);
    chain.validate();
    return chain;
}

double string_m_s(const ModelSpec& model, double x) {
    // Image of m by s, cumulative in the scale coordinate y = s(x): the mass
    // of (0, x] is unchanged, only the abscissa moves. Callers pass x in scale
    // coordinates; invert s numerically by bisection.
    if (x == 0.0) return 0.0;
    // bisect s(u) = x
    double lo = 0.0, hi = x > 0 ? 1.0 : -1.0;
    while ((x > 0 ? model.scale(hi) < x : model.scale(hi) > x)) {
        hi *= 2.0;
        if (std::abs(hi) > 1e18) throw ModelError("scale inversion out of range");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((x > 0) == (model.scale(mid) < x)) lo = mid; else hi = mid;
    }
    return model.speed.cumulative(0.5 * (lo + hi));
}

double string_m_f(const ModelSpec& model, double x) {
    // Cumulative value of d m^f = f o s^{-1} d m^s with value(0) = 0. In the
    // original coordinate this is the integral of f against the speed measure
    // over (0, s^{-1}(x)].
    if (x == 0.0) return 0.0;
    // Invert the scale as above.
    double lo = 0.0, hi = x > 0 ? 1.0 : -1.0;
    while ((x > 0 ? model.scale(hi) < x : model.scale(hi) > x)) {
        hi *= 2.0;
        if (std::abs(hi) > 1e18) throw ModelError("scale inversion out of range");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((x > 0) == (model.scale(mid) < x)) lo = mid; else hi = mid;
    }
    double u = 0.5 * (lo + hi);
    if (model.speed.is_atomic()) {
        double total = 0.0;
        const auto& sites = model.speed.atom_sites();
        const auto& masses = model.speed.atom_masses();
        for (std::size_t i = 0; i < sites.size(); ++i) {
            double s = sites[i];
            if (u > 0 ? (s > 0 && s <= u) : (s < 0 && s >= u)) total += model.f(s) * masses[i];
        }
        return u > 0 ? total : -total;
    }
    double a = std::min(0.0, u), b = std::max(0.0, u);
    // Integrability near 0 is probed by shrinking the inner cutoff; a
    // divergent refinement sequence means f dm is not locally integrable.
    auto piece = [&](double lo, double hi) {
        return integrate([&](double v) { return model.f(v) * model.speed.density(v); }, lo, hi, 1e-10);
    };
    double eps = std::max(1e-3 * (b - a), 1e-12);
    double inner_prev = 0.0, value = 0.0;
    for (int k = 0; k < 6; ++k) {
        double lo = a < 0 ? -eps : a, hi = b > 0 ? eps : b;
        double inner = piece(std::max(a, -eps), std::min(b, eps));
        (void)lo; (void)hi;
        if (k > 0 && std::abs(inner) > 10.0 * std::abs(inner_prev) + 1.0 &&
            std::abs(inner) > 1e6)
            throw ModelError("f dm not integrable near 0 (divergent quadrature refinement)");
        inner_prev = inner;
        eps *= 0.25;
    }
    value = piece(a, b);
    if (!std::isfinite(value))
        throw ModelError("f dm not integrable near 0 (divergent quadrature refinement)");
    return u > 0 ? value : -value;
}

ChainSpec stone_discretize(const ModelSpec& model, const std::vector<double>& grid) {
    if (grid.size() < 3) throw ModelError("grid needs at least 3 sites");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw ModelError("grid must be strictly increasing");
    auto zero_it = std::lower_bound(grid.begin(), grid.end(), 0.0);
    if (zero_it == grid.end() || *zero_it != 0.0) throw ModelError("grid must contain 0");
    std::size_t zi = static_cast<std::size_t>(zero_it - grid.begin());
    if (zi == 0 || zi + 1 == grid.size()) throw ModelError("site 0 must be interior");

    std::size_t n = grid.size();
    ChainSpec chain;
    chain.sites = grid;
    chain.zero_index = zi;
    chain.up_prob.resize(n);
    chain.hold_rate.resize(n);
    chain.f_values.resize(n);

    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = model.scale(grid[i]);
        chain.f_values[i] = model.f(grid[i]);
    }

    for (std::size_t i = 0; i < n; ++i) {
        // Voronoi cell of the grid site.
        double cell_lo = i == 0 ? grid[0] : 0.5 * (grid[i - 1] + grid[i]);
        double cell_hi = i + 1 == n ? grid[n - 1] : 0.5 * (grid[i] + grid[i + 1]);
        double mi = model.speed.mass(cell_lo, cell_hi);
        if (model.speed.is_atomic() && mi == 0.0 && i > 0 && i + 1 < n)
            throw ModelError("interior grid site carries no speed-measure mass");
        if (mi <= 0.0) mi = model.speed.mass(grid[i] - 1e-12, grid[i] + 1e-12);
        if (mi <= 0.0) throw ModelError("speed measure vanishes on a grid cell");
        if (i == 0) {
            chain.up_prob[i] = 1.0;
            chain.hold_rate[i] = 1.0 / (mi * (s[1] - s[0]));
        } else if (i + 1 == n) {
            chain.up_prob[i] = 0.0;
            chain.hold_rate[i] = 1.0 / (mi * (s[n - 1] - s[n - 2]));
        } else {
            double dl = s[i] - s[i - 1], dr = s[i + 1] - s[i];
            chain.up_prob[i] = dl / (dl + dr);
            chain.hold_rate[i] = (1.0 / dl + 1.0 / dr) / mi;
        }
        if (i == zi) chain.mass_at_zero = mi;
    }
    chain.validate();
    return chain;
}

TailIndexResult tail_index_check(const std::vector<double>& x, const std::vector<double>& y,
                                 TailSide side) {
    if (x.size() != y.size() || x.size() < 20)
        throw ModelError("tail index check needs >= 20 matched samples");
    double span = std::log10(x.back() / x.front());
    if (!(span >= 3.0)) throw ModelError("tail index check needs >= 3 decades of abscissae");
    double prev = side == TailSide::plus ? -1e300 : 1e300;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double v = side == TailSide::plus ? y[i] : -y[i];
        if (v < prev - 1e-12 * std::max(1.0, std::abs(prev)))
            throw ModelError("string not monotone on the claimed side");
        prev = std::max(prev, v);
    }
    // Fit over the top decade.
    double x_hi = x.back(), x_lo = x_hi / 10.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < x_lo) continue;
        double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++cnt;
    }
    if (cnt < 3) throw ModelError("not enough samples in the top decade");
    double denom = cnt * sxx - sx * sx;
    TailIndexResult r;
    r.index = (cnt * sxy - sx * sy) / denom;
    double intercept = (sy - r.index * sx) / cnt;
    // Residuals over the whole sample range for slowly-varying diagnosis.
    double rsx = 0, rsy = 0, rsxx = 0, rsxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]);
        double res = std::log(std::abs(y[i])) - (intercept + r.index * lx);
        r.residuals.push_back(res);
        rsx += lx; rsy += res; rsxx += lx * lx; rsxy += lx * res;
    }
    double n = static_cast<double>(x.size());
    r.residual_drift = (n * rsxy - rsx * rsy) / (n * rsxx - rsx * rsx);
    return r;
}

double chain_exit_probability_right(const ChainSpec& chain, std::size_t left, std::size_t right,
                                    std::size_t start) {
    if (!(left < start && start < right && right < chain.sites.size()))
        throw ModelError("exit probability needs left < start < right");
    // h(i) = P(exit right) is harmonic: p_i h(i+1) + q_i h(i-1) = h(i).
    // Solve the tridiagonal system directly (equivalent to the scale-ratio
    // formula but stated as the generic solve).
    std::size_t n = right - left + 1;
    std::vector<double> diag(n), lower(n), upper(n), rhs(n, 0.0);
    diag[0] = 1.0; upper[0] = 0.0; rhs[0] = 0.0;
    diag[n - 1] = 1.0; lower[n - 1] = 0.0; rhs[n - 1] = 1.0;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        double p = chain.up_prob[left + k];
        diag[k] = -1.0;
        lower[k] = 1.0 - p;
        upper[k] = p;
    }
    // Thomas algorithm.
    std::vector<double> cp(n), dp(n);
    cp[0] = upper[0] / diag[0];
    dp[0] = rhs[0] / diag[0];
    for (std::size_t k = 1; k < n; ++k) {
        double m = diag[k] - lower[k] * cp[k - 1];
        cp[k] = upper[k] / m;
        dp[k] = (rhs[k] - lower[k] * dp[k - 1]) / m;
    }
    std::vector<double> h(n);
    h[n - 1] = dp[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) h[k] = dp[k] - cp[k] * h[k + 1];
    return h[start - left];
}

std::vector<double> chain_stationary_distribution(const ChainSpec& chain) {
    std::size_t n = chain.sites.size();
    // Detailed balance: pi_i lambda_i p_i = pi_{i+1} lambda_{i+1} q_{i+1}.
    std::vector<double> pi(n);
    pi[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        double up = chain.hold_rate[i - 1] * chain.up_prob[i - 1];
        double down = chain.hold_rate[i] * (1.0 - chain.up_prob[i]);
        pi[i] = pi[i - 1] * up / down;
    }
    double total = 0.0;
    for (double v : pi) total += v;
    for (double& v : pi) v /= total;
    return pi;
}

} // namespace plab
