#include "gridcell/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gridcell/energy.hpp"
#include "gridcell/errors.hpp"
#include "gridcell/policy.hpp"

namespace gridcell {

double toroidal_dist2(const Vec2& a, const Vec2& b, double window) {
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    if (dx > 0.5 * window) dx = window - dx;
    if (dy > 0.5 * window) dy = window - dy;
    return dx * dx + dy * dy;
}

std::vector<Vec2> sample_ppp(double intensity, double window, Rng& rng) {
    if (!(intensity >= 0.0)) throw std::domain_error("sample_ppp: intensity must be >= 0");
    if (!(window > 0.0)) throw std::domain_error("sample_ppp: window must be > 0");

    std::poisson_distribution<int> count(intensity * window * window);
    std::uniform_real_distribution<double> coord(0.0, window);
    const int n = intensity > 0.0 ? count(rng) : 0;
    std::vector<Vec2> pts(n);
    for (auto& p : pts) {
        p.x = coord(rng);
        p.y = coord(rng);
    }
    return pts;
}

std::vector<int> nearest_association(std::span<const Vec2> mts, std::span<const Vec2> bss,
                                     const std::vector<char>* active, double window) {
    std::vector<int> assoc(mts.size(), -1);
    for (std::size_t m = 0; m < mts.size(); ++m) {
        double best = std::numeric_limits<double>::infinity();
        int best_i = -1;
        for (std::size_t i = 0; i < bss.size(); ++i) {
            if (active && !(*active)[i]) continue;
            const double d2 = toroidal_dist2(mts[m], bss[i], window);
            if (d2 < best) {
                best = d2;
                best_i = static_cast<int>(i);
            }
        }
        assoc[m] = best_i;
    }
    return assoc;
}

NetworkRealization build_realization(const NetworkConfig& cfg, double rho, double lambda_m,
                                     Rng& rng, double window) {
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::domain_error("build_realization: rho must be in (0, 1]");
    if (!(lambda_m >= 0.0))
        throw std::domain_error("build_realization: lambda_m must be >= 0");

    NetworkRealization real;
    real.window = window;
    real.bs_points = sample_ppp(cfg.lambda_B, window, rng);
    real.mt_points = sample_ppp(lambda_m, window, rng);

    std::bernoulli_distribution keep(rho);
    real.bs_active.resize(real.bs_points.size());
    bool any_active = false;
    for (auto& flag : real.bs_active) {
        flag = keep(rng) ? 1 : 0;
        any_active |= flag != 0;
    }
    if (!any_active) throw NoActiveBs();

    real.num_bands =
        lambda_m > 0.0
            ? std::max(1, static_cast<int>(std::llround(num_bands(cfg, rho, lambda_m))))
            : 1;
    std::uniform_int_distribution<int> band(0, real.num_bands - 1);
    real.bs_band.assign(real.bs_points.size(), -1);
    for (std::size_t i = 0; i < real.bs_points.size(); ++i)
        if (real.bs_active[i]) real.bs_band[i] = band(rng);

    real.association =
        nearest_association(real.mt_points, real.bs_points, &real.bs_active, window);
    return real;
}

double sinr_at_mt(const NetworkRealization& real, int mt_index, const NetworkConfig& cfg,
                  Rng& rng) {
    if (mt_index < 0 || mt_index >= static_cast<int>(real.mt_points.size()))
        throw std::out_of_range("sinr_at_mt: mt_index out of range");
    const int serving = real.association[mt_index];
    if (serving < 0) throw Error("sinr_at_mt: MT has no serving BS");

    std::exponential_distribution<double> fading(1.0);
    const Vec2 mt = real.mt_points[mt_index];
    const double half_alpha = 0.5 * cfg.alpha;

    const double d2 = toroidal_dist2(mt, real.bs_points[serving], real.window);
    const double desired = cfg.P_B * std::pow(d2, -half_alpha) * fading(rng);

    double interference = 0.0;
    const int band = real.bs_band[serving];
    for (std::size_t i = 0; i < real.bs_points.size(); ++i) {
        if (static_cast<int>(i) == serving || !real.bs_active[i] || real.bs_band[i] != band)
            continue;
        const double di2 = toroidal_dist2(mt, real.bs_points[i], real.window);
        interference += cfg.P_B * std::pow(di2, -half_alpha) * fading(rng);
    }
    return desired / (interference + cfg.sigma2);
}

EmpiricalSuccess empirical_success_probability(const NetworkConfig& cfg, double rho,
                                               double lambda_m, int n_realizations,
                                               std::uint64_t seed, double window) {
    if (n_realizations < 1)
        throw std::invalid_argument("empirical_success_probability: n_realizations must be >= 1");

    EmpiricalSuccess out{};
    long success = 0;
    std::vector<double> per_real;
    per_real.reserve(n_realizations);

    for (int r = 0; r < n_realizations; ++r) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(r));
        for (;;) {
            try {
                const NetworkRealization real = build_realization(cfg, rho, lambda_m, rng, window);
                long ok = 0;
                const long n = static_cast<long>(real.mt_points.size());
                for (long m = 0; m < n; ++m)
                    if (sinr_at_mt(real, static_cast<int>(m), cfg, rng) >= cfg.beta) ++ok;
                success += ok;
                out.links += n;
                if (n > 0) per_real.push_back(static_cast<double>(ok) / n);
                break;
            } catch (const NoActiveBs&) {
                ++out.discarded; // keep drawing from the same stream
            }
        }
    }

    out.realizations = n_realizations;
    out.fraction = out.links > 0 ? static_cast<double>(success) / out.links : 0.0;
    const double half =
        out.links > 0
            ? 1.96 * std::sqrt(std::max(out.fraction * (1.0 - out.fraction), 0.0) / out.links)
            : 0.0;
    out.ci_low = out.fraction - half;
    out.ci_high = out.fraction + half;

    if (per_real.size() > 1) {
        const double mean =
            std::accumulate(per_real.begin(), per_real.end(), 0.0) / per_real.size();
        double ss = 0.0;
        for (double p : per_real) ss += (p - mean) * (p - mean);
        out.realization_std = std::sqrt(ss / (per_real.size() - 1));
    }
    return out;
}

namespace {

std::vector<int> per_bs_loads(const NetworkRealization& real) {
    std::vector<int> load(real.bs_points.size(), 0);
    for (int bs : real.association)
        if (bs >= 0) ++load[bs];
    return load;
}

double areal_power_from(const NetworkConfig& cfg, std::span<const char> active,
                        std::span<const int> load, double window) {
    double total = 0.0;
    for (std::size_t i = 0; i < active.size(); ++i)
        total += active[i] ? cfg.P_a + (cfg.P_B / cfg.mu) * load[i] : cfg.P_s;
    return total / (window * window);
}

} // namespace

SchemeDemand realized_demand(const NetworkRealization& real, const NetworkConfig& cfg) {
    const auto load = per_bs_loads(real);
    const int active = static_cast<int>(
        std::count_if(real.bs_active.begin(), real.bs_active.end(), [](char c) { return c != 0; }));
    return {areal_power_from(cfg, real.bs_active, load, real.window), active};
}

SchemeDemand no_coordination_demand(const NetworkRealization& all_on, const NetworkConfig& cfg) {
    const auto load = per_bs_loads(all_on);
    std::vector<char> active(load.size());
    for (std::size_t i = 0; i < load.size(); ++i) active[i] = load[i] > 0 ? 1 : 0;
    const int n_active = static_cast<int>(std::count(active.begin(), active.end(), char(1)));
    return {areal_power_from(cfg, active, load, all_on.window), n_active};
}

SchemeDemand cluster_demand(const NetworkRealization& all_on, const NetworkConfig& cfg,
                            double pairing_radius) {
    if (!(pairing_radius > 0.0))
        throw std::domain_error("cluster_demand: pairing radius must be > 0");

    const auto base_load = per_bs_loads(all_on);
    const std::size_t n = all_on.bs_points.size();

    struct Edge {
        double d2;
        int i, j;
    };
    std::vector<Edge> edges;
    const double r2 = pairing_radius * pairing_radius;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d2 = toroidal_dist2(all_on.bs_points[i], all_on.bs_points[j], all_on.window);
            if (d2 <= r2) edges.push_back({d2, static_cast<int>(i), static_cast<int>(j)});
        }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.d2 != b.d2) return a.d2 < b.d2;
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    std::vector<int> partner(n, -1);
    for (const auto& e : edges)
        if (partner[e.i] < 0 && partner[e.j] < 0) {
            partner[e.i] = e.j;
            partner[e.j] = e.i;
        }

    std::vector<int> load(base_load);
    std::vector<char> active(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const int p = partner[i];
        if (p < 0) {
            active[i] = base_load[i] > 0 ? 1 : 0;
            continue;
        }
        if (static_cast<int>(i) > p) continue; // handle each pair once
        // lighter-loaded sleeps, ties sleep the lower index
        int sleeper = base_load[i] <= base_load[p] ? static_cast<int>(i) : p;
        int server = sleeper == static_cast<int>(i) ? p : static_cast<int>(i);
        load[server] += load[sleeper];
        load[sleeper] = 0;
        active[sleeper] = 0;
        active[server] = load[server] > 0 ? 1 : 0;
    }

    const int n_active = static_cast<int>(std::count(active.begin(), active.end(), char(1)));
    return {areal_power_from(cfg, active, load, all_on.window), n_active};
}

SchemeComparison compare_schemes(const NetworkConfig& cfg,
                                 std::span<const HorizonProfile> profiles, double lambda_m_all,
                                 int horizons, int n_realizations, double pairing_radius,
                                 std::uint64_t seed, double window) {
    if (horizons < 1 || horizons > static_cast<int>(profiles.size()))
        throw std::invalid_argument("compare_schemes: horizons out of range");
    if (n_realizations < 1)
        throw std::invalid_argument("compare_schemes: n_realizations must be >= 1");

    // rho*(t) once per horizon; InfeasibleLoad propagates with its index.
    std::vector<double> rho_star(horizons);
    for (int t = 0; t < horizons; ++t) {
        try {
            rho_star[t] = rho_min(cfg, lambda_m_all * profiles[t].theta);
        } catch (const InfeasibleLoad& e) {
            throw InfeasibleLoad(e.rho_required(), profiles[t].t);
        }
    }

    std::vector<double> cost_prop(n_realizations), cost_clu(n_realizations),
        cost_nc(n_realizations);
    long suc_links = 0, suc_ok = 0;

    for (int r = 0; r < n_realizations; ++r) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(r));
        const auto bs = sample_ppp(cfg.lambda_B, window, rng);

        double b_prop = 0.0, b_clu = 0.0, b_nc = 0.0;
        double c_prop = 0.0, c_clu = 0.0, c_nc = 0.0;

        for (int t = 0; t < horizons; ++t) {
            const double lambda_m = lambda_m_all * profiles[t].theta;
            const auto mts = sample_ppp(lambda_m, window, rng);

            // common points, scheme-specific activation
            NetworkRealization real;
            real.window = window;
            real.bs_points = bs;
            real.mt_points = mts;

            std::bernoulli_distribution keep(rho_star[t]);
            bool any = false;
            real.bs_active.resize(bs.size());
            do {
                any = false;
                for (auto& f : real.bs_active) {
                    f = keep(rng) ? 1 : 0;
                    any |= f != 0;
                }
            } while (!any && !bs.empty());
            if (bs.empty()) throw NoActiveBs();

            real.num_bands =
                lambda_m > 0.0
                    ? std::max(1, static_cast<int>(std::llround(num_bands(cfg, rho_star[t], lambda_m))))
                    : 1;
            std::uniform_int_distribution<int> band(0, real.num_bands - 1);
            real.bs_band.assign(bs.size(), -1);
            for (std::size_t i = 0; i < bs.size(); ++i)
                if (real.bs_active[i]) real.bs_band[i] = band(rng);
            real.association = nearest_association(mts, bs, &real.bs_active, window);

            NetworkRealization all_on;
            all_on.window = window;
            all_on.bs_points = bs;
            all_on.mt_points = mts;
            all_on.bs_active.assign(bs.size(), 1);
            all_on.association = nearest_association(mts, bs, nullptr, window);

            const double e_prop = realized_demand(real, cfg).areal_power;
            const double e_nc = no_coordination_demand(all_on, cfg).areal_power;
            const double e_clu = cluster_demand(all_on, cfg, pairing_radius).areal_power;

            const double le = profiles[t].lambda_e;
            const double price = profiles[t].price;
            const auto step = [&](double& b, double e, double& cost) {
                const double g = myopic_purchase(e, b, le);
                cost += price * g;
                b = storage_update(b, le, g, e, cfg.C);
            };
            step(b_prop, e_prop, c_prop);
            step(b_clu, e_clu, c_clu);
            step(b_nc, e_nc, c_nc);

            for (std::size_t m = 0; m < mts.size(); ++m) {
                if (sinr_at_mt(real, static_cast<int>(m), cfg, rng) >= cfg.beta) ++suc_ok;
                ++suc_links;
            }
        }

        cost_prop[r] = c_prop;
        cost_clu[r] = c_clu;
        cost_nc[r] = c_nc;
    }

    const auto summarize = [&](const std::vector<double>& costs, const std::string& name,
                               double p_suc) {
        const double mean = std::accumulate(costs.begin(), costs.end(), 0.0) / costs.size();
        double ss = 0.0;
        for (double c : costs) ss += (c - mean) * (c - mean);
        const double sd = costs.size() > 1 ? std::sqrt(ss / (costs.size() - 1)) : 0.0;
        return SchemeResult{name, mean, 1.96 * sd / std::sqrt(static_cast<double>(costs.size())),
                            p_suc};
    };

    SchemeComparison out;
    out.realizations = n_realizations;
    out.proposed = summarize(cost_prop, "proposed",
                             suc_links > 0 ? static_cast<double>(suc_ok) / suc_links
                                           : std::numeric_limits<double>::quiet_NaN());
    out.cluster = summarize(cost_clu, "cluster", std::numeric_limits<double>::quiet_NaN());
    out.no_coordination =
        summarize(cost_nc, "no_coordination", std::numeric_limits<double>::quiet_NaN());
    return out;
}

} // namespace gridcell
