#include "gridcell/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gridcell/energy.hpp"
#include "gridcell/errors.hpp"

namespace gridcell {

void DemandProfile::validate() const {
    if (e_min.empty() || e_min.size() != lambda_e.size() || e_min.size() != price.size())
        throw std::invalid_argument("DemandProfile: sequences must be non-empty and equal length");
    if (!(capacity > 0.0))
        throw std::invalid_argument("DemandProfile: capacity must be > 0");
    for (std::size_t i = 0; i < e_min.size(); ++i) {
        if (!(e_min[i] >= 0.0)) throw std::invalid_argument("DemandProfile: e_min must be >= 0");
        if (!(lambda_e[i] >= 0.0)) throw std::invalid_argument("DemandProfile: lambda_e must be >= 0");
        if (!(price[i] > 0.0)) throw std::invalid_argument("DemandProfile: price must be > 0");
    }
}

DemandProfile DemandProfile::from_profiles(const NetworkConfig& cfg,
                                           std::span<const HorizonProfile> profiles,
                                           double lambda_m_all) {
    DemandProfile out;
    out.capacity = cfg.C;
    out.e_min.reserve(profiles.size());
    for (const auto& p : profiles) {
        try {
            out.e_min.push_back(min_energy_demand(cfg, lambda_m_all * p.theta));
        } catch (const InfeasibleLoad& e) {
            throw InfeasibleLoad(e.rho_required(), p.t);
        }
        out.lambda_e.push_back(p.lambda_e);
        out.price.push_back(p.price);
    }
    out.validate();
    return out;
}

void SystemState::validate() const {
    if (t < 1) throw std::invalid_argument("SystemState: t must be >= 1");
    if (lambda_e.empty() || lambda_e.size() != price.size() || lambda_e.size() != lambda_m.size())
        throw std::invalid_argument("SystemState: tails must be non-empty and equal length");
    if (!(b >= 0.0)) throw std::invalid_argument("SystemState: storage must be >= 0");
    for (std::size_t i = 0; i < lambda_e.size(); ++i) {
        if (!(lambda_e[i] >= 0.0)) throw std::invalid_argument("SystemState: lambda_e must be >= 0");
        if (!(price[i] > 0.0)) throw std::invalid_argument("SystemState: price must be > 0");
        if (!(lambda_m[i] >= 0.0)) throw std::invalid_argument("SystemState: lambda_m must be >= 0");
    }
}

std::vector<double> optimal_rho_schedule(const NetworkConfig& cfg,
                                         std::span<const HorizonProfile> profiles,
                                         double lambda_m_all) {
    std::vector<double> rho;
    rho.reserve(profiles.size());
    for (const auto& p : profiles) {
        try {
            rho.push_back(rho_min(cfg, lambda_m_all * p.theta));
        } catch (const InfeasibleLoad& e) {
            throw InfeasibleLoad(e.rho_required(), p.t);
        }
    }
    return rho;
}

double myopic_purchase(double e_min, double b, double lambda_e) {
    return std::max(e_min - b - lambda_e, 0.0);
}

double optimal_purchase_two_horizon(const SystemState& state, const NetworkConfig& cfg) {
    state.validate();
    if (state.remaining() != 2)
        throw PreconditionViolation("optimal_purchase_two_horizon: state must have exactly 2 remaining horizons");

    const double e_now = min_energy_demand(cfg, state.lambda_m[0]);
    const double e_next = min_energy_demand(cfg, state.lambda_m[1]);
    const double le_now = state.lambda_e[0];
    const double le_next = state.lambda_e[1];
    const double b = state.b;

    if (!(le_now < cfg.C + e_now - b))
        throw PreconditionViolation(
            "optimal_purchase_two_horizon: need lambda_e(T-1) < C + E_min(T-1) - B(T-1)");
    if (!(cfg.C >= std::max(e_now, e_next)))
        throw PreconditionViolation("optimal_purchase_two_horizon: need C >= max(E_min(T-1), E_min(T))");

    const double myopic = myopic_purchase(e_now, b, le_now);
    const double joint_need = e_next + e_now - le_now - le_next;

    if (b >= joint_need) return myopic;            // large current storage
    if (le_next >= e_next) return myopic;          // high future renewables
    if (state.price[0] >= state.price[1]) return myopic; // no price advantage
    return joint_need - b;                         // over-purchase for both horizons
}

SuboptimalDecision suboptimal_purchase_detail(const DemandProfile& demand, int t, double b) {
    demand.validate();
    const int T = demand.horizons();
    if (t < 1 || t > T) throw std::invalid_argument("suboptimal_purchase: t out of range");

    const int i = t - 1;
    const double myopic = myopic_purchase(demand.e_min[i], b, demand.lambda_e[i]);
    if (t == T) return {myopic, false, false, false, false};

    double future_net = 0.0;   // sum_{k>t} E_min(k) - lambda_e(k)
    double min_future_price = std::numeric_limits<double>::infinity();
    for (int k = i + 1; k < T; ++k) {
        future_net += demand.e_min[k] - demand.lambda_e[k];
        min_future_price = std::min(min_future_price, demand.price[k]);
    }

    const double carry = std::min(b - demand.e_min[i] + demand.lambda_e[i], demand.capacity);
    SuboptimalDecision d{};
    d.low_storage = carry < future_net;
    d.future_deficit = future_net >= 0.0;
    d.low_price = demand.price[i] < min_future_price;
    d.over_purchase = d.low_storage && d.future_deficit && d.low_price;

    if (d.over_purchase) {
        const double omega = std::min(future_net, demand.capacity);
        d.g = std::max(omega + demand.e_min[i] - demand.lambda_e[i] - b, 0.0);
    } else {
        d.g = myopic;
    }
    return d;
}

double suboptimal_purchase(const SystemState& state, const NetworkConfig& cfg) {
    state.validate();
    DemandProfile demand;
    demand.capacity = cfg.C;
    demand.lambda_e = state.lambda_e;
    demand.price = state.price;
    demand.e_min.reserve(state.lambda_m.size());
    for (double lm : state.lambda_m) demand.e_min.push_back(min_energy_demand(cfg, lm));
    return suboptimal_purchase_detail(demand, 1, state.b).g;
}

Schedule run_purchase_schedule(const DemandProfile& demand, PurchaseRule rule) {
    demand.validate();
    const int T = demand.horizons();

    Schedule s;
    s.g.resize(T);
    s.storage.assign(T + 1, 0.0); // B(1) = 0
    s.total_cost = 0.0;

    for (int t = 1; t <= T; ++t) {
        const int i = t - 1;
        const double b = s.storage[i];
        const double g = rule == PurchaseRule::myopic
                             ? myopic_purchase(demand.e_min[i], b, demand.lambda_e[i])
                             : suboptimal_purchase_detail(demand, t, b).g;
        s.g[i] = g;
        s.storage[i + 1] = storage_update(b, demand.lambda_e[i], g, demand.e_min[i], demand.capacity);
        s.total_cost += demand.price[i] * g;
    }
    return s;
}

Schedule run_policy(const NetworkConfig& cfg, std::span<const HorizonProfile> profiles,
                    double lambda_m_all, PurchaseRule rule) {
    auto demand = DemandProfile::from_profiles(cfg, profiles, lambda_m_all);
    Schedule s = run_purchase_schedule(demand, rule);
    s.rho = optimal_rho_schedule(cfg, profiles, lambda_m_all);
    return s;
}

DpResult dp_optimal_search(const DemandProfile& demand, double grid_step,
                           std::uint64_t cell_budget) {
    demand.validate();
    if (!(grid_step > 0.0)) throw std::invalid_argument("dp_optimal_search: grid_step must be > 0");

    const int T = demand.horizons();
    const double C = demand.capacity;
    const int n_storage = static_cast<int>(std::llround(C / grid_step)) + 1;

    // Transition-count guard before allocating anything big.
    std::uint64_t transitions = 0;
    {
        double tail_net = 0.0;
        std::vector<double> g_max_t(T);
        for (int i = T - 1; i >= 0; --i) {
            tail_net += demand.e_min[i] - demand.lambda_e[i];
            g_max_t[i] = std::max(tail_net, 0.0);
        }
        for (int i = 0; i < T; ++i) {
            const std::uint64_t options =
                static_cast<std::uint64_t>(std::ceil(g_max_t[i] / grid_step)) + 1;
            transitions += static_cast<std::uint64_t>(n_storage) * options;
        }
        if (transitions > cell_budget) throw BudgetExceeded(transitions, cell_budget);
    }

    const auto snap = [&](double b) {
        const double clamped = std::min(std::max(b, 0.0), C);
        int idx = static_cast<int>(std::llround(clamped / grid_step));
        return std::min(std::max(idx, 0), n_storage - 1);
    };

    std::vector<std::vector<double>> value(T, std::vector<double>(n_storage, 0.0));
    std::vector<std::vector<int>> best_steps(T, std::vector<int>(n_storage, 0));

    for (int t = T; t >= 1; --t) {
        const int i = t - 1;
        const double e = demand.e_min[i];
        const double le = demand.lambda_e[i];
        const double a = demand.price[i];

        double tail_net = 0.0;
        for (int k = i; k < T; ++k) tail_net += demand.e_min[k] - demand.lambda_e[k];

        for (int si = 0; si < n_storage; ++si) {
            const double b = si * grid_step;
            const double g_min = std::max(e - b - le, 0.0);
            const double g_max = std::max(tail_net, g_min);

            if (t == T) { // last horizon: buying beyond the shortfall only adds cost
                value[i][si] = a * g_min;
                best_steps[i][si] = 0;
                continue;
            }

            const int n_g = static_cast<int>(std::ceil((g_max - g_min) / grid_step - 1e-9)) + 1;
            double best = std::numeric_limits<double>::infinity();
            int best_j = 0;
            for (int j = 0; j < n_g; ++j) {
                const double g = g_min + j * grid_step;
                const int next = snap(b + le + g - e);
                const double cost = a * g + value[i + 1][next];
                if (cost < best) { // strict: ties keep the smallest g
                    best = cost;
                    best_j = j;
                }
            }
            value[i][si] = best;
            best_steps[i][si] = best_j;
        }
    }

    // Forward pass to extract the minimizing schedule.
    Schedule s;
    s.g.resize(T);
    s.storage.assign(T + 1, 0.0);
    s.total_cost = 0.0;
    int si = 0;
    for (int t = 1; t <= T; ++t) {
        const int i = t - 1;
        const double b = si * grid_step;
        const double g_min = std::max(demand.e_min[i] - b - demand.lambda_e[i], 0.0);
        const double g = g_min + best_steps[i][si] * grid_step;
        s.g[i] = g;
        s.total_cost += demand.price[i] * g;
        si = snap(b + demand.lambda_e[i] + g - demand.e_min[i]);
        s.storage[i + 1] = si * grid_step;
    }

    return {std::move(s), std::move(value), grid_step};
}

DpResult dp_optimal_search(const NetworkConfig& cfg, std::span<const HorizonProfile> profiles,
                           double lambda_m_all, double grid_step, std::uint64_t cell_budget) {
    auto demand = DemandProfile::from_profiles(cfg, profiles, lambda_m_all);
    DpResult r = dp_optimal_search(demand, grid_step, cell_budget);
    r.schedule.rho = optimal_rho_schedule(cfg, profiles, lambda_m_all);
    return r;
}

} // namespace gridcell
