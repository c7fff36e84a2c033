#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gridcell/analytic.hpp"
#include "gridcell/profile.hpp"

namespace gridcell {

// Per-horizon quantities every purchase rule works from: minimum demand
// E_min(t), renewable arrivals, prices, plus the storage capacity. Index 0
// is horizon 1.
struct DemandProfile {
    std::vector<double> e_min;    // W/m^2
    std::vector<double> lambda_e; // W/m^2
    std::vector<double> price;    // $/W
    double capacity;              // W/m^2

    int horizons() const { return static_cast<int>(e_min.size()); }
    void validate() const;

    // Reduces raw profiles: lambda_m(t) = lambda_m_all * theta(t), then
    // E_min via the optimal on/off rule. Throws InfeasibleLoad with the
    // offending horizon.
    static DemandProfile from_profiles(const NetworkConfig& cfg,
                                       std::span<const HorizonProfile> profiles,
                                       double lambda_m_all);
};

// DP state at the start of horizon t: current storage plus the tail of the
// exogenous sequences (index 0 of each vector is horizon t itself).
struct SystemState {
    int t;       // 1-based horizon index
    double b;    // storage level (W/m^2)
    std::vector<double> lambda_e;
    std::vector<double> price;
    std::vector<double> lambda_m;

    int remaining() const { return static_cast<int>(lambda_e.size()); }
    void validate() const;
};

// Full decision trajectory and its cost.
struct Schedule {
    std::vector<double> rho;     // active probability per horizon (may be empty for reduced runs)
    std::vector<double> g;       // purchase per horizon (W/m^2)
    std::vector<double> storage; // length T+1, storage[0] = B(1)
    double total_cost;           // $/m^2
};

// rho*(t) = rho_min(lambda_m(t)) for every horizon.
std::vector<double> optimal_rho_schedule(const NetworkConfig& cfg,
                                         std::span<const HorizonProfile> profiles,
                                         double lambda_m_all);

// Buy exactly the unmet part of the current demand.
double myopic_purchase(double e_min, double b, double lambda_e);

// Exact optimum for the second-to-last horizon (case analysis over storage /
// future renewables / price order). The state must have exactly two remaining
// horizons and satisfy the standing assumptions; violations throw
// PreconditionViolation naming the failed assumption.
double optimal_purchase_two_horizon(const SystemState& state, const NetworkConfig& cfg);

struct SuboptimalDecision {
    double g;
    bool over_purchase;  // took the omega branch
    bool low_storage;    // condition 1
    bool future_deficit; // condition 2
    bool low_price;      // condition 3
};

// Multi-horizon suboptimal rule: over-purchase min(remaining net demand, C)
// worth of energy when storage is low, future renewables fall short and the
// current price beats every future price; myopic otherwise.
SuboptimalDecision suboptimal_purchase_detail(const DemandProfile& demand, int t, double b);
double suboptimal_purchase(const SystemState& state, const NetworkConfig& cfg);

enum class PurchaseRule { myopic, suboptimal };

// Forward simulation of a purchase rule through the storage dynamics,
// starting from B(1) = 0.
Schedule run_purchase_schedule(const DemandProfile& demand, PurchaseRule rule);

// Same, from raw profiles; fills Schedule::rho with the optimal on/off
// schedule.
Schedule run_policy(const NetworkConfig& cfg, std::span<const HorizonProfile> profiles,
                    double lambda_m_all, PurchaseRule rule);

struct DpResult {
    Schedule schedule;
    // cost_to_go[t-1][i] = J_t at storage grid point i (i * grid_step).
    std::vector<std::vector<double>> cost_to_go;
    double grid_step;
};

inline constexpr std::uint64_t kDefaultDpBudget = 4'000'000'000ULL;

// Exact optimum of the discretized problem by backward induction over a
// storage grid on [0, C]; purchases scan [g_min, g_max] on the same step.
// Storage transitions are capacity-clamped, then rounded to the nearest grid
// point. Ties break toward the smallest purchase. Throws BudgetExceeded when
// the transition count overruns the budget.
DpResult dp_optimal_search(const DemandProfile& demand, double grid_step,
                           std::uint64_t cell_budget = kDefaultDpBudget);
DpResult dp_optimal_search(const NetworkConfig& cfg, std::span<const HorizonProfile> profiles,
                           double lambda_m_all, double grid_step,
                           std::uint64_t cell_budget = kDefaultDpBudget);

} // namespace gridcell
