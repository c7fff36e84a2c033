#pragma once

#include <span>

#include "gridcell/analytic.hpp"

namespace gridcell {

// Linear BS power model: P_a + (P_B / mu) * d for an active BS with mean
// traffic load d.
double active_bs_power(const NetworkConfig& cfg, double mean_load);

// Constant draw of a sleeping BS.
double inactive_bs_power(const NetworkConfig& cfg);

// Average areal demand of the whole BS population (W/m^2):
//   lambda_B * rho * (P_a - P_s) + lambda_B * P_s + P_B * lambda_m / mu.
double areal_energy_demand(const NetworkConfig& cfg, double rho, double lambda_m);

// Demand at the smallest feasible activation, rho = rho_min(lambda_m).
double min_energy_demand(const NetworkConfig& cfg, double lambda_m);

// One storage step: b' = min(b + lambda_e + g - e, capacity). The demand
// constraint b + lambda_e + g >= e must hold; a violation throws
// DemandViolation rather than clipping.
double storage_update(double b, double lambda_e, double g, double e, double capacity);

struct PurchaseBounds {
    double g_min; // max(E_min(t) - B(t) - lambda_e(t), 0)
    double g_max; // remaining net demand sum, clamped to >= g_min
};

// Purchase search interval for the horizon at the head of the tails.
// e_min_tail and lambda_e_tail run from the current horizon t through T.
PurchaseBounds purchase_bounds(double b, std::span<const double> e_min_tail,
                               std::span<const double> lambda_e_tail);

} // namespace gridcell
