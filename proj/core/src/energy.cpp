#include "gridcell/energy.hpp"

#include <algorithm>
#include <stdexcept>

#include "gridcell/errors.hpp"

namespace gridcell {

double active_bs_power(const NetworkConfig& cfg, double mean_load) {
    if (!(mean_load >= 0.0)) throw std::domain_error("active_bs_power: mean_load must be >= 0");
    return cfg.P_a + (cfg.P_B / cfg.mu) * mean_load;
}

double inactive_bs_power(const NetworkConfig& cfg) {
    return cfg.P_s;
}

double areal_energy_demand(const NetworkConfig& cfg, double rho, double lambda_m) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::domain_error("areal_energy_demand: rho must be in [0, 1]");
    if (!(lambda_m >= 0.0))
        throw std::domain_error("areal_energy_demand: lambda_m must be >= 0");
    return cfg.lambda_B * rho * (cfg.P_a - cfg.P_s) + cfg.lambda_B * cfg.P_s +
           cfg.P_B * lambda_m / cfg.mu;
}

double min_energy_demand(const NetworkConfig& cfg, double lambda_m) {
    return areal_energy_demand(cfg, rho_min(cfg, lambda_m), lambda_m);
}

double storage_update(double b, double lambda_e, double g, double e, double capacity) {
    const double next = b + lambda_e + g - e;
    // tolerate float dust around an exact balance, reject real shortfalls
    if (next < -1e-12) throw DemandViolation(-next);
    return std::min(std::max(next, 0.0), capacity);
}

PurchaseBounds purchase_bounds(double b, std::span<const double> e_min_tail,
                               std::span<const double> lambda_e_tail) {
    if (e_min_tail.empty() || e_min_tail.size() != lambda_e_tail.size())
        throw std::invalid_argument("purchase_bounds: tails must be non-empty and equal length");

    const double g_min = std::max(e_min_tail[0] - b - lambda_e_tail[0], 0.0);
    double net = 0.0;
    for (std::size_t k = 0; k < e_min_tail.size(); ++k)
        net += e_min_tail[k] - lambda_e_tail[k];
    return {g_min, std::max(net, g_min)};
}

} // namespace gridcell
