#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gridcell/policy.hpp"
#include "gridcell/profile.hpp"

namespace gridcell {

// Gaussian prediction error on the renewable arrival rate.
struct ErrorModel {
    double eta;         // standard deviation (W/m^2), >= 0
    std::uint64_t seed;
};

// Replaces each lambda_e(t) by max(lambda_e(t) + N(0, eta^2), 0). Draws come
// from the seeded generator, one per horizon in order.
std::vector<HorizonProfile> perturb_renewables(std::span<const HorizonProfile> profiles,
                                               const ErrorModel& err);

struct ErrorStudyResult {
    double error_free_cost; // cost of the plan under exact predictions
    double mean_cost;       // mean over realizations
    double std_cost;        // sample standard deviation over realizations
    int realizations;
};

// Monte-Carlo study of prediction errors: each realization re-plans every
// horizon from the true storage level using perturbed renewable predictions,
// while execution (storage update, shortfall top-ups at the current price)
// uses the true arrivals.
ErrorStudyResult run_with_errors(const NetworkConfig& cfg,
                                 std::span<const HorizonProfile> profiles, double lambda_m_all,
                                 const ErrorModel& err, int n_realizations,
                                 PurchaseRule rule = PurchaseRule::suboptimal);

} // namespace gridcell
