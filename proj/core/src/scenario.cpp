#include "gridcell/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gridcell/energy.hpp"
#include "gridcell/errors.hpp"
#include "gridcell/rng.hpp"

namespace gridcell {

std::vector<HorizonProfile> perturb_renewables(std::span<const HorizonProfile> profiles,
                                               const ErrorModel& err) {
    if (!(err.eta >= 0.0)) throw std::invalid_argument("ErrorModel: eta must be >= 0");

    std::vector<HorizonProfile> out(profiles.begin(), profiles.end());
    if (err.eta == 0.0) return out;

    Rng rng = make_rng(err.seed);
    std::normal_distribution<double> delta(0.0, err.eta);
    for (auto& p : out) p.lambda_e = std::max(p.lambda_e + delta(rng), 0.0);
    return out;
}

namespace {

// One pass over the horizons: decisions from `planned` arrivals, execution
// against `actual` ones. Shortfalls are covered by a forced top-up at the
// current price.
double execute_plan(const DemandProfile& planned, const DemandProfile& actual,
                    PurchaseRule rule) {
    const int T = planned.horizons();
    double b = 0.0;
    double cost = 0.0;
    for (int t = 1; t <= T; ++t) {
        const int i = t - 1;
        double g = rule == PurchaseRule::myopic
                       ? myopic_purchase(planned.e_min[i], b, planned.lambda_e[i])
                       : suboptimal_purchase_detail(planned, t, b).g;
        g += myopic_purchase(actual.e_min[i], b + g, actual.lambda_e[i]); // top-up
        cost += actual.price[i] * g;
        b = storage_update(b, actual.lambda_e[i], g, actual.e_min[i], actual.capacity);
    }
    return cost;
}

} // namespace

ErrorStudyResult run_with_errors(const NetworkConfig& cfg,
                                 std::span<const HorizonProfile> profiles, double lambda_m_all,
                                 const ErrorModel& err, int n_realizations, PurchaseRule rule) {
    if (n_realizations < 1)
        throw std::invalid_argument("run_with_errors: n_realizations must be >= 1");

    const auto actual = DemandProfile::from_profiles(cfg, profiles, lambda_m_all);

    ErrorStudyResult res{};
    res.realizations = n_realizations;
    res.error_free_cost = run_purchase_schedule(actual, rule).total_cost;

    std::vector<double> costs(n_realizations);
    for (int r = 0; r < n_realizations; ++r) {
        ErrorModel per{err.eta, derive_seed(err.seed, static_cast<std::uint64_t>(r))};
        const auto noisy = perturb_renewables(profiles, per);
        auto planned = actual;
        for (int i = 0; i < planned.horizons(); ++i) planned.lambda_e[i] = noisy[i].lambda_e;
        costs[r] = execute_plan(planned, actual, rule);
    }

    double sum = 0.0;
    for (double c : costs) sum += c;
    res.mean_cost = sum / n_realizations;
    double ss = 0.0;
    for (double c : costs) ss += (c - res.mean_cost) * (c - res.mean_cost);
    res.std_cost = n_realizations > 1 ? std::sqrt(ss / (n_realizations - 1)) : 0.0;
    return res;
}

} // namespace gridcell
