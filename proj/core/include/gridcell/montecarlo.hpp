#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gridcell/analytic.hpp"
#include "gridcell/profile.hpp"
#include "gridcell/rng.hpp"

namespace gridcell {

struct Vec2 {
    double x, y;
};

// Squared wrap-around distance on the [0, window)^2 torus.
double toroidal_dist2(const Vec2& a, const Vec2& b, double window);

// Homogeneous PPP sample: Poisson(intensity * window^2) points placed
// uniformly in the square.
std::vector<Vec2> sample_ppp(double intensity, double window, Rng& rng);

// One spatial draw of the network. Bands are only assigned to active BSs;
// every MT is associated with its nearest active BS under the toroidal
// metric.
struct NetworkRealization {
    double window = 0.0;
    std::vector<Vec2> bs_points;
    std::vector<Vec2> mt_points;
    std::vector<char> bs_active; // per BS
    std::vector<int> bs_band;    // band in [0, num_bands) for active BSs, -1 otherwise
    int num_bands = 1;           // delta rounded to the nearest integer, >= 1
    std::vector<int> association; // MT index -> serving BS index
};

// Nearest-point association; when `active` is non-null only flagged points
// are candidates. Returns -1 per MT if there is no candidate.
std::vector<int> nearest_association(std::span<const Vec2> mts, std::span<const Vec2> bss,
                                     const std::vector<char>* active, double window);

// Samples BS and MT processes, thins BSs at rho, assigns bands, associates
// MTs. Throws NoActiveBs when thinning leaves nothing active (callers
// resample).
NetworkRealization build_realization(const NetworkConfig& cfg, double rho, double lambda_m,
                                     Rng& rng, double window = 1000.0);

// Per-link SINR with fresh unit-mean exponential fading on the serving and
// every co-band interfering link.
double sinr_at_mt(const NetworkRealization& real, int mt_index, const NetworkConfig& cfg,
                  Rng& rng);

struct EmpiricalSuccess {
    double fraction;
    double ci_low, ci_high;     // 95% binomial (Wald) band on the pooled links
    double realization_std;     // std of per-realization success fractions
    long links = 0;
    int realizations = 0;
    int discarded = 0;          // resampled draws that had no active BS
};

EmpiricalSuccess empirical_success_probability(const NetworkConfig& cfg, double rho,
                                               double lambda_m, int n_realizations,
                                               std::uint64_t seed, double window = 1000.0);

// Areal demand of one realization-horizon under a given activation pattern:
// Eq.-3/4-style per-BS powers with realized per-BS loads, normalized by the
// window area.
struct SchemeDemand {
    double areal_power; // W/m^2
    int active_bs;
};

// Proposed scheme: activation is the realization's thinning.
SchemeDemand realized_demand(const NetworkRealization& real, const NetworkConfig& cfg);

// No-coordination reference: a BS is active iff its Voronoi cell over ALL
// BSs holds at least one MT. `all_on` must be built with rho = 1.
SchemeDemand no_coordination_demand(const NetworkRealization& all_on, const NetworkConfig& cfg);

// Cluster reference: BSs within L meters pair up greedily by ascending
// distance; in a pair the lighter-loaded BS sleeps and hands its MTs to the
// partner, which stays active iff the combined load is non-zero. Unpaired
// BSs follow the no-coordination rule.
SchemeDemand cluster_demand(const NetworkRealization& all_on, const NetworkConfig& cfg,
                            double pairing_radius);

struct SchemeResult {
    std::string scheme;
    double total_cost;      // ensemble mean, $/m^2 over the T horizons
    double ci_half_width;   // 1.96 * sd / sqrt(n)
    double empirical_p_suc; // proposed scheme only; NaN otherwise
};

struct SchemeComparison {
    SchemeResult proposed, cluster, no_coordination;
    int realizations = 0;
};

// Runs the three schemes on common random numbers (same BS/MT draws per
// realization-horizon), with myopic purchases through the shared storage
// model.
SchemeComparison compare_schemes(const NetworkConfig& cfg,
                                 std::span<const HorizonProfile> profiles, double lambda_m_all,
                                 int horizons, int n_realizations, double pairing_radius,
                                 std::uint64_t seed, double window = 1000.0);

} // namespace gridcell
