#pragma once

namespace gridcell {

// Static physical and network constants. Lengths are meters, powers watts;
// with 1-hour horizons, W and Wh per unit area are numerically identical.
struct NetworkConfig {
    double lambda_B; // BS density (1/m^2)
    double P_B;      // BS transmit power (W)
    double alpha;    // path-loss exponent, > 2
    double beta;     // target SINR threshold, > 0
    double sigma2;   // noise power (W)
    double W_total;  // total network bandwidth (Hz)
    double B_chan;   // per-MT channel bandwidth (Hz)
    double epsilon;  // maximum outage, in (0,1)
    double mu;       // power-amplifier efficiency, in (0,1)
    double P_a;      // active-mode base power (W)
    double P_s;      // inactive-mode base power (W), < P_a
    double C;        // storage capacity per unit area (W/m^2)

    void validate() const; // throws std::invalid_argument naming the field
};

struct CoverageInputs {
    double rho;      // BSs' active operation probability, in (0, 1]
    double lambda_m; // MT density (1/m^2), >= 0

    void validate() const;
};

// Mean number of MTs served by an active BS: lambda_m / (lambda_B * rho).
double avg_traffic_load(double lambda_m, double lambda_B, double rho);

// Frequency-reuse band count delta = (W/B) * lambda_B * rho / lambda_m
// (real-valued in the analysis).
double num_bands(const NetworkConfig& cfg, double rho, double lambda_m);

// Density of co-band active interferers, lambda_m * B_chan / W_total.
// Independent of rho: the rho in the active density cancels against delta.
double coband_active_density(const NetworkConfig& cfg, double lambda_m);

// Interference factor v = beta^{2/alpha} * integral_{beta^{-2/alpha}}^inf
// du / (1 + u^{alpha/2}). Closed form for alpha = 4, adaptive quadrature
// otherwise (alpha > 2).
double interference_factor_v(double beta, double alpha);

// Same quantity, always via quadrature. Cross-check route for the closed form.
double interference_factor_v_quadrature(double beta, double alpha);

// Downlink success probability P(SINR >= beta) for the typical MT.
// alpha == 4 uses the closed form (numerically stable in the large-argument
// tail); other alpha falls back to the integral form.
double success_probability(const NetworkConfig& cfg, const CoverageInputs& in);

// Success probability by direct adaptive quadrature of the integral form,
// any alpha > 2. The truncation point is extended until the analytic tail
// bound drops below 1e-12 of the accumulated value.
double success_probability_quadrature(const NetworkConfig& cfg, const CoverageInputs& in);

// Unique root of g0 * Q(g0 / (2 pi)) = (1 - eps) * exp(-g0^2 / (4 pi)),
// bracketed in [0, 8] (upper bound doubled until a sign change) and bisected
// to 1e-10.
double solve_g0(double epsilon);

// Minimum active-operation probability that keeps the success probability at
// 1 - epsilon (alpha = 4 regime only; throws UnsupportedRegime otherwise,
// InfeasibleLoad when the result would exceed 1).
double rho_min(const NetworkConfig& cfg, double lambda_m);

} // namespace gridcell
