#include "gridcell/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gridcell/errors.hpp"
#include "gridcell/numeric.hpp"

namespace gridcell {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("NetworkConfig: ") + what);
}

} // namespace

void NetworkConfig::validate() const {
    require(lambda_B > 0.0, "lambda_B must be > 0");
    require(P_B > 0.0, "P_B must be > 0");
    require(alpha > 2.0, "alpha must be > 2");
    require(beta > 0.0, "beta must be > 0");
    require(sigma2 > 0.0, "sigma2 must be > 0");
    require(W_total > 0.0, "W_total must be > 0");
    require(B_chan > 0.0 && B_chan < W_total, "B_chan must be in (0, W_total)");
    require(epsilon > 0.0 && epsilon < 1.0, "epsilon must be in (0, 1)");
    require(mu > 0.0 && mu < 1.0, "mu must be in (0, 1)");
    require(P_a > 0.0 && P_s > 0.0 && P_a > P_s, "need P_a > P_s > 0");
    require(C > 0.0, "C must be > 0");
}

void CoverageInputs::validate() const {
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("CoverageInputs: rho must be in (0, 1]");
    if (!(lambda_m >= 0.0))
        throw std::invalid_argument("CoverageInputs: lambda_m must be >= 0");
}

double avg_traffic_load(double lambda_m, double lambda_B, double rho) {
    if (!(lambda_B > 0.0)) throw std::domain_error("avg_traffic_load: lambda_B must be > 0");
    if (!(rho > 0.0)) throw std::domain_error("avg_traffic_load: rho must be > 0");
    if (!(lambda_m >= 0.0)) throw std::domain_error("avg_traffic_load: lambda_m must be >= 0");
    return lambda_m / (lambda_B * rho);
}

double num_bands(const NetworkConfig& cfg, double rho, double lambda_m) {
    if (!(lambda_m > 0.0))
        throw std::domain_error("num_bands: lambda_m must be > 0 (band count unbounded)");
    return (cfg.W_total / cfg.B_chan) * cfg.lambda_B * rho / lambda_m;
}

double coband_active_density(const NetworkConfig& cfg, double lambda_m) {
    return lambda_m * cfg.B_chan / cfg.W_total;
}

double interference_factor_v_quadrature(double beta, double alpha) {
    if (!(alpha > 2.0)) throw std::domain_error("interference_factor_v: alpha must be > 2");
    if (!(beta > 0.0)) throw std::domain_error("interference_factor_v: beta must be > 0");

    const double half_alpha = 0.5 * alpha;
    const double c = std::pow(beta, -2.0 / alpha);
    const auto integrand = [half_alpha](double u) { return 1.0 / (1.0 + std::pow(u, half_alpha)); };

    // Integrate [c, X] numerically, then add the tail sum
    //   int_X^inf du/(1+u^{a/2}) = sum_{k>=1} (-1)^{k+1} X^{1-k a/2} / (k a/2 - 1),
    // valid for X^{a/2} > 1; alternating, so truncation is below the first
    // omitted term.
    const double X = std::max(10.0 * c, 1000.0);
    const double body = integrate_adaptive(integrand, c, X, 1e-12, 0.0).value;

    double tail = 0.0;
    for (int k = 1; k <= 40; ++k) {
        const double expo = 1.0 - k * half_alpha;
        const double term = std::pow(X, expo) / (k * half_alpha - 1.0);
        tail += (k % 2 == 1) ? term : -term;
        if (term < 1e-18) break;
    }
    return std::pow(beta, 2.0 / alpha) * (body + tail);
}

double interference_factor_v(double beta, double alpha) {
    if (!(alpha > 2.0)) throw std::domain_error("interference_factor_v: alpha must be > 2");
    if (!(beta > 0.0)) throw std::domain_error("interference_factor_v: beta must be > 0");
    if (alpha == 4.0)
        return std::sqrt(beta) * (M_PI / 2.0 - std::atan(1.0 / std::sqrt(beta)));
    return interference_factor_v_quadrature(beta, alpha);
}

double success_probability_quadrature(const NetworkConfig& cfg, const CoverageInputs& in) {
    cfg.validate();
    in.validate();

    const double v = interference_factor_v(cfg.beta, cfg.alpha);
    const double a = M_PI * cfg.lambda_B * in.rho + M_PI * coband_active_density(cfg, in.lambda_m) * v;
    const double b = cfg.beta * cfg.sigma2 / cfg.P_B;
    const double half_alpha = 0.5 * cfg.alpha;

    const auto integrand = [a, b, half_alpha](double x) {
        return std::exp(-a * x - b * std::pow(x, half_alpha));
    };

    // Truncate where either exponent alone has killed the integrand, then
    // extend until the tail bound exp-envelope integral is < 1e-12 of the
    // accumulated value.
    double x_max = 40.0 / a;
    if (b > 0.0) x_max = std::min(x_max, std::pow(40.0 / b, 1.0 / half_alpha));

    double value = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
        value = integrate_adaptive(integrand, 0.0, x_max, 1e-10, 0.0).value;
        const double tail_bound = integrand(x_max) / a; // f(x) <= f(X) e^{-a(x-X)} for x >= X
        if (tail_bound <= 1e-12 * value) break;
        x_max *= 2.0;
    }
    return M_PI * cfg.lambda_B * in.rho * value;
}

double success_probability(const NetworkConfig& cfg, const CoverageInputs& in) {
    cfg.validate();
    in.validate();
    if (cfg.alpha != 4.0) return success_probability_quadrature(cfg, in);

    const double v = interference_factor_v(cfg.beta, 4.0);
    const double a = M_PI * cfg.lambda_B * in.rho + M_PI * coband_active_density(cfg, in.lambda_m) * v;
    const double upsilon = a * std::sqrt(cfg.P_B / (2.0 * cfg.beta * cfg.sigma2));
    return M_PI * cfg.lambda_B * in.rho * std::sqrt(M_PI * cfg.P_B / (cfg.beta * cfg.sigma2)) *
           gaussian_tail_scaled(upsilon);
}

double solve_g0(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("solve_g0: epsilon must be in (0, 1)");

    // LHS g Q(g/2pi) grows from 0, RHS (1-eps) exp(-g^2/4pi) decays from 1-eps,
    // so f crosses zero once from below.
    const auto f = [epsilon](double g) {
        return g * gaussian_tail_q(g / (2.0 * M_PI)) -
               (1.0 - epsilon) * std::exp(-g * g / (4.0 * M_PI));
    };

    double hi = 8.0;
    if (!expand_bracket(f, 0.0, hi))
        throw Error("solve_g0: no sign change found while expanding the bracket");
    return find_root_bisect(f, 0.0, hi, 1e-10);
}

double rho_min(const NetworkConfig& cfg, double lambda_m) {
    cfg.validate();
    if (cfg.alpha != 4.0)
        throw UnsupportedRegime("rho_min: closed form is only available for alpha = 4");
    if (!(lambda_m >= 0.0))
        throw std::domain_error("rho_min: lambda_m must be >= 0");

    const double v = interference_factor_v(cfg.beta, 4.0);
    const double g0 = solve_g0(cfg.epsilon);
    const double load_term = (lambda_m * cfg.B_chan / (cfg.lambda_B * cfg.W_total)) * v *
                             (1.0 - cfg.epsilon) / cfg.epsilon;
    const double noise_term = g0 * std::sqrt(cfg.beta * cfg.sigma2) /
                              (std::pow(M_PI, 1.5) * cfg.lambda_B * std::sqrt(cfg.P_B));
    const double result = std::max(load_term, noise_term);
    if (result > 1.0) throw InfeasibleLoad(result);
    return result;
}

} // namespace gridcell
