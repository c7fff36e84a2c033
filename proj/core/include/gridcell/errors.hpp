#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gridcell {

// Base class for all library-specific failures.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The offered load would require rho_min > 1: even activating every BS cannot
// meet the outage target. Carries the required probability and, when raised
// while walking a profile, the offending 1-based horizon index.
class InfeasibleLoad : public Error {
public:
    InfeasibleLoad(double rho_required, int horizon = -1)
        : Error("infeasible load: rho_min = " + std::to_string(rho_required) +
                (horizon > 0 ? " at horizon " + std::to_string(horizon) : std::string{}) + " exceeds 1"),
          rho_required_(rho_required),
          horizon_(horizon) {}

    double rho_required() const { return rho_required_; }
    int horizon() const { return horizon_; } // -1 when not tied to a profile

private:
    double rho_required_;
    int horizon_;
};

// Requested a closed-form quantity outside the regime it is defined for
// (currently: rho_min needs alpha == 4).
class UnsupportedRegime : public Error {
public:
    using Error::Error;
};

// Storage update asked to serve a demand the available energy cannot cover.
// Signals an invalid upstream policy decision, never clipped silently.
class DemandViolation : public Error {
public:
    DemandViolation(double shortfall)
        : Error("energy demand constraint violated, shortfall = " + std::to_string(shortfall) + " W/m^2"),
          shortfall_(shortfall) {}

    double shortfall() const { return shortfall_; }

private:
    double shortfall_;
};

// A standing assumption of an analytic policy result does not hold for the
// given state. what() names the violated assumption.
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

// The discretized search would need more grid cells than allowed.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget)
        : Error("grid budget exceeded: need " + std::to_string(required) +
                " cells, budget " + std::to_string(budget)),
          required_(required),
          budget_(budget) {}

    std::uint64_t required_cells() const { return required_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

// Adaptive quadrature failed to reach the requested tolerance; carries the
// residual error estimate.
class QuadratureError : public Error {
public:
    QuadratureError(double residual)
        : Error("quadrature did not converge, residual error estimate = " + std::to_string(residual)),
          residual_(residual) {}

    double residual() const { return residual_; }

private:
    double residual_;
};

// Malformed input file (syntax level). Carries the 1-based line number, or 0
// when no line applies.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Well-formed input that violates a domain invariant. what() names the field.
class ValidationError : public Error {
public:
    ValidationError(const std::string& message, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Thinning left no active BS in the sampled window; callers resample.
class NoActiveBs : public Error {
public:
    NoActiveBs() : Error("realization has no active BS") {}
};

} // namespace gridcell
