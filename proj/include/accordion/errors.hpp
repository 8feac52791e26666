#ifndef ACCORDION_ERRORS_HPP
#define ACCORDION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace accordion {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid physical parameter values (non-finite, out of range, bad duty...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Invalid algorithm parameters (undersampled grid, too few samples, bad window...).
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

// Malformed or inconsistent configuration (files, unknown keys, relay geometry).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Mismatched array/grid shapes.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// Design-space failures (target spacing not reachable by any plate row).
class DesignError : public Error {
public:
    explicit DesignError(const std::string& msg) : Error(msg) {}
};

// Target falls outside the plate's overall reachable range.
class UnreachableError : public DesignError {
public:
    UnreachableError(const std::string& msg, double lo_nm, double hi_nm)
        : DesignError(msg), reachable_lo_nm(lo_nm), reachable_hi_nm(hi_nm) {}
    double reachable_lo_nm;
    double reachable_hi_nm;
};

// Target falls in a coverage gap between adjacent rows.
class CoverageGapError : public DesignError {
public:
    CoverageGapError(const std::string& msg,
                     double below_lo_nm, double below_hi_nm,
                     double above_lo_nm, double above_hi_nm)
        : DesignError(msg),
          below_lo_nm(below_lo_nm), below_hi_nm(below_hi_nm),
          above_lo_nm(above_lo_nm), above_hi_nm(above_hi_nm) {}
    // Nearest reachable interval below and above the requested target.
    double below_lo_nm, below_hi_nm;
    double above_lo_nm, above_hi_nm;
};

// Fit failures (no fringes, non-convergence, degenerate sample layout).
class FitError : public Error {
public:
    explicit FitError(const std::string& msg) : Error(msg) {}
};

}  // namespace accordion

#endif
