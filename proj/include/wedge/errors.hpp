#ifndef WEDGE_ERRORS_HPP
#define WEDGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wedge {

// Common base so callers can catch any library failure at once.
struct WedgeError : std::runtime_error {
    explicit WedgeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid physical configuration (violated WaveParams constraint etc).
struct ConfigError : WedgeError {
    explicit ConfigError(const std::string& msg) : WedgeError(msg) {}
};

// Evaluation requested exactly at (or too close to) a pole.
struct PoleError : WedgeError {
    explicit PoleError(const std::string& msg) : WedgeError(msg) {}
};

// API misuse: dimension mismatch, malformed grid, bad selector.
struct UsageError : WedgeError {
    explicit UsageError(const std::string& msg) : WedgeError(msg) {}
};

// Evaluation point too close to a quadrature contour.
struct ProximityError : WedgeError {
    explicit ProximityError(const std::string& msg) : WedgeError(msg) {}
};

// Adaptive quadrature failed to meet the requested tolerance. Carries the
// best value obtained so the caller can decide whether to keep it.
struct AccuracyError : WedgeError {
    AccuracyError(const std::string& msg, double best_re, double best_im, double err)
        : WedgeError(msg), best_value_re(best_re), best_value_im(best_im),
          error_estimate(err) {}
    double best_value_re, best_value_im;
    double error_estimate;
};

// The sampled logarithm of a factorisation argument crossed a branch cut.
struct BranchCrossingError : WedgeError {
    explicit BranchCrossingError(const std::string& msg) : WedgeError(msg) {}
};

}  // namespace wedge

#endif
