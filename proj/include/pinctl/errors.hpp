#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinctl {

/// Base class for all pinctl errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (edge lists, config files). Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Eigensolver failed to reach the requested residual. Carries the best iterate found.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double lambda_best, double residual,
                     std::vector<double> iterate, int iterations)
        : Error(what),
          lambda_best_(lambda_best),
          residual_(residual),
          iterate_(std::move(iterate)),
          iterations_(iterations) {}

    double lambda_best() const noexcept { return lambda_best_; }
    double residual() const noexcept { return residual_; }
    const std::vector<double>& iterate() const noexcept { return iterate_; }
    int iterations() const noexcept { return iterations_; }

private:
    double lambda_best_;
    double residual_;
    std::vector<double> iterate_;
    int iterations_;
};

/// Trajectory integration blew up. Carries the time of the blow-up.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, double time)
        : Error(what), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

} // namespace pinctl
