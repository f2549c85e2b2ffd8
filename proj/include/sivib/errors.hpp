#ifndef SIVIB_ERRORS_HPP
#define SIVIB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sivib {

// Bad or inconsistent input (file contents, parameter ranges, shapes).
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative method failed to reach its tolerance. Exit code 3.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double best_residual)
        : std::runtime_error(msg), best_residual(best_residual) {}
    double best_residual;
};

} // namespace sivib

#endif
