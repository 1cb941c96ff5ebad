#ifndef MM1PS_ERRORS_HPP
#define MM1PS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mm1ps {

// Argument outside the supported region (t <= x, negative rates, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A quadrature or series failed its own error check; message carries both
// competing estimates so callers can decide what to trust.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double a, double b)
        : std::runtime_error(what), estimate_a(a), estimate_b(b) {}
    double estimate_a;
    double estimate_b;
};

// A root bracket could not be established or refined.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested order/mode outside what the kernel supports.
class UnsupportedError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Transform evaluated too close to a pole to be meaningful.
class PoleProximityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mm1ps

#endif
