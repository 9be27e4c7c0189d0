#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace decoh {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Error categories; the CLI maps them onto distinct process exit codes:
// config_error -> 2, invariant_violation -> 3, numerical_error -> 4.

class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Carries the name of the violated invariant so failures can be reported
// (and recorded in run manifests) by name.
class invariant_violation : public std::runtime_error {
public:
    invariant_violation(const std::string& name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Trapezoid weights on a uniform closed grid: 1/2 at both ends, 1 inside.
std::vector<double> trapezoid_weights(std::size_t n);

// Finite-difference derivative of uniformly sampled data: second-order
// centered differences inside, first-order one-sided at the two ends.
std::vector<double> gradient(const std::vector<double>& f, double h);

// n equally spaced values from a to b inclusive (n >= 2).
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace decoh
