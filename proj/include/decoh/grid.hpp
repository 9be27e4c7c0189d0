#pragma once

#include <cstddef>
#include <vector>

#include "decoh/common.hpp"

namespace decoh {

// Uniform symmetric position grid X_j = -H + j h, j = 0..J-1, h = 2H/(J-1).
// J must be odd (and >= 3) so that X = 0 is a node; diagnostics evaluated at
// the origin then need no interpolation.
struct GridSpec {
    double H = 0.1;
    std::size_t J = 201;

    double h() const { return 2.0 * H / double(J - 1); }
    double node(std::size_t j) const { return -H + double(j) * h(); }
    std::vector<double> nodes() const;

    bool operator==(const GridSpec& o) const { return H == o.H && J == o.J; }

    void validate() const;  // throws config_error
};

// Uniform momentum grid. When built for a wave packet it is sign-symmetric
// with a half-cell offset: k[i] = -k[N-1-i] and k = 0 is never a sample.
struct MomentumGrid {
    std::vector<double> k;

    std::size_t size() const { return k.size(); }
    double spacing() const;
    bool sign_symmetric(double tol = 1e-9) const;

    void validate() const;  // non-empty, strictly increasing, uniform
};

}  // namespace decoh
