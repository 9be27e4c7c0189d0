#include "decoh/grid.hpp"

#include <cmath>
#include <string>

namespace decoh {

std::vector<double> GridSpec::nodes() const {
    std::vector<double> x(J);
    for (std::size_t j = 0; j < J; ++j) x[j] = node(j);
    return x;
}

void GridSpec::validate() const {
    if (!(H > 0.0)) throw config_error("grid.H must be positive");
    if (J < 3) throw config_error("grid.J must be at least 3");
    if (J % 2 == 0)
        throw config_error("grid.J must be odd so X = 0 is a node (got J = " +
                           std::to_string(J) + ")");
}

double MomentumGrid::spacing() const {
    if (k.size() < 2) throw config_error("momentum grid needs at least 2 samples");
    return k[1] - k[0];
}

bool MomentumGrid::sign_symmetric(double tol) const {
    const std::size_t n = k.size();
    if (n == 0) return false;
    const double scale = std::max(std::abs(k.front()), std::abs(k.back()));
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(k[i] + k[n - 1 - i]) > tol * scale) return false;
    return true;
}

void MomentumGrid::validate() const {
    if (k.empty()) throw config_error("momentum grid is empty");
    if (k.size() == 1) return;
    const double dk = k[1] - k[0];
    if (!(dk > 0.0)) throw config_error("momentum grid must be strictly increasing");
    for (std::size_t i = 1; i < k.size(); ++i) {
        const double step = k[i] - k[i - 1];
        if (!(step > 0.0)) throw config_error("momentum grid must be strictly increasing");
        if (std::abs(step - dk) > 1e-9 * std::abs(dk))
            throw config_error("momentum grid must be uniform");
    }
}

}  // namespace decoh
