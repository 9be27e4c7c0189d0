#include "decoh/packet.hpp"

#include <cmath>

namespace decoh {

void LightPacket::validate() const {
    if (!(sigma > 0.0)) throw config_error("packet.sigma must be positive");
}

cplx chi_hat(const LightPacket& pk, double k) {
    const double s2 = pk.sigma * pk.sigma;
    const double d = k - pk.p;
    const double amp = std::pow(2.0 * s2 / pi, 0.25) * std::exp(-s2 * d * d);
    return amp * std::polar(1.0, -d * pk.x_l);
}

double packet_weight(const LightPacket& pk, double k) {
    const double s2 = pk.sigma * pk.sigma;
    const double d = k - pk.p;
    return std::sqrt(2.0 * s2 / pi) * std::exp(-2.0 * s2 * d * d);
}

MomentumGrid momentum_grid_for(const LightPacket& pk, std::size_t n_k) {
    pk.validate();
    if (n_k < 2) throw config_error("n_k must be at least 2");
    const double K = std::abs(pk.p) + 5.0 / pk.sigma;
    const double dk = 2.0 * K / double(n_k);
    MomentumGrid g;
    g.k.resize(n_k);
    for (std::size_t i = 0; i < n_k; ++i) g.k[i] = -K + (double(i) + 0.5) * dk;
    return g;
}

}  // namespace decoh
