#include "decoh/common.hpp"

namespace decoh {

std::vector<double> trapezoid_weights(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n >= 2) {
        w.front() = 0.5;
        w.back() = 0.5;
    }
    return w;
}

std::vector<double> gradient(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> g(n, 0.0);
    if (n < 2) return g;
    g[0] = (f[1] - f[0]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    g[n - 1] = (f[n - 1] - f[n - 2]) / h;
    return g;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> x(n);
    const double step = (b - a) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) x[i] = a + double(i) * step;
    return x;
}

}  // namespace decoh
