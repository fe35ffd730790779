#include "levy/grid.hpp"

#include <algorithm>
#include <cmath>

namespace levy {

namespace {

void check_strictly_increasing(const std::vector<double>& g) {
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        if (!(g[i] < g[i + 1]))
            throw Error("GridFunction: abscissae must be strictly increasing");
    }
}

void check_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) throw Error("GridFunction: values must be finite at all nodes");
}

// Fritsch-Carlson slope limiter: harmonic-mean slopes that preserve
// monotonicity of the data segment by segment.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n == 1) return d;
    if (n == 2) {
        d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
        return d;
    }
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] == 0.0 || delta[i] == 0.0 || (delta[i - 1] > 0) != (delta[i] > 0)) {
            d[i] = 0.0;
        } else {
            const double w1 = 2 * h[i] + h[i - 1];
            const double w2 = h[i] + 2 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // One-sided ends (shape-preserving form of Fritsch-Butland).
    auto end_slope = [](double h1, double h2, double d1, double d2) {
        double s = ((2 * h1 + h2) * d1 - h1 * d2) / (h1 + h2);
        if ((s > 0) != (d1 > 0) || d1 == 0.0)
            s = 0.0;
        else if ((d1 > 0) != (d2 > 0) && std::abs(s) > 3 * std::abs(d1))
            s = 3 * d1;
        return s;
    };
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

} // namespace

GridFunction::GridFunction(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() != values_.size()) throw Error("GridFunction: grid/value size mismatch");
    if (grid_.empty()) throw Error("GridFunction: empty grid");
    check_strictly_increasing(grid_);
    check_finite(values_);
}

const std::vector<double>& GridFunction::slopes() const {
    if (slopes_.empty() && !grid_.empty()) slopes_ = pchip_slopes(grid_, values_);
    return slopes_;
}

double GridFunction::operator()(double x) const {
    if (grid_.size() == 1) return values_[0];
    if (x <= grid_.front()) return values_.front();
    if (x >= grid_.back()) return values_.back();
    const auto& d = slopes();
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    const double h = grid_[i + 1] - grid_[i];
    const double s = (x - grid_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * values_[i] + h10 * h * d[i] + h01 * values_[i + 1] + h11 * h * d[i + 1];
}

ComplexGridFunction::ComplexGridFunction(std::vector<double> grid,
                                         std::vector<std::complex<double>> values) {
    std::vector<double> re(values.size()), im(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        re[i] = values[i].real();
        im[i] = values[i].imag();
    }
    re_ = GridFunction(grid, std::move(re));
    im_ = GridFunction(std::move(grid), std::move(im));
}

GridFunction grid_derivative(const GridFunction& g, int order) {
    if (order != 1 && order != 2) throw Error("grid_derivative: order must be 1 or 2");
    const auto& x = g.grid();
    const auto& y = g.values();
    const std::size_t n = x.size();
    if (n < 5) throw InsufficientNodes("grid_derivative: need at least 5 nodes, got " +
                                       std::to_string(n));
    std::vector<double> out(n);
    // Three-point stencil on nonuniform nodes; index j is the center of
    // the triple (a, b, c) = (x[j-1], x[j], x[j+1]) and `at` the evaluation
    // point, which differs from b only at the two ends.
    auto stencil = [&](std::size_t j, double at) {
        const double a = x[j - 1], b = x[j], c = x[j + 1];
        const double fa = y[j - 1], fb = y[j], fc = y[j + 1];
        if (order == 1) {
            const double wa = (2 * at - b - c) / ((a - b) * (a - c));
            const double wb = (2 * at - a - c) / ((b - a) * (b - c));
            const double wc = (2 * at - a - b) / ((c - a) * (c - b));
            return wa * fa + wb * fb + wc * fc;
        }
        const double wa = 2.0 / ((a - b) * (a - c));
        const double wb = 2.0 / ((b - a) * (b - c));
        const double wc = 2.0 / ((c - a) * (c - b));
        return wa * fa + wb * fb + wc * fc;
    };
    out[0] = stencil(1, x[0]);
    for (std::size_t j = 1; j + 1 < n; ++j) out[j] = stencil(j, x[j]);
    out[n - 1] = stencil(n - 2, x[n - 1]);
    return GridFunction(x, std::move(out));
}

std::vector<double> log_spaced_grid(double lo, double hi, int per_tail) {
    if (!(lo > 0) || !(hi > lo) || per_tail < 2)
        throw Error("log_spaced_grid: need 0 < lo < hi and per_tail >= 2");
    std::vector<double> g(static_cast<std::size_t>(per_tail));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < per_tail; ++i)
        g[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (per_tail - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> standard_radial_grid() { return log_spaced_grid(1e-6, 1e6, 512); }

std::vector<double> symmetric_t_grid(double t_max, int n) {
    if (!(t_max > 0) || n < 3) throw Error("symmetric_t_grid: bad arguments");
    if (n % 2 == 0) ++n;
    std::vector<double> g(static_cast<std::size_t>(n));
    const int half = n / 2;
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = t_max * (i - half) / half;
    g[static_cast<std::size_t>(half)] = 0.0;
    return g;
}

} // namespace levy
