#include "levqsim/core/theta_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levqsim {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> node_weights(std::size_t n, double h)
{
    // w_j = integral of the hat function centred at theta_j times sin(theta)
    std::vector<double> w(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double a = j * h;
        const double b = (j + 1 == n - 1) ? kPi : (j + 1) * h;
        // rising part of hat j+1 and falling part of hat j on [a, b]
        w[j + 1] += (-h * std::cos(b) + std::sin(b) - std::sin(a)) / h;
        w[j] += (h * std::cos(a) + std::sin(a) - std::sin(b)) / h;
    }
    return w;
}

std::vector<double> cell_weights(std::size_t n, double h)
{
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double hi = (j + 1 == n) ? kPi : (j + 1) * h;
        w[j] = std::cos(j * h) - std::cos(hi);
    }
    return w;
}

} // namespace

ThetaGrid::ThetaGrid(Layout layout, std::size_t n) : layout_(layout), n_(n)
{
    if (layout == Layout::nodes) {
        if (n < 2)
            throw std::invalid_argument("ThetaGrid: node layout needs at least 2 points");
        step_ = kPi / static_cast<double>(n - 1);
        weights_ = node_weights(n, step_);
    } else {
        if (n < 1)
            throw std::invalid_argument("ThetaGrid: cell layout needs at least 1 cell");
        step_ = kPi / static_cast<double>(n);
        weights_ = cell_weights(n, step_);
    }
}

ThetaGrid ThetaGrid::cells_with_step(double max_step)
{
    if (!(max_step > 0.0))
        throw std::invalid_argument("ThetaGrid: step must be positive");
    return ThetaGrid(Layout::cells, static_cast<std::size_t>(std::ceil(kPi / max_step - 1e-9)));
}

ThetaGrid ThetaGrid::nodes_with_step(double max_step)
{
    if (!(max_step > 0.0))
        throw std::invalid_argument("ThetaGrid: step must be positive");
    return ThetaGrid(Layout::nodes,
                     static_cast<std::size_t>(std::ceil(kPi / max_step - 1e-9)) + 1);
}

double ThetaGrid::theta(std::size_t j) const
{
    if (layout_ == Layout::nodes)
        return (j + 1 == n_) ? kPi : j * step_;
    return (j + 0.5) * step_;
}

std::vector<double> ThetaGrid::thetas() const
{
    std::vector<double> t(n_);
    for (std::size_t j = 0; j < n_; ++j)
        t[j] = theta(j);
    return t;
}

double integrate_theta(std::span<const double> values, const ThetaGrid& grid)
{
    if (values.empty())
        throw std::invalid_argument("integrate_theta: empty sample set");
    if (values.size() != grid.size())
        throw std::invalid_argument("integrate_theta: sample count does not match grid");
    const auto& w = grid.weights();
    double sum = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j)
        sum += w[j] * values[j];
    return sum;
}

} // namespace levqsim
