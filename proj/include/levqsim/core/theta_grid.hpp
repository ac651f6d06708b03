#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace levqsim {

// Uniform partition of [0, pi].
//
// `nodes`: n points including both poles, theta_j = j*step, step = pi/(n-1).
// `cells`: n cell centres theta_j = (j + 1/2)*step, step = pi/n; no point sits on a pole.
//
// Quadrature weights integrate f(theta) sin(theta) dtheta with the sin factor
// integrated exactly (piecewise-linear f on nodes, piecewise-constant f on
// cells), so the weights of either layout sum to 2 up to rounding.
class ThetaGrid {
public:
    enum class Layout { nodes, cells };

    ThetaGrid(Layout layout, std::size_t n);

    // Cell-centred grid whose step is the largest pi/n not exceeding max_step.
    static ThetaGrid cells_with_step(double max_step);
    static ThetaGrid nodes_with_step(double max_step);

    Layout layout() const { return layout_; }
    std::size_t size() const { return n_; }
    double step() const { return step_; }
    double theta(std::size_t j) const;
    std::vector<double> thetas() const;
    const std::vector<double>& weights() const { return weights_; }

    bool operator==(const ThetaGrid& other) const
    {
        return layout_ == other.layout_ && n_ == other.n_;
    }

private:
    Layout layout_;
    std::size_t n_;
    double step_;
    std::vector<double> weights_;
};

/// Integral of f(theta) sin(theta) over [0, pi] for samples on `grid`.
double integrate_theta(std::span<const double> values, const ThetaGrid& grid);

} // namespace levqsim
