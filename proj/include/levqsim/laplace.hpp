#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace levqsim {

// Cross-section (x, z) of the two resonator centre pins with coplanar grounds.
// The pins occupy z in [0, pin_thickness]; the qubit sits below them at negative z.
struct PinGeometry {
    double pin_width = 1e-6;
    double pin_gap = 3e-6;        // centre to centre
    double pin_thickness = 0.2e-6;
    double edge_radius = 0.1e-6;  // rounding of every conductor edge, <= pin_thickness / 2
    double ground_gap = 1e-6;     // pin outer edge to ground plane
    double ground_extent = 1e-3;  // ground plane width, clipped to the domain
    double half_width = 20e-6;    // domain is [-half_width, half_width]
    double half_height = 20e-6;   // and [-half_height, half_height]
    double h = 50e-9;             // grid spacing
    double well_depth = 0.0;      // extra downward offset of the particle rest position

    void validate() const;
    std::uint64_t fingerprint() const;
};

enum class Conductor : std::uint8_t { none = 0, left_pin, right_pin, ground };

struct LaplaceSolution {
    PinGeometry geometry;
    std::size_t nx = 0, nz = 0;
    std::vector<double> V, Ex, Ez; // index = iz * nx + ix
    std::vector<Conductor> conductor;
    double residual = 0.0;          // max |stencil average - V| over free nodes, V
    long iterations = 0;

    double x(std::size_t ix) const;
    double z(std::size_t iz) const;
    std::size_t index(std::size_t ix, std::size_t iz) const { return iz * nx + ix; }
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), residual_history(std::move(history)) {}
    std::vector<double> residual_history; // sampled every 100 sweeps
};

struct SorParams {
    double tol = 1e-11;     // residual bound, V
    long max_iters = 200'000;
    double omega = 0.0;     // 0: use the model-problem optimum
    double left_volts = -0.5;
    double right_volts = 0.5;
};

/// Red-black SOR with Dirichlet data on the pins (left -0.5 V, right +0.5 V),
/// grounds and the outer boundary (0 V). Conductor surfaces that cut a grid
/// link use Shortley-Weller stencils. Fields by centred differences.
LaplaceSolution solve_differential_mode(const PinGeometry& geometry, const SorParams& params = {});

/// |Ex(0, z)| per volt of differential drive, bilinear in z between grid rows.
/// Throws GeometryError when the probe is inside a conductor or outside the domain.
double field_per_volt(const LaplaceSolution& solution, double z);

/// Probe height for a sphere of radius Rs whose centre sits H below the pin plane.
double probe_height(const PinGeometry& geometry, double Rs, double H);

struct ConvergenceOrder {
    std::vector<double> h;  // grid spacings, coarse to fine
    std::vector<double> EV; // field per volt on each grid
    double order;           // log2 of successive difference ratio
    double extrapolated;    // Richardson estimate with the observed order
};

/// Solves on h, h/2, h/4 and estimates the observed order at the probe height.
ConvergenceOrder richardson_order(const PinGeometry& coarse, double z_probe, const SorParams& params = {});

} // namespace levqsim
