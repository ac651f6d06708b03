#pragma once

#include "levqsim/core/material.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace levqsim {

// Current disk of inner radius R0 and width W, discretised into n_loops
// concentric filaments of radius R_i = R0 + (i - 1/2) W / n_loops, each carrying I / n_loops.
struct LoopSpec {
    double R0;          // m
    double W;           // m
    double I;           // A
    int n_loops = 30;
    double delta = 5e-6; // film thickness, m

    double subloop_radius(int i) const; // i = 1 .. n_loops
    void validate() const;
};

struct GridRequest {
    double x_extent;    // half-width in x, m
    double z_min;       // m
    double z_max;       // m
    double dx = 0.1e-6; // m, same in x and z
    int phi_panels = 720;
};

// Loop field on the (x, z) half-plane through the axis, x in [-x_extent, x_extent].
// Samples are row-major in z then x: index = iz * nx + ix.
struct FieldGrid {
    double dx;
    double x_extent;
    double z_min;
    std::size_t nx;
    std::size_t nz;
    std::vector<double> Bx; // T
    std::vector<double> Bz; // T
    std::vector<std::uint8_t> singular; // 1 where a conductor lies within one cell

    double x(std::size_t ix) const;
    double z(std::size_t iz) const;
    std::size_t index(std::size_t ix, std::size_t iz) const { return iz * nx + ix; }
    std::size_t axis_column() const { return nx / 2; }

    /// Field of the same geometry with every current multiplied by `factor`.
    FieldGrid scaled(double factor) const;
};

FieldGrid loop_field(const LoopSpec& spec, const GridRequest& request);

/// Bz of one filament on its axis, mu0 I R^2 / (2 (R^2 + z^2)^{3/2}).
double on_axis_loop_field(double R, double I, double z);

struct EnergyMap {
    double dx;
    double x_extent;
    double z_min;
    std::size_t nx;
    std::size_t nz;
    double B0;
    Material material;
    std::vector<double> Bx; // total field, T
    std::vector<double> Bz; // total field including B0, T
    std::vector<double> E;  // J/m^3
    std::vector<std::uint8_t> singular;

    double x(std::size_t ix) const;
    double z(std::size_t iz) const;
    std::size_t index(std::size_t ix, std::size_t iz) const { return iz * nx + ix; }
    std::size_t axis_column() const { return nx / 2; }
};

/// E = rho g z + |chi| B^2 / (2 mu0) with B = B_loop + B0 z_hat.
EnergyMap energy_density(const FieldGrid& field, double B0, const Material& material);

/// mu0 g rho / |chi| in T^2/m.
double critical_gradient(const Material& material);

struct TrapReport {
    bool stable = false;
    double z_L = 0.0;      // m
    double E_min = 0.0;    // J/m^3
    double E_saddle = 0.0; // J/m^3
    double V_trap = 0.0;   // m^3
    bool off_axis_minimum = false;
    std::size_t min_index = 0; // map index of the grid minimum
};

TrapReport find_trap(const EnergyMap& map);

/// I / (W delta) in A/m^2.
double current_density(const LoopSpec& spec);

struct ThermalAmplitude {
    double x_rms; // m
    double z_rms; // m
};

/// Equipartition amplitudes of a sphere of radius particle_radius at temperature T,
/// from centred second differences of E * V_particle at the trap minimum.
ThermalAmplitude thermal_amplitude(const TrapReport& report, const EnergyMap& map,
                                   double particle_radius, double T);

} // namespace levqsim
