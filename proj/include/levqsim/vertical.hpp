#pragma once

#include <vector>

namespace levqsim {

// Image-charge binding potential above a dielectric surface, tilted by an
// extraction field and held constant below the truncation height b.
struct VerticalPotential {
    double Lambda;         // (eps - eps0) / (eps + eps0)
    double b = 2.3e-10;    // m
    double E_field = 0.0;  // V/m, pulls the electron away from the surface

    /// Solid neon, eps = 1.244 eps0.
    static VerticalPotential neon(double E_field = 0.0, double b = 2.3e-10);

    /// Image-potential strength A in U = -A / z (J m).
    double image_strength() const;
};

double dielectric_factor(double eps_relative);

/// Potential energy (eV) at height z > 0.
double u_perp(const VerticalPotential& potential, double z);

struct ZGrid {
    double z_max = 60e-9; // m
    double dz = 0.005e-9; // m
};

struct BoundState1D {
    double energy;      // eV, zero-field eigenvalue
    double mean_height; // m
    std::vector<double> z;
    std::vector<double> psi; // normalised, integral psi^2 dz = 1
    double eps1;        // eV, energy - E_field <z>
};

enum class Eps1Model {
    first_order_stark,      // zero-field ground state plus -e E <z>
    tilted_diagonalization, // ground state of the tilted potential, hard wall at the barrier top
};

/// Lowest bound state with a hard wall at z = 0 by finite-difference
/// diagonalisation on a uniform grid. The extraction field only enters eps1.
BoundState1D ground_state_1d(const VerticalPotential& potential, const ZGrid& grid = {},
                             Eps1Model model = Eps1Model::first_order_stark);

enum class WkbRegime {
    tunneling,    // eps1 below the barrier top
    over_barrier, // no classically forbidden region: tau = T_el
    bound,        // no extraction field: no escape channel
};

struct WKBResult {
    WkbRegime regime;
    double z1;      // m
    double z2;      // m
    double action;  // dimensionless exponent
    double T_el;    // s
    double tau;     // s
    double barrier_top; // eV
};

/// Barrier top of the tilted potential (eV) and its height z* (m).
struct BarrierTop {
    double energy;
    double z;
};
BarrierTop barrier_top(const VerticalPotential& potential);

WKBResult wkb_lifetime(const VerticalPotential& potential, double eps1);

struct LifetimePoint {
    double E_field; // V/m
    double eps1;    // eV
    WKBResult wkb;
};

/// Lifetime for each field value with eps1 from the chosen model.
std::vector<LifetimePoint> lifetime_sweep(const VerticalPotential& base,
                                          const std::vector<double>& fields, const ZGrid& grid = {},
                                          Eps1Model model = Eps1Model::first_order_stark);

} // namespace levqsim
