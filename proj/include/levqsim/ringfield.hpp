#pragma once

#include "levqsim/core/theta_grid.hpp"

#include <vector>

namespace levqsim {

// Thin ring electrode of radius Rr in the plane z = H (sphere centre at the
// origin), biased at Vr. a_r is the effective half-width of the resonator pin,
// used only to anchor the normalisation.
struct RingGeometry {
    double Rr;          // m
    double H;           // m
    double Vr;          // V
    double a_r = 0.1e-6; // m
};

/// Normalisation factor K_eff (1/m) such that the electron energy at the pin
/// edge (rho = Rr - a_r, z = H) is exactly -e*Vr. Independent of Vr; negative.
double solve_Keff(const RingGeometry& geometry);

class RingElectrode {
public:
    explicit RingElectrode(const RingGeometry& geometry);

    const RingGeometry& geometry() const { return geometry_; }
    double k_eff() const { return k_eff_; }

    /// Electron potential energy (J) at cylindrical (rho, z).
    double potential(double rho, double z) const;

    /// Same electrode with a different bias; K_eff is reused.
    RingElectrode with_bias(double Vr) const;

private:
    RingElectrode(const RingGeometry& geometry, double k_eff);

    RingGeometry geometry_;
    double k_eff_;
};

inline double ring_potential(const RingElectrode& electrode, double rho, double z)
{
    return electrode.potential(rho, z);
}

struct LateralPotential {
    ThetaGrid grid;
    std::vector<double> U; // J, one per grid point
    double Rs;             // m
};

/// U(theta) = U(Rs sin(theta), Rs cos(theta)); throws GeometryError when the sphere
/// touches the ring.
LateralPotential lateral_potential(const RingElectrode& electrode, double Rs, const ThetaGrid& grid);

/// Field strength (V/m) at the north pole, E_r = -(1/e) dU(0,z)/dz at z = Rs,
/// positive when the pole is pulled toward the ring.
double pole_field(const RingElectrode& electrode, double Rs);

/// True when the ring circle lies at or inside the sphere surface.
bool sphere_intersects_ring(const RingGeometry& geometry, double Rs);

} // namespace levqsim
