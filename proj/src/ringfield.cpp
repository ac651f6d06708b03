#include "levqsim/ringfield.hpp"

#include "levqsim/core/constants.hpp"
#include "levqsim/core/errors.hpp"
#include "levqsim/core/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levqsim {

double solve_Keff(const RingGeometry& g)
{
    if (!(g.Rr > 0.0) || !(g.a_r > 0.0) || g.a_r >= g.Rr)
        throw GeometryError("ring electrode requires Rr > a_r > 0");
    const double rho = g.Rr - g.a_r;
    const double span = g.Rr + rho; // (z - H) = 0 at the anchor
    const double k2 = 4.0 * g.Rr * rho / (span * span);
    return -2.0 * elliptic_K(k2) / span;
}

RingElectrode::RingElectrode(const RingGeometry& geometry)
    : RingElectrode(geometry, solve_Keff(geometry))
{
}

RingElectrode::RingElectrode(const RingGeometry& geometry, double k_eff)
    : geometry_(geometry), k_eff_(k_eff)
{
}

RingElectrode RingElectrode::with_bias(double Vr) const
{
    RingGeometry g = geometry_;
    g.Vr = Vr;
    return RingElectrode(g, k_eff_);
}

double RingElectrode::potential(double rho, double z) const
{
    const auto& g = geometry_;
    const double dz = z - g.H;
    const double sum = g.Rr + rho;
    const double denom2 = sum * sum + dz * dz;
    const double prefactor = 2.0 * kConstants.e * g.Vr / k_eff_;
    if (rho == 0.0)
        return prefactor * (std::numbers::pi / 2.0) / std::sqrt(denom2);
    const double k2 = 4.0 * g.Rr * rho / denom2;
    if (k2 >= 1.0)
        throw GeometryError("ring_potential: point lies on the ring");
    return prefactor * elliptic_K(k2) / std::sqrt(denom2);
}

bool sphere_intersects_ring(const RingGeometry& g, double Rs)
{
    return std::hypot(g.Rr, g.H) <= Rs;
}

LateralPotential lateral_potential(const RingElectrode& electrode, double Rs, const ThetaGrid& grid)
{
    if (!(Rs > 0.0))
        throw GeometryError("lateral_potential: sphere radius must be positive");
    if (sphere_intersects_ring(electrode.geometry(), Rs))
        throw GeometryError("lateral_potential: sphere intersects the ring electrode");
    LateralPotential out{grid, std::vector<double>(grid.size()), Rs};
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = grid.theta(j);
        // exact zero on the poles keeps the on-axis branch
        const double rho = (t == 0.0 || t == std::numbers::pi) ? 0.0 : Rs * std::sin(t);
        out.U[j] = electrode.potential(rho, Rs * std::cos(t));
    }
    return out;
}

double pole_field(const RingElectrode& electrode, double Rs)
{
    const auto& g = electrode.geometry();
    if (std::abs(Rs - g.H) < 1e-15 && g.Rr == 0.0)
        throw GeometryError("pole_field: pole coincides with the ring");
    // on axis U(0,z) = C / d with d = sqrt(Rr^2 + (z-H)^2)
    const double c = kConstants.e * g.Vr * std::numbers::pi / electrode.k_eff();
    const double dz = Rs - g.H;
    const double d = std::hypot(g.Rr, dz);
    const double dU_dz = -c * dz / (d * d * d);
    return -dU_dz / kConstants.e;
}

} // namespace levqsim
