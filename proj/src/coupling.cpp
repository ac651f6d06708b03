#include "levqsim/coupling.hpp"

#include "levqsim/core/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace levqsim {

double ResonatorSpec::V_zpf() const
{
    return omega_r * std::sqrt(kConstants.hbar * Z_diff / 2.0);
}

void ResonatorSpec::validate() const
{
    if (!std::isfinite(omega_r) || !std::isfinite(Z_diff) || !std::isfinite(EV))
        throw std::invalid_argument("ResonatorSpec: non-finite input");
    if (!(Z_diff > 0.0))
        throw std::invalid_argument("ResonatorSpec: Z_diff must be positive");
    if (EV < 0.0)
        throw std::invalid_argument("ResonatorSpec: EV must be non-negative");
}

double dipole_matrix_element(const AngularEigenstate& ground, const AngularEigenstate& excited,
                             const SphereSystem& system)
{
    if (ground.fingerprint != system.fingerprint || excited.fingerprint != system.fingerprint)
        throw SelectionRuleError("dipole_matrix_element: states come from a different system");
    const auto& grid = system.lateral.grid;
    if (ground.psi.size() != grid.size() || excited.psi.size() != grid.size())
        throw SelectionRuleError("dipole_matrix_element: wavefunction size does not match the grid");
    if (excited.m != ground.m + 1)
        return 0.0;

    // integral of psi_e psi_g sin^2(theta) d(theta), with the grid weights carrying one sin
    const auto& w = grid.weights();
    double overlap = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        overlap += w[j] * std::sin(grid.theta(j)) * excited.psi[j] * ground.psi[j];
    return kConstants.e * system.Rs / std::numbers::sqrt2 * std::abs(overlap);
}

double harmonic_dipole_element(double omega0)
{
    if (!(omega0 > 0.0))
        throw std::invalid_argument("harmonic_dipole_element: omega0 must be positive");
    const auto& c = kConstants;
    return c.e * std::sqrt(c.hbar / (2.0 * c.m_e * omega0));
}

double coupling_g(double dipole_element, const ResonatorSpec& spec, const CouplingOptions& opts)
{
    const double hbar = kConstants.hbar;
    double g = spec.omega_r / (2.0 * std::numbers::pi * hbar) * std::sqrt(hbar * spec.Z_diff / 2.0) *
               spec.EV * dipole_element;
    if (opts.circular_half_factor)
        g /= std::numbers::sqrt2;
    return g;
}

CouplingReport couple(const AngularEigenstate& ground, const AngularEigenstate& excited,
                      const SphereSystem& system, const ResonatorSpec& spec, const CouplingOptions& opts)
{
    spec.validate();
    if (ground.m != 0 || excited.m != 1)
        throw SelectionRuleError("couple: expects ground m = 0 and excited m = 1, got m = " +
                                 std::to_string(ground.m) + " and " + std::to_string(excited.m));
    const double d = dipole_matrix_element(ground, excited, system);
    return {d, coupling_g(d, spec, opts), spec, opts};
}

ExchangeResult exchange_J(double g1, double g2, double delta)
{
    if (delta == 0.0)
        throw std::invalid_argument("exchange_J: zero detuning is outside the dispersive model");
    return {g1 * g2 / delta, std::abs(delta) >= 10.0 * std::max(std::abs(g1), std::abs(g2))};
}

} // namespace levqsim
