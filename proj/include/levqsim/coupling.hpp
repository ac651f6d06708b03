#pragma once

#include "levqsim/eigensolver.hpp"

#include <stdexcept>

namespace levqsim {

struct ResonatorSpec {
    double omega_r; // rad/s
    double Z_diff;  // Ohm
    double EV;      // 1/m, field per volt of differential drive at the qubit

    /// omega_r * sqrt(hbar Z_diff / 2), V
    double V_zpf() const;
    void validate() const;
};

/// Thrown when the states do not satisfy the Delta m = +1 rule or come from
/// different systems.
class SelectionRuleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// |<e| d_{+1} |g>| in C m. The azimuthal integral is done analytically, so only
/// excited.m == ground.m + 1 contributes; other pairs give zero. Mismatched
/// fingerprints throw SelectionRuleError.
double dipole_matrix_element(const AngularEigenstate& ground, const AngularEigenstate& excited,
                             const SphereSystem& system);

/// Closed-form element for the harmonic (pendulum) limit, e sqrt(hbar / (2 m_e omega0)).
double harmonic_dipole_element(double omega0);

struct CouplingOptions {
    // Insert the extra 1/sqrt(2) from resolving E_x into circular components.
    bool circular_half_factor = false;
};

/// g / 2pi in Hz.
double coupling_g(double dipole_element, const ResonatorSpec& spec, const CouplingOptions& opts = {});

struct CouplingReport {
    double dipole_element; // C m
    double g_over_2pi;     // Hz
    ResonatorSpec resonator;
    CouplingOptions options;
};

CouplingReport couple(const AngularEigenstate& ground, const AngularEigenstate& excited,
                      const SphereSystem& system, const ResonatorSpec& spec,
                      const CouplingOptions& opts = {});

struct ExchangeResult {
    double J_over_2pi; // Hz
    bool dispersive;   // |delta| >= 10 max(|g1|, |g2|)
};

/// J = g1 g2 / delta, all as /2pi frequencies in Hz. delta == 0 throws.
ExchangeResult exchange_J(double g1, double g2, double delta);

} // namespace levqsim
