#include <doctest.h>

#include "levqsim/core/constants.hpp"
#include "levqsim/coupling.hpp"

#include <cmath>
#include <limits>

using namespace levqsim;

namespace {

constexpr double um = 1e-6;
constexpr double kTwoPi = 6.283185307179586476925;

} // namespace

TEST_CASE("zero-point voltage")
{
    const ResonatorSpec r{kTwoPi * 5e9, 100.0, 1e5};
    CHECK(r.V_zpf() == doctest::Approx(kTwoPi * 5e9 * std::sqrt(kConstants.hbar * 50.0)));
    CHECK_THROWS(ResonatorSpec{1.0, 0.0, 1.0}.validate());
    CHECK_THROWS(ResonatorSpec{1.0, 1.0, -1.0}.validate());
}

TEST_CASE("g scales with sqrt(Z), omega_r, EV and the dipole")
{
    const double d = 1e-26;
    const ResonatorSpec a{kTwoPi * 5e9, 100.0, 2e5};
    const double g = coupling_g(d, a);
    CHECK(coupling_g(d, ResonatorSpec{a.omega_r, 2500.0, a.EV}) / g == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(coupling_g(d, ResonatorSpec{2 * a.omega_r, a.Z_diff, a.EV}) == doctest::Approx(2 * g).epsilon(1e-15));
    CHECK(coupling_g(3 * d, a) == doctest::Approx(3 * g).epsilon(1e-15));
    CHECK(coupling_g(d, ResonatorSpec{a.omega_r, a.Z_diff, 7 * a.EV}) == doctest::Approx(7 * g).epsilon(1e-15));
    CHECK(coupling_g(d, ResonatorSpec{a.omega_r, a.Z_diff, 0.0}) == 0.0);
    CHECK(coupling_g(0.0, a) == 0.0);
    CHECK(coupling_g(d, a, CouplingOptions{true}) == doctest::Approx(g / std::sqrt(2.0)));
    // direct evaluation of the closed form
    const double expect = a.omega_r / (kTwoPi * kConstants.hbar) * std::sqrt(kConstants.hbar * 50.0) * a.EV * d;
    CHECK(g == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("exchange coupling")
{
    CHECK(exchange_J(30e6, 30e6, 150e6).J_over_2pi == doctest::Approx(6e6).epsilon(1e-15));
    CHECK(exchange_J(10e6, 10e6, 50e6).J_over_2pi == doctest::Approx(2e6).epsilon(1e-15));
    CHECK(exchange_J(30e6, 30e6, 150e6).dispersive == false);
    CHECK(exchange_J(10e6, 10e6, 150e6).dispersive == true);
    CHECK(exchange_J(10e6, 10e6, std::numeric_limits<double>::infinity()).J_over_2pi == 0.0);
    CHECK_THROWS(exchange_J(1.0, 1.0, 0.0));
}

TEST_CASE("dipole element: selection rules, fingerprints and phase")
{
    SolverParams p;
    p.dtheta = 6.2e-3;
    const SphereSystem sys =
        make_sphere_system(RingElectrode(RingGeometry{1.5 * um, 0.9 * um, 0.2}), 0.5 * um, -20e-3, p.dtheta);
    const Spectrum s = spectrum(sys, {0}, {0, 1, 2}, p);
    const auto& g = *s.find(0, 0);
    const auto& e = *s.find(0, 1);
    const double d = dipole_matrix_element(g, e, sys);
    CHECK(d > 0.0);
    CHECK(d < kConstants.e * sys.Rs);
    CHECK(dipole_matrix_element(g, g, sys) == 0.0);
    CHECK(dipole_matrix_element(g, *s.find(0, 2), sys) == 0.0);

    AngularEigenstate flipped = e;
    for (double& v : flipped.psi)
        v = -v;
    CHECK(dipole_matrix_element(g, flipped, sys) == d);

    const SphereSystem other =
        make_sphere_system(RingElectrode(RingGeometry{1.5 * um, 1.0 * um, 0.2}), 0.5 * um, -20e-3, p.dtheta);
    CHECK_THROWS_AS(dipole_matrix_element(g, e, other), SelectionRuleError);
    CHECK_THROWS_AS(couple(g, g, sys, ResonatorSpec{1e10, 100.0, 1e5}), SelectionRuleError);
    const CouplingReport rep = couple(g, e, sys, ResonatorSpec{kTwoPi * 5e9, 100.0, 2e5});
    CHECK(rep.g_over_2pi > 0.0);
    CHECK(rep.dipole_element == d);
}
