#include <doctest.h>

#include "levqsim/core/constants.hpp"
#include "levqsim/vertical.hpp"

#include <cmath>
#include <stdexcept>

using namespace levqsim;

namespace {

// Hydrogen-like ground state of U = -A/z with a hard wall at z = 0:
// E = -m A^2 / (2 hbar^2), <z> = 3 a / 2 with a = hbar^2 / (m A).
struct Hydrogenic {
    double energy_eV;
    double mean_z;
};

Hydrogenic hydrogenic(double Lambda)
{
    const auto& c = kConstants;
    const double A = Lambda * c.e * c.e / (16.0 * 3.14159265358979323846 * c.eps0);
    const double a = c.hbar * c.hbar / (c.m_e * A);
    return {-c.m_e * A * A / (2.0 * c.hbar * c.hbar) / c.e, 1.5 * a};
}

} // namespace

TEST_CASE("dielectric factor of neon")
{
    CHECK(dielectric_factor(1.244) == doctest::Approx(0.244 / 2.244).epsilon(1e-14));
    CHECK(VerticalPotential::neon().Lambda == doctest::Approx(0.1087).epsilon(1e-3));
}

TEST_CASE("ground state approaches the hydrogenic oracle as b -> 0")
{
    VerticalPotential v = VerticalPotential::neon(0.0, 0.0);
    const auto oracle = hydrogenic(v.Lambda);
    const BoundState1D gs = ground_state_1d(v, ZGrid{60e-9, 0.005e-9});
    CHECK(gs.energy == doctest::Approx(oracle.energy_eV).epsilon(1e-3));
    CHECK(gs.mean_height == doctest::Approx(oracle.mean_z).epsilon(1e-3));
    CHECK(oracle.energy_eV == doctest::Approx(-10.05e-3).epsilon(2e-3));
}

TEST_CASE("truncation raises the ground state")
{
    const auto bare = ground_state_1d(VerticalPotential::neon(0.0, 0.0), ZGrid{60e-9, 0.01e-9});
    const auto cut = ground_state_1d(VerticalPotential::neon(0.0, 2.3e-10), ZGrid{60e-9, 0.01e-9});
    CHECK(cut.energy > bare.energy);
    CHECK(cut.mean_height > bare.mean_height);
}

TEST_CASE("u_perp rejects z <= 0 and is flat below b")
{
    const auto v = VerticalPotential::neon(0.0, 2.3e-10);
    CHECK_THROWS(u_perp(v, 0.0));
    CHECK_THROWS(u_perp(v, -1e-9));
    CHECK(u_perp(v, 1e-10) == u_perp(v, 2e-10));
}

TEST_CASE("extraction field creates a barrier at finite height")
{
    const auto v = VerticalPotential::neon(0.35e6);
    const BarrierTop top = barrier_top(v);
    CHECK(top.z > 1e-9);
    CHECK(top.z < 100e-9);
    CHECK(u_perp(v, top.z) >= u_perp(v, 0.9 * top.z));
    CHECK(u_perp(v, top.z) >= u_perp(v, 1.1 * top.z));
}

TEST_CASE("no field means no escape")
{
    const auto r = wkb_lifetime(VerticalPotential::neon(0.0), -0.01);
    CHECK(r.regime == WkbRegime::bound);
    CHECK(std::isinf(r.tau));
}

TEST_CASE("lifetime decreases monotonically with the field")
{
    std::vector<double> fields;
    for (double f = 0.1e6; f <= 0.8e6; f += 0.05e6)
        fields.push_back(f);
    const auto pts = lifetime_sweep(VerticalPotential::neon(), fields, ZGrid{60e-9, 0.01e-9});
    for (std::size_t i = 1; i < pts.size(); ++i)
        CHECK(pts[i].wkb.tau < pts[i - 1].wkb.tau);
    for (const auto& p : pts)
        if (p.wkb.regime == WkbRegime::tunneling) {
            CHECK(p.wkb.z1 < p.wkb.z2);
            CHECK(p.wkb.action > 0.0);
        }
}

TEST_CASE("first-order Stark shift")
{
    const auto v0 = VerticalPotential::neon(0.0);
    const auto gs0 = ground_state_1d(v0, ZGrid{60e-9, 0.01e-9});
    const auto gs = ground_state_1d(VerticalPotential::neon(0.3e6), ZGrid{60e-9, 0.01e-9});
    CHECK(gs.eps1 == doctest::Approx(gs0.energy - 0.3e6 * gs0.mean_height).epsilon(1e-12));
}

TEST_CASE("tilted model stays quasi-bound and close to the Stark estimate")
{
    std::vector<double> fields;
    for (double e = 0.1e6; e <= 0.8e6; e += 0.05e6)
        fields.push_back(e);
    const auto tilted = lifetime_sweep(VerticalPotential::neon(), fields, ZGrid{}, Eps1Model::tilted_diagonalization);
    const auto stark = lifetime_sweep(VerticalPotential::neon(), fields, ZGrid{}, Eps1Model::first_order_stark);
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0)
            CHECK(tilted[i].wkb.tau <= tilted[i - 1].wkb.tau);
        // second-order Stark shifts are small against the binding energy
        CHECK(std::abs(tilted[i].eps1 - stark[i].eps1) < 0.1 * std::abs(stark[i].eps1));
    }
}
