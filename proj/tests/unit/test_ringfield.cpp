#include <doctest.h>

#include "levqsim/core/constants.hpp"
#include "levqsim/core/errors.hpp"
#include "levqsim/eigensolver.hpp"
#include "levqsim/ringfield.hpp"

#include <algorithm>
#include <cmath>

using namespace levqsim;

namespace {

constexpr double um = 1e-6;

std::size_t argmin(const LateralPotential& lat)
{
    return static_cast<std::size_t>(std::min_element(lat.U.begin(), lat.U.end()) - lat.U.begin());
}

// U''(0) from a parabola fit through the first cell centres
double pole_curvature(const LateralPotential& lat)
{
    const double t0 = lat.grid.theta(0), t1 = lat.grid.theta(1);
    return 2.0 * (lat.U[1] - lat.U[0]) / (t1 * t1 - t0 * t0);
}

LateralPotential fig9(double H)
{
    const RingElectrode e(RingGeometry{1.5 * um, H, 0.15});
    return lateral_potential(e, 0.5 * um, ThetaGrid::cells_with_step(3.1e-3));
}

} // namespace

TEST_CASE("normalisation pins the electron energy at the pin edge")
{
    const RingGeometry g{1.5 * um, 0.85 * um, 0.2, 0.1 * um};
    const RingElectrode e(g);
    CHECK(e.k_eff() < 0.0);
    CHECK(e.potential(g.Rr - g.a_r, g.H) == doctest::Approx(-kConstants.e * g.Vr).epsilon(1e-12));
    // K_eff does not depend on the bias
    CHECK(solve_Keff(RingGeometry{1.5 * um, 0.85 * um, 0.05, 0.1 * um}) == doctest::Approx(e.k_eff()).epsilon(1e-14));
}

TEST_CASE("potential is linear in the bias and continuous onto the axis")
{
    const RingElectrode e(RingGeometry{1.5 * um, 0.85 * um, 0.1});
    const RingElectrode e2 = e.with_bias(0.3);
    for (double rho : {0.0, 0.2 * um, 1.0 * um})
        CHECK(e2.potential(rho, 0.3 * um) == doctest::Approx(3.0 * e.potential(rho, 0.3 * um)).epsilon(1e-12));
    CHECK(e.potential(1e-12 * um, 0.4 * um) == doctest::Approx(e.potential(0.0, 0.4 * um)).epsilon(1e-10));
}

TEST_CASE("pole field equals the finite-difference derivative")
{
    const RingElectrode e(RingGeometry{1.5 * um, 1.0 * um, 0.25});
    const double Rs = 0.5 * um, d = 1e-4 * um;
    const double fd = -(e.potential(0.0, Rs + d) - e.potential(0.0, Rs - d)) / (2 * d) / kConstants.e;
    CHECK(pole_field(e, Rs) == doctest::Approx(fd).epsilon(1e-6));
    CHECK(pole_field(e, Rs) > 0.0);
}

TEST_CASE("single minimum at the pole for a distant ring")
{
    const auto lat = fig9(1.0 * um);
    CHECK(argmin(lat) == 0);
    CHECK(pole_curvature(lat) > 0.0);
}

TEST_CASE("minimum moves off the pole when the ring comes close")
{
    const auto lat = fig9(0.6 * um);
    CHECK(lat.grid.theta(argmin(lat)) > 0.3);
}

TEST_CASE("near-critical distance gives a flat bottom")
{
    const double c1 = pole_curvature(fig9(1.0 * um));
    const double c72 = pole_curvature(fig9(0.72 * um));
    CHECK(std::abs(c72) < 0.1 * c1);
}

TEST_CASE("off-pole minimum appears once the sphere is close enough")
{
    // The minimum leaves the pole between H = 0.75 and 0.70 um; it is at the pole
    // for larger H and grows monotonically as H drops.
    double last = -1.0;
    for (double H : {1.1, 0.9, 0.8, 0.75, 0.7, 0.65, 0.6}) {
        const auto lat = fig9(H * um);
        const double t = argmin(lat) == 0 ? 0.0 : lat.grid.theta(argmin(lat));
        if (H >= 0.75)
            CHECK(t == 0.0);
        CHECK(t >= last);
        last = t;
    }
    CHECK(last > 0.0);
}

TEST_CASE("sphere touching the ring is rejected")
{
    const RingGeometry g{0.4 * um, 0.2 * um, 0.1};
    CHECK(sphere_intersects_ring(g, 0.5 * um));
    CHECK_THROWS_AS(lateral_potential(RingElectrode(g), 0.5 * um, ThetaGrid::cells_with_step(0.01)), GeometryError);
    CHECK_FALSE(sphere_intersects_ring(RingGeometry{1.5 * um, 0.6 * um, 0.1}, 0.5 * um));
    CHECK_THROWS_AS(RingElectrode(g).potential(g.Rr, g.H), GeometryError);
}
