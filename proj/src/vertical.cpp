#include "levqsim/vertical.hpp"

#include "levqsim/core/constants.hpp"
#include "levqsim/core/errors.hpp"
#include "levqsim/core/linalg.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace levqsim {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-12;

// Potential in joules; z in metres.
double u_joule(const VerticalPotential& p, double z)
{
    const double a = p.image_strength();
    const double zz = z < p.b ? p.b : z;
    return -a / zz - kConstants.e * p.E_field * z;
}

double find_root(auto&& f, double lo, double hi)
{
    boost::uintmax_t max_iter = 200;
    const auto tol = boost::math::tools::eps_tolerance<double>(52);
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, max_iter);
    return 0.5 * (r.first + r.second);
}

} // namespace

VerticalPotential VerticalPotential::neon(double E_field, double b)
{
    return VerticalPotential{dielectric_factor(1.244), b, E_field};
}

double VerticalPotential::image_strength() const
{
    const auto& c = kConstants;
    return Lambda * c.e * c.e / (16.0 * std::numbers::pi * c.eps0);
}

double dielectric_factor(double eps_relative)
{
    return (eps_relative - 1.0) / (eps_relative + 1.0);
}

double u_perp(const VerticalPotential& potential, double z)
{
    if (!(z > 0.0))
        throw std::domain_error("u_perp: height must be positive");
    return u_joule(potential, z) / units::eV;
}

BoundState1D ground_state_1d(const VerticalPotential& potential, const ZGrid& grid, Eps1Model model)
{
    if (!(grid.dz > 0.0) || !(grid.z_max > 10.0 * grid.dz))
        throw std::invalid_argument("ground_state_1d: invalid z grid");
    const auto& c = kConstants;
    VerticalPotential solved = potential;
    double z_wall = grid.z_max;
    if (model == Eps1Model::first_order_stark)
        solved.E_field = 0.0;
    else if (potential.E_field > 0.0)
        // quasi-bound state: without a wall at the barrier top the box ground
        // state collapses onto the far end of the tilted potential
        z_wall = std::min(z_wall, barrier_top(potential).z);
    if (!(z_wall > 10.0 * grid.dz))
        throw std::invalid_argument("ground_state_1d: barrier closer than ten grid steps");
    const std::size_t n = static_cast<std::size_t>(std::floor(z_wall / grid.dz + 1e-9)) - 1;

    // eV and nm keep the matrix entries O(1)
    const double dz_nm = grid.dz / units::nm;
    const double kinetic = c.hbar * c.hbar / (2.0 * c.m_e) / (units::eV * units::nm * units::nm);
    std::vector<double> diag(n), off(n - 1, -kinetic / (dz_nm * dz_nm));
    std::vector<double> z(n);
    for (std::size_t j = 0; j < n; ++j) {
        z[j] = (j + 1) * grid.dz;
        diag[j] = 2.0 * kinetic / (dz_nm * dz_nm) + u_joule(solved, z[j]) / units::eV;
    }
    const EigenSystem eig = lowest_eigenpairs_tridiagonal(diag, off, 1);
    const double energy = eig.values[0];
    if (!(energy < 0.0))
        throw NumericalError("ground_state_1d: no bound state below the vacuum level");

    BoundState1D out;
    out.energy = energy;
    out.z = z;
    out.psi = eig.vectors[0];
    double norm = 0.0;
    for (double v : out.psi)
        norm += v * v * grid.dz;
    const double scale = 1.0 / std::sqrt(norm);
    double mean = 0.0;
    double peak = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out.psi[j] *= scale;
        mean += z[j] * out.psi[j] * out.psi[j] * grid.dz;
        if (std::abs(out.psi[j]) > std::abs(peak))
            peak = out.psi[j];
    }
    if (peak < 0.0)
        for (double& v : out.psi)
            v = -v;
    out.mean_height = mean;
    out.eps1 = (model == Eps1Model::first_order_stark) ? energy - potential.E_field * mean : energy;
    return out;
}

BarrierTop barrier_top(const VerticalPotential& p)
{
    if (!(p.E_field > 0.0))
        return {0.0, std::numeric_limits<double>::infinity()};
    const double a = p.image_strength();
    double z = std::sqrt(a / (kConstants.e * p.E_field));
    // below b the potential is a plateau tilted downward: the top is at b
    if (z < p.b)
        z = p.b;
    return {u_joule(p, z) / units::eV, z};
}

WKBResult wkb_lifetime(const VerticalPotential& p, double eps1_eV)
{
    const auto& c = kConstants;
    const double eps1 = eps1_eV * units::eV;
    const double plateau = u_joule(p, p.b);
    if (!(eps1 > plateau))
        throw std::invalid_argument("wkb_lifetime: eps1 lies below the potential floor");
    const BarrierTop top = barrier_top(p);

    auto u_minus = [&](double z) { return u_joule(p, z) - eps1; };

    WKBResult out{};
    out.barrier_top = top.energy;

    // z1: classically allowed region [0, z1)
    double z1;
    if (p.E_field > 0.0 && !(eps1 < top.energy * units::eV)) {
        out.regime = WkbRegime::over_barrier;
        z1 = top.z;
    } else {
        double hi = p.E_field > 0.0 ? top.z : p.b;
        if (p.E_field <= 0.0)
            while (u_minus(hi) < 0.0)
                hi *= 2.0;
        z1 = find_root(u_minus, p.b, hi);
        out.regime = p.E_field > 0.0 ? WkbRegime::tunneling : WkbRegime::bound;
    }
    out.z1 = z1;

    // classical period: plateau part analytically, the rest with z = z1 - s^2
    const double plateau_speed = std::sqrt(2.0 * (eps1 - plateau) / c.m_e);
    double period = p.b / plateau_speed;
    if (z1 > p.b) {
        const double s_max = std::sqrt(z1 - p.b);
        auto integrand = [&](double s) {
            const double z = z1 - s * s;
            const double gap = eps1 - u_joule(p, z);
            if (s == 0.0) {
                // gap ~ U'(z1) s^2 near the turning point
                const double slope = p.image_strength() / (z1 * z1) - c.e * p.E_field;
                return 2.0 * std::sqrt(c.m_e / (2.0 * slope));
            }
            return 2.0 * s * std::sqrt(c.m_e / (2.0 * gap));
        };
        period += gauss_kronrod<double, 31>::integrate(integrand, 0.0, s_max, 15, kQuadTol);
    }
    out.T_el = 2.0 * period;

    if (out.regime == WkbRegime::bound) {
        out.z2 = std::numeric_limits<double>::infinity();
        out.action = std::numeric_limits<double>::infinity();
        out.tau = std::numeric_limits<double>::infinity();
        return out;
    }
    if (out.regime == WkbRegime::over_barrier) {
        out.z2 = z1;
        out.action = 0.0;
        out.tau = out.T_el;
        return out;
    }

    double hi = 2.0 * top.z;
    while (u_minus(hi) > 0.0)
        hi *= 2.0;
    const double z2 = find_root(u_minus, top.z, hi);
    out.z2 = z2;

    // z = mid - half cos(t) removes the square-root endpoint behaviour
    const double mid = 0.5 * (z1 + z2);
    const double half = 0.5 * (z2 - z1);
    auto barrier = [&](double t) {
        const double z = mid - half * std::cos(t);
        const double gap = u_minus(z);
        return gap > 0.0 ? std::sqrt(2.0 * c.m_e * gap) * half * std::sin(t) : 0.0;
    };
    const double integral =
        gauss_kronrod<double, 31>::integrate(barrier, 0.0, std::numbers::pi, 15, kQuadTol);
    out.action = 2.0 / c.hbar * integral;
    out.tau = out.T_el * std::exp(out.action);
    return out;
}

std::vector<LifetimePoint> lifetime_sweep(const VerticalPotential& base,
                                          const std::vector<double>& fields, const ZGrid& grid,
                                          Eps1Model model)
{
    std::vector<LifetimePoint> out;
    out.reserve(fields.size());
    // the zero-field state is shared by every first-order point
    const BoundState1D zero_field = ground_state_1d(VerticalPotential{base.Lambda, base.b, 0.0}, grid);
    for (double f : fields) {
        VerticalPotential p = base;
        p.E_field = f;
        const double eps1 = (model == Eps1Model::first_order_stark)
                                ? zero_field.energy - f * zero_field.mean_height
                                : ground_state_1d(p, grid, model).eps1;
        out.push_back(LifetimePoint{f, eps1, wkb_lifetime(p, eps1)});
    }
    return out;
}

} // namespace levqsim
