#include "levqsim/maglev.hpp"

#include "levqsim/core/constants.hpp"
#include "levqsim/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <utility>

namespace levqsim {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t cells_for(double extent, double dx)
{
    return static_cast<std::size_t>(std::llround(extent / dx));
}

} // namespace

double LoopSpec::subloop_radius(int i) const
{
    return R0 + (i - 0.5) * W / n_loops;
}

void LoopSpec::validate() const
{
    if (!(R0 > 0.0) || !(W > 0.0) || n_loops < 1 || !(delta > 0.0))
        throw GeometryError("LoopSpec requires R0 > 0, W > 0, n_loops >= 1, delta > 0");
}

double FieldGrid::x(std::size_t ix) const
{
    return (static_cast<double>(ix) - static_cast<double>(axis_column())) * dx;
}

double FieldGrid::z(std::size_t iz) const { return z_min + static_cast<double>(iz) * dx; }

FieldGrid FieldGrid::scaled(double factor) const
{
    FieldGrid out = *this;
    for (double& v : out.Bx)
        v *= factor;
    for (double& v : out.Bz)
        v *= factor;
    return out;
}

double on_axis_loop_field(double R, double I, double z)
{
    const double r2 = R * R + z * z;
    return kConstants.mu0 * I * R * R / (2.0 * r2 * std::sqrt(r2));
}

FieldGrid loop_field(const LoopSpec& spec, const GridRequest& req)
{
    spec.validate();
    if (!(req.dx > 0.0) || !(req.x_extent >= 0.0) || !(req.z_max > req.z_min))
        throw std::invalid_argument("loop_field: invalid grid request");
    if (req.phi_panels < 4 || req.phi_panels % 2 != 0)
        throw std::invalid_argument("loop_field: phi_panels must be even and >= 4");

    const std::size_t half = cells_for(req.x_extent, req.dx);
    FieldGrid f;
    f.dx = req.dx;
    f.x_extent = static_cast<double>(half) * req.dx;
    f.z_min = req.z_min;
    f.nx = 2 * half + 1;
    f.nz = cells_for(req.z_max - req.z_min, req.dx) + 1;
    f.Bx.assign(f.nx * f.nz, 0.0);
    f.Bz.assign(f.nx * f.nz, 0.0);
    f.singular.assign(f.nx * f.nz, 0);

    // Trapezoid over the full period equals the half-period rule with end weights 1/2,
    // since the integrands are even in phi.
    const int nphi = req.phi_panels / 2;
    const double dphi = 2.0 * kPi / req.phi_panels;
    std::vector<double> cphi(nphi + 1), wphi(nphi + 1);
    for (int k = 0; k <= nphi; ++k) {
        cphi[k] = std::cos(k * dphi);
        wphi[k] = (k == 0 || k == nphi) ? dphi : 2.0 * dphi;
    }

    std::vector<double> radii(spec.n_loops);
    for (int i = 1; i <= spec.n_loops; ++i)
        radii[i - 1] = spec.subloop_radius(i);
    const double prefactor = kConstants.mu0 * spec.I / (4.0 * kPi * spec.n_loops);
    const double floor2 = req.dx * req.dx;

    for (std::size_t iz = 0; iz < f.nz; ++iz) {
        const double z = f.z(iz);
        for (std::size_t ix = f.axis_column(); ix < f.nx; ++ix) {
            const double x = f.x(ix);
            bool singular = false;
            double bx = 0.0, bz = 0.0;
            for (double R : radii) {
                const double gap2 = (x - R) * (x - R) + z * z;
                const bool near = gap2 < floor2;
                singular = singular || near;
                double sx = 0.0, sz = 0.0;
                for (int k = 0; k <= nphi; ++k) {
                    double d2 = x * x + R * R - 2.0 * x * R * cphi[k] + z * z;
                    if (near && d2 < floor2)
                        d2 = floor2;
                    const double inv3 = 1.0 / (d2 * std::sqrt(d2));
                    sx += wphi[k] * R * z * cphi[k] * inv3;
                    sz += wphi[k] * (R * R - R * x * cphi[k]) * inv3;
                }
                bx += sx;
                bz += sz;
            }
            bx *= prefactor;
            bz *= prefactor;
            const std::size_t i = f.index(ix, iz);
            f.Bx[i] = bx;
            f.Bz[i] = bz;
            f.singular[i] = singular ? 1 : 0;
            // mirror: Bx odd in x, Bz even
            const std::size_t mirror = f.index(2 * f.axis_column() - ix, iz);
            f.Bx[mirror] = -bx;
            f.Bz[mirror] = bz;
            f.singular[mirror] = f.singular[i];
        }
        f.Bx[f.index(f.axis_column(), iz)] = 0.0;
    }
    return f;
}

double EnergyMap::x(std::size_t ix) const
{
    return (static_cast<double>(ix) - static_cast<double>(axis_column())) * dx;
}

double EnergyMap::z(std::size_t iz) const { return z_min + static_cast<double>(iz) * dx; }

EnergyMap energy_density(const FieldGrid& field, double B0, const Material& material)
{
    const auto& c = kConstants;
    EnergyMap map{field.dx, field.x_extent, field.z_min, field.nx, field.nz, B0, material,
                  field.Bx, field.Bz, {}, field.singular};
    map.E.resize(field.Bx.size());
    const double gravity = material.rho * c.g_acc;
    const double magnetic = std::abs(material.chi) / (2.0 * c.mu0);
    for (std::size_t iz = 0; iz < map.nz; ++iz) {
        const double z = map.z(iz);
        for (std::size_t ix = 0; ix < map.nx; ++ix) {
            const std::size_t i = map.index(ix, iz);
            map.Bz[i] += B0;
            const double b2 = map.Bx[i] * map.Bx[i] + map.Bz[i] * map.Bz[i];
            map.E[i] = gravity * z + magnetic * b2;
        }
    }
    return map;
}

double critical_gradient(const Material& material)
{
    if (material.chi == 0.0)
        throw std::invalid_argument("critical_gradient: chi = 0, material cannot be levitated");
    const auto& c = kConstants;
    return c.mu0 * c.g_acc * material.rho / std::abs(material.chi);
}

double current_density(const LoopSpec& spec)
{
    if (!(spec.W > 0.0) || !(spec.delta > 0.0))
        throw GeometryError("current_density requires W > 0 and delta > 0");
    return spec.I / (spec.W * spec.delta);
}

TrapReport find_trap(const EnergyMap& map)
{
    TrapReport report;
    if (map.nz < 3 || map.nx < 3)
        return report;
    const std::size_t axis = map.axis_column();
    const auto& E = map.E;

    // lowest interior on-axis minimum that is also a minimum across the axis
    std::size_t best = 0;
    bool found = false;
    for (std::size_t iz = 1; iz + 1 < map.nz; ++iz) {
        const std::size_t i = map.index(axis, iz);
        if (map.singular[i])
            continue;
        const double e = E[i];
        if (e < E[map.index(axis, iz - 1)] && e < E[map.index(axis, iz + 1)] &&
            e < E[map.index(axis + 1, iz)] && (!found || e < E[best])) {
            best = i;
            found = true;
        }
    }
    if (!found)
        return report;

    const double e_min = E[best];
    const std::size_t nx = map.nx;
    auto is_exterior = [&](std::size_t ix, std::size_t iz) {
        return ix + 1 == nx || iz == 0 || iz + 1 == map.nz || map.singular[map.index(ix, iz)];
    };

    // Priority flood over the x >= 0 half-plane: the running maximum of the
    // popped energies when the flood first escapes is the minimax (saddle) level.
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
    std::vector<std::uint8_t> seen(E.size(), 0);
    frontier.emplace(e_min, best);
    seen[best] = 1;
    double level = e_min;
    double saddle = std::numeric_limits<double>::quiet_NaN();
    while (!frontier.empty()) {
        const auto [e, i] = frontier.top();
        frontier.pop();
        level = std::max(level, e);
        const std::size_t ix = i % nx;
        const std::size_t iz = i / nx;
        if (is_exterior(ix, iz) || e < e_min) {
            saddle = level;
            break;
        }
        const std::size_t nbr[4][2] = {{ix + 1, iz}, {ix - 1, iz}, {ix, iz + 1}, {ix, iz - 1}};
        for (const auto& nb : nbr) {
            if (nb[0] < axis || nb[0] >= nx || nb[1] >= map.nz)
                continue;
            const std::size_t j = map.index(nb[0], nb[1]);
            if (!seen[j]) {
                seen[j] = 1;
                frontier.emplace(E[j], j);
            }
        }
    }
    if (std::isnan(saddle))
        return report;

    // connected sub-level region below the saddle, revolved about the axis
    std::vector<std::uint8_t> inside(E.size(), 0);
    std::vector<std::size_t> stack{best};
    inside[best] = 1;
    double volume = 0.0;
    double region_min = e_min;
    std::size_t region_argmin = best;
    const double dx = map.dx;
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        const std::size_t ix = i % nx;
        const std::size_t iz = i / nx;
        const double x = map.x(ix);
        volume += (ix == axis) ? kPi * 0.25 * dx * dx * dx : 2.0 * kPi * x * dx * dx;
        if (E[i] < region_min) {
            region_min = E[i];
            region_argmin = i;
        }
        const std::size_t nbr[4][2] = {{ix + 1, iz}, {ix - 1, iz}, {ix, iz + 1}, {ix, iz - 1}};
        for (const auto& nb : nbr) {
            if (nb[0] < axis || nb[0] >= nx || nb[1] >= map.nz)
                continue;
            const std::size_t j = map.index(nb[0], nb[1]);
            if (!inside[j] && E[j] < saddle) {
                inside[j] = 1;
                stack.push_back(j);
            }
        }
    }

    // parabolic refinement of the minimum height along the axis
    const std::size_t iz = best / nx;
    const double em = E[map.index(axis, iz - 1)];
    const double ep = E[map.index(axis, iz + 1)];
    const double curvature = em - 2.0 * e_min + ep;
    double z_L = map.z(iz);
    if (curvature > 0.0)
        z_L += 0.5 * dx * (em - ep) / curvature;

    report.z_L = z_L;
    report.E_min = e_min;
    report.E_saddle = saddle;
    report.V_trap = volume;
    report.min_index = best;
    report.off_axis_minimum = region_argmin != best;
    report.stable = saddle > e_min && volume > 0.0 && z_L > 0.0;
    return report;
}

ThermalAmplitude thermal_amplitude(const TrapReport& report, const EnergyMap& map,
                                   double particle_radius, double T)
{
    if (!report.stable)
        throw std::invalid_argument("thermal_amplitude: trap is not stable");
    if (!(particle_radius > 0.0) || T < 0.0)
        throw std::invalid_argument("thermal_amplitude: radius must be positive and T >= 0");
    const std::size_t i = report.min_index;
    const std::size_t ix = i % map.nx;
    const std::size_t iz = i / map.nx;
    if (ix == 0 || ix + 1 >= map.nx || iz == 0 || iz + 1 >= map.nz)
        throw std::invalid_argument("thermal_amplitude: minimum on the map boundary");

    const double volume = 4.0 / 3.0 * kPi * std::pow(particle_radius, 3);
    const double d2 = map.dx * map.dx;
    const double e0 = map.E[i];
    const double kx = volume * (map.E[map.index(ix + 1, iz)] - 2.0 * e0 + map.E[map.index(ix - 1, iz)]) / d2;
    const double kz = volume * (map.E[map.index(ix, iz + 1)] - 2.0 * e0 + map.E[map.index(ix, iz - 1)]) / d2;
    if (!(kx > 0.0) || !(kz > 0.0))
        throw NumericalError("thermal_amplitude: non-positive curvature at the trap minimum");
    const double kT = kConstants.k_B * T;
    return {std::sqrt(kT / kx), std::sqrt(kT / kz)};
}

} // namespace levqsim
