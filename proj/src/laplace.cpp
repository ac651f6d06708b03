#include "levqsim/laplace.hpp"

#include "levqsim/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstring>
#include <numbers>
#include <string>

namespace levqsim {

namespace {

// Conductor cross-section: rectangle with every edge rounded to radius r.
struct Shape {
    double x0, x1, z0, z1, r;
    Conductor kind;

    bool contains(double x, double z, double slack) const
    {
        const double cx = 0.5 * (x0 + x1), cz = 0.5 * (z0 + z1);
        const double dx = std::max(std::abs(x - cx) - (0.5 * (x1 - x0) - r), 0.0);
        const double dz = std::max(std::abs(z - cz) - (0.5 * (z1 - z0) - r), 0.0);
        const double rr = r + slack;
        return dx * dx + dz * dz <= rr * rr;
    }
};

std::vector<Shape> conductors(const PinGeometry& g)
{
    const double c = 0.5 * g.pin_gap;
    const double w = 0.5 * g.pin_width;
    const double ground0 = c + w + g.ground_gap;
    const double ground1 = ground0 + g.ground_extent;
    const double r = g.edge_radius;
    return {
        {-c - w, -c + w, 0.0, g.pin_thickness, r, Conductor::left_pin},
        {c - w, c + w, 0.0, g.pin_thickness, r, Conductor::right_pin},
        {-ground1, -ground0, 0.0, g.pin_thickness, r, Conductor::ground},
        {ground0, ground1, 0.0, g.pin_thickness, r, Conductor::ground},
    };
}

bool on_grid(double v, double h)
{
    const double k = v / h;
    return std::abs(k - std::round(k)) < 1e-6;
}

} // namespace

void PinGeometry::validate() const
{
    if (!(h > 0.0) || !(pin_width > 0.0) || !(pin_thickness > 0.0) || !(ground_gap > 0.0) ||
        !(ground_extent > 0.0) || !(half_width > 0.0) || !(half_height > 0.0) || well_depth < 0.0 ||
        !(edge_radius > 0.0))
        throw GeometryError("PinGeometry: dimensions must be positive");
    if (edge_radius > 0.5 * pin_thickness || edge_radius > 0.5 * pin_width)
        throw GeometryError("PinGeometry: edge_radius exceeds half the pin cross-section");
    if (!(pin_gap > pin_width))
        throw GeometryError("PinGeometry: pins overlap (pin_gap <= pin_width)");
    const double outer = 0.5 * pin_gap + 0.5 * pin_width + ground_gap;
    if (!(outer < half_width) || !(pin_thickness < half_height))
        throw GeometryError("PinGeometry: conductors do not fit in the domain");
    if (!on_grid(half_width, h) || !on_grid(half_height, h))
        throw GeometryError("PinGeometry: domain size must be a multiple of h");
    if (pin_width < 2.0 * h || pin_thickness < h)
        throw GeometryError("PinGeometry: grid too coarse to resolve the pins");
}

std::uint64_t PinGeometry::fingerprint() const
{
    std::uint64_t hash = 1469598103934665603ULL;
    for (double v : {pin_width, pin_gap, pin_thickness, edge_radius, ground_gap, ground_extent, half_width,
                     half_height, h, well_depth}) {
        unsigned char bytes[sizeof v];
        std::memcpy(bytes, &v, sizeof v);
        for (unsigned char b : bytes) {
            hash ^= b;
            hash *= 1099511628211ULL;
        }
    }
    return hash;
}

double LaplaceSolution::x(std::size_t ix) const
{
    return (static_cast<double>(ix) - 0.5 * static_cast<double>(nx - 1)) * geometry.h;
}

double LaplaceSolution::z(std::size_t iz) const
{
    return (static_cast<double>(iz) - 0.5 * static_cast<double>(nz - 1)) * geometry.h;
}

LaplaceSolution solve_differential_mode(const PinGeometry& geometry, const SorParams& params)
{
    geometry.validate();
    if (!(params.tol > 0.0) || params.max_iters < 1)
        throw std::invalid_argument("solve_differential_mode: tol and max_iters must be positive");

    LaplaceSolution s;
    s.geometry = geometry;
    const double h = geometry.h;
    s.nx = static_cast<std::size_t>(std::llround(2.0 * geometry.half_width / h)) + 1;
    s.nz = static_cast<std::size_t>(std::llround(2.0 * geometry.half_height / h)) + 1;
    const std::size_t nx = s.nx, nz = s.nz, n = nx * nz;
    s.V.assign(n, 0.0);
    s.conductor.assign(n, Conductor::none);

    const auto shapes = conductors(geometry);
    const double slack = 1e-9 * h;
    for (std::size_t iz = 0; iz < nz; ++iz)
        for (std::size_t ix = 0; ix < nx; ++ix)
            for (const Shape& sh : shapes)
                if (sh.contains(s.x(ix), s.z(iz), slack)) {
                    const std::size_t i = s.index(ix, iz);
                    s.conductor[i] = sh.kind;
                    s.V[i] = sh.kind == Conductor::left_pin    ? params.left_volts
                             : sh.kind == Conductor::right_pin ? params.right_volts
                                                               : 0.0;
                }

    std::vector<std::uint8_t> free(n, 0);
    for (std::size_t iz = 1; iz + 1 < nz; ++iz)
        for (std::size_t ix = 1; ix + 1 < nx; ++ix)
            free[s.index(ix, iz)] = s.conductor[s.index(ix, iz)] == Conductor::none;

    // Shortley-Weller data for free nodes next to a conductor: the surface
    // crossing on each link (fraction s of h) and the surface voltage.
    struct Irregular {
        double c[4];  // west, east, south, north
        double vb[4]; // surface value, used when the link is cut
        bool cut[4];
        double csum;
    };
    std::vector<Irregular> irregular;
    std::vector<std::int32_t> irregular_of(n, -1);
    const std::ptrdiff_t step[4] = {-1, 1, -static_cast<std::ptrdiff_t>(nx), static_cast<std::ptrdiff_t>(nx)};
    for (std::size_t i = 0; i < n; ++i) {
        if (!free[i])
            continue;
        bool any = false;
        for (const auto d : step)
            any = any || s.conductor[i + d] != Conductor::none;
        if (!any)
            continue;
        const double px = s.x(i % nx), pz = s.z(i / nx);
        Irregular r{};
        double frac[4];
        for (int k = 0; k < 4; ++k) {
            const std::size_t j = i + step[k];
            frac[k] = 1.0;
            r.cut[k] = false;
            if (s.conductor[j] == Conductor::none)
                continue;
            const double qx = s.x(j % nx), qz = s.z(j / nx);
            const Shape* hit = nullptr;
            for (const Shape& sh : shapes)
                if (sh.contains(qx, qz, slack))
                    hit = &sh;
            double lo = 0.0, hi = 1.0;
            for (int b = 0; b < 60; ++b) {
                const double mid = 0.5 * (lo + hi);
                if (hit->contains(px + mid * (qx - px), pz + mid * (qz - pz), 0.0))
                    hi = mid;
                else
                    lo = mid;
            }
            frac[k] = hi;
            r.cut[k] = hi < 1.0;
            r.vb[k] = s.V[j];
        }
        r.c[0] = 1.0 / (frac[0] * (frac[0] + frac[1]));
        r.c[1] = 1.0 / (frac[1] * (frac[0] + frac[1]));
        r.c[2] = 1.0 / (frac[2] * (frac[2] + frac[3]));
        r.c[3] = 1.0 / (frac[3] * (frac[2] + frac[3]));
        r.csum = (r.c[0] + r.c[1]) + (r.c[2] + r.c[3]);
        irregular_of[i] = static_cast<std::int32_t>(irregular.size());
        irregular.push_back(r);
    }

    const double omega =
        params.omega > 0.0 ? params.omega
                           : 2.0 / (1.0 + std::sin(std::numbers::pi / static_cast<double>(std::max(nx, nz))));

    // Neighbour sums pair west with east and south with north so that the
    // mirror x -> -x negates them exactly; odd boundary data stays odd to the bit.
    auto target = [&](std::size_t i) {
        const std::int32_t k = irregular_of[i];
        if (k < 0)
            return 0.25 * ((s.V[i - 1] + s.V[i + 1]) + (s.V[i - nx] + s.V[i + nx]));
        const Irregular& r = irregular[static_cast<std::size_t>(k)];
        double v[4];
        for (int d = 0; d < 4; ++d)
            v[d] = r.cut[d] ? r.vb[d] : s.V[i + step[d]];
        return ((r.c[0] * v[0] + r.c[1] * v[1]) + (r.c[2] * v[2] + r.c[3] * v[3])) / r.csum;
    };

    auto residual = [&] {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (free[i])
                r = std::max(r, std::abs(target(i) - s.V[i]));
        return r;
    };

    std::vector<double> history;
    double res = residual();
    long it = 0;
    while (res >= params.tol) {
        if (it >= params.max_iters)
            throw ConvergenceError("solve_differential_mode: residual " + std::to_string(res) +
                                       " above tol after " + std::to_string(it) + " sweeps",
                                   std::move(history));
        for (int colour = 0; colour < 2; ++colour)
            for (std::size_t iz = 1; iz + 1 < nz; ++iz) {
                std::size_t ix = 1 + ((iz + 1 + colour) & 1u);
                for (; ix + 1 < nx; ix += 2) {
                    const std::size_t i = iz * nx + ix;
                    if (free[i])
                        s.V[i] += omega * (target(i) - s.V[i]);
                }
            }
        ++it;
        if (it % 10 == 0)
            res = residual();
        if (it % 100 == 0)
            history.push_back(res);
    }
    s.residual = res;
    s.iterations = it;

    s.Ex.assign(n, 0.0);
    s.Ez.assign(n, 0.0);
    for (std::size_t iz = 0; iz < nz; ++iz)
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const std::size_t i = s.index(ix, iz);
            const std::size_t xl = ix == 0 ? i : i - 1, xr = ix + 1 == nx ? i : i + 1;
            const std::size_t zl = iz == 0 ? i : i - nx, zr = iz + 1 == nz ? i : i + nx;
            const double sx = (xr - xl == 2) ? 2.0 * h : h;
            const double sz = (zr - zl == 2 * nx) ? 2.0 * h : h;
            s.Ex[i] = -(s.V[xr] - s.V[xl]) / sx;
            s.Ez[i] = -(s.V[zr] - s.V[zl]) / sz;
        }
    return s;
}

double field_per_volt(const LaplaceSolution& s, double z)
{
    const double h = s.geometry.h;
    const double t = z / h + 0.5 * static_cast<double>(s.nz - 1);
    if (!(t >= 1.0) || !(t <= static_cast<double>(s.nz) - 2.0))
        throw GeometryError("field_per_volt: probe outside the domain interior");
    const std::size_t ix = (s.nx - 1) / 2;
    auto lo = static_cast<std::size_t>(std::floor(t));
    double frac = t - static_cast<double>(lo);
    if (frac < 1e-9) {
        frac = 0.0;
    } else if (frac > 1.0 - 1e-9) {
        ++lo;
        frac = 0.0;
    }
    const std::size_t hi = frac > 0.0 ? lo + 1 : lo;
    if (s.conductor[s.index(ix, lo)] != Conductor::none || s.conductor[s.index(ix, hi)] != Conductor::none)
        throw GeometryError("field_per_volt: probe inside a conductor");
    // the pins carry opposite voltages; the drive amplitude is their difference
    double drive = 0.0;
    bool left = false, right = false;
    double vl = 0.0, vr = 0.0;
    for (std::size_t i = 0; i < s.V.size() && !(left && right); ++i) {
        if (!left && s.conductor[i] == Conductor::left_pin) {
            vl = s.V[i];
            left = true;
        }
        if (!right && s.conductor[i] == Conductor::right_pin) {
            vr = s.V[i];
            right = true;
        }
    }
    drive = std::abs(vr - vl);
    if (!(drive > 0.0))
        throw std::invalid_argument("field_per_volt: zero differential drive");
    const double ex = (1.0 - frac) * s.Ex[s.index(ix, lo)] + frac * s.Ex[s.index(ix, hi)];
    return std::abs(ex) / drive;
}

double probe_height(const PinGeometry& geometry, double Rs, double H)
{
    return Rs - H - geometry.well_depth;
}

ConvergenceOrder richardson_order(const PinGeometry& coarse, double z_probe, const SorParams& params)
{
    ConvergenceOrder out;
    PinGeometry g = coarse;
    for (int level = 0; level < 3; ++level) {
        const LaplaceSolution s = solve_differential_mode(g, params);
        out.h.push_back(g.h);
        out.EV.push_back(field_per_volt(s, z_probe));
        g.h *= 0.5;
    }
    const double d1 = out.EV[1] - out.EV[0];
    const double d2 = out.EV[2] - out.EV[1];
    if (d2 == 0.0 || d1 / d2 <= 0.0)
        throw NumericalError("richardson_order: non-monotone refinement sequence");
    out.order = std::log2(d1 / d2);
    out.extrapolated = out.EV[2] + d2 / (std::pow(2.0, out.order) - 1.0);
    return out;
}

} // namespace levqsim
