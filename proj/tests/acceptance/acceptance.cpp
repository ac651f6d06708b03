// Acceptance run: one line per criterion, nonzero exit if any fails.
#include "levqsim/cli.hpp"
#include "levqsim/core/constants.hpp"
#include "levqsim/coupling.hpp"
#include "levqsim/laplace.hpp"
#include "levqsim/maglev.hpp"
#include "levqsim/qubit.hpp"
#include "levqsim/vertical.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace levqsim;
namespace fs = std::filesystem;

namespace {

constexpr double um = 1e-6;
constexpr double kTwoPi = 6.283185307179586476925;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[1024];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

int failures = 0;

// Runs one criterion; `limit` is the runtime target in seconds.
void criterion(int id, double limit, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& ex) {
        o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= limit;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("[%s] criterion %d: %s; runtime %.3g s (target %.3g s%s)\n", pass ? "PASS" : "FAIL", id,
                o.detail.c_str(), secs, limit, in_time ? "" : ", exceeded");
    std::fflush(stdout);
}

double round3(double v)
{
    const double scale = std::pow(10.0, 2 - std::floor(std::log10(std::abs(v))));
    return std::round(v * scale) / scale;
}

Outcome table1()
{
    const std::vector<std::pair<const char*, double>> rows = {{"water", 13.6}, {"He II", 20.7}, {"SNe", 28.4}};
    bool ok = true;
    std::string d;
    for (const auto& [name, expect] : rows) {
        const double v = critical_gradient(material_by_name(name)) * 1e-2; // T^2/cm
        ok = ok && round3(v) == expect;
        d += fmt("%s %.4f (expect %.1f) ", name, v, expect);
    }
    return {ok, "critical gradients T^2/cm: " + d};
}

Outcome biot_savart()
{
    const double R = 10 * um, W = 1e-4 * um, I = 1.0;
    const FieldGrid f = loop_field(LoopSpec{R - 0.5 * W, W, I, 1, 5 * um}, GridRequest{0.0, 1 * um, 50 * um, 1 * um, 720});
    double worst = 0.0;
    const double mu0 = kConstants.mu0;
    for (std::size_t iz = 0; iz < f.nz; ++iz) {
        const double z = f.z(iz);
        const double exact = mu0 * I * R * R / (2.0 * std::pow(R * R + z * z, 1.5));
        worst = std::max(worst, std::abs(f.Bz[f.index(0, iz)] / exact - 1.0));
    }
    return {f.nz == 50 && worst < 1e-3, fmt("%zu axial points, max relative error %.2e (< 1e-3)", f.nz, worst)};
}

Outcome trap()
{
    const Material& sne = material_by_name("SNe");
    const FieldGrid unit = loop_field(LoopSpec{10 * um, 20 * um, 1.0, 30, 5 * um},
                                      GridRequest{30 * um, 0.0, 80 * um, 0.1 * um, 720});
    const TrapReport r = find_trap(energy_density(unit.scaled(8.5), -26e-3, sne));
    double best = 0.0, bestI = 0.0, bestB = 0.0;
    for (double I : {6.0, 8.5, 12.0, 16.0})
        for (double B0 : {-0.06, -0.04, -0.026, -0.01}) {
            const TrapReport s = find_trap(energy_density(unit.scaled(I), B0, sne));
            if (s.stable && s.V_trap > best) {
                best = s.V_trap;
                bestI = I;
                bestB = B0;
            }
        }
    const double um3 = 1e-18;
    return {r.stable && r.z_L > 0.0 && best >= 100 * um3,
            fmt("fig3b stable=%d z_L=%.3f um V_trap=%.1f um^3; scan max V_trap=%.1f um^3 at I=%.1f A, B0=%.0f mT",
                int(r.stable), r.z_L / um, r.V_trap / um3, best / um3, bestI, bestB * 1e3)};
}

Outcome hydrogenic()
{
    const VerticalPotential v = VerticalPotential::neon(0.0, 0.0);
    const auto& c = kConstants;
    const double A = v.Lambda * c.e * c.e / (16.0 * 3.14159265358979323846 * c.eps0);
    const double E = -c.m_e * A * A / (2.0 * c.hbar * c.hbar) / c.e;
    const double z = 1.5 * c.hbar * c.hbar / (c.m_e * A);
    const BoundState1D gs = ground_state_1d(v);
    const double dE = std::abs(gs.energy / E - 1.0), dz = std::abs(gs.mean_height / z - 1.0);
    return {dE < 0.01 && dz < 0.01 && std::abs(E / -10.05e-3 - 1.0) < 0.01 && std::abs(z / 2.92e-9 - 1.0) < 0.01,
            fmt("Lambda=%.4f E=%.3f meV (oracle %.3f, err %.1e), <z>=%.3f nm (oracle %.3f, err %.1e)", v.Lambda,
                gs.energy * 1e3, E * 1e3, dE, gs.mean_height * 1e9, z * 1e9, dz)};
}

Outcome wkb_threshold()
{
    std::vector<double> fields;
    for (int i = 0; i <= 24; ++i)
        fields.push_back(0.2e6 + i * 0.025e6);
    std::string d;
    bool ok = true;
    for (Eps1Model model : {Eps1Model::first_order_stark, Eps1Model::tilted_diagonalization}) {
        const auto pts = lifetime_sweep(VerticalPotential::neon(), fields, ZGrid{}, model);
        bool monotone = true;
        for (std::size_t i = 1; i < pts.size(); ++i)
            monotone = monotone && pts[i].wkb.tau <= pts[i - 1].wkb.tau;
        const double first = pts.front().wkb.tau, last = pts.back().wkb.tau;
        double cross = NAN;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i - 1].wkb.tau > 1.0 && pts[i].wkb.tau <= 1.0)
                cross = pts[i].E_field;
        const bool pass = monotone && first > 1.0 && last < 1e-3;
        // the default eps1 model decides the criterion; the other is reported
        if (model == Eps1Model::first_order_stark)
            ok = pass;
        d += fmt("%s: monotone=%d tau(0.2)=%.3g s tau(0.8)=%.3g s 1 s crossing %s; ",
                 model == Eps1Model::first_order_stark ? "first-order" : "tilted", int(monotone), first, last,
                 std::isnan(cross) ? "below 0.2 V/um" : fmt("near %.3f V/um", cross * 1e-6).c_str());
    }
    return {ok, d};
}

SphereSystem sphere(double Vr, double H, double B0, double dtheta)
{
    return make_sphere_system(RingElectrode(RingGeometry{1.5 * um, H, Vr}), 0.5 * um, B0, dtheta);
}

Outcome free_rotor()
{
    const SolverParams p;
    const SphereSystem sys = sphere(0.0, 1.0 * um, 0.0, p.dtheta);
    const Spectrum s = spectrum(sys, {0, 1, 2, 3, 4, 5}, {0}, p);
    double worst = 0.0;
    for (int l = 1; l <= 5; ++l)
        worst = std::max(worst, std::abs(s.energy(l, 0) / (sys.energy_scale() * l * (l + 1.0)) - 1.0));
    const double ground = std::abs(s.energy(0, 0)) / sys.energy_scale();
    return {worst < 1e-3 && ground < 1e-3,
            fmt("max relative error over l=1..5 %.2e, |E(l=0)|/E0 %.1e", worst, ground)};
}

Outcome zeeman()
{
    const SolverParams p;
    const double B0 = -20e-3;
    const Spectrum s = spectrum(sphere(0.15, 0.85 * um, B0, p.dtheta), {0}, {-1, 1}, p);
    const double split = s.energy(0, 1) - s.energy(0, -1);
    const double expect = 2.0 * kConstants.mu_B * std::abs(B0);
    const double err = std::abs(std::abs(split) / expect - 1.0);
    return {err < 1e-3, fmt("E(0,1)-E(0,-1) = %.6f GHz*h, |split| vs 2 mu_B |B0| = %.6f GHz*h, error %.1e",
                            split / kConstants.h * 1e-9, expect / kConstants.h * 1e-9, err)};
}

Outcome pendulum()
{
    // ring at 45 degrees above the pole, strong bias
    const double H = 0.5 * um + 1.5 * um / std::sqrt(2.0);
    const SolverParams p;
    const SphereSystem sys = sphere(1.0, H, 0.0, p.dtheta);
    const Spectrum s = spectrum(sys, {0}, {0, 1, 2}, p);
    const double w0 = std::sqrt(kConstants.e * std::abs(sys.E_r) / (kConstants.m_e * sys.Rs));
    const double hw = kConstants.hbar * w0;
    const double s1 = (s.energy(0, 1) - s.energy(0, 0)) / hw;
    const double s2 = (s.energy(0, 2) - s.energy(0, 1)) / hw;
    const double d = dipole_matrix_element(*s.find(0, 0), *s.find(0, 1), sys) / harmonic_dipole_element(w0);
    return {std::abs(s1 - 1) < 0.05 && std::abs(s2 - 1) < 0.05 && std::abs(d - 1) < 0.05,
            fmt("E_r=%.3g V/m, omega0/2pi=%.3f GHz, spacings/hbar omega0 = %.4f, %.4f, dipole/oracle = %.4f",
                sys.E_r, w0 / kTwoPi * 1e-9, s1, s2, d)};
}

Outcome anharmonicity(const SweepMap& map)
{
    std::size_t converged = 0, positive = 0;
    double best = 0.0, bestH = 0.0;
    std::map<double, double> peak_by_H;
    for (const auto& c : map.cells) {
        if (!c.converged || !c.error.empty())
            continue;
        ++converged;
        positive += c.alpha_h > 0.0;
        if (c.alpha_h > best) {
            best = c.alpha_h;
            bestH = c.H;
        }
        auto& p = peak_by_H[c.H];
        p = std::max(p, c.alpha_h);
    }
    const bool interior = bestH > map.H_axis.front() && bestH < map.H_axis.back();
    return {converged > 0 && positive == converged && interior && std::abs(bestH - 0.7 * um) <= 0.1 * um &&
                best > 0.4e9,
            fmt("%zu/%zu cells converged, alpha>0 on %zu; max alpha/h %.3f GHz at H=%.3f um (interior=%d)", converged,
                map.cells.size(), positive, best * 1e-9, bestH / um, int(interior))};
}

Outcome coupling(const SweepMap& map, const SweepConfig& cfg, const LaplaceSolution& sol)
{
    const double wr = kTwoPi * 5e9;
    const double d = 2e-26, ev = 2e5;
    const double r5 = coupling_g(d, ResonatorSpec{wr, 2500.0, ev}) / coupling_g(d, ResonatorSpec{wr, 100.0, ev});
    double lin = 0.0;
    const double g1 = coupling_g(d, ResonatorSpec{wr, 100.0, ev});
    for (double k : {0.5, 2.0, 3.0, 7.0, 10.0})
        lin = std::max(lin, std::abs(coupling_g(d, ResonatorSpec{wr, 100.0, k * ev}) / (k * g1) - 1.0));

    const auto region = operating_region(map, 1e9, 10e9, 100e6);
    std::size_t n = 0;
    double gmin = INFINITY, gmax = 0.0;
    for (std::size_t i = 0; i < map.cells.size(); ++i) {
        if (!region[i])
            continue;
        const auto& c = map.cells[i];
        const double EV = field_per_volt(sol, probe_height(sol.geometry, cfg.Rs, c.H));
        const double g = coupling_g(c.dipole, ResonatorSpec{wr, 100.0, EV});
        gmin = std::min(gmin, g);
        gmax = std::max(gmax, g);
        ++n;
    }
    const double eps = 2.220446049250313e-16;
    return {std::abs(r5 - 5.0) <= 4 * eps * 5.0 && lin <= 4 * eps && n > 0 && gmin >= 1e6,
            fmt("g(2.5k)/g(100) - 5 = %.1e; linearity defect %.1e; %zu operating cells, g/2pi in [%.2f, %.2f] MHz",
                r5 - 5.0, lin, n, gmin * 1e-6, gmax * 1e-6)};
}

Outcome exchange()
{
    const double a = exchange_J(30e6, 30e6, 150e6).J_over_2pi;
    const double b = exchange_J(10e6, 10e6, 50e6).J_over_2pi;
    return {std::abs(a - 6e6) <= 1e-9 * 6e6 && std::abs(b - 2e6) <= 1e-9 * 2e6,
            fmt("J/2pi = %.12g MHz and %.12g MHz", a * 1e-6, b * 1e-6)};
}

Outcome laplace(const LaplaceSolution& sol, const SorParams& params)
{
    double mid = 0.0, anti = 0.0;
    for (std::size_t iz = 0; iz < sol.nz; ++iz) {
        mid = std::max(mid, std::abs(sol.V[sol.index(sol.nx / 2, iz)]));
        for (std::size_t ix = 0; ix < sol.nx; ++ix)
            anti = std::max(anti, std::abs(sol.V[sol.index(ix, iz)] + sol.V[sol.index(sol.nx - 1 - ix, iz)]));
    }
    // rounded-edge pins on a 10 um box; coarser grids are not yet asymptotic
    PinGeometry g;
    g.half_width = g.half_height = 5e-6;
    g.h = 25e-9;
    const ConvergenceOrder o = richardson_order(g, -0.4e-6, params);
    const double tol = params.tol;
    return {sol.nx > 0 && mid < 10 * tol && anti < 10 * tol && std::abs(o.order - 2.0) <= 0.2,
            fmt("midplane max |V| %.1e V, antisymmetry defect %.1e V (10 tol = %.0e); E_V at h=25/12.5/6.25 nm: "
                "%.6g %.6g %.6g 1/m, observed order %.3f",
                mid, anti, 10 * tol, o.EV[0], o.EV[1], o.EV[2], o.order)};
}

std::map<std::string, std::string> snapshot(const fs::path& root)
{
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file())
            continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        out[fs::relative(e.path(), root).string()] = s.str();
    }
    return out;
}

Outcome determinism()
{
    const fs::path base = fs::temp_directory_path() / "levqsim_acceptance";
    fs::remove_all(base);
    std::map<std::string, std::string> runs[2];
    for (int k = 0; k < 2; ++k) {
        cli::RunConfig rc = cli::parse_config({{"command", "reproduce"}, {"reproduce", {{"preset", "reduced"}}}});
        rc.out_dir = (base / ("run" + std::to_string(k))).string();
        cli::run(rc);
        runs[k] = snapshot(rc.out_dir);
    }
    std::size_t differing = 0;
    for (const auto& [name, bytes] : runs[0])
        differing += !runs[1].count(name) || runs[1].at(name) != bytes;
    const bool same = runs[0].size() == runs[1].size() && differing == 0 && !runs[0].empty();
    fs::remove_all(base);
    return {same, fmt("reduced reproduce twice: %zu files, %zu differ", runs[0].size(), differing)};
}

} // namespace

int main()
{
    std::printf("levqsim acceptance (constants %s)\n", std::string(kConstants.id).c_str());
    criterion(1, 1e-3, table1);
    criterion(2, 1.0, biot_savart);
    criterion(3, 300.0, trap);
    criterion(4, 10.0, hydrogenic);
    criterion(5, 30.0, wkb_threshold);
    criterion(6, 120.0, free_rotor);
    criterion(7, 300.0, zeeman);
    criterion(8, 300.0, pendulum);

    const SweepConfig sweep_cfg = SweepConfig::fig10_default();
    SweepMap map;
    criterion(9, 7200.0, [&] {
        map = sweep(sweep_cfg);
        return anharmonicity(map);
    });

    const SorParams sor;
    LaplaceSolution sol;
    criterion(10, 600.0, [&] {
        sol = solve_differential_mode(PinGeometry{}, sor);
        return coupling(map, sweep_cfg, sol);
    });
    criterion(11, 1e-3, exchange);
    criterion(12, 120.0, [&] { return laplace(sol, sor); });
    criterion(13, 600.0, determinism);

    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
