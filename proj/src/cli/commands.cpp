#include "pipelines.hpp"

#include "levqsim/core/constants.hpp"
#include "levqsim/core/material.hpp"
#include "levqsim/coupling.hpp"
#include "levqsim/ringfield.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

namespace levqsim::cli {

std::vector<std::string> run_reproduce(const RunConfig& config);

LoopSpec loop_from(const json& p, double current)
{
    LoopSpec s;
    s.R0 = p["R0_meters"];
    s.W = p["W_meters"];
    s.I = current;
    s.n_loops = p["n_loops"].get<int>();
    s.delta = p["delta_meters"];
    return s;
}

GridRequest grid_from(const json& p)
{
    GridRequest g;
    g.x_extent = p["x_extent_meters"];
    g.z_min = p["z_min_meters"];
    g.z_max = p["z_max_meters"];
    g.dx = p["dx_meters"];
    g.phi_panels = p["phi_panels"].get<int>();
    return g;
}

SolverParams solver_from(const json& p)
{
    SolverParams s;
    s.Nmax = p["Nmax"].get<int>();
    s.dtheta = p["dtheta_radians"];
    s.dtau = p["dtau"];
    s.energy_tol = p["energy_tol"];
    s.max_iters = p["max_iters"].get<long>();
    s.check_interval = p["check_interval"].get<int>();
    return s;
}

PinGeometry geometry_from(const json& p)
{
    PinGeometry g;
    g.pin_width = p["pin_width_meters"];
    g.pin_gap = p["pin_gap_meters"];
    g.pin_thickness = p["pin_thickness_meters"];
    g.edge_radius = p["edge_radius_meters"];
    g.ground_gap = p["ground_gap_meters"];
    g.ground_extent = p["ground_extent_meters"];
    g.half_width = p["half_width_meters"];
    g.half_height = p["half_height_meters"];
    g.h = p["h_meters"];
    g.well_depth = p["well_depth_meters"];
    return g;
}

SweepConfig sweep_from(const json& p, unsigned threads)
{
    SweepConfig c;
    c.Rr = p["Rr_meters"];
    c.Rs = p["Rs_meters"];
    c.B0 = p["B0_tesla"];
    c.a_r = p["a_r_meters"];
    c.Vr_axis = p["Vr_volts"].get<std::vector<double>>();
    c.H_axis = p["H_meters"].get<std::vector<double>>();
    if (c.Vr_axis.empty() || c.H_axis.empty())
        throw ValidationError("sweep: Vr_volts and H_meters must not be empty");
    c.solver = solver_from(p["solver"]);
    c.threads = threads;
    return c;
}

std::string wkb_regime_name(WkbRegime r)
{
    switch (r) {
    case WkbRegime::tunneling:
        return "tunneling";
    case WkbRegime::over_barrier:
        return "over_barrier";
    case WkbRegime::bound:
        return "bound";
    }
    return "unknown";
}

Table energy_map_table(const EnergyMap& map, std::size_t stride)
{
    Table t{{"x[m]", "z[m]", "Bx[T]", "Bz[T]", "E[J/m^3]", "singular"}, {}};
    for (std::size_t iz = 0; iz < map.nz; iz += stride)
        for (std::size_t ix = 0; ix < map.nx; ix += stride) {
            const std::size_t i = map.index(ix, iz);
            t.add({map.x(ix), map.z(iz), map.Bx[i], map.Bz[i], map.E[i], long(map.singular[i])});
        }
    return t;
}

json trap_report_json(const TrapReport& r, const EnergyMap& map, const LoopSpec& spec, const json& p)
{
    json out = {
        {"stable", r.stable},
        {"current_density_A_per_m2", current_density(spec)},
        {"critical_gradient_T2_per_m", critical_gradient(map.material)},
        {"material", map.material.name},
    };
    if (r.stable) {
        out["z_L_meters"] = r.z_L;
        out["E_min_J_per_m3"] = r.E_min;
        out["E_saddle_J_per_m3"] = r.E_saddle;
        out["V_trap_cubic_meters"] = r.V_trap;
        out["off_axis_minimum"] = r.off_axis_minimum;
        try {
            const auto amp = thermal_amplitude(r, map, p["particle_radius_meters"], p["temperature_kelvin"]);
            out["thermal_x_rms_meters"] = amp.x_rms;
            out["thermal_z_rms_meters"] = amp.z_rms;
        } catch (const std::exception& ex) {
            out["thermal_error"] = ex.what();
        }
    }
    return out;
}

Table lifetime_table(const std::vector<LifetimePoint>& points)
{
    Table t{{"Er[V/m]", "eps1[eV]", "regime", "z1[m]", "z2[m]", "action", "T_el[s]", "tau[s]"}, {}};
    for (const auto& pt : points)
        t.add({pt.E_field, pt.eps1, wkb_regime_name(pt.wkb.regime), pt.wkb.z1, pt.wkb.z2, pt.wkb.action, pt.wkb.T_el,
               pt.wkb.tau});
    return t;
}

Table potential_profile_table(const VerticalPotential& v, double z_max, std::size_t n)
{
    Table t{{"z[m]", "U[eV]"}, {}};
    for (std::size_t i = 1; i <= n; ++i) {
        const double z = z_max * static_cast<double>(i) / static_cast<double>(n);
        t.add({z, u_perp(v, z)});
    }
    return t;
}

Table lateral_table(const LateralPotential& lateral, const std::vector<double>* psi0)
{
    Table t{{"theta[rad]", "U[J]", "U[eV]"}, {}};
    if (psi0)
        t.columns.push_back("rho[1/sr]");
    const double e = kConstants.e;
    for (std::size_t j = 0; j < lateral.grid.size(); ++j) {
        std::vector<Cell> row{lateral.grid.theta(j), lateral.U[j], lateral.U[j] / e};
        // |psi(theta)|^2 / (2 pi): probability per unit solid angle
        if (psi0)
            row.push_back((*psi0)[j] * (*psi0)[j] / (2.0 * 3.14159265358979323846));
        t.add(std::move(row));
    }
    return t;
}

Table sweep_table(const SweepMap& map)
{
    Table t{{"Vr[V]", "H[m]", "f01[GHz]", "alpha[GHz]", "converged"}, {}};
    for (const auto& c : map.cells)
        t.add({c.Vr, c.H, c.f01 / 1e9, c.alpha_h / 1e9, long(c.converged && c.error.empty())});
    return t;
}

Table laplace_table(const LaplaceSolution& s, std::size_t stride)
{
    Table t{{"x[m]", "z[m]", "V[V]", "Ex[V/m]", "Ez[V/m]"}, {}};
    for (std::size_t iz = 0; iz < s.nz; iz += stride)
        for (std::size_t ix = 0; ix < s.nx; ix += stride) {
            const std::size_t i = s.index(ix, iz);
            t.add({s.x(ix), s.z(iz), s.V[i], s.Ex[i], s.Ez[i]});
        }
    return t;
}

namespace {

std::vector<std::string> run_trap(const RunConfig& rc)
{
    const json& p = rc.params;
    const Material& material = material_by_name(p["material"].get<std::string>());
    const LoopSpec spec = loop_from(p, p["I_amperes"]);
    const FieldGrid unit = loop_field(loop_from(p, 1.0), grid_from(p));
    const EnergyMap map = energy_density(unit.scaled(spec.I), p["B0_tesla"], material);
    const TrapReport report = find_trap(map);

    std::vector<std::string> files;
    files.push_back(write_table(rc, "trap_energy_map", energy_map_table(map, p["map_stride"].get<std::size_t>())));
    files.push_back(write_json(rc, "trap_report", trap_report_json(report, map, spec, p)));

    const auto Is = p["scan_I_amperes"].get<std::vector<double>>();
    const auto Bs = p["scan_B0_tesla"].get<std::vector<double>>();
    if (!Is.empty() && !Bs.empty()) {
        Table t{{"I[A]", "B0[T]", "stable", "z_L[m]", "V_trap[m^3]", "barrier[J/m^3]"}, {}};
        for (double I : Is)
            for (double B0 : Bs) {
                const TrapReport r = find_trap(energy_density(unit.scaled(I), B0, material));
                t.add({I, B0, long(r.stable), r.stable ? r.z_L : NAN, r.stable ? r.V_trap : 0.0,
                       r.stable ? r.E_saddle - r.E_min : NAN});
            }
        files.push_back(write_table(rc, "trap_scan", t));
    }
    return files;
}

std::vector<std::string> run_wkb(const RunConfig& rc)
{
    const json& p = rc.params;
    VerticalPotential v{dielectric_factor(p["eps_relative"]), p["b_meters"], 0.0};
    const ZGrid grid{p["z_max_meters"], p["dz_meters"]};
    const Eps1Model model = p["eps1_model"] == "tilted_diagonalization" ? Eps1Model::tilted_diagonalization
                                                                        : Eps1Model::first_order_stark;
    const auto fields = p["Er_volts_per_meter"].get<std::vector<double>>();
    const auto points = lifetime_sweep(v, fields, grid, model);
    const BoundState1D gs = ground_state_1d(v, grid);

    std::vector<std::string> files;
    files.push_back(write_table(rc, "wkb_lifetime", lifetime_table(points),
                                {{"ground_state_eV", format_number(gs.energy)},
                                 {"mean_height_m", format_number(gs.mean_height)}}));
    v.E_field = p["profile_Er_volts_per_meter"];
    files.push_back(write_table(rc, "wkb_potential",
                                potential_profile_table(v, p["profile_z_max_meters"],
                                                        p["profile_points"].get<std::size_t>())));
    return files;
}

RingElectrode electrode_from(const json& p)
{
    return RingElectrode(RingGeometry{p["Rr_meters"], p["H_meters"], p["Vr_volts"], p["a_r_meters"]});
}

std::vector<std::string> run_ring(const RunConfig& rc)
{
    const json& p = rc.params;
    const RingElectrode electrode = electrode_from(p);
    const double Rs = p["Rs_meters"];
    const LateralPotential lat =
        lateral_potential(electrode, Rs, ThetaGrid::cells_with_step(p["dtheta_radians"].get<double>()));
    const auto it = std::min_element(lat.U.begin(), lat.U.end());
    const std::size_t jmin = static_cast<std::size_t>(it - lat.U.begin());

    std::vector<std::string> files;
    files.push_back(write_table(rc, "ring_lateral", lateral_table(lat, nullptr)));
    files.push_back(write_json(rc, "ring_summary",
                               {{"K_eff_per_meter", electrode.k_eff()},
                                {"pole_field_V_per_m", pole_field(electrode, Rs)},
                                {"theta_min_rad", jmin == 0 ? 0.0 : lat.grid.theta(jmin)},
                                {"U_min_J", *it}}));
    return files;
}

std::vector<int> int_list(const json& v, const char* what)
{
    std::vector<int> out;
    for (double x : v.get<std::vector<double>>()) {
        if (x != std::round(x))
            throw ValidationError(std::string("eigen.") + what + ": entries must be integers");
        out.push_back(static_cast<int>(x));
    }
    if (out.empty())
        throw ValidationError(std::string("eigen.") + what + ": must not be empty");
    return out;
}

std::vector<std::string> run_eigen(const RunConfig& rc)
{
    const json& p = rc.params;
    const SolverParams solver = solver_from(p["solver"]);
    const SphereSystem system = make_sphere_system(electrode_from(p), p["Rs_meters"], p["B0_tesla"], solver.dtheta);
    const Spectrum spec = spectrum(system, int_list(p["n"], "n"), int_list(p["m"], "m"), solver);

    const double h = kConstants.h;
    const double e00 = spec.find(0, 0) ? spec.energy(0, 0) : NAN;
    Table levels{{"n", "m", "E[J]", "E/h[GHz]", "dE_from_00/h[GHz]", "trial_E/h[GHz]", "converged", "iterations"}, {}};
    for (const auto& s : spec.states)
        levels.add({long(s.n), long(s.m), s.energy, s.energy / h / 1e9, (s.energy - e00) / h / 1e9,
                    s.trial_energy / h / 1e9, long(s.converged), s.iterations});

    std::vector<std::string> files;
    files.push_back(write_table(rc, "eigen_levels", levels,
                                {{"pole_field_V_per_m", format_number(system.E_r)},
                                 {"energy_scale_J", format_number(system.energy_scale())}}));
    if (p["write_wavefunctions"].get<bool>()) {
        Table wf{{"theta[rad]"}, {}};
        for (const auto& s : spec.states)
            wf.columns.push_back("psi_" + std::to_string(s.n) + "_" + std::to_string(s.m));
        const auto& grid = system.lateral.grid;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            std::vector<Cell> row{grid.theta(j)};
            for (const auto& s : spec.states)
                row.push_back(s.psi[j]);
            wf.add(std::move(row));
        }
        files.push_back(write_table(rc, "eigen_wavefunctions", wf));
    }
    try {
        const QubitMetrics q = metrics_from_spectrum(spec);
        files.push_back(write_json(rc, "eigen_metrics",
                                   {{"f01_hertz", q.f01},
                                    {"f02_hertz", q.dE02 / h},
                                    {"alpha_over_h_hertz", q.alpha / h},
                                    {"zeeman_split_over_h_hertz", q.zeeman_split / h}}));
    } catch (const std::out_of_range&) {
        // metrics need (0,0), (0,+-1), (0,2); silently skipped otherwise
    }
    return files;
}

std::string pairing(const SweepMap& map) { return map.excited_state_pairing; }

std::vector<std::string> run_sweep(const RunConfig& rc)
{
    const json& p = rc.params;
    SweepConfig cfg = sweep_from(p, rc.threads);
    if (p["checkpoint"].get<bool>()) {
        std::filesystem::create_directories(rc.out_dir);
        cfg.checkpoint_path = (std::filesystem::path(rc.out_dir) / "sweep.checkpoint").string();
    }
    const SweepMap map = sweep(cfg);
    const auto mask = operating_region(map, p["f_min_hertz"], p["f_max_hertz"], p["alpha_min_hertz"]);

    Table region{{"Vr[V]", "H[m]", "in_region"}, {}};
    std::size_t failed = 0;
    for (std::size_t i = 0; i < map.cells.size(); ++i) {
        region.add({map.cells[i].Vr, map.cells[i].H, long(mask[i])});
        failed += !map.cells[i].error.empty();
    }
    std::vector<std::string> files;
    files.push_back(write_table(rc, "sweep", sweep_table(map),
                                {{"pairing", pairing(map)}, {"failed_cells", std::to_string(failed)}}));
    files.push_back(write_table(rc, "sweep_region", region));
    return files;
}

std::vector<std::string> run_couple(const RunConfig& rc)
{
    const json& p = rc.params;
    SweepConfig cfg = sweep_from(p, rc.threads);
    if (p["checkpoint"].get<bool>()) {
        std::filesystem::create_directories(rc.out_dir);
        cfg.checkpoint_path = (std::filesystem::path(rc.out_dir) / "couple.checkpoint").string();
    }
    const PinGeometry geometry = geometry_from(p["geometry"]);
    SorParams sor;
    sor.tol = p["tol_volts"];
    const LaplaceSolution solution = solve_differential_mode(geometry, sor);
    const SweepMap map = sweep(cfg);

    const CouplingOptions opts{p["circular_half_factor"].get<bool>()};
    const double omega_r = 2.0 * 3.14159265358979323846 * p["f_r_hertz"].get<double>();
    Table t{{"Vr[V]", "H[m]", "dipole[C*m]", "g_over_2pi[MHz]", "Zdiff[Ohm]", "EV[1/m]", "converged"}, {}};
    for (double Z : p["Z_diff_ohms"].get<std::vector<double>>())
        for (const auto& c : map.cells) {
            const double EV = field_per_volt(solution, probe_height(geometry, cfg.Rs, c.H));
            const ResonatorSpec res{omega_r, Z, EV};
            t.add({c.Vr, c.H, c.dipole, coupling_g(c.dipole, res, opts) / 1e6, Z, EV,
                   long(c.converged && c.error.empty())});
        }

    const auto g1 = p["exchange_g1_hertz"].get<std::vector<double>>();
    const auto g2 = p["exchange_g2_hertz"].get<std::vector<double>>();
    const auto dl = p["exchange_delta_hertz"].get<std::vector<double>>();
    if (g1.size() != g2.size() || g1.size() != dl.size())
        throw ValidationError("couple: exchange_g1_hertz, exchange_g2_hertz, exchange_delta_hertz differ in length");
    Table ex{{"g1[MHz]", "g2[MHz]", "delta[MHz]", "J_over_2pi[MHz]", "dispersive"}, {}};
    for (std::size_t i = 0; i < g1.size(); ++i) {
        const ExchangeResult r = exchange_J(g1[i], g2[i], dl[i]);
        ex.add({g1[i] / 1e6, g2[i] / 1e6, dl[i] / 1e6, r.J_over_2pi / 1e6, long(r.dispersive)});
    }

    std::vector<std::string> files;
    files.push_back(write_table(rc, "couple", t,
                                {{"geometry_fingerprint", std::to_string(geometry.fingerprint())},
                                 {"pairing", map.excited_state_pairing}}));
    files.push_back(write_table(rc, "exchange", ex));
    return files;
}

std::vector<std::string> run_laplace(const RunConfig& rc)
{
    const json& p = rc.params;
    const PinGeometry geometry = geometry_from(p["geometry"]);
    SorParams sor;
    sor.tol = p["tol_volts"];
    sor.max_iters = p["max_iters"].get<long>();
    const LaplaceSolution s = solve_differential_mode(geometry, sor);

    json summary = {{"geometry_fingerprint", std::to_string(geometry.fingerprint())},
                    {"residual_volts", s.residual},
                    {"iterations", s.iterations},
                    {"probes", json::array()}};
    for (double z : p["probe_z_meters"].get<std::vector<double>>())
        summary["probes"].push_back({{"z_meters", z}, {"EV_per_meter", field_per_volt(s, z)}});
    if (p["order_test"].get<bool>()) {
        PinGeometry coarse = geometry;
        coarse.h = p["order_h_meters"];
        coarse.half_width = coarse.half_height = p["order_half_size_meters"];
        const ConvergenceOrder o = richardson_order(coarse, p["order_probe_z_meters"], sor);
        summary["order_test"] = {{"h_meters", o.h}, {"EV_per_meter", o.EV}, {"order", o.order},
                                 {"extrapolated_EV_per_meter", o.extrapolated}};
    }
    std::vector<std::string> files;
    files.push_back(write_table(rc, "laplace_solution", laplace_table(s, p["export_stride"].get<std::size_t>())));
    files.push_back(write_json(rc, "laplace_summary", summary));
    return files;
}

} // namespace

std::vector<std::string> run(const RunConfig& rc)
{
    if (rc.command == "trap")
        return run_trap(rc);
    if (rc.command == "wkb")
        return run_wkb(rc);
    if (rc.command == "ring")
        return run_ring(rc);
    if (rc.command == "eigen")
        return run_eigen(rc);
    if (rc.command == "sweep")
        return run_sweep(rc);
    if (rc.command == "couple")
        return run_couple(rc);
    if (rc.command == "laplace")
        return run_laplace(rc);
    if (rc.command == "reproduce")
        return run_reproduce(rc);
    throw ValidationError("unknown command '" + rc.command + "'");
}

} // namespace levqsim::cli
