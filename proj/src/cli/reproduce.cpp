#include "pipelines.hpp"
#include "schema.hpp"

#include "levqsim/core/constants.hpp"
#include "levqsim/core/errors.hpp"
#include "levqsim/core/material.hpp"
#include "levqsim/coupling.hpp"
#include "levqsim/ringfield.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>

namespace levqsim::cli {

const std::vector<std::string>& figure_names()
{
    static const std::vector<std::string> names = {"fig3b", "fig4a", "fig4b", "fig6a", "fig6b",
                                                   "fig8a", "fig8b", "fig9",  "fig10", "fig11"};
    return names;
}

namespace {

constexpr double um = 1e-6;
constexpr double kTwoPi = 6.283185307179586476925;

struct Preset {
    bool reduced;
    // maglev
    double dx_small, dx_large;
    std::vector<double> fig4a_I, fig4b_I, fig4b_B0;
    std::size_t map_stride;
    // vertical
    std::size_t n_fields;
    double dz;
    // angular
    SolverParams solver;
    std::vector<double> fig8a_Vr, fig8b_H, fig8b_Vr, fig10_Vr, fig10_H;
    // laplace
    double laplace_h;
};

Preset make_preset(bool reduced)
{
    Preset p;
    p.reduced = reduced;
    if (!reduced) {
        p.dx_small = 0.1 * um;
        p.dx_large = 0.2 * um;
        p.fig4a_I = linspace(6.0, 12.0, 25);
        p.fig4b_I = linspace(2.0, 20.0, 19);
        p.fig4b_B0 = linspace(-0.1, 0.0, 11);
        p.map_stride = 2;
        p.n_fields = 29;
        p.dz = 0.005e-9;
        p.solver = SolverParams{};
        p.fig8a_Vr = {0.05, 0.10, 0.15, 0.20, 0.25};
        p.fig8b_H = linspace(0.6 * um, 1.1 * um, 11);
        p.fig8b_Vr = {0.05, 0.10, 0.15, 0.20, 0.25};
        p.fig10_Vr = linspace(0.05, 0.25, 20);
        p.fig10_H = linspace(0.6 * um, 1.1 * um, 20);
        p.laplace_h = 50e-9;
    } else {
        p.dx_small = 0.5 * um;
        p.dx_large = 1.0 * um;
        p.fig4a_I = linspace(7.0, 10.0, 7);
        p.fig4b_I = linspace(4.0, 16.0, 4);
        p.fig4b_B0 = linspace(-0.06, 0.0, 4);
        p.map_stride = 1;
        p.n_fields = 15;
        p.dz = 0.01e-9;
        p.solver = SolverParams{};
        p.solver.Nmax = 120;
        p.solver.dtheta = 12.4e-3;
        p.solver.energy_tol = 1e-7;
        p.fig8a_Vr = {0.10, 0.25};
        p.fig8b_H = {0.7 * um, 1.0 * um};
        p.fig8b_Vr = {0.25};
        p.fig10_Vr = {0.15, 0.25};
        p.fig10_H = {0.7 * um, 0.9 * um};
        p.laplace_h = 100e-9;
    }
    return p;
}

constexpr double Rr = 1.5 * um, Rs = 0.5 * um, B0_qubit = -20e-3, a_r = 0.1 * um;

LoopSpec loop_a(double I) { return LoopSpec{10 * um, 20 * um, I, 30, 5 * um}; }
LoopSpec loop_b(double I) { return LoopSpec{20 * um, 20 * um, I, 30, 5 * um}; }

SphereSystem qubit_system(double Vr, double H, const Preset& p)
{
    return make_sphere_system(RingElectrode(RingGeometry{Rr, H, Vr, a_r}), Rs, B0_qubit, p.solver.dtheta);
}

class Reproducer {
public:
    Reproducer(const RunConfig& base, const Preset& preset) : base_(base), p_(preset) {}

    std::vector<std::string> produce(const std::string& figure)
    {
        RunConfig rc = base_;
        rc.params = json{{"preset", base_.params["preset"]}, {"figures", json::array({figure})}};
        static const std::map<std::string, std::vector<std::string> (Reproducer::*)(const RunConfig&)> table = {
            {"fig3b", &Reproducer::fig3b}, {"fig4a", &Reproducer::fig4a}, {"fig4b", &Reproducer::fig4b},
            {"fig6a", &Reproducer::fig6a}, {"fig6b", &Reproducer::fig6b}, {"fig8a", &Reproducer::fig8a},
            {"fig8b", &Reproducer::fig8b}, {"fig9", &Reproducer::fig9},   {"fig10", &Reproducer::fig10},
            {"fig11", &Reproducer::fig11},
        };
        return (this->*table.at(figure))(rc);
    }

private:
    const FieldGrid& unit_field_a()
    {
        if (!field_a_)
            field_a_ = loop_field(loop_a(1.0), GridRequest{30 * um, 0.0, 80 * um, p_.dx_small, 720});
        return *field_a_;
    }

    std::vector<std::string> fig3b(const RunConfig& rc)
    {
        const Material& sne = material_by_name("SNe");
        const LoopSpec spec = loop_a(8.5);
        const EnergyMap map = energy_density(unit_field_a().scaled(spec.I), -26e-3, sne);
        const TrapReport r = find_trap(map);
        const json p = {{"particle_radius_meters", 3 * um}, {"temperature_kelvin", 0.1}};
        return {write_table(rc, "fig3b_energy_map", energy_map_table(map, p_.map_stride)),
                write_json(rc, "fig3b_trap", trap_report_json(r, map, spec, p))};
    }

    std::vector<std::string> fig4a(const RunConfig& rc)
    {
        const Material& sne = material_by_name("SNe");
        Table t{{"I[A]", "stable", "z_L[m]"}, {}};
        for (double I : p_.fig4a_I) {
            const TrapReport r = find_trap(energy_density(unit_field_a().scaled(I), -26e-3, sne));
            t.add({I, long(r.stable), r.stable ? r.z_L : NAN});
        }
        return {write_table(rc, "fig4a_levitation_height", t, {{"B0_T", "-0.026"}})};
    }

    std::vector<std::string> fig4b(const RunConfig& rc)
    {
        const Material& sne = material_by_name("SNe");
        const FieldGrid field_b = loop_field(loop_b(1.0), GridRequest{60 * um, 0.0, 120 * um, p_.dx_large, 720});
        Table t{{"loop", "R0[m]", "W[m]", "I[A]", "B0[T]", "stable", "z_L[m]", "V_trap[m^3]"}, {}};
        const std::pair<const char*, const FieldGrid*> loops[] = {{"A", &unit_field_a()}, {"B", &field_b}};
        for (const auto& [name, field] : loops) {
            const LoopSpec spec = name[0] == 'A' ? loop_a(1.0) : loop_b(1.0);
            for (double I : p_.fig4b_I)
                for (double B0 : p_.fig4b_B0) {
                    const TrapReport r = find_trap(energy_density(field->scaled(I), B0, sne));
                    t.add({std::string(name), spec.R0, spec.W, I, B0, long(r.stable), r.stable ? r.z_L : NAN,
                           r.stable ? r.V_trap : 0.0});
                }
        }
        return {write_table(rc, "fig4b_trap_volume", t)};
    }

    std::vector<std::string> fig6a(const RunConfig& rc)
    {
        const VerticalPotential v = VerticalPotential::neon(0.35e6);
        return {write_table(rc, "fig6a_potential", potential_profile_table(v, 30e-9, 600),
                            {{"Er_V_per_m", "350000"}})};
    }

    std::vector<std::string> fig6b(const RunConfig& rc)
    {
        const auto points = lifetime_sweep(VerticalPotential::neon(), linspace(0.1e6, 0.8e6, p_.n_fields),
                                           ZGrid{60e-9, p_.dz});
        return {write_table(rc, "fig6b_lifetime", lifetime_table(points))};
    }

    std::vector<std::string> fig8a(const RunConfig& rc)
    {
        Table t{{"Vr[V]", "theta[rad]", "abs_psi00"}, {}};
        for (double Vr : p_.fig8a_Vr) {
            const SphereSystem sys = qubit_system(Vr, 0.85 * um, p_);
            const Spectrum s = spectrum(sys, {0}, {0}, p_.solver);
            const auto& grid = sys.lateral.grid;
            for (std::size_t j = 0; j < grid.size() && grid.theta(j) < 0.6; ++j)
                t.add({Vr, grid.theta(j), std::abs(s.states[0].psi[j])});
        }
        return {write_table(rc, "fig8a_wavefunctions", t, {{"H_m", "8.5e-07"}})};
    }

    std::vector<std::string> fig8b(const RunConfig& rc)
    {
        Table t{{"Vr[V]", "H[m]", "n", "m", "dE/h[GHz]", "converged"}, {}};
        auto cell = [&](double Vr, double H) {
            const SphereSystem sys = qubit_system(Vr, H, p_);
            const Spectrum s = spectrum(sys, {0, 1}, {-1, 0, 1, 2}, p_.solver);
            const double e00 = s.energy(0, 0);
            for (const auto& st : s.states)
                if (!(st.n == 0 && st.m == 0))
                    t.add({Vr, H, long(st.n), long(st.m), (st.energy - e00) / kConstants.h / 1e9, long(st.converged)});
        };
        for (double H : p_.fig8b_H)
            cell(0.15, H);
        for (double Vr : p_.fig8b_Vr)
            cell(Vr, 0.85 * um);
        return {write_table(rc, "fig8b_transitions", t)};
    }

    std::vector<std::string> fig9(const RunConfig& rc)
    {
        Table t{{"H[m]", "theta[rad]", "U[eV]", "rho[1/sr]"}, {}};
        for (double H : {1.0 * um, 0.72 * um, 0.6 * um}) {
            const SphereSystem sys = qubit_system(0.15, H, p_);
            const Spectrum s = spectrum(sys, {0}, {0}, p_.solver);
            const Table lat = lateral_table(sys.lateral, &s.states[0].psi);
            for (const auto& row : lat.rows)
                t.add({H, row[0], row[2], row[3]});
        }
        return {write_table(rc, "fig9_lateral", t, {{"Vr_V", "0.15"}})};
    }

    const SweepMap& qubit_sweep()
    {
        if (!sweep_) {
            SweepConfig c;
            c.Rr = Rr;
            c.Rs = Rs;
            c.B0 = B0_qubit;
            c.a_r = a_r;
            c.Vr_axis = p_.fig10_Vr;
            c.H_axis = p_.fig10_H;
            c.solver = p_.solver;
            c.threads = base_.threads;
            const auto dir = std::filesystem::path(base_.out_dir) / "checkpoints";
            std::filesystem::create_directories(dir);
            c.checkpoint_path = (dir / (p_.reduced ? "fig10_reduced.checkpoint" : "fig10.checkpoint")).string();
            sweep_ = sweep(c);
        }
        return *sweep_;
    }

    std::vector<std::string> fig10(const RunConfig& rc)
    {
        const SweepMap& map = qubit_sweep();
        const auto mask = operating_region(map, 1e9, 10e9, 100e6);
        Table region{{"Vr[V]", "H[m]", "f01[GHz]", "alpha[GHz]", "in_region"}, {}};
        for (std::size_t i = 0; i < map.cells.size(); ++i)
            region.add({map.cells[i].Vr, map.cells[i].H, map.cells[i].f01 / 1e9, map.cells[i].alpha_h / 1e9,
                        long(mask[i])});
        return {write_table(rc, "fig10ab_sweep", sweep_table(map), {{"pairing", map.excited_state_pairing}}),
                write_table(rc, "fig10c_region", region,
                            {{"f01_window_Hz", "1e9..1e10"}, {"alpha_min_Hz", "1e8"}})};
    }

    std::vector<std::string> fig11(const RunConfig& rc)
    {
        const SweepMap& map = qubit_sweep();
        PinGeometry geometry;
        geometry.h = p_.laplace_h;
        const LaplaceSolution solution = solve_differential_mode(geometry);
        Table t{{"Vr[V]", "H[m]", "Zdiff[Ohm]", "EV[1/m]", "dipole[C*m]", "g_over_2pi[MHz]", "converged"}, {}};
        for (double Z : {100.0, 2500.0})
            for (const auto& c : map.cells) {
                const double EV = field_per_volt(solution, probe_height(geometry, Rs, c.H));
                const double g = coupling_g(c.dipole, ResonatorSpec{kTwoPi * 5e9, Z, EV});
                t.add({c.Vr, c.H, Z, EV, c.dipole, g / 1e6, long(c.converged && c.error.empty())});
            }
        return {write_table(rc, "fig11_coupling", t,
                            {{"f_r_Hz", "5e9"}, {"geometry_fingerprint", std::to_string(geometry.fingerprint())}})};
    }

    RunConfig base_;
    Preset p_;
    std::optional<FieldGrid> field_a_;
    std::optional<SweepMap> sweep_;
};

} // namespace

std::vector<std::string> run_reproduce(const RunConfig& config)
{
    const bool reduced = config.params["preset"] == "reduced";
    std::vector<std::string> wanted = config.params["figures"].get<std::vector<std::string>>();
    if (wanted.empty())
        wanted = figure_names();

    Reproducer rep(config, make_preset(reduced));
    json manifest = {{"schema_version", 1},
                     {"tool", "levqsim"},
                     {"version", tool_version()},
                     {"constants", std::string(kConstants.id)},
                     {"preset", config.params["preset"]},
                     {"figures", json::array()}};
    std::vector<std::string> files;
    std::size_t failures = 0;
    for (const auto& name : figure_names()) {
        if (std::find(wanted.begin(), wanted.end(), name) == wanted.end())
            continue;
        json entry = {{"figure", name}};
        try {
            const auto written = rep.produce(name);
            entry["files"] = written;
            entry["status"] = "ok";
            files.insert(files.end(), written.begin(), written.end());
        } catch (const IoError&) {
            throw;
        } catch (const std::exception& ex) {
            entry["status"] = "failed";
            entry["error"] = ex.what();
            ++failures;
        }
        manifest["figures"].push_back(entry);
    }
    atomic_write(config.out_dir, "manifest.json", manifest.dump(1) + "\n");
    files.push_back("manifest.json");
    if (failures > 0)
        throw NumericalError(std::to_string(failures) + " figure dataset(s) failed; see manifest.json");
    return files;
}

} // namespace levqsim::cli
