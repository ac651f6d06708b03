#include "levqsim/qubit.hpp"

#include "levqsim/core/constants.hpp"
#include "levqsim/coupling.hpp"
#include "levqsim/ringfield.hpp"

#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace levqsim {

QubitMetrics metrics_from_spectrum(const Spectrum& spectrum)
{
    const double e00 = spectrum.energy(0, 0);
    const double e01 = spectrum.energy(0, 1);
    const double e0m1 = spectrum.energy(0, -1);
    const double e02 = spectrum.energy(0, 2);
    QubitMetrics q;
    q.dE01 = e01 - e00;
    q.dE02 = e02 - e00;
    q.alpha = q.dE02 - 2.0 * q.dE01;
    q.zeeman_split = e01 - e0m1;
    q.f01 = q.dE01 / kConstants.h;
    return q;
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("sweep axis needs at least one point");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

struct Fnv {
    std::uint64_t h = 1469598103934665603ULL;
    void bytes(const void* p, std::size_t n)
    {
        const auto* c = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= c[i];
            h *= 1099511628211ULL;
        }
    }
    void add(double v) { bytes(&v, sizeof v); }
    void add(long v) { bytes(&v, sizeof v); }
};

std::uint64_t config_hash(const SweepConfig& c)
{
    Fnv f;
    for (double v : {c.Rr, c.Rs, c.B0, c.a_r, c.solver.dtheta, c.solver.dtau, c.solver.energy_tol})
        f.add(v);
    for (long v : {long(c.solver.Nmax), c.solver.max_iters, long(c.solver.check_interval)})
        f.add(v);
    for (double v : c.Vr_axis)
        f.add(v);
    f.add(-1.0);
    for (double v : c.H_axis)
        f.add(v);
    return f.h;
}

std::string format_cell(std::size_t index, const SweepCell& c)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, "%zu %a %a %a %a %a %a %a %d ", index, c.Vr, c.H, c.f01, c.alpha_h,
                  c.zeeman_h, c.E_r, c.dipole, c.converged ? 1 : 0);
    std::string line = buf;
    for (char ch : c.error)
        line += (ch == '\n' ? ' ' : ch);
    return line;
}

bool parse_cell(const std::string& line, std::size_t& index, SweepCell& c)
{
    std::istringstream in(line);
    std::string tok[7];
    int conv = 0;
    if (!(in >> index))
        return false;
    for (auto& t : tok)
        if (!(in >> t))
            return false;
    if (!(in >> conv))
        return false;
    double v[8];
    for (int i = 0; i < 7; ++i) {
        char* end = nullptr;
        v[i] = std::strtod(tok[i].c_str(), &end);
        if (end == tok[i].c_str())
            return false;
    }
    c.Vr = v[0];
    c.H = v[1];
    c.f01 = v[2];
    c.alpha_h = v[3];
    c.zeeman_h = v[4];
    c.E_r = v[5];
    c.dipole = v[6];
    c.converged = conv != 0;
    std::getline(in, c.error);
    if (!c.error.empty() && c.error.front() == ' ')
        c.error.erase(0, 1);
    return true;
}

} // namespace

SweepConfig SweepConfig::uniform(double Vr_lo, double Vr_hi, std::size_t n_Vr, double H_lo, double H_hi,
                                 std::size_t n_H)
{
    SweepConfig c;
    c.Vr_axis = linspace(Vr_lo, Vr_hi, n_Vr);
    c.H_axis = linspace(H_lo, H_hi, n_H);
    return c;
}

SweepConfig SweepConfig::fig10_default()
{
    return uniform(0.05, 0.25, 20, 0.6e-6, 1.1e-6, 20);
}

SweepCell sweep_cell(const SweepConfig& config, double Vr, double H)
{
    SweepCell cell;
    cell.Vr = Vr;
    cell.H = H;
    try {
        const RingElectrode electrode(RingGeometry{config.Rr, H, Vr, config.a_r});
        const SphereSystem system = make_sphere_system(electrode, config.Rs, config.B0, config.solver.dtheta);
        cell.E_r = system.E_r;
        const Spectrum spec = spectrum(system, {0}, {-1, 0, 1, 2}, config.solver);
        const QubitMetrics q = metrics_from_spectrum(spec);
        cell.f01 = q.f01;
        cell.alpha_h = q.alpha / kConstants.h;
        cell.zeeman_h = q.zeeman_split / kConstants.h;
        cell.dipole = dipole_matrix_element(*spec.find(0, 0), *spec.find(0, 1), system);
        cell.converged = true;
        for (const auto& l : spec.levels)
            cell.converged = cell.converged && l.converged;
    } catch (const std::exception& ex) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        cell.f01 = cell.alpha_h = cell.zeeman_h = cell.dipole = nan;
        cell.converged = false;
        cell.error = ex.what();
        if (cell.error.empty())
            cell.error = "unknown failure";
    }
    return cell;
}

SweepMap sweep(const SweepConfig& config, const SweepProgress& progress)
{
    if (config.Vr_axis.empty() || config.H_axis.empty())
        throw std::invalid_argument("sweep: empty axis");

    SweepMap map;
    map.Vr_axis = config.Vr_axis;
    map.H_axis = config.H_axis;
    if (config.B0 < 0.0)
        map.excited_state_pairing = "m=+1 below m=-1; excited state is (n=0, m=+1)";
    else if (config.B0 > 0.0)
        map.excited_state_pairing = "m=-1 below m=+1; excited state is (n=0, m=+1)";
    else
        map.excited_state_pairing = "m=+1 and m=-1 degenerate; excited state is (n=0, m=+1)";

    const std::size_t nH = config.H_axis.size();
    const std::size_t total = config.Vr_axis.size() * nH;
    map.cells.resize(total);
    std::vector<char> done(total, 0);

    std::mutex io;
    std::ofstream checkpoint;
    const std::uint64_t hash = config_hash(config);
    if (!config.checkpoint_path.empty()) {
        std::ifstream in(config.checkpoint_path);
        std::string line;
        char header[64];
        std::snprintf(header, sizeof header, "levqsim-sweep-checkpoint %016" PRIx64, hash);
        bool reuse = false;
        if (in && std::getline(in, line))
            reuse = line == header;
        if (reuse) {
            std::size_t index = 0;
            SweepCell cell;
            while (std::getline(in, line))
                if (parse_cell(line, index, cell) && index < total) {
                    map.cells[index] = cell;
                    done[index] = 1;
                }
        }
        in.close();
        checkpoint.open(config.checkpoint_path, reuse ? std::ios::app : std::ios::trunc);
        if (!checkpoint)
            throw std::runtime_error("sweep: cannot open checkpoint file " + config.checkpoint_path);
        if (!reuse)
            checkpoint << header << '\n' << std::flush;
    }

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < total; ++i)
        if (!done[i])
            todo.push_back(i);
    std::size_t finished = total - todo.size();
    if (progress)
        progress(finished, total);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= todo.size())
                return;
            const std::size_t i = todo[k];
            SweepCell cell = sweep_cell(config, config.Vr_axis[i / nH], config.H_axis[i % nH]);
            std::lock_guard lock(io);
            if (checkpoint.is_open())
                checkpoint << format_cell(i, cell) << '\n' << std::flush;
            map.cells[i] = std::move(cell);
            ++finished;
            if (progress)
                progress(finished, total);
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(todo.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    return map;
}

std::vector<bool> operating_region(const SweepMap& map, double f_lo, double f_hi, double alpha_min)
{
    std::vector<bool> mask(map.cells.size(), false);
    for (std::size_t i = 0; i < map.cells.size(); ++i) {
        const auto& c = map.cells[i];
        mask[i] = c.converged && c.error.empty() && c.f01 >= f_lo && c.f01 <= f_hi && c.alpha_h >= alpha_min;
    }
    return mask;
}

} // namespace levqsim
