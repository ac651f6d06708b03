#include "levqsim/eigensolver.hpp"

#include "levqsim/core/constants.hpp"
#include "levqsim/core/errors.hpp"
#include "levqsim/core/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace levqsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t fnv1a(std::uint64_t h, double v)
{
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

double zeeman_energy(const SphereSystem& s, int m)
{
    const auto& c = kConstants;
    return c.e * s.B0 / (2.0 * c.m_e) * m * c.hbar;
}

double diamagnetic_prefactor(const SphereSystem& s)
{
    const auto& c = kConstants;
    return c.e * c.e * s.B0 * s.B0 * s.Rs * s.Rs / (8.0 * c.m_e);
}

double weighted_dot(const std::vector<double>& a, const std::vector<double>& b,
                    const std::vector<double>& w)
{
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        sum += w[j] * a[j] * b[j];
    return sum;
}

void normalize(std::vector<double>& psi, const std::vector<double>& w)
{
    const double norm = std::sqrt(weighted_dot(psi, psi, w));
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw NumericalError("imaginary-time refinement: state collapsed to zero norm");
    for (double& v : psi)
        v /= norm;
}

void project_out(std::vector<double>& psi, const std::vector<AngularEigenstate>& lower,
                 const std::vector<double>& w)
{
    for (const auto& s : lower) {
        const double overlap = weighted_dot(s.psi, psi, w);
        for (std::size_t j = 0; j < psi.size(); ++j)
            psi[j] -= overlap * s.psi[j];
    }
}

} // namespace

double SphereSystem::energy_scale() const
{
    const auto& c = kConstants;
    return c.hbar * c.hbar / (2.0 * c.m_e * Rs * Rs);
}

SphereSystem make_sphere_system(const RingElectrode& electrode, double Rs, double B0, double dtheta)
{
    const ThetaGrid grid = ThetaGrid::cells_with_step(dtheta);
    SphereSystem s{
        .Rs = Rs,
        .B0 = B0,
        .lateral = lateral_potential(electrode, Rs, grid),
        .U_pole = electrode.potential(0.0, Rs),
        .E_r = pole_field(electrode, Rs),
        .fingerprint = 1469598103934665603ull,
    };
    const auto& g = electrode.geometry();
    for (double v : {Rs, B0, g.Rr, g.H, g.Vr, g.a_r, static_cast<double>(grid.size())})
        s.fingerprint = fnv1a(s.fingerprint, v);
    return s;
}

SymmetricBandMatrix build_simplified_H(const SphereSystem& system, int m, int Nmax)
{
    const int am = std::abs(m);
    if (Nmax < am)
        throw std::invalid_argument("build_simplified_H: Nmax must be >= |m|");
    const std::size_t size = static_cast<std::size_t>(Nmax - am + 1);
    SymmetricBandMatrix h(size, 2);

    const double e0 = system.energy_scale();
    const double tilt = kConstants.e * system.E_r * system.Rs;
    const double constant = zeeman_energy(system, m) + system.U_pole + tilt;
    const double dia = diamagnetic_prefactor(system);

    for (int l = am; l <= Nmax; ++l) {
        const std::size_t i = static_cast<std::size_t>(l - am);
        h.set(i, i, e0 * l * (l + 1.0) + constant + dia * ylm_sin2_coupling(l, l, m));
        if (l + 1 <= Nmax)
            h.set(i, i + 1, -tilt * ylm_cos_coupling(l, m));
        if (l + 2 <= Nmax)
            h.set(i, i + 2, dia * ylm_sin2_coupling(l + 2, l, m));
    }
    return h;
}

TrialBasis trial_states(const SphereSystem& system, int m, int count, int Nmax)
{
    const int am = std::abs(m);
    if (count < 1 || count > Nmax - am + 1)
        throw std::invalid_argument("trial_states: count must lie in [1, Nmax - |m| + 1]");

    // Diagonalise in units of E0 so LAPACK tolerances see O(1) numbers.
    const double e0 = system.energy_scale();
    SymmetricBandMatrix h = build_simplified_H(system, m, Nmax);
    SymmetricBandMatrix scaled(h.size(), 2);
    for (std::size_t k = 0; k <= 2; ++k)
        for (std::size_t i = 0; i + k < h.size(); ++i)
            scaled.set(i, i + k, h.band(k)[i] / e0);
    const EigenSystem eig = lowest_eigenpairs(scaled, static_cast<std::size_t>(count));

    TrialBasis out{m, Nmax, eig.vectors, {}, {}};
    for (double v : eig.values)
        out.trial_energies.push_back(v * e0);

    const ThetaGrid& grid = system.lateral.grid;
    const std::size_t nb = h.size();
    out.psi.assign(count, std::vector<double>(grid.size(), 0.0));
    std::vector<double> column(nb);
    const double root2pi = std::sqrt(kTwoPi);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        ylm_theta_column(Nmax, m, grid.theta(j), column);
        for (int n = 0; n < count; ++n) {
            const auto& c = out.coefficients[n];
            double sum = 0.0;
            for (std::size_t i = 0; i < nb; ++i)
                sum += c[i] * column[i];
            out.psi[n][j] = root2pi * sum;
        }
    }
    const auto& w = grid.weights();
    for (auto& psi : out.psi) {
        normalize(psi, w);
        // fix the sign so the largest lobe is positive
        const auto it = std::max_element(psi.begin(), psi.end(),
                                          [](double a, double b) { return std::abs(a) < std::abs(b); });
        if (*it < 0.0)
            for (double& v : psi)
                v = -v;
    }
    return out;
}

GridHamiltonian::GridHamiltonian(const SphereSystem& system, int m)
{
    const ThetaGrid& grid = system.lateral.grid;
    if (grid.layout() != ThetaGrid::Layout::cells)
        throw std::invalid_argument("GridHamiltonian: expects a cell-centred theta grid");
    const std::size_t n = grid.size();
    const double h = grid.step();
    const double e0 = system.energy_scale();
    const double zee = zeeman_energy(system, m) / e0;
    const double dia = diamagnetic_prefactor(system) / e0;
    const double mm = static_cast<double>(m) * m;
    weights_ = grid.weights();

    const auto& U = system.lateral.U;
    offset_ = *std::min_element(U.begin(), U.end()) / e0 + zee;

    diag_.resize(n);
    lower_.resize(n);
    upper_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s_up = (j + 1 < n) ? std::sin((j + 1) * h) : 0.0;
        const double s_dn = (j > 0) ? std::sin(j * h) : 0.0;
        const double denom = h * weights_[j];
        const double st = std::sin(grid.theta(j));
        upper_[j] = s_up / denom;
        lower_[j] = s_dn / denom;
        const double potential = mm / (st * st) + zee + dia * st * st + U[j] / e0 - offset_;
        diag_[j] = upper_[j] + lower_[j] + potential;
    }
}

void GridHamiltonian::apply(const std::vector<double>& psi, std::vector<double>& out) const
{
    const std::size_t n = diag_.size();
    out.resize(n);
    if (n == 1) {
        out[0] = diag_[0] * psi[0];
        return;
    }
    out[0] = diag_[0] * psi[0] - upper_[0] * psi[1];
    for (std::size_t j = 1; j + 1 < n; ++j)
        out[j] = diag_[j] * psi[j] - upper_[j] * psi[j + 1] - lower_[j] * psi[j - 1];
    out[n - 1] = diag_[n - 1] * psi[n - 1] - lower_[n - 1] * psi[n - 2];
}

double GridHamiltonian::expectation(const std::vector<double>& psi) const
{
    std::vector<double> hpsi;
    apply(psi, hpsi);
    return weighted_dot(psi, hpsi, weights_) / weighted_dot(psi, psi, weights_) + offset_;
}

double GridHamiltonian::spectral_bound() const
{
    const std::size_t n = diag_.size();
    double bound = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        double r = diag_[j];
        if (j + 1 < n)
            r += std::sqrt(upper_[j] * lower_[j + 1]);
        if (j > 0)
            r += std::sqrt(upper_[j - 1] * lower_[j]);
        bound = std::max(bound, r);
    }
    return bound;
}

std::vector<AngularEigenstate> refine_imaginary_time(const SphereSystem& system,
                                                     const TrialBasis& trial,
                                                     const SolverParams& params)
{
    if (!(params.dtau > 0.0) || params.check_interval < 1 || params.max_iters < 1)
        throw std::invalid_argument("refine_imaginary_time: invalid solver parameters");

    const GridHamiltonian ham(system, trial.m);
    const auto& w = system.lateral.grid.weights();
    const double e0 = system.energy_scale();
    const double bound = ham.spectral_bound();

    std::vector<AngularEigenstate> done;
    std::vector<double> hpsi;
    for (std::size_t n = 0; n < trial.psi.size(); ++n) {
        std::vector<double> psi = trial.psi[n];
        project_out(psi, done, w);
        normalize(psi, w);

        ham.apply(psi, hpsi);
        // energies below are relative to the operator offset
        const double e_ref = weighted_dot(psi, hpsi, w);
        // forward Euler on (H - e_ref) is a rescaled step of the plain flow and
        // stays stable while dt * (lambda_max - e_ref) < 2
        double dt = params.dtau;
        if (bound - e_ref > 0.0)
            dt = std::min(dt, 1.9 / (bound - e_ref));

        double energy = e_ref;
        double last_check = energy;
        int rising = 0;
        bool converged = false;
        long it = 0;
        while (it < params.max_iters) {
            for (std::size_t j = 0; j < psi.size(); ++j)
                psi[j] -= dt * (hpsi[j] - e_ref * psi[j]);
            project_out(psi, done, w);
            normalize(psi, w);
            ham.apply(psi, hpsi);
            ++it;

            const double next = weighted_dot(psi, hpsi, w);
            if (next > energy + 1e-12 * (1.0 + std::abs(energy))) {
                if (++rising >= 10)
                    throw NumericalError("imaginary-time refinement: energy rose for 10 consecutive "
                                         "steps (dtau too large for the theta grid)");
            } else {
                rising = 0;
            }
            energy = next;

            if (it % params.check_interval == 0) {
                if (std::abs(energy - last_check) < params.energy_tol) {
                    converged = true;
                    break;
                }
                last_check = energy;
            }
        }

        done.push_back(AngularEigenstate{
            .n = static_cast<int>(n),
            .m = trial.m,
            .psi = psi,
            .energy = (energy + ham.offset()) * e0,
            .trial_energy = trial.trial_energies[n],
            .converged = converged,
            .iterations = it,
            .fingerprint = system.fingerprint,
        });
    }
    return done;
}

const AngularEigenstate* Spectrum::find(int n, int m) const
{
    for (const auto& s : states)
        if (s.n == n && s.m == m)
            return &s;
    return nullptr;
}

double Spectrum::energy(int n, int m) const
{
    for (const auto& l : levels)
        if (l.n == n && l.m == m)
            return l.energy;
    throw std::out_of_range("spectrum has no level (n=" + std::to_string(n) +
                            ", m=" + std::to_string(m) + ")");
}

Spectrum spectrum(const SphereSystem& system, const std::vector<int>& n_list,
                  const std::vector<int>& m_list, const SolverParams& params)
{
    if (n_list.empty() || m_list.empty())
        throw std::invalid_argument("spectrum: empty quantum-number list");
    const int n_max = *std::max_element(n_list.begin(), n_list.end());
    if (*std::min_element(n_list.begin(), n_list.end()) < 0)
        throw std::invalid_argument("spectrum: n must be non-negative");

    Spectrum out;
    for (int m : m_list) {
        const TrialBasis trial = trial_states(system, m, n_max + 1, params.Nmax);
        auto states = refine_imaginary_time(system, trial, params);
        for (int n : n_list) {
            auto& s = states[static_cast<std::size_t>(n)];
            out.levels.push_back(Level{s.n, s.m, s.energy, s.converged});
            out.states.push_back(s);
        }
    }
    return out;
}

} // namespace levqsim
