#pragma once

#include "levqsim/core/linalg.hpp"
#include "levqsim/core/theta_grid.hpp"
#include "levqsim/ringfield.hpp"

#include <cstdint>
#include <vector>

namespace levqsim {

// Electron confined to a sphere of radius Rs in a uniform field B0 along z and
// the lateral potential of a ring electrode.
struct SphereSystem {
    double Rs;                // m
    double B0;                // T, signed
    LateralPotential lateral; // exact U(theta) on the refinement grid
    double U_pole;            // J, U(theta = 0)
    double E_r;               // V/m, pole field used by the simplified Hamiltonian
    std::uint64_t fingerprint;

    /// hbar^2 / (2 m_e Rs^2)
    double energy_scale() const;
};

/// Grid spacing dtheta is rounded down to pi/n for a cell-centred grid.
SphereSystem make_sphere_system(const RingElectrode& electrode, double Rs, double B0, double dtheta);

struct SolverParams {
    int Nmax = 800;
    double dtheta = 3.1e-3;       // rad
    double dtau = 1e-6;           // dimensionless imaginary-time step
    double energy_tol = 1e-10;    // |dE|/E0 per check_interval steps
    long max_iters = 20'000'000;
    int check_interval = 1000;
};

/// Simplified Hamiltonian (J) in the Y_{l,m} basis, l = |m| .. Nmax: free rotor,
/// Zeeman, diamagnetic sin^2 and the pole expansion U(0) + e E_r Rs (1 - cos).
SymmetricBandMatrix build_simplified_H(const SphereSystem& system, int m, int Nmax);

struct TrialBasis {
    int m;
    int Nmax;
    std::vector<std::vector<double>> coefficients; // c_l, l = |m| .. Nmax
    std::vector<double> trial_energies;            // J, ascending
    std::vector<std::vector<double>> psi;          // theta part on the system grid, unit norm
};

TrialBasis trial_states(const SphereSystem& system, int m, int count, int Nmax);

struct AngularEigenstate {
    int n;
    int m;
    std::vector<double> psi; // real theta profile; the e^{i m phi} factor is implicit
    double energy;           // J
    double trial_energy;     // J
    bool converged;
    long iterations;
    std::uint64_t fingerprint;
};

// Discretised full Hamiltonian (units of E0) for one m block: flux-form
// Laplacian on the cell-centred grid, explicit centrifugal term, Zeeman,
// diamagnetic and the exact lateral potential. Symmetric with respect to the
// grid quadrature weights.
class GridHamiltonian {
public:
    GridHamiltonian(const SphereSystem& system, int m);

    std::size_t size() const { return diag_.size(); }
    // Constant removed from the potential before the operator is applied (E0 units).
    double offset() const { return offset_; }

    void apply(const std::vector<double>& psi, std::vector<double>& out) const;
    /// <psi|H|psi> in E0 units, offset included.
    double expectation(const std::vector<double>& psi) const;
    /// Gershgorin upper bound on the spectrum of the shifted operator.
    double spectral_bound() const;

private:
    std::vector<double> diag_, lower_, upper_;
    std::vector<double> weights_;
    double offset_;
};

/// Imaginary-time (forward Euler) refinement of trial states under the full
/// Hamiltonian, renormalising and projecting out lower states of the same m
/// every step. States are refined in ascending n.
std::vector<AngularEigenstate> refine_imaginary_time(const SphereSystem& system,
                                                     const TrialBasis& trial,
                                                     const SolverParams& params);

struct Level {
    int n;
    int m;
    double energy; // J
    bool converged;
};

struct Spectrum {
    std::vector<Level> levels;
    std::vector<AngularEigenstate> states; // parallel to levels

    const AngularEigenstate* find(int n, int m) const;
    double energy(int n, int m) const; // throws if absent
};

/// Levels for every (n, m) with n in n_list and m in m_list.
Spectrum spectrum(const SphereSystem& system, const std::vector<int>& n_list,
                  const std::vector<int>& m_list, const SolverParams& params);

} // namespace levqsim
