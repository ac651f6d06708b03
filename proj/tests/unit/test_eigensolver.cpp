#include <doctest.h>

#include "levqsim/core/constants.hpp"
#include "levqsim/core/linalg.hpp"
#include "levqsim/eigensolver.hpp"

#include <cmath>
#include <vector>

using namespace levqsim;

namespace {

constexpr double um = 1e-6;

SphereSystem free_sphere(double B0, double dtheta)
{
    return make_sphere_system(RingElectrode(RingGeometry{1.5 * um, 1.0 * um, 0.0}), 0.5 * um, B0, dtheta);
}

SphereSystem biased(double Vr, double H, double B0, double dtheta)
{
    return make_sphere_system(RingElectrode(RingGeometry{1.5 * um, H, Vr}), 0.5 * um, B0, dtheta);
}

// Lowest eigenvalues (J) of the grid Hamiltonian by direct diagonalisation of
// its weight-symmetrised tridiagonal form.
std::vector<double> direct_levels(const SphereSystem& sys, int m, std::size_t count)
{
    const GridHamiltonian ham(sys, m);
    const std::size_t n = ham.size();
    std::vector<double> e(n, 0.0), col(n), diag(n), up(n, 0.0), lo(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        ham.apply(e, col);
        diag[j] = col[j];
        if (j + 1 < n)
            lo[j] = col[j + 1]; // H(j+1, j)
        if (j > 0)
            up[j - 1] = col[j - 1]; // H(j-1, j)
        e[j] = 0.0;
    }
    std::vector<double> off(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j)
        off[j] = -std::sqrt(up[j] * lo[j]);
    const EigenSystem es = lowest_eigenpairs_tridiagonal(diag, off, count);
    std::vector<double> out;
    for (double v : es.values)
        out.push_back((v + ham.offset()) * sys.energy_scale());
    return out;
}

} // namespace

TEST_CASE("free rotor levels are l(l+1) E0")
{
    const SphereSystem sys = free_sphere(0.0, 3.1e-3);
    const double e0 = sys.energy_scale();
    const Spectrum s = spectrum(sys, {0, 1, 2, 3, 4, 5}, {0}, SolverParams{});
    for (int l = 0; l <= 5; ++l)
        CHECK(s.energy(l, 0) / e0 == doctest::Approx(l * (l + 1.0)).epsilon(1e-3).scale(1.0));
    const Spectrum s1 = spectrum(sys, {0, 1}, {1}, SolverParams{});
    CHECK(s1.energy(0, 1) / e0 == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(s1.energy(1, 1) / e0 == doctest::Approx(6.0).epsilon(1e-3));
}

TEST_CASE("energy scale of a 0.5 um sphere")
{
    const SphereSystem sys = free_sphere(0.0, 0.01);
    // 2 E0 / h, direct evaluation
    const double f = 2.0 * kConstants.hbar * kConstants.hbar / (2.0 * kConstants.m_e * 0.25e-12) / kConstants.h;
    CHECK(2.0 * sys.energy_scale() / kConstants.h == doctest::Approx(f));
    CHECK(f > 10e6);
    CHECK(f < 100e6);
}

TEST_CASE("+m and -m are degenerate without a field and split by the Zeeman term with one")
{
    SolverParams p;
    p.dtheta = 6.2e-3;
    const Spectrum s0 = spectrum(biased(0.2, 0.9 * um, 0.0, p.dtheta), {0}, {-1, 1}, p);
    CHECK(s0.energy(0, 1) == doctest::Approx(s0.energy(0, -1)).epsilon(1e-12));

    const double B0 = -20e-3;
    const Spectrum s = spectrum(biased(0.2, 0.9 * um, B0, p.dtheta), {0}, {-1, 1}, p);
    const double split = s.energy(0, 1) - s.energy(0, -1);
    CHECK(split == doctest::Approx(-2.0 * kConstants.mu_B * std::abs(B0)).epsilon(1e-6));
}

TEST_CASE("imaginary-time energies agree with direct diagonalisation")
{
    SolverParams p;
    p.dtheta = 6.2e-3;
    const SphereSystem sys = biased(0.25, 1.0 * um, -20e-3, p.dtheta);
    for (int m : {0, 1}) {
        const auto direct = direct_levels(sys, m, 2);
        const Spectrum s = spectrum(sys, {0, 1}, {m}, p);
        const double gap = direct[1] - direct[0];
        CHECK(std::abs(s.energy(0, m) - direct[0]) < 1e-4 * gap);
        CHECK(std::abs(s.energy(1, m) - direct[1]) < 1e-3 * gap);
    }
}

TEST_CASE("simplified Hamiltonian trial states are ordered and normalised")
{
    const SphereSystem sys = biased(0.15, 0.85 * um, -20e-3, 6.2e-3);
    const TrialBasis t = trial_states(sys, 0, 3, 200);
    for (std::size_t i = 1; i < t.trial_energies.size(); ++i)
        CHECK(t.trial_energies[i] > t.trial_energies[i - 1]);
    const auto& w = sys.lateral.grid.weights();
    for (const auto& psi : t.psi) {
        double n = 0.0;
        for (std::size_t j = 0; j < psi.size(); ++j)
            n += w[j] * psi[j] * psi[j];
        CHECK(n == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("refined states are orthonormal within each m")
{
    SolverParams p;
    p.dtheta = 6.2e-3;
    const SphereSystem sys = biased(0.15, 0.85 * um, -20e-3, p.dtheta);
    const Spectrum s = spectrum(sys, {0, 1, 2}, {0}, p);
    const auto& w = sys.lateral.grid.weights();
    for (std::size_t a = 0; a < s.states.size(); ++a)
        for (std::size_t b = 0; b < s.states.size(); ++b) {
            double ov = 0.0;
            for (std::size_t j = 0; j < w.size(); ++j)
                ov += w[j] * s.states[a].psi[j] * s.states[b].psi[j];
            CHECK(ov == doctest::Approx(a == b ? 1.0 : 0.0).scale(1.0).epsilon(1e-8));
        }
    for (const auto& st : s.states) {
        CHECK(st.converged);
        CHECK(st.fingerprint == sys.fingerprint);
    }
}

TEST_CASE("ground state narrows as the bias increases")
{
    SolverParams p;
    p.dtheta = 6.2e-3;
    double last = 1e9;
    for (double Vr : {0.05, 0.15, 0.25}) {
        const SphereSystem sys = biased(Vr, 0.85 * um, -20e-3, p.dtheta);
        const Spectrum s = spectrum(sys, {0}, {0}, p);
        const auto& g = sys.lateral.grid;
        double m2 = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            m2 += g.weights()[j] * g.theta(j) * g.theta(j) * s.states[0].psi[j] * s.states[0].psi[j];
        CHECK(m2 < last);
        last = m2;
    }
}

TEST_CASE("energies increase with n within each m")
{
    SolverParams p;
    p.dtheta = 6.2e-3;
    const SphereSystem sys = biased(0.2, 0.9 * um, -20e-3, p.dtheta);
    const Spectrum s = spectrum(sys, {0, 1, 2}, {0, 1}, p);
    for (int m : {0, 1}) {
        CHECK(s.energy(1, m) > s.energy(0, m));
        CHECK(s.energy(2, m) > s.energy(1, m));
    }
    CHECK_THROWS(s.energy(3, 0));
    CHECK(s.find(3, 0) == nullptr);
}
