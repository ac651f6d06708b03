#pragma once

#include "levqsim/eigensolver.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace levqsim {

struct QubitMetrics {
    double dE01;         // J, E(0,1) - E(0,0)
    double dE02;         // J, E(0,2) - E(0,0)
    double alpha;        // J, dE02 - 2 dE01
    double zeeman_split; // J, E(0,1) - E(0,-1)
    double f01;          // Hz
};

/// Needs levels (0,0), (0,1), (0,-1), (0,2); throws std::out_of_range otherwise.
QubitMetrics metrics_from_spectrum(const Spectrum& spectrum);

struct SweepConfig {
    double Rr = 1.5e-6;
    double Rs = 0.5e-6;
    double B0 = -20e-3;
    double a_r = 0.1e-6;
    std::vector<double> Vr_axis; // V
    std::vector<double> H_axis;  // m
    SolverParams solver;
    unsigned threads = 1;
    std::string checkpoint_path; // empty: no checkpointing

    /// Uniform n_Vr x n_H grid over [Vr_lo, Vr_hi] x [H_lo, H_hi].
    static SweepConfig uniform(double Vr_lo, double Vr_hi, std::size_t n_Vr, double H_lo, double H_hi,
                               std::size_t n_H);
    /// 20 x 20 over Vr in [50, 250] mV, H in [0.6, 1.1] um.
    static SweepConfig fig10_default();
};

struct SweepCell {
    double Vr = 0.0;       // V
    double H = 0.0;        // m
    double f01 = 0.0;      // Hz
    double alpha_h = 0.0;  // Hz
    double zeeman_h = 0.0; // Hz, (E(0,1) - E(0,-1)) / h
    double E_r = 0.0;      // V/m, pole field
    double dipole = 0.0;   // C m, |<0,1| d_{+1} |0,0>|
    bool converged = false;
    std::string error;     // non-empty when the cell failed
};

struct SweepMap {
    std::vector<double> Vr_axis;
    std::vector<double> H_axis;
    std::vector<SweepCell> cells; // row-major, index = iv * H_axis.size() + ih
    // Which azimuthal state lies lower at the configured B0.
    std::string excited_state_pairing;
    std::optional<std::vector<double>> g; // Hz, parallel to cells when filled in

    const SweepCell& at(std::size_t iv, std::size_t ih) const { return cells[iv * H_axis.size() + ih]; }
};

/// Solves one (Vr, H) cell. Failures are captured in SweepCell::error.
SweepCell sweep_cell(const SweepConfig& config, double Vr, double H);

using SweepProgress = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every cell (optionally on a worker pool) and returns them in grid
/// order. With a checkpoint path, finished cells are appended to that file and
/// reused by a later call with the same grid.
SweepMap sweep(const SweepConfig& config, const SweepProgress& progress = {});

/// Cells with f01 in [f_lo, f_hi] and alpha/h >= alpha_min. Failed or
/// unconverged cells are excluded.
std::vector<bool> operating_region(const SweepMap& map, double f_lo, double f_hi, double alpha_min);

} // namespace levqsim
