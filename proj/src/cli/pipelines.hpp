#pragma once

#include "levqsim/eigensolver.hpp"
#include "levqsim/laplace.hpp"
#include "levqsim/maglev.hpp"
#include "levqsim/qubit.hpp"
#include "levqsim/vertical.hpp"
#include "output.hpp"

#include <json.hpp>

namespace levqsim::cli {

using nlohmann::json;

LoopSpec loop_from(const json& p, double current);
GridRequest grid_from(const json& p);
SolverParams solver_from(const json& p);
PinGeometry geometry_from(const json& p);
SweepConfig sweep_from(const json& p, unsigned threads);

Table energy_map_table(const EnergyMap& map, std::size_t stride);
json trap_report_json(const TrapReport& r, const EnergyMap& map, const LoopSpec& spec, const json& p);
Table lifetime_table(const std::vector<LifetimePoint>& points);
Table potential_profile_table(const VerticalPotential& v, double z_max, std::size_t n);
Table lateral_table(const LateralPotential& lateral, const std::vector<double>* psi0);
Table sweep_table(const SweepMap& map);
Table laplace_table(const LaplaceSolution& s, std::size_t stride);

std::string wkb_regime_name(WkbRegime r);

} // namespace levqsim::cli
