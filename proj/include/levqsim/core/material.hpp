#pragma once

#include <span>
#include <string>
#include <string_view>

namespace levqsim {

struct Material {
    std::string name;
    double rho; // kg/m^3
    double chi; // SI volume susceptibility, negative for diamagnets
};

// Water, He II and solid neon at the densities and susceptibilities used for
// the levitation comparison table.
std::span<const Material> builtin_materials();

// Case-insensitive lookup over builtin_materials(); accepts "water", "heii"/"he2"/"he ii", "sne"/"neon".
const Material& material_by_name(std::string_view name);

} // namespace levqsim
