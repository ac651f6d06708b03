#include "levqsim/core/material.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <string>

namespace levqsim {

namespace {

const std::array<Material, 3> kMaterials{{
    {"water", 1000.0, -9.04e-6},
    {"He II", 145.0, -8.6e-7},
    {"SNe", 1440.0, -6.25e-6},
}};

std::string squash(std::string_view s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

} // namespace

std::span<const Material> builtin_materials() { return kMaterials; }

const Material& material_by_name(std::string_view name)
{
    const std::string key = squash(name);
    if (key == "water" || key == "h2o")
        return kMaterials[0];
    if (key == "heii" || key == "he2" || key == "helium")
        return kMaterials[1];
    if (key == "sne" || key == "neon" || key == "solidneon")
        return kMaterials[2];
    throw std::invalid_argument("unknown material '" + std::string(name) + "'");
}

} // namespace levqsim
