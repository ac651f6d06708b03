#pragma once

#include <numbers>
#include <string_view>

namespace levqsim {

// CODATA 2018 values (SI). e, h, k_B are exact since the 2019 redefinition.
struct PhysicalConstants {
    double mu0;   // T m / A
    double e;     // C
    double m_e;   // kg
    double hbar;  // J s
    double h;     // J s
    double k_B;   // J / K
    double g_acc; // m / s^2
    double eps0;  // F / m
    double mu_B;  // J / T

    std::string_view id;
};

inline constexpr PhysicalConstants make_codata2018()
{
    constexpr double e = 1.602176634e-19;
    constexpr double h = 6.62607015e-34;
    constexpr double hbar = h / (2.0 * std::numbers::pi);
    constexpr double m_e = 9.1093837015e-31;
    return PhysicalConstants{
        .mu0 = 1.25663706212e-6,
        .e = e,
        .m_e = m_e,
        .hbar = hbar,
        .h = h,
        .k_B = 1.380649e-23,
        .g_acc = 9.80665,
        .eps0 = 8.8541878128e-12,
        .mu_B = e * hbar / (2.0 * m_e),
        .id = "CODATA-2018",
    };
}

inline constexpr PhysicalConstants kConstants = make_codata2018();

namespace units {
inline constexpr double um = 1e-6;
inline constexpr double nm = 1e-9;
inline constexpr double angstrom = 1e-10;
inline constexpr double mV = 1e-3;
inline constexpr double mT = 1e-3;
inline constexpr double GHz = 1e9;
inline constexpr double MHz = 1e6;
inline constexpr double eV = kConstants.e; // J per eV
} // namespace units

} // namespace levqsim
