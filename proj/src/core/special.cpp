#include "levqsim/core/special.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace levqsim {

double elliptic_K(double m_sq)
{
    if (!(m_sq >= 0.0 && m_sq < 1.0))
        throw std::domain_error("elliptic_K: parameter k^2 = " + std::to_string(m_sq) +
                                " outside [0, 1)");
    double a = 1.0;
    double b = std::sqrt(1.0 - m_sq);
    // converges quadratically; 64 iterations is far beyond what any m < 1 needs
    for (int it = 0; it < 64; ++it) {
        if (std::abs(a - b) <= 1e-16 * a)
            break;
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (2.0 * a);
}

double ylm_cos_coupling(int l, int m)
{
    if (l < 0 || std::abs(m) > l)
        throw std::domain_error("ylm_cos_coupling: requires |m| <= l, got l=" + std::to_string(l) +
                                " m=" + std::to_string(m));
    const double lp = l + 1.0;
    const double mm = static_cast<double>(m) * m;
    return std::sqrt((lp * lp - mm) / ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}

namespace {

// <l|cos^2|l> and <l+2|cos^2|l> from the tridiagonal cos matrix
double cos2_diag(int l, int m)
{
    const int am = std::abs(m);
    double v = ylm_cos_coupling(l, m) * ylm_cos_coupling(l, m);
    if (l - 1 >= am) {
        const double a = ylm_cos_coupling(l - 1, m);
        v += a * a;
    }
    return v;
}

} // namespace

double ylm_sin2_coupling(int l_out, int l_in, int m)
{
    const int am = std::abs(m);
    if (am > l_out || am > l_in)
        throw std::domain_error("ylm_sin2_coupling: requires |m| <= min(l_out, l_in)");
    if (l_out == l_in)
        return 1.0 - cos2_diag(l_in, m);
    const int lo = l_out < l_in ? l_out : l_in;
    if (std::abs(l_out - l_in) == 2)
        return -ylm_cos_coupling(lo, m) * ylm_cos_coupling(lo + 1, m);
    return 0.0;
}

void ylm_theta_column(int l_max, int m, double theta, std::span<double> out)
{
    const int am = std::abs(m);
    if (l_max < am)
        throw std::domain_error("ylm_theta_column: l_max < |m|");
    if (out.size() < static_cast<std::size_t>(l_max - am + 1))
        throw std::invalid_argument("ylm_theta_column: output span too small");

    const double x = std::cos(theta);
    const double s = std::sin(theta);
    double p = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int k = 1; k <= am; ++k)
        p *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
    // Y_{l,-m} theta part = (-1)^m Y_{l,m}
    if (m < 0 && (am % 2 == 1))
        p = -p;

    out[0] = p;
    if (l_max == am)
        return;
    out[1] = x * p / ylm_cos_coupling(am, am);
    for (int l = am + 1; l < l_max; ++l) {
        const double a_l = ylm_cos_coupling(l, am);
        const double a_lm1 = ylm_cos_coupling(l - 1, am);
        out[l + 1 - am] = (x * out[l - am] - a_lm1 * out[l - 1 - am]) / a_l;
    }
}

} // namespace levqsim
