#pragma once

#include <span>

namespace levqsim {

/// Complete elliptic integral of the first kind K(k) as a function of the
/// parameter m = k^2, via the arithmetic-geometric mean. Throws
/// std::domain_error unless 0 <= m < 1.
double elliptic_K(double m_sq);

/// <Y_{l+1,m}| cos(theta) |Y_{l,m}> = sqrt(((l+1)^2 - m^2) / ((2l+1)(2l+3))).
double ylm_cos_coupling(int l, int m);

/// <Y_{l_out,m}| sin^2(theta) |Y_{l_in,m}>; zero unless |l_out - l_in| is 0 or 2.
double ylm_sin2_coupling(int l_out, int l_in, int m);

/// theta-part of the orthonormal spherical harmonic Y_{l,m}(theta, 0) for
/// l = |m| .. l_max, written to out[l - |m|]. Uses the recurrence built on
/// ylm_cos_coupling so the normalisation and phase agree with the matrix
/// elements above (Condon-Shortley phase).
void ylm_theta_column(int l_max, int m, double theta, std::span<double> out);

} // namespace levqsim
