#include "levqsim/core/linalg.hpp"

#include "levqsim/core/errors.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace levqsim {

SymmetricBandMatrix::SymmetricBandMatrix(std::size_t size, std::size_t bandwidth)
    : size_(size), bands_(bandwidth + 1)
{
    for (std::size_t k = 0; k <= bandwidth; ++k)
        bands_[k].assign(size > k ? size - k : 0, 0.0);
}

double SymmetricBandMatrix::operator()(std::size_t i, std::size_t j) const
{
    if (i > j)
        std::swap(i, j);
    const std::size_t k = j - i;
    if (k >= bands_.size() || j >= size_)
        return 0.0;
    return bands_[k][i];
}

void SymmetricBandMatrix::set(std::size_t i, std::size_t j, double value)
{
    if (i > j)
        std::swap(i, j);
    const std::size_t k = j - i;
    if (k >= bands_.size() || j >= size_)
        throw std::out_of_range("SymmetricBandMatrix::set outside band");
    bands_[k][i] = value;
}

void SymmetricBandMatrix::add(std::size_t i, std::size_t j, double value)
{
    if (i > j)
        std::swap(i, j);
    set(i, j, (*this)(i, j) + value);
}

EigenSystem lowest_eigenpairs(const SymmetricBandMatrix& a, std::size_t count)
{
    const auto n = static_cast<lapack_int>(a.size());
    const auto kd = static_cast<lapack_int>(a.bandwidth());
    if (count == 0 || count > a.size())
        throw std::invalid_argument("lowest_eigenpairs: count out of range");

    // LAPACK upper band storage, column major: ab[(kd + i - j) + j*ldab] = A(i, j), i <= j
    const lapack_int ldab = kd + 1;
    std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
    for (lapack_int j = 0; j < n; ++j)
        for (lapack_int i = (j - kd > 0 ? j - kd : 0); i <= j; ++i)
            ab[(kd + i - j) + static_cast<std::size_t>(j) * ldab] = a(i, j);

    const auto m_req = static_cast<lapack_int>(count);
    std::vector<double> q(static_cast<std::size_t>(n) * n);
    std::vector<double> w(n);
    std::vector<double> z(static_cast<std::size_t>(n) * m_req);
    std::vector<lapack_int> ifail(n);
    lapack_int found = 0;
    const lapack_int info =
        LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, kd, ab.data(), ldab, q.data(), n, 0.0,
                       0.0, 1, m_req, 0.0, &found, w.data(), z.data(), n, ifail.data());
    if (info != 0 || found != m_req)
        throw NumericalError("dsbevx failed (info=" + std::to_string(info) + ")");

    EigenSystem out;
    out.values.assign(w.begin(), w.begin() + found);
    out.vectors.resize(found);
    for (lapack_int k = 0; k < found; ++k)
        out.vectors[k].assign(z.begin() + static_cast<std::ptrdiff_t>(k) * n,
                              z.begin() + static_cast<std::ptrdiff_t>(k + 1) * n);
    return out;
}

EigenSystem lowest_eigenpairs_tridiagonal(std::span<const double> diag,
                                          std::span<const double> offdiag, std::size_t count)
{
    const auto n = static_cast<lapack_int>(diag.size());
    if (offdiag.size() + 1 != diag.size())
        throw std::invalid_argument("lowest_eigenpairs_tridiagonal: size mismatch");
    if (count == 0 || count > diag.size())
        throw std::invalid_argument("lowest_eigenpairs_tridiagonal: count out of range");

    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(offdiag.begin(), offdiag.end());
    e.push_back(0.0);
    const auto m_req = static_cast<lapack_int>(count);
    std::vector<double> w(n);
    std::vector<double> z(static_cast<std::size_t>(n) * m_req);
    std::vector<lapack_int> ifail(n);
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevx(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0,
                                           0.0, 1, m_req, 0.0, &found, w.data(), z.data(), n,
                                           ifail.data());
    if (info != 0 || found != m_req)
        throw NumericalError("dstevx failed (info=" + std::to_string(info) + ")");

    EigenSystem out;
    out.values.assign(w.begin(), w.begin() + found);
    out.vectors.resize(found);
    for (lapack_int k = 0; k < found; ++k)
        out.vectors[k].assign(z.begin() + static_cast<std::ptrdiff_t>(k) * n,
                              z.begin() + static_cast<std::ptrdiff_t>(k + 1) * n);
    return out;
}

} // namespace levqsim
