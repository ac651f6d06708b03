#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace levqsim {

// Real symmetric matrix stored by its upper bands: band[k][i] = A(i, i + k).
class SymmetricBandMatrix {
public:
    SymmetricBandMatrix(std::size_t size, std::size_t bandwidth);

    std::size_t size() const { return size_; }
    std::size_t bandwidth() const { return bands_.size() - 1; }

    // Any (i, j); zero outside the band.
    double operator()(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, double value);
    void add(std::size_t i, std::size_t j, double value);

    const std::vector<double>& band(std::size_t k) const { return bands_[k]; }

private:
    std::size_t size_;
    std::vector<std::vector<double>> bands_;
};

struct EigenSystem {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors; // unit 2-norm, one per value
};

/// Lowest `count` eigenpairs of a symmetric band matrix (LAPACK dsbevx).
EigenSystem lowest_eigenpairs(const SymmetricBandMatrix& a, std::size_t count);

/// Lowest `count` eigenpairs of a symmetric tridiagonal matrix (LAPACK dstevx).
EigenSystem lowest_eigenpairs_tridiagonal(std::span<const double> diag,
                                          std::span<const double> offdiag, std::size_t count);

} // namespace levqsim
