#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "opent/errors.hpp"
#include "opent/interval.hpp"
#include "opent/matrix.hpp"
#include "opent/rng.hpp"
#include "opent/spectral.hpp"

namespace opent {

// Haar-distributed orthogonal matrix: Householder QR of a standard Gaussian
// matrix, with Q's columns flipped so diag(R) > 0 (the sign fix that makes
// the QR factor Haar rather than merely orthogonal).
inline Matrix haar_orthogonal(std::size_t n, SplitMix64& rng) {
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.gaussian();

    Matrix q = Matrix::identity(n);
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        double norm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) norm2 += g(i, k) * g(i, k);
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        const double alpha = g(k, k) >= 0.0 ? -norm : norm;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = g(i, k);
            if (i == k) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;
        for (std::size_t j = k; j < n; ++j) {
            double w = 0.0;
            for (std::size_t i = k; i < n; ++i) w += v[i] * g(i, j);
            w *= beta;
            for (std::size_t i = k; i < n; ++i) g(i, j) -= w * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double w = 0.0;
            for (std::size_t j = k; j < n; ++j) w += q(i, j) * v[j];
            w *= beta;
            for (std::size_t j = k; j < n; ++j) q(i, j) -= w * v[j];
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (g(j, j) < 0.0)
            for (std::size_t i = 0; i < n; ++i) q(i, j) = -q(i, j);
    return q;
}

// Q Lambda Q^T with Haar-random Q and eigenvalues log-uniform in [lo, hi].
// lo == hi returns lo*I exactly. Otherwise eigenvalues are drawn from a
// slightly padded interior (1e-9 relative) so the reconstructed matrix still
// satisfies lo*I <= A <= hi*I at tolerance zero despite roundoff.
inline SymmetricMatrix random_spd(std::size_t dim, const Interval& spectrum, SplitMix64& rng) {
    if (dim < 1) throw ParameterOutOfRange("random_spd: dim must be >= 1");
    const double lo = spectrum.lo;
    const double hi = spectrum.hi;
    if (!(lo > 0.0)) throw InvalidSpectrum("random_spd: spectrum.lo must be > 0");
    if (!(hi >= lo) || !std::isfinite(hi))
        throw InvalidSpectrum("random_spd: spectrum must satisfy lo <= hi < inf");
    if (hi / lo > 1e4)
        throw InvalidSpectrum("random_spd: condition guard hi/lo <= 1e4 exceeded");

    if (hi == lo) {
        SymmetricMatrix a(dim);
        for (std::size_t i = 0; i < dim; ++i) a.set(i, i, lo);
        return a;
    }

    const double plo = lo * (1.0 + 1e-9);
    const double phi = hi * (1.0 - 1e-9);
    SpectralDecomposition sd;
    sd.eigenvalues.resize(dim);
    for (double& l : sd.eigenvalues) l = std::clamp(rng.log_uniform(plo, phi), plo, phi);
    sd.eigenvectors = haar_orthogonal(dim, rng);
    return reconstruct(sd, sd.eigenvalues);
}

// B = A^{1/2} C A^{1/2} with C = random_spd(dim, ratio); the spectrum of
// A^{-1/2} B A^{-1/2} equals C's, hence lies in ratio.
inline SymmetricMatrix random_spd_dominated(const SymmetricMatrix& a, const Interval& ratio,
                                            SplitMix64& rng) {
    SpectralDecomposition sd = decompose(a);
    if (sd.eigenvalues.empty() || sd.eigenvalues.front() <= 0.0)
        throw NotStrictlyPositive("random_spd_dominated: A must be strictly positive",
                                  sd.eigenvalues.empty() ? 0.0 : sd.eigenvalues.front());
    SymmetricMatrix c = random_spd(a.dim(), ratio, rng);
    std::vector<double> roots(sd.dim());
    for (std::size_t i = 0; i < sd.dim(); ++i) roots[i] = std::sqrt(sd.eigenvalues[i]);
    SymmetricMatrix half = reconstruct(sd, roots);
    return congruence(half.matrix(), c);
}

}  // namespace opent
