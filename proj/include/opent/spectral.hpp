#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "opent/errors.hpp"
#include "opent/matrix.hpp"
#include "opent/scalar_fn.hpp"

namespace opent {

// Eigenvalues ascending; eigenvectors has unit eigenvector columns, column i
// paired with eigenvalues[i], sign fixed so each column's largest-magnitude
// entry is positive.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;

    std::size_t dim() const { return eigenvalues.size(); }
};

// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm falls to
// 1e-12 * ||A||_F. Deterministic: rotation order, sort, and sign fix involve
// no randomness or environment-dependent branching.
inline SpectralDecomposition decompose(const SymmetricMatrix& a) {
    const std::size_t n = a.dim();
    Matrix m = a.matrix();
    Matrix v = Matrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += m(i, j) * m(i, j);
        return std::sqrt(2.0 * s);
    };

    const double threshold = 1e-12 * a.frobenius_norm();
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mpq = m(p, q);
                if (mpq == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * mpq);
                double t;
                if (std::isinf(theta * theta))
                    t = 1.0 / (2.0 * theta);
                else
                    t = (theta >= 0.0 ? 1.0 : -1.0) /
                        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                m(p, p) -= t * mpq;
                m(q, q) += t * mpq;
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double g = m(k, p);
                    const double h = m(k, q);
                    m(k, p) = g - s * (h + tau * g);
                    m(p, k) = m(k, p);
                    m(k, q) = h + s * (g - tau * h);
                    m(q, k) = m(k, q);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double g = v(k, p);
                    const double h = v(k, q);
                    v(k, p) = g - s * (h + tau * g);
                    v(k, q) = h + s * (g - tau * h);
                }
            }
        }
    }

    SpectralDecomposition sd;
    sd.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) sd.eigenvalues[i] = m(i, i);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return sd.eigenvalues[i] < sd.eigenvalues[j];
    });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.eigenvalues[j] = sd.eigenvalues[src];
        std::size_t imax = 0;
        double vmax = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double av = std::abs(v(i, src));
            if (av > vmax) {
                vmax = av;
                imax = i;
            }
        }
        const double sign = v(imax, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = sign * v(i, src);
    }
    return out;
}

// Q diag(vals) Q^T; upper triangle computed once and mirrored.
inline SymmetricMatrix reconstruct(const SpectralDecomposition& sd,
                                   const std::vector<double>& vals) {
    const std::size_t n = sd.dim();
    if (vals.size() != n) throw DimensionMismatch("reconstruct: value count differs from dim");
    const Matrix& q = sd.eigenvectors;
    SymmetricMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += q(i, k) * vals[k] * q(j, k);
            r.set(i, j, s);
        }
    return r;
}

// f(A) = Q f(Lambda) Q^T. Every eigenvalue must lie in f's domain.
inline SymmetricMatrix apply_spectral(const ScalarFn& f, const SymmetricMatrix& a) {
    SpectralDecomposition sd = decompose(a);
    std::vector<double> vals(sd.dim());
    for (std::size_t i = 0; i < sd.dim(); ++i) vals[i] = f.eval(sd.eigenvalues[i]);
    return reconstruct(sd, vals);
}

inline SymmetricMatrix apply_spectral(const ScalarFnPtr& f, const SymmetricMatrix& a) {
    return apply_spectral(*f, a);
}

inline double min_eigenvalue(const SymmetricMatrix& a) {
    if (a.dim() == 0) throw DimensionMismatch("min_eigenvalue: empty matrix");
    return decompose(a).eigenvalues.front();
}

inline double spectral_norm(const SymmetricMatrix& a) {
    if (a.dim() == 0) return 0.0;
    SpectralDecomposition sd = decompose(a);
    return std::max(std::abs(sd.eigenvalues.front()), std::abs(sd.eigenvalues.back()));
}

// Loewner comparison A <= B. margin = lambda_min(B - A); the test passes when
// margin >= -tol_rel * scale with scale = max(1, ||A||_2, ||B||_2).
struct LoewnerResult {
    bool leq = false;
    double margin = 0.0;
    double scale = 1.0;

    double normalized() const { return margin / scale; }
};

inline LoewnerResult loewner_leq(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                 double tol_rel) {
    if (a.dim() != b.dim()) throw DimensionMismatch("loewner_leq: dimensions differ");
    if (!(tol_rel >= 0.0)) throw ParameterOutOfRange("loewner_leq: tol_rel must be >= 0");
    LoewnerResult r;
    r.margin = min_eigenvalue(b - a);
    r.scale = std::max({1.0, spectral_norm(a), spectral_norm(b)});
    r.leq = r.margin >= -tol_rel * r.scale;
    return r;
}

}  // namespace opent
