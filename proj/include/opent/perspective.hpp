#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "opent/errors.hpp"
#include "opent/matrix.hpp"
#include "opent/scalar_fn.hpp"
#include "opent/spectral.hpp"

namespace opent {

namespace detail {

// Shared tail of both perspective maps: given the decomposition of A and the
// strictly positive values hvals = h(eig(A)), computes
// h(A)^{1/2} f(h(A)^{-1/2} B h(A)^{-1/2}) h(A)^{1/2}, symmetrized.
inline SymmetricMatrix perspective_core(const ScalarFn& f, const SpectralDecomposition& sd,
                                        const std::vector<double>& hvals,
                                        const SymmetricMatrix& b) {
    const std::size_t n = sd.dim();
    std::vector<double> rt(n), irt(n);
    for (std::size_t i = 0; i < n; ++i) {
        rt[i] = std::sqrt(hvals[i]);
        irt[i] = 1.0 / rt[i];
    }
    SymmetricMatrix half = reconstruct(sd, rt);
    SymmetricMatrix inv_half = reconstruct(sd, irt);
    SymmetricMatrix inner = congruence(inv_half.matrix(), b);
    SymmetricMatrix f_inner = apply_spectral(f, inner);
    return congruence(half.matrix(), f_inner);
}

}  // namespace detail

// Pi_f(A, B) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}. A^{+-1/2} come from one
// decomposition of A, never from matrix inversion.
inline SymmetricMatrix perspective(const ScalarFn& f, const SymmetricMatrix& a,
                                   const SymmetricMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("perspective: A and B dims differ");
    SpectralDecomposition sd = decompose(a);
    if (sd.eigenvalues.empty() || sd.eigenvalues.front() <= 0.0)
        throw NotStrictlyPositive("perspective: A must be strictly positive",
                                  sd.eigenvalues.empty() ? 0.0 : sd.eigenvalues.front());
    return detail::perspective_core(f, sd, sd.eigenvalues, b);
}

inline SymmetricMatrix perspective(const ScalarFnPtr& f, const SymmetricMatrix& a,
                                   const SymmetricMatrix& b) {
    return perspective(*f, a, b);
}

// Pi_{f delta h}(A, B) = h(A)^{1/2} f(h(A)^{-1/2} B h(A)^{-1/2}) h(A)^{1/2};
// h is applied on A's eigenvalues, so h(A)^{+-1/2} share A's eigenbasis.
inline SymmetricMatrix generalized_perspective(const ScalarFn& f, const ScalarFn& h,
                                               const SymmetricMatrix& a,
                                               const SymmetricMatrix& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("generalized_perspective: A and B dims differ");
    SpectralDecomposition sd = decompose(a);
    if (sd.eigenvalues.empty() || sd.eigenvalues.front() <= 0.0)
        throw NotStrictlyPositive("generalized_perspective: A must be strictly positive",
                                  sd.eigenvalues.empty() ? 0.0 : sd.eigenvalues.front());
    std::vector<double> hvals(sd.dim());
    double hmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sd.dim(); ++i) {
        hvals[i] = h.eval(sd.eigenvalues[i]);
        hmin = std::min(hmin, hvals[i]);
    }
    if (!(hmin > 0.0))
        throw NotStrictlyPositive("generalized_perspective: h(A) must be strictly positive",
                                  hmin);
    return detail::perspective_core(f, sd, hvals, b);
}

inline SymmetricMatrix generalized_perspective(const ScalarFnPtr& f, const ScalarFnPtr& h,
                                               const SymmetricMatrix& a,
                                               const SymmetricMatrix& b) {
    return generalized_perspective(*f, *h, a, b);
}

// Hansen-Pedersen-Jensen step: requires T1^T T1 + T2^T T2 <= I (up to
// tol_rel), then compares f(T1^T X1 T1 + T2^T X2 T2) against
// T1^T f(X1) T1 + T2^T f(X2) T2 in the Loewner order.
inline LoewnerResult hpj_check(const ScalarFn& f, const SymmetricMatrix& x1,
                               const SymmetricMatrix& x2, const Matrix& t1, const Matrix& t2,
                               double tol_rel) {
    if (x1.dim() != x2.dim()) throw DimensionMismatch("hpj_check: X1 and X2 dims differ");
    if (t1.rows() != x1.dim() || t2.rows() != x2.dim())
        throw DimensionMismatch("hpj_check: T rows must match X dim");
    if (t1.cols() != t2.cols()) throw DimensionMismatch("hpj_check: T1 and T2 cols differ");

    const std::size_t m = t1.cols();
    SymmetricMatrix s = symmetric_part(t1.transpose() * t1 + t2.transpose() * t2);
    LoewnerResult contraction = loewner_leq(s, SymmetricMatrix::identity(m), tol_rel);
    if (!contraction.leq)
        throw ContractionViolation("hpj_check: T1^T T1 + T2^T T2 exceeds identity, margin = " +
                                       detail::format_double(contraction.margin),
                                   contraction.margin);

    SymmetricMatrix combined = congruence(t1, x1) + congruence(t2, x2);
    SymmetricMatrix lhs = apply_spectral(f, combined);
    SymmetricMatrix rhs = congruence(t1, apply_spectral(f, x1)) +
                          congruence(t2, apply_spectral(f, x2));
    return loewner_leq(lhs, rhs, tol_rel);
}

}  // namespace opent
