#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "opent/errors.hpp"
#include "opent/matrix.hpp"
#include "opent/perspective.hpp"
#include "opent/scalar_fn.hpp"
#include "opent/spectral.hpp"

namespace opent {

namespace detail {

inline void require_strictly_positive(const SymmetricMatrix& m, const char* who,
                                      const char* name) {
    double lam = min_eigenvalue(m);
    if (!(lam > 0.0))
        throw NotStrictlyPositive(std::string(who) + ": " + name +
                                      " must be strictly positive, lambda_min = " +
                                      format_double(lam),
                                  lam);
}

}  // namespace detail

// S(A|B) = A^{1/2} log(A^{-1/2} B A^{-1/2}) A^{1/2}.
inline SymmetricMatrix relative_operator_entropy(const SymmetricMatrix& a,
                                                 const SymmetricMatrix& b) {
    detail::require_strictly_positive(a, "relative_operator_entropy", "A");
    detail::require_strictly_positive(b, "relative_operator_entropy", "B");
    return perspective(Log{}, a, b);
}

// S_q(A|B): perspective of t^q log t.
inline SymmetricMatrix generalized_relative_entropy(double q, const SymmetricMatrix& a,
                                                    const SymmetricMatrix& b) {
    detail::require_strictly_positive(a, "generalized_relative_entropy", "A");
    detail::require_strictly_positive(b, "generalized_relative_entropy", "B");
    return perspective(PowerLog{q}, a, b);
}

// S_{alpha,beta}(A|B): generalized perspective of t^alpha log t over t^beta.
inline SymmetricMatrix relative_alpha_beta_entropy(double alpha, double beta,
                                                   const SymmetricMatrix& a,
                                                   const SymmetricMatrix& b) {
    detail::require_strictly_positive(a, "relative_alpha_beta_entropy", "A");
    detail::require_strictly_positive(b, "relative_alpha_beta_entropy", "B");
    return generalized_perspective(PowerLog{alpha}, Power{beta}, a, b);
}

// T_lam(A|B): perspective of ln_lam; lam must be nonzero.
inline SymmetricMatrix tsallis_entropy(double lam, const SymmetricMatrix& a,
                                       const SymmetricMatrix& b) {
    detail::require_strictly_positive(a, "tsallis_entropy", "A");
    detail::require_strictly_positive(b, "tsallis_entropy", "B");
    return perspective(DeformedLog{lam}, a, b);
}

// T_{alpha,beta}(A|B): generalized perspective of ln_alpha over t^beta.
inline SymmetricMatrix tsallis_alpha_beta_entropy(double alpha, double beta,
                                                  const SymmetricMatrix& a,
                                                  const SymmetricMatrix& b) {
    detail::require_strictly_positive(a, "tsallis_alpha_beta_entropy", "A");
    detail::require_strictly_positive(b, "tsallis_alpha_beta_entropy", "B");
    return generalized_perspective(DeformedLog{alpha}, Power{beta}, a, b);
}

// -tr(rho log rho). Trace normalization is the caller's business.
inline double von_neumann_entropy(const SymmetricMatrix& rho) {
    detail::require_strictly_positive(rho, "von_neumann_entropy", "rho");
    return -apply_spectral(PowerLog{1.0}, rho).trace();
}

// H(rho||sigma) = tr(rho log rho) - tr(rho log sigma).
inline double quantum_relative_entropy(const SymmetricMatrix& rho,
                                       const SymmetricMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionMismatch("quantum_relative_entropy: dims differ");
    detail::require_strictly_positive(rho, "quantum_relative_entropy", "rho");
    detail::require_strictly_positive(sigma, "quantum_relative_entropy", "sigma");
    SymmetricMatrix log_rho = apply_spectral(Log{}, rho);
    SymmetricMatrix log_sigma = apply_spectral(Log{}, sigma);
    return trace_product(rho.matrix(), log_rho.matrix()) -
           trace_product(rho.matrix(), log_sigma.matrix());
}

struct SuperoperatorIdentity {
    double lhs = 0.0;       // <-S(L_rho | R_sigma) vec(I), vec(I)>
    double rhs = 0.0;       // H(rho || sigma)
    double residual = 0.0;  // |lhs - rhs|
};

// Checks <-S(L_rho|R_sigma) vec(I), vec(I)> == H(rho||sigma) with
// L_rho = I (x) rho and R_sigma = sigma^T (x) I under column-stacking vec.
// S(L|R) goes through the generic perspective on d^2 x d^2 matrices; no
// commutativity shortcut is taken.
inline SuperoperatorIdentity superoperator_identity_check(const SymmetricMatrix& rho,
                                                          const SymmetricMatrix& sigma) {
    const std::size_t d = rho.dim();
    if (sigma.dim() != d) throw DimensionMismatch("superoperator_identity: dims differ");
    if (d * d > 64)
        throw ParameterOutOfRange("superoperator_identity: d^2 must be <= 64");
    detail::require_strictly_positive(rho, "superoperator_identity", "rho");
    detail::require_strictly_positive(sigma, "superoperator_identity", "sigma");

    Matrix eye = Matrix::identity(d);
    SymmetricMatrix l_rho = symmetric_part(kron(eye, rho.matrix()));
    SymmetricMatrix r_sigma = symmetric_part(kron(sigma.matrix().transpose(), eye));

    SymmetricMatrix s = relative_operator_entropy(l_rho, r_sigma);
    Matrix vec_eye = vec(eye);

    SuperoperatorIdentity out;
    out.lhs = -quadratic_form(s, vec_eye);
    out.rhs = quantum_relative_entropy(rho, sigma);
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

inline double superoperator_identity_residual(const SymmetricMatrix& rho,
                                              const SymmetricMatrix& sigma) {
    return superoperator_identity_check(rho, sigma).residual;
}

enum class EntropyFamily {
    RelativeOperator,
    GeneralizedRelative,
    RelativeAlphaBeta,
    Tsallis,
    TsallisAlphaBeta,
};

// Named entropy family with its parameters. Text encoding: "S" | "Sq:q"
// | "Sab:alpha,beta" | "T:lam" | "Tab:alpha,beta".
struct EntropySpec {
    EntropyFamily family = EntropyFamily::RelativeOperator;
    double q = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double lam = 0.0;

    static EntropySpec relative() { return EntropySpec{}; }

    static EntropySpec generalized_relative(double q) {
        EntropySpec s;
        s.family = EntropyFamily::GeneralizedRelative;
        s.q = q;
        return s;
    }

    static EntropySpec relative_alpha_beta(double alpha, double beta) {
        EntropySpec s;
        s.family = EntropyFamily::RelativeAlphaBeta;
        s.alpha = alpha;
        s.beta = beta;
        return s;
    }

    static EntropySpec tsallis(double lam) {
        if (lam == 0.0 || !(lam >= -1.0 && lam <= 2.0))
            throw ParameterOutOfRange("EntropySpec: Tsallis lam must be nonzero in [-1, 2]");
        EntropySpec s;
        s.family = EntropyFamily::Tsallis;
        s.lam = lam;
        return s;
    }

    static EntropySpec tsallis_alpha_beta(double alpha, double beta) {
        if (alpha == 0.0)
            throw ParameterOutOfRange("EntropySpec: TsallisAlphaBeta alpha must be nonzero");
        EntropySpec s;
        s.family = EntropyFamily::TsallisAlphaBeta;
        s.alpha = alpha;
        s.beta = beta;
        return s;
    }

    // The pair (f, h) whose generalized perspective realizes the family.
    ScalarFnPtr f() const {
        switch (family) {
            case EntropyFamily::RelativeOperator: return log_fn();
            case EntropyFamily::GeneralizedRelative: return power_log(q);
            case EntropyFamily::RelativeAlphaBeta: return power_log(alpha);
            case EntropyFamily::Tsallis: return deformed_log(lam);
            case EntropyFamily::TsallisAlphaBeta: return deformed_log(alpha);
        }
        throw Error("EntropySpec: invalid family");
    }

    ScalarFnPtr h() const {
        switch (family) {
            case EntropyFamily::RelativeOperator:
            case EntropyFamily::GeneralizedRelative:
            case EntropyFamily::Tsallis: return power(1.0);
            case EntropyFamily::RelativeAlphaBeta:
            case EntropyFamily::TsallisAlphaBeta: return power(beta);
        }
        throw Error("EntropySpec: invalid family");
    }

    SymmetricMatrix evaluate(const SymmetricMatrix& a, const SymmetricMatrix& b) const {
        switch (family) {
            case EntropyFamily::RelativeOperator: return relative_operator_entropy(a, b);
            case EntropyFamily::GeneralizedRelative:
                return generalized_relative_entropy(q, a, b);
            case EntropyFamily::RelativeAlphaBeta:
                return relative_alpha_beta_entropy(alpha, beta, a, b);
            case EntropyFamily::Tsallis: return tsallis_entropy(lam, a, b);
            case EntropyFamily::TsallisAlphaBeta:
                return tsallis_alpha_beta_entropy(alpha, beta, a, b);
        }
        throw Error("EntropySpec: invalid family");
    }

    std::string spec_string() const {
        switch (family) {
            case EntropyFamily::RelativeOperator: return "S";
            case EntropyFamily::GeneralizedRelative: return "Sq:" + detail::format_double(q);
            case EntropyFamily::RelativeAlphaBeta:
                return "Sab:" + detail::format_double(alpha) + "," + detail::format_double(beta);
            case EntropyFamily::Tsallis: return "T:" + detail::format_double(lam);
            case EntropyFamily::TsallisAlphaBeta:
                return "Tab:" + detail::format_double(alpha) + "," + detail::format_double(beta);
        }
        throw Error("EntropySpec: invalid family");
    }
};

namespace detail {

inline std::pair<double, double> parse_number_pair(const std::string& s, const char* what) {
    std::size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw ParseError(std::string(what) + ": expected '<alpha>,<beta>', got '" + s + "'");
    return {parse_finite_number(s.substr(0, comma), what),
            parse_finite_number(s.substr(comma + 1), what)};
}

}  // namespace detail

// Semantic failures (T:0, Tab:0,1) are malformed specs and parse errors too.
inline EntropySpec parse_entropy_spec(const std::string& spec) {
    const std::string s = detail::trim(spec);
    try {
        if (s == "S") return EntropySpec::relative();
        if (s.rfind("Sq:", 0) == 0)
            return EntropySpec::generalized_relative(
                detail::parse_finite_number(s.substr(3), "Sq"));
        if (s.rfind("Sab:", 0) == 0) {
            auto [a, b] = detail::parse_number_pair(s.substr(4), "Sab");
            return EntropySpec::relative_alpha_beta(a, b);
        }
        if (s.rfind("T:", 0) == 0)
            return EntropySpec::tsallis(detail::parse_finite_number(s.substr(2), "T"));
        if (s.rfind("Tab:", 0) == 0) {
            auto [a, b] = detail::parse_number_pair(s.substr(4), "Tab");
            return EntropySpec::tsallis_alpha_beta(a, b);
        }
    } catch (const ParameterOutOfRange& e) {
        throw ParseError(s + ": " + e.what());
    }
    throw ParseError("unrecognized entropy spec: '" + s + "'");
}

}  // namespace opent
