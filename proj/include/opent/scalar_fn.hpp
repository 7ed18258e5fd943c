#pragma once

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "opent/errors.hpp"
#include "opent/interval.hpp"

namespace opent {

namespace detail {

// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline bool is_integer(double v) {
    return std::isfinite(v) && v == std::floor(v);
}

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_finite_number(const std::string& s, const char* what) {
    const std::string t = trim(s);
    if (t.empty()) throw ParseError(std::string(what) + ": empty number");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v))
        throw ParseError(std::string(what) + ": bad number '" + t + "'");
    return v;
}

}  // namespace detail

// Scalar function with an explicit real domain. eval() is domain-checked;
// eval_unchecked() assumes t lies in domain().
class ScalarFn {
public:
    virtual ~ScalarFn() = default;

    virtual double eval_unchecked(double t) const = 0;
    virtual const Interval& domain() const = 0;
    virtual std::string spec_string() const = 0;

    double eval(double t) const {
        const Interval& d = domain();
        if (!d.contains(t))
            throw DomainViolation(spec_string() + ": t = " + detail::format_double(t) +
                                      " outside domain " + d.to_string(),
                                  t, d.lo, d.hi);
        return eval_unchecked(t);
    }
};

using ScalarFnPtr = std::shared_ptr<const ScalarFn>;

class Log final : public ScalarFn {
public:
    double eval_unchecked(double t) const override { return std::log(t); }
    const Interval& domain() const override {
        static const Interval d = Interval::positive();
        return d;
    }
    std::string spec_string() const override { return "log"; }
};

// t^p. Integer p >= 0 acts on all reals; fractional p >= 0 on [0, inf);
// any p < 0 on (0, inf).
class Power final : public ScalarFn {
public:
    explicit Power(double p) : p_(p) {
        if (!std::isfinite(p)) throw ParameterOutOfRange("Power: p must be finite");
        if (p_ < 0.0)
            domain_ = Interval::positive();
        else if (detail::is_integer(p_))
            domain_ = Interval::all();
        else
            domain_ = Interval::nonnegative();
    }

    double p() const { return p_; }
    double eval_unchecked(double t) const override { return std::pow(t, p_); }
    const Interval& domain() const override { return domain_; }
    std::string spec_string() const override { return "pow:" + detail::format_double(p_); }

private:
    double p_;
    Interval domain_;
};

// ln_lam t = (t^lam - 1)/lam, computed as expm1(lam log t)/lam. lam = 0 is
// rejected; the lam -> 0 limit is Log.
class DeformedLog final : public ScalarFn {
public:
    explicit DeformedLog(double lam) : lam_(lam) {
        if (!std::isfinite(lam) || lam == 0.0)
            throw ParameterOutOfRange("DeformedLog: lam must be finite and nonzero");
        domain_ = lam_ > 0.0 ? Interval::nonnegative() : Interval::positive();
    }

    double lam() const { return lam_; }

    double eval_unchecked(double t) const override {
        if (t == 0.0) return -1.0 / lam_;
        return std::expm1(lam_ * std::log(t)) / lam_;
    }

    const Interval& domain() const override { return domain_; }
    std::string spec_string() const override { return "dlog:" + detail::format_double(lam_); }

private:
    double lam_;
    Interval domain_;
};

// t^q log t. q = 0 evaluates exactly as log t; q > 0 extends continuously
// to t = 0 with value 0.
class PowerLog final : public ScalarFn {
public:
    explicit PowerLog(double q) : q_(q) {
        if (!std::isfinite(q)) throw ParameterOutOfRange("PowerLog: q must be finite");
        domain_ = q_ > 0.0 ? Interval::nonnegative() : Interval::positive();
    }

    double q() const { return q_; }

    double eval_unchecked(double t) const override {
        if (q_ == 0.0) return std::log(t);
        if (t == 0.0) return 0.0;
        if (q_ == 1.0) return t * std::log(t);
        return std::pow(t, q_) * std::log(t);
    }

    const Interval& domain() const override { return domain_; }
    std::string spec_string() const override { return "powlog:" + detail::format_double(q_); }

private:
    double q_;
    Interval domain_;
};

// a*t + b.
class Affine final : public ScalarFn {
public:
    Affine(double a, double b) : a_(a), b_(b) {
        if (!std::isfinite(a) || !std::isfinite(b))
            throw ParameterOutOfRange("Affine: coefficients must be finite");
    }

    double eval_unchecked(double t) const override { return a_ * t + b_; }
    const Interval& domain() const override {
        static const Interval d = Interval::all();
        return d;
    }
    std::string spec_string() const override {
        return "affine:" + detail::format_double(a_) + "," + detail::format_double(b_);
    }

private:
    double a_;
    double b_;
};

namespace detail {

// Reciprocal image of the positive part of d: {t > 0 : 1/t in d}.
inline Interval reciprocal_positive(const Interval& d) {
    double plo = d.lo;
    bool plo_open = d.lo_open;
    if (plo < 0.0 || (plo == 0.0 && !plo_open)) {
        plo = 0.0;
        plo_open = true;
    }
    Interval r;
    if (std::isinf(d.hi)) {
        r.lo = 0.0;
        r.lo_open = true;
    } else {
        r.lo = 1.0 / d.hi;
        r.lo_open = d.hi_open;
    }
    if (plo == 0.0) {
        r.hi = std::numeric_limits<double>::infinity();
        r.hi_open = true;
    } else {
        r.hi = 1.0 / plo;
        r.hi_open = plo_open;
    }
    return r;
}

}  // namespace detail

// f*(t) = t f(1/t) on the reciprocal image of f's positive domain.
class Transpose final : public ScalarFn {
public:
    explicit Transpose(ScalarFnPtr inner)
        : inner_(std::move(inner)), domain_(detail::reciprocal_positive(inner_->domain())) {}

    const ScalarFnPtr& inner() const { return inner_; }

    double eval_unchecked(double t) const override { return t * inner_->eval(1.0 / t); }
    const Interval& domain() const override { return domain_; }
    std::string spec_string() const override {
        return "transpose(" + inner_->spec_string() + ")";
    }

private:
    ScalarFnPtr inner_;
    Interval domain_;
};

// f*_h(t) = h(t) f(1/h(t)); requires h(t) > 0 wherever evaluated.
class GeneralizedTranspose final : public ScalarFn {
public:
    GeneralizedTranspose(ScalarFnPtr f, ScalarFnPtr h) : f_(std::move(f)), h_(std::move(h)) {}

    double eval_unchecked(double t) const override {
        double ht = h_->eval(t);
        if (!(ht > 0.0))
            throw NonpositiveH("generalized transpose: h(" + detail::format_double(t) +
                                   ") = " + detail::format_double(ht) + " is not positive",
                               ht);
        return ht * f_->eval(1.0 / ht);
    }

    const Interval& domain() const override { return h_->domain(); }
    std::string spec_string() const override {
        return "gtranspose(" + f_->spec_string() + ";" + h_->spec_string() + ")";
    }

private:
    ScalarFnPtr f_;
    ScalarFnPtr h_;
};

// f_eps(t) = f(t + eps), eps > 0; domain is f's domain shifted left by eps.
class Shift final : public ScalarFn {
public:
    Shift(ScalarFnPtr inner, double eps) : inner_(std::move(inner)), eps_(eps) {
        if (!(eps > 0.0) || !std::isfinite(eps))
            throw ParameterOutOfRange("Shift: eps must be positive and finite");
        const Interval& d = inner_->domain();
        domain_ = Interval(std::isinf(d.lo) ? d.lo : d.lo - eps_,
                           std::isinf(d.hi) ? d.hi : d.hi - eps_, d.lo_open, d.hi_open);
    }

    double eps() const { return eps_; }

    double eval_unchecked(double t) const override { return inner_->eval(t + eps_); }
    const Interval& domain() const override { return domain_; }
    std::string spec_string() const override {
        return "shift:" + detail::format_double(eps_) + "(" + inner_->spec_string() + ")";
    }

private:
    ScalarFnPtr inner_;
    double eps_;
    Interval domain_;
};

inline ScalarFnPtr log_fn() { return std::make_shared<Log>(); }
inline ScalarFnPtr power(double p) { return std::make_shared<Power>(p); }
inline ScalarFnPtr deformed_log(double lam) { return std::make_shared<DeformedLog>(lam); }
inline ScalarFnPtr power_log(double q) { return std::make_shared<PowerLog>(q); }
inline ScalarFnPtr affine(double a, double b) { return std::make_shared<Affine>(a, b); }
inline ScalarFnPtr transpose(ScalarFnPtr f) { return std::make_shared<Transpose>(std::move(f)); }
inline ScalarFnPtr generalized_transpose(ScalarFnPtr f, ScalarFnPtr h) {
    return std::make_shared<GeneralizedTranspose>(std::move(f), std::move(h));
}
inline ScalarFnPtr shift(ScalarFnPtr f, double eps) {
    return std::make_shared<Shift>(std::move(f), eps);
}

enum class Expectation { OperatorConvex, OperatorConcave };

struct ConvexityClaim {
    ScalarFnPtr fn;
    std::string parameter_region;
    Expectation expectation;
    Interval domain;
};

// Function spec grammar: "log" | "pow:p" | "dlog:lam" | "powlog:q"
// | "transpose(<spec>)" | "shift:<eps>(<spec>)".
// Rejects both syntactic and semantic failures as ParseError: a spec string
// naming an invalid parameter (dlog:0, shift:-1(...)) is a malformed spec.
inline ScalarFnPtr parse_scalar_fn(const std::string& spec) {
    const std::string s = detail::trim(spec);
    try {
        if (s == "log") return log_fn();
        if (s.rfind("pow:", 0) == 0)
            return power(detail::parse_finite_number(s.substr(4), "pow"));
        if (s.rfind("dlog:", 0) == 0)
            return deformed_log(detail::parse_finite_number(s.substr(5), "dlog"));
        if (s.rfind("powlog:", 0) == 0)
            return power_log(detail::parse_finite_number(s.substr(7), "powlog"));
        if (s.rfind("transpose(", 0) == 0) {
            if (s.back() != ')') throw ParseError("transpose: missing closing ')': " + s);
            return transpose(parse_scalar_fn(s.substr(10, s.size() - 11)));
        }
        if (s.rfind("shift:", 0) == 0) {
            std::size_t open = s.find('(');
            if (open == std::string::npos || s.back() != ')')
                throw ParseError("shift: expected 'shift:<eps>(<spec>)': " + s);
            double eps = detail::parse_finite_number(s.substr(6, open - 6), "shift eps");
            return shift(parse_scalar_fn(s.substr(open + 1, s.size() - open - 2)), eps);
        }
    } catch (const ParameterOutOfRange& e) {
        throw ParseError(s + ": " + e.what());
    }
    throw ParseError("unrecognized function spec: '" + s + "'");
}

inline double default_second_derivative_step(double t) {
    return std::max(1e-4, 1e-4 * t);
}

// Central difference (f(t+h) - 2 f(t) + f(t-h)) / h^2.
inline double second_derivative(const ScalarFn& f, double t, double step) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw ParameterOutOfRange("second_derivative: step must be positive and finite");
    const Interval& d = f.domain();
    if (!d.contains(t - step) || !d.contains(t + step) || !d.contains(t))
        throw DomainViolation("second_derivative: [t-step, t+step] not contained in domain " +
                                  d.to_string(),
                              t, d.lo, d.hi);
    return (f.eval_unchecked(t + step) - 2.0 * f.eval_unchecked(t) + f.eval_unchecked(t - step)) /
           (step * step);
}

inline double second_derivative(const ScalarFn& f, double t) {
    return second_derivative(f, t, default_second_derivative_step(t));
}

// Upper endpoint of J_q = [0, exp((2q-1)/(q(1-q)))].
inline double jq_upper(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw ParameterOutOfRange("jq_upper: q must lie in (0,1), got " +
                                  detail::format_double(q));
    return std::exp((2.0 * q - 1.0) / (q * (1.0 - q)));
}

// Root of d^2/dt^2 [t^q f(t)] in `search`, located by a sign-change scan on a
// 256-point log grid and refined by bisection to absolute precision 1e-8.
inline double iq_boundary(const ScalarFn& f, double q, const Interval& search) {
    if (!(q > 0.0 && q < 1.0))
        throw ParameterOutOfRange("iq_boundary: q must lie in (0,1), got " +
                                  detail::format_double(q));
    if (!(search.lo > 0.0) || !(search.hi > search.lo) || !std::isfinite(search.hi))
        throw ParameterOutOfRange("iq_boundary: search interval must satisfy 0 < lo < hi < inf");

    auto kpp = [&](double t) {
        double step = std::min(default_second_derivative_step(t), 0.5 * t);
        auto k = [&](double u) { return std::pow(u, q) * f.eval(u); };
        return (k(t + step) - 2.0 * k(t) + k(t - step)) / (step * step);
    };

    constexpr int kGridPoints = 256;
    const double llo = std::log(search.lo);
    const double lhi = std::log(search.hi);
    std::vector<double> ts(kGridPoints), vs(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        ts[i] = std::exp(llo + (lhi - llo) * i / (kGridPoints - 1));
        vs[i] = kpp(ts[i]);
    }

    int changes = 0;
    int bracket = -1;
    for (int i = 0; i + 1 < kGridPoints; ++i) {
        if (vs[i] == 0.0) return ts[i];
        if (vs[i] * vs[i + 1] < 0.0) {
            ++changes;
            bracket = i;
        }
    }
    if (vs[kGridPoints - 1] == 0.0) return ts[kGridPoints - 1];
    if (changes == 0)
        throw NoSignChange("iq_boundary: k'' has no sign change in " + search.to_string());
    if (changes > 1)
        throw MultipleSignChanges("iq_boundary: k'' changes sign " + std::to_string(changes) +
                                  " times in " + search.to_string());

    double a = ts[bracket], b = ts[bracket + 1];
    double va = vs[bracket];
    while (b - a > 1e-8) {
        double m = 0.5 * (a + b);
        double vm = kpp(m);
        if (vm == 0.0) return m;
        if ((vm > 0.0) == (va > 0.0)) {
            a = m;
            va = vm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace opent
