#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "opent/entropy.hpp"
#include "opent/errors.hpp"
#include "opent/probe.hpp"
#include "opent/scalar_fn.hpp"

namespace opent {

// A probeable claim with a stable string id. The id doubles as the report's
// claim description, so documentation, CLI, and tests share one registry.
struct Claim {
    enum class Kind { Scalar, Joint, Confined };

    std::string id;
    Kind kind = Kind::Joint;
    Direction direction = Direction::Convex;
    ScalarFnPtr fn;      // Kind::Scalar
    JointMap map;        // Kind::Joint
    double alpha = 0.0;  // Kind::Confined
    double beta = 1.0;   // Kind::Confined
    ProbeConfig config;  // claim-specific sampling defaults

    ProbeReport run(const ProbeConfig& cfg) const {
        switch (kind) {
            case Kind::Scalar: return probe_operator_convexity(fn, direction, cfg, id);
            case Kind::Joint: return probe_joint(map, direction, cfg, id);
            case Kind::Confined: return probe_sq_with_domain(alpha, beta, cfg, id);
        }
        throw Error("Claim: invalid kind");
    }
};

namespace detail {

// Confined probes sample both sides from [0.05 U, 0.9 U], U = jq_upper, at
// dim 2; probe_sq_with_domain then applies its own 10% boundary padding.
inline ProbeConfig confined_config(double alpha) {
    const double u = jq_upper(alpha);
    ProbeConfig cfg;
    cfg.dim = 2;
    cfg.spectrum = Interval::closed(0.05 * u, 0.9 * u);
    cfg.ratio = cfg.spectrum;
    return cfg;
}

}  // namespace detail

inline const std::vector<Claim>& registered_claims() {
    static const std::vector<Claim> claims = [] {
        std::vector<Claim> v;
        const ProbeConfig std_cfg;

        {
            Claim c;
            c.id = "thm2.6-fujii:S:concave";
            c.kind = Claim::Kind::Joint;
            c.direction = Direction::Concave;
            c.map = joint_map(EntropySpec::relative());
            c.config = std_cfg;
            v.push_back(std::move(c));
        }

        for (double a : {1.0, 1.5, 2.0}) {
            for (double b : {0.0, 0.5, 1.0}) {
                Claim c;
                c.id = "thm2.2:Tab:" + detail::format_double(a) + "," +
                       detail::format_double(b) + ":convex";
                c.kind = Claim::Kind::Joint;
                c.direction = Direction::Convex;
                c.map = joint_map(EntropySpec::tsallis_alpha_beta(a, b));
                c.config = std_cfg;
                v.push_back(std::move(c));
            }
        }

        for (double l : {1.0, 1.5, 2.0}) {
            Claim c;
            c.id = "thm2.3:T:" + detail::format_double(l) + ":convex";
            c.kind = Claim::Kind::Joint;
            c.direction = Direction::Convex;
            c.map = joint_map(EntropySpec::tsallis(l));
            c.config = std_cfg;
            v.push_back(std::move(c));
        }
        for (double l : {-1.0, -0.5, 0.5, 1.0}) {
            Claim c;
            c.id = "thm2.3:T:" + detail::format_double(l) + ":concave";
            c.kind = Claim::Kind::Joint;
            c.direction = Direction::Concave;
            c.map = joint_map(EntropySpec::tsallis(l));
            c.config = std_cfg;
            v.push_back(std::move(c));
        }

        for (double l : {1.0, 1.5, 2.0}) {
            Claim c;
            c.id = "lem2.1:dlog:" + detail::format_double(l) + ":opconvex";
            c.kind = Claim::Kind::Scalar;
            c.direction = Direction::Convex;
            c.fn = deformed_log(l);
            c.config = std_cfg;
            v.push_back(std::move(c));
        }
        for (double l : {-1.0, -0.5, 0.5, 1.0}) {
            Claim c;
            c.id = "lem2.1:dlog:" + detail::format_double(l) + ":opconcave";
            c.kind = Claim::Kind::Scalar;
            c.direction = Direction::Concave;
            c.fn = deformed_log(l);
            c.config = std_cfg;
            v.push_back(std::move(c));
        }

        {
            Claim c;
            c.id = "thm3.2:transpose(log):opconcave";
            c.kind = Claim::Kind::Scalar;
            c.direction = Direction::Concave;
            c.fn = transpose(log_fn());
            c.config = std_cfg;
            v.push_back(std::move(c));
        }

        for (double q : {0.25, 0.5, 0.75}) {
            Claim c;
            c.id = "cor3.8:Sq:" + detail::format_double(q) + ":convex";
            c.kind = Claim::Kind::Confined;
            c.alpha = q;
            c.beta = 1.0;
            c.config = detail::confined_config(q);
            v.push_back(std::move(c));
        }

        for (double a : {0.25, 0.5, 0.75}) {
            for (double b : {0.5, 1.0}) {
                Claim c;
                c.id = "thm3.9:Sab:" + detail::format_double(a) + "," +
                       detail::format_double(b) + ":convex";
                c.kind = Claim::Kind::Confined;
                c.alpha = a;
                c.beta = b;
                c.config = detail::confined_config(a);
                v.push_back(std::move(c));
            }
        }

        return v;
    }();
    return claims;
}

// "adhoc:<spec>:<direction>". direction (after the last colon) is one of
// opconvex/opconcave (spec is a function spec) or convex/concave (spec is an
// entropy spec).
inline Claim parse_adhoc_claim(const std::string& id) {
    if (id.rfind("adhoc:", 0) != 0) throw ParseError("not an adhoc claim id: '" + id + "'");
    const std::size_t last = id.rfind(':');
    if (last == std::string::npos || last <= 6)
        throw ParseError("adhoc claim: expected 'adhoc:<spec>:<direction>'");
    const std::string middle = id.substr(6, last - 6);
    const std::string dir = id.substr(last + 1);

    Claim c;
    c.id = id;
    c.config = ProbeConfig{};
    if (dir == "opconvex" || dir == "opconcave") {
        c.kind = Claim::Kind::Scalar;
        c.direction = dir == "opconvex" ? Direction::Convex : Direction::Concave;
        c.fn = parse_scalar_fn(middle);
    } else if (dir == "convex" || dir == "concave") {
        c.kind = Claim::Kind::Joint;
        c.direction = dir == "convex" ? Direction::Convex : Direction::Concave;
        c.map = joint_map(parse_entropy_spec(middle));
    } else {
        throw ParseError("adhoc claim: unknown direction '" + dir + "'");
    }
    return c;
}

inline Claim find_claim(const std::string& id) {
    for (const Claim& c : registered_claims())
        if (c.id == id) return c;
    if (id.rfind("adhoc:", 0) == 0) return parse_adhoc_claim(id);
    throw ParseError("unknown claim id: '" + id + "'");
}

// Every registered claim at reduced trials must come back Consistent, and
// the t^3 negative control must come back Violated with a counterexample.
inline bool run_selftest(std::ostream& os, std::size_t trials = 100) {
    bool ok = true;
    for (const Claim& claim : registered_claims()) {
        ProbeConfig cfg = claim.config;
        cfg.trials = trials;
        ProbeReport rep = claim.run(cfg);
        const bool pass = rep.verdict == Verdict::Consistent;
        ok = ok && pass;
        os << (pass ? "ok   " : "FAIL ") << claim.id << "  worst_margin=" << rep.worst_margin
           << "\n";
    }
    {
        Claim neg = find_claim("adhoc:pow:3:opconvex");
        ProbeConfig cfg = neg.config;
        cfg.trials = trials;
        ProbeReport rep = neg.run(cfg);
        const bool pass = rep.verdict == Verdict::Violated && !rep.counterexamples.empty();
        ok = ok && pass;
        os << (pass ? "ok   " : "FAIL ") << "negative-control:" << neg.id
           << "  violations=" << rep.violations << "\n";
    }
    return ok;
}

}  // namespace opent
