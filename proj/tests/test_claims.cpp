#include <catch2/catch_amalgamated.hpp>

#include <opent/opent.hpp>

#include <set>
#include <sstream>
#include <string>

using namespace opent;

TEST_CASE("claim registry is complete and unique") {
    const auto& claims = registered_claims();
    REQUIRE(claims.size() == 34);

    std::set<std::string> ids;
    std::size_t scalar = 0, joint = 0, confined = 0;
    for (const Claim& c : claims) {
        ids.insert(c.id);
        switch (c.kind) {
            case Claim::Kind::Scalar: ++scalar; break;
            case Claim::Kind::Joint: ++joint; break;
            case Claim::Kind::Confined: ++confined; break;
        }
    }
    REQUIRE(ids.size() == claims.size());
    REQUIRE(scalar == 8);
    REQUIRE(joint == 17);
    REQUIRE(confined == 9);

    for (const char* id : {"thm2.6-fujii:S:concave", "thm2.2:Tab:1.5,0.5:convex",
                           "thm2.3:T:0.5:concave", "cor3.8:Sq:0.5:convex",
                           "lem2.1:dlog:1.5:opconvex", "thm3.2:transpose(log):opconcave",
                           "thm3.9:Sab:0.25,0.5:convex"})
        REQUIRE(ids.count(id) == 1);
}

TEST_CASE("find_claim resolves registered ids") {
    Claim s = find_claim("thm2.6-fujii:S:concave");
    REQUIRE(s.kind == Claim::Kind::Joint);
    REQUIRE(s.direction == Direction::Concave);

    Claim dl = find_claim("lem2.1:dlog:1.5:opconvex");
    REQUIRE(dl.kind == Claim::Kind::Scalar);
    REQUIRE(dl.fn->spec_string() == "dlog:1.5");

    Claim sq = find_claim("cor3.8:Sq:0.25:convex");
    REQUIRE(sq.kind == Claim::Kind::Confined);
    REQUIRE(sq.alpha == 0.25);
    REQUIRE(sq.beta == 1.0);
    REQUIRE(sq.config.dim == 2);
    const double u = jq_upper(0.25);
    REQUIRE(sq.config.spectrum.lo == Catch::Approx(0.05 * u));
    REQUIRE(sq.config.spectrum.hi == Catch::Approx(0.9 * u));
    REQUIRE(sq.config.ratio.lo == sq.config.spectrum.lo);
    REQUIRE(sq.config.ratio.hi == sq.config.spectrum.hi);

    Claim sab = find_claim("thm3.9:Sab:0.5,0.5:convex");
    REQUIRE(sab.kind == Claim::Kind::Confined);
    REQUIRE(sab.alpha == 0.5);
    REQUIRE(sab.beta == 0.5);
}

TEST_CASE("adhoc claim ids parse with a last-colon split") {
    Claim p = find_claim("adhoc:pow:3:opconvex");
    REQUIRE(p.kind == Claim::Kind::Scalar);
    REQUIRE(p.direction == Direction::Convex);
    REQUIRE(p.fn->spec_string() == "pow:3");

    Claim t = find_claim("adhoc:Tab:1.5,0.5:concave");
    REQUIRE(t.kind == Claim::Kind::Joint);
    REQUIRE(t.direction == Direction::Concave);
    REQUIRE(t.map.name == EntropySpec::tsallis_alpha_beta(1.5, 0.5).spec_string());

    Claim sh = find_claim("adhoc:shift:0.1(log):opconvex");
    REQUIRE(sh.kind == Claim::Kind::Scalar);
    REQUIRE(sh.fn->spec_string() == "shift:0.1(log)");
}

TEST_CASE("claim lookup failure modes") {
    REQUIRE_THROWS_AS(find_claim("nope:foo"), ParseError);
    REQUIRE_THROWS_AS(find_claim(""), ParseError);
    REQUIRE_THROWS_AS(find_claim("adhoc:pow:3:sideways"), ParseError);
    REQUIRE_THROWS_AS(find_claim("adhoc:pow:3"), ParseError);
    REQUIRE_THROWS_AS(parse_adhoc_claim("thm2.6-fujii:S:concave"), ParseError);
    REQUIRE_THROWS_AS(find_claim("adhoc:nosuchfn:1:opconvex"), ParseError);
}

TEST_CASE("Claim::run dispatches on kind and honors the config") {
    ProbeConfig cfg;
    cfg.trials = 100;

    ProbeReport neg = find_claim("adhoc:pow:3:opconvex").run(cfg);
    REQUIRE(neg.claim == "adhoc:pow:3:opconvex");
    REQUIRE(neg.trials == 100);
    REQUIRE(neg.verdict == Verdict::Violated);
    REQUIRE_FALSE(neg.counterexamples.empty());

    ProbeReport affine = find_claim("thm2.3:T:1:concave").run(cfg);
    REQUIRE(affine.verdict == Verdict::Consistent);

    Claim sq = find_claim("cor3.8:Sq:0.75:convex");
    ProbeConfig confined = sq.config;
    confined.trials = 50;
    ProbeReport rep = sq.run(confined);
    REQUIRE(rep.claim == "cor3.8:Sq:0.75:convex");
    REQUIRE(rep.trials == 50);
}

TEST_CASE("run_selftest reports one line per claim plus the negative control") {
    std::ostringstream os;
    const bool ok = run_selftest(os, 100);

    std::istringstream is(os.str());
    std::string line;
    std::size_t lines = 0, fails = 0;
    bool negative_ok = false;
    while (std::getline(is, line)) {
        ++lines;
        const bool is_ok = line.rfind("ok   ", 0) == 0;
        const bool is_fail = line.rfind("FAIL ", 0) == 0;
        REQUIRE((is_ok || is_fail));
        fails += is_fail ? 1 : 0;
        if (line.find("negative-control:adhoc:pow:3:opconvex") != std::string::npos)
            negative_ok = is_ok;
    }
    REQUIRE(lines == registered_claims().size() + 1);
    REQUIRE(negative_ok);
    REQUIRE(ok == (fails == 0));
}
