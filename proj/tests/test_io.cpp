#include <catch2/catch_amalgamated.hpp>

#include <opent/opent.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace opent;

namespace {

SymmetricMatrix sample_matrix(std::uint64_t seed, std::size_t dim) {
    SplitMix64 rng(seed);
    return random_spd(dim, Interval::closed(0.1, 10.0), rng);
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string name) : path(std::move(name)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("matrix_from_json accepts both row keys") {
    ordered_json j;
    j["rows"] = {{2.0, 0.5}, {0.5, 1.0}};
    SymmetricMatrix m = matrix_from_json(j);
    REQUIRE(m.dim() == 2);
    REQUIRE(m(0, 0) == 2.0);
    REQUIRE(m(0, 1) == 0.5);

    ordered_json k;
    k["dim"] = 2;
    k["matrix"] = {{2.0, 0.5}, {0.5, 1.0}};
    SymmetricMatrix m2 = matrix_from_json(k);
    REQUIRE((m2 - m).max_abs() == 0.0);
}

TEST_CASE("matrix_from_json rejects malformed input") {
    REQUIRE_THROWS_AS(matrix_from_json(ordered_json::array()), ParseError);
    REQUIRE_THROWS_AS(matrix_from_json(ordered_json::object()), ParseError);

    ordered_json j;
    j["rows"] = ordered_json::array();
    REQUIRE_THROWS_AS(matrix_from_json(j), ParseError);

    j["rows"] = {{1.0, 2.0}};  // 1 row of 2 entries: not square
    REQUIRE_THROWS_AS(matrix_from_json(j), ParseError);

    j["rows"] = {{1.0, 0.0}, {0.0}};  // ragged
    REQUIRE_THROWS_AS(matrix_from_json(j), ParseError);

    j["rows"] = {{1.0, 0.0}, {0.0, 2.0}};
    j["dim"] = 3;  // disagrees with the row count
    REQUIRE_THROWS_AS(matrix_from_json(j), ParseError);
    j["dim"] = 2.5;  // not an integer
    REQUIRE_THROWS_AS(matrix_from_json(j), ParseError);
    j.erase("dim");

    j["rows"] = {{1.0, "x"}, {0.0, 2.0}};
    REQUIRE_THROWS_AS(matrix_from_json(j), ParseError);
}

TEST_CASE("matrix_from_json enforces the asymmetry threshold") {
    ordered_json j;
    j["rows"] = {{1.0, 0.5}, {0.5 + 1e-8, 1.0}};
    REQUIRE_THROWS_AS(matrix_from_json(j), ParseError);

    j["rows"] = {{1.0, 0.5}, {0.5 + 1e-10, 1.0}};
    SymmetricMatrix m = matrix_from_json(j);
    const double avg = (0.5 + (0.5 + 1e-10)) / 2.0;
    REQUIRE(m(0, 1) == avg);
    REQUIRE(m(1, 0) == avg);
}

TEST_CASE("matrix JSON round-trips bit-exactly through text") {
    for (std::size_t dim : {2u, 3u, 5u}) {
        SymmetricMatrix m = sample_matrix(1234 + dim, dim);
        std::string text = matrix_to_json(m).dump();
        SymmetricMatrix back = matrix_from_json(ordered_json::parse(text));
        REQUIRE((back - m).max_abs() == 0.0);
    }
}

TEST_CASE("save_matrix and load_matrix round-trip") {
    TempFile f("io_test_roundtrip.json");
    SymmetricMatrix m = sample_matrix(99, 3);
    save_matrix(m, f.path);
    SymmetricMatrix back = load_matrix(f.path);
    REQUIRE((back - m).max_abs() == 0.0);

    // The on-disk layout is the documented schema.
    std::ifstream in(f.path);
    ordered_json j;
    in >> j;
    REQUIRE(j.contains("dim"));
    REQUIRE(j.contains("rows"));
    REQUIRE(j["dim"].get<std::size_t>() == 3);
}

TEST_CASE("load_matrix failure modes") {
    REQUIRE_THROWS_AS(load_matrix("io_test_no_such_file.json"), ParseError);

    TempFile f("io_test_bad.json");
    {
        std::ofstream out(f.path);
        out << "{ not json";
    }
    REQUIRE_THROWS_AS(load_matrix(f.path), ParseError);
}

TEST_CASE("report_to_json has the documented key order") {
    ProbeConfig cfg;
    cfg.trials = 100;
    ProbeReport rep = probe_operator_convexity(power(3.0), Direction::Convex, cfg);
    ordered_json j = report_to_json(rep);

    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    REQUIRE(keys == std::vector<std::string>{"claim", "trials", "violations", "grazing",
                                             "endpoint_violations", "worst_margin", "verdict",
                                             "counterexamples"});
    REQUIRE(j["verdict"] == "Violated");
    REQUIRE(j["trials"].get<std::size_t>() == 100);
    REQUIRE(j["violations"].get<std::size_t>() == rep.violations);
    REQUIRE(j["worst_margin"].get<double>() == rep.worst_margin);
    REQUIRE(j["counterexamples"].size() == rep.counterexamples.size());

    // Counterexample witnesses parse back bit-exactly after a text round-trip.
    ordered_json parsed = ordered_json::parse(j.dump());
    const ordered_json& jc = parsed["counterexamples"][0];
    REQUIRE(jc["margin"].get<double>() == rep.counterexamples[0].margin);
    for (const auto& [name, mat] : rep.counterexamples[0].matrices) {
        SymmetricMatrix back = matrix_from_json(jc["matrices"][name]);
        REQUIRE((back - mat).max_abs() == 0.0);
    }
}

TEST_CASE("write_scan_csv prints round-trippable rows") {
    std::vector<ScanCell> cells(2);
    cells[0].alpha = 1.5;
    cells[0].beta = 0.5;
    cells[0].verdict = RegionVerdict::ConvexConsistent;
    cells[0].worst_convex_margin = 0.1 + 0.2;  // not exactly representable as 0.3
    cells[0].worst_concave_margin = -3.141592653589793;
    cells[1].alpha = 0.5;
    cells[1].beta = 1.0;
    cells[1].verdict = RegionVerdict::ConcaveConsistent;
    cells[1].worst_convex_margin = -1.2345678901234567e-9;
    cells[1].worst_concave_margin = 0.0;

    std::ostringstream os;
    write_scan_csv(cells, os);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    REQUIRE(line == "alpha,beta,verdict,worst_convex_margin,worst_concave_margin");

    for (const ScanCell& cell : cells) {
        REQUIRE(std::getline(is, line));
        std::istringstream row(line);
        std::string a, b, v, cv, cc;
        REQUIRE(std::getline(row, a, ','));
        REQUIRE(std::getline(row, b, ','));
        REQUIRE(std::getline(row, v, ','));
        REQUIRE(std::getline(row, cv, ','));
        REQUIRE(std::getline(row, cc, ','));
        REQUIRE(std::strtod(a.c_str(), nullptr) == cell.alpha);
        REQUIRE(std::strtod(b.c_str(), nullptr) == cell.beta);
        REQUIRE(v == to_string(cell.verdict));
        REQUIRE(std::strtod(cv.c_str(), nullptr) == cell.worst_convex_margin);
        REQUIRE(std::strtod(cc.c_str(), nullptr) == cell.worst_concave_margin);
    }
    REQUIRE_FALSE(std::getline(is, line));
}
