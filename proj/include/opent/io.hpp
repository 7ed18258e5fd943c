#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opent/errors.hpp"
#include "opent/matrix.hpp"
#include "opent/probe.hpp"
#include "opent/spectral.hpp"

namespace opent {

using ordered_json = nlohmann::ordered_json;

// Matrix JSON: {"dim": d, "rows": [[r11,...],[...]]}. The "matrix" key (as
// emitted by the compute command) is accepted in place of "rows", and "dim"
// may be omitted. Input is rejected when max |M - M^T| exceeds
// 1e-9 * max(1, ||M||_2), then symmetrized via (M + M^T)/2.
inline SymmetricMatrix matrix_from_json(const ordered_json& j) {
    if (!j.is_object()) throw ParseError("matrix JSON: expected an object");
    const ordered_json* rows = nullptr;
    if (j.contains("rows"))
        rows = &j.at("rows");
    else if (j.contains("matrix"))
        rows = &j.at("matrix");
    else
        throw ParseError("matrix JSON: missing 'rows'");
    if (!rows->is_array() || rows->empty())
        throw ParseError("matrix JSON: 'rows' must be a nonempty array of rows");

    const std::size_t d = rows->size();
    if (j.contains("dim")) {
        const ordered_json& dim = j.at("dim");
        if (!dim.is_number_integer() || dim.get<long long>() != static_cast<long long>(d))
            throw ParseError("matrix JSON: 'dim' disagrees with the row count");
    }

    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const ordered_json& row = (*rows)[i];
        if (!row.is_array() || row.size() != d)
            throw ParseError("matrix JSON: row " + std::to_string(i) + " must have " +
                             std::to_string(d) + " entries");
        for (std::size_t k = 0; k < d; ++k) {
            const ordered_json& v = row[k];
            if (!v.is_number()) throw ParseError("matrix JSON: non-numeric entry");
            m(i, k) = v.get<double>();
        }
    }

    const double asym = asymmetry(m);
    const double scale = std::max(1.0, spectral_norm(symmetric_part(m)));
    if (asym > 1e-9 * scale)
        throw ParseError("matrix JSON: asymmetry " + detail::format_double(asym) +
                         " exceeds 1e-9 * max(1, ||M||_2)");
    return symmetric_part(m);
}

inline SymmetricMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("matrix file " + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

inline ordered_json rows_to_json(const SymmetricMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ordered_json matrix_to_json(const SymmetricMatrix& m) {
    ordered_json j;
    j["dim"] = m.dim();
    j["rows"] = rows_to_json(m);
    return j;
}

inline void save_matrix(const SymmetricMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << matrix_to_json(m).dump(2) << "\n";
}

inline ordered_json report_to_json(const ProbeReport& rep) {
    ordered_json j;
    j["claim"] = rep.claim;
    j["trials"] = rep.trials;
    j["violations"] = rep.violations;
    j["grazing"] = rep.grazing;
    j["endpoint_violations"] = rep.endpoint_violations;
    j["worst_margin"] = rep.worst_margin;
    j["verdict"] = to_string(rep.verdict);
    ordered_json ces = ordered_json::array();
    for (const Counterexample& ce : rep.counterexamples) {
        ordered_json jc;
        jc["trial"] = ce.trial;
        jc["c"] = ce.c;
        jc["dim"] = ce.dim;
        jc["margin"] = ce.margin;
        ordered_json mats;
        for (const auto& [name, mat] : ce.matrices) mats[name] = matrix_to_json(mat);
        jc["matrices"] = std::move(mats);
        ces.push_back(std::move(jc));
    }
    j["counterexamples"] = std::move(ces);
    return j;
}

// CSV rows print with %.17g so every double round-trips.
inline void write_scan_csv(const std::vector<ScanCell>& cells, std::ostream& os) {
    os << "alpha,beta,verdict,worst_convex_margin,worst_concave_margin\n";
    char buf[256];
    for (const ScanCell& cell : cells) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%s,%.17g,%.17g\n", cell.alpha, cell.beta,
                      to_string(cell.verdict), cell.worst_convex_margin,
                      cell.worst_concave_margin);
        os << buf;
    }
}

}  // namespace opent
