#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lodisq/bounds.hpp"
#include "lodisq/pointset.hpp"
#include "lodisq/sphere.hpp"

namespace lodisq {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits round-trips any double
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline void write_points_csv(std::ostream& os, const PointSet& ps, bool header = false) {
    if (header) {
        for (int j = 0; j < ps.dim; ++j) os << (j ? ",x" : "x") << j;
        os << "\n";
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (int j = 0; j < ps.dim; ++j) {
            if (j) os << ',';
            os << format_double(ps.at(i, j));
        }
        os << "\n";
    }
}

inline void write_points_csv(std::ostream& os, const std::vector<Vec3>& pts, bool header = false) {
    if (header) os << "x,y,z\n";
    for (const auto& p : pts)
        os << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z) << "\n";
}

template <class T>
inline void write_csv_file(const std::string& path, const T& pts, bool header = false) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_points_csv(os, pts, header);
    if (!os.good()) throw IoError("write failed: " + path);
}

// Rows of comma-separated doubles; a leading non-numeric row is treated as a
// header and skipped.
inline std::vector<std::vector<double>> read_csv(std::istream& is) {
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        bool bad = false;
        while (std::getline(ss, field, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(field, &used));
                if (used == 0) bad = true;
            } catch (const std::exception&) {
                bad = true;
                break;
            }
        }
        if (bad) {
            if (first) {
                first = false;
                continue;  // header row
            }
            throw IoError("malformed CSV row: " + line);
        }
        if (!rows.empty() && row.size() != rows.back().size())
            throw IoError("ragged CSV: row width changed");
        rows.push_back(std::move(row));
        first = false;
    }
    return rows;
}

inline std::vector<std::vector<double>> read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open for reading: " + path);
    return read_csv(is);
}

// ---------------------------------------------------------------------------
// JSON reports
// ---------------------------------------------------------------------------

// Exact representation: one [numerator, depth] pair per coordinate.
inline nlohmann::json exact_points_json(const PointSet& ps) {
    if (!ps.exact) throw std::invalid_argument("exact_points_json: point set has no exact representation");
    nlohmann::json j;
    j["schema_version"] = 1;
    j["b"] = ps.base;
    j["d"] = ps.dim;
    j["n"] = ps.size();
    nlohmann::json pts = nlohmann::json::array();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const LatticePoint p = ps.lattice_point(i);
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : p.coords) row.push_back({c.num, c.depth});
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    return j;
}

inline nlohmann::json to_json(const HTable& t) {
    nlohmann::json j;
    j["schema_version"] = 1;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [m, e] : t.entries) {
        entries.push_back({{"m", m},
                           {"value", e.value},
                           {"provenance", to_string(e.provenance)},
                           {"depth_n", e.depth_n}});
    }
    j["entries"] = std::move(entries);
    return j;
}

inline HTable htable_from_json(const nlohmann::json& j) {
    HTable t;
    for (const auto& e : j.at("entries")) {
        HProvenance prov = HProvenance::supplied;
        const std::string p = e.at("provenance").get<std::string>();
        if (p == "closed-form") prov = HProvenance::closed_form;
        else if (p == "fitted") prov = HProvenance::fitted;
        else if (p != "supplied") throw IoError("htable_from_json: unknown provenance tag '" + p + "'");
        t.set(e.at("m").get<int>(), e.at("value").get<double>(), prov, e.at("depth_n").get<int>());
    }
    return t;
}

inline nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["N"] = r.N;
    j["b"] = r.expansion.base_b;
    j["d"] = r.expansion.dim_d;
    j["digits"] = r.expansion.digits;
    j["digit_sum"] = digit_sum(r.expansion);
    j["bound_eq1"] = r.bound_eq1;
    j["bound_eq2"] = r.bound_eq2;
    j["best"] = r.best;
    j["f"] = r.f.sup ? nlohmann::json("sup") : nlohmann::json(r.f.p);
    j["h_provenance"] = r.h_provenance;
    return j;
}

inline nlohmann::json to_json(const CapDiscrepancyReport& r, bool per_center = true) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["n_points"] = r.n_points;
    j["estimate_scaled"] = r.max_value;  // N * D_inf
    j["estimate"] = r.max_value / static_cast<double>(r.n_points);
    j["argmax_t"] = r.argmax_t;
    if (per_center) {
        nlohmann::json centers = nlohmann::json::array();
        static const char* kinds[] = {"point", "antipode", "random"};
        for (const auto& c : r.per_center)
            centers.push_back({{"kind", kinds[c.kind]},
                               {"index", c.index},
                               {"argmax_t", c.argmax_t},
                               {"value", c.value}});
        j["centers"] = std::move(centers);
    }
    return j;
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << j.dump(2) << "\n";
    if (!os.good()) throw IoError("write failed: " + path);
}

}  // namespace lodisq
