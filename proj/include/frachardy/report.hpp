#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frachardy/certificate.hpp"
#include "frachardy/config.hpp"
#include "frachardy/domain.hpp"

namespace frachardy {

inline nlohmann::json domain_to_json(const DomainSpec& d) {
    nlohmann::json j;
    if (d.dimension == 1) {
        auto arr = nlohmann::json::array();
        for (const auto& iv : d.intervals) arr.push_back({iv.a, iv.b});
        j["intervals"] = arr;
    } else {
        j["rectangle"] = {{d.rectangle[0].a, d.rectangle[0].b},
                          {d.rectangle[1].a, d.rectangle[1].b}};
    }
    return j;
}

inline nlohmann::json bracket_to_json(const HardyBracket& b) {
    nlohmann::json j;
    j["lambda_lo"] = b.lambda_lo;
    j["lambda_hi"] = b.lambda_hi;
    j["gap"] = b.gap();
    j["n"] = b.n;
    j["h"] = b.h;
    j["s"] = b.params.s;
    j["p"] = b.params.p;
    j["domain"] = domain_to_json(b.domain);
    j["residuals"] = {{"supersolution", b.best_certificate.supersolution_residual},
                      {"picone", b.best_certificate.picone_violation}};
    j["worst_node"] = b.best_certificate.worst_node;
    j["conclusive"] = b.conclusive;
    return j;
}

inline nlohmann::json certificate_to_json(const Certificate& c, const HardyBracket& context) {
    nlohmann::json j = bracket_to_json(context);
    j["lambda_lo"] = c.lambda_lo;
    j["residuals"] = {{"supersolution", c.supersolution_residual},
                      {"picone", c.picone_violation}};
    j["worst_node"] = c.worst_node;
    j["clamped"] = c.clamped;
    return j;
}

inline nlohmann::json geometry_to_json(const GeometryReport& r) {
    nlohmann::json j;
    j["inradius"] = r.inradius;
    j["volume"] = r.volume;
    j["alpha"] = r.alpha;
    j["integral"] = r.integral_d_neg_alpha;
    j["bound_inradius"] = r.bound_inradius;
    j["bound_volume"] = r.bound_volume;
    j["omega_N"] = r.omega_N;
    return j;
}

/// Full result record: config echo plus payload plus run metadata.
struct ResultRecord {
    nlohmann::json config;
    nlohmann::json result;
    double wall_time_s = 0.0;
    std::string version = "frachardy 0.1.0";

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["config"] = config;
        j["result"] = result;
        j["wall_time_s"] = wall_time_s;
        j["version"] = version;
        return j;
    }
};

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline void emit_json(const ResultRecord& record, const std::string& path) {
    write_text_file(path, record.to_json().dump(2) + "\n");
}

inline std::string brackets_to_csv(const std::vector<HardyBracket>& rows) {
    std::ostringstream csv;
    csv << "level,n,h,lambda_lo,lambda_hi,gap,residual\n";
    csv << std::setprecision(17);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& b = rows[i];
        csv << i << ',' << b.n << ',' << b.h << ',' << b.lambda_lo << ',' << b.lambda_hi
            << ',' << b.gap() << ',' << b.best_certificate.supersolution_residual << '\n';
    }
    return csv.str();
}

inline std::string geometry_to_csv(const GeometryReport& r) {
    std::ostringstream csv;
    csv << "inradius,volume,integral,bound_inradius,bound_volume\n";
    csv << std::setprecision(17) << r.inradius << ',' << r.volume << ','
        << r.integral_d_neg_alpha << ',' << r.bound_inradius << ',' << r.bound_volume << '\n';
    return csv.str();
}

// Witness exchange format: one node per row, coordinates then value.
inline std::string witness_to_csv(const GridFunction& u) {
    std::ostringstream csv;
    const Grid& g = *u.grid;
    csv << (g.domain.dimension == 1 ? "x,value\n" : "x,y,value\n");
    csv << std::setprecision(17);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        csv << g.nodes[i][0] << ',';
        if (g.domain.dimension == 2) csv << g.nodes[i][1] << ',';
        csv << u.values[i] << '\n';
    }
    return csv.str();
}

/// Reads a witness CSV against an existing grid; node coordinates must
/// match the grid layout.
inline GridFunction witness_from_csv(const Grid& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open witness file: " + path);
    std::string line;
    std::getline(in, line);  // header
    GridFunction u(g);
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (row >= u.values.size())
            throw std::runtime_error("witness file has more rows than grid nodes: " + path);
        std::istringstream fields(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(fields, cell, ',')) vals.push_back(std::stod(cell));
        const std::size_t expect = g.domain.dimension == 1 ? 2u : 3u;
        if (vals.size() != expect)
            throw std::runtime_error("witness row has wrong arity: " + path);
        const double tol = 1e-9 * (1.0 + std::abs(g.nodes[row][0]));
        if (std::abs(vals[0] - g.nodes[row][0]) > tol ||
            (g.domain.dimension == 2 && std::abs(vals[1] - g.nodes[row][1]) > tol))
            throw std::runtime_error("witness nodes do not match the grid: " + path);
        u.values[row] = vals.back();
        ++row;
    }
    if (row != u.values.size())
        throw std::runtime_error("witness file has fewer rows than grid nodes: " + path);
    return u;
}

}  // namespace frachardy
