#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "modspace/calculus.hpp"
#include "modspace/harness.hpp"
#include "modspace/modnorm.hpp"

namespace modspace {

using json = nlohmann::ordered_json;

inline json to_json(const SpaceParams& p) {
    return json{{"s", p.s.str()}, {"p", p.p.str()}, {"q", p.q.str()}, {"n", p.dim}};
}

inline json to_json(const Verdict& v) {
    json rules = json::array();
    for (const auto& r : v.rules) rules.push_back({{"id", r.id}, {"statement", r.statement}});
    return json{{"status", status_name(v.status)}, {"rules", rules}};
}

inline json to_json(const NormReport& r, bool include_contributions = false) {
    json j{{"value", r.value},
           {"params", to_json(r.params)},
           {"method", r.method},
           {"tail", r.tail},
           {"settings", r.settings}};
    if (include_contributions) {
        json c = json::array();
        for (const auto& [k, val] : r.contributions) {
            if (r.params.dim == 2) {
                c.push_back({{"k", {k[0], k[1]}}, {"value", val}});
            } else {
                c.push_back({{"k", {k[0]}}, {"value", val}});
            }
        }
        j["contributions"] = std::move(c);
    }
    return j;
}

inline json to_json(const SlopeFit& fit) {
    return json{{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"residual", fit.residual},
                {"conclusive", fit.conclusive},
                {"points", fit.points.size()}};
}

inline json to_json(const ExperimentRecord& r) {
    return json{{"experiment", r.experiment},
                {"family", r.family},
                {"inputs", r.inputs},
                {"measured", r.measured},
                {"predicted", r.predicted},
                {"tail", r.tail}};
}

// Canonical sweep output: manifest plus records, both deterministic. Wall
// clock lives in a separate "timing" member that comparisons should strip.
inline json records_document(const json& manifest, const std::vector<ExperimentRecord>& records,
                             double total_ms) {
    json recs = json::array();
    json per_record = json::array();
    for (const auto& r : records) {
        recs.push_back(to_json(r));
        per_record.push_back(r.duration_ms);
    }
    return json{{"manifest", manifest},
                {"records", recs},
                {"timing", {{"total_ms", total_ms}, {"per_record_ms", per_record}}}};
}

// --- RFC 4180 CSV -------------------------------------------------------------

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
    std::vector<std::string> in_keys, me_keys, pr_keys;
    for (const auto& r : records) {
        for (const auto& [k, v] : r.inputs) {
            if (std::find(in_keys.begin(), in_keys.end(), k) == in_keys.end()) in_keys.push_back(k);
        }
        for (const auto& [k, v] : r.measured) {
            if (std::find(me_keys.begin(), me_keys.end(), k) == me_keys.end()) me_keys.push_back(k);
        }
        for (const auto& [k, v] : r.predicted) {
            if (std::find(pr_keys.begin(), pr_keys.end(), k) == pr_keys.end()) pr_keys.push_back(k);
        }
    }
    std::sort(in_keys.begin(), in_keys.end());
    std::sort(me_keys.begin(), me_keys.end());
    std::sort(pr_keys.begin(), pr_keys.end());

    std::ostringstream out;
    const auto fmt = [](double v) {
        std::ostringstream s;
        s.precision(17);
        s << v;
        return s.str();
    };
    out << "experiment,family";
    for (const auto& k : in_keys) out << "," << csv_escape("in:" + k);
    for (const auto& k : me_keys) out << "," << csv_escape("measured:" + k);
    for (const auto& k : pr_keys) out << "," << csv_escape("predicted:" + k);
    out << ",tail\r\n";
    for (const auto& r : records) {
        out << csv_escape(r.experiment) << "," << csv_escape(r.family);
        for (const auto& k : in_keys) {
            auto it = r.inputs.find(k);
            out << "," << (it == r.inputs.end() ? "" : fmt(it->second));
        }
        for (const auto& k : me_keys) {
            auto it = r.measured.find(k);
            out << "," << (it == r.measured.end() ? "" : fmt(it->second));
        }
        for (const auto& k : pr_keys) {
            auto it = r.predicted.find(k);
            out << "," << (it == r.predicted.end() ? "" : fmt(it->second));
        }
        out << "," << fmt(r.tail) << "\r\n";
    }
    return out.str();
}

// --- sample tables --------------------------------------------------------------
//
// A sample file is one JSON header line {"n":..,"M":..,"N":..,"encoding":..}
// followed by the N^n samples in row-major order: "re im" per line for
// encoding "text", raw interleaved little-endian float64 for "binary64".

inline void write_samples(const std::string& path, const SampledFunction& f,
                          const std::string& encoding = "text") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    json header{{"n", f.grid.dim},
                {"M", f.grid.period_mul},
                {"N", f.grid.samples},
                {"encoding", encoding}};
    out << header.dump() << "\n";
    if (encoding == "text") {
        out.precision(17);
        for (const cplx& v : f.values) out << v.real() << " " << v.imag() << "\n";
    } else if (encoding == "binary64") {
        for (const cplx& v : f.values) {
            const double re = v.real(), im = v.imag();
            out.write(reinterpret_cast<const char*>(&re), sizeof(double));
            out.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
    } else {
        throw std::invalid_argument("unknown sample encoding: " + encoding);
    }
}

inline SampledFunction read_samples(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string header_line;
    if (!std::getline(in, header_line)) throw std::runtime_error("missing sample header: " + path);
    const json header = json::parse(header_line);
    const GridSpec grid(header.at("n").get<int>(), header.at("M").get<int>(),
                        header.at("N").get<int>());
    const std::string encoding = header.value("encoding", "text");
    SampledFunction f(grid);
    if (encoding == "text") {
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            double re, im;
            if (!(in >> re >> im)) throw std::runtime_error("short sample table: " + path);
            f.values[i] = cplx{re, im};
        }
    } else if (encoding == "binary64") {
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            double re, im;
            in.read(reinterpret_cast<char*>(&re), sizeof(double));
            in.read(reinterpret_cast<char*>(&im), sizeof(double));
            if (!in) throw std::runtime_error("short sample table: " + path);
            f.values[i] = cplx{re, im};
        }
    } else {
        throw std::invalid_argument("unknown sample encoding: " + encoding);
    }
    for (const cplx& v : f.values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::runtime_error("non-finite sample in " + path);
        }
    }
    return f;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

}  // namespace modspace
