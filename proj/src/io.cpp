// Copyright 2026 The fockpoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fockpoint/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fockpoint/errors.hpp"

namespace fockpoint {

namespace {

Complex complex_from_json(const Json& e) {
    if (e.is_number()) {
        return {e.get<double>(), 0.0};
    }
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        return {e[0].get<double>(), e[1].get<double>()};
    }
    throw ValidationError("matrix entry must be a number or [re, im]");
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

// Writes a complex value as a plain number when it is real.
Json value_to_json(Complex z) {
    if (z.imag() == 0.0) {
        return z.real();
    }
    return complex_to_json(z);
}

Json number_or_string(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::string format_number(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, end);
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (j.is_array()) {
        const auto rows = static_cast<Eigen::Index>(j.size());
        if (rows == 0 || !j[0].is_array()) {
            throw ValidationError("matrix rows must be non-empty arrays");
        }
        const auto cols = static_cast<Eigen::Index>(j[0].size());
        ComplexMatrix m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
                throw ValidationError("matrix rows must have equal length");
            }
            for (Eigen::Index c = 0; c < cols; ++c) {
                m(r, c) = complex_from_json(j[r][c]);
            }
        }
        return m;
    }
    if (!j.is_object() || !j.contains("entries")) {
        throw ValidationError("matrix must be an object with \"entries\" or an array of rows");
    }
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    try {
        if (j.contains("n")) {
            rows = cols = j.at("n").get<Eigen::Index>();
        } else {
            rows = j.at("rows").get<Eigen::Index>();
            cols = j.at("cols").get<Eigen::Index>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("matrix shape must be given as integer \"n\" or \"rows\"/\"cols\": ") +
                              e.what());
    }
    const Json& entries = j.at("entries");
    if (rows < 0 || cols < 0 || !entries.is_array() ||
        static_cast<Eigen::Index>(entries.size()) != rows * cols) {
        throw ValidationError("matrix entry count does not match its shape");
    }
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(entries[static_cast<std::size_t>(r * cols + c)]);
        }
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json j = Json::object();
    if (m.rows() == m.cols()) {
        j["n"] = m.rows();
    } else {
        j["rows"] = m.rows();
        j["cols"] = m.cols();
    }
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            entries.push_back(complex_to_json(m(r, c)));
        }
    }
    j["entries"] = std::move(entries);
    return j;
}

RepresentationSpec spec_from_json(const Json& j) {
    try {
        RepresentationSpec spec;
        spec.kind = kind_from_string(j.at("kind").get<std::string>());
        auto weights = j.at("weights").get<std::vector<double>>();
        std::vector<int> parts;
        if (j.contains("parts")) {
            parts = j.at("parts").get<std::vector<int>>();
        }
        try {
            spec.ground = GroundSet(std::move(weights), std::move(parts));
        } catch (const DomainError& e) {
            throw ValidationError(e.what());
        }
        if (j.contains("K")) {
            spec.kernel = matrix_from_json(j.at("K"));
        }
        if (j.contains("L1")) {
            spec.l1 = matrix_from_json(j.at("L1"));
        }
        if (j.contains("L2")) {
            spec.l2 = matrix_from_json(j.at("L2"));
        }
        if (j.contains("cap")) {
            spec.cap = j.at("cap").get<int>();
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed representation spec: ") + e.what());
    }
}

Json spec_to_json(const RepresentationSpec& spec) {
    Json j = Json::object();
    j["kind"] = std::string(to_string(spec.kind));
    j["weights"] = spec.ground.weights();
    if (spec.ground.has_parts()) {
        j["parts"] = spec.ground.part_labels();
    }
    if (spec.kernel) {
        j["K"] = matrix_to_json(*spec.kernel);
    }
    if (spec.l1) {
        j["L1"] = matrix_to_json(*spec.l1);
    }
    if (spec.l2) {
        j["L2"] = matrix_to_json(*spec.l2);
    }
    j["cap"] = spec.cap;
    return j;
}

std::vector<Box> boxes_from_json(const Json& j) {
    try {
        std::vector<Box> boxes;
        for (const auto& b : j) {
            boxes.emplace_back(b.get<std::vector<std::size_t>>());
        }
        return boxes;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("boxes must be an array of site lists: ") + e.what());
    }
}

ConfigFunction config_function_from_json(const Json& j) {
    try {
        const Json& g = j.at("ground");
        std::vector<int> parts;
        if (g.contains("parts")) {
            parts = g.at("parts").get<std::vector<int>>();
        }
        ConfigFunction f(GroundSet(g.at("weights").get<std::vector<double>>(), std::move(parts)));
        for (const auto& e : j.at("entries")) {
            const double im = e.contains("im") ? e.at("im").get<double>() : 0.0;
            f.add(Configuration(e.at("counts").get<std::vector<int>>()),
                  Complex(e.at("re").get<double>(), im));
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed configuration function: ") + e.what());
    }
}

Json config_function_to_json(const ConfigFunction& f) {
    Json ground = Json::object();
    ground["weights"] = f.ground().weights();
    if (f.ground().has_parts()) {
        ground["parts"] = f.ground().part_labels();
    }
    Json entries = Json::array();
    for (const auto& [eta, value] : f.entries()) {
        Json e = Json::object();
        e["counts"] = eta.counts();
        e["re"] = value.real();
        e["im"] = value.imag();
        entries.push_back(std::move(e));
    }
    Json j = Json::object();
    j["ground"] = std::move(ground);
    j["entries"] = std::move(entries);
    return j;
}

void write_samples_csv(std::ostream& out, const SampleBatch& batch) {
    out << "replica";
    for (std::size_t i = 0; i < batch.ground.size(); ++i) {
        out << ",counts_" << i;
    }
    out << '\n';
    for (std::size_t r = 0; r < batch.configs.size(); ++r) {
        out << r;
        for (int c : batch.configs[r].counts()) {
            out << ',' << c;
        }
        out << '\n';
    }
}

SampleBatch read_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("replica", 0) != 0) {
        throw ValidationError("sample CSV must start with a \"replica,counts_0,...\" header");
    }
    const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    if (columns == 0) {
        throw ValidationError("sample CSV has no count columns");
    }
    std::vector<Configuration> configs;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::stringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        std::vector<int> counts;
        while (std::getline(row, cell, ',')) {
            int v = 0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size() || v < 0) {
                throw ValidationError("bad count '" + cell + "' in sample CSV");
            }
            counts.push_back(v);
        }
        if (counts.size() != columns) {
            throw ValidationError("sample CSV row has the wrong number of columns");
        }
        configs.emplace_back(std::move(counts));
    }
    if (configs.empty()) {
        throw ValidationError("sample CSV has no rows");
    }
    SampleBatch batch{GroundSet(std::vector<double>(columns, 1.0)), std::move(configs), 0, 0};
    batch.replica_count = batch.configs.size();
    return batch;
}

Json check_to_json(const Check& check) {
    Json j = Json::object();
    j["name"] = check.name;
    j["lhs"] = value_to_json(check.lhs);
    j["rhs"] = value_to_json(check.rhs);
    j["abs_err"] = number_or_string(check.abs_err);
    j["rel_err"] = number_or_string(check.rel_err);
    j["pass"] = check.pass;
    return j;
}

Json report_to_json(const Report& report) {
    Json checks = Json::array();
    for (const Check& c : report.checks) {
        checks.push_back(check_to_json(c));
    }
    Json j = Json::object();
    j["pass"] = report.all_pass();
    j["checks"] = std::move(checks);
    return j;
}

}  // namespace fockpoint
