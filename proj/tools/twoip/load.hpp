#pragma once

// Input parsing for the bounds and integral subcommands.
//
// Instance file (JSON):
//   {
//     "field":   "real" | "complex",
//     "weights": [w1, ...],
//     "x": [...], "y": [...], "z": [...],     entries: number or [re, im]
//     "a": ..., "A": ...,                     optional scalar pair
//     "m": ..., "M": ...                      optional positive pair
//   }
//
// Integral file (CSV): header "node,weight,phi,f,g,h", one row of six
// numbers per node.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twoip/twoip.hpp"

namespace twoip_cli {

struct BoundsInstance {
    twoip::InnerSpace space;
    twoip::Vector x;
    twoip::Vector y;
    twoip::Vector z;
    std::optional<twoip::ScalarPair> scalar_pair;
    std::optional<twoip::PositivePair> positive_pair;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw twoip::error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline twoip::Scalar parse_scalar(const nlohmann::json& j, twoip::FieldTag field,
                                  const std::string& name) {
    using twoip::parse_error;
    double re = 0.0, im = 0.0;
    if (j.is_number()) {
        re = j.get<double>();
    } else if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        re = j[0].get<double>();
        im = j[1].get<double>();
    } else {
        throw parse_error("instance field '" + name +
                          "': expected a number or an [re, im] pair");
    }
    if (field == twoip::FieldTag::Real && im != 0.0)
        throw parse_error("instance field '" + name +
                          "': nonzero imaginary part in a real-field instance");
    return twoip::Scalar(re, im);
}

inline twoip::Vector parse_vector(const nlohmann::json& j, twoip::FieldTag field,
                                  const std::string& name) {
    if (!j.is_array() || j.size() < 2)
        throw twoip::parse_error("instance field '" + name +
                                 "': expected an array of at least 2 entries");
    std::vector<twoip::Scalar> entries;
    entries.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        entries.push_back(parse_scalar(j[i], field, name + "[" + std::to_string(i) + "]"));
    return twoip::Vector(std::move(entries));
}

}  // namespace detail

inline BoundsInstance load_instance(const std::string& path) {
    using twoip::parse_error;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(detail::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("instance file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) throw parse_error("instance file: top level must be an object");

    const auto require = [&](const char* name) -> const nlohmann::json& {
        if (!doc.contains(name))
            throw parse_error(std::string("instance file: missing field '") + name + "'");
        return doc[name];
    };

    const auto& jfield = require("field");
    if (!jfield.is_string())
        throw parse_error("instance field 'field': expected a string");
    const std::string field_text = jfield.get<std::string>();
    twoip::FieldTag field;
    if (field_text == "real") {
        field = twoip::FieldTag::Real;
    } else if (field_text == "complex") {
        field = twoip::FieldTag::Complex;
    } else {
        throw parse_error("instance field 'field': expected \"real\" or \"complex\"");
    }

    const auto& jw = require("weights");
    if (!jw.is_array() || jw.size() < 2)
        throw parse_error("instance field 'weights': expected an array of at least 2 numbers");
    std::vector<double> weights;
    for (const auto& w : jw) {
        if (!w.is_number()) throw parse_error("instance field 'weights': expected numbers");
        weights.push_back(w.get<double>());
    }

    twoip::InnerSpace space = [&] {
        try {
            return twoip::InnerSpace(field, weights);
        } catch (const twoip::error& e) {
            throw parse_error(std::string("instance field 'weights': ") + e.what());
        }
    }();

    BoundsInstance instance{
        std::move(space),
        detail::parse_vector(require("x"), field, "x"),
        detail::parse_vector(require("y"), field, "y"),
        detail::parse_vector(require("z"), field, "z"),
        std::nullopt,
        std::nullopt,
    };

    const std::size_t dim = instance.space.dim();
    const std::pair<const char*, const twoip::Vector*> named[] = {
        {"x", &instance.x}, {"y", &instance.y}, {"z", &instance.z}};
    for (const auto& [name, v] : named) {
        if (v->dim() != dim)
            throw parse_error(std::string("instance field '") + name + "': has " +
                              std::to_string(v->dim()) + " entries but weights has " +
                              std::to_string(dim));
    }

    if (doc.contains("a") != doc.contains("A"))
        throw parse_error("instance file: 'a' and 'A' must be given together");
    if (doc.contains("m") != doc.contains("M"))
        throw parse_error("instance file: 'm' and 'M' must be given together");
    if (doc.contains("a"))
        instance.scalar_pair = twoip::ScalarPair(detail::parse_scalar(doc["a"], field, "a"),
                                                 detail::parse_scalar(doc["A"], field, "A"));
    if (doc.contains("m")) {
        if (!doc["m"].is_number() || !doc["M"].is_number())
            throw parse_error("instance fields 'm'/'M': expected numbers");
        try {
            instance.positive_pair =
                twoip::PositivePair(doc["m"].get<double>(), doc["M"].get<double>());
        } catch (const twoip::error& e) {
            throw parse_error(std::string("instance fields 'm'/'M': ") + e.what());
        }
    }
    if (!instance.scalar_pair && !instance.positive_pair)
        throw parse_error("instance file: need either ('a','A') or ('m','M')");
    return instance;
}

struct IntegralInput {
    twoip::QuadratureGrid grid;
    twoip::WeightedTriple triple;
};

inline IntegralInput load_integral_csv(const std::string& path) {
    using twoip::parse_error;
    std::ifstream in(path);
    if (!in) throw twoip::error("cannot open '" + path + "' for reading");

    std::string line;
    if (!std::getline(in, line)) throw parse_error("integral file '" + path + "': empty file");

    const auto strip = [](std::string s) {
        while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
            s.pop_back();
        std::size_t start = 0;
        while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
        return s.substr(start);
    };

    if (strip(line) != "node,weight,phi,f,g,h")
        throw parse_error("integral file: header must be 'node,weight,phi,f,g,h', got '" +
                          strip(line) + "'");

    static const char* kColumns[6] = {"node", "weight", "phi", "f", "g", "h"};
    std::vector<double> columns[6];
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = strip(line);
        if (row.empty()) continue;
        std::stringstream cells(row);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(cells, cell, ',')) {
            if (col >= 6)
                throw parse_error("integral file line " + std::to_string(line_no) +
                                  ": more than 6 columns");
            try {
                std::size_t used = 0;
                const double value = std::stod(strip(cell), &used);
                if (used != strip(cell).size()) throw std::invalid_argument("trailing text");
                columns[col].push_back(value);
            } catch (const std::exception&) {
                throw parse_error("integral file line " + std::to_string(line_no) +
                                  ", column '" + kColumns[col] + "': not a number: '" +
                                  strip(cell) + "'");
            }
            ++col;
        }
        if (col != 6)
            throw parse_error("integral file line " + std::to_string(line_no) + ": expected 6 columns, got " +
                              std::to_string(col));
    }
    if (columns[0].size() < 2)
        throw parse_error("integral file: need at least 2 data rows");

    try {
        twoip::QuadratureGrid grid(columns[0], columns[1]);
        twoip::WeightedTriple triple(columns[3], columns[4], columns[5], columns[2]);
        return IntegralInput{std::move(grid), std::move(triple)};
    } catch (const twoip::error& e) {
        throw parse_error(std::string("integral file: ") + e.what());
    }
}

}  // namespace twoip_cli
