#pragma once

// Wire formats.  Every integer crosses the boundary as a decimal string —
// chain members and ladder totals exceed any fixed-width type — and JSON
// objects use a fixed field order so identical runs produce identical bytes.
// Data lines never carry timestamps; run metadata rides on a single prefixed
// header line that readers skip.

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "splitsq/classifier.hpp"
#include "splitsq/generators.hpp"
#include "splitsq/nat.hpp"

namespace splitsq {
namespace io {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* format_version = "1.0.0";
inline constexpr const char* witness_schema = "split-square-witness/1";
inline constexpr const char* header_prefix = "# ";

// Strict decimal parse: digits only, non-empty.
inline Nat parse_nat(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("parse_nat: empty string");
    }
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("parse_nat: not a decimal natural number: \"" +
                                        text + "\"");
        }
    }
    return Nat(text);
}

inline std::size_t parse_size(const std::string& text) {
    const Nat value = parse_nat(text);
    if (value > Nat(std::numeric_limits<std::size_t>::max())) {
        throw std::invalid_argument("parse_size: value out of range: " + text);
    }
    return value.convert_to<std::size_t>();
}

// --- witnesses --------------------------------------------------------------

inline ordered_json witness_to_json(const classifier::SplitWitness& w) {
    return ordered_json{
        {"total", w.total.str()},
        {"left_root", w.left_root.str()},
        {"right_root", w.right_root.str()},
        {"left_square", w.left_square.str()},
        {"right_square", w.right_square.str()},
        {"zeros_between", std::to_string(w.zeros_between)},
        {"right_width", std::to_string(w.right_width)},
    };
}

inline classifier::SplitWitness witness_from_json(const ordered_json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("witness_from_json: expected a JSON object");
    }
    auto field = [&j](const char* name) -> std::string {
        auto it = j.find(name);
        if (it == j.end() || !it->is_string()) {
            throw std::invalid_argument(std::string("witness_from_json: missing or "
                                                    "non-string field \"") +
                                        name + "\"");
        }
        return it->get<std::string>();
    };
    classifier::SplitWitness w;
    w.total = parse_nat(field("total"));
    w.left_root = parse_nat(field("left_root"));
    w.right_root = parse_nat(field("right_root"));
    w.left_square = parse_nat(field("left_square"));
    w.right_square = parse_nat(field("right_square"));
    w.zeros_between = parse_size(field("zeros_between"));
    w.right_width = parse_size(field("right_width"));
    return w;
}

inline std::string csv_header() {
    return "total,left_square,zeros_between,right_square";
}

inline std::string witness_to_csv(const classifier::SplitWitness& w) {
    return w.total.str() + "," + w.left_square.str() + "," +
           std::to_string(w.zeros_between) + "," + w.right_square.str();
}

// Header line for JSONL streams: prefix + metadata, no timestamps.
inline std::string search_header_line(const Nat& z_max,
                                      std::optional<std::size_t> zeros_filter) {
    ordered_json meta{
        {"schema", witness_schema},
        {"z_max", z_max.str()},
        {"zeros", zeros_filter ? ordered_json(std::to_string(*zeros_filter))
                               : ordered_json(nullptr)},
        {"version", format_version},
    };
    return std::string(header_prefix) + meta.dump();
}

inline bool is_header_line(const std::string& line) {
    return line.rfind('#', 0) == 0;
}

// --- generator records ------------------------------------------------------

inline ordered_json thm1_to_json(const generators::Thm1Candidate& c) {
    ordered_json j{
        {"alpha", std::to_string(c.params.alpha)},
        {"beta", std::to_string(c.params.beta)},
        {"case", std::to_string(c.params.case_id)},
        {"k", c.k.str()},
        {"n", c.n.str()},
        {"a", c.a.str()},
        {"x", c.x.str()},
        {"z", c.z.str()},
        {"total", Nat(c.z * c.z).str()},
        {"status", c.verified() ? "verified" : "rejected"},
    };
    if (c.rejection) {
        j["reason"] = generators::to_string(*c.rejection);
    }
    if (c.witness) {
        j["witness"] = witness_to_json(*c.witness);
    }
    return j;
}

inline ordered_json pair_to_json(const generators::PairRecord& p) {
    return ordered_json{
        {"alpha", std::to_string(p.alpha)},
        {"c", p.c.str()},
        {"d", p.d.str()},
        {"c_witness", witness_to_json(p.c_witness)},
        {"d_witness", witness_to_json(p.d_witness)},
    };
}

inline ordered_json ladder_step_to_json(const generators::LadderStep& s) {
    ordered_json j{
        {"k", std::to_string(s.k)},
        {"z_k", s.z_k.str()},
        {"x_k", s.x_k.str()},
        {"a_k", s.a_k.str()},
        {"total", Nat(s.z_k * s.z_k).str()},
        {"deficit", std::to_string(s.deficit)},
    };
    j["witness"] = s.witness ? witness_to_json(*s.witness) : ordered_json(nullptr);
    return j;
}

inline ordered_json chain_to_json(const generators::ChainRecord& c) {
    ordered_json members = ordered_json::array();
    for (const Nat& m : c.members) {
        members.push_back(m.str());
    }
    ordered_json ratios = ordered_json::array();
    for (const Nat& r : c.ratios) {
        ratios.push_back(r.str());
    }
    return ordered_json{
        {"r", std::to_string(c.r)},
        {"alpha", std::to_string(c.alpha)},
        {"length", std::to_string(c.members.size())},
        {"members", std::move(members)},
        {"ratios", std::move(ratios)},
    };
}

inline ordered_json zeros_result_to_json(const generators::ZerosStreamResult& z) {
    ordered_json witnesses = ordered_json::array();
    for (const auto& w : z.witnesses) {
        witnesses.push_back(witness_to_json(w));
    }
    return ordered_json{
        {"zeros", std::to_string(z.zeros)},
        {"count_requested", std::to_string(z.count_requested)},
        {"alpha_start", std::to_string(z.alpha_start)},
        {"alpha_ceiling", std::to_string(z.alpha_ceiling)},
        {"alpha_reached", std::to_string(z.alpha_reached)},
        {"complete", z.complete},
        {"witnesses", std::move(witnesses)},
    };
}

}  // namespace io
}  // namespace splitsq
