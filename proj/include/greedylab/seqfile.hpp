#pragma once

#include "sequences.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace greedylab {

/// Malformed sequence text or unreadable file; the CLI maps this to exit 2.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Rational parse_value(const std::string& tok, const std::string& where) {
    try {
        return parse_rational(tok);
    } catch (const validation_error& e) {
        throw parse_error(where + ": " + e.what());
    }
}

inline Index parse_index(const std::string& tok, const std::string& where) {
    if (tok.empty() || tok.size() > 18)
        throw parse_error(where + ": bad index '" + tok + "'");
    for (char c : tok)
        if (c < '0' || c > '9')
            throw parse_error(where + ": bad index '" + tok + "'");
    Index n = static_cast<Index>(std::stoll(tok));
    if (n < 1) throw parse_error(where + ": indices start at 1");
    return n;
}

}  // namespace detail

/// Line encoding: one "index value" pair per line, indices strictly
/// increasing, values decimal integers or "p/q", '#' opens a comment.
inline FinSeq seq_from_lines(const std::string& text) {
    std::vector<FinSeq::Entry> entries;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    Index prev = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream fields(line);
        std::string itok, vtok, extra;
        if (!(fields >> itok)) continue;
        std::string where = "line " + std::to_string(lineno);
        if (!(fields >> vtok))
            throw parse_error(where + ": expected \"index value\"");
        if (fields >> extra)
            throw parse_error(where + ": trailing token '" + extra + "'");
        Index n = detail::parse_index(itok, where);
        if (n <= prev)
            throw parse_error(where + ": indices must be strictly increasing");
        prev = n;
        entries.emplace_back(n, detail::parse_value(vtok, where));
    }
    return FinSeq(std::move(entries));
}

/// Structured encoding: {"entries": [[index, "p/q"], ...]} with the same
/// ordering constraint. Integer values may appear unquoted.
inline FinSeq seq_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
        throw parse_error("expected an object with an \"entries\" array");
    std::vector<FinSeq::Entry> entries;
    Index prev = 0;
    std::size_t at = 0;
    for (const auto& item : doc["entries"]) {
        std::string where = "entry " + std::to_string(at++);
        if (!item.is_array() || item.size() != 2)
            throw parse_error(where + ": expected an [index, value] pair");
        if (!item[0].is_number_integer())
            throw parse_error(where + ": index must be an integer");
        Index n = item[0].get<std::int64_t>();
        if (n < 1) throw parse_error(where + ": indices start at 1");
        if (n <= prev)
            throw parse_error(where + ": indices must be strictly increasing");
        prev = n;
        Rational v;
        if (item[1].is_string())
            v = detail::parse_value(item[1].get<std::string>(), where);
        else if (item[1].is_number_integer())
            v = Rational(item[1].get<std::int64_t>());
        else
            throw parse_error(where + ": value must be \"p/q\" text or an integer");
        entries.emplace_back(n, std::move(v));
    }
    return FinSeq(std::move(entries));
}

/// Dispatches on the first non-space character: '{' selects the structured
/// encoding. Empty text is the zero vector in both encodings.
inline FinSeq seq_from_text(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return c == '{' ? seq_from_json(text) : seq_from_lines(text);
    }
    return FinSeq();
}

inline std::string seq_to_lines(const FinSeq& f) {
    std::string out;
    for (const auto& [n, v] : f.entries())
        out += std::to_string(n) + " " + format_rational(v) + "\n";
    return out;
}

inline std::string seq_to_json(const FinSeq& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [n, v] : f.entries())
        arr.push_back({n, format_rational(v)});
    nlohmann::json doc;
    doc["entries"] = std::move(arr);
    return doc.dump();
}

inline FinSeq read_seq_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return seq_from_text(buf.str());
}

inline void write_seq_file(const std::string& path, const FinSeq& f,
                           bool structured = false) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open '" + path + "' for writing");
    out << (structured ? seq_to_json(f) + "\n" : seq_to_lines(f));
    if (!out) throw parse_error("write failed for '" + path + "'");
}

}  // namespace greedylab
