#pragma once

// Truth-table text format:
//
//   n=<int>
//   <hex string>
//
// Table bit i lives in hex digit i/4, at bit position i%4 of that digit's
// value. Sign +1 is bit 0, sign -1 is bit 1. Unused high bits of the last
// digit (n = 1) must be zero.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "boolfun.hpp"
#include "error.hpp"

namespace boolopt {

namespace detail {
inline int hex_value(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
}  // namespace detail

// Packs any sign sequence (no zeros) into hex digits, four signs per digit.
inline std::string pack_signs(std::span<const std::int8_t> signs) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out((signs.size() + 3) / 4, '0');
    for (std::size_t i = 0; i < signs.size(); ++i) {
        require(signs[i] == 1 || signs[i] == -1, "pack_signs: entries must be +-1");
        if (signs[i] < 0) out[i / 4] = digits[detail::hex_value(out[i / 4]) | (1 << (i % 4))];
    }
    return out;
}

inline std::vector<std::int8_t> unpack_signs(const std::string& hex, std::size_t count) {
    require(hex.size() == (count + 3) / 4, "expected " + std::to_string((count + 3) / 4) + " hex digits, got " +
                                               std::to_string(hex.size()));
    std::vector<std::int8_t> out(count);
    for (std::size_t d = 0; d < hex.size(); ++d) {
        const int val = detail::hex_value(hex[d]);
        require(val >= 0, std::string("invalid hex digit '") + hex[d] + "' at position " + std::to_string(d));
        for (int b = 0; b < 4; ++b) {
            const std::size_t i = d * 4 + b;
            const bool bit = (val >> b) & 1;
            if (i < count) {
                out[i] = bit ? -1 : 1;
            } else {
                require(!bit, "nonzero padding bit in final hex digit");
            }
        }
    }
    return out;
}

inline std::string format_table(const SignFunction& f) {
    require(f.is_total(), "only total sign functions can be written as truth tables");
    return "n=" + std::to_string(f.n()) + "\n" + pack_signs(f.values()) + "\n";
}

namespace detail {
inline int parse_header(std::istream& in) {
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "truth table: missing header line");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    require(line.rfind("n=", 0) == 0, "truth table: header must read n=<int>");
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(line.substr(2), &used);
        require(used == line.size() - 2, "truth table: trailing characters in header");
    } catch (const std::logic_error&) {
        throw ParameterError("truth table: header must read n=<int>");
    }
    require(n >= 1 && n <= FieldContext::kMaxDegree, "truth table: n out of range");
    return n;
}

inline std::string read_body(std::istream& in) {
    std::string line;
    std::getline(in, line);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    return line;
}
}  // namespace detail

inline SignFunction parse_table(std::istream& in) {
    const int n = detail::parse_header(in);
    const std::string body = detail::read_body(in);
    return SignFunction(n, unpack_signs(body, std::size_t{1} << n));
}

// Tolerant reader for integrity checking: unreadable or missing digits become
// erasures (value 0) instead of errors, so identity checks on the result can
// report what is broken. Returns the number of erased entries via `erasures`.
inline SignFunction parse_table_lenient(std::istream& in, std::size_t& erasures) {
    const int n = detail::parse_header(in);
    const std::string body = detail::read_body(in);
    const std::size_t count = std::size_t{1} << n;
    std::vector<std::int8_t> out(count, 0);
    erasures = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t d = i / 4;
        const int val = d < body.size() ? detail::hex_value(body[d]) : -1;
        if (val < 0) {
            ++erasures;
            continue;
        }
        out[i] = ((val >> (i % 4)) & 1) ? -1 : 1;
    }
    return SignFunction(n, std::move(out), Alphabet::partial);
}

inline SignFunction load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open truth table " + path.string());
    return parse_table(in);
}

// Writes via a temporary sibling and rename, so readers never see a partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), "cannot write " + tmp.string());
        out << content;
        out.flush();
        require(out.good(), "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline void save_table(const std::filesystem::path& path, const SignFunction& f) {
    write_file_atomic(path, format_table(f));
}

}  // namespace boolopt
