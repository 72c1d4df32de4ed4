#pragma once

// Line and token helpers shared by the text-format parsers.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "diffcomp/error.hpp"

namespace diffcomp::text {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// Trimmed lines; comment lines (leading '#') are dropped, blank lines kept.
inline std::vector<std::string_view> lines(std::string_view body) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= body.size()) {
        auto end = body.find('\n', start);
        if (end == std::string_view::npos) end = body.size();
        const auto line = trim(body.substr(start, end - start));
        if (line.empty() || line.front() != '#') out.push_back(line);
        start = end + 1;
    }
    return out;
}

/// Groups of consecutive non-blank lines.
inline std::vector<std::vector<std::string_view>> blocks(std::string_view body) {
    std::vector<std::vector<std::string_view>> out;
    std::vector<std::string_view> current;
    for (auto line : lines(body)) {
        if (line.empty()) {
            if (!current.empty()) out.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(line);
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

inline std::size_t to_size(std::string_view token) {
    std::size_t value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end || token.empty()) {
        fail(ErrorKind::Parse, "expected a non-negative integer, got '" + std::string(token) + "'");
    }
    return value;
}

inline long long to_ll(std::string_view token) {
    long long value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end || token.empty()) {
        fail(ErrorKind::Parse, "expected an integer, got '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace diffcomp::text
