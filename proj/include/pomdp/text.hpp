#pragma once

// Small helpers shared by the text formats.

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "pomdp/error.hpp"

namespace pomdp::text {

/// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view tok, std::size_t line) {
    double v = 0.0;
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected a number, got '" + std::string(tok) + "'");
    }
    return v;
}

inline std::size_t parse_size(std::string_view tok, std::size_t line) {
    std::size_t v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
    }
    return v;
}

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view s) {
    const auto p = s.find('#');
    return p == std::string_view::npos ? s : s.substr(0, p);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

/// Split on the first occurrence of `sep`; the second half is empty when absent.
inline std::pair<std::string_view, std::string_view> split_once(std::string_view s, char sep) {
    const auto p = s.find(sep);
    if (p == std::string_view::npos) return {s, {}};
    return {s.substr(0, p), s.substr(p + 1)};
}

inline std::vector<std::string_view> split_char(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t b = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(b, i - b)));
            b = i + 1;
        }
    }
    return out;
}

inline bool starts_with_word(std::string_view line, std::string_view word) {
    if (line.substr(0, word.size()) != word) return false;
    return line.size() == word.size() || line[word.size()] == ' ' || line[word.size()] == '\t' ||
           line[word.size()] == ':';
}

/// Line iterator yielding (1-based line number, content without comment, trimmed).
class Lines {
public:
    explicit Lines(std::string_view text) : text_(text) {}

    bool next(std::size_t& number, std::string_view& content) {
        while (pos_ <= text_.size() && !done_) {
            const auto nl = text_.find('\n', pos_);
            std::string_view raw = nl == std::string_view::npos ? text_.substr(pos_) : text_.substr(pos_, nl - pos_);
            if (nl == std::string_view::npos) done_ = true; else pos_ = nl + 1;
            ++line_;
            const auto c = trim(strip_comment(raw));
            if (c.empty()) continue;
            number = line_;
            content = c;
            return true;
        }
        return false;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
    bool done_ = false;
};

} // namespace pomdp::text
