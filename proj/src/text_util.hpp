#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace screenplaynet::text {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_alpha(char c) { return is_upper(c) || is_lower(c); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
inline char to_upper(char c) { return is_lower(c) ? char(c - 'a' + 'A') : c; }
inline char to_lower(char c) { return is_upper(c) ? char(c - 'A' + 'a') : c; }

std::string_view trim(std::string_view s);
std::string upper(std::string_view s);
std::string lower(std::string_view s);

// Trim plus collapse of internal whitespace runs into one space.
std::string collapse_whitespace(std::string_view s);

// At least one ASCII letter and no lowercase ASCII letters.
bool is_all_uppercase(std::string_view s);

bool starts_with_ci(std::string_view s, std::string_view prefix);

int leading_indent(std::string_view s);

std::string expand_tabs(std::string_view s, int tab_width = 8);

std::vector<std::string_view> split_lines(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Drops every "( ... )" group; an unclosed "(" drops the rest of the text.
std::string strip_parentheticals(std::string_view s);

}  // namespace screenplaynet::text
