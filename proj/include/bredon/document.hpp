#pragma once

#include <string>
#include <vector>

#include "bredon/errors.hpp"

namespace bredon {

/// One `key = value` line of a structured text document, with its section and
/// source line number. Trailing `# ...` text is kept as a note.
struct DocEntry {
  std::string section;
  std::string key;
  std::string value;
  std::string note;
  int line = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Scans the key-value document format used for profiles and class catalogs:
/// `[section]` headers, `key = value` entries, `#` comments, blank lines.
inline std::vector<DocEntry> parse_document(const std::string& text) {
  std::vector<DocEntry> out;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string note;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      note = detail::trim(line.substr(hash + 1));
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw parse_error("unterminated section header", line_no, 1);
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw parse_error("empty section name", line_no, 1);
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw parse_error("expected 'key = value'", line_no, 1);
    DocEntry e;
    e.section = section;
    e.key = detail::trim(line.substr(0, eq));
    e.value = detail::trim(line.substr(eq + 1));
    e.note = note;
    e.line = line_no;
    if (e.key.empty()) throw parse_error("empty key", line_no, 1);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace bredon
