#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "bredon/engine.hpp"

namespace bredon {

// The three HomologyReport serializations. All are deterministic; the records
// format round-trips (parse_records . render_records = id on the table part).

namespace detail {

inline std::vector<int> report_qs(const HomologyReport& r) {
  std::vector<int> qs;
  for (const auto& [key, cell] : r.cells)
    if (qs.empty() || qs.back() != key.first) qs.push_back(key.first);
  return qs;
}

inline std::string cell_text(const ReportCell& c) {
  if (!c.error.empty()) return "!" + c.error;
  return to_text(*c.value);
}

}  // namespace detail

/// Aligned, human-readable table with trail annotations.
inline std::string render_text(const HomologyReport& r) {
  std::ostringstream out;
  out << "H_*^vc(A_n, K_q(R[-]))   ring = " << r.ring << "   n = " << r.n << "\n";
  for (int q : detail::report_qs(r)) {
    out << "\n[q = " << q << "]\n";
    for (int p = 3; p >= 0; --p) {
      const ReportCell* c = r.cell(p, q);
      if (!c) continue;
      out << "  H_" << p << " = " << detail::cell_text(*c) << "\n";
      for (const auto& t : c->trail) out << "      trail: " << t << "\n";
    }
  }
  if (!r.notes.empty()) {
    out << "\nnotes:\n";
    for (const auto& n : r.notes) out << "  - " << n << "\n";
  }
  if (!r.warnings.empty()) {
    out << "\nwarnings:\n";
    for (const auto& w : r.warnings) out << "  - " << w << "\n";
  }
  return out.str();
}

/// Grid view of the same table: rows q (descending), columns p = 0..3.
inline std::string render_grid(const HomologyReport& r) {
  std::ostringstream out;
  out << "E_2 page   ring = " << r.ring << "   n = " << r.n
      << "   (rows q, columns p; columns p >= 4 vanish)\n\n";
  std::vector<int> qs = detail::report_qs(r);
  std::vector<std::string> header = {""};
  for (int p = 0; p <= 3; ++p) header.push_back("p=" + std::to_string(p));
  std::vector<std::vector<std::string>> rows;
  for (auto it = qs.rbegin(); it != qs.rend(); ++it) {
    std::vector<std::string> row = {"q=" + std::to_string(*it)};
    for (int p = 0; p <= 3; ++p) {
      const ReportCell* c = r.cell(p, *it);
      row.push_back(c ? detail::cell_text(*c) : "");
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j)
      width[j] = std::max(width[j], row[j].size());
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t j = 0; j < row.size(); ++j) {
      line += row[j];
      if (j + 1 < row.size()) line += std::string(width[j] - row[j].size(), ' ') + "   ";
    }
    std::size_t end = line.find_last_not_of(' ');
    line.erase(end == std::string::npos ? 0 : end + 1);
    out << line << "\n";
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  if (!r.notes.empty()) {
    out << "\nnotes:\n";
    for (const auto& n : r.notes) out << "  - " << n << "\n";
  }
  if (!r.warnings.empty()) {
    out << "\nwarnings:\n";
    for (const auto& w : r.warnings) out << "  - " << w << "\n";
  }
  return out.str();
}

/// Machine-readable records: one tab-separated line per cell
/// (p, q, group, exactness, trail joined by "; "), preceded by '#'-prefixed
/// header, note and warning lines.
inline std::string render_records(const HomologyReport& r) {
  std::ostringstream out;
  out << "#bredon-records\tring=" << r.ring << "\tn=" << r.n << "\n";
  for (const auto& n : r.notes) out << "#note\t" << n << "\n";
  for (const auto& w : r.warnings) out << "#warning\t" << w << "\n";
  for (const auto& [key, c] : r.cells) {
    out << key.second << "\t" << key.first << "\t";
    if (!c.error.empty()) {
      out << c.error << "\terror";
    } else {
      out << to_text(*c.value) << "\t" << (c.value->is_exact() ? "exact" : "bounded");
    }
    out << "\t";
    for (std::size_t i = 0; i < c.trail.size(); ++i)
      out << (i ? "; " : "") << c.trail[i];
    out << "\n";
  }
  return out.str();
}

/// Inverse of render_records.
inline HomologyReport parse_records(const std::string& text) {
  HomologyReport r;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      std::size_t tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string::npos ? tab : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (line[0] == '#') {
      if (fields[0] == "#bredon-records") {
        for (std::size_t i = 1; i < fields.size(); ++i) {
          if (fields[i].rfind("ring=", 0) == 0) r.ring = fields[i].substr(5);
          if (fields[i].rfind("n=", 0) == 0) r.n = std::stoi(fields[i].substr(2));
        }
        have_header = true;
      } else if (fields[0] == "#note" && fields.size() > 1) {
        r.notes.push_back(fields[1]);
      } else if (fields[0] == "#warning" && fields.size() > 1) {
        r.warnings.push_back(fields[1]);
      } else {
        throw parse_error("unknown record header '" + fields[0] + "'", line_no, 1);
      }
      continue;
    }
    if (fields.size() != 5)
      throw parse_error("cell records have 5 tab-separated fields", line_no, 1);
    ReportCell cell;
    int p, q;
    try {
      p = std::stoi(fields[0]);
      q = std::stoi(fields[1]);
    } catch (const std::exception&) {
      throw parse_error("cell coordinates must be integers", line_no, 1);
    }
    if (fields[3] == "error") {
      cell.error = fields[2];
    } else if (fields[3] == "exact" || fields[3] == "bounded") {
      cell.value = parse_group_value(fields[2]);
      if ((fields[3] == "exact") != cell.value->is_exact())
        throw parse_error("exactness flag disagrees with the group expression",
                          line_no, 1);
    } else {
      throw parse_error("exactness must be exact, bounded or error", line_no, 1);
    }
    if (!fields[4].empty()) {
      std::size_t start = 0;
      while (start <= fields[4].size()) {
        std::size_t sep = fields[4].find("; ", start);
        cell.trail.push_back(fields[4].substr(
            start, sep == std::string::npos ? std::string::npos : sep - start));
        if (sep == std::string::npos) break;
        start = sep + 2;
      }
    }
    r.cells[{q, p}] = std::move(cell);
  }
  if (!have_header) throw parse_error("missing #bredon-records header", 1, 1);
  return r;
}

namespace detail {

inline std::string latex_atom(std::uint64_t order) {
  if (order == 0) return "\\mathbb{Z}";
  return "\\mathbb{Z}/" + std::to_string(order);
}

}  // namespace detail

/// Publication-style markup of one group.
inline std::string to_latex(const AbelianGroup& g) {
  if (g.is_zero()) return "0";
  std::vector<std::string> terms;
  auto with_mult = [&](std::uint64_t order, ExtNat m) {
    std::string atom = detail::latex_atom(order);
    if (m.is_omega())
      terms.push_back("\\bigoplus_{\\aleph_0} " + atom);
    else if (m == ExtNat(1))
      terms.push_back(atom);
    else if (order == 0)
      terms.push_back(atom + "^{" + m.to_string() + "}");
    else
      terms.push_back("(" + atom + ")^{" + m.to_string() + "}");
  };
  if (!g.z_multiplicity().is_zero()) with_mult(0, g.z_multiplicity());
  for (const auto& r : g.symbolic_ranks())
    terms.push_back("\\mathbb{Z}^{" + r.name + "}");
  std::vector<std::pair<std::pair<std::uint64_t, unsigned>, ExtNat>> torsion;
  for (const auto& [o, m] : g.multiplicities()) {
    if (o.is_free()) continue;
    torsion.push_back({{o.prime(), p_valuation(o.value, o.prime())}, m});
  }
  std::sort(torsion.begin(), torsion.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [pk, m] : torsion) {
    std::uint64_t order = 1;
    for (unsigned i = 0; i < pk.second; ++i) order *= pk.first;
    with_mult(order, m);
  }
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i)
    out += (i ? " \\oplus " : "") + terms[i];
  return out;
}

inline std::string to_latex(const GroupValue& v) {
  if (v.is_exact()) return to_latex(v.group());
  return to_latex(v.lower()) + " \\leq \\cdot \\leq " + to_latex(v.upper());
}

/// Publication-style table markup (rows q descending, columns p).
inline std::string render_table_markup(const HomologyReport& r) {
  std::ostringstream out;
  out << "% ring = " << r.ring << ", n = " << r.n << "\n";
  out << "\\begin{tabular}{c|cccc}\n";
  out << "q \\backslash p & 0 & 1 & 2 & 3 \\\\\n\\hline\n";
  std::vector<int> qs = detail::report_qs(r);
  for (auto it = qs.rbegin(); it != qs.rend(); ++it) {
    out << *it;
    for (int p = 0; p <= 3; ++p) {
      const ReportCell* c = r.cell(p, *it);
      out << " & ";
      if (!c)
        out << "";
      else if (!c->error.empty())
        out << "\\text{error}";
      else
        out << "$" << to_latex(*c->value) << "$";
    }
    out << " \\\\\n";
  }
  out << "\\end{tabular}\n";
  return out.str();
}

}  // namespace bredon
