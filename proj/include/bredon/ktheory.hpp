#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>

#include "bredon/document.hpp"
#include "bredon/errors.hpp"
#include "bredon/render.hpp"

namespace bredon {

/// K-theory of a coefficient ring over a declared range of degrees: K_q and
/// the Nil-terms NK_q, with a regularity flag. Entries may be declared
/// `unknown`; queries on unknown entries fail loudly instead of defaulting.
/// For a regular ring all Nil-terms and all negative K-groups vanish, inside
/// or outside the declared range.
class KTheoryProfile {
 public:
  using Entry = std::optional<GroupValue>;  // nullopt = declared unknown

  std::string name;
  bool regular = false;
  int q_min = 0;
  int q_max = 0;
  std::map<int, Entry> k_table;
  std::map<int, Entry> nk_table;
  std::map<std::string, std::string> notes;  // keyed "K[q]" / "NK[q]"

  bool in_range(int q) const { return q >= q_min && q <= q_max; }

  /// Checks completeness and the regularity implications. Throws
  /// invariant_error naming the first violation.
  void validate() const {
    if (q_min > q_max) throw invariant_error("profile " + name + ": empty q_range");
    for (int q = q_min; q <= q_max; ++q) {
      auto k = k_table.find(q);
      if (k == k_table.end())
        throw invariant_error("profile " + name + ": missing K[" + std::to_string(q) + "]");
      auto nk = nk_table.find(q);
      if (nk == nk_table.end())
        throw invariant_error("profile " + name + ": missing NK[" + std::to_string(q) + "]");
      if (regular) {
        if (!nk->second.has_value() || !nk->second->is_zero())
          throw invariant_error("profile " + name +
                                ": regular ring must have zero Nil-terms (NK[" +
                                std::to_string(q) + "])");
        if (q < 0 && (!k->second.has_value() || !k->second->is_zero()))
          throw invariant_error("profile " + name +
                                ": regular ring must have zero negative K (K[" +
                                std::to_string(q) + "])");
      }
    }
  }

  friend bool operator==(const KTheoryProfile& a, const KTheoryProfile& b) {
    return a.name == b.name && a.regular == b.regular && a.q_min == b.q_min &&
           a.q_max == b.q_max && a.k_table == b.k_table && a.nk_table == b.nk_table;
  }

 private:
  const Entry& entry(const std::map<int, Entry>& table, const char* which, int q) const {
    auto it = table.find(q);
    if (it == table.end())
      throw range_error(std::string(which) + "[" + std::to_string(q) +
                        "] is outside the declared range " + std::to_string(q_min) +
                        ".." + std::to_string(q_max) + " of profile " + name);
    if (!it->second.has_value())
      throw range_error(std::string(which) + "[" + std::to_string(q) +
                        "] of profile " + name + " is declared unknown");
    return it->second;
  }

 public:
  GroupValue k(int q) const {
    if (!in_range(q)) {
      if (regular && q < 0) return GroupValue::zero();
      entry(k_table, "K", q);  // throws
    }
    return *entry(k_table, "K", q);
  }

  GroupValue nk(int q) const {
    if (regular) return GroupValue::zero();
    return *entry(nk_table, "NK", q);
  }
};

inline GroupValue get_k(const KTheoryProfile& p, int q) { return p.k(q); }
inline GroupValue get_nk(const KTheoryProfile& p, int q) { return p.nk(q); }

namespace detail {

inline void put(KTheoryProfile& p, bool nil, int q, const std::string& expr,
                const std::string& note = "") {
  auto& table = nil ? p.nk_table : p.k_table;
  table[q] = expr == "unknown" ? KTheoryProfile::Entry{}
                               : KTheoryProfile::Entry{parse_group_value(expr)};
  if (!note.empty()) p.notes[(nil ? std::string("NK[") : std::string("K[")) +
                             std::to_string(q) + "]"] = note;
}

/// Largest i >= 1 with base^i - 1 within comfortable factorization reach.
inline int fq_degree_cap(std::uint64_t base) {
  const std::uint64_t limit = 1000000000000ULL;  // 1e12: trial division stays fast
  int i = 0;
  std::uint64_t power = 1;
  while (power <= limit / base) {
    power *= base;
    ++i;
  }
  return i < 1 ? 1 : i;
}

}  // namespace detail

/// The K-theory of a finite field with `order` elements, generated from the
/// closed formula K_0 = Z, K_{2i-1} = Z/(order^i - 1), K_{2i} = 0 (Quillen).
/// The declared range is capped so every cyclic order stays desk-scale.
inline KTheoryProfile finite_field_profile(std::uint64_t order) {
  if (!is_prime_power(order))
    throw input_error("Fq(" + std::to_string(order) + "): order must be a prime power");
  KTheoryProfile p;
  p.name = "Fq(" + std::to_string(order) + ")";
  p.regular = true;
  p.q_min = 0;
  int cap = detail::fq_degree_cap(order);
  p.q_max = std::min(11, 2 * cap - 1);
  p.k_table[0] = GroupValue::exact(AbelianGroup::free(ExtNat(1)));
  std::uint64_t power = 1;
  for (int i = 1; 2 * i - 1 <= p.q_max; ++i) {
    power *= order;
    std::uint64_t ord = power - 1;
    p.k_table[2 * i - 1] =
        ord >= 2 ? GroupValue::exact(AbelianGroup::cyclic(ord)) : GroupValue::zero();
    if (2 * i <= p.q_max) p.k_table[2 * i] = GroupValue::zero();
  }
  for (int q = p.q_min; q <= p.q_max; ++q) p.nk_table[q] = GroupValue::zero();
  p.notes["K[1]"] = "multiplicative group of the field";
  p.validate();
  return p;
}

/// Built-in coefficient rings. Names: Z, F2, Fq(<prime power>), Z[C2],
/// Z[C2xC2], Z[C4].
inline KTheoryProfile builtin_profile(const std::string& name) {
  using detail::put;
  KTheoryProfile p;
  p.name = name;
  if (name == "Z") {
    p.regular = true;
    p.q_min = 0;
    p.q_max = 7;
    put(p, false, 0, "Z");
    put(p, false, 1, "Z/2");
    put(p, false, 2, "Z/2");
    put(p, false, 3, "Z/48");
    put(p, false, 4, "0");
    put(p, false, 5, "Z");
    put(p, false, 6, "0");
    put(p, false, 7, "Z/240", "known through q = 7; beyond that Vandiver territory");
    for (int q = 0; q <= 7; ++q) put(p, true, q, "0");
  } else if (name == "F2") {
    p.regular = true;
    p.q_min = 0;
    p.q_max = 3;
    put(p, false, 0, "Z");
    put(p, false, 1, "0");
    put(p, false, 2, "0");
    put(p, false, 3, "Z/3");
    for (int q = 0; q <= 3; ++q) put(p, true, q, "0");
  } else if (name == "Z[C2]") {
    p.regular = false;
    p.q_min = -1;
    p.q_max = 1;
    put(p, false, -1, "0");
    put(p, false, 0, "Z");
    put(p, false, 1, "(Z/2)^2", "units of the group ring");
    put(p, true, -1, "unknown");
    put(p, true, 0, "0");
    put(p, true, 1, "0");
  } else if (name == "Z[C2xC2]") {
    p.regular = false;
    p.q_min = -1;
    p.q_max = 1;
    put(p, false, -1, "Z^r[1..w]", "free of unknown positive rank (Schur indexes)");
    put(p, false, 0, "Z");
    put(p, false, 1, "(Z/2)^3");
    put(p, true, -1, "unknown");
    put(p, true, 0, "(+)_{w} Z/2");
    put(p, true, 1, "(+)_{w} Z/2");
  } else if (name == "Z[C4]") {
    p.regular = false;
    p.q_min = -1;
    p.q_max = 1;
    put(p, false, -1, "Z^s[1..w]", "free of unknown positive rank (Schur indexes)");
    put(p, false, 0, "Z");
    put(p, false, 1, "Z/2 (+) Z/4");
    put(p, true, -1, "unknown");
    put(p, true, 0, "(+)_{w} Z/2");
    put(p, true, 1, "(+)_{w} Z/2");
  } else if (name.rfind("Fq(", 0) == 0 && name.back() == ')') {
    std::string inner = name.substr(3, name.size() - 4);
    auto v = ExtNat::parse(inner);
    if (!v || v->is_omega()) throw input_error("bad finite field order: " + inner);
    return finite_field_profile(v->finite_or_throw());
  } else {
    throw input_error("unknown builtin ring: " + name);
  }
  p.validate();
  return p;
}

inline bool is_builtin_ring(const std::string& name) {
  try {
    builtin_profile(name);
    return true;
  } catch (const input_error&) {
    return false;
  }
}

/// Renders a profile in the document format (sections [meta], [K], [NK]).
/// Reloading the result yields an equal profile; notes ride along as comments.
inline std::string profile_to_document(const KTheoryProfile& p) {
  std::ostringstream out;
  out << "[meta]\n";
  out << "name = " << p.name << "\n";
  out << "regular = " << (p.regular ? "true" : "false") << "\n";
  out << "q_range = " << p.q_min << ".." << p.q_max << "\n";
  auto table = [&](const char* header, const std::map<int, KTheoryProfile::Entry>& t,
                   const char* prefix) {
    out << "\n[" << header << "]\n";
    for (const auto& [q, entry] : t) {
      out << q << " = " << (entry ? to_text(*entry) : std::string("unknown"));
      auto note = p.notes.find(std::string(prefix) + "[" + std::to_string(q) + "]");
      if (note != p.notes.end()) out << "  # " << note->second;
      out << "\n";
    }
  };
  table("K", p.k_table, "K");
  table("NK", p.nk_table, "NK");
  return out.str();
}

namespace detail {

inline std::pair<int, int> parse_q_range(const std::string& s, int line) {
  std::size_t sep = s.find("..");
  if (sep == std::string::npos)
    throw parse_error("q_range must be '<min>..<max>'", line, 1);
  try {
    int lo = std::stoi(s.substr(0, sep));
    int hi = std::stoi(s.substr(sep + 2));
    return {lo, hi};
  } catch (const std::exception&) {
    throw parse_error("q_range bounds must be integers", line, 1);
  }
}

}  // namespace detail

/// Parses and invariant-checks a profile document.
inline KTheoryProfile load_profile(const std::string& text) {
  auto entries = parse_document(text);
  if (entries.empty()) throw parse_error("empty profile document", 1, 1);
  KTheoryProfile p;
  bool have_name = false, have_regular = false, have_range = false;
  for (const auto& e : entries) {
    if (e.section == "meta") {
      if (e.key == "name") {
        p.name = e.value;
        have_name = true;
      } else if (e.key == "regular") {
        if (e.value != "true" && e.value != "false")
          throw parse_error("regular must be true or false", e.line, 1);
        p.regular = e.value == "true";
        have_regular = true;
      } else if (e.key == "q_range") {
        std::tie(p.q_min, p.q_max) = detail::parse_q_range(e.value, e.line);
        have_range = true;
      } else {
        throw parse_error("unknown [meta] key '" + e.key + "'", e.line, 1);
      }
    } else if (e.section == "K" || e.section == "NK") {
      int q;
      try {
        q = std::stoi(e.key);
      } catch (const std::exception&) {
        throw parse_error("entry key must be an integer degree", e.line, 1);
      }
      auto& table = e.section == "K" ? p.k_table : p.nk_table;
      if (table.count(q))
        throw parse_error("duplicate " + e.section + "[" + e.key + "]", e.line, 1);
      try {
        detail::put(p, e.section == "NK", q, e.value, e.note);
      } catch (const parse_error& pe) {
        throw parse_error(std::string(pe.what()), e.line, pe.column);
      }
    } else if (e.section.empty()) {
      throw parse_error("entry before any section header", e.line, 1);
    } else if (e.section != "classes") {
      throw parse_error("unknown section [" + e.section + "]", e.line, 1);
    }
  }
  if (!have_name) throw parse_error("missing name in [meta]", 1, 1);
  if (!have_regular) throw parse_error("missing regular flag in [meta]", 1, 1);
  if (!have_range) throw parse_error("missing q_range in [meta]", 1, 1);
  for (const auto& [q, entry] : p.k_table)
    if (!p.in_range(q))
      throw invariant_error("profile " + p.name + ": K[" + std::to_string(q) +
                            "] lies outside the declared q_range");
  for (const auto& [q, entry] : p.nk_table)
    if (!p.in_range(q))
      throw invariant_error("profile " + p.name + ": NK[" + std::to_string(q) +
                            "] lies outside the declared q_range");
  p.validate();
  return p;
}

}  // namespace bredon
