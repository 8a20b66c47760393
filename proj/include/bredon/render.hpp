#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "bredon/errors.hpp"
#include "bredon/group_value.hpp"

namespace bredon {

// Canonical text rendering of groups. Grammar (also in the README):
//
//   group   := "0" | term { " (+) " term }
//   term    := "Z" | "Z^" nat | "Z/" nat | "(Z/" nat ")^" nat
//            | "(+)_{" extnat "} " atom | "Z^" ident "[" extnat ".." extnat "]"
//   atom    := "Z" | "Z/" nat
//   extnat  := nat | "w"
//
// The writer emits the free part first, then symbolic ranks sorted by name,
// then torsion factors sorted by (prime, exponent). Bounded values render as
// "bounded[<lower> .. <upper>]".

inline std::string to_text(const AbelianGroup& g) {
  if (g.is_zero()) return "0";
  std::vector<std::string> terms;
  auto atom_with_mult = [&](const std::string& atom, ExtNat m, bool torsion) {
    if (m.is_omega()) {
      terms.push_back("(+)_{w} " + atom);
    } else if (m == ExtNat(1)) {
      terms.push_back(atom);
    } else if (torsion) {
      terms.push_back("(" + atom + ")^" + m.to_string());
    } else {
      terms.push_back(atom + "^" + m.to_string());
    }
  };
  ExtNat zm = g.z_multiplicity();
  if (!zm.is_zero()) atom_with_mult("Z", zm, false);
  for (const auto& r : g.symbolic_ranks())
    terms.push_back("Z^" + r.name + "[" + r.lower.to_string() + ".." +
                    r.upper.to_string() + "]");
  std::vector<std::pair<std::pair<std::uint64_t, unsigned>, ExtNat>> torsion;
  for (const auto& [o, m] : g.multiplicities()) {
    if (o.is_free()) continue;
    std::uint64_t p = o.prime();
    torsion.push_back({{p, p_valuation(o.value, p)}, m});
  }
  std::sort(torsion.begin(), torsion.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [pk, m] : torsion) {
    std::uint64_t order = 1;
    for (unsigned i = 0; i < pk.second; ++i) order *= pk.first;
    atom_with_mult("Z/" + std::to_string(order), m, true);
  }
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " (+) ";
    out += terms[i];
  }
  return out;
}

inline std::string to_text(const GroupValue& v) {
  if (v.is_exact()) return to_text(v.group());
  return "bounded[" + to_text(v.lower()) + " .. " + to_text(v.upper()) + "]";
}

namespace detail {

class GroupParser {
 public:
  explicit GroupParser(const std::string& s) : s_(s) {}

  AbelianGroup parse_group() {
    skip_spaces();
    if (peek_token("0")) {
      pos_ += 1;
      skip_spaces();
      if (pos_ != s_.size()) fail("unexpected trailing text after 0");
      return AbelianGroup::zero();
    }
    std::vector<std::pair<std::uint64_t, ExtNat>> raw;
    std::vector<SymbolicRank> ranks;
    parse_term(raw, ranks);
    skip_spaces();
    while (pos_ < s_.size()) {
      expect(" (+) ", "expected ' (+) ' between summands");
      parse_term(raw, ranks);
      skip_spaces();
    }
    AbelianGroup g = AbelianGroup::normalize(raw);
    for (auto& r : ranks) g = direct_sum(g, AbelianGroup::symbolic(std::move(r)));
    return g;
  }

  GroupValue parse_value() {
    skip_spaces();
    if (peek_token("bounded[")) {
      pos_ += 8;
      std::size_t sep = s_.find(" .. ", pos_);
      if (sep == std::string::npos) fail("expected ' .. ' inside bounded[...]");
      std::size_t close = s_.rfind(']');
      if (close == std::string::npos || close < sep)
        fail("expected closing ']' of bounded[...]");
      AbelianGroup lo = parse_group_text(s_.substr(pos_, sep - pos_));
      AbelianGroup hi = parse_group_text(s_.substr(sep + 4, close - sep - 4));
      pos_ = close + 1;
      skip_spaces();
      if (pos_ != s_.size()) fail("unexpected trailing text after bounded[...]");
      return GroupValue::bounded(std::move(lo), std::move(hi));
    }
    return GroupValue::exact(parse_group());
  }

  static AbelianGroup parse_group_text(const std::string& text) {
    GroupParser p(text);
    return p.parse_group();
  }

 private:
  void parse_term(std::vector<std::pair<std::uint64_t, ExtNat>>& raw,
                  std::vector<SymbolicRank>& ranks) {
    skip_spaces();
    if (peek_token("(+)_{")) {
      pos_ += 5;
      ExtNat m = parse_extnat();
      expect("}", "expected '}' after multiplicity");
      skip_spaces();
      auto [order, _] = parse_atom();
      raw.emplace_back(order, m);
      return;
    }
    if (peek_token("(")) {
      pos_ += 1;
      auto [order, is_torsion] = parse_atom();
      if (!is_torsion) fail("parenthesized power applies to torsion atoms only");
      expect(")^", "expected ')^' after parenthesized atom");
      std::uint64_t m = parse_nat();
      raw.emplace_back(order, ExtNat(m));
      return;
    }
    auto [order, is_torsion] = parse_atom();
    if (!is_torsion && peek_token("^")) {
      pos_ += 1;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        raw.emplace_back(0, ExtNat(parse_nat()));
        return;
      }
      std::string name = parse_ident();
      expect("[", "expected '[' after symbolic rank name");
      ExtNat lo = parse_extnat();
      expect("..", "expected '..' in symbolic rank bounds");
      ExtNat hi = parse_extnat();
      expect("]", "expected ']' after symbolic rank bounds");
      ranks.emplace_back(name, lo, hi);
      return;
    }
    raw.emplace_back(order, ExtNat(1));
  }

  // Returns (order, is_torsion); order 0 denotes Z.
  std::pair<std::uint64_t, bool> parse_atom() {
    if (!peek_token("Z")) fail("expected 'Z'");
    pos_ += 1;
    if (peek_token("/")) {
      pos_ += 1;
      std::uint64_t n = parse_nat();
      if (n < 2) fail("cyclic order must be >= 2");
      return {n, true};
    }
    return {0, false};
  }

  ExtNat parse_extnat() {
    if (peek_token("w")) {
      pos_ += 1;
      return ExtNat::omega();
    }
    return ExtNat(parse_nat());
  }

  std::uint64_t parse_nat() {
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected a number");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > UINT64_MAX / 10) fail("number too large");
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  std::string parse_ident() {
    std::string out;
    while (pos_ < s_.size() &&
           (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      out += s_[pos_++];
    if (out.empty()) fail("expected an identifier");
    return out;
  }

  bool peek_token(const std::string& t) const { return s_.compare(pos_, t.size(), t) == 0; }

  void expect(const std::string& t, const std::string& msg) {
    if (!peek_token(t)) fail(msg);
    pos_ += t.size();
  }

  void skip_spaces() {
    // A space is significant only as part of the ' (+) ' separator or after a
    // '(+)_{..}' prefix; leading/trailing runs are ignored.
    while (pos_ < s_.size() && s_[pos_] == ' ' &&
           s_.compare(pos_, 5, " (+) ") != 0)
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg + " in group expression '" + s_ + "'", 1,
                      static_cast<int>(pos_) + 1);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the canonical text rendering of a group. Composite cyclic orders
/// are accepted and normalized into prime powers.
inline AbelianGroup parse_group(const std::string& text) {
  detail::GroupParser p(text);
  return p.parse_group();
}

/// Parses an exact group or a "bounded[l .. u]" sandwich value.
inline GroupValue parse_group_value(const std::string& text) {
  detail::GroupParser p(text);
  return p.parse_value();
}

}  // namespace bredon
