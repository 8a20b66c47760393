#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bredon/document.hpp"
#include "bredon/extnat.hpp"
#include "bredon/matrix.hpp"

namespace bredon {

/// One free factor of the central quotient A_n / Z(A_n).
struct FreeFactor {
  bool infinite = false;
  std::uint64_t order = 0;  // meaningful when finite

  static FreeFactor cyclic_infinite() { return {true, 0}; }
  static FreeFactor cyclic(std::uint64_t n) { return {false, n}; }
};

/// Structural data of the dihedral Artin group on two generators a, b with
/// relation prod(a,b;n) = prod(b,a;n): parity, the power of ab generating the
/// center, and the free-product shape of the central quotient.
///
/// For even n the finite free factor is recorded with order n/2 (the quotient
/// presentation <x, y | y^(n/2) = 1> after x = b, y = ba); an alternative
/// indexing convention names it C_n. Only the orbit structure of the quotient
/// tree enters any homology formula, so the choice is inert; reports carry a
/// note.
struct ArtinParameters {
  int n = 2;
  bool even = false;
  std::uint64_t center_exponent = 0;  // Z(A_n) = <(ab)^center_exponent>
  FreeFactor quotient_first;
  FreeFactor quotient_second;

  static ArtinParameters for_index(int n) {
    if (n < 2) throw input_error("dihedral Artin index n must be >= 2");
    ArtinParameters p;
    p.n = n;
    p.even = n % 2 == 0;
    if (p.even) {
      p.center_exponent = static_cast<std::uint64_t>(n) / 2;
      p.quotient_first = FreeFactor::cyclic_infinite();
      p.quotient_second = FreeFactor::cyclic(static_cast<std::uint64_t>(n) / 2);
    } else {
      p.center_exponent = static_cast<std::uint64_t>(n);
      p.quotient_first = FreeFactor::cyclic(2);
      p.quotient_second = FreeFactor::cyclic(static_cast<std::uint64_t>(n));
    }
    return p;
  }

  bool degenerate() const { return n == 2; }  // A_2 = Z^2

  /// Rank of H_1(A_n): 2 for even n (classes of a and b), 1 for odd n.
  int h1_rank() const { return even ? 2 : 1; }
};

enum class ClassKind { center, non_center };

/// Shape of the commensurator of a commensurability class of infinite cyclic
/// subgroups: the whole group for the central class, Z^2 (with the class a
/// direct factor) otherwise.
struct CommensuratorShape {
  bool whole_group = false;
  bool degenerate = false;
  std::string describe() const {
    std::string s = whole_group ? "A_n" : "Z^2 (class is a direct factor)";
    if (degenerate) s += " [degenerate: A_2 = Z^2]";
    return s;
  }
};

inline CommensuratorShape classify_commensurator(const ArtinParameters& p,
                                                 ClassKind kind) {
  return {kind == ClassKind::center, p.degenerate()};
}

/// Integral homology of A_n: Z, Z^2, Z, 0, ... for even n and Z, Z, 0, ...
/// for odd n (2-dimensional Cayley complex of the one-relator presentation).
inline AbelianGroup ordinary_homology(const ArtinParameters& p, int i) {
  if (i < 0) throw input_error("homology degree must be >= 0");
  if (i == 0) return AbelianGroup::free(ExtNat(1));
  if (i == 1) return AbelianGroup::free(ExtNat(p.even ? 2 : 1));
  if (i == 2 && p.even) return AbelianGroup::free(ExtNat(1));
  return AbelianGroup::zero();
}

/// Integral homology of Z^2 (torus): Z, Z^2, Z, 0, ...
inline AbelianGroup ordinary_homology_z2(int i) {
  if (i < 0) throw input_error("homology degree must be >= 0");
  if (i == 0 || i == 2) return AbelianGroup::free(ExtNat(1));
  if (i == 1) return AbelianGroup::free(ExtNat(2));
  return AbelianGroup::zero();
}

/// An orbit of vertices or edges of an equivariant tree, with the stabilizer
/// order in the quotient group (1 = free orbit). Preimages of stabilizers in
/// the commensurator itself are infinite cyclic throughout.
struct TreeOrbit {
  std::string label;
  std::uint64_t stabilizer_order = 1;
};

/// A quotient tree with its formal boundary matrix (vertex orbits x edge
/// orbits, integer coefficients); orientation fixed once.
struct TreeModel {
  std::vector<TreeOrbit> vertex_orbits;
  std::vector<TreeOrbit> edge_orbits;
  IntMatrix boundary;
};

/// The three stock models for the classifying space of the commensurator
/// modulo the class representative:
///  - non-central class: the line with a free shifting action (the induced
///    boundary coefficient is 0);
///  - central class, n odd: two vertex orbits with stabilizers C_2 and C_n,
///    one free edge orbit, boundary (+1, -1);
///  - central class, n even: one vertex orbit with finite cyclic stabilizer,
///    one free edge orbit, boundary 0.
inline TreeModel tree_model(const ArtinParameters& p, ClassKind kind) {
  TreeModel m;
  if (kind == ClassKind::non_center) {
    m.vertex_orbits = {{"line-vertex", 1}};
    m.edge_orbits = {{"line-edge", 1}};
    m.boundary = IntMatrix(1, 1);
    return m;
  }
  if (!p.even) {
    m.vertex_orbits = {{"involution-vertex", 2},
                       {"rotation-vertex", static_cast<std::uint64_t>(p.n)}};
    m.edge_orbits = {{"free-edge", 1}};
    m.boundary = IntMatrix(2, 1);
    m.boundary.at(0, 0) = 1;
    m.boundary.at(1, 0) = -1;
    return m;
  }
  m.vertex_orbits = {{"rotation-vertex", p.quotient_second.order}};
  m.edge_orbits = {{"free-edge", 1}};
  m.boundary = IntMatrix(1, 1);
  return m;
}

/// One commensurability class pattern: the image of a class generator in
/// H_1(A_n) and how many classes share it. Multiplicities are extended
/// naturals; the catalog must contain w-many non-central classes in total.
struct ClassEntry {
  std::string label;
  std::vector<long long> ab;
  ExtNat multiplicity = ExtNat(1);
};

struct ClassCatalog {
  std::vector<ClassEntry> entries;  // non-central classes only
  bool includes_center = true;

  ExtNat non_center_total() const {
    ExtNat total(0);
    for (const auto& e : entries) total += e.multiplicity;
    return total;
  }

  void validate(const ArtinParameters& p) const {
    if (!includes_center)
      throw invariant_error("class catalog: center class required");
    for (const auto& e : entries)
      if (static_cast<int>(e.ab.size()) != p.h1_rank())
        throw invariant_error("class catalog: ab-vector of '" + e.label +
                              "' has length " + std::to_string(e.ab.size()) +
                              ", expected " + std::to_string(p.h1_rank()));
    if (!non_center_total().is_omega())
      throw invariant_error(
          "class catalog: non-center multiplicities must sum to w");
  }
};

/// One expanded class of a catalog prefix (multiplicities written out).
struct ClassInstance {
  std::string label;
  std::vector<long long> ab;
};

/// Expands catalog entries, in order, into the first `count` class instances.
inline std::vector<ClassInstance> expand_catalog(const ClassCatalog& catalog,
                                                 std::size_t count) {
  std::vector<ClassInstance> out;
  for (const auto& e : catalog.entries) {
    std::uint64_t avail =
        e.multiplicity.is_omega() ? UINT64_MAX : e.multiplicity.finite_or_throw();
    for (std::uint64_t i = 0; i < avail && out.size() < count; ++i)
      out.push_back({e.label, e.ab});
    if (out.size() >= count) break;
  }
  if (out.size() < count)
    throw invariant_error("catalog cannot supply the requested truncation");
  return out;
}

/// Image of the central generator (ab)^center_exponent in H_1(A_n).
inline std::vector<long long> center_ab_vector(const ArtinParameters& p) {
  auto e = static_cast<long long>(p.center_exponent);
  if (p.even) return {e, e};
  return {2 * e};
}

/// The weakest catalog reproducing the closed forms: for even n the classes
/// of a and b with patterns (1,0) and (0,1), plus w-many classes with
/// vanishing pattern; for odd n a class with pattern (1) plus w-many with
/// pattern (0).
inline ClassCatalog default_class_catalog(const ArtinParameters& p) {
  ClassCatalog c;
  if (p.even) {
    c.entries.push_back({"<a>", {1, 0}, ExtNat(1)});
    c.entries.push_back({"<b>", {0, 1}, ExtNat(1)});
    c.entries.push_back({"null-pattern", {0, 0}, ExtNat::omega()});
  } else {
    c.entries.push_back({"<a>", {1}, ExtNat(1)});
    c.entries.push_back({"null-pattern", {0}, ExtNat::omega()});
  }
  c.validate(p);
  return c;
}

namespace detail {

inline std::vector<long long> parse_ab_vector(const std::string& s, int line) {
  if (s.empty() || s.front() != '(')
    throw parse_error("ab-vector must look like (x) or (x,y)", line, 1);
  std::size_t close = s.find(')');
  if (close == std::string::npos)
    throw parse_error("unterminated ab-vector", line, 1);
  std::vector<long long> out;
  std::string body = s.substr(1, close - 1);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string item = trim(body.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos));
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw parse_error("ab-vector entries must be integers", line, 1);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Reads a [classes] section: rows `ab = (x,y), mult = <extnat>[, label = ...]`
/// plus an optional `center = true|false` row.
inline ClassCatalog catalog_from_document(const std::string& text,
                                          const ArtinParameters& p) {
  ClassCatalog c;
  int row = 0;
  for (const auto& e : parse_document(text)) {
    if (e.section != "classes") continue;
    if (e.key == "center") {
      c.includes_center = e.value == "true";
      continue;
    }
    if (e.key != "ab")
      throw parse_error("unknown [classes] key '" + e.key + "'", e.line, 1);
    ClassEntry entry;
    std::size_t close = e.value.find(')');
    if (close == std::string::npos)
      throw parse_error("unterminated ab-vector", e.line, 1);
    entry.ab = detail::parse_ab_vector(e.value.substr(0, close + 1), e.line);
    entry.label = "class-" + std::to_string(++row);
    std::string rest = e.value.substr(close + 1);
    bool have_mult = false;
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t comma = rest.find(',', pos);
      std::string item = detail::trim(rest.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos));
      pos = comma == std::string::npos ? rest.size() : comma + 1;
      if (item.empty()) continue;
      std::size_t eq = item.find('=');
      if (eq == std::string::npos)
        throw parse_error("expected 'mult = ...' or 'label = ...'", e.line, 1);
      std::string key = detail::trim(item.substr(0, eq));
      std::string value = detail::trim(item.substr(eq + 1));
      if (key == "mult") {
        auto m = ExtNat::parse(value);
        if (!m) throw parse_error("bad multiplicity '" + value + "'", e.line, 1);
        entry.multiplicity = *m;
        have_mult = true;
      } else if (key == "label") {
        entry.label = value;
      } else {
        throw parse_error("unknown [classes] attribute '" + key + "'", e.line, 1);
      }
    }
    if (!have_mult)
      throw parse_error("class row is missing 'mult = ...'", e.line, 1);
    c.entries.push_back(std::move(entry));
  }
  c.validate(p);
  return c;
}

}  // namespace bredon
