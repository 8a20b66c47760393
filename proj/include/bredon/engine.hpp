#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bredon/artin.hpp"
#include "bredon/bhs.hpp"

namespace bredon {

struct EngineOptions {
  /// Sign convention for the two central BHS inclusions in degree 1 of the
  /// even case: the coupling functional reads c_H = alpha_H + beta_H under
  /// `plus`, c_H = alpha_H - beta_H under `minus`. With the default catalog
  /// every kernel and cokernel is independent of the choice.
  bool center_coupling_minus = false;
};

/// Universal coefficients: H_i (x) M (+) Tor(H_{i-1}, M) for the integral
/// homology h (indexed by degree, zero beyond the list).
inline GroupValue uct(const std::vector<AbelianGroup>& h, const GroupValue& m, int i) {
  auto at = [&](int d) {
    return d >= 0 && d < static_cast<int>(h.size()) ? h[d] : AbelianGroup::zero();
  };
  return direct_sum(tensor(m, at(i)), tor(m, at(i - 1)));
}

/// Homology of the kernel/cokernel pair of the middle map of a tree model:
/// h1 = kernel and h0 = cokernel of (+)_edges N(G/S_e) -> (+)_vertices
/// N(G/S_v) with the given integer boundary matrix. A zero boundary splits
/// the answer orbit by orbit; a nonzero boundary needs one common coefficient
/// group, computed through the SNF functor.
struct TreeHomology {
  GroupValue h0;
  GroupValue h1;
};

inline TreeHomology tree_mayer_vietoris(const TreeModel& model,
                                        const std::vector<GroupValue>& edge_coeff,
                                        const std::vector<GroupValue>& vertex_coeff,
                                        const IntMatrix& boundary) {
  if (edge_coeff.size() != model.edge_orbits.size() ||
      vertex_coeff.size() != model.vertex_orbits.size() ||
      boundary.rows() != model.vertex_orbits.size() ||
      boundary.cols() != model.edge_orbits.size())
    throw input_error("tree Mayer-Vietoris: dimension mismatch");
  bool zero = true;
  for (std::size_t i = 0; i < boundary.rows(); ++i)
    for (std::size_t j = 0; j < boundary.cols(); ++j)
      if (boundary.at(i, j) != 0) zero = false;
  TreeHomology out;
  if (zero) {
    for (const auto& c : edge_coeff) out.h1 = direct_sum(out.h1, c);
    for (const auto& c : vertex_coeff) out.h0 = direct_sum(out.h0, c);
    return out;
  }
  const GroupValue& k = edge_coeff.front();
  for (const auto& c : edge_coeff)
    if (!(c == k)) throw unsupported_error("tree Mayer-Vietoris: nonzero boundary needs one common coefficient group");
  for (const auto& c : vertex_coeff)
    if (!(c == k)) throw unsupported_error("tree Mayer-Vietoris: nonzero boundary needs one common coefficient group");
  auto [ker, coker] = matrix_ker_coker_value(boundary, k);
  out.h1 = ker;
  out.h0 = coker;
  return out;
}

inline TreeHomology tree_mayer_vietoris(const TreeModel& model,
                                        const std::vector<GroupValue>& edge_coeff,
                                        const std::vector<GroupValue>& vertex_coeff) {
  return tree_mayer_vietoris(model, edge_coeff, vertex_coeff, model.boundary);
}

enum class GDegree { g20, g21, g22 };

/// Restriction of the degree-i Mayer-Vietoris map to the summand of one
/// commensurability class, split into its two codomain components:
///  - f_kind / f_row: the component into the class's own F[H]-term. The row
///    holds the coefficients with which the domain coordinates hit the BHS
///    K_q(R) copy of that term (empty when the component is zero, as for the
///    odd central class in degree 1 whose F-term is T1 (+) T2);
///  - fin_part: the component into H_i^Fin(A_n), an integer matrix obtained
///    from the ab-vector by tensoring the map on first homology with K_q(R).
/// Undetermined entries are zero-filled; Nil summands are not modeled.
struct GClassComponent {
  enum class FKind { zero, bhs_inclusion, big_c_inclusion };
  std::string label;
  FKind f_kind = FKind::zero;
  IntMatrix f_row;
  IntMatrix fin_part;

  std::size_t domain_rank() const { return fin_part.cols(); }
};

/// The per-class component model of g_2^i over a catalog prefix, center
/// class first. The central component into H_i^Fin is always the identity.
struct GMapModel {
  GDegree which = GDegree::g20;
  std::size_t fin_rank = 0;
  std::vector<GClassComponent> components;

  void validate() const {
    if (components.empty()) throw invariant_error("map model: center class required");
    const IntMatrix& center = components.front().fin_part;
    if (center.rows() != fin_rank || center.cols() != fin_rank ||
        !(center == IntMatrix::identity(fin_rank)))
      throw invariant_error(
          "map model: the central component into H_i^Fin must be the identity");
  }
};

/// Builds the component model of g_2^i for the center plus the given
/// non-central class instances.
inline GMapModel g_map_model(GDegree which, const ArtinParameters& a,
                             const std::vector<ClassInstance>& instances,
                             const EngineOptions& opts = {}) {
  using FKind = GClassComponent::FKind;
  GMapModel m;
  m.which = which;
  long long sign = opts.center_coupling_minus ? -1 : 1;

  auto zero_row = [](std::size_t cols) { return IntMatrix(0, cols); };
  auto row = [](std::initializer_list<long long> v) {
    IntMatrix r(1, v.size());
    std::size_t j = 0;
    for (long long x : v) r.at(0, j++) = x;
    return r;
  };

  GClassComponent center;
  center.label = "center";
  switch (which) {
    case GDegree::g22:
      m.fin_rank = a.even ? 1 : 0;
      center.f_kind = FKind::zero;
      center.f_row = zero_row(a.even ? 1 : 0);
      center.fin_part = IntMatrix::identity(m.fin_rank);
      break;
    case GDegree::g21:
      m.fin_rank = static_cast<std::size_t>(a.h1_rank());
      if (a.even) {
        center.f_kind = FKind::bhs_inclusion;
        center.f_row = row({1, sign});
      } else {
        center.f_kind = FKind::zero;  // the image dies in T1 (+) T2
        center.f_row = zero_row(1);
      }
      center.fin_part = IntMatrix::identity(m.fin_rank);
      break;
    case GDegree::g20:
      m.fin_rank = 1;
      center.f_kind = a.even ? FKind::bhs_inclusion : FKind::big_c_inclusion;
      center.f_row = row({1});
      center.fin_part = IntMatrix::identity(1);
      break;
  }
  m.components.push_back(std::move(center));

  for (const auto& inst : instances) {
    GClassComponent c;
    c.label = inst.label;
    switch (which) {
      case GDegree::g22:
        c.f_kind = FKind::zero;
        c.f_row = zero_row(1);
        c.fin_part = IntMatrix(m.fin_rank, 1);  // undetermined, zero-filled
        break;
      case GDegree::g21:
        // Domain coordinates (u, v): u in the class direction, v central.
        c.f_kind = FKind::bhs_inclusion;
        c.f_row = row({0, 1});
        c.fin_part = IntMatrix(m.fin_rank, 2);
        for (std::size_t i = 0; i < m.fin_rank; ++i)
          c.fin_part.at(i, 0) = inst.ab[i];
        break;
      case GDegree::g20:
        c.f_kind = FKind::bhs_inclusion;
        c.f_row = row({1});
        c.fin_part = row({1});  // counts connected components
        break;
    }
    m.components.push_back(std::move(c));
  }
  m.validate();
  return m;
}

/// H_i of A_n for the family of finite subgroups with K-theory coefficients:
/// ordinary homology with coefficients K_q(R) since A_n is torsion-free.
inline GroupValue h_fin_an(const KTheoryProfile& p, int q, const ArtinParameters& a,
                           int i) {
  std::vector<AbelianGroup> h = {ordinary_homology(a, 0), ordinary_homology(a, 1),
                                 ordinary_homology(a, 2), ordinary_homology(a, 3)};
  return uct(h, p.k(q), i);
}

/// Same for a commensurator: the Z^2 case is torus homology, the whole-group
/// case delegates to h_fin_an.
inline GroupValue h_fin_comm(const KTheoryProfile& p, int q,
                             const CommensuratorShape& shape,
                             const ArtinParameters& a, int i) {
  if (shape.whole_group) return h_fin_an(p, q, a, i);
  std::vector<AbelianGroup> h = {ordinary_homology_z2(0), ordinary_homology_z2(1),
                                 ordinary_homology_z2(2), ordinary_homology_z2(3)};
  return uct(h, p.k(q), i);
}

/// H_i of a commensurator for the family F[H] (subgroups commensurable with H
/// or finite), computed through the quotient tree models:
///  (1) zero for i >= 2 (the models are one-dimensional);
///  (2) non-central class: K_q(R[Z]) in degrees 0 and 1;
///  (3) central class, odd n: degree 0 is C(K_q(R)), degree 1 is T1 (+) T2;
///  (4) central class, even n: K_q(R[Z]) in degrees 0 and 1.
inline GroupValue h_fh(const KTheoryProfile& p, int q, const ArtinParameters& a,
                       ClassKind kind, int i) {
  if (i < 0) throw input_error("homology degree must be >= 0");
  if (i >= 2) return GroupValue::zero();
  if (kind == ClassKind::non_center || a.even) return k_of_laurent(p, q).total;
  if (i == 0) return big_c(p, q, static_cast<std::uint64_t>(a.n));
  IndKernel t = ind_kernel(p, q, static_cast<std::uint64_t>(a.n));
  return direct_sum(t.t1, t.t2);
}

/// Kernel of the degree-2 map of the Mayer-Vietoris sequence. For odd n its
/// codomain vanishes, for even n the central component is the identity onto
/// H_2^Fin(A_n); either way the kernel is the sum of the non-central
/// summands, independently of the undetermined components.
inline GroupValue ker_g2_2(const KTheoryProfile& p, int q, const ArtinParameters&) {
  return countable_sum(p.k(q), ExtNat::omega());
}

/// Kernel of the degree-1 map.
///  - odd n: the BHS inclusion pins the central coordinate of every
///    non-central summand; the one coupling constraint into
///    H_1(A_n) (x) K_q(R) is absorbed by the central identity component, so
///    the kernel is exactly (+)_{[H] != [Z]} K_q(R).
///  - even n: the central summand is exact (identity component); what remains
///    is the kernel of the coupling functional with coefficients
///    c_H = alpha_H +- beta_H read off the catalog, evaluated by the SNF
///    functor on the finite-multiplicity part and by cardinal absorption with
///    the sandwich rule on the w-multiplicity part.
inline GroupValue ker_g2_1(const KTheoryProfile& p, int q, const ArtinParameters& a,
                           const ClassCatalog& catalog,
                           const EngineOptions& opts = {}) {
  catalog.validate(a);
  GroupValue kq = p.k(q);
  if (!a.even) return countable_sum(kq, ExtNat::omega());

  GroupValue zero_part;
  std::vector<long long> finite_coeffs;
  bool omega_nonzero = false;
  ExtNat finite_nonzero_total(0);
  for (const auto& e : catalog.entries) {
    long long c = opts.center_coupling_minus ? e.ab[0] - e.ab[1] : e.ab[0] + e.ab[1];
    if (c == 0) {
      zero_part = direct_sum(zero_part, countable_sum(kq, e.multiplicity));
    } else if (e.multiplicity.is_omega()) {
      omega_nonzero = true;
    } else {
      if (e.multiplicity > ExtNat(4096))
        throw unsupported_error(
            "class catalog: finite multiplicity beyond the supported coupling "
            "truncation");
      for (std::uint64_t i = 0; i < e.multiplicity.finite_or_throw(); ++i)
        finite_coeffs.push_back(c);
      finite_nonzero_total += e.multiplicity;
    }
  }
  GroupValue nonzero_part;
  if (omega_nonzero) {
    // Truncations of the functional have kernels K^(k-1); the w-limit is
    // sandwiched between (+)_w K and the full domain, which agree.
    AbelianGroup lower = countable_sum(kq.lower(), ExtNat::omega());
    AbelianGroup upper = countable_sum(kq.upper(), ExtNat::omega());
    upper = direct_sum(upper, countable_sum(kq.upper(), finite_nonzero_total));
    nonzero_part = GroupValue::bounded(lower, upper);
  } else if (!finite_coeffs.empty()) {
    IntMatrix functional(1, finite_coeffs.size());
    for (std::size_t j = 0; j < finite_coeffs.size(); ++j)
      functional.at(0, j) = finite_coeffs[j];
    nonzero_part = matrix_ker_coker_value(functional, kq).first;
  }
  return direct_sum(zero_part, nonzero_part);
}

/// Cokernel of the degree-1 map, in closed form:
///  odd n: ((+)_{[H] != [Z]} N_q) (+) T1 (+) T2; even n: (+)_{[H]} N_q.
inline GroupValue coker_g2_1(const KTheoryProfile& p, int q, const ArtinParameters& a) {
  GroupValue classes = countable_sum(n_q_class_term(p, q), ExtNat::omega());
  if (a.even) return classes;
  IndKernel t = ind_kernel(p, q, static_cast<std::uint64_t>(a.n));
  return direct_sum(classes, direct_sum(t.t1, t.t2));
}

/// Cokernel of the degree-0 map, in closed form:
///  odd n: ((+)_{[H] != [Z]} N_q) (+) K_q(R) (+) Cbar(K_q(R));
///  even n: ((+)_{[H]} N_q) (+) K_q(R).
inline GroupValue coker_g2_0(const KTheoryProfile& p, int q, const ArtinParameters& a) {
  GroupValue classes = countable_sum(n_q_class_term(p, q), ExtNat::omega());
  GroupValue out = direct_sum(classes, p.k(q));
  if (!a.even)
    out = direct_sum(out, big_c_bar(p, q, static_cast<std::uint64_t>(a.n)));
  return out;
}

/// One cell of a homology table: a value with its derivation trail, or an
/// error naming why the cell could not be computed.
struct ReportCell {
  std::optional<GroupValue> value;
  std::string error;
  std::vector<std::string> trail;
};

/// A computed table (p, q) -> cell with derivation trails and warnings.
/// Cells with p >= 4 vanish identically and are not stored.
struct HomologyReport {
  std::string ring;
  int n = 0;
  std::map<std::pair<int, int>, ReportCell> cells;  // key (q, p), p in 0..3
  std::vector<std::string> notes;
  std::vector<std::string> warnings;

  const ReportCell* cell(int p, int q) const {
    auto it = cells.find({q, p});
    return it == cells.end() ? nullptr : &it->second;
  }

  bool has_bounded() const {
    for (const auto& [key, c] : cells)
      if (c.value && !c.value->is_exact()) return true;
    return false;
  }

  bool has_errors() const {
    for (const auto& [key, c] : cells)
      if (!c.error.empty()) return true;
    return false;
  }

  void add_warning(const std::string& w) {
    for (const auto& existing : warnings)
      if (existing == w) return;
    warnings.push_back(w);
  }

  void add_note(const std::string& n_) {
    for (const auto& existing : notes)
      if (existing == n_) return;
    notes.push_back(n_);
  }
};

namespace detail {

inline void standard_notes(HomologyReport& r, const ArtinParameters& a) {
  r.add_note("N_q^[H] = K_{q-1}(R) (+) NK_q(R)^2");
  r.add_note("H_i^vc = 0 for i >= 4 (the virtually cyclic family has geometric dimension 3)");
  if (a.even) {
    r.add_warning(
        "even n: coupling coefficients c_H come from the class catalog; the "
        "default assumes patterns (1,0), (0,1) and w-many (0,0)");
    r.add_warning(
        "even n: the finite free factor of the central quotient is recorded "
        "with order n/2; an alternative indexing names it C_n (homology "
        "unaffected)");
  }
  if (a.degenerate())
    r.add_warning("n = 2 is degenerate (A_2 = Z^2); formulas follow the general even pattern");
}

}  // namespace detail

/// One row (fixed q) of the virtually-cyclic Bredon homology of A_n, assembled
/// from the closed forms above.
inline HomologyReport bredon_vc(const KTheoryProfile& p, int q,
                                const ArtinParameters& a,
                                const ClassCatalog& catalog,
                                const EngineOptions& opts = {}) {
  catalog.validate(a);
  HomologyReport r;
  r.ring = p.name;
  r.n = a.n;
  detail::standard_notes(r, a);

  auto put = [&](int deg, auto&& compute, std::vector<std::string> trail) {
    ReportCell cell;
    cell.trail = std::move(trail);
    try {
      cell.value = compute();
      if (!cell.value->is_exact())
        r.add_warning("H_" + std::to_string(deg) + " (q = " + std::to_string(q) +
                      ") is only bounded: " + to_text(*cell.value));
    } catch (const bredon::range_error& e) {
      cell.error = e.what();
    } catch (const bredon::unsupported_error& e) {
      cell.error = e.what();
    }
    r.cells[{q, deg}] = std::move(cell);
  };

  if (a.even) {
    put(3, [&] { return ker_g2_2(p, q, a); },
        {"H_3 = ker g2^2: the central component is the identity onto "
         "H_2^Fin(A_n), kernel = (+)_{[H]!=[Z]} K_q(R)"});
    put(2, [&] { return ker_g2_1(p, q, a, catalog, opts); },
        {"H_2 = ker g2^1: central summand exact via its identity component; "
         "remaining kernel = kernel of the coupling functional c_H = "
         "sum(ab_H) over the catalog"});
    put(1, [&] { return coker_g2_1(p, q, a); },
        {"H_1 = coker g2^1 = (+)_{[H]} N_q"});
    put(0, [&] { return coker_g2_0(p, q, a); },
        {"H_0 = coker g2^0 = ((+)_{[H]} N_q) (+) K_q(R)"});
  } else {
    put(3, [&] { return ker_g2_2(p, q, a); },
        {"H_3 = ker g2^2 = (+)_{[H]!=[Z]} K_q(R): the degree-2 codomain "
         "vanishes for odd n"});
    put(2, [&] { return ker_g2_1(p, q, a, catalog, opts); },
        {"H_2 = ker g2^1: BHS inclusions are split injective in the central "
         "direction, the coupling into H_1(A_n) (x) K_q(R) is absorbed by "
         "the central identity component, kernel = (+)_{[H]!=[Z]} K_q(R)"});
    put(1, [&] { return coker_g2_1(p, q, a); },
        {"H_1 = coker g2^1 = ((+)_{[H]!=[Z]} N_q) (+) T_1 (+) T_2"});
    put(0, [&] { return coker_g2_0(p, q, a); },
        {"H_0 = coker g2^0 = ((+)_{[H]!=[Z]} N_q) (+) K_q(R) (+) "
         "Cbar(K_q(R))"});
  }
  return r;
}

inline HomologyReport bredon_vc(const KTheoryProfile& p, int q,
                                const ArtinParameters& a,
                                const EngineOptions& opts = {}) {
  return bredon_vc(p, q, a, default_class_catalog(a), opts);
}

/// The E_2 page over a q-range: rows q, columns p in 0..3 (higher columns
/// vanish). Cells whose K-theory input is outside the declared range carry
/// per-cell errors instead of values.
inline HomologyReport e2_page(const KTheoryProfile& p, const ArtinParameters& a,
                              int q_min, int q_max, const ClassCatalog& catalog,
                              const EngineOptions& opts = {}) {
  if (q_min > q_max) throw input_error("empty q range");
  HomologyReport r;
  r.ring = p.name;
  r.n = a.n;
  detail::standard_notes(r, a);
  r.add_note("columns p >= 4 are identically zero");
  r.add_note("the equivariant spectral sequence collapses by the E_5 page at the latest");
  for (int q = q_min; q <= q_max; ++q) {
    HomologyReport row = bredon_vc(p, q, a, catalog, opts);
    for (auto& [key, cell] : row.cells) r.cells[key] = std::move(cell);
    for (const auto& w : row.warnings) r.add_warning(w);
  }
  return r;
}

inline HomologyReport e2_page(const KTheoryProfile& p, const ArtinParameters& a,
                              int q_min, int q_max, const EngineOptions& opts = {}) {
  return e2_page(p, a, q_min, q_max, default_class_catalog(a), opts);
}

/// For a regular coefficient ring and n > 2 the corner of the E_2 page already
/// gives K_0(RA_n) = K_0(R): the q = 0 row has H_0 = K_0(R) and every
/// negative-q row vanishes, so nothing below can move the corner.
struct CorollaryCheck {
  bool passed = false;
  GroupValue corner;
  HomologyReport report;
};

inline CorollaryCheck k0_corollary_check(const KTheoryProfile& p,
                                         const ArtinParameters& a) {
  if (!p.regular)
    throw invariant_error("K_0 corollary requires a regular coefficient ring");
  if (a.n <= 2) throw input_error("K_0 corollary requires n > 2");
  CorollaryCheck out;
  out.report = e2_page(p, a, -3, 0, default_class_catalog(a));
  out.report.add_note("corner check: E_2^{0,0} must equal K_0(R)");
  bool ok = true;
  const ReportCell* corner = out.report.cell(0, 0);
  if (!corner || !corner->value) {
    ok = false;
  } else {
    out.corner = *corner->value;
    if (!(out.corner == p.k(0))) ok = false;
  }
  for (int q = -3; q < 0; ++q)
    for (int deg = 0; deg <= 3; ++deg) {
      const ReportCell* c = out.report.cell(deg, q);
      if (!c || !c->value || !c->value->is_zero()) ok = false;
    }
  out.passed = ok;
  return out;
}

}  // namespace bredon
