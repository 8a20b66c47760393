#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bredon/engine.hpp"
#include "bredon/render.hpp"

namespace bredon {

// ---------------------------------------------------------------------------
// Exhaustive checking of the SNF functor on small finite groups.
// ---------------------------------------------------------------------------

namespace detail {

/// Cyclic factor orders of a finite group, expanded with multiplicity.
inline std::vector<std::uint64_t> cyclic_factors(const AbelianGroup& k,
                                                 std::uint64_t max_order) {
  if (k.has_symbolic())
    throw unsupported_error("enumeration: symbolic ranks have no elements to list");
  auto ord = k.finite_order();
  if (!ord || *ord > max_order)
    throw unsupported_error("enumeration: group order exceeds the supported bound");
  std::vector<std::uint64_t> out;
  for (const auto& [o, m] : k.multiplicities())
    for (std::uint64_t i = 0; i < m.finite_or_throw(); ++i) out.push_back(o.value);
  return out;
}

/// Count of elements x with d*x = 0 in the group with the given factors.
inline std::uint64_t analytic_torsion_count(const AbelianGroup& g, std::uint64_t d) {
  std::uint64_t total = 1;
  for (const auto& [o, m] : g.multiplicities()) {
    if (o.is_free()) continue;
    std::uint64_t per = std::gcd(d, o.value);
    for (std::uint64_t i = 0; i < m.finite_or_throw(); ++i) total *= per;
  }
  return total;
}

/// Mixed-radix enumeration state over factors^copies coordinates.
struct TupleSpace {
  std::vector<std::uint64_t> radix;  // factor order per coordinate
  std::uint64_t size = 1;

  TupleSpace(const std::vector<std::uint64_t>& factors, std::size_t copies) {
    for (std::size_t c = 0; c < copies; ++c)
      for (std::uint64_t f : factors) {
        radix.push_back(f);
        size *= f;
      }
  }

  std::vector<std::uint64_t> decode(std::uint64_t index) const {
    std::vector<std::uint64_t> x(radix.size());
    for (std::size_t i = 0; i < radix.size(); ++i) {
      x[i] = index % radix[i];
      index /= radix[i];
    }
    return x;
  }

  std::uint64_t encode(const std::vector<std::uint64_t>& x) const {
    std::uint64_t index = 0;
    for (std::size_t i = radix.size(); i-- > 0;) index = index * radix[i] + x[i];
    return index;
  }
};

}  // namespace detail

/// Brute-force validation of matrix_ker_coker: enumerate the map
/// K^cols -> K^rows on elements and compare kernel and cokernel with the SNF
/// functor answer. Finite abelian groups are isomorphic exactly when their
/// d-torsion element counts agree for every prime power d, so the comparison
/// is on counts (plus total order).
inline bool finite_group_map_check(const IntMatrix& m, const AbelianGroup& k) {
  auto factors = detail::cyclic_factors(k, 64);
  const std::size_t t = factors.size();
  detail::TupleSpace domain(factors, m.cols());
  detail::TupleSpace codomain(factors, m.rows());
  if (domain.size > (1u << 22) || codomain.size > (1u << 22))
    throw unsupported_error("enumeration: domain too large");

  std::vector<long long> entries(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      entries[i * m.cols() + j] = m.at(i, j).convert_to<long long>();

  auto apply = [&](const std::vector<std::uint64_t>& x) {
    std::vector<std::uint64_t> y(codomain.radix.size(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        long long e = entries[i * m.cols() + j];
        if (e == 0) continue;
        for (std::size_t f = 0; f < t; ++f) {
          std::uint64_t ord = factors[f];
          long long term = (e % static_cast<long long>(ord)) *
                           static_cast<long long>(x[j * t + f]);
          long long cur = static_cast<long long>(y[i * t + f]) + term;
          cur %= static_cast<long long>(ord);
          if (cur < 0) cur += static_cast<long long>(ord);
          y[i * t + f] = static_cast<std::uint64_t>(cur);
        }
      }
    return y;
  };

  auto killed_by = [](const std::vector<std::uint64_t>& x,
                      const std::vector<std::uint64_t>& radix, std::uint64_t d) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if ((x[i] * (d % radix[i])) % radix[i] != 0) return false;
    return true;
  };

  std::vector<std::uint64_t> interesting_d;
  for (std::uint64_t d = 2; d <= 64; ++d)
    if (is_prime_power(d)) interesting_d.push_back(d);

  // Kernel: enumerate the domain.
  std::uint64_t ker_size = 0;
  std::vector<std::uint64_t> ker_counts(interesting_d.size(), 0);
  std::set<std::uint64_t> image;
  for (std::uint64_t idx = 0; idx < domain.size; ++idx) {
    auto x = domain.decode(idx);
    auto y = apply(x);
    image.insert(codomain.encode(y));
    bool in_ker = true;
    for (std::uint64_t v : y)
      if (v != 0) in_ker = false;
    if (!in_ker) continue;
    ++ker_size;
    for (std::size_t di = 0; di < interesting_d.size(); ++di)
      if (killed_by(x, domain.radix, interesting_d[di])) ++ker_counts[di];
  }

  auto [ker_formula, coker_formula] = matrix_ker_coker(m, k);
  if (ker_formula.finite_order().value_or(0) != ker_size) return false;
  for (std::size_t di = 0; di < interesting_d.size(); ++di)
    if (detail::analytic_torsion_count(ker_formula, interesting_d[di]) !=
        ker_counts[di])
      return false;

  // Cokernel: count d-torsion of K^rows / image through membership of d*y in
  // the image subgroup.
  std::uint64_t coker_size = codomain.size / image.size();
  if (coker_formula.finite_order().value_or(0) != coker_size) return false;
  for (std::size_t di = 0; di < interesting_d.size(); ++di) {
    std::uint64_t d = interesting_d[di];
    std::uint64_t count = 0;
    for (std::uint64_t idx = 0; idx < codomain.size; ++idx) {
      auto y = codomain.decode(idx);
      for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = (y[i] * (d % codomain.radix[i])) % codomain.radix[i];
      if (image.count(codomain.encode(y))) ++count;
    }
    if (count / image.size() !=
        detail::analytic_torsion_count(coker_formula, d))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Truncations of the Mayer-Vietoris maps.
// ---------------------------------------------------------------------------

/// Explicit integer block matrices for the truncation of the Mayer-Vietoris
/// maps to the center class plus (k-1) non-central class instances, compiled
/// from the per-class component model. The blocks act on copies of K_q(R)
/// and of K_{q-1}(R) separately; undetermined components are zero-filled and
/// Nil blocks are excluded (both noted).
struct TruncatedMaps {
  struct Blocks {
    IntMatrix on_kq;    // acts on copies of K_q(R)
    IntMatrix on_kqm1;  // acts on copies of K_{q-1}(R)
  };
  Blocks g22, g21, g20;
  std::size_t k = 0;
  // Coefficient groups for evaluation; filled by the profile-taking overload.
  GroupValue kq_coefficient;
  GroupValue kqm1_coefficient;
  std::vector<std::string> notes;
};

namespace detail {

inline TruncatedMaps::Blocks compile_blocks(const GMapModel& model,
                                            const ArtinParameters& a) {
  using FKind = GClassComponent::FKind;
  model.validate();

  std::vector<std::size_t> offset;  // first domain column of each class
  std::size_t domain = 0;
  for (const auto& c : model.components) {
    offset.push_back(domain);
    domain += c.domain_rank();
  }
  bool chain_model = false;  // odd center in degree 0: two-vertex chain level
  for (const auto& c : model.components)
    if (c.f_kind == FKind::big_c_inclusion) chain_model = true;

  std::size_t kq_rows = model.fin_rank;
  std::size_t kqm1_rows = 0;
  for (const auto& c : model.components) {
    if (c.f_kind == FKind::bhs_inclusion) {
      kq_rows += 1;
      if (model.which != GDegree::g22) kqm1_rows += 1;
    } else if (c.f_kind == FKind::big_c_inclusion) {
      kq_rows += 2;  // the two vertex copies
      kqm1_rows += 2;
    }
  }

  TruncatedMaps::Blocks b;
  b.on_kq = IntMatrix(kq_rows, domain + (chain_model ? 1 : 0));
  b.on_kqm1 = IntMatrix(kqm1_rows, chain_model ? 1 : 0);
  std::size_t kq_row = 0, kqm1_row = 0;
  const std::size_t fq_col = domain;  // chain column, when present
  for (std::size_t ci = 0; ci < model.components.size(); ++ci) {
    const auto& c = model.components[ci];
    if (c.f_kind == FKind::bhs_inclusion) {
      for (std::size_t j = 0; j < c.domain_rank(); ++j)
        b.on_kq.at(kq_row, offset[ci] + j) = c.f_row.at(0, j);
      kq_row += 1;
      if (model.which != GDegree::g22) kqm1_row += 1;  // zero row, no columns hit
    } else if (c.f_kind == FKind::big_c_inclusion) {
      // The F-term is the cokernel of the two-vertex tree map; the class maps
      // into the identified K_q copy, lifted into the first vertex.
      for (std::size_t j = 0; j < c.domain_rank(); ++j)
        b.on_kq.at(kq_row, offset[ci] + j) = c.f_row.at(0, j);
      b.on_kq.at(kq_row, fq_col) = 1;
      b.on_kq.at(kq_row + 1, fq_col) = 1;
      kq_row += 2;
      b.on_kqm1.at(kqm1_row, 0) = 2;
      b.on_kqm1.at(kqm1_row + 1, 0) = static_cast<long long>(a.n);
      kqm1_row += 2;
    }
  }
  for (std::size_t ci = 0; ci < model.components.size(); ++ci) {
    const auto& c = model.components[ci];
    for (std::size_t i = 0; i < model.fin_rank; ++i)
      for (std::size_t j = 0; j < c.domain_rank(); ++j)
        b.on_kq.at(kq_row + i, offset[ci] + j) = c.fin_part.at(i, j);
  }
  return b;
}

}  // namespace detail

inline TruncatedMaps truncated_g_matrices(const ArtinParameters& a,
                                          const ClassCatalog& catalog,
                                          std::size_t k,
                                          const EngineOptions& opts = {}) {
  if (k < 1) throw input_error("truncation needs k >= 1 classes");
  if (!catalog.includes_center) throw invariant_error("center class required");
  catalog.validate(a);
  auto instances = expand_catalog(catalog, k - 1);
  TruncatedMaps out;
  out.k = k;
  out.notes = {
      "undetermined components are zero-filled",
      "Nil blocks excluded (the Frobenius action is opaque)",
  };
  out.g22 = detail::compile_blocks(g_map_model(GDegree::g22, a, instances, opts), a);
  out.g21 = detail::compile_blocks(g_map_model(GDegree::g21, a, instances, opts), a);
  out.g20 = detail::compile_blocks(g_map_model(GDegree::g20, a, instances, opts), a);
  if (!a.even) {
    out.notes.push_back(
        "odd center: the degree-1 F-term T1 (+) T2 receives the zero map and "
        "is added to cokernels separately");
    out.notes.push_back(
        "odd center: degree-0 F-term modeled as the cokernel of the "
        "two-vertex tree map (extra chain column)");
  }
  return out;
}

inline TruncatedMaps truncated_g_matrices(const KTheoryProfile& p, int q,
                                          const ArtinParameters& a,
                                          const ClassCatalog& catalog,
                                          std::size_t k,
                                          const EngineOptions& opts = {}) {
  TruncatedMaps out = truncated_g_matrices(a, catalog, k, opts);
  out.kq_coefficient = p.k(q);
  out.kqm1_coefficient = p.k(q - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Stability scan: truncated SNF answers against the restricted closed forms.
// ---------------------------------------------------------------------------

enum class Verdict { matches, mismatch, skipped };

struct StabilityCell {
  std::string name;
  Verdict verdict = Verdict::skipped;
  int first_failure_k = -1;
  std::string detail;
};

struct StabilityResult {
  std::vector<StabilityCell> cells;
  bool all_match() const {
    for (const auto& c : cells)
      if (c.verdict != Verdict::matches) return false;
    return true;
  }
};

namespace detail {

inline bool oracle_ready(const KTheoryProfile& p, int q, std::string& why) {
  for (int d : {q, q - 1}) {
    GroupValue v = p.k(d);
    if (!v.is_exact()) {
      why = "K[" + std::to_string(d) + "] is not exact";
      return false;
    }
    if (v.group().has_symbolic()) {
      why = "K[" + std::to_string(d) + "] carries a symbolic rank";
      return false;
    }
    for (const auto& [o, mm] : v.group().multiplicities())
      if (mm.is_omega()) {
        why = "K[" + std::to_string(d) + "] has w-multiplicities";
        return false;
      }
  }
  if (!p.nk(q).is_zero()) {
    why = "NK[" + std::to_string(q) + "] is nonzero; the oracle verifies the "
          "determined part only for Nil-free inputs";
    return false;
  }
  return true;
}

inline AbelianGroup power(const AbelianGroup& g, std::size_t n) {
  return countable_sum(g, ExtNat(n));
}

}  // namespace detail

/// For every truncation size k in [k_min, k_max], compares the SNF kernel and
/// cokernel of the explicit truncated matrices against the restriction of the
/// closed forms to k classes (default catalog), plus the monomorphism property
/// of the degree-0 map. Mismatches carry the first failing k and both values.
inline StabilityResult stability_scan(const KTheoryProfile& p, int q,
                                      const ArtinParameters& a, std::size_t k_min,
                                      std::size_t k_max,
                                      const EngineOptions& opts = {}) {
  StabilityResult result;
  result.cells = {{"H_3 (ker g2^2)", Verdict::matches, -1, ""},
                  {"H_2 (ker g2^1)", Verdict::matches, -1, ""},
                  {"H_1 (coker g2^1)", Verdict::matches, -1, ""},
                  {"H_0 (coker g2^0)", Verdict::matches, -1, ""},
                  {"mono (ker g2^0 = 0)", Verdict::matches, -1, ""}};
  std::string why;
  if (!detail::oracle_ready(p, q, why)) {
    for (auto& c : result.cells) {
      c.verdict = Verdict::skipped;
      c.detail = why;
    }
    return result;
  }
  if (k_min < 1 || k_min > k_max) throw input_error("bad truncation range");

  const ClassCatalog catalog = default_class_catalog(a);
  const AbelianGroup kq = p.k(q).group();
  const AbelianGroup kqm1 = p.k(q - 1).group();
  const AbelianGroup t1 =
      n_torsion(kqm1, static_cast<std::uint64_t>(a.n));  // T2 = 0 (Nil-free)

  auto record = [&](std::size_t cell, std::size_t k, const AbelianGroup& got,
                    const AbelianGroup& expected) {
    if (got == expected) return;
    auto& c = result.cells[cell];
    if (c.verdict == Verdict::mismatch) return;  // keep the first failure
    c.verdict = Verdict::mismatch;
    c.first_failure_k = static_cast<int>(k);
    c.detail = "k=" + std::to_string(k) + ": truncated=" + to_text(got) +
               " closed-form=" + to_text(expected);
  };

  for (std::size_t k = k_min; k <= k_max; ++k) {
    TruncatedMaps maps = truncated_g_matrices(a, catalog, k, opts);
    auto instances = expand_catalog(catalog, k - 1);

    auto eval = [&](const TruncatedMaps::Blocks& b) {
      auto [ker_q, coker_q] = matrix_ker_coker(b.on_kq, kq);
      auto [ker_q1, coker_q1] = matrix_ker_coker(b.on_kqm1, kqm1);
      return std::make_pair(direct_sum(ker_q, ker_q1),
                            direct_sum(coker_q, coker_q1));
    };

    // H_3 = ker g2^2.
    record(0, k, eval(maps.g22).first, detail::power(kq, k - 1));

    // H_2 = ker g2^1.
    AbelianGroup expected_h2;
    if (a.even) {
      std::vector<long long> coeffs;
      for (const auto& inst : instances)
        coeffs.push_back(opts.center_coupling_minus ? inst.ab[0] - inst.ab[1]
                                                    : inst.ab[0] + inst.ab[1]);
      IntMatrix functional(1, coeffs.size());
      for (std::size_t j = 0; j < coeffs.size(); ++j) functional.at(0, j) = coeffs[j];
      expected_h2 = matrix_ker_coker(functional, kq).first;
    } else {
      expected_h2 = detail::power(kq, k - 1);
    }
    record(1, k, eval(maps.g21).first, expected_h2);

    // H_1 = coker g2^1 (plus the central T1 term for odd n, which the matrix
    // model accounts separately).
    AbelianGroup got_h1 = eval(maps.g21).second;
    AbelianGroup expected_h1;
    if (a.even) {
      expected_h1 = detail::power(kqm1, k);
      if (k == 1) expected_h1 = direct_sum(expected_h1, kq);
    } else {
      got_h1 = direct_sum(got_h1, t1);
      expected_h1 = direct_sum(detail::power(kqm1, k - 1), t1);
    }
    record(2, k, got_h1, expected_h1);

    // H_0 = coker g2^0.
    AbelianGroup expected_h0;
    if (a.even) {
      expected_h0 = direct_sum(detail::power(kqm1, k), kq);
    } else {
      IntMatrix two_n(2, 1);
      two_n.at(0, 0) = 2;
      two_n.at(1, 0) = static_cast<long long>(a.n);
      expected_h0 = direct_sum(direct_sum(detail::power(kqm1, k - 1), kq),
                               matrix_ker_coker(two_n, kqm1).second);
    }
    record(3, k, eval(maps.g20).second, expected_h0);

    // Monomorphism of g2^0 on every truncation.
    record(4, k, eval(maps.g20).first, AbelianGroup::zero());
  }
  return result;
}

}  // namespace bredon
