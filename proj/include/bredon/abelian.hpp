#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bredon/errors.hpp"
#include "bredon/extnat.hpp"

namespace bredon {

/// Prime factorization by trial division. Orders handled by this library are
/// desk-scale (cyclic factors like 48, 240, q^i - 1 for small prime powers q).
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  if (n < 2) throw error("factorize: argument must be >= 2");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_prime_power(std::uint64_t n) {
  return n >= 2 && factorize(n).size() == 1;
}

/// p-adic valuation of n (n >= 1).
inline unsigned p_valuation(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Order of a cyclic summand in canonical form: 0 denotes Z, otherwise a prime
/// power p^k. The order 1 and composite non-prime-powers are rejected; the
/// latter must be CRT-split during normalization.
struct CyclicOrder {
  std::uint64_t value = 0;

  CyclicOrder() = default;
  explicit CyclicOrder(std::uint64_t v) : value(v) {
    if (v == 1) throw input_error("cyclic order 1 is not a summand");
    if (v >= 2 && !is_prime_power(v))
      throw input_error("cyclic order " + std::to_string(v) +
                        " is not a prime power; normalize() splits composites");
  }

  static CyclicOrder integers() { return CyclicOrder(); }

  bool is_free() const { return value == 0; }
  std::uint64_t prime() const { return factorize(value)[0].first; }

  friend auto operator<=>(const CyclicOrder&, const CyclicOrder&) = default;
};

/// A free summand Z^name of unknown rank, constrained to [lower, upper] with
/// 1 <= lower <= upper <= w. Such ranks never resolve to numbers; they only
/// disappear by absorption into an w-fold free summand.
struct SymbolicRank {
  std::string name;
  ExtNat lower = ExtNat(1);
  ExtNat upper = ExtNat::omega();

  SymbolicRank() = default;
  SymbolicRank(std::string n, ExtNat lo, ExtNat hi)
      : name(std::move(n)), lower(lo), upper(hi) {
    if (lower < ExtNat(1) || upper < lower)
      throw input_error("symbolic rank bounds must satisfy 1 <= lower <= upper");
  }

  friend bool operator==(const SymbolicRank& a, const SymbolicRank& b) {
    return a.name == b.name && a.lower == b.lower && a.upper == b.upper;
  }
  friend bool operator<(const SymbolicRank& a, const SymbolicRank& b) {
    if (a.name != b.name) return a.name < b.name;
    if (!(a.lower == b.lower)) return a.lower < b.lower;
    return a.upper < b.upper;
  }
};

/// A countably generated abelian group in canonical primary decomposition:
/// a multiplicity (possibly w) for Z and for each prime power p^k, plus a
/// multiset of symbolic free ranks. Equality of canonical forms is the
/// isomorphism test for this representation class.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  static AbelianGroup zero() { return AbelianGroup(); }

  static AbelianGroup free(ExtNat rank) {
    AbelianGroup g;
    g.add_term(0, rank);
    g.canonicalize();
    return g;
  }

  /// A multiple of one cyclic group. order = 0 gives Z^mult; order >= 2 is
  /// CRT-split into prime powers.
  static AbelianGroup cyclic(std::uint64_t order, ExtNat mult = ExtNat(1)) {
    AbelianGroup g;
    g.add_term(order, mult);
    g.canonicalize();
    return g;
  }

  static AbelianGroup symbolic(SymbolicRank r) {
    AbelianGroup g;
    g.ranks_.push_back(std::move(r));
    g.canonicalize();
    return g;
  }

  /// Canonicalize a raw list of (order, multiplicity) pairs. Orders must be 0
  /// or >= 2; composites are CRT-split, zero multiplicities dropped, and the
  /// w-absorption rule applied.
  static AbelianGroup normalize(
      const std::vector<std::pair<std::uint64_t, ExtNat>>& raw) {
    AbelianGroup g;
    for (const auto& [order, mult] : raw) g.add_term(order, mult);
    g.canonicalize();
    return g;
  }

  const std::map<CyclicOrder, ExtNat>& multiplicities() const { return mult_; }
  const std::vector<SymbolicRank>& symbolic_ranks() const { return ranks_; }

  bool is_zero() const { return mult_.empty() && ranks_.empty(); }
  bool has_symbolic() const { return !ranks_.empty(); }

  ExtNat multiplicity(CyclicOrder o) const {
    auto it = mult_.find(o);
    return it == mult_.end() ? ExtNat(0) : it->second;
  }

  ExtNat z_multiplicity() const { return multiplicity(CyclicOrder::integers()); }

  bool is_torsion_free() const {
    return mult_.empty() ||
           (mult_.size() == 1 && mult_.begin()->first.is_free());
  }

  /// Number of elements when the group is finite, nullopt otherwise
  /// (free part, symbolic part or w-multiplicity present).
  std::optional<std::uint64_t> finite_order() const {
    if (!ranks_.empty()) return std::nullopt;
    std::uint64_t total = 1;
    for (const auto& [o, m] : mult_) {
      if (o.is_free() || m.is_omega()) return std::nullopt;
      for (std::uint64_t i = 0; i < m.finite_or_throw(); ++i) {
        if (total > UINT64_MAX / o.value) return std::nullopt;
        total *= o.value;
      }
    }
    return total;
  }

  /// Count (as ExtNat) of cyclic factors of order p^j with j >= m.
  /// This is the embeddability witness used for sandwich bounds.
  ExtNat torsion_count_at_least(std::uint64_t p, unsigned m) const {
    ExtNat total(0);
    for (const auto& [o, mm] : mult_) {
      if (o.is_free()) continue;
      if (o.prime() == p && p_valuation(o.value, p) >= m) total += mm;
    }
    return total;
  }

  /// Least possible free rank (symbolic ranks at their lower bounds).
  ExtNat free_rank_min() const {
    ExtNat total = z_multiplicity();
    for (const auto& r : ranks_) total += r.lower;
    return total;
  }

  /// Greatest possible free rank (symbolic ranks at their upper bounds).
  ExtNat free_rank_max() const {
    ExtNat total = z_multiplicity();
    for (const auto& r : ranks_) total += r.upper;
    return total;
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.mult_ == b.mult_ && a.ranks_ == b.ranks_;
  }

  friend AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    AbelianGroup g = a;
    for (const auto& [o, m] : b.mult_) g.mult_[o] += m;
    g.ranks_.insert(g.ranks_.end(), b.ranks_.begin(), b.ranks_.end());
    g.canonicalize();
    return g;
  }

  /// kappa-fold direct sum: every multiplicity is multiplied by kappa. A
  /// symbolic rank r with 1 <= r repeated w times collapses to an exact
  /// w-fold Z summand; repeated a finite number of times it stays symbolic.
  friend AbelianGroup countable_sum(const AbelianGroup& a, ExtNat kappa) {
    AbelianGroup g;
    if (kappa.is_zero()) return g;
    for (const auto& [o, m] : a.mult_) g.mult_[o] = m * kappa;
    if (kappa.is_omega()) {
      if (!a.ranks_.empty())
        g.mult_[CyclicOrder::integers()] += ExtNat::omega();
    } else {
      if (!a.ranks_.empty() && kappa > ExtNat(4096))
        throw unsupported_error(
            "countable_sum: finite repetition of symbolic ranks beyond desk scale");
      for (std::uint64_t i = 0; i < kappa.finite_or_throw(); ++i)
        g.ranks_.insert(g.ranks_.end(), a.ranks_.begin(), a.ranks_.end());
    }
    g.canonicalize();
    return g;
  }

  /// Tensor product over Z, extended bilinearly from
  /// Z (x) Z = Z, Z (x) Z/n = Z/n, Z/m (x) Z/n = Z/gcd(m,n).
  friend AbelianGroup tensor(const AbelianGroup& a, const AbelianGroup& b) {
    AbelianGroup g;
    for (const auto& [oa, ma] : a.mult_)
      for (const auto& [ob, mb] : b.mult_) {
        std::uint64_t o = tensor_order(oa, ob);
        if (o == 1) continue;
        g.add_term(o, ma * mb);
      }
    // Symbolic free ranks tensor with the concrete free part of the other
    // side; other combinations would need symbolic torsion multiplicities or
    // rank products, which this representation does not house.
    tensor_symbolic_into(g, a, b);
    tensor_symbolic_into(g, b, a);
    if (!a.ranks_.empty() && !b.ranks_.empty())
      throw unsupported_error("tensor: product of two symbolic ranks");
    g.canonicalize();
    return g;
  }

  /// Tor_1^Z, extended bilinearly from Tor(Z, -) = 0 and
  /// Tor(Z/m, Z/n) = Z/gcd(m,n). Free (including symbolic) parts contribute 0.
  friend AbelianGroup tor(const AbelianGroup& a, const AbelianGroup& b) {
    AbelianGroup g;
    for (const auto& [oa, ma] : a.mult_)
      for (const auto& [ob, mb] : b.mult_) {
        if (oa.is_free() || ob.is_free()) continue;
        std::uint64_t o = tensor_order(oa, ob);
        if (o <= 1) continue;
        g.add_term(o, ma * mb);
      }
    g.canonicalize();
    return g;
  }

  /// Subgroup of elements killed by n: the n-torsion of Z/p^k is
  /// Z/p^min(k, v_p(n)); free and symbolic parts have none.
  friend AbelianGroup n_torsion(const AbelianGroup& a, std::uint64_t n) {
    if (n < 1) throw input_error("n_torsion: n must be >= 1");
    AbelianGroup g;
    for (const auto& [o, m] : a.mult_) {
      if (o.is_free()) continue;
      std::uint64_t p = o.prime();
      unsigned k = p_valuation(o.value, p);
      unsigned j = std::min(k, p_valuation(n, p));
      if (j == 0) continue;
      std::uint64_t pj = 1;
      for (unsigned i = 0; i < j; ++i) pj *= p;
      g.add_term(pj, m);
    }
    g.canonicalize();
    return g;
  }

 private:
  static std::uint64_t tensor_order(CyclicOrder a, CyclicOrder b) {
    if (a.is_free() && b.is_free()) return 0;
    if (a.is_free()) return b.value;
    if (b.is_free()) return a.value;
    return std::gcd(a.value, b.value);
  }

  static void tensor_symbolic_into(AbelianGroup& g, const AbelianGroup& ranks_side,
                                   const AbelianGroup& other) {
    if (ranks_side.ranks_.empty()) return;
    for (const auto& [o, m] : other.mult_) {
      if (o.is_free()) continue;
      if (!m.is_zero())
        throw unsupported_error(
            "tensor: symbolic rank against torsion is not representable");
    }
    ExtNat zmult = other.z_multiplicity();
    if (zmult.is_zero()) return;
    if (zmult.is_omega()) {
      g.mult_[CyclicOrder::integers()] += ExtNat::omega();
      return;
    }
    if (zmult > ExtNat(4096))
      throw unsupported_error(
          "tensor: finite repetition of symbolic ranks beyond desk scale");
    for (std::uint64_t i = 0; i < zmult.finite_or_throw(); ++i)
      g.ranks_.insert(g.ranks_.end(), ranks_side.ranks_.begin(),
                      ranks_side.ranks_.end());
  }

  void add_term(std::uint64_t order, ExtNat mult) {
    if (mult.is_zero()) return;
    if (order == 0) {
      mult_[CyclicOrder::integers()] += mult;
      return;
    }
    if (order == 1) throw input_error("normalize: order 1 rejected");
    for (const auto& [p, k] : factorize(order)) {
      std::uint64_t pk = 1;
      for (unsigned i = 0; i < k; ++i) pk *= p;
      mult_[CyclicOrder(pk)] += mult;
    }
  }

  void canonicalize() {
    for (auto it = mult_.begin(); it != mult_.end();) {
      if (it->second.is_zero())
        it = mult_.erase(it);
      else
        ++it;
    }
    // w-absorption: an w-fold Z summand swallows every symbolic rank.
    auto z = mult_.find(CyclicOrder::integers());
    if (z != mult_.end() && z->second.is_omega()) ranks_.clear();
    std::sort(ranks_.begin(), ranks_.end());
  }

  std::map<CyclicOrder, ExtNat> mult_;
  std::vector<SymbolicRank> ranks_;
};

}  // namespace bredon
