#pragma once

#include <utility>

#include "bredon/abelian.hpp"
#include "bredon/errors.hpp"

namespace bredon {

/// Checks the embeddability witness of a sandwich pair: for every prime p and
/// every m >= 1, the count of cyclic factors of order p^j with j >= m in
/// `lower` must not exceed the count in `upper`, and the free rank of `lower`
/// must not exceed that of `upper`.
inline bool embeds(const AbelianGroup& lower, const AbelianGroup& upper) {
  for (const auto& [o, m] : lower.multiplicities()) {
    if (o.is_free()) continue;
    std::uint64_t p = o.prime();
    unsigned kmax = p_valuation(o.value, p);
    for (unsigned j = 1; j <= kmax; ++j)
      if (upper.torsion_count_at_least(p, j) < lower.torsion_count_at_least(p, j))
        return false;
  }
  return lower.free_rank_min() <= upper.free_rank_max();
}

/// Either an exact abelian group or a sandwich Bounded{lower, upper} standing
/// for a group only known between two bounds. A sandwich whose bounds agree in
/// canonical form is always stored as Exact; no operation lets a degenerate
/// sandwich escape.
class GroupValue {
 public:
  GroupValue() = default;  // exact 0

  static GroupValue exact(AbelianGroup g) {
    GroupValue v;
    v.lower_ = std::move(g);
    v.upper_ = v.lower_;
    v.exact_ = true;
    return v;
  }

  static GroupValue bounded(AbelianGroup lower, AbelianGroup upper) {
    if (lower == upper) return exact(std::move(lower));
    if (!embeds(lower, upper))
      throw invariant_error("bounded value: lower bound does not embed in upper bound");
    GroupValue v;
    v.lower_ = std::move(lower);
    v.upper_ = std::move(upper);
    v.exact_ = false;
    return v;
  }

  static GroupValue zero() { return GroupValue(); }

  bool is_exact() const { return exact_; }
  bool is_zero() const { return exact_ && lower_.is_zero(); }

  const AbelianGroup& lower() const { return lower_; }
  const AbelianGroup& upper() const { return upper_; }

  /// The exact group; throws if only bounds are known.
  const AbelianGroup& group() const {
    if (!exact_) throw error("group value is only known between bounds");
    return lower_;
  }

  friend bool operator==(const GroupValue& a, const GroupValue& b) {
    return a.exact_ == b.exact_ && a.lower_ == b.lower_ && a.upper_ == b.upper_;
  }

  friend GroupValue direct_sum(const GroupValue& a, const GroupValue& b) {
    return bounded(direct_sum(a.lower_, b.lower_), direct_sum(a.upper_, b.upper_));
  }

  friend GroupValue countable_sum(const GroupValue& a, ExtNat kappa) {
    return bounded(countable_sum(a.lower_, kappa), countable_sum(a.upper_, kappa));
  }

  friend GroupValue tensor(const GroupValue& a, const AbelianGroup& m) {
    return bounded(tensor(a.lower_, m), tensor(a.upper_, m));
  }

  friend GroupValue tor(const GroupValue& a, const AbelianGroup& m) {
    return bounded(tor(a.lower_, m), tor(a.upper_, m));
  }

  friend GroupValue n_torsion(const GroupValue& a, std::uint64_t n) {
    return bounded(n_torsion(a.lower_, n), n_torsion(a.upper_, n));
  }

 private:
  AbelianGroup lower_;
  AbelianGroup upper_;
  bool exact_ = true;
};

inline GroupValue exact_value(AbelianGroup g) { return GroupValue::exact(std::move(g)); }

}  // namespace bredon
