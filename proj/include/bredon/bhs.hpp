#pragma once

#include <cstdint>

#include "bredon/ktheory.hpp"
#include "bredon/matrix.hpp"

namespace bredon {

/// K_q(R[Z]) split as K_q(R) (+) K_{q-1}(R) (+) NK_q(R)^2, natural in R.
struct BhsDecomposition {
  GroupValue kq;
  GroupValue kq_minus_1;
  GroupValue nil_pair;
  GroupValue total;
};

inline BhsDecomposition k_of_laurent(const KTheoryProfile& p, int q) {
  BhsDecomposition d;
  d.kq = p.k(q);
  d.kq_minus_1 = p.k(q - 1);
  d.nil_pair = countable_sum(p.nk(q), ExtNat(2));
  d.total = direct_sum(direct_sum(d.kq, d.kq_minus_1), d.nil_pair);
  return d;
}

/// Kernel of the transfer-admitting endomorphism of K_q(R[Z]) induced by
/// multiplication by n on Z: an exact part T1 (the n-torsion of K_{q-1}(R))
/// and a sandwich part T2 between 0 and the n-torsion of NK_q(R)^2. T2 is
/// exact 0 whenever the bounds coincide, in particular for vanishing Nil.
struct IndKernel {
  GroupValue t1;
  GroupValue t2;
  std::uint64_t n = 0;
};

inline IndKernel ind_kernel(const KTheoryProfile& p, int q, std::uint64_t n) {
  if (n < 2) throw input_error("ind_kernel: n must be >= 2");
  IndKernel out;
  out.n = n;
  out.t1 = n_torsion(p.k(q - 1), n);
  GroupValue nil2 = countable_sum(p.nk(q), ExtNat(2));
  out.t2 = GroupValue::bounded(AbelianGroup::zero(), n_torsion(nil2, n).upper());
  return out;
}

/// The class term N_q^[H] = K_{q-1}(R) (+) NK_q(R) (+) NK_q(R) contributed by
/// one commensurability class.
inline GroupValue n_q_class_term(const KTheoryProfile& p, int q) {
  return direct_sum(p.k(q - 1), countable_sum(p.nk(q), ExtNat(2)));
}

/// C(K_q(R)): the cokernel of K_q(R[Z]) -> K_q(R[Z])^2 with components induced
/// by multiplication by 2 and by odd n on Z. On the K_q summand the map is the
/// diagonal, leaving one copy of K_q(R); on K_{q-1} it is x -> (2x, nx), whose
/// cokernel is exact by the SNF functor (gcd(2, n) = 1); the action on the Nil
/// part is opaque, so that piece is carried as a sandwich below NK_q(R)^4.
inline GroupValue big_c_bar(const KTheoryProfile& p, int q, std::uint64_t n) {
  if (n % 2 == 0 || n < 3) throw input_error("C(K_q(R)): n must be odd and >= 3");
  IntMatrix two_n(2, 1);
  two_n.at(0, 0) = 2;
  two_n.at(1, 0) = static_cast<long long>(n);
  GroupValue middle = matrix_ker_coker_value(two_n, p.k(q - 1)).second;
  GroupValue nil_quotient = GroupValue::bounded(
      AbelianGroup::zero(), countable_sum(p.nk(q), ExtNat(4)).upper());
  return direct_sum(middle, nil_quotient);
}

inline GroupValue big_c(const KTheoryProfile& p, int q, std::uint64_t n) {
  return direct_sum(p.k(q), big_c_bar(p, q, n));
}

}  // namespace bredon
