#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "bredon/render.hpp"

using namespace bredon;

namespace {

AbelianGroup g(const std::string& text) { return parse_group(text); }

AbelianGroup random_small_group(std::mt19937& rng, bool allow_omega = false,
                                bool allow_symbolic = false) {
  std::uniform_int_distribution<int> n_terms(0, 3);
  std::uniform_int_distribution<int> order_pick(0, 5);
  std::uniform_int_distribution<int> mult_pick(1, 3);
  static const std::uint64_t orders[] = {0, 2, 3, 4, 8, 9};
  std::vector<std::pair<std::uint64_t, ExtNat>> raw;
  int terms = n_terms(rng);
  for (int i = 0; i < terms; ++i) {
    ExtNat m(static_cast<std::uint64_t>(mult_pick(rng)));
    if (allow_omega && mult_pick(rng) == 1) m = ExtNat::omega();
    raw.emplace_back(orders[order_pick(rng)], m);
  }
  AbelianGroup out = AbelianGroup::normalize(raw);
  if (allow_symbolic && mult_pick(rng) == 1)
    out = direct_sum(out, AbelianGroup::symbolic({"r", ExtNat(1), ExtNat::omega()}));
  return out;
}

}  // namespace

TEST_CASE("normalize: CRT splitting and absorption") {
  CHECK(AbelianGroup::normalize({{6, ExtNat(1)}}) == g("Z/2 (+) Z/3"));
  CHECK(AbelianGroup::normalize({{0, ExtNat::omega()}, {0, ExtNat(3)}}) ==
        g("(+)_{w} Z"));
  CHECK(AbelianGroup::normalize({{48, ExtNat(1)}}) == g("Z/16 (+) Z/3"));
  CHECK(AbelianGroup::normalize({{4, ExtNat(0)}}) == AbelianGroup::zero());
  CHECK_THROWS_AS(AbelianGroup::normalize({{1, ExtNat(1)}}), input_error);
}

TEST_CASE("normalize is idempotent on random inputs") {
  std::mt19937 rng(20240901);
  for (int i = 0; i < 200; ++i) {
    AbelianGroup a = random_small_group(rng, true, true);
    std::vector<std::pair<std::uint64_t, ExtNat>> raw;
    for (const auto& [o, m] : a.multiplicities()) raw.emplace_back(o.value, m);
    AbelianGroup again = AbelianGroup::normalize(raw);
    for (const auto& r : a.symbolic_ranks())
      again = direct_sum(again, AbelianGroup::symbolic(r));
    CHECK(again == a);
  }
}

TEST_CASE("direct sum: neutral element, commutative, associative") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    AbelianGroup a = random_small_group(rng, true, true);
    AbelianGroup b = random_small_group(rng, true);
    AbelianGroup c = random_small_group(rng);
    CHECK(direct_sum(a, AbelianGroup::zero()) == a);
    CHECK(direct_sum(a, b) == direct_sum(b, a));
    CHECK(direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c)));
  }
}

TEST_CASE("countable sums") {
  CHECK(countable_sum(g("Z (+) Z/2"), ExtNat::omega()) == g("(+)_{w} Z (+) (+)_{w} Z/2"));
  CHECK(countable_sum(g("Z/8 (+) Z^3"), ExtNat(0)) == g("0"));
  AbelianGroup with_rank =
      direct_sum(AbelianGroup::symbolic({"r", ExtNat(1), ExtNat::omega()}),
                 g("(+)_{w} Z/2"));
  CHECK(countable_sum(with_rank, ExtNat::omega()) == g("(+)_{w} Z (+) (+)_{w} Z/2"));
  // Finite repetition keeps the rank symbolic.
  AbelianGroup doubled = countable_sum(AbelianGroup::symbolic({"r", ExtNat(1), ExtNat::omega()}), ExtNat(2));
  CHECK(doubled.symbolic_ranks().size() == 2);
}

TEST_CASE("tensor products") {
  CHECK(tensor(g("Z/4"), g("Z/6")) == g("Z/2"));
  CHECK(tensor(g("Z^2"), g("Z/2")) == g("(Z/2)^2"));
  CHECK(tensor(g("(+)_{w} Z"), g("Z/3")) == g("(+)_{w} Z/3"));
  CHECK(tensor(g("0"), g("Z/5 (+) Z")) == g("0"));
  CHECK(tensor(g("Z^2"), g("Z^r[1..w]")).symbolic_ranks().size() == 2);
  CHECK_THROWS_AS(tensor(g("Z/2"), g("Z^r[1..w]")), unsupported_error);
}

TEST_CASE("tor") {
  CHECK(tor(g("Z"), g("Z/48 (+) Z^5")) == g("0"));
  CHECK(tor(g("Z/4"), g("Z/6")) == g("Z/2"));
  CHECK(tor(g("Z/2 (+) Z"), g("Z/2")) == g("Z/2"));
  CHECK(tor(g("Z^r[1..w]"), g("Z/2")) == g("0"));
}

TEST_CASE("tensor and tor are commutative and distribute over direct sums") {
  std::mt19937 rng(99);
  for (int i = 0; i < 150; ++i) {
    AbelianGroup a = random_small_group(rng);
    AbelianGroup b = random_small_group(rng);
    AbelianGroup c = random_small_group(rng);
    CHECK(tensor(a, b) == tensor(b, a));
    CHECK(tor(a, b) == tor(b, a));
    CHECK(tensor(a, direct_sum(b, c)) == direct_sum(tensor(a, b), tensor(a, c)));
    CHECK(tor(a, direct_sum(b, c)) == direct_sum(tor(a, b), tor(a, c)));
  }
}

TEST_CASE("n-torsion") {
  CHECK(n_torsion(g("Z/48"), 2) == g("Z/2"));
  CHECK(n_torsion(g("Z"), 5) == g("0"));
  CHECK(n_torsion(g("Z/2 (+) Z/4 (+) Z"), 2) == g("Z/2 (+) Z/2"));
  CHECK(n_torsion(g("Z^r[1..w]"), 6) == g("0"));
  CHECK(n_torsion(g("Z/9 (+) Z/3"), 12) == g("Z/3 (+) Z/3"));
}

TEST_CASE("n-torsion agrees with element enumeration on Z/2 (+) Z/4") {
  // All 8 torsion elements of Z/2 (+) Z/4 (+) Z, counting those killed by 2.
  int killed = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 4; ++y)
      if ((2 * x) % 2 == 0 && (2 * y) % 4 == 0) ++killed;
  CHECK(killed == 4);
  auto t = n_torsion(g("Z/2 (+) Z/4 (+) Z"), 2);
  CHECK(t.finite_order() == std::uint64_t{4});
  CHECK(t == g("Z/2 (+) Z/2"));
}

TEST_CASE("rendering round-trips through the parser") {
  std::mt19937 rng(4242);
  for (int i = 0; i < 300; ++i) {
    AbelianGroup a = random_small_group(rng, true, true);
    CHECK(parse_group(to_text(a)) == a);
  }
  CHECK(to_text(g("0")) == "0");
  CHECK(to_text(g("Z/16 (+) Z/3")) == "Z/16 (+) Z/3");
  CHECK(to_text(g("Z^r[1..w] (+) Z")) == "Z (+) Z^r[1..w]");
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_group("Z/1"), parse_error);
  CHECK_THROWS_AS(parse_group("Z/-3"), parse_error);
  CHECK_THROWS_AS(parse_group("Q"), parse_error);
  CHECK_THROWS_AS(parse_group("Z (+)"), parse_error);
  CHECK_THROWS_AS(parse_group(""), parse_error);
  CHECK_THROWS_AS(parse_group("Z + Z"), parse_error);
}

TEST_CASE("sandwich values resolve and validate") {
  GroupValue exact = GroupValue::exact(g("Z/2"));
  CHECK(exact.is_exact());
  // Equal bounds collapse.
  CHECK(GroupValue::bounded(g("Z/2"), g("Z/2")).is_exact());
  GroupValue b = GroupValue::bounded(g("0"), g("(+)_{w} Z/2"));
  CHECK_FALSE(b.is_exact());
  // Lower bound must embed into the upper bound.
  CHECK_THROWS_AS(GroupValue::bounded(g("Z/4"), g("Z/2")), invariant_error);
  CHECK_THROWS_AS(GroupValue::bounded(g("Z^2"), g("Z")), invariant_error);
  CHECK_NOTHROW(GroupValue::bounded(g("Z/2"), g("Z/4 (+) Z")));
}

TEST_CASE("sandwich resolution through direct sums") {
  GroupValue lhs = GroupValue::exact(g("(+)_{w} Z/2"));
  GroupValue rhs = GroupValue::bounded(g("0"), g("(+)_{w} Z/2"));
  GroupValue sum = direct_sum(lhs, rhs);
  CHECK(sum.is_exact());
  CHECK(sum.group() == g("(+)_{w} Z/2"));
}

TEST_CASE("no bounded value with equal bounds escapes any operation") {
  std::mt19937 rng(31337);
  for (int i = 0; i < 200; ++i) {
    AbelianGroup low = random_small_group(rng, true);
    AbelianGroup extra = random_small_group(rng, true);
    GroupValue v = GroupValue::bounded(low, direct_sum(low, extra));
    GroupValue w = countable_sum(direct_sum(v, GroupValue::exact(extra)), ExtNat::omega());
    if (!w.is_exact()) CHECK_FALSE(w.lower() == w.upper());
    GroupValue t = tensor(v, g("Z/6"));
    if (!t.is_exact()) CHECK_FALSE(t.lower() == t.upper());
    GroupValue nt = n_torsion(v, 4);
    if (!nt.is_exact()) CHECK_FALSE(nt.lower() == nt.upper());
  }
}
