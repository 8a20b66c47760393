#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "bredon/matrix.hpp"
#include "bredon/render.hpp"

using namespace bredon;

namespace {

AbelianGroup g(const std::string& text) { return parse_group(text); }

IntMatrix random_matrix(std::mt19937& rng, std::size_t max_dim, int max_entry) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<int> entry(-max_entry, max_entry);
  IntMatrix m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
  return m;
}

IntMatrix diagonal_embedding(const SnfResult& snf, std::size_t rows, std::size_t cols) {
  IntMatrix d(rows, cols);
  for (std::size_t i = 0; i < snf.d.size(); ++i) d.at(i, i) = snf.d[i];
  return d;
}

}  // namespace

TEST_CASE("snf on the pinned examples") {
  for (long long n : {3, 5, 9, 17}) {
    IntMatrix m(2, 1);
    m.at(0, 0) = 2;
    m.at(1, 0) = n;
    auto snf = smith_normal_form(m);
    REQUIRE(snf.d.size() == 1);
    CHECK(snf.d[0] == 1);  // gcd(2, odd) = 1
  }
  auto id = smith_normal_form(IntMatrix::identity(4));
  CHECK(id.d == std::vector<Int>{1, 1, 1, 1});
  auto diag = smith_normal_form(IntMatrix{{2, 0}, {0, 4}});
  CHECK(diag.d == std::vector<Int>{2, 4});
  auto swapped = smith_normal_form(IntMatrix{{4, 0}, {0, 2}});
  CHECK(swapped.d == std::vector<Int>{2, 4});
  auto empty = smith_normal_form(IntMatrix(0, 0));
  CHECK(empty.d.empty());
}

TEST_CASE("snf: divisibility chain, diagonal transform, unimodularity") {
  std::mt19937 rng(123);
  for (int iter = 0; iter < 500; ++iter) {
    IntMatrix m = random_matrix(rng, 6, 20);
    auto snf = smith_normal_form(m, true);
    REQUIRE(snf.d.size() == std::min(m.rows(), m.cols()));
    for (std::size_t i = 0; i + 1 < snf.d.size(); ++i) {
      CHECK(snf.d[i] >= 0);
      if (snf.d[i] != 0) CHECK(snf.d[i + 1] % snf.d[i] == 0);
      if (snf.d[i] == 0) CHECK(snf.d[i + 1] == 0);
    }
    REQUIRE(snf.u.has_value());
    REQUIRE(snf.v.has_value());
    CHECK((*snf.u) * m * (*snf.v) == diagonal_embedding(snf, m.rows(), m.cols()));
    Int du = snf.u->determinant();
    Int dv = snf.v->determinant();
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
  }
}

TEST_CASE("kernel and cokernel through the SNF functor") {
  SECTION("coprime column on Z") {
    IntMatrix m(2, 1);
    m.at(0, 0) = 2;
    m.at(1, 0) = 9;
    auto [ker, coker] = matrix_ker_coker(m, g("Z"));
    CHECK(ker == g("0"));
    CHECK(coker == g("Z"));
  }
  SECTION("identity is exact") {
    auto [ker, coker] = matrix_ker_coker(IntMatrix::identity(3), g("Z/8 (+) Z"));
    CHECK(ker == g("0"));
    CHECK(coker == g("0"));
  }
  SECTION("multiplication by 2 on Z/48") {
    auto [ker, coker] = matrix_ker_coker(IntMatrix{{2}}, g("Z/48"));
    CHECK(ker == g("Z/2"));
    CHECK(coker == g("Z/2"));
  }
  SECTION("zero map") {
    auto [ker, coker] = matrix_ker_coker(IntMatrix(1, 1), g("Z/6"));
    CHECK(ker == g("Z/2 (+) Z/3"));
    CHECK(coker == g("Z/2 (+) Z/3"));
  }
  SECTION("symbolic ranks are rejected") {
    CHECK_THROWS_AS(matrix_ker_coker(IntMatrix{{2}}, g("Z^r[1..w]")),
                    unsupported_error);
  }
}

TEST_CASE("rank equation over Z") {
  std::mt19937 rng(2024);
  for (int iter = 0; iter < 200; ++iter) {
    IntMatrix m = random_matrix(rng, 5, 9);
    auto snf = smith_normal_form(m);
    std::size_t rank = 0;
    for (const auto& d : snf.d)
      if (d != 0) ++rank;
    auto [ker, coker] = matrix_ker_coker(m, g("Z"));
    CHECK(ker.free_rank_min() == ExtNat(m.cols() - rank));
    CHECK(coker.free_rank_min() == ExtNat(m.rows() - rank));
    CHECK(ker.is_torsion_free());
  }
}

TEST_CASE("value-level wrapper: bounds and symbolic free parts") {
  SECTION("bounded coefficients map boundwise") {
    GroupValue k = GroupValue::bounded(g("0"), g("(+)_{w} Z/2"));
    auto [ker, coker] = matrix_ker_coker_value(IntMatrix{{2}}, k);
    CHECK(ker == GroupValue::bounded(g("0"), g("(+)_{w} Z/2")));
    CHECK(coker == GroupValue::bounded(g("0"), g("(+)_{w} Z/2")));
  }
  SECTION("coprime pair keeps a symbolic rank") {
    IntMatrix m(2, 1);
    m.at(0, 0) = 2;
    m.at(1, 0) = 3;
    GroupValue k = GroupValue::exact(g("Z^r[1..w]"));
    auto [ker, coker] = matrix_ker_coker_value(m, k);
    CHECK(ker == GroupValue::exact(g("0")));
    CHECK(coker == GroupValue::exact(g("Z^r[1..w]")));
  }
  SECTION("functional kernel keeps a symbolic rank") {
    IntMatrix functional{{1, 1}};
    auto [ker, coker] = matrix_ker_coker_value(functional, GroupValue::exact(g("Z^r[1..w]")));
    CHECK(ker == GroupValue::exact(g("Z^r[1..w]")));
    CHECK(coker == GroupValue::exact(g("0")));
  }
  SECTION("torsion of a symbolic rank is refused") {
    CHECK_THROWS_AS(matrix_ker_coker_value(IntMatrix{{2}}, GroupValue::exact(g("Z^r[1..w]"))),
                    unsupported_error);
  }
}

TEST_CASE("determinant sanity") {
  CHECK(IntMatrix::identity(5).determinant() == 1);
  CHECK(IntMatrix{{2, 1}, {1, 1}}.determinant() == 1);
  CHECK(IntMatrix{{2, 4}, {1, 2}}.determinant() == 0);
  CHECK(IntMatrix{{0, 1}, {1, 0}}.determinant() == -1);
}
