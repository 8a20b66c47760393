// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances in code (all comparisons are
// exact canonical-form equality; there are no numeric tolerances to tune).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "bredon/oracle.hpp"
#include "bredon/report.hpp"

using namespace bredon;

namespace {

int g_failures = 0;

void report(int number, const std::string& description, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
            << description;
  if (!ok && !detail.empty()) std::cout << "  -- " << detail;
  std::cout << "\n";
  if (!ok) ++g_failures;
}

GroupValue v(const std::string& text) { return parse_group_value(text); }

struct RowCheck {
  int q;
  std::string h3, h2, h1, h0;
};

bool check_rows(const std::string& ring, const std::vector<int>& ns,
                const std::vector<RowCheck>& rows, std::string& detail,
                bool require_exact = true) {
  auto p = builtin_profile(ring);
  for (int n : ns) {
    auto params = ArtinParameters::for_index(n);
    for (const auto& row : rows) {
      HomologyReport r = bredon_vc(p, row.q, params);
      const std::string expected[4] = {row.h0, row.h1, row.h2, row.h3};
      for (int deg = 0; deg <= 3; ++deg) {
        const ReportCell* c = r.cell(deg, row.q);
        if (!c || !c->value) {
          detail = ring + " n=" + std::to_string(n) + " q=" + std::to_string(row.q) +
                   " H_" + std::to_string(deg) + ": missing value";
          return false;
        }
        if (require_exact && !c->value->is_exact()) {
          detail = ring + " n=" + std::to_string(n) + " q=" + std::to_string(row.q) +
                   " H_" + std::to_string(deg) + ": not exact: " + to_text(*c->value);
          return false;
        }
        if (!(*c->value == v(expected[deg]))) {
          detail = ring + " n=" + std::to_string(n) + " q=" + std::to_string(row.q) +
                   " H_" + std::to_string(deg) + ": got " + to_text(*c->value) +
                   ", expected " + expected[deg];
          return false;
        }
      }
    }
  }
  return true;
}

std::string run_cli(const std::string& args, int& status) {
  std::string cmd = std::string(BREDON_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int rc = pclose(pipe);
  status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

std::string read_golden(const std::string& name, bool& ok) {
  std::ifstream in(std::string(BREDON_GOLDEN_DIR) + "/" + name, std::ios::binary);
  if (!in.good()) {
    ok = false;
    return "";
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

// --- criterion bodies -------------------------------------------------------

static void criterion_1() {
  std::string detail;
  bool ok = check_rows("Z", {3, 4},
                       {{0, "(+)_{w} Z", "(+)_{w} Z", "0", "Z"},
                        {1, "(+)_{w} Z/2", "(+)_{w} Z/2", "(+)_{w} Z",
                         "(+)_{w} Z (+) Z/2"},
                        {2, "(+)_{w} Z/2", "(+)_{w} Z/2", "(+)_{w} Z/2",
                         "(+)_{w} Z/2"}},
                       detail);
  report(1, "integral coefficients, n in {3,4}, q = 0..2, exact equality", ok,
         detail);
}

static void criterion_2() {
  std::string detail;
  bool ok = check_rows("F2", {3, 4},
                       {{0, "(+)_{w} Z", "(+)_{w} Z", "0", "Z"},
                        {1, "0", "0", "(+)_{w} Z", "(+)_{w} Z"},
                        {2, "0", "0", "0", "0"},
                        {3, "(+)_{w} Z/3", "(+)_{w} Z/3", "0", "Z/3"}},
                       detail);
  // The q = 0 row must agree with the integral q = 0 row cell by cell.
  if (ok) {
    auto pz = builtin_profile("Z");
    auto pf = builtin_profile("F2");
    for (int n : {3, 4}) {
      auto params = ArtinParameters::for_index(n);
      HomologyReport rz = bredon_vc(pz, 0, params);
      HomologyReport rf = bredon_vc(pf, 0, params);
      for (int deg = 0; deg <= 3; ++deg)
        if (!(*rz.cell(deg, 0)->value == *rf.cell(deg, 0)->value)) {
          ok = false;
          detail = "q=0 rows of Z and F2 disagree at H_" + std::to_string(deg);
        }
    }
  }
  report(2, "field with two elements, q = 0..3, exact equality", ok, detail);
}

static void criterion_3() {
  std::string detail;
  bool ok = true;
  ok = ok && check_rows("Z[C2]", {3, 4},
                        {{0, "(+)_{w} Z", "(+)_{w} Z", "0", "Z"},
                         {1, "(+)_{w} Z/2", "(+)_{w} Z/2", "(+)_{w} Z",
                          "(+)_{w} Z (+) (Z/2)^2"}},
                        detail);
  ok = ok && check_rows("Z[C2xC2]", {3, 4},
                        {{0, "(+)_{w} Z", "(+)_{w} Z",
                          "(+)_{w} Z (+) (+)_{w} Z/2", "(+)_{w} Z (+) (+)_{w} Z/2"},
                         {1, "(+)_{w} Z/2", "(+)_{w} Z/2",
                          "(+)_{w} Z (+) (+)_{w} Z/2", "(+)_{w} Z (+) (+)_{w} Z/2"}},
                        detail);
  ok = ok && check_rows("Z[C4]", {3, 4},
                        {{0, "(+)_{w} Z", "(+)_{w} Z",
                          "(+)_{w} Z (+) (+)_{w} Z/2", "(+)_{w} Z (+) (+)_{w} Z/2"},
                         {1, "(+)_{w} Z/2 (+) (+)_{w} Z/4",
                          "(+)_{w} Z/2 (+) (+)_{w} Z/4",
                          "(+)_{w} Z (+) (+)_{w} Z/2",
                          "(+)_{w} Z (+) (+)_{w} Z/2 (+) Z/4"}},
                        detail);
  report(3,
         "group-ring coefficients (C2, C2xC2, C4), q in {0,1}, sandwiches "
         "resolve to exact values",
         ok, detail);
}

static void criterion_4() {
  bool ok = true;
  std::string detail;
  for (const char* ring : {"Z", "F2"})
    for (int n : {3, 4, 5, 6}) {
      CorollaryCheck c =
          k0_corollary_check(builtin_profile(ring), ArtinParameters::for_index(n));
      if (!c.passed || !(c.corner == v("Z"))) {
        ok = false;
        detail = std::string(ring) + " n=" + std::to_string(n);
      }
      for (const auto& [key, cell] : c.report.cells)
        if (key.second > 3) {
          ok = false;
          detail = "cell beyond column 3";
        }
    }
  report(4, "degree-0 corollary: corner = K_0(R), negative rows vanish, "
            "columns confined to 0..3",
         ok, detail);
}

static void criterion_5() {
  bool ok = true;
  std::string detail;
  for (const char* ring : {"Z", "F2", "Z[C2]"})
    for (int q : {0, 1})
      for (int n : {3, 4}) {
        StabilityResult s = stability_scan(builtin_profile(ring), q,
                                           ArtinParameters::for_index(n), 1, 8);
        for (const auto& c : s.cells)
          if (c.verdict != Verdict::matches) {
            ok = false;
            detail = std::string(ring) + " q=" + std::to_string(q) +
                     " n=" + std::to_string(n) + " " + c.name + ": " + c.detail;
          }
      }
  report(5, "oracle: SNF truncations k = 1..8 match closed forms; degree-0 "
            "map injective on every truncation",
         ok, detail);
}

static void criterion_6() {
  std::mt19937 rng(20250801);
  bool ok = true;
  std::string detail;

  // Smith normal form on 500 random matrices.
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_int_distribution<int> entry(-20, 20);
  for (int iter = 0; iter < 500 && ok; ++iter) {
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
    SnfResult snf = smith_normal_form(m, true);
    for (std::size_t i = 0; i + 1 < snf.d.size(); ++i) {
      if (snf.d[i] < 0 || (snf.d[i] != 0 && snf.d[i + 1] % snf.d[i] != 0) ||
          (snf.d[i] == 0 && snf.d[i + 1] != 0)) {
        ok = false;
        detail = "divisibility chain violated";
      }
    }
    IntMatrix diag(m.rows(), m.cols());
    for (std::size_t i = 0; i < snf.d.size(); ++i) diag.at(i, i) = snf.d[i];
    if (!((*snf.u) * m * (*snf.v) == diag)) {
      ok = false;
      detail = "u*m*v != diag(d)";
    }
    Int du = snf.u->determinant(), dv = snf.v->determinant();
    if (!((du == 1 || du == -1) && (dv == 1 || dv == -1))) {
      ok = false;
      detail = "transforms not unimodular";
    }
  }

  // 1000 enumeration checks of the SNF functor.
  static const std::uint64_t orders[] = {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 64};
  std::uniform_int_distribution<int> pick(0, 11);
  std::uniform_int_distribution<int> small_entry(-6, 6);
  std::uniform_int_distribution<std::size_t> small_dim(1, 3);
  int done = 0;
  while (done < 1000 && ok) {
    std::vector<std::pair<std::uint64_t, ExtNat>> raw;
    std::uint64_t total = 1;
    int terms = 1 + (pick(rng) % 3);
    for (int t = 0; t < terms; ++t) {
      std::uint64_t o = orders[pick(rng)];
      if (total * o <= 64) {
        raw.emplace_back(o, ExtNat(1));
        total *= o;
      }
    }
    if (raw.empty()) continue;
    AbelianGroup k = AbelianGroup::normalize(raw);
    std::size_t rows = small_dim(rng), cols = small_dim(rng);
    double dsize = 1, csize = 1;
    for (std::size_t c = 0; c < cols; ++c) dsize *= static_cast<double>(total);
    for (std::size_t r = 0; r < rows; ++r) csize *= static_cast<double>(total);
    if (dsize > (1 << 16) || csize > (1 << 16)) continue;
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = small_entry(rng);
    if (!finite_group_map_check(m, k)) {
      ok = false;
      detail = "enumeration disagreed with the SNF functor";
    }
    ++done;
  }

  // Tensor/Tor gcd identities on 200 random cyclic pairs.
  std::uniform_int_distribution<std::uint64_t> cyc(2, 60);
  for (int iter = 0; iter < 200 && ok; ++iter) {
    std::uint64_t a = cyc(rng), b = cyc(rng);
    AbelianGroup za = AbelianGroup::cyclic(a), zb = AbelianGroup::cyclic(b);
    AbelianGroup expected = AbelianGroup::cyclic(std::gcd(a, b) >= 2 ? std::gcd(a, b) : 0,
                                                 ExtNat(std::gcd(a, b) >= 2 ? 1 : 0));
    if (!(tensor(za, zb) == expected) || !(tor(za, zb) == expected)) {
      ok = false;
      detail = "gcd identity failed for " + std::to_string(a) + ", " + std::to_string(b);
    }
  }
  report(6, "algebra substrate: SNF properties (500), enumeration agreement "
            "(1000), gcd identities (200)",
         ok, detail);
}

static void criterion_7() {
  bool ok = true;
  std::string detail;
  for (const char* ring : {"Z", "F2", "Fq(3)", "Fq(4)", "Fq(8)"}) {
    auto p = builtin_profile(ring);
    for (int q = p.q_min; q <= p.q_max; ++q) {
      BhsDecomposition d = k_of_laurent(p, q);
      if (!(d.total == direct_sum(p.k(q), p.k(q - 1))) || !d.nil_pair.is_zero()) {
        ok = false;
        detail = std::string(ring) + " q=" + std::to_string(q) + ": Laurent split";
      }
      for (std::uint64_t n : {3, 5, 7}) {
        IntMatrix m(2, 1);
        m.at(0, 0) = 2;
        m.at(1, 0) = static_cast<long long>(n);
        GroupValue coker = matrix_ker_coker_value(m, p.k(q - 1)).second;
        if (!(coker == p.k(q - 1))) {
          ok = false;
          detail = std::string(ring) + " q=" + std::to_string(q) +
                   " n=" + std::to_string(n) + ": (2,n) cokernel";
        }
      }
    }
  }
  report(7, "Laurent extension splits K_q (+) K_{q-1} for regular rings; "
            "(2,n) cokernel is the identity functor",
         ok, detail);
}

static void criterion_8() {
  bool ok = true;
  std::string detail;
  struct GoldenCase {
    std::string args;
    std::string file;
  };
  std::vector<GoldenCase> cases = {
      {"compute --ring Z --n 3 --q 0..2", "compute_Z_n3_q0-2.txt"},
      {"compute --ring Z --n 4 --q 0..2", "compute_Z_n4_q0-2.txt"},
      {"compute --ring F2 --n 3 --q 0..3", "compute_F2_n3_q0-3.txt"},
      {"compute --ring F2 --n 4 --q 0..3", "compute_F2_n4_q0-3.txt"},
      {"compute --ring 'Z[C2]' --n 3 --q 0..1", "compute_ZC2_n3_q0-1.txt"},
      {"compute --ring 'Z[C2xC2]' --n 3 --q 0..1", "compute_ZC2C2_n3_q0-1.txt"},
      {"compute --ring 'Z[C4]' --n 3 --q 0..1", "compute_ZC4_n3_q0-1.txt"},
      {"e2page --ring Z --n 3 --q 0..2", "e2page_Z_n3_q0-2.txt"},
  };
  for (const auto& c : cases) {
    int s1 = 0, s2 = 0;
    std::string first = run_cli(c.args, s1);
    std::string second = run_cli(c.args, s2);
    if (first != second || s1 != s2) {
      ok = false;
      detail = "non-deterministic output for: " + c.args;
      break;
    }
    bool have = true;
    std::string expected = read_golden(c.file, have);
    if (!have) {
      ok = false;
      detail = "missing golden file " + c.file;
      break;
    }
    if (first != expected) {
      ok = false;
      detail = "output differs from golden " + c.file;
      break;
    }
    if (s1 != 0) {
      ok = false;
      detail = "nonzero exit for: " + c.args;
      break;
    }
  }
  report(8, "determinism: byte-identical reruns and golden transcripts", ok,
         detail);
}

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (g_failures) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
