#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "webfaces/rng.hpp"
#include "webfaces/sampler.hpp"

using namespace webfaces;

namespace {

BigInt factorial(int k) {
  BigInt f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

BigInt three_d_catalan(int n) { return 2 * factorial(3 * n) / (factorial(n + 2) * factorial(n + 1) * factorial(n)); }

// Fill 1..3n into a 3 x n shape row by row, keeping rows and columns increasing.
void fill_syt(int n, int next, std::array<std::vector<int>, 3>& rows, std::vector<Tableau3xN>& out) {
  if (next > 3 * n) {
    out.push_back({rows});
    return;
  }
  for (int r = 0; r < 3; ++r) {
    const std::size_t len = rows[r].size();
    if (static_cast<int>(len) == n) continue;
    if (r > 0 && rows[r - 1].size() <= len) continue;
    rows[r].push_back(next);
    fill_syt(n, next + 1, rows, out);
    rows[r].pop_back();
  }
}

std::vector<Tableau3xN> brute_force_syt(int n) {
  std::array<std::vector<int>, 3> rows;
  std::vector<Tableau3xN> out;
  fill_syt(n, 1, rows, out);
  return out;
}

// Independent validity rule: prefix counts of S1 >= S2 >= S3 and equal totals.
bool valid_steps(const std::vector<Step>& s) {
  int c[3] = {0, 0, 0};
  for (Step st : s) {
    ++c[static_cast<int>(st)];
    if (c[1] > c[0] || c[2] > c[1]) return false;
  }
  return c[0] == c[1] && c[1] == c[2];
}

std::string key(const LatticePath& p) {
  std::string k;
  for (Step s : p.steps()) k += static_cast<char>('1' + static_cast<int>(s));
  return k;
}

}  // namespace

TEST_CASE("count_webs matches the product formula for n <= 8") {
  for (int n = 0; n <= 8; ++n) CHECK(count_webs(n) == three_d_catalan(n));
  CHECK(count_webs(3) == 42);
}

TEST_CASE("enumeration agrees with a brute-force tableau filler") {
  const int expected[] = {1, 1, 5, 42, 462};
  for (int n = 1; n <= 4; ++n) {
    const auto paths = enumerate_paths(n);
    const auto tabs = brute_force_syt(n);
    CHECK(static_cast<int>(paths.size()) == expected[n]);
    CHECK(paths.size() == tabs.size());
    std::set<std::string> from_paths, from_tabs;
    for (const auto& p : paths) from_paths.insert(key(p));
    for (const auto& t : tabs) from_tabs.insert(key(tableau_to_path(t)));
    CHECK(from_paths == from_tabs);
    CHECK(std::is_sorted(paths.begin(), paths.end(), [](const LatticePath& a, const LatticePath& b) {
      return key(a) < key(b);
    }));
  }
}

TEST_CASE("n = 1 path is the single column tableau") {
  const LatticePath p = sample_path(1, 7);
  const Tableau3xN t = path_to_tableau(p);
  CHECK(t.rows[0] == std::vector<int>{1});
  CHECK(t.rows[1] == std::vector<int>{2});
  CHECK(t.rows[2] == std::vector<int>{3});
}

TEST_CASE("closed-form completion counts equal the DP table") {
  for (int n = 1; n <= 6; ++n) {
    const CompletionTable table(n);
    for (const LatticePath& p : enumerate_paths(n)) {
      const auto c = p.coords();
      for (int t = 0; t <= 3 * n; ++t)
        REQUIRE(completion_count_closed_form(n, t, c[t]) == table.count(c[t].a, c[t].b, 3 * n - t));
    }
  }
}

TEST_CASE("successor weights are proportional to completion counts") {
  const int n = 7;
  const CompletionTable table(n);
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const LatticePath p = sample_path(n, gen());
    const auto c = p.coords();
    for (int t = 0; t < 3 * n; ++t) {
      const auto w = successor_weights(n, t, c[t]);
      BigInt counts[3];
      for (int s = 0; s < 3; ++s) {
        const LatticePoint v = step_vector(static_cast<Step>(s));
        const LatticePoint q{c[t].a + v.a, c[t].b + v.b};
        counts[s] = (q.a < 0 || q.b < 0) ? BigInt(0) : table.count(q.a, q.b, 3 * n - t - 1);
      }
      // w[i] / w[j] == counts[i] / counts[j]
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(BigInt(w[i]) * counts[j] == BigInt(w[j]) * counts[i]);
    }
  }
}

TEST_CASE("sampler is uniform on the 42 webs at n = 3 (chi-square, frozen seed)") {
  const auto paths = enumerate_paths(3);
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < paths.size(); ++i) index[key(paths[i])] = static_cast<int>(i);
  const int per_cell = 1000;
  const int total = per_cell * 42;
  std::vector<int> hook(42, 0), dp(42, 0);
  const CompletionTable table(3);
  Rng rng(99);
  for (int i = 0; i < total; ++i) {
    ++hook[index.at(key(sample_path(3, stream_seed(5, i))))];
    ++dp[index.at(key(sample_path_dp(table, rng)))];
  }
  auto chi2 = [&](const std::vector<int>& h) {
    double s = 0;
    for (int c : h) s += (c - per_cell) * (c - per_cell) / double(per_cell);
    return s;
  };
  // 41 degrees of freedom; 0.999 quantile is about 74.7.
  CHECK(chi2(hook) < 74.7);
  CHECK(chi2(dp) < 74.7);
}

TEST_CASE("sampling is deterministic in the seed") {
  CHECK(sample_path(50, 1234) == sample_path(50, 1234));
  CHECK_FALSE(sample_path(50, 1234) == sample_path(50, 1235));
  CHECK(stream_seed(1, 2) != stream_seed(2, 1));
}

TEST_CASE("property: random paths round-trip through tableaux") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 60);
    const LatticePath p = sample_path(n, gen());
    REQUIRE(p.length() == static_cast<std::size_t>(3 * n));
    const std::vector<Step> steps(p.steps().begin(), p.steps().end());
    CHECK(valid_steps(steps));
    for (const LatticePoint& c : p.coords()) CHECK((c.a >= 0 && c.b >= 0));
    CHECK(p.coords().back() == LatticePoint{0, 0});
    const Tableau3xN t = path_to_tableau(p);
    CHECK(t.is_standard());
    CHECK(tableau_to_path(t) == p);
  }
}

TEST_CASE("property: from_steps accepts exactly the valid sequences") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 8);
    const LatticePath base = sample_path(n, gen());
    std::vector<Step> s(base.steps().begin(), base.steps().end());
    // Mutate: swap two random positions, sometimes overwrite one.
    std::swap(s[gen() % s.size()], s[gen() % s.size()]);
    if (gen() % 4 == 0) s[gen() % s.size()] = static_cast<Step>(gen() % 3);
    if (valid_steps(s)) CHECK_NOTHROW(LatticePath::from_steps(s));
    else CHECK_THROWS_AS(LatticePath::from_steps(s), std::invalid_argument);
  }
}

TEST_CASE("tableau_to_path rejects non-standard fillings") {
  Tableau3xN bad;
  bad.rows = {std::vector<int>{1, 3}, {2, 5}, {4, 6}};
  CHECK(bad.is_standard());
  bad.rows = {std::vector<int>{2, 3}, {1, 5}, {4, 6}};
  CHECK_FALSE(bad.is_standard());
  CHECK_THROWS_AS(tableau_to_path(bad), std::invalid_argument);
}
