#include "webfaces/sampler.hpp"

#include <stdexcept>
#include <string>

namespace webfaces {

LatticePoint step_vector(Step s) {
  switch (s) {
    case Step::S1: return {1, 0};
    case Step::S2: return {-1, 1};
    case Step::S3: return {0, -1};
  }
  return {0, 0};
}

LatticePath LatticePath::from_steps(std::vector<Step> steps) {
  if (steps.size() % 3 != 0)
    throw std::invalid_argument("LatticePath: length must be a multiple of 3");
  LatticePath p;
  p.coords_.reserve(steps.size() + 1);
  LatticePoint at{0, 0};
  p.coords_.push_back(at);
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const LatticePoint v = step_vector(steps[t]);
    at.a += v.a;
    at.b += v.b;
    if (at.a < 0 || at.b < 0)
      throw std::invalid_argument("LatticePath: leaves the quadrant at step " +
                                  std::to_string(t + 1));
    p.coords_.push_back(at);
  }
  if (at.a != 0 || at.b != 0)
    throw std::invalid_argument("LatticePath: does not return to the origin");
  p.steps_ = std::move(steps);
  return p;
}

bool Tableau3xN::is_standard() const {
  const std::size_t n = rows[0].size();
  if (rows[1].size() != n || rows[2].size() != n) return false;
  std::vector<bool> seen(3 * n + 1, false);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < n; ++c) {
      const int v = row[c];
      if (v < 1 || v > static_cast<int>(3 * n) || seen[v]) return false;
      seen[v] = true;
      if (c > 0 && row[c - 1] >= v) return false;
    }
  }
  for (std::size_t c = 0; c < n; ++c)
    if (!(rows[0][c] < rows[1][c] && rows[1][c] < rows[2][c])) return false;
  return true;
}

Tableau3xN path_to_tableau(const LatticePath& p) {
  Tableau3xN t;
  int counts[3] = {0, 0, 0};
  const auto steps = p.steps();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const int r = static_cast<int>(steps[i]);
    ++counts[r];
    if (counts[1] > counts[0] || counts[2] > counts[1])
      throw std::logic_error("path_to_tableau: quadrant violation at step " +
                             std::to_string(i + 1));
    t.rows[r].push_back(static_cast<int>(i) + 1);
  }
  return t;
}

LatticePath tableau_to_path(const Tableau3xN& t) {
  if (!t.is_standard()) throw std::invalid_argument("tableau_to_path: tableau is not standard");
  std::vector<Step> steps(3 * t.rows[0].size());
  for (int r = 0; r < 3; ++r)
    for (int v : t.rows[r]) steps[v - 1] = static_cast<Step>(r);
  return LatticePath::from_steps(std::move(steps));
}

CompletionTable::CompletionTable(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("CompletionTable: n must be nonnegative");
  counts_.assign(static_cast<std::size_t>(3 * n + 1) * (n + 1) * (n + 1), BigInt(0));
  counts_[index(0, 0, 0)] = 1;
  for (int r = 1; r <= 3 * n; ++r) {
    for (int x = 0; x <= n; ++x) {
      for (int y = 0; y <= n; ++y) {
        BigInt c = count(x + 1, y, r - 1);
        if (x >= 1) c += count(x - 1, y + 1, r - 1);
        if (y >= 1) c += count(x, y - 1, r - 1);
        counts_[index(x, y, r)] = std::move(c);
      }
    }
  }
}

std::size_t CompletionTable::index(int x, int y, int r) const {
  return (static_cast<std::size_t>(r) * (n_ + 1) + x) * (n_ + 1) + y;
}

const BigInt& CompletionTable::count(int x, int y, int r) const {
  if (x < 0 || y < 0 || x > n_ || y > n_ || r < 0 || r > 3 * n_) return zero_;
  return counts_[index(x, y, r)];
}

BigInt count_webs(int n) {
  if (n < 0) throw std::invalid_argument("count_webs: n must be nonnegative");
  if (n == 0) return 1;
  return CompletionTable(n).count(0, 0, 3 * n);
}

namespace {

// Shape data of the complementary tableau after t steps at (x, y):
// l = (mu1 + 2, mu2 + 1, mu3) where mu is the 180-degree rotation of
// (n,n,n)/lambda. Returns false for states no valid path can occupy.
bool shifted_parts(int n, int t, LatticePoint at, std::array<std::int64_t, 3>& l) {
  const int rem = t - at.a - 2 * at.b;
  if (at.a < 0 || at.b < 0 || rem < 0 || rem % 3 != 0) return false;
  const int lambda3 = rem / 3;
  const int lambda2 = lambda3 + at.b;
  const int lambda1 = lambda2 + at.a;
  if (lambda1 > n) return false;
  l = {n - lambda3 + 2, n - lambda2 + 1, n - lambda1};
  return true;
}

std::int64_t vandermonde(const std::array<std::int64_t, 3>& l) {
  return (l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2]);
}

}  // namespace

BigInt completion_count_closed_form(int n, int t, LatticePoint at) {
  std::array<std::int64_t, 3> l{};
  if (t < 0 || t > 3 * n || !shifted_parts(n, t, at, l)) return 0;
  auto factorial = [](std::int64_t k) {
    BigInt f = 1;
    for (std::int64_t i = 2; i <= k; ++i) f *= i;
    return f;
  };
  BigInt num = factorial(3 * n - t) * BigInt(vandermonde(l));
  return num / (factorial(l[0]) * factorial(l[1]) * factorial(l[2]));
}

std::array<std::uint64_t, 3> successor_weights(int n, int t, LatticePoint at) {
  std::array<std::int64_t, 3> l{};
  std::array<std::uint64_t, 3> w{0, 0, 0};
  if (t >= 3 * n || !shifted_parts(n, t, at, l)) return w;
  // Removing a box from part i of the complementary shape: S3 -> part 0,
  // S2 -> part 1, S1 -> part 2.
  for (int i = 0; i < 3; ++i) {
    auto m = l;
    m[i] -= 1;
    const std::int64_t v = vandermonde(m);
    if (l[i] <= 0 || v <= 0) continue;
    const int step = 2 - i;
    w[step] = static_cast<std::uint64_t>(l[i]) * static_cast<std::uint64_t>(v);
  }
  return w;
}

LatticePath sample_path(int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_path(n, rng);
}

LatticePath sample_path(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_path: n must be positive");
  if (n > 10000) throw std::invalid_argument("sample_path: n above 10000 overflows the weights");
  std::vector<Step> steps;
  steps.reserve(3 * n);
  LatticePoint at{0, 0};
  for (int t = 0; t < 3 * n; ++t) {
    const auto w = successor_weights(n, t, at);
    std::uint64_t u = rng.below(w[0] + w[1] + w[2]);
    int s = 0;
    while (u >= w[s]) u -= w[s++];
    steps.push_back(static_cast<Step>(s));
    const LatticePoint v = step_vector(static_cast<Step>(s));
    at.a += v.a;
    at.b += v.b;
  }
  return LatticePath::from_steps(std::move(steps));
}

LatticePath sample_path_dp(const CompletionTable& table, Rng& rng) {
  const int n = table.n();
  if (n < 1) throw std::invalid_argument("sample_path_dp: n must be positive");
  std::vector<Step> steps;
  steps.reserve(3 * n);
  LatticePoint at{0, 0};
  for (int r = 3 * n; r > 0; --r) {
    BigInt u = rng.below(table.count(at.a, at.b, r));
    for (int s = 0; s < 3; ++s) {
      const LatticePoint v = step_vector(static_cast<Step>(s));
      const BigInt& c = table.count(at.a + v.a, at.b + v.b, r - 1);
      if (u < c) {
        steps.push_back(static_cast<Step>(s));
        at.a += v.a;
        at.b += v.b;
        break;
      }
      u -= c;
    }
  }
  return LatticePath::from_steps(std::move(steps));
}

std::vector<LatticePath> enumerate_paths(int n) {
  if (n < 0) throw std::invalid_argument("enumerate_paths: n must be nonnegative");
  std::vector<LatticePath> out;
  std::vector<Step> steps;
  const int len = 3 * n;
  // Depth-first; prune states that cannot return to the origin in time.
  auto rec = [&](auto&& self, int a, int b) -> void {
    const int t = static_cast<int>(steps.size());
    if (t == len) {
      if (a == 0 && b == 0) out.push_back(LatticePath::from_steps(steps));
      return;
    }
    if (2 * a + b > len - t) return;
    for (int s = 0; s < 3; ++s) {
      const LatticePoint v = step_vector(static_cast<Step>(s));
      if (a + v.a < 0 || b + v.b < 0) continue;
      steps.push_back(static_cast<Step>(s));
      self(self, a + v.a, b + v.b);
      steps.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace webfaces
