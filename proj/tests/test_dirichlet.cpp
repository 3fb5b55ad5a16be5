#include <doctest.h>

#include <cmath>
#include <random>

#include "webfaces/dirichlet.hpp"
#include "webfaces/exactmath.hpp"

using namespace webfaces;

TEST_CASE("domain indexing") {
  const QdDomain D(3, 12);
  CHECK(D.index(1, 2) == -1);  // on the diagonal x + y = 3
  CHECK(D.index(1, 3) >= 0);
  CHECK(D.index(0, 5) == -1);
  CHECK(D.index(5, 7) == -1);  // cap
  CHECK(D.is_true_boundary(0, 5));
  CHECK(D.is_true_boundary(2, 1));
  CHECK_FALSE(D.is_true_boundary(0, 2));
  CHECK(D.is_cap(4, 8));
  for (int i = 0; i < D.size(); ++i) CHECK(D.index(D.point(i).x, D.point(i).y) == i);
  CHECK_THROWS_AS(QdDomain(-1, 10), std::invalid_argument);
  CHECK_THROWS_AS(QdDomain(5, 7), std::invalid_argument);
}

TEST_CASE("d = 0 solve reproduces the exact hitting probabilities") {
  HittingSolver s(0, 200);
  for (int k = 2; k <= 6; ++k) {
    const HittingTable t = s.solve({0, k});
    CHECK(s.max_residual(t) < 1e-12);
    for (int x = 1; x <= 4; ++x)
      for (int y = 1; y <= 4; ++y) {
        CHECK(std::abs(t.at(x, y) - h_point_numeric({0, k}, {x, y})) < 1e-6);
        CHECK(t.residual_at(x, y) < 1e-4);
      }
    const HittingTable u = s.solve({k, 0});
    CHECK(std::abs(u.at(1, 1) - h_point_numeric({k, 0}, {1, 1})) < 1e-6);
  }
  CHECK_THROWS_AS(s.solve({1, 1}), std::invalid_argument);
}

TEST_CASE("boundary values of a table") {
  const HittingTable t = solve_hitting(2, 30, {0, 4});
  CHECK(t.at(0, 4) == 1.0);
  CHECK(t.at(0, 5) == 0.0);
  CHECK(t.at(1, 1) == 0.0);
  CHECK(t.at(10, 20) == 0.0);
  CHECK_THROWS_AS(t.at(0, 1), std::out_of_range);
}

TEST_CASE("Gauss-Seidel sweeps agree with the direct solver") {
  for (int d : {0, 2, 5}) {
    const QdDomain D(d, d + 25);
    HittingSolver s(d, d + 25);
    for (const LatticePointEZ a : {LatticePointEZ{0, d + 2}, LatticePointEZ{d + 1, 0}, LatticePointEZ{1, d - 1}}) {
      if (!D.is_true_boundary(a.x, a.y)) continue;
      const auto it = solve_hitting_iterative(D, a);
      const HittingTable t = s.solve(a);
      double worst = 0;
      for (int i = 0; i < D.size(); ++i) worst = std::max(worst, std::abs(it[i] - t.values[i]));
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("exit distribution: mass balance and consistency with forward solves") {
  HittingSolver s(3, 60);
  const LatticePointEZ start{4, 2};
  const auto dist = s.exit_distribution(start);
  double total = 0;
  for (const auto& [a, p] : dist) {
    CHECK(p >= -1e-15);
    total += p;
  }
  CHECK(total + s.cap_residual(start) == doctest::Approx(1.0).epsilon(1e-10));
  for (const LatticePointEZ a : {LatticePointEZ{0, 5}, LatticePointEZ{6, 0}, LatticePointEZ{2, 1}}) {
    CHECK(dist.at(a) == doctest::Approx(s.solve(a).at(start.x, start.y)).epsilon(1e-9));
  }
  const auto point = s.exit_distribution({0, 7});
  CHECK(point.size() == 1);
  CHECK(point.at({0, 7}) == 1.0);
}

TEST_CASE("property: hitting probabilities are harmonic and bounded") {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = static_cast<int>(gen() % 6);
    const int L = d + 20 + static_cast<int>(gen() % 20);
    HittingSolver s(d, L);
    const QdDomain& D = s.domain();
    const int k = d + 1 + static_cast<int>(gen() % 5);
    const HittingTable t = s.solve(gen() % 2 ? LatticePointEZ{0, k} : LatticePointEZ{k, 0});
    for (int i = 0; i < D.size(); ++i) {
      const LatticePointEZ p = D.point(i);
      const double avg = (t.at(p.x + 1, p.y) + t.at(p.x - 1, p.y + 1) + t.at(p.x, p.y - 1)) / 3;
      CHECK(t.values[i] == doctest::Approx(avg).epsilon(1e-10));
      CHECK(t.values[i] >= -1e-14);
      CHECK(t.values[i] + t.residual_at(p.x, p.y) <= 1 + 1e-12);
    }
  }
}

TEST_CASE("extension ratio: fields, conventions and both colours") {
  RatioOptions opt;
  opt.T = 60;
  const ExtensionRatio b = extension_ratio(2, 1, 1, StartColor::Blue, opt);
  CHECK(b.T == 60);
  CHECK(b.L == 120);
  CHECK(b.ratio > 0);
  CHECK(b.ratio < 1);
  CHECK_FALSE(b.degenerate);
  CHECK(b.tail_bound >= 0);
  CHECK(b.convention.find("Fa+d") != std::string::npos);
  // The walk is not symmetric under swapping coordinates, so the colours differ.
  const ExtensionRatio r = extension_ratio(2, 1, 1, StartColor::Red, opt);
  CHECK(r.ratio > 0);
  CHECK(r.ratio != doctest::Approx(b.ratio));
  // Larger truncation only adds nonnegative terms.
  opt.T = 90;
  CHECK(extension_ratio(2, 1, 1, StartColor::Blue, opt).ratio >= b.ratio - 1e-12);
  CHECK_THROWS_AS(extension_ratio(2, 0, 1, StartColor::Blue), std::invalid_argument);
}

TEST_CASE("decay_fit recovers a power law") {
  std::vector<std::pair<double, double>> pts;
  for (double d : {3.0, 4.0, 6.0, 8.0, 12.0}) pts.emplace_back(d, 7.5 * std::pow(d, -2.0));
  CHECK(decay_fit(pts) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK_THROWS_AS(decay_fit({{1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(decay_fit({{1.0, 1.0}, {2.0, 0.0}}), std::invalid_argument);
}
