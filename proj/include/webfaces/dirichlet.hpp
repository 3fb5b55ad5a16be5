#pragma once

// Hitting probabilities of the walk with steps (1,0), (-1,1), (0,-1) in the
// truncated quadrant Q_d = {x, y >= 0, x + y >= d}, cut off at x + y = L.
// Interior: x, y >= 1 and d < x + y < L. Boundary: the axes (x + y >= d), the
// diagonal x + y = d and the cap x + y = L, where the cap is absorbing with
// value 0 for hitting targets.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "webfaces/exactmath.hpp"

namespace webfaces {

class QdDomain {
public:
  /// Throws std::invalid_argument unless 0 <= d and L >= d + 3.
  QdDomain(int d, int L);

  int d() const { return d_; }
  int L() const { return L_; }
  int size() const { return size_; }
  /// Index of an interior point, or -1.
  int index(std::int64_t x, std::int64_t y) const;
  LatticePointEZ point(int i) const { return points_[i]; }
  bool is_interior(std::int64_t x, std::int64_t y) const { return index(x, y) >= 0; }
  /// Axis points with x + y >= d or diagonal points x + y = d, below the cap.
  bool is_true_boundary(std::int64_t x, std::int64_t y) const;
  bool is_cap(std::int64_t x, std::int64_t y) const { return x >= 0 && y >= 0 && x + y == L_; }

private:
  int d_;
  int L_;
  int size_ = 0;
  std::vector<int> row_start_;  // per x, index of (x, ymin(x))
  std::vector<int> ymin_;
  std::vector<LatticePointEZ> points_;
};

struct HittingTable {
  LatticePointEZ target;
  int d = 0;
  int L = 0;
  std::vector<double> values;  // per interior index
  std::shared_ptr<const std::vector<double>> cap;  // cap-hitting probability per interior index
  std::shared_ptr<const QdDomain> domain;

  /// Value at any point of Q_d below the cap: interior values, delta_target on
  /// the true boundary and 0 on the cap. Throws std::out_of_range elsewhere.
  double at(std::int64_t x, std::int64_t y) const;
  /// Probability of reaching the cap first from an interior start; the value
  /// at that start is then within this amount of the untruncated one.
  double residual_at(std::int64_t x, std::int64_t y) const;
};

/// Factorizes I - P on the interior once; every solve reuses the factors.
class HittingSolver {
public:
  HittingSolver(int d, int L);
  ~HittingSolver();
  HittingSolver(const HittingSolver&) = delete;
  HittingSolver& operator=(const HittingSolver&) = delete;

  const QdDomain& domain() const { return *domain_; }
  /// Throws std::invalid_argument unless a is on the true boundary.
  HittingTable solve(LatticePointEZ a) const;
  /// Exit distribution over true-boundary points from an interior start
  /// (one adjoint solve); the cap mass is omitted.
  std::map<LatticePointEZ, double> exit_distribution(LatticePointEZ start) const;
  double cap_residual(LatticePointEZ start) const;
  /// Max-norm of (I - P)h - b over the interior for the last kind of system.
  double max_residual(const HittingTable& t) const;

private:
  struct Impl;
  std::shared_ptr<const QdDomain> domain_;
  std::unique_ptr<Impl> impl_;
  std::shared_ptr<const std::vector<double>> cap_;
};

HittingTable solve_hitting(int d, int L, LatticePointEZ a);

/// Gauss-Seidel sweeps of h = P h + b, for cross-checking the direct solver
/// on small domains. Throws std::runtime_error without convergence.
std::vector<double> solve_hitting_iterative(const QdDomain& dom, LatticePointEZ a, double tol = 1e-12,
                                            int max_sweeps = 1000000);

enum class StartColor { Red, Blue };

struct ExtensionRatio {
  double ratio = 0.0;
  double tail_bound = 0.0;  // estimated contribution of t or s beyond T
  double residual = 0.0;    // largest cap-hitting probability among the starts used
  double denominator = 0.0;
  bool degenerate = false;  // denominator below 1e-12
  int T = 0;
  int L = 0;
  std::string convention;
};

struct RatioOptions {
  int T = -1;  // truncation of both sums; default d + 200
  int L = -1;  // cap; default 2T
};

/// Ratio of limiting densities of an extended face diagram to the original at
/// depth at least d. Start points sit d steps further out than (F_a, 1) and
/// (0, F_b + 1) (mirrored for a red start) so that they lie in Q_d; this is
/// recorded in the result's convention string.
ExtensionRatio extension_ratio(int d, int Fa, int Fb, StartColor color, const RatioOptions& opt = {});

/// Least-squares slope of log(ratio) against log(d). Throws
/// std::invalid_argument for fewer than two points or nonpositive values.
double decay_fit(const std::vector<std::pair<double, double>>& d_and_ratio);

}  // namespace webfaces
