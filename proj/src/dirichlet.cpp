#include "webfaces/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace webfaces {

namespace {

constexpr std::array<LatticePointEZ, 3> kSteps{kV1, kV2, kV3};

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

}  // namespace

QdDomain::QdDomain(int d, int L) : d_(d), L_(L) {
  if (d < 0 || L < d + 3) throw std::invalid_argument("QdDomain: need d >= 0 and L >= d + 3");
  row_start_.assign(L_, -1);
  ymin_.assign(L_, 0);
  for (int x = 1; x <= L_ - 2; ++x) {
    const int lo = std::max(1, d_ + 1 - x);
    const int hi = L_ - 1 - x;
    ymin_[x] = lo;
    if (hi < lo) continue;
    row_start_[x] = size_;
    for (int y = lo; y <= hi; ++y) points_.push_back({x, y});
    size_ += hi - lo + 1;
  }
}

int QdDomain::index(std::int64_t x, std::int64_t y) const {
  if (x < 1 || y < 1 || x + y <= d_ || x + y >= L_) return -1;
  return row_start_[x] + static_cast<int>(y - ymin_[x]);
}

bool QdDomain::is_true_boundary(std::int64_t x, std::int64_t y) const {
  if (x < 0 || y < 0 || x + y >= L_) return false;
  if (x + y == d_) return true;
  return (x == 0 || y == 0) && x + y >= d_;
}

double HittingTable::at(std::int64_t x, std::int64_t y) const {
  if (const int i = domain->index(x, y); i >= 0) return values[i];
  if (domain->is_true_boundary(x, y)) return LatticePointEZ{x, y} == target ? 1.0 : 0.0;
  if (domain->is_cap(x, y)) return 0.0;
  throw std::out_of_range("HittingTable::at: point outside Q_d");
}

double HittingTable::residual_at(std::int64_t x, std::int64_t y) const {
  const int i = domain->index(x, y);
  return i >= 0 ? (*cap)[i] : 0.0;
}

struct HittingSolver::Impl {
  SpMat A;
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
};

HittingSolver::HittingSolver(int d, int L)
    : domain_(std::make_shared<QdDomain>(d, L)), impl_(std::make_unique<Impl>()) {
  const QdDomain& D = *domain_;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(4 * static_cast<std::size_t>(D.size()));
  Vec cap_rhs = Vec::Zero(D.size());
  for (int i = 0; i < D.size(); ++i) {
    const LatticePointEZ p = D.point(i);
    trip.emplace_back(i, i, 1.0);
    for (const LatticePointEZ v : kSteps) {
      const LatticePointEZ q = p + v;
      if (const int j = D.index(q.x, q.y); j >= 0) trip.emplace_back(i, j, -1.0 / 3.0);
      else if (D.is_cap(q.x, q.y)) cap_rhs[i] += 1.0 / 3.0;
    }
  }
  impl_->A.resize(D.size(), D.size());
  impl_->A.setFromTriplets(trip.begin(), trip.end());
  impl_->A.makeCompressed();
  impl_->lu.analyzePattern(impl_->A);
  impl_->lu.factorize(impl_->A);
  if (impl_->lu.info() != Eigen::Success) throw std::runtime_error("HittingSolver: factorization failed");
  Vec c = impl_->lu.solve(cap_rhs);
  cap_ = std::make_shared<const std::vector<double>>(c.data(), c.data() + c.size());
}

HittingSolver::~HittingSolver() = default;

namespace {

Vec target_rhs(const QdDomain& D, LatticePointEZ a) {
  Vec b = Vec::Zero(D.size());
  // Only interior points one step before a can jump onto it.
  for (const LatticePointEZ v : kSteps) {
    const LatticePointEZ p = a - v;
    if (const int i = D.index(p.x, p.y); i >= 0) b[i] += 1.0 / 3.0;
  }
  return b;
}

}  // namespace

HittingTable HittingSolver::solve(LatticePointEZ a) const {
  if (!domain_->is_true_boundary(a.x, a.y)) throw std::invalid_argument("solve_hitting: target not on the boundary of Q_d");
  Vec h = impl_->lu.solve(target_rhs(*domain_, a));
  HittingTable t;
  t.target = a;
  t.d = domain_->d();
  t.L = domain_->L();
  t.values.assign(h.data(), h.data() + h.size());
  t.cap = cap_;
  t.domain = domain_;
  return t;
}

std::map<LatticePointEZ, double> HittingSolver::exit_distribution(LatticePointEZ start) const {
  const QdDomain& D = *domain_;
  std::map<LatticePointEZ, double> out;
  const int s = D.index(start.x, start.y);
  if (s < 0) {
    if (!D.is_true_boundary(start.x, start.y)) throw std::invalid_argument("exit_distribution: start outside Q_d");
    out[start] = 1.0;
    return out;
  }
  Vec e = Vec::Zero(D.size());
  e[s] = 1.0;
  // Row s of (I - P)^{-1}: expected visits to each interior point.
  Vec visits = impl_->lu.transpose().solve(e);
  for (int i = 0; i < D.size(); ++i) {
    const LatticePointEZ p = D.point(i);
    for (const LatticePointEZ v : kSteps) {
      const LatticePointEZ q = p + v;
      if (D.is_true_boundary(q.x, q.y)) out[q] += visits[i] / 3.0;
    }
  }
  return out;
}

double HittingSolver::cap_residual(LatticePointEZ start) const {
  const int i = domain_->index(start.x, start.y);
  return i >= 0 ? (*cap_)[i] : 0.0;
}

double HittingSolver::max_residual(const HittingTable& t) const {
  Vec h = Eigen::Map<const Vec>(t.values.data(), static_cast<Eigen::Index>(t.values.size()));
  Vec r = impl_->A * h - target_rhs(*domain_, t.target);
  return r.cwiseAbs().maxCoeff();
}

HittingTable solve_hitting(int d, int L, LatticePointEZ a) {
  HittingSolver s(d, L);
  return s.solve(a);
}

std::vector<double> solve_hitting_iterative(const QdDomain& D, LatticePointEZ a, double tol, int max_sweeps) {
  if (!D.is_true_boundary(a.x, a.y)) throw std::invalid_argument("solve_hitting_iterative: target not on the boundary");
  std::vector<double> h(D.size(), 0.0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (int i = 0; i < D.size(); ++i) {
      const LatticePointEZ p = D.point(i);
      double s = 0.0;
      for (const LatticePointEZ v : kSteps) {
        const LatticePointEZ q = p + v;
        if (const int j = D.index(q.x, q.y); j >= 0) s += h[j];
        else if (q == a) s += 1.0;
      }
      s /= 3.0;
      change = std::max(change, std::abs(s - h[i]));
      h[i] = s;
    }
    if (change < tol) return h;
  }
  throw std::runtime_error("solve_hitting_iterative: no convergence");
}

ExtensionRatio extension_ratio(int d, int Fa, int Fb, StartColor color, const RatioOptions& opt) {
  if (d < 0 || Fa < 1 || Fb < 1) throw std::invalid_argument("extension_ratio: need d >= 0, Fa, Fb >= 1");
  ExtensionRatio r;
  r.T = opt.T > 0 ? opt.T : d + 200;
  r.L = opt.L > 0 ? opt.L : 2 * r.T;
  if (r.T <= d + 1 || r.L <= r.T + 2) throw std::invalid_argument("extension_ratio: need T > d + 1 and L > T + 2");
  const bool blue = color == StartColor::Blue;
  r.convention = blue ? "start (Fa+d, 1), end (0, Fb+1+d)" : "start (1, Fa+d), end (Fb+1+d, 0)";

  HittingSolver solver(d, r.L);
  // Blue start; the red case is the same computation with coordinates swapped.
  auto pt = [&](std::int64_t x, std::int64_t y) { return blue ? LatticePointEZ{x, y} : LatticePointEZ{y, x}; };
  const LatticePointEZ S = pt(Fa + d, 1);
  const LatticePointEZ B = pt(0, Fb + 1 + d);
  const HittingTable hb = solver.solve(B);
  r.denominator = hb.at(S.x, S.y);
  r.residual = solver.cap_residual(S);

  const auto first = solver.exit_distribution(S);
  auto prob = [](const std::map<LatticePointEZ, double>& m, LatticePointEZ p) {
    auto it = m.find(p);
    return it == m.end() ? 0.0 : it->second;
  };
  const int n = r.T - d;
  std::vector<double> row(n, 0.0), col(n, 0.0);
  double total = 0.0;
  for (int t = d + 1; t <= r.T; ++t) {
    const double u = prob(first, pt(0, t));
    if (u == 0.0) continue;
    const LatticePointEZ mid = pt(1, t - 1);
    r.residual = std::max(r.residual, solver.cap_residual(mid));
    const auto second = solver.exit_distribution(mid);
    for (int s = d + 1; s <= r.T; ++s) {
      const LatticePointEZ last = pt(s - 1, 1);
      const double term = u * prob(second, pt(s, 0)) * hb.at(last.x, last.y);
      row[t - d - 1] += term;
      col[s - d - 1] += term;
      total += term;
    }
  }
  r.degenerate = r.denominator < 1e-12;
  r.ratio = r.degenerate ? 0.0 : total / r.denominator;
  // Summands fall off at least like a power; extrapolate the last row and column.
  const double edge = row[n - 1] + col[n - 1];
  r.tail_bound = r.degenerate ? 0.0 : edge * r.T / r.denominator;
  return r;
}

double decay_fit(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) throw std::invalid_argument("decay_fit: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [d, v] : pts) {
    if (d <= 0 || v <= 0) throw std::invalid_argument("decay_fit: values must be positive");
    const double x = std::log(d), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(pts.size());
  const double den = k * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("decay_fit: all d equal");
  return (k * sxy - sx * sy) / den;
}

}  // namespace webfaces
