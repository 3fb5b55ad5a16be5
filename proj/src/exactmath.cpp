#include "webfaces/exactmath.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace webfaces {

namespace {

using boost::multiprecision::mpz_int;
using Laurent = std::map<int, Rational>;  // exponent -> coefficient

mpz_int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string rational_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::vector<Rational> poly_mul(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  std::vector<Rational> r(p.size() + q.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

ExactValue green_in_wedge(std::int64_t x, std::int64_t y) {
  const int X = static_cast<int>(x);
  const int Y = static_cast<int>(y);
  Laurent L;
  // Powers of (4t - 1) and (1 - t).
  std::vector<std::vector<Rational>> four_t(X / 2 + 1), one_minus(X + 1);
  four_t[0] = {1};
  for (std::size_t i = 1; i < four_t.size(); ++i) four_t[i] = poly_mul(four_t[i - 1], {-1, 4});
  one_minus[0] = {1};
  for (int i = 1; i <= X; ++i) one_minus[i] = poly_mul(one_minus[i - 1], {1, -1});

  for (int j = 1; j <= X; ++j) {
    // Re((-1 + i s)^j) with s^2 = 4t - 1, a polynomial in t.
    std::vector<Rational> re(j / 2 + 1);
    for (int k = 0; k <= j; k += 2) {
      const int sign = (((j - k) & 1) ? -1 : 1) * (((k / 2) & 1) ? -1 : 1);
      const Rational c = Rational(binom(j, k)) * sign;
      for (std::size_t e = 0; e < four_t[k / 2].size(); ++e) re[e] += c * four_t[k / 2][e];
    }
    const auto prod = poly_mul(re, one_minus[j - 1]);
    const Rational scale = Rational(binom(X, j)) / Rational(mpz_int(1) << j);
    for (std::size_t e = 0; e < prod.size(); ++e)
      if (prod[e] != 0) L[static_cast<int>(e) + Y - j] += scale * prod[e];
  }
  for (int l = 0; l < Y; ++l) L[l] -= 1;

  ExactValue v;
  for (const auto& [m, q] : L) {
    if (q == 0) continue;
    const IntegralValue I = integral_I(m);
    v.a += 3 * q * I.c_pi;
    v.b += 3 * q * I.c_sqrt3;
  }
  return v;
}

}  // namespace

namespace {

// Fixed precision keeps MPFR state local; the rational parts can be large and
// nearly cancel, so plain doubles lose digits.
using Float100 = boost::multiprecision::mpfr_float_100;

Float100 to_float(const ExactValue& v) {
  return Float100(v.a) + Float100(v.b) * boost::multiprecision::sqrt(Float100(3)) /
                             boost::math::constants::pi<Float100>();
}

}  // namespace

double ExactValue::to_double() const { return to_float(*this).convert_to<double>(); }

std::string ExactValue::decimal(int digits) const { return to_float(*this).str(std::clamp(digits, 1, 90)); }

std::string ExactValue::to_string() const {
  if (b == 0) return rational_string(a);
  if (a == 0) return rational_string(b) + "*sqrt(3)/pi";
  std::string out = rational_string(a);
  if (b < 0) out += " - " + rational_string(-b) + "*sqrt(3)/pi";
  else out += " + " + rational_string(b) + "*sqrt(3)/pi";
  return out;
}

double IntegralValue::to_double() const {
  return c_sqrt3.convert_to<double>() * std::sqrt(3.0) + c_pi.convert_to<double>() * std::numbers::pi;
}

LatticePointEZ rotate(LatticePointEZ p) { return {-p.x - p.y, p.x}; }
LatticePointEZ reflect(LatticePointEZ p) { return {p.x + p.y, -p.y}; }

std::array<LatticePointEZ, 6> d3_orbit(LatticePointEZ p) {
  const LatticePointEZ r1 = rotate(p);
  const LatticePointEZ r2 = rotate(r1);
  return {p, r1, r2, reflect(p), reflect(r1), reflect(r2)};
}

LatticePointEZ to_fundamental_wedge(LatticePointEZ p) {
  for (const LatticePointEZ& q : d3_orbit(p))
    if (in_closed_wedge(q)) return q;
  throw std::logic_error("to_fundamental_wedge: no image in the wedge");
}

IntegralValue integral_I(int m) {
  static std::mutex mu;
  static std::map<int, IntegralValue> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  IntegralValue v;
  if (m >= 0) {
    Rational s = 0;
    mpz_int pow3 = 1;
    for (int k = 0; k <= m; ++k) {
      s += Rational(binom(m, k) * pow3) / (2 * k + 1);
      pow3 *= 3;
    }
    v.c_sqrt3 = s / Rational(mpz_int(1) << (2 * m + 1));
  } else {
    v.c_pi = Rational(2, 3);
    for (int q = 2; q <= -m; ++q) {
      v.c_sqrt3 = Rational(1, q - 1) + Rational(2 * (2 * q - 3), q - 1) * v.c_sqrt3;
      v.c_pi = Rational(2 * (2 * q - 3), q - 1) * v.c_pi;
    }
  }
  std::lock_guard lock(mu);
  cache.emplace(m, v);
  return v;
}

ExactValue green_infinity(LatticePointEZ p) {
  static std::mutex mu;
  static std::map<LatticePointEZ, ExactValue> cache;
  const LatticePointEZ q = to_fundamental_wedge(p);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(q); it != cache.end()) return it->second;
  }
  ExactValue v = green_in_wedge(q.x, q.y);
  std::lock_guard lock(mu);
  cache.emplace(q, v);
  return v;
}

double green_infinity_numeric(LatticePointEZ p) {
  const LatticePointEZ q = to_fundamental_wedge(p);
  if (q.x == 0 && q.y == 0) return 0.0;
  const double x = static_cast<double>(q.x);
  const double y = static_cast<double>(q.y);
  const double r3 = std::sqrt(3.0);
  // Substituting s = sqrt(4t - 1), G = (3 / 2pi) * integral over [0, sqrt 3]
  // of (t^y Re(alpha^x) - 1) / (1 - t) ds with alpha = 1 + (1 - t) u(t) and
  // |alpha|^2 = t. Each piece is evaluated without cancellation near t = 1.
  auto f = [&](double s) {
    const double t = (1.0 + s * s) / 4.0;
    const double omt = (r3 - s) * (r3 + s) / 4.0;
    if (omt <= 0.0) return 0.0;
    const double phi = std::atan2(omt * s / (2.0 * t), 1.0 - omt / (2.0 * t));
    const double L = (y + x / 2.0) * std::log1p(-omt);
    const double half = std::sin(x * phi / 2.0);
    const double num = std::expm1(L) * std::cos(x * phi) - 2.0 * half * half;
    return num / omt;
  };
  // Geometric panels toward s = sqrt 3, where the integrand varies on the
  // scale 1/(x + y); each panel is cut so the phase x*phi moves by at most
  // about one radian per Gauss-Legendre block.
  using GL = boost::math::quadrature::gauss<double, 20>;
  const double scale = x + y + 1.0;
  auto panel = [&](double a, double b) {
    const int pieces = 1 + static_cast<int>(std::min(64.0, scale * (b - a)));
    const double h = (b - a) / pieces;
    double sum = 0.0;
    for (int i = 0; i < pieces; ++i) sum += GL::integrate(f, a + i * h, a + (i + 1) * h);
    return sum;
  };
  double total = 0.0;
  double lo = 0.0;
  double width = r3 / 2.0;
  const double finest = 1e-3 / scale;
  while (width > finest) {
    total += panel(lo, lo + width);
    lo += width;
    width /= 2.0;
  }
  total += panel(lo, r3);
  return 3.0 / (2.0 * std::numbers::pi) * total;
}

namespace {

void require_closed(LatticePointEZ z, const char* what) {
  if (!in_closed_wedge(z)) throw std::invalid_argument(std::string(what) + ": point outside the wedge");
}

LatticePointEZ point_mass_source(LatticePointEZ a) {
  if (!in_closed_wedge(a) || (a.x != 0 && a.y != 0))
    throw std::invalid_argument("h_point: a must lie on a wedge ray");
  if (a.x == 0 && a.y == 0) throw std::invalid_argument("h_point: a is the corner");
  const LatticePointEZ z0 = a.y == 0 ? a - kV3 : a - kV2;
  if (!in_open_wedge(z0)) throw std::invalid_argument("h_point: a - v_j is not interior");
  return z0;
}

}  // namespace

ExactValue green_wedge(LatticePointEZ z, LatticePointEZ z0) {
  require_closed(z, "green_wedge");
  require_closed(z0, "green_wedge");
  const auto orbit = d3_orbit(z0);
  ExactValue v;
  for (int i = 0; i < 6; ++i) {
    if (d3_sign(i) > 0) v += green_infinity(z - orbit[i]);
    else v -= green_infinity(z - orbit[i]);
  }
  return v;
}

double green_wedge_numeric(LatticePointEZ z, LatticePointEZ z0) {
  require_closed(z, "green_wedge");
  require_closed(z0, "green_wedge");
  const auto orbit = d3_orbit(z0);
  double v = 0.0;
  for (int i = 0; i < 6; ++i) v += d3_sign(i) * green_infinity_numeric(z - orbit[i]);
  return v;
}

ExactValue h_point(LatticePointEZ a, LatticePointEZ z) {
  const LatticePointEZ z0 = point_mass_source(a);
  if (!in_open_wedge(z)) throw std::invalid_argument("h_point: z is not interior");
  return Rational(1, 3) * green_wedge(z, z0);
}

double h_point_numeric(LatticePointEZ a, LatticePointEZ z) {
  const LatticePointEZ z0 = point_mass_source(a);
  if (!in_open_wedge(z)) throw std::invalid_argument("h_point: z is not interior");
  return green_wedge_numeric(z, z0) / 3.0;
}

namespace {

// Sums h over one ray and adds the tail. Far out the terms behave like
// c(m) / m^4 with c(m) = c + d/m + ..., so the tail past M is about
// c(M) / (3 (M + 1/2)^3), off by at most |c(M/2) - c(M)| / (3 M^3).
struct RaySum {
  double sum = 0.0;   // including the tail estimate
  double error = 0.0;
  int terms = 0;
};

RaySum sum_ray(LatticePointEZ z, bool e1, double tol, int max_terms, int fixed_terms) {
  RaySum r;
  std::vector<double> c;  // c[m - first]
  const int first = e1 ? 1 : 2;
  double partial = 0.0;
  for (int m = first; m < first + max_terms; ++m) {
    const LatticePointEZ a = e1 ? LatticePointEZ{m, 0} : LatticePointEZ{0, m};
    const double h = h_point_numeric(a, z);
    partial += h;
    ++r.terms;
    const double md = static_cast<double>(m);
    c.push_back(h * md * md * md * md);
    const double tail = c.back() / (3.0 * std::pow(md + 0.5, 3));
    const double drift = m >= 2 * first ? std::abs(c[m / 2 - first] - c.back()) : INFINITY;
    r.sum = partial + tail;
    r.error = drift / (3.0 * md * md * md) + tail * 0.5 / md + 1e-14 * r.terms;
    if (fixed_terms > 0 ? r.terms >= fixed_terms : (m >= 16 && r.error < tol)) break;
  }
  return r;
}

std::complex<double> ipow(std::complex<double> u, std::int64_t k) {
  if (k >= 0) return std::pow(u, static_cast<int>(k));
  return std::pow(std::conj(u), static_cast<int>(-k));  // |u| = 1
}

// Damped torus sum: the m-series under the integral gets weights r^m.
double g_damped(LatticePointEZ z, double r, int N) {
  const auto pair_a = d3_orbit({1, 1});
  const auto pair_b = d3_orbit({1, 0});
  const double h = 2.0 * std::numbers::pi / N;
  // pw[k + 2][i] = U_i^k for the exponents -2..2 that occur in the images.
  std::vector<std::complex<double>> U(N), Ux(N), Uy(N);
  std::array<std::vector<std::complex<double>>, 5> pw;
  for (auto& v : pw) v.resize(N);
  for (int i = 0; i < N; ++i) {
    U[i] = std::polar(1.0, (i + 0.5) * h);
    Ux[i] = ipow(U[i], z.x);
    Uy[i] = ipow(U[i], z.y);
    for (int k = -2; k <= 2; ++k) pw[k + 2][i] = ipow(U[i], k);
  }
  double total = 0.0;
  for (int j = 0; j < N; ++j) {
    const std::complex<double> w = U[j];
    double row = 0.0;
    for (int i = 0; i < N; ++i) {
      const std::complex<double> u = U[i];
      auto E = [&](LatticePointEZ p) { return pw[2 - p.x][i] * pw[2 - p.y][j]; };
      std::complex<double> S = 0.0;
      for (int g = 0; g < 6; ++g) {
        const std::complex<double> term = E(pair_a[g]) * r / (1.0 - r * E(pair_b[g]));
        S += static_cast<double>(d3_sign(g)) * term;
      }
      const std::complex<double> lam = (u + w * pw[1][i] + pw[1][j]) / 3.0 - 1.0;
      row += (Ux[i] * Uy[j] * S / lam).real();
    }
    total += row;
  }
  // The sign follows the normalization G(1,0) = -1.
  return -total * h * h / (12.0 * std::numbers::pi * std::numbers::pi);
}

}  // namespace

GResult g_value(LatticePointEZ z, GMode mode, const GOptions& opt) {
  if (!in_open_wedge(z)) throw std::invalid_argument("g_value: z is not interior");
  GResult res;
  if (mode == GMode::Series) {
    const RaySum e1 = sum_ray(z, true, opt.tolerance, opt.max_terms, 0);
    const RaySum e2 = sum_ray(z, false, opt.tolerance, opt.max_terms, e1.terms);
    res.value = e1.sum;
    res.terms = e1.terms;
    res.error_bound = e1.error;
    res.converged = res.error_bound < opt.tolerance;
    res.partition_residual = 1.0 - e1.sum - e2.sum;
    return res;
  }
  // Damping levels delta_k = 0.04 / 2^k; the grid resolves the damped poles.
  constexpr int levels = 4;
  std::vector<std::vector<double>> R(levels);
  int finest = 0;
  for (int k = 0; k < levels; ++k) {
    const double delta = 0.04 / static_cast<double>(1 << k);
    int N = std::max(opt.grid, 64);
    while (N * delta < 20.0) N *= 2;
    finest = std::max(finest, N);
    R[k].push_back(g_damped(z, 1.0 - delta, N));
    for (int j = 1; j <= k; ++j) {
      const double p = static_cast<double>(1 << j);
      R[k].push_back((p * R[k][j - 1] - R[k - 1][j - 1]) / (p - 1.0));
    }
  }
  res.value = R[levels - 1][levels - 1];
  res.error_bound = std::abs(res.value - R[levels - 2][levels - 2]);
  res.terms = finest;
  res.converged = res.error_bound < std::max(opt.tolerance, 1e-4);
  return res;
}

FaceProbability face_type_probability(const FaceType& type, RedOffset form, const GOptions& opt) {
  const auto& tau = type.counts;
  if (tau.empty()) throw std::invalid_argument("face_type_probability: empty type");
  for (int c : tau)
    if (c < 1) throw std::invalid_argument("face_type_probability: entries must be >= 1");
  const int k = static_cast<int>(tau.size());
  const int red_shift = form == RedOffset::Two ? 0 : -1;
  FaceProbability out;
  double value = 1.0;
  auto label = [](LatticePointEZ a, LatticePointEZ z) {
    std::ostringstream os;
    os << "h_(" << a.x << "," << a.y << ")(" << z.x << "," << z.y << ")";
    return os.str();
  };
  auto factor = [&](LatticePointEZ a, LatticePointEZ z) {
    value *= h_point(a, z).to_double();
    out.factors.push_back(label(a, z));
  };
  const bool red_start = type.start == Color::Red;
  if (red_start) factor({0, tau[0] + 3 + red_shift}, {1, 1});
  else factor({tau[0] + 2, 0}, {1, 1});
  for (int i = 2; i <= k; ++i) {
    const int t = tau[i - 1];
    const int prev = tau[i - 2];
    // Arc colours alternate along the lower chain.
    const bool blue_arc = red_start ? (i % 2 == 0) : (i % 2 == 1);
    if (blue_arc) factor({t + 1, 0}, {1, prev});
    else factor({0, t + 2 + red_shift}, {prev, 1});
  }
  const GResult g = g_value({tau[k - 1], 1}, GMode::Series, opt);
  const bool use_g = red_start ? (k % 2 == 0) : (k % 2 == 1);
  const double gt = use_g ? g.value : 1.0 - g.value;
  std::ostringstream os;
  os << (use_g ? "g(" : "1-g(") << tau[k - 1] << ",1)";
  out.factors.push_back(os.str());
  out.value = value * gt;
  out.error_bound = value * g.error_bound;
  return out;
}

}  // namespace webfaces
