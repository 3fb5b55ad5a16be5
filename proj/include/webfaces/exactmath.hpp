#pragma once

// Lattice Green's functions for the walk with steps v1 = (1,0), v2 = (-1,1),
// v3 = (0,-1) written in the basis e1 = (1,0), e2 = (1/2, sqrt(3)/2), the
// Dirichlet Green's function of the 60 degree wedge {x >= 0, y >= 0}, and the
// harmonic measures built from them.
//
// Sign convention: the renormalized function G(x,y) = G_inf(x,y) - G_inf(0,0)
// takes G(1,0) = -1, hence (Delta G)(0) = -1 with
// (Delta f)(z) = (1/3) sum_j f(z + v_j) - f(z).

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "webfaces/arrangement.hpp"

namespace webfaces {

using Rational = boost::multiprecision::mpq_rational;

/// a + b * sqrt(3)/pi with rational a, b.
struct ExactValue {
  Rational a;
  Rational b;

  double to_double() const;
  /// Decimal expansion with the given number of significant digits (MPFR, at
  /// most 90).
  std::string decimal(int digits = 30) const;
  /// "p + q*sqrt(3)/pi" with p, q as reduced fractions; a zero part is dropped.
  std::string to_string() const;

  friend ExactValue operator+(const ExactValue& x, const ExactValue& y) { return {x.a + y.a, x.b + y.b}; }
  friend ExactValue operator-(const ExactValue& x, const ExactValue& y) { return {x.a - y.a, x.b - y.b}; }
  friend ExactValue operator*(const Rational& r, const ExactValue& x) { return {r * x.a, r * x.b}; }
  friend bool operator==(const ExactValue& x, const ExactValue& y) { return x.a == y.a && x.b == y.b; }
  ExactValue& operator+=(const ExactValue& y) { a += y.a; b += y.b; return *this; }
  ExactValue& operator-=(const ExactValue& y) { a -= y.a; b -= y.b; return *this; }
};

/// c_sqrt3 * sqrt(3) + c_pi * pi.
struct IntegralValue {
  Rational c_sqrt3;
  Rational c_pi;
  double to_double() const;
  friend bool operator==(const IntegralValue&, const IntegralValue&) = default;
};

struct LatticePointEZ {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend auto operator<=>(const LatticePointEZ&, const LatticePointEZ&) = default;
  friend LatticePointEZ operator+(LatticePointEZ p, LatticePointEZ q) { return {p.x + q.x, p.y + q.y}; }
  friend LatticePointEZ operator-(LatticePointEZ p, LatticePointEZ q) { return {p.x - q.x, p.y - q.y}; }
};

inline constexpr LatticePointEZ kV1{1, 0};
inline constexpr LatticePointEZ kV2{-1, 1};
inline constexpr LatticePointEZ kV3{0, -1};

LatticePointEZ rotate(LatticePointEZ p);   // (x,y) -> (-x-y, x)
LatticePointEZ reflect(LatticePointEZ p);  // (x,y) -> (x+y, -y)
/// Orbit under D3: three rotations (identity first), then their reflections.
std::array<LatticePointEZ, 6> d3_orbit(LatticePointEZ p);
inline int d3_sign(int i) { return i < 3 ? 1 : -1; }
/// The image of p in the closed wedge {x >= 0, y >= 0}.
LatticePointEZ to_fundamental_wedge(LatticePointEZ p);

inline bool in_closed_wedge(LatticePointEZ p) { return p.x >= 0 && p.y >= 0; }
inline bool in_open_wedge(LatticePointEZ p) { return p.x >= 1 && p.y >= 1; }

/// I_m = integral over [1/4, 1] of t^m / sqrt(4t - 1).
IntegralValue integral_I(int m);

/// Exact G at any lattice point. Results are memoized; safe to call from
/// several threads.
ExactValue green_infinity(LatticePointEZ p);
/// Double-precision G by one-dimensional quadrature; accurate to about 1e-14
/// absolute even far from the origin.
double green_infinity_numeric(LatticePointEZ p);

/// Signed D3 image sum; zero when z lies on either ray. Requires z, z0 in the
/// closed wedge.
ExactValue green_wedge(LatticePointEZ z, LatticePointEZ z0);
double green_wedge_numeric(LatticePointEZ z, LatticePointEZ z0);

/// Probability that the walk from interior z first leaves the open wedge at
/// boundary point a. Throws std::invalid_argument if a is the corner or not
/// on a ray, if a - v_j is not interior, or if z is not interior.
ExactValue h_point(LatticePointEZ a, LatticePointEZ z);
double h_point_numeric(LatticePointEZ a, LatticePointEZ z);

enum class GMode { Series, Quadrature };

struct GOptions {
  double tolerance = 1e-8;
  int max_terms = 10000;  // series mode
  int grid = 512;         // quadrature mode: minimum torus grid size
};

struct GResult {
  double value = 0.0;
  double error_bound = 0.0;
  int terms = 0;  // series terms summed, or finest grid size
  bool converged = false;
  /// Series mode only: 1 - g - sum_t h_(0,t)(z), the e2-ray sum taken to the
  /// same number of terms and tail-corrected the same way.
  double partition_residual = 0.0;
};

/// Harmonic function equal to 1 on the e1-ray and 0 on the e2-ray, at an
/// interior point. Series mode sums h_(m,0)(z) and adds the m^-4 power-law
/// tail; quadrature mode integrates the Fourier representation on the torus
/// with geometric damping and Richardson extrapolation in the damping.
GResult g_value(LatticePointEZ z, GMode mode = GMode::Series, const GOptions& opt = {});

/// Offset of the red factors in the face probability product. With Two the
/// first red factor is h_(0, tau_1 + 3) and later ones h_(0, tau_i + 2); One
/// lowers every red offset by one, so tau_i = 1 gives h_(0, 2).
enum class RedOffset { Two, One };

struct FaceProbability {
  double value = 0.0;
  double error_bound = 0.0;  // from g only; the h factors are exact
  std::vector<std::string> factors;  // human-readable factor list
};

/// Limiting per-step density of faces of the given type. Throws
/// std::invalid_argument for an empty type or entries < 1.
FaceProbability face_type_probability(const FaceType& type, RedOffset form = RedOffset::Two,
                                      const GOptions& opt = {});

}  // namespace webfaces
