#pragma once

// Uniform 3 x n standard Young tableaux, viewed as lattice paths
// (A_t, B_t) in the quadrant with steps S1 = (1,0), S2 = (-1,1), S3 = (0,-1)
// that start and end at the origin.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "webfaces/rng.hpp"

namespace webfaces {

enum class Step : std::uint8_t { S1 = 0, S2 = 1, S3 = 2 };

struct LatticePoint {
  int a = 0;
  int b = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

LatticePoint step_vector(Step s);

class LatticePath {
public:
  /// Validates the quadrant constraint and the return to the origin.
  /// Throws std::invalid_argument on a malformed step sequence.
  static LatticePath from_steps(std::vector<Step> steps);

  int n() const { return static_cast<int>(steps_.size() / 3); }
  std::size_t length() const { return steps_.size(); }
  std::span<const Step> steps() const { return steps_; }
  /// coords()[t] is the position after t steps; size length() + 1.
  std::span<const LatticePoint> coords() const { return coords_; }

  friend bool operator==(const LatticePath& x, const LatticePath& y) {
    return x.steps_ == y.steps_;
  }

private:
  std::vector<Step> steps_;
  std::vector<LatticePoint> coords_;
};

struct Tableau3xN {
  std::array<std::vector<int>, 3> rows;

  int n() const { return static_cast<int>(rows[0].size()); }
  /// Row lengths equal, rows increasing, columns increasing, entries 1..3n.
  bool is_standard() const;
  friend bool operator==(const Tableau3xN&, const Tableau3xN&) = default;
};

/// Row r (0-based) receives step s = r. Throws on quadrant violations.
Tableau3xN path_to_tableau(const LatticePath& p);
/// Inverse of path_to_tableau; throws std::invalid_argument if not standard.
LatticePath tableau_to_path(const Tableau3xN& t);

/// Memoized counts of quadrant paths from (x, y) back to the origin in exactly
/// r steps, for all states reachable at fixed n. Storage is
/// (3n+1) * (n+1)^2 big integers, which limits practical use to n in the low
/// hundreds; large-n sampling uses the closed-form weights below.
class CompletionTable {
public:
  explicit CompletionTable(int n);

  int n() const { return n_; }
  /// Zero outside the stored range.
  const BigInt& count(int x, int y, int r) const;

private:
  std::size_t index(int x, int y, int r) const;
  int n_;
  std::vector<BigInt> counts_;
  BigInt zero_ = 0;
};

/// Number of 3 x n standard Young tableaux (equivalently reduced webs with 3n
/// boundary points), computed by the completion DP. n = 0 gives 1.
BigInt count_webs(int n);

/// Number of completions of the state reached after t steps at (x, y), via the
/// hook length formula for the complementary (rotated) shape.
BigInt completion_count_closed_form(int n, int t, LatticePoint at);

/// Integer weights w[s] proportional to the completion counts of the three
/// successors of the state after t steps at `at`. Illegal successors get 0.
/// The weights are exact 64-bit integers for n <= 10000.
std::array<std::uint64_t, 3> successor_weights(int n, int t, LatticePoint at);

/// Exactly uniform random path of length 3n. Each step is drawn with
/// probability (successor completions) / (current completions), realised as a
/// uniform integer draw below the total weight and a walk of the CDF.
LatticePath sample_path(int n, std::uint64_t seed);
LatticePath sample_path(int n, Rng& rng);

/// Same distribution, driven by a big-integer CompletionTable.
LatticePath sample_path_dp(const CompletionTable& table, Rng& rng);

/// All valid paths of length 3n in lexicographic step order (S1 < S2 < S3).
std::vector<LatticePath> enumerate_paths(int n);

}  // namespace webfaces
