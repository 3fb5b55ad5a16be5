#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "webfaces/sampler.hpp"

namespace webfaces {

enum class Color : std::uint8_t { Red = 0, Blue = 1 };

inline char color_char(Color c) { return c == Color::Red ? 'R' : 'B'; }

/// Semicircle above the boundary between steps start < end (1-based).
/// Red arcs join a row-1 step to a row-2 step, blue arcs a row-2 step to a
/// row-3 step.
struct Arc {
  int start = 0;
  int end = 0;
  Color color = Color::Red;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Strict interleaving: (a,b) and (c,d) cross iff a<c<b<d or c<a<d<b.
/// Arcs that only share an endpoint do not cross.
inline bool arcs_cross(const Arc& x, const Arc& y) {
  return (x.start < y.start && y.start < x.end && x.end < y.end) ||
         (y.start < x.start && x.start < y.end && y.end < x.end);
}

struct MTriple {
  int first = 0;   // row 1 step, start of the red arc
  int middle = 0;  // row 2 step
  int last = 0;    // row 3 step, end of the blue arc
};

struct OpenArc {
  int start = 0;
  Color color = Color::Red;
  friend bool operator==(const OpenArc&, const OpenArc&) = default;
};

struct MDiagram {
  int n = 0;
  /// Arcs in the order they are closed. 2n of them for a complete path.
  std::vector<Arc> arcs;
  /// One per m, ordered by the middle step.
  std::vector<MTriple> triples;
  /// stack_trace[s-1] lists the open arcs after step s, oldest first. Only
  /// filled when requested since it is quadratic in size.
  std::vector<std::vector<OpenArc>> stack_trace;
};

/// Single-stack construction: S1 opens a red arc, S2 closes the most recent
/// open red arc and opens a blue one, S3 closes the most recent open blue arc.
/// Throws std::logic_error on a pop from an empty colour stack.
MDiagram build_mdiagram(const LatticePath& p, bool record_trace = false);
MDiagram build_mdiagram(std::span<const Step> steps, bool record_trace = false);

enum class ViolationKind {
  SameColorCrossing,
  TripleCrossing,
  MsCrossMoreThanOnce,
  BadPartition,
  BadArc,
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

std::string to_string(ViolationKind k);

/// Checks the three structural conditions of m-diagrams plus the partition of
/// boundary steps into m positions. Quadratic in the number of arcs.
std::vector<Violation> validate(const MDiagram& d);

/// Open red/blue counts after t steps (R_t, B_t). Throws std::out_of_range
/// unless 0 <= t <= 3n.
std::pair<int, int> open_arc_profile(const LatticePath& p, int t);

/// Left-to-right scan: start -> row 1, middle -> row 2, end -> row 3.
Tableau3xN mdiagram_to_tableau(const MDiagram& d);

}  // namespace webfaces
