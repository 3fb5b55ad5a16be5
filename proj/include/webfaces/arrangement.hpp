#pragma once

// Planar subdivision of the upper half-plane by the semicircular arcs of an
// m-diagram, with exact rational crossing abscissae.
//
// Vertices are the 3n boundary points followed by the crossings. Edges are arc
// segments between consecutive vertices on an arc, the 3n-1 baseline segments,
// and one edge through infinity joining step 3n back to step 1, so that the
// subdivision lives on the sphere and V - E + F = 2 holds with the lower
// half-plane and the unbounded upper region as ordinary faces.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "webfaces/mdiagram.hpp"

namespace webfaces {

/// Exact rational with 64-bit parts; comparisons use 128-bit products.
struct Rational64 {
  std::int64_t num = 0;
  std::int64_t den = 1;  // > 0

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend std::strong_ordering operator<=>(const Rational64& x, const Rational64& y) {
    const __int128 l = static_cast<__int128>(x.num) * y.den;
    const __int128 r = static_cast<__int128>(y.num) * x.den;
    return l <=> r;
  }
  friend bool operator==(const Rational64& x, const Rational64& y) {
    return (x <=> y) == std::strong_ordering::equal;
  }
};

struct CrossingPoint {
  int left_arc = -1;   // arc with the smaller start
  int right_arc = -1;  // the other arc
  Rational64 x;
};

enum class EdgeKind : std::uint8_t { Arc, Baseline, Infinity };

struct HalfEdge {
  int origin = -1;
  int twin = -1;
  int next = -1;
  int face = -1;
  int arc = -1;  // for EdgeKind::Arc
  EdgeKind kind = EdgeKind::Arc;
  bool rightward = false;  // travels toward larger abscissa
};

struct Face {
  int first_half_edge = -1;
  int length = 0;  // number of half-edges on the cycle
  bool boundary = false;  // has a baseline or infinity edge
  /// Enclosed by arcs but touching the baseline at the middle of some m. These
  /// are interior faces; the touching points belong to the lower chain.
  bool pinned = false;
};

class Arrangement {
public:
  /// Boundary step s sits at abscissa s. Throws std::logic_error if Euler's
  /// formula fails, which can only happen for an invalid diagram.
  static Arrangement build(const MDiagram& d);
  /// Same with custom strictly increasing boundary abscissae; positions[s-1]
  /// is the abscissa of step s.
  static Arrangement build(const MDiagram& d, std::span<const std::int64_t> positions);

  int n() const { return n_; }
  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const CrossingPoint> crossings() const { return crossings_; }
  std::span<const HalfEdge> half_edges() const { return half_edges_; }
  std::span<const Face> faces() const { return faces_; }

  /// Abscissa of boundary step s (1-based).
  std::int64_t position(int step) const { return positions_[step - 1]; }
  int boundary_vertex_count() const { return 3 * n_; }
  int vertex_count() const { return 3 * n_ + static_cast<int>(crossings_.size()); }
  int edge_count() const { return static_cast<int>(half_edges_.size() / 2); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  bool euler_holds() const { return vertex_count() - edge_count() + face_count() == 2; }

  /// Crossing ids along an arc, sorted by abscissa.
  std::span<const int> crossings_on_arc(int arc) const { return arc_crossings_[arc]; }
  /// Index of a crossing in crossings_on_arc(arc); -1 if not on that arc.
  int position_on_arc(int crossing, int arc) const;
  /// Crossing id of a vertex, or -1 for boundary vertices.
  int crossing_of_vertex(int v) const { return v >= 3 * n_ ? v - 3 * n_ : -1; }

  /// Half-edge ids of a face cycle, in traversal order (face on the left).
  std::vector<int> face_cycle(int face) const;

  /// Outgoing half-edges at a crossing in counter-clockwise order: left arc
  /// toward its end, right arc toward its end, left arc back, right arc back.
  std::array<int, 4> crossing_rotation(int crossing) const;

  /// Faces to the east and west of a crossing; the short edge that replaces
  /// the crossing in the web separates exactly these two.
  std::pair<int, int> east_west_faces(int crossing) const;

private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::int64_t> positions_;
  std::vector<CrossingPoint> crossings_;
  std::vector<std::vector<int>> arc_crossings_;
  std::vector<HalfEdge> half_edges_;
  std::vector<Face> faces_;
  std::vector<std::array<int, 4>> crossing_rot_;
  std::vector<std::array<int, 2>> crossing_pos_;  // index on left arc, right arc
};

struct FaceType {
  std::vector<int> counts;  // (c_1, ..., c_k)
  Color start = Color::Red;
  friend auto operator<=>(const FaceType&, const FaceType&) = default;
};

std::string to_string(const FaceType& t);
/// Parses "1,1,2,1:B" (also accepts "(1,1,2,1),B"). Throws std::invalid_argument.
FaceType parse_face_type(const std::string& s);

struct FaceRecord {
  int face = -1;
  int web_size = 0;           // sides of the web face
  int mdiagram_segments = 0;  // arc segments bounding the m-diagram face
  int upper_segments = 0;     // segments on the chain above the face
  FaceType type;
  int depth = 0;
  int first_step = 0;         // smallest start among arcs bounding the face
  /// Set when at some lower crossing the other arc descends as well, so that
  /// "southeast" alone does not pick the branch.
  bool direction_ambiguous = false;
  /// Set if the incoming lower-chain arc at some p_i is not the arc with the
  /// smaller start; never expected for valid diagrams.
  bool irregular = false;
};

/// Multi-source BFS in the dual graph of the web from every face incident to
/// the baseline or to infinity (depth 0). Dual edges: shared arc segments, and
/// the east/west face pair at every crossing.
std::vector<int> face_depths(const Arrangement& a);

/// One record per interior face, ordered by face id.
std::vector<FaceRecord> classify_faces(const Arrangement& a);

}  // namespace webfaces
