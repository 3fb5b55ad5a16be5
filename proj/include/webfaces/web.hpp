#pragma once

#include <cstdint>
#include <vector>

#include "webfaces/mdiagram.hpp"

namespace webfaces {

enum class WebColor : std::uint8_t { Red, Blue, Green };

struct WebEdge {
  int from = -1;  // edges are directed from -> to
  int to = -1;
  WebColor color = WebColor::Red;
};

/// Reduced web obtained from an m-diagram. Vertices 0..3n-1 are the boundary
/// points, then one trivalent "Y" vertex per m, then a lower/upper vertex pair
/// per crossing joined by a green edge. Arc edges keep their colour and are
/// directed from the boundary toward the Y vertex of their m; boundary edges
/// point into the interior.
struct Web {
  int n = 0;
  int vertex_count = 0;
  std::vector<WebEdge> edges;
  /// Counter-clockwise incident edge ids per vertex (interior edges only).
  std::vector<std::vector<int>> rotation;
  int y_vertex_count = 0;
  int crossing_edge_count = 0;

  bool is_boundary(int v) const { return v < 3 * n; }
};

Web to_web(const MDiagram& d);

struct WebCheck {
  bool trivalent = true;        // interior vertices have degree 3
  bool source_or_sink = true;   // all-in or all-out at interior vertices
  bool three_colors = true;     // distinct colours at interior vertices
  bool boundary_degree_one = true;
  bool boundary_outward = true; // boundary edges leave the boundary vertex
  bool euler = true;            // on the disk closed by the boundary circle
  std::vector<int> interior_face_sizes;

  bool ok() const {
    return trivalent && source_or_sink && three_colors && boundary_degree_one &&
           boundary_outward && euler;
  }
};

/// Traces faces of the web with its own rotation system, closing the disk by
/// the boundary circle; interior faces are those avoiding that circle.
WebCheck check_web(const Web& w);

}  // namespace webfaces
