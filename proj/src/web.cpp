#include "webfaces/web.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "webfaces/arrangement.hpp"

namespace webfaces {

Web to_web(const MDiagram& d) {
  const Arrangement A = Arrangement::build(d);
  const int n = d.n;
  const int len = 3 * n;
  Web w;
  w.n = n;
  w.y_vertex_count = static_cast<int>(d.triples.size());
  w.crossing_edge_count = static_cast<int>(A.crossings().size());
  w.vertex_count = len + w.y_vertex_count + 2 * w.crossing_edge_count;
  w.rotation.assign(w.vertex_count, {});

  std::map<int, int> y_of_middle;
  for (int t = 0; t < w.y_vertex_count; ++t) y_of_middle[d.triples[t].middle] = len + t;
  const int cross_base = len + w.y_vertex_count;
  auto lower = [&](int c) { return cross_base + 2 * c; };
  auto upper = [&](int c) { return cross_base + 2 * c + 1; };

  auto add = [&](int from, int to, WebColor color) {
    w.edges.push_back({from, to, color});
    return static_cast<int>(w.edges.size()) - 1;
  };

  // Geometric slots needed for the rotation system.
  struct CrossSlots { int p_left = -1, p_right = -1, q_left = -1, q_right = -1, green = -1; };
  std::vector<CrossSlots> cs(w.crossing_edge_count);
  std::vector<int> boundary_edge(len, -1);
  std::map<int, int> red_last, blue_first, y_green;

  const auto arcs = A.arcs();
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    const Arc& a = arcs[i];
    const bool red = a.color == Color::Red;
    const WebColor col = red ? WebColor::Red : WebColor::Blue;
    const int first = red ? a.start - 1 : y_of_middle.at(a.start);
    const int last = red ? y_of_middle.at(a.end) : a.end - 1;
    int prev = first;
    int prev_cross = -1;
    const auto list = A.crossings_on_arc(i);
    for (std::size_t k = 0; k <= list.size(); ++k) {
      int target;
      const int c = k < list.size() ? list[k] : -1;
      const bool is_p = c >= 0 && A.crossings()[c].left_arc == i;
      if (c >= 0) target = is_p ? upper(c) : lower(c);
      else target = last;
      const int e = red ? add(prev, target, col) : add(target, prev, col);
      if (k == 0) {
        if (red) boundary_edge[a.start - 1] = e;
        else blue_first[a.start] = e;
      }
      if (c < 0) {
        if (red) red_last[a.end] = e;
        else boundary_edge[a.end - 1] = e;
      }
      if (prev_cross >= 0) {
        if (A.crossings()[prev_cross].left_arc == i) cs[prev_cross].p_right = e;
        else cs[prev_cross].q_right = e;
      }
      if (c >= 0) {
        if (is_p) cs[c].p_left = e;
        else cs[c].q_left = e;
        prev = is_p ? lower(c) : upper(c);
        prev_cross = c;
      }
    }
  }
  for (const auto& [middle, y] : y_of_middle) y_green[middle] = add(middle - 1, y, WebColor::Green);
  for (int c = 0; c < w.crossing_edge_count; ++c) {
    const bool p_red = arcs[A.crossings()[c].left_arc].color == Color::Red;
    // Red runs left to right and blue right to left, so the upper vertex
    // receives both of its arc edges when the left arc is red.
    cs[c].green = p_red ? add(lower(c), upper(c), WebColor::Green)
                        : add(upper(c), lower(c), WebColor::Green);
  }

  for (int s = 0; s < len; ++s) {
    const int m = s + 1;
    if (y_of_middle.count(m)) w.rotation[s] = {y_green.at(m)};
    else w.rotation[s] = {boundary_edge[s]};
  }
  for (const auto& [middle, y] : y_of_middle)
    w.rotation[y] = {blue_first.at(middle), red_last.at(middle), y_green.at(middle)};
  for (int c = 0; c < w.crossing_edge_count; ++c) {
    w.rotation[upper(c)] = {cs[c].q_right, cs[c].p_left, cs[c].green};
    w.rotation[lower(c)] = {cs[c].p_right, cs[c].green, cs[c].q_left};
  }
  return w;
}

WebCheck check_web(const Web& w) {
  WebCheck out;
  const int len = 3 * w.n;
  const int E = static_cast<int>(w.edges.size());

  for (int v = 0; v < w.vertex_count; ++v) {
    const auto& inc = w.rotation[v];
    if (w.is_boundary(v)) {
      if (inc.size() != 1) out.boundary_degree_one = false;
      else if (w.edges[inc[0]].from != v) out.boundary_outward = false;
      continue;
    }
    if (inc.size() != 3) {
      out.trivalent = false;
      continue;
    }
    int incoming = 0;
    std::set<WebColor> colors;
    for (int e : inc) {
      if (w.edges[e].to == v) ++incoming;
      colors.insert(w.edges[e].color);
    }
    if (incoming != 0 && incoming != 3) out.source_or_sink = false;
    if (colors.size() != 3) out.three_colors = false;
  }

  // Half-edges: 2e leaves edges[e].from, 2e+1 leaves edges[e].to. Circle edges
  // follow the web edges.
  std::vector<int> origin;
  for (const WebEdge& e : w.edges) {
    origin.push_back(e.from);
    origin.push_back(e.to);
  }
  std::vector<int> circle_right(len), circle_left(len);
  for (int s = 0; s < len; ++s) {
    const int t = (s + 1) % len;
    const int h = static_cast<int>(origin.size());
    origin.push_back(s);
    origin.push_back(t);
    circle_right[s] = h;
    circle_left[t] = h + 1;
  }
  const int total_half = static_cast<int>(origin.size());
  auto out_half = [&](int e, int v) { return w.edges[e].from == v ? 2 * e : 2 * e + 1; };
  std::vector<int> cw(total_half, -1);
  auto set_rotation = [&](const std::vector<int>& rot) {
    for (std::size_t i = 0; i < rot.size(); ++i) cw[rot[i]] = rot[(i + rot.size() - 1) % rot.size()];
  };
  for (int v = 0; v < w.vertex_count; ++v) {
    std::vector<int> rot;
    if (w.is_boundary(v)) rot.push_back(circle_right[v]);
    for (int e : w.rotation[v]) rot.push_back(out_half(e, v));
    if (w.is_boundary(v)) rot.push_back(circle_left[v]);
    set_rotation(rot);
  }
  std::vector<int> face(total_half, -1);
  int faces = 0;
  for (int h0 = 0; h0 < total_half; ++h0) {
    if (face[h0] >= 0 || cw[h0] < 0) continue;
    int h = h0;
    int size = 0;
    bool touches_circle = false;
    do {
      face[h] = faces;
      ++size;
      if (h >= 2 * E) touches_circle = true;
      h = cw[h ^ 1];
    } while (h != h0);
    if (!touches_circle) out.interior_face_sizes.push_back(size);
    ++faces;
  }
  out.euler = w.vertex_count - (E + len) + faces == 2;
  return out;
}

}  // namespace webfaces
