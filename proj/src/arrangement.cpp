#include "webfaces/arrangement.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace webfaces {

namespace {

Rational64 crossing_abscissa(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  // Circles centred on the baseline through (a,0),(b,0) and (c,0),(d,0):
  // x^2 - (a+b)x + ab = x^2 - (c+d)x + cd.
  std::int64_t num = a * b - c * d;
  std::int64_t den = (a + b) - (c + d);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return {num / g, den / g};
}

}  // namespace

Arrangement Arrangement::build(const MDiagram& d) {
  std::vector<std::int64_t> pos(3 * d.n);
  std::iota(pos.begin(), pos.end(), 1);
  return build(d, pos);
}

Arrangement Arrangement::build(const MDiagram& d, std::span<const std::int64_t> positions) {
  Arrangement A;
  const int n = d.n;
  const int len = 3 * n;
  if (static_cast<int>(positions.size()) != len)
    throw std::invalid_argument("Arrangement::build: need one position per boundary step");
  for (int i = 1; i < len; ++i)
    if (positions[i] <= positions[i - 1])
      throw std::invalid_argument("Arrangement::build: positions must increase");
  A.n_ = n;
  A.arcs_ = d.arcs;
  A.positions_.assign(positions.begin(), positions.end());
  const int arc_count = static_cast<int>(A.arcs_.size());

  // Sweep the boundary; a closing arc crosses exactly the open arcs of the
  // other colour that started after it.
  std::vector<std::vector<int>> starts_at(len + 1), ends_at(len + 1);
  for (int i = 0; i < arc_count; ++i) {
    starts_at[A.arcs_[i].start].push_back(i);
    ends_at[A.arcs_[i].end].push_back(i);
  }
  std::vector<int> open[2];
  for (int s = 1; s <= len; ++s) {
    for (int id : ends_at[s]) {
      const Arc& P = A.arcs_[id];
      auto& same = open[static_cast<int>(P.color)];
      auto& other = open[1 - static_cast<int>(P.color)];
      auto first = std::upper_bound(other.begin(), other.end(), P.start,
                                    [&](int st, int q) { return st < A.arcs_[q].start; });
      for (auto it = first; it != other.end(); ++it) {
        const Arc& Q = A.arcs_[*it];
        CrossingPoint c;
        c.left_arc = id;
        c.right_arc = *it;
        c.x = crossing_abscissa(positions[P.start - 1], positions[P.end - 1],
                                positions[Q.start - 1], positions[Q.end - 1]);
        A.crossings_.push_back(c);
      }
      auto self = std::find(same.rbegin(), same.rend(), id);
      if (self == same.rend()) throw std::logic_error("Arrangement::build: arc closed but not open");
      same.erase(std::next(self).base());
    }
    for (int id : starts_at[s]) open[static_cast<int>(A.arcs_[id].color)].push_back(id);
  }

  const int X = static_cast<int>(A.crossings_.size());
  A.arc_crossings_.assign(arc_count, {});
  for (int c = 0; c < X; ++c) {
    A.arc_crossings_[A.crossings_[c].left_arc].push_back(c);
    A.arc_crossings_[A.crossings_[c].right_arc].push_back(c);
  }
  A.crossing_pos_.assign(X, {-1, -1});
  for (int i = 0; i < arc_count; ++i) {
    auto& list = A.arc_crossings_[i];
    std::sort(list.begin(), list.end(),
              [&](int p, int q) { return A.crossings_[p].x < A.crossings_[q].x; });
    for (int k = 0; k < static_cast<int>(list.size()); ++k) {
      const CrossingPoint& c = A.crossings_[list[k]];
      A.crossing_pos_[list[k]][c.left_arc == i ? 0 : 1] = k;
    }
  }

  auto& H = A.half_edges_;
  auto add_edge = [&](int left_vertex, int right_vertex, EdgeKind kind, int arc) {
    const int h = static_cast<int>(H.size());
    H.push_back({left_vertex, h + 1, -1, -1, arc, kind, true});
    H.push_back({right_vertex, h, -1, -1, arc, kind, false});
    return h;  // rightward half-edge; h + 1 is leftward
  };

  // Per arc: first rightward half-edge (out of its start) and last leftward
  // half-edge (out of its end). Per crossing and arc: outgoing right/left.
  std::vector<int> arc_up_from_start(arc_count), arc_up_from_end(arc_count);
  std::vector<std::array<int, 4>> cross_out(X, {-1, -1, -1, -1});  // L-right, L-left, R-right, R-left
  for (int i = 0; i < arc_count; ++i) {
    const Arc& a = A.arcs_[i];
    const auto& list = A.arc_crossings_[i];
    int prev_vertex = a.start - 1;
    int prev_crossing = -1;
    for (std::size_t k = 0; k <= list.size(); ++k) {
      const int v = k < list.size() ? len + list[k] : a.end - 1;
      const int h = add_edge(prev_vertex, v, EdgeKind::Arc, i);
      if (k == 0) arc_up_from_start[i] = h;
      if (k == list.size()) arc_up_from_end[i] = h + 1;
      if (prev_crossing >= 0) {
        const int slot = A.crossings_[prev_crossing].left_arc == i ? 0 : 2;
        cross_out[prev_crossing][slot] = h;
      }
      if (k < list.size()) {
        const int slot = A.crossings_[list[k]].left_arc == i ? 1 : 3;
        cross_out[list[k]][slot] = h + 1;
        prev_crossing = list[k];
      }
      prev_vertex = v;
    }
  }
  std::vector<int> base_right(len, -1), base_left(len, -1);
  for (int s = 1; s < len; ++s) {
    const int h = add_edge(s - 1, s, EdgeKind::Baseline, -1);
    base_right[s - 1] = h;
    base_left[s] = h + 1;
  }
  if (len > 0) {
    // Leaves step 3n to the right and returns to step 1 from the left.
    const int h = add_edge(len - 1, 0, EdgeKind::Infinity, -1);
    base_right[len - 1] = h;
    base_left[0] = h + 1;
  }

  // Rotation systems (counter-clockwise) and next pointers.
  std::vector<int> cw_neighbor(H.size(), -1);
  auto set_rotation = [&](std::span<const int> rot) {
    const std::size_t m = rot.size();
    for (std::size_t i = 0; i < m; ++i) cw_neighbor[rot[i]] = rot[(i + m - 1) % m];
  };
  std::vector<int> arc_starting(len + 1, -1), arc_ending(len + 1, -1);
  for (int i = 0; i < arc_count; ++i) {
    arc_starting[A.arcs_[i].start] = i;
    arc_ending[A.arcs_[i].end] = i;
  }
  for (int s = 1; s <= len; ++s) {
    std::vector<int> rot;
    rot.push_back(base_right[s - 1]);
    if (arc_starting[s] >= 0) rot.push_back(arc_up_from_start[arc_starting[s]]);
    if (arc_ending[s] >= 0) rot.push_back(arc_up_from_end[arc_ending[s]]);
    rot.push_back(base_left[s - 1]);
    set_rotation(rot);
  }
  A.crossing_rot_.resize(X);
  for (int c = 0; c < X; ++c) {
    // Left of the crossing the left arc lies above, so toward the right it has
    // the smaller slope.
    const auto& o = cross_out[c];
    A.crossing_rot_[c] = {o[0], o[2], o[1], o[3]};
    set_rotation(A.crossing_rot_[c]);
  }
  for (std::size_t h = 0; h < H.size(); ++h) H[h].next = cw_neighbor[H[h].twin];

  for (std::size_t h0 = 0; h0 < H.size(); ++h0) {
    if (H[h0].face >= 0) continue;
    Face f;
    f.first_half_edge = static_cast<int>(h0);
    const int id = static_cast<int>(A.faces_.size());
    int h = static_cast<int>(h0);
    do {
      H[h].face = id;
      ++f.length;
      if (H[h].kind != EdgeKind::Arc) f.boundary = true;
      if (H[h].origin < 3 * A.n_) f.pinned = true;
      h = H[h].next;
    } while (h != static_cast<int>(h0));
    if (f.boundary) f.pinned = false;
    A.faces_.push_back(f);
  }

  if (!A.euler_holds()) throw std::logic_error("Arrangement::build: Euler's formula fails");
  return A;
}

int Arrangement::position_on_arc(int crossing, int arc) const {
  const CrossingPoint& c = crossings_[crossing];
  if (c.left_arc == arc) return crossing_pos_[crossing][0];
  if (c.right_arc == arc) return crossing_pos_[crossing][1];
  return -1;
}

std::vector<int> Arrangement::face_cycle(int face) const {
  std::vector<int> out;
  const int h0 = faces_[face].first_half_edge;
  int h = h0;
  do {
    out.push_back(h);
    h = half_edges_[h].next;
  } while (h != h0);
  return out;
}

std::array<int, 4> Arrangement::crossing_rotation(int crossing) const {
  return crossing_rot_[crossing];
}

std::pair<int, int> Arrangement::east_west_faces(int crossing) const {
  const auto& r = crossing_rot_[crossing];
  return {half_edges_[r[0]].face, half_edges_[r[2]].face};
}

std::string to_string(const FaceType& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.counts.size(); ++i) os << (i ? "," : "") << t.counts[i];
  os << ")," << color_char(t.start);
  return os.str();
}

FaceType parse_face_type(const std::string& s) {
  FaceType t;
  std::string body = s;
  for (char& ch : body)
    if (ch == '(' || ch == ')') ch = ' ';
  const auto sep = body.find_last_of(":,");
  if (sep == std::string::npos) throw std::invalid_argument("face type needs a colour: " + s);
  std::string colour = body.substr(sep + 1);
  colour.erase(std::remove(colour.begin(), colour.end(), ' '), colour.end());
  if (colour == "R") t.start = Color::Red;
  else if (colour == "B") t.start = Color::Blue;
  else throw std::invalid_argument("face type colour must be R or B: " + s);
  std::istringstream in(body.substr(0, sep));
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size() || v < 1) throw std::invalid_argument("bad face type entry: " + item);
    t.counts.push_back(v);
  }
  if (t.counts.empty()) throw std::invalid_argument("face type is empty: " + s);
  return t;
}

std::vector<int> face_depths(const Arrangement& a) {
  const int F = a.face_count();
  std::vector<std::vector<int>> adj(F);
  const auto H = a.half_edges();
  for (std::size_t h = 0; h < H.size(); h += 2) {
    if (H[h].kind != EdgeKind::Arc) continue;
    const int f = H[h].face;
    const int g = H[h + 1].face;
    if (f != g) {
      adj[f].push_back(g);
      adj[g].push_back(f);
    }
  }
  for (int c = 0; c < static_cast<int>(a.crossings().size()); ++c) {
    const auto [e, w] = a.east_west_faces(c);
    adj[e].push_back(w);
    adj[w].push_back(e);
  }
  std::vector<int> depth(F, -1);
  std::deque<int> queue;
  const auto faces = a.faces();
  for (int f = 0; f < F; ++f)
    if (faces[f].boundary) {
      depth[f] = 0;
      queue.push_back(f);
    }
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    for (int g : adj[f])
      if (depth[g] < 0) {
        depth[g] = depth[f] + 1;
        queue.push_back(g);
      }
  }
  return depth;
}

std::vector<FaceRecord> classify_faces(const Arrangement& a) {
  const auto depth = face_depths(a);
  const auto H = a.half_edges();
  const auto arcs = a.arcs();
  const auto crossings = a.crossings();
  std::vector<FaceRecord> out;

  auto descends = [&](const Arc& arc, const Rational64& x) {
    const __int128 lhs = static_cast<__int128>(2) * x.num;
    const __int128 rhs = static_cast<__int128>(a.position(arc.start) + a.position(arc.end)) * x.den;
    return lhs > rhs;
  };

  for (int f = 0; f < a.face_count(); ++f) {
    if (a.faces()[f].boundary) continue;
    const auto cycle = a.face_cycle(f);
    const int L = static_cast<int>(cycle.size());
    auto x_of = [&](int h) {
      const int v = H[h].origin;
      const int c = a.crossing_of_vertex(v);
      return c >= 0 ? crossings[c].x : Rational64{a.position(v + 1), 1};
    };
    int ip = 0, iq = 0;
    for (int k = 1; k < L; ++k) {
      const Rational64 x = x_of(cycle[k]);
      if (x < x_of(cycle[ip])) ip = k;
      if (x > x_of(cycle[iq])) iq = k;
    }
    FaceRecord r;
    r.face = f;
    r.mdiagram_segments = L;
    r.web_size = L + 2;
    const int lower = (iq - ip + L) % L;
    r.upper_segments = L - lower;
    r.depth = depth[f];
    r.first_step = 3 * a.n() + 1;
    for (int h : cycle) r.first_step = std::min(r.first_step, arcs[H[h].arc].start);

    for (int k = 1; k < lower; ++k) {
      const int h_out = cycle[(ip + k) % L];
      const int h_in = cycle[(ip + k - 1) % L];
      const int c = a.crossing_of_vertex(H[h_out].origin);
      const int along = H[h_in].arc;
      if (k == 1) r.type.start = arcs[along].color;
      if (c < 0) {
        // A boundary point where the incoming arc ends and the next one
        // starts; only the arc met there counts.
        if (a.position(arcs[along].end) != x_of(h_out).num) r.irregular = true;
        r.type.counts.push_back(1);
        continue;
      }
      const CrossingPoint& cp = crossings[c];
      if (along != cp.left_arc) r.irregular = true;
      const int on_arc = static_cast<int>(a.crossings_on_arc(along).size());
      r.type.counts.push_back(on_arc - a.position_on_arc(c, along));
      if (descends(arcs[cp.right_arc], cp.x)) r.direction_ambiguous = true;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace webfaces
