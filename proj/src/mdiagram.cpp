#include "webfaces/mdiagram.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <boost/multiprecision/gmp.hpp>

namespace webfaces {

MDiagram build_mdiagram(const LatticePath& p, bool record_trace) {
  return build_mdiagram(p.steps(), record_trace);
}

MDiagram build_mdiagram(std::span<const Step> steps, bool record_trace) {
  MDiagram d;
  d.n = static_cast<int>(steps.size() / 3);
  d.arcs.reserve(2 * d.n);
  d.triples.reserve(d.n);
  std::vector<int> open_red;
  std::vector<int> open_blue;
  std::map<int, int> first_of_middle;  // middle step -> red start
  std::vector<OpenArc> mixed;

  auto remove_from_mixed = [&](int start) {
    auto it = std::find_if(mixed.begin(), mixed.end(),
                           [&](const OpenArc& a) { return a.start == start; });
    mixed.erase(it);
  };

  for (std::size_t i = 0; i < steps.size(); ++i) {
    const int s = static_cast<int>(i) + 1;
    switch (steps[i]) {
      case Step::S1:
        open_red.push_back(s);
        if (record_trace) mixed.push_back({s, Color::Red});
        break;
      case Step::S2: {
        if (open_red.empty())
          throw std::logic_error("build_mdiagram: no open red arc at step " + std::to_string(s));
        const int j = open_red.back();
        open_red.pop_back();
        d.arcs.push_back({j, s, Color::Red});
        first_of_middle[s] = j;
        open_blue.push_back(s);
        if (record_trace) {
          remove_from_mixed(j);
          mixed.push_back({s, Color::Blue});
        }
        break;
      }
      case Step::S3: {
        if (open_blue.empty())
          throw std::logic_error("build_mdiagram: no open blue arc at step " + std::to_string(s));
        const int k = open_blue.back();
        open_blue.pop_back();
        d.arcs.push_back({k, s, Color::Blue});
        d.triples.push_back({first_of_middle.at(k), k, s});
        if (record_trace) remove_from_mixed(k);
        break;
      }
    }
    if (record_trace) d.stack_trace.push_back(mixed);
  }
  std::sort(d.triples.begin(), d.triples.end(),
            [](const MTriple& x, const MTriple& y) { return x.middle < y.middle; });
  return d;
}

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::SameColorCrossing: return "same-color-crossing";
    case ViolationKind::TripleCrossing: return "triple-crossing";
    case ViolationKind::MsCrossMoreThanOnce: return "ms-cross-more-than-once";
    case ViolationKind::BadPartition: return "bad-partition";
    case ViolationKind::BadArc: return "bad-arc";
  }
  return "unknown";
}

std::vector<Violation> validate(const MDiagram& d) {
  using Q = boost::multiprecision::mpq_rational;
  std::vector<Violation> out;
  const int len = 3 * d.n;

  for (const Arc& a : d.arcs)
    if (a.start >= a.end || a.start < 1 || a.end > len)
      out.push_back({ViolationKind::BadArc,
                     "(" + std::to_string(a.start) + "," + std::to_string(a.end) + ")"});

  // Each step must occupy exactly one position of exactly one m, and the arcs
  // of each m must be present with the right colours.
  std::vector<int> uses(len + 1, 0);
  for (const MTriple& m : d.triples) {
    for (int s : {m.first, m.middle, m.last})
      if (s >= 1 && s <= len) ++uses[s];
    if (!(m.first < m.middle && m.middle < m.last))
      out.push_back({ViolationKind::BadPartition, "unordered m at middle " + std::to_string(m.middle)});
    const bool has_red = std::count(d.arcs.begin(), d.arcs.end(), Arc{m.first, m.middle, Color::Red}) == 1;
    const bool has_blue = std::count(d.arcs.begin(), d.arcs.end(), Arc{m.middle, m.last, Color::Blue}) == 1;
    if (!has_red || !has_blue)
      out.push_back({ViolationKind::BadArc, "m at middle " + std::to_string(m.middle) + " lacks its arcs"});
  }
  if (static_cast<int>(d.triples.size()) != d.n || d.arcs.size() != 2 * d.triples.size())
    out.push_back({ViolationKind::BadPartition, "wrong number of m's or arcs"});
  for (int s = 1; s <= len; ++s)
    if (uses[s] != 1)
      out.push_back({ViolationKind::BadPartition, "step " + std::to_string(s) + " used " +
                                                     std::to_string(uses[s]) + " times"});

  std::vector<int> m_of_arc(d.arcs.size(), -1);
  for (std::size_t i = 0; i < d.arcs.size(); ++i) {
    const Arc& a = d.arcs[i];
    for (std::size_t k = 0; k < d.triples.size(); ++k) {
      const MTriple& m = d.triples[k];
      if ((a.color == Color::Red && a.start == m.first && a.end == m.middle) ||
          (a.color == Color::Blue && a.start == m.middle && a.end == m.last))
        m_of_arc[i] = static_cast<int>(k);
    }
  }

  // Crossing points as exact (x, y^2) pairs for the concurrency check.
  std::map<std::pair<Q, Q>, int> points;
  std::map<std::pair<int, int>, int> m_crossings;
  for (std::size_t i = 0; i < d.arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < d.arcs.size(); ++j) {
      const Arc& x = d.arcs[i];
      const Arc& y = d.arcs[j];
      if (!arcs_cross(x, y)) continue;
      if (x.color == y.color)
        out.push_back({ViolationKind::SameColorCrossing,
                       std::string(1, color_char(x.color)) + "(" + std::to_string(x.start) + "," +
                           std::to_string(x.end) + ") x (" + std::to_string(y.start) + "," +
                           std::to_string(y.end) + ")"});
      const Q px(x.start * x.end - y.start * y.end, (x.start + x.end) - (y.start + y.end));
      const Q y2 = -(px - x.start) * (px - x.end);
      if (++points[{px, y2}] == 2)
        out.push_back({ViolationKind::TripleCrossing, "three or more arcs meet at one point"});
      const int mi = m_of_arc[i];
      const int mj = m_of_arc[j];
      if (mi >= 0 && mj >= 0 && mi != mj) {
        if (++m_crossings[{std::min(mi, mj), std::max(mi, mj)}] == 2)
          out.push_back({ViolationKind::MsCrossMoreThanOnce,
                         "m's at middles " + std::to_string(d.triples[mi].middle) + " and " +
                             std::to_string(d.triples[mj].middle)});
      }
    }
  }
  return out;
}

std::pair<int, int> open_arc_profile(const LatticePath& p, int t) {
  if (t < 0 || t > static_cast<int>(p.length()))
    throw std::out_of_range("open_arc_profile: step index out of range");
  int rows[3] = {0, 0, 0};
  const auto steps = p.steps();
  for (int i = 0; i < t; ++i) ++rows[static_cast<int>(steps[i])];
  return {rows[0] - rows[1], rows[1] - rows[2]};
}

Tableau3xN mdiagram_to_tableau(const MDiagram& d) {
  const int len = 3 * d.n;
  std::vector<int> row_of(len + 1, -1);
  for (const MTriple& m : d.triples) {
    row_of[m.first] = 0;
    row_of[m.middle] = 1;
    row_of[m.last] = 2;
  }
  Tableau3xN t;
  for (int s = 1; s <= len; ++s) {
    if (row_of[s] < 0) throw std::invalid_argument("mdiagram_to_tableau: step not covered");
    t.rows[row_of[s]].push_back(s);
  }
  return t;
}

}  // namespace webfaces
