#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "webfaces/arrangement.hpp"
#include "webfaces/mdiagram.hpp"
#include "webfaces/sampler.hpp"
#include "webfaces/web.hpp"

using namespace webfaces;

namespace {

MDiagram fig_face_example() {
  Tableau3xN t;
  t.rows = {std::vector<int>{1, 3, 4, 7, 8}, {2, 6, 10, 12, 13}, {5, 9, 11, 14, 15}};
  return build_mdiagram(tableau_to_path(t));
}

int size_rule(const FaceType& t) {
  const int k = static_cast<int>(t.counts.size());
  return k % 2 == 0 ? k + 4 : k + 5;
}

struct Invariants {
  int faces = 0;
  bool ok = true;
};

void check_all(const MDiagram& d) {
  const Arrangement A = Arrangement::build(d);
  REQUIRE(A.euler_holds());
  const auto recs = classify_faces(A);
  std::vector<int> sizes;
  for (const FaceRecord& f : recs) {
    CHECK(f.web_size == f.mdiagram_segments + 2);
    CHECK(f.web_size >= 6);
    CHECK(f.web_size % 2 == 0);
    CHECK(f.web_size == size_rule(f.type));
    CHECK(f.depth >= 1);
    CHECK_FALSE(f.irregular);
    CHECK((f.upper_segments == 1 || f.upper_segments == 2));
    for (int c : f.type.counts) CHECK(c >= 1);
    sizes.push_back(f.web_size);
  }
  const Web w = to_web(d);
  const WebCheck wc = check_web(w);
  CHECK(wc.ok());
  std::vector<int> web_sizes = wc.interior_face_sizes;
  std::sort(sizes.begin(), sizes.end());
  std::sort(web_sizes.begin(), web_sizes.end());
  CHECK(sizes == web_sizes);
}

}  // namespace

TEST_CASE("worked face: type (1,1,2,1),B with one arc edge above and five below") {
  const Arrangement A = Arrangement::build(fig_face_example());
  const auto recs = classify_faces(A);
  REQUIRE(recs.size() == 1);
  const FaceRecord& f = recs[0];
  CHECK(to_string(f.type) == "(1,1,2,1),B");
  CHECK(f.web_size == 8);
  CHECK(f.upper_segments == 1);
  CHECK(f.mdiagram_segments == 6);
  CHECK(f.depth == 1);
  CHECK(f.first_step == 2);
  CHECK_FALSE(f.direction_ambiguous);
  CHECK(A.faces()[f.face].pinned);
}

TEST_CASE("every diagram with n <= 5 satisfies the face invariants") {
  for (int n = 1; n <= 5; ++n)
    for (const LatticePath& p : enumerate_paths(n)) check_all(build_mdiagram(p));
}

TEST_CASE("n = 3: three interior faces over all 42 webs, all hexagons") {
  int faces = 0, from_web = 0;
  for (const LatticePath& p : enumerate_paths(3)) {
    const MDiagram d = build_mdiagram(p);
    for (const FaceRecord& f : classify_faces(Arrangement::build(d))) {
      CHECK(f.web_size == 6);
      ++faces;
    }
    from_web += static_cast<int>(check_web(to_web(d)).interior_face_sizes.size());
  }
  CHECK(faces == 3);
  CHECK(from_web == 3);
}

TEST_CASE("property: random diagrams up to n = 300") {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 5 + static_cast<int>(gen() % 296);
    check_all(build_mdiagram(sample_path(n, gen())));
  }
}

TEST_CASE("crossings: exact abscissae, one per interleaved pair, sorted along arcs") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 40);
    const MDiagram d = build_mdiagram(sample_path(n, gen()));
    const Arrangement A = Arrangement::build(d);
    int pairs = 0;
    for (std::size_t i = 0; i < d.arcs.size(); ++i)
      for (std::size_t j = i + 1; j < d.arcs.size(); ++j) pairs += arcs_cross(d.arcs[i], d.arcs[j]);
    CHECK(static_cast<int>(A.crossings().size()) == pairs);
    for (const CrossingPoint& c : A.crossings()) {
      const Arc& l = A.arcs()[c.left_arc];
      const Arc& r = A.arcs()[c.right_arc];
      CHECK(l.start < r.start);
      // Equal heights on both semicircles at x.
      const double x = c.x.to_double();
      const double hl = (x - l.start) * (l.end - x);
      const double hr = (x - r.start) * (r.end - x);
      CHECK(hl == doctest::Approx(hr).epsilon(1e-12));
      CHECK(hl > 0);
    }
    for (int a = 0; a < static_cast<int>(A.arcs().size()); ++a) {
      const auto on = A.crossings_on_arc(a);
      for (std::size_t k = 0; k < on.size(); ++k) {
        CHECK(A.position_on_arc(on[k], a) == static_cast<int>(k));
        if (k > 0) CHECK(A.crossings()[on[k - 1]].x < A.crossings()[on[k]].x);
      }
    }
  }
}

TEST_CASE("affine boundary positions give the same face records") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(gen() % 30);
    const MDiagram d = build_mdiagram(sample_path(n, gen()));
    std::vector<std::int64_t> pos(3 * n);
    for (int s = 1; s <= 3 * n; ++s) pos[s - 1] = 3 * s + 7;
    const auto a = classify_faces(Arrangement::build(d));
    const auto b = classify_faces(Arrangement::build(d, pos));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].type == b[i].type);
      CHECK(a[i].web_size == b[i].web_size);
      CHECK(a[i].depth == b[i].depth);
    }
  }
}

TEST_CASE("face depths: boundary faces at 0, interior faces reachable") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Arrangement A = Arrangement::build(build_mdiagram(sample_path(20 + static_cast<int>(gen() % 200), gen())));
    const auto depth = face_depths(A);
    REQUIRE(depth.size() == A.faces().size());
    for (std::size_t f = 0; f < depth.size(); ++f) {
      if (A.faces()[f].boundary) CHECK(depth[f] == 0);
      else CHECK(depth[f] >= 1);
    }
  }
}

TEST_CASE("face type strings round-trip") {
  const FaceType t = parse_face_type("1,1,2,1:B");
  CHECK(t.counts == std::vector<int>{1, 1, 2, 1});
  CHECK(t.start == Color::Blue);
  CHECK(parse_face_type("(3),R") == FaceType{{3}, Color::Red});
  CHECK(parse_face_type(to_string(t)) == t);
  CHECK_THROWS_AS(parse_face_type("1,x:B"), std::invalid_argument);
  CHECK_THROWS_AS(parse_face_type("1,2:Q"), std::invalid_argument);
  CHECK_THROWS_AS(parse_face_type(""), std::invalid_argument);
}

TEST_CASE("Rational64 compares by cross products") {
  CHECK(Rational64{1, 3} < Rational64{1, 2});
  CHECK(Rational64{2, 4} == Rational64{1, 2});
  CHECK(Rational64{-1, 2} < Rational64{0, 1});
  const std::int64_t big = 1LL << 40;
  CHECK(Rational64{big + 1, big} > Rational64{1, 1});
}

TEST_CASE("web orientation: every interior vertex is a source or sink") {
  const Web w = to_web(fig_face_example());
  const WebCheck c = check_web(w);
  CHECK(c.trivalent);
  CHECK(c.source_or_sink);
  CHECK(c.three_colors);
  CHECK(c.boundary_outward);
  CHECK(c.euler);
  CHECK(c.interior_face_sizes == std::vector<int>{8});
  CHECK(w.vertex_count == 15 + w.y_vertex_count + 2 * w.crossing_edge_count);
}
