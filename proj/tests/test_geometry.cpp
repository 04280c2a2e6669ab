#include <doctest.h>

#include <cmath>
#include <random>

#include "cutgrid/patch.hpp"
#include "cutgrid/polygon.hpp"
#include "cutgrid/polytope.hpp"
#include "cutgrid/shapes.hpp"

using namespace cutgrid;

namespace {
constexpr double kTol = 1e-12;
}

TEST_CASE("unit box polytope basics") {
  Polytope box = make_box({{0, 0, 0}, {1, 1, 1}});
  CHECK(box.vertices.size() == 8);
  CHECK(box.faces.size() == 6);
  CHECK(polytope_volume(box) == doctest::Approx(1.0).epsilon(1e-15));
  Vec3 c = polytope_centroid(box);
  CHECK(c.x == doctest::Approx(0.5));
  CHECK(c.y == doctest::Approx(0.5));
  CHECK(c.z == doctest::Approx(0.5));
  CHECK(euler_characteristic(box) == 2);
  CHECK(is_convex(box, 1e-12));
  for (int f = 0; f < 6; ++f)
    CHECK(polytope_face_area(box, f) == doctest::Approx(1.0));
  // x- face normal points along -x
  CHECK(polytope_face_normal(box, 0).x == doctest::Approx(-1.0));
  CHECK(polytope_face_normal(box, 1).x == doctest::Approx(1.0));
  CHECK(polytope_face_normal(box, 5).z == doctest::Approx(1.0));
}

TEST_CASE("point containment") {
  Polytope box = make_box({{0, 0, 0}, {1, 1, 1}});
  CHECK(point_inside(box, {0.5, 0.5, 0.5}, 1e-12));
  CHECK(point_inside(box, {0.0, 0.0, 0.0}, 1e-9));  // corner, within tol
  CHECK(!point_inside(box, {1.5, 0.5, 0.5}, 1e-12));
}

TEST_CASE("axis-aligned split shares the cap exactly") {
  Polytope box = make_box({{0, 0, 0}, {1, 1, 1}});
  Plane plane = Plane::from_point_normal({0.25, 0, 0}, {1, 0, 0});
  auto parts = split_polytope(box, plane, kTol, kFaceTagSplit);
  CHECK(polytope_volume(parts.below) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(polytope_volume(parts.above) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(euler_characteristic(parts.below) == 2);
  CHECK(euler_characteristic(parts.above) == 2);
  // Both halves carry the split-cap tag exactly once.
  int caps_below = 0, caps_above = 0;
  for (int t : parts.below.face_tags) caps_below += t == kFaceTagSplit;
  for (int t : parts.above.face_tags) caps_above += t == kFaceTagSplit;
  CHECK(caps_below == 1);
  CHECK(caps_above == 1);
}

TEST_CASE("split keeps everything on one side") {
  Polytope box = make_box({{0, 0, 0}, {1, 1, 1}});
  Plane far_plane = Plane::from_point_normal({5, 0, 0}, {1, 0, 0});
  auto parts = split_polytope(box, far_plane, kTol, kFaceTagSplit);
  CHECK(polytope_volume(parts.below) == doctest::Approx(1.0));
  CHECK(parts.above.empty());

  auto flipped_parts = split_polytope(box, far_plane.flipped(), kTol, kFaceTagSplit);
  CHECK(flipped_parts.below.empty());
  CHECK(polytope_volume(flipped_parts.above) == doctest::Approx(1.0));
}

TEST_CASE("randomized split additivity, convexity and Euler formula") {
  Polytope box = make_box({{0, 0, 0}, {1, 1, 1}});
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> in01(0.05, 0.95);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);

  int nonempty_pairs = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Vec3 point{in01(rng), in01(rng), in01(rng)};
    Vec3 normal{sym(rng), sym(rng), sym(rng)};
    if (norm(normal) < 1e-3) continue;
    Plane plane = Plane::from_point_normal(point, normalized(normal));

    auto parts = split_polytope(box, plane, kTol, kFaceTagSplit);
    double below = polytope_volume(parts.below);
    double above = polytope_volume(parts.above);
    CHECK(std::abs(below + above - 1.0) < 1e-12);
    CHECK(below >= -1e-15);
    CHECK(above >= -1e-15);
    if (!parts.below.empty()) {
      CHECK(euler_characteristic(parts.below) == 2);
      CHECK(is_convex(parts.below, 1e-9));
    }
    if (!parts.above.empty()) {
      CHECK(euler_characteristic(parts.above) == 2);
      CHECK(is_convex(parts.above, 1e-9));
    }
    if (!parts.below.empty() && !parts.above.empty()) nonempty_pairs++;

    // Idempotence: clipping the kept half again changes nothing.
    Polytope again = clip_half_space(parts.below, plane, kTol, kFaceTagSplit);
    CHECK(std::abs(polytope_volume(again) - below) < 1e-12);
  }
  CHECK(nonempty_pairs > 900);  // planes through the interior actually split
}

TEST_CASE("repeated splits preserve volume") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> in01(0.1, 0.9);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);

  std::vector<Polytope> pieces{make_box({{0, 0, 0}, {1, 1, 1}})};
  for (int round = 0; round < 6; ++round) {
    Plane plane = Plane::from_point_normal(
        {in01(rng), in01(rng), in01(rng)},
        normalized(Vec3{sym(rng), sym(rng), sym(rng)}));
    std::vector<Polytope> next;
    for (const Polytope& p : pieces) {
      auto parts = split_polytope(p, plane, kTol, kFaceTagSplit);
      if (!parts.below.empty()) next.push_back(parts.below);
      if (!parts.above.empty()) next.push_back(parts.above);
    }
    pieces = std::move(next);
  }
  double total = 0.0;
  for (const Polytope& p : pieces) total += polytope_volume(p);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("polygon area, centroid and clipping") {
  Polygon square;
  square.points = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  square.normal = {0, 0, 1};
  CHECK(polygon_area(square) == doctest::Approx(1.0));
  Vec3 c = polygon_centroid(square);
  CHECK(c.x == doctest::Approx(0.5));
  CHECK(c.y == doctest::Approx(0.5));

  Plane half = Plane::from_point_normal({0.5, 0, 0}, {1, 0, 0});
  Polygon clipped = clip_polygon(square, half, kTol);
  CHECK(polygon_area(clipped) == doctest::Approx(0.5));

  Polygon gone = clip_polygon(square, Plane::from_point_normal({-1, 0, 0}, {1, 0, 0}), kTol);
  CHECK(gone.empty());

  Polygon boxed = clip_polygon_to_box(square, {{0.25, 0.25, -1}, {0.75, 0.75, 1}}, kTol);
  CHECK(polygon_area(boxed) == doctest::Approx(0.25));
}

TEST_CASE("reflex edge detection") {
  // Two facets meeting at the z-axis edge with a concave fold.
  Vec3 a{0, 0, 0}, b{0, 0, 1};
  SUBCASE("convex fold is not reflex") {
    Vec3 n1 = normalized(Vec3{1, 1, 0});
    Vec3 n2 = normalized(Vec3{-1, 1, 0});
    // Roof seen from +y: normals diverge -> convex.
    CHECK(!is_reflex(n1, n2, b - a, 1e-6));
  }
  SUBCASE("l-prism has exactly one reflex edge line") {
    SurfaceMesh l = l_prism_mesh();
    FacetPatch patch;
    patch.points = l.vertices;
    patch.tris = l.facets;
    patch.normals = l.facet_normals;
    auto edges = reflex_edges(patch, 1e-6);
    // The vertical edge at (0.5, 0.5): one triangle edge per z-segment.
    CHECK(!edges.empty());
    for (const auto& e : edges) {
      CHECK(e.a.x == doctest::Approx(0.5));
      CHECK(e.a.y == doctest::Approx(0.5));
      CHECK(e.b.x == doctest::Approx(0.5));
      CHECK(e.b.y == doctest::Approx(0.5));
    }
  }
}

TEST_CASE("splitting plane through a reflex edge separates the facets") {
  // Concave fold: interior opens toward -x-y diagonal.
  Vec3 a{0.5, 0.5, 0}, b{0.5, 0.5, 1};
  Vec3 n1{1, 0, 0};  // facet in the y-z plane at x=0.5, seen from +x
  Vec3 n2{0, 1, 0};
  CHECK(is_reflex(n1, n2, b - a, 1e-6) ==
        (dot(cross(n1, n2), normalized(b - a)) < -1e-6));
  Plane plane = plane_through_reflex_edge(a, b, n1, n2, 1e-12);
  CHECK(std::abs(plane.signed_distance(a)) < 1e-12);
  CHECK(std::abs(plane.signed_distance(b)) < 1e-12);
  // Facet 1's interior direction (n1 x edge) lies on the non-positive side.
  Vec3 into_f1 = cross(n1, normalized(b - a));
  CHECK(plane.signed_distance(a + into_f1 * 0.1) <= 1e-12);
}
