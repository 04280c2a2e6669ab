#include "cutgrid/patch.hpp"

#include <algorithm>
#include <map>

namespace cutgrid {

bool is_reflex(const Vec3& n1, const Vec3& n2, const Vec3& edge_dir,
               double tau_reflex) {
  // For a convex edge (seen from outside) the normals open away from each
  // other: cross(n1, n2) aligns with the edge as traversed by f1. A negative
  // projection beyond tau means a concave fold. Near-flat pairs stay convex.
  return dot(cross(n1, n2), normalized(edge_dir)) < -tau_reflex;
}

std::vector<ReflexEdge> reflex_edges(const FacetPatch& patch, double tau_reflex) {
  struct HalfEdge {
    int facet;
    bool forward;  // traversed min->max vertex
  };
  std::map<std::pair<int, int>, std::vector<HalfEdge>> incidence;
  for (size_t t = 0; t < patch.tris.size(); ++t) {
    const auto& tri = patch.tris[t];
    for (int e = 0; e < 3; ++e) {
      int a = tri[e], b = tri[(e + 1) % 3];
      incidence[{std::min(a, b), std::max(a, b)}].push_back({int(t), a < b});
    }
  }

  std::vector<ReflexEdge> out;
  for (const auto& [key, halves] : incidence) {
    if (halves.size() != 2) continue;  // boundary or non-manifold: skipped
    if (halves[0].forward == halves[1].forward) continue;  // inconsistent winding
    const HalfEdge& h1 = halves[0];
    const HalfEdge& h2 = halves[1];
    Vec3 a = patch.points[key.first];
    Vec3 b = patch.points[key.second];
    // Edge direction as traversed by h1's facet.
    Vec3 dir = h1.forward ? b - a : a - b;
    const Vec3& n1 = patch.normals[h1.facet];
    const Vec3& n2 = patch.normals[h2.facet];
    if (is_reflex(n1, n2, dir, tau_reflex)) {
      ReflexEdge re;
      re.key = key;
      re.a = h1.forward ? a : b;
      re.b = h1.forward ? b : a;
      re.n1 = n1;
      re.n2 = n2;
      re.f1 = h1.facet;
      re.f2 = h2.facet;
      out.push_back(re);
    }
  }
  return out;  // map iteration keeps keys sorted
}

Plane plane_through_reflex_edge(const Vec3& a, const Vec3& b, const Vec3& n1,
                                const Vec3& n2, double tol) {
  // Each incident facet lies in the half-plane spanned by the edge and its
  // own in-plane direction away from the edge: u1 = n1 x e for the facet that
  // traverses the edge forward, u2 = -(n2 x e) for the one traversing it
  // backward. The plane through the edge with normal u2 - u1 then satisfies
  // dot(normal, u1) <= 0 <= dot(normal, u2), so facet 1 lies entirely on the
  // non-positive side and facet 2 on the non-negative side. (The normal
  // bisector n1 + n2 does not have this property: for a right-angle concave
  // fold both facets end up on the same side of it.)
  Vec3 e = normalized(b - a);
  Vec3 u1 = normalized(cross(n1, e));
  Vec3 u2 = normalized(cross(e, n2));
  Vec3 w = u2 - u1;
  if (norm(w) < tol) w = cross(n1, e);  // u1 == u2 only for a degenerate fold
  w = w - e * dot(w, e);
  Vec3 normal = normalized(w);
  return Plane{normal, dot(normal, a)};
}

}  // namespace cutgrid
