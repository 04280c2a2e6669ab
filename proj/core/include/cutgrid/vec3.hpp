#pragma once

#include <array>
#include <cmath>

namespace cutgrid {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return (&x)[i]; }
  double operator[](int i) const { return (&x)[i]; }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

inline Vec3 normalized(const Vec3& v) {
  double n = norm(v);
  return n > 0.0 ? v / n : Vec3{};
}

inline Vec3 cwise_min(const Vec3& a, const Vec3& b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
inline Vec3 cwise_max(const Vec3& a, const Vec3& b) {
  return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}

// Axis-aligned bounding box.
struct AABB {
  Vec3 min_corner;
  Vec3 max_corner;

  Vec3 extent() const { return max_corner - min_corner; }
  Vec3 center() const { return (min_corner + max_corner) * 0.5; }
  bool contains(const Vec3& p) const {
    return p.x >= min_corner.x && p.x <= max_corner.x &&
           p.y >= min_corner.y && p.y <= max_corner.y &&
           p.z >= min_corner.z && p.z <= max_corner.z;
  }
  bool overlaps(const AABB& o) const {
    return min_corner.x <= o.max_corner.x && max_corner.x >= o.min_corner.x &&
           min_corner.y <= o.max_corner.y && max_corner.y >= o.min_corner.y &&
           min_corner.z <= o.max_corner.z && max_corner.z >= o.min_corner.z;
  }
  void expand(const Vec3& p) {
    min_corner = cwise_min(min_corner, p);
    max_corner = cwise_max(max_corner, p);
  }
};

}  // namespace cutgrid
