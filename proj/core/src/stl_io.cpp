#include "cutgrid/stl_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "cutgrid/errors.hpp"

namespace cutgrid {

namespace {

float read_f32(const char* p) {
  float f;
  std::memcpy(&f, p, 4);  // little-endian host assumed
  return f;
}

uint32_t read_u32(const char* p) {
  uint32_t u;
  std::memcpy(&u, p, 4);
  return u;
}

SurfaceMesh parse_binary(const std::vector<char>& bytes, double weld_tol) {
  if (bytes.size() < 84) throw InputError("binary STL truncated: no header");
  uint32_t count = read_u32(bytes.data() + 80);
  if (bytes.size() != 84 + 50ull * count)
    throw InputError("binary STL facet count mismatch");
  if (count == 0) throw InputError("no facets");

  std::vector<std::array<Vec3, 3>> tris;
  std::vector<Vec3> normals;
  std::vector<int> labels;
  tris.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    const char* rec = bytes.data() + 84 + 50ull * i;
    auto v = [&](int k) {
      return Vec3{double(read_f32(rec + 12 * k)), double(read_f32(rec + 12 * k + 4)),
                  double(read_f32(rec + 12 * k + 8))};
    };
    normals.push_back(v(0));
    tris.push_back({v(1), v(2), v(3)});
    uint16_t attr;
    std::memcpy(&attr, rec + 48, 2);
    labels.push_back(int(attr));
  }
  return build_surface(tris, normals, labels, weld_tol);
}

SurfaceMesh parse_ascii(const std::vector<char>& bytes, double weld_tol) {
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  std::vector<std::array<Vec3, 3>> tris;
  std::vector<Vec3> normals;
  std::string tok;
  int solid_index = -1;
  std::vector<int> labels;

  auto expect = [&](const char* want) {
    if (!(in >> tok) || tok != want)
      throw InputError(std::string("ASCII STL: expected '") + want + "' got '" + tok + "'");
  };
  auto read_vec = [&]() {
    Vec3 v;
    if (!(in >> v.x >> v.y >> v.z)) throw InputError("ASCII STL: bad coordinate triple");
    return v;
  };

  while (in >> tok) {
    if (tok == "solid") {
      std::string line;
      std::getline(in, line);  // optional name
      solid_index++;
    } else if (tok == "facet") {
      expect("normal");
      Vec3 n = read_vec();
      expect("outer");
      expect("loop");
      std::array<Vec3, 3> tri;
      for (int k = 0; k < 3; ++k) {
        expect("vertex");
        tri[k] = read_vec();
      }
      expect("endloop");
      expect("endfacet");
      tris.push_back(tri);
      normals.push_back(n);
      // Multiple solids in one file keep distinct region labels.
      labels.push_back(std::max(solid_index, 0));
    } else if (tok == "endsolid") {
      std::string line;
      std::getline(in, line);
    } else {
      throw InputError("ASCII STL: unexpected token '" + tok + "'");
    }
  }
  if (tris.empty()) throw InputError("no facets");
  return build_surface(tris, normals, labels, weld_tol);
}

}  // namespace

SurfaceMesh parse_stl(const std::vector<char>& bytes, double weld_tol) {
  if (bytes.size() >= 84) {
    uint32_t count = read_u32(bytes.data() + 80);
    if (bytes.size() == 84 + 50ull * count) return parse_binary(bytes, weld_tol);
  }
  return parse_ascii(bytes, weld_tol);
}

SurfaceMesh load_stl(const std::string& path, double weld_tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open STL file: " + path);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return parse_stl(bytes, weld_tol);
}

std::vector<char> write_stl_ascii(const SurfaceMesh& mesh) {
  std::ostringstream out;
  out.precision(17);
  out << "solid cutgrid\n";
  for (size_t t = 0; t < mesh.facets.size(); ++t) {
    const Vec3& n = mesh.facet_normals[t];
    out << "  facet normal " << n.x << " " << n.y << " " << n.z << "\n"
        << "    outer loop\n";
    for (int k = 0; k < 3; ++k) {
      const Vec3& v = mesh.vertices[mesh.facets[t][k]];
      out << "      vertex " << v.x << " " << v.y << " " << v.z << "\n";
    }
    out << "    endloop\n  endfacet\n";
  }
  out << "endsolid cutgrid\n";
  std::string s = out.str();
  return {s.begin(), s.end()};
}

std::vector<char> write_stl_binary(const SurfaceMesh& mesh) {
  std::vector<char> bytes(84 + 50 * mesh.facets.size(), 0);
  uint32_t count = uint32_t(mesh.facets.size());
  std::memcpy(bytes.data() + 80, &count, 4);
  for (size_t t = 0; t < mesh.facets.size(); ++t) {
    char* rec = bytes.data() + 84 + 50 * t;
    auto put = [&](int k, const Vec3& v) {
      float f[3] = {float(v.x), float(v.y), float(v.z)};
      std::memcpy(rec + 12 * k, f, 12);
    };
    put(0, mesh.facet_normals[t]);
    for (int k = 0; k < 3; ++k) put(k + 1, mesh.vertices[mesh.facets[t][k]]);
    uint16_t attr = uint16_t(mesh.facet_labels[t]);
    std::memcpy(rec + 48, &attr, 2);
  }
  return bytes;
}

void save_stl(const SurfaceMesh& mesh, const std::string& path, bool binary) {
  auto bytes = binary ? write_stl_binary(mesh) : write_stl_ascii(mesh);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write STL file: " + path);
  out.write(bytes.data(), std::streamsize(bytes.size()));
}

}  // namespace cutgrid
