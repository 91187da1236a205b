#pragma once
#include <cmath>
#include <complex>

namespace radosc {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

struct Vec3c {
  std::complex<double> x, y, z;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

inline Vec3c operator+(Vec3c a, Vec3c b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3c operator-(Vec3c a, Vec3c b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3c operator*(std::complex<double> s, Vec3c a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3c to_complex(Vec3 a) { return {a.x, a.y, a.z}; }

/// Projection of a complex vector onto a real direction.
inline std::complex<double> dot(Vec3 a, Vec3c b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm(Vec3c a) {
  return std::sqrt(std::norm(a.x) + std::norm(a.y) + std::norm(a.z));
}

} // namespace radosc
