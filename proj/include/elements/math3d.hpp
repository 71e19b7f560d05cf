#pragma once

// Double-precision linear algebra for the engine.
//
// Conventions: column vectors, column-major storage, right-handed eye space
// looking down -z, GL clip depth range [-1, 1]. Applying A then B is B * A.

#include <array>
#include <cmath>
#include <numbers>

namespace elements {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
    constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }
/// Returns v unchanged when it has zero length.
inline Vec3 normalize(const Vec3& v) {
    const double len = length(v);
    return len > 0.0 ? v / len : v;
}
constexpr Vec3 lerp(const Vec3& a, const Vec3& b, double u) { return a + (b - a) * u; }

struct Vec4 {
    double x = 0.0, y = 0.0, z = 0.0, w = 0.0;

    constexpr Vec4() = default;
    constexpr Vec4(double x_, double y_, double z_, double w_) : x(x_), y(y_), z(z_), w(w_) {}
    constexpr Vec4(const Vec3& v, double w_) : x(v.x), y(v.y), z(v.z), w(w_) {}

    constexpr Vec3 xyz() const { return {x, y, z}; }
    constexpr bool operator==(const Vec4&) const = default;
};

/// 4x4 matrix, column-major: element (row, col) lives at m[col * 4 + row].
struct Mat4 {
    std::array<double, 16> m{};

    static constexpr Mat4 identity() {
        Mat4 r;
        r.m[0] = r.m[5] = r.m[10] = r.m[15] = 1.0;
        return r;
    }
    /// Builds from 16 values listed row by row (the way matrices are written).
    static constexpr Mat4 from_rows(const std::array<double, 16>& rows) {
        Mat4 r;
        for (int row = 0; row < 4; ++row)
            for (int col = 0; col < 4; ++col) r(row, col) = rows[row * 4 + col];
        return r;
    }

    constexpr double operator()(int row, int col) const { return m[col * 4 + row]; }
    constexpr double& operator()(int row, int col) { return m[col * 4 + row]; }

    constexpr Vec3 column3(int col) const { return {m[col * 4], m[col * 4 + 1], m[col * 4 + 2]}; }
    constexpr bool operator==(const Mat4&) const = default;
};

constexpr Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int col = 0; col < 4; ++col) {
        for (int row = 0; row < 4; ++row) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += a(row, k) * b(k, col);
            r(row, col) = s;
        }
    }
    return r;
}

constexpr Vec4 operator*(const Mat4& a, const Vec4& v) {
    return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z + a(0, 3) * v.w,
            a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z + a(1, 3) * v.w,
            a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z + a(2, 3) * v.w,
            a(3, 0) * v.x + a(3, 1) * v.y + a(3, 2) * v.z + a(3, 3) * v.w};
}

/// Affine point transform (w = 1), no perspective divide.
constexpr Vec3 transform_point(const Mat4& a, const Vec3& p) { return (a * Vec4(p, 1.0)).xyz(); }
constexpr Vec3 transform_direction(const Mat4& a, const Vec3& d) { return (a * Vec4(d, 0.0)).xyz(); }

Mat4 transpose(const Mat4& a);
double determinant(const Mat4& a);
/// Throws SingularMatrix when |det| < 1e-12.
Mat4 invert(const Mat4& a);
double max_abs_diff(const Mat4& a, const Mat4& b);

struct Quaternion {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion identity() { return {}; }
    /// Rotation by `angle` radians about `axis` (normalized internally); throws DegenerateAxis.
    static Quaternion from_axis_angle(const Vec3& axis, double angle);

    constexpr Vec3 vec() const { return {x, y, z}; }
    constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }
    constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}
constexpr Quaternion operator*(const Quaternion& q, double s) { return {q.w * s, q.x * s, q.y * s, q.z * s}; }
constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr double dot(const Quaternion& a, const Quaternion& b) {
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm(const Quaternion& q) { return std::sqrt(dot(q, q)); }
inline Quaternion normalize(const Quaternion& q) { return q * (1.0 / norm(q)); }

Vec3 rotate(const Quaternion& q, const Vec3& v);
Mat4 quat_to_mat(const Quaternion& q);
/// Extracts the rotation of a pure rotation matrix (upper 3x3 orthonormal, det +1).
Quaternion quat_from_rotation(const Mat4& r);
/// Angle of the relative rotation between two unit quaternions, in [0, pi].
double quat_angle_between(const Quaternion& a, const Quaternion& b);

/// Shortest-arc spherical interpolation; falls back to normalized lerp below 1e-6 rad.
Quaternion quat_slerp(const Quaternion& q0, const Quaternion& q1, double u);

struct DualQuaternion {
    Quaternion real;
    Quaternion dual{0.0, 0.0, 0.0, 0.0};
};

DualQuaternion dq_from_rt(const Quaternion& r, const Vec3& t);
Mat4 dq_to_mat(const DualQuaternion& dq);

Mat4 mat_translate(const Vec3& t);
Mat4 mat_scale(double s);
Mat4 mat_scale(const Vec3& s);
/// Throws DegenerateAxis when |axis| < 1e-12.
Mat4 mat_rotate(const Vec3& axis, double angle);

/// T * R * S; throws NonUnitQuaternion (|r| off by > 1e-6) or InvalidArgument (s <= 0).
Mat4 compose_trs(const Vec3& t, const Quaternion& r, double s);

Mat4 perspective(double fovy, double aspect, double near, double far);
Mat4 ortho(double left, double right, double bottom, double top, double near, double far);
Mat4 lookat(const Vec3& eye, const Vec3& target, const Vec3& up);

inline constexpr double kPi = std::numbers::pi;
constexpr double radians(double degrees) { return degrees * (kPi / 180.0); }

} // namespace elements
