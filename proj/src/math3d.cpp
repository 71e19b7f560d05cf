#include "elements/math3d.hpp"

#include <algorithm>
#include <string>

#include "elements/error.hpp"

namespace elements {

namespace {

constexpr double kAxisEpsilon = 1e-12;
constexpr double kUnitTolerance = 1e-6;

void require_unit(const Quaternion& q, const char* what) {
    if (std::abs(norm(q) - 1.0) > kUnitTolerance)
        throw Error(ErrorCode::NonUnitQuaternion, std::string(what) + ": |q| = " + std::to_string(norm(q)));
}

} // namespace

Mat4 transpose(const Mat4& a) {
    Mat4 r;
    for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 4; ++col) r(row, col) = a(col, row);
    return r;
}

namespace {

// 2x2 minors shared by the determinant and the adjugate.
struct Minors {
    double s0, s1, s2, s3, s4, s5, c5, c4, c3, c2, c1, c0;

    explicit Minors(const Mat4& a) {
        s0 = a(0, 0) * a(1, 1) - a(1, 0) * a(0, 1);
        s1 = a(0, 0) * a(1, 2) - a(1, 0) * a(0, 2);
        s2 = a(0, 0) * a(1, 3) - a(1, 0) * a(0, 3);
        s3 = a(0, 1) * a(1, 2) - a(1, 1) * a(0, 2);
        s4 = a(0, 1) * a(1, 3) - a(1, 1) * a(0, 3);
        s5 = a(0, 2) * a(1, 3) - a(1, 2) * a(0, 3);
        c5 = a(2, 2) * a(3, 3) - a(3, 2) * a(2, 3);
        c4 = a(2, 1) * a(3, 3) - a(3, 1) * a(2, 3);
        c3 = a(2, 1) * a(3, 2) - a(3, 1) * a(2, 2);
        c2 = a(2, 0) * a(3, 3) - a(3, 0) * a(2, 3);
        c1 = a(2, 0) * a(3, 2) - a(3, 0) * a(2, 2);
        c0 = a(2, 0) * a(3, 1) - a(3, 0) * a(2, 1);
    }

    double det() const { return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0; }
};

} // namespace

double determinant(const Mat4& a) { return Minors(a).det(); }

Mat4 invert(const Mat4& a) {
    const Minors k(a);
    const double det = k.det();
    if (!(std::abs(det) >= 1e-12))
        throw Error(ErrorCode::SingularMatrix, "determinant " + std::to_string(det));
    const double inv = 1.0 / det;

    Mat4 r;
    r(0, 0) = (a(1, 1) * k.c5 - a(1, 2) * k.c4 + a(1, 3) * k.c3) * inv;
    r(0, 1) = (-a(0, 1) * k.c5 + a(0, 2) * k.c4 - a(0, 3) * k.c3) * inv;
    r(0, 2) = (a(3, 1) * k.s5 - a(3, 2) * k.s4 + a(3, 3) * k.s3) * inv;
    r(0, 3) = (-a(2, 1) * k.s5 + a(2, 2) * k.s4 - a(2, 3) * k.s3) * inv;

    r(1, 0) = (-a(1, 0) * k.c5 + a(1, 2) * k.c2 - a(1, 3) * k.c1) * inv;
    r(1, 1) = (a(0, 0) * k.c5 - a(0, 2) * k.c2 + a(0, 3) * k.c1) * inv;
    r(1, 2) = (-a(3, 0) * k.s5 + a(3, 2) * k.s2 - a(3, 3) * k.s1) * inv;
    r(1, 3) = (a(2, 0) * k.s5 - a(2, 2) * k.s2 + a(2, 3) * k.s1) * inv;

    r(2, 0) = (a(1, 0) * k.c4 - a(1, 1) * k.c2 + a(1, 3) * k.c0) * inv;
    r(2, 1) = (-a(0, 0) * k.c4 + a(0, 1) * k.c2 - a(0, 3) * k.c0) * inv;
    r(2, 2) = (a(3, 0) * k.s4 - a(3, 1) * k.s2 + a(3, 3) * k.s0) * inv;
    r(2, 3) = (-a(2, 0) * k.s4 + a(2, 1) * k.s2 - a(2, 3) * k.s0) * inv;

    r(3, 0) = (-a(1, 0) * k.c3 + a(1, 1) * k.c1 - a(1, 2) * k.c0) * inv;
    r(3, 1) = (a(0, 0) * k.c3 - a(0, 1) * k.c1 + a(0, 2) * k.c0) * inv;
    r(3, 2) = (-a(3, 0) * k.s3 + a(3, 1) * k.s1 - a(3, 2) * k.s0) * inv;
    r(3, 3) = (a(2, 0) * k.s3 - a(2, 1) * k.s1 + a(2, 2) * k.s0) * inv;
    return r;
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
    double d = 0.0;
    for (int i = 0; i < 16; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
    return d;
}

Quaternion Quaternion::from_axis_angle(const Vec3& axis, double angle) {
    const double len = length(axis);
    if (!(len >= kAxisEpsilon)) throw Error(ErrorCode::DegenerateAxis, "rotation axis has zero length");
    const Vec3 n = axis / len;
    const double s = std::sin(angle * 0.5);
    return {std::cos(angle * 0.5), n.x * s, n.y * s, n.z * s};
}

Vec3 rotate(const Quaternion& q, const Vec3& v) {
    // v' = v + 2w(u x v) + 2 u x (u x v)
    const Vec3 u = q.vec();
    const Vec3 t = cross(u, v) * 2.0;
    return v + t * q.w + cross(u, t);
}

Mat4 quat_to_mat(const Quaternion& q) {
    const double xx = q.x * q.x, yy = q.y * q.y, zz = q.z * q.z;
    const double xy = q.x * q.y, xz = q.x * q.z, yz = q.y * q.z;
    const double wx = q.w * q.x, wy = q.w * q.y, wz = q.w * q.z;
    Mat4 r = Mat4::identity();
    r(0, 0) = 1.0 - 2.0 * (yy + zz);
    r(0, 1) = 2.0 * (xy - wz);
    r(0, 2) = 2.0 * (xz + wy);
    r(1, 0) = 2.0 * (xy + wz);
    r(1, 1) = 1.0 - 2.0 * (xx + zz);
    r(1, 2) = 2.0 * (yz - wx);
    r(2, 0) = 2.0 * (xz - wy);
    r(2, 1) = 2.0 * (yz + wx);
    r(2, 2) = 1.0 - 2.0 * (xx + yy);
    return r;
}

Quaternion quat_from_rotation(const Mat4& r) {
    const double trace = r(0, 0) + r(1, 1) + r(2, 2);
    Quaternion q;
    if (trace > 0.0) {
        const double s = std::sqrt(trace + 1.0) * 2.0;
        q = {0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s, (r(1, 0) - r(0, 1)) / s};
    } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
        const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
        q = {(r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s, (r(0, 2) + r(2, 0)) / s};
    } else if (r(1, 1) > r(2, 2)) {
        const double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
        q = {(r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s, (r(1, 2) + r(2, 1)) / s};
    } else {
        const double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
        q = {(r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s, (r(1, 2) + r(2, 1)) / s, 0.25 * s};
    }
    // Canonical hemisphere so decompositions are stable.
    if (q.w < 0.0) q = q * -1.0;
    return normalize(q);
}

double quat_angle_between(const Quaternion& a, const Quaternion& b) {
    const double d = std::clamp(std::abs(dot(a, b)), 0.0, 1.0);
    return 2.0 * std::acos(d);
}

Quaternion quat_slerp(const Quaternion& q0, const Quaternion& q1, double u) {
    Quaternion target = q1;
    double cos_theta = dot(q0, q1);
    if (cos_theta < 0.0) {
        target = q1 * -1.0;
        cos_theta = -cos_theta;
    }
    const double theta = std::acos(std::clamp(cos_theta, -1.0, 1.0));
    if (theta < 1e-6) return normalize(q0 * (1.0 - u) + target * u);
    const double sin_theta = std::sin(theta);
    return q0 * (std::sin((1.0 - u) * theta) / sin_theta) + target * (std::sin(u * theta) / sin_theta);
}

DualQuaternion dq_from_rt(const Quaternion& r, const Vec3& t) {
    require_unit(r, "dq_from_rt");
    return {r, Quaternion(0.0, t.x, t.y, t.z) * r * 0.5};
}

Mat4 dq_to_mat(const DualQuaternion& dq) {
    require_unit(dq.real, "dq_to_mat");
    const Quaternion t = dq.dual * dq.real.conjugate() * 2.0;
    Mat4 r = quat_to_mat(dq.real);
    r(0, 3) = t.x;
    r(1, 3) = t.y;
    r(2, 3) = t.z;
    return r;
}

Mat4 mat_translate(const Vec3& t) {
    Mat4 r = Mat4::identity();
    r(0, 3) = t.x;
    r(1, 3) = t.y;
    r(2, 3) = t.z;
    return r;
}

Mat4 mat_scale(double s) { return mat_scale(Vec3(s, s, s)); }

Mat4 mat_scale(const Vec3& s) {
    Mat4 r = Mat4::identity();
    r(0, 0) = s.x;
    r(1, 1) = s.y;
    r(2, 2) = s.z;
    return r;
}

Mat4 mat_rotate(const Vec3& axis, double angle) {
    const double len = length(axis);
    if (!(len >= kAxisEpsilon)) throw Error(ErrorCode::DegenerateAxis, "rotation axis has zero length");
    const Vec3 n = axis / len;
    const double c = std::cos(angle), s = std::sin(angle), k = 1.0 - c;
    Mat4 r = Mat4::identity();
    r(0, 0) = c + n.x * n.x * k;
    r(0, 1) = n.x * n.y * k - n.z * s;
    r(0, 2) = n.x * n.z * k + n.y * s;
    r(1, 0) = n.y * n.x * k + n.z * s;
    r(1, 1) = c + n.y * n.y * k;
    r(1, 2) = n.y * n.z * k - n.x * s;
    r(2, 0) = n.z * n.x * k - n.y * s;
    r(2, 1) = n.z * n.y * k + n.x * s;
    r(2, 2) = c + n.z * n.z * k;
    return r;
}

Mat4 compose_trs(const Vec3& t, const Quaternion& r, double s) {
    require_unit(r, "compose_trs");
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "compose_trs: scale must be positive");
    return mat_translate(t) * quat_to_mat(r) * mat_scale(s);
}

Mat4 perspective(double fovy, double aspect, double near, double far) {
    if (!(fovy > 0.0 && fovy < kPi) || !(aspect > 0.0) || !(near > 0.0) || !(far > near))
        throw Error(ErrorCode::InvalidFrustum, "perspective requires 0 < fovy < pi, aspect > 0, 0 < near < far");
    const double f = 1.0 / std::tan(fovy * 0.5);
    Mat4 r;
    r(0, 0) = f / aspect;
    r(1, 1) = f;
    r(2, 2) = -(far + near) / (far - near);
    r(2, 3) = -2.0 * far * near / (far - near);
    r(3, 2) = -1.0;
    return r;
}

Mat4 ortho(double left, double right, double bottom, double top, double near, double far) {
    if (!(right > left) || !(top > bottom) || !(far > near))
        throw Error(ErrorCode::InvalidFrustum, "ortho requires right > left, top > bottom, far > near");
    Mat4 r = Mat4::identity();
    r(0, 0) = 2.0 / (right - left);
    r(1, 1) = 2.0 / (top - bottom);
    r(2, 2) = -2.0 / (far - near);
    r(0, 3) = -(right + left) / (right - left);
    r(1, 3) = -(top + bottom) / (top - bottom);
    r(2, 3) = -(far + near) / (far - near);
    return r;
}

Mat4 lookat(const Vec3& eye, const Vec3& target, const Vec3& up) {
    const Vec3 view = target - eye;
    if (!(length(view) >= 1e-12)) throw Error(ErrorCode::DegenerateBasis, "lookat: eye equals target");
    const Vec3 f = normalize(view);
    const Vec3 side_raw = cross(f, up);
    if (!(length(side_raw) >= 1e-12))
        throw Error(ErrorCode::DegenerateBasis, "lookat: up is parallel to the view direction");
    const Vec3 s = normalize(side_raw);
    const Vec3 u = cross(s, f);

    Mat4 r = Mat4::identity();
    r(0, 0) = s.x;
    r(0, 1) = s.y;
    r(0, 2) = s.z;
    r(1, 0) = u.x;
    r(1, 1) = u.y;
    r(1, 2) = u.z;
    r(2, 0) = -f.x;
    r(2, 1) = -f.y;
    r(2, 2) = -f.z;
    r(0, 3) = -dot(s, eye);
    r(1, 3) = -dot(u, eye);
    r(2, 3) = dot(f, eye);
    return r;
}

} // namespace elements
