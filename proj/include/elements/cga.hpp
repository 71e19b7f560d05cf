#pragma once

// Conformal geometric algebra R(4,1) for 3D similarity transforms.
//
// Basis vectors e1, e2, e3, e+, e- with metric diag(+1, +1, +1, +1, -1).
// A blade is stored at the index whose bits name its basis vectors
// (bit 0 = e1 ... bit 4 = e-), factors in ascending order. The null basis is
// e_o = (e- - e+) / 2 and e_inf = e- + e+, so e_o . e_inf = -1.

#include <array>
#include <bit>
#include <cstdint>

#include "elements/math3d.hpp"

namespace elements::cga {

inline constexpr int kBladeCount = 32;

namespace blade {
inline constexpr std::uint8_t scalar = 0;
inline constexpr std::uint8_t e1 = 1 << 0;
inline constexpr std::uint8_t e2 = 1 << 1;
inline constexpr std::uint8_t e3 = 1 << 2;
inline constexpr std::uint8_t ep = 1 << 3;
inline constexpr std::uint8_t em = 1 << 4;
} // namespace blade

constexpr int grade(std::uint8_t blade_index) { return std::popcount(static_cast<unsigned>(blade_index)); }

class Multivector {
public:
    constexpr Multivector() = default;

    static Multivector scalar(double s);
    static Multivector basis(std::uint8_t blade_index, double coefficient = 1.0);
    static Multivector vector(const Vec3& v);
    static Multivector e_origin();
    static Multivector e_infinity();

    double operator[](int blade_index) const { return coeffs_[blade_index]; }
    double& operator[](int blade_index) { return coeffs_[blade_index]; }
    const std::array<double, kBladeCount>& coefficients() const { return coeffs_; }

    double scalar_part() const { return coeffs_[0]; }
    Vec3 euclidean_part() const { return {coeffs_[blade::e1], coeffs_[blade::e2], coeffs_[blade::e3]}; }
    Multivector grade_part(int k) const;
    Multivector even_part() const;
    double max_abs() const;

    Multivector operator+(const Multivector& o) const;
    Multivector operator-(const Multivector& o) const;
    Multivector operator*(double s) const;
    Multivector operator-() const { return *this * -1.0; }

private:
    std::array<double, kBladeCount> coeffs_{};
};

/// Entry of the Cayley table: e_a * e_b = sign * e_(a xor b).
struct BladeProduct {
    std::uint8_t blade;
    double sign; // 0 never occurs in this non-degenerate metric
};

/// Shared read-only multiplication table, built once from the metric.
const std::array<std::array<BladeProduct, kBladeCount>, kBladeCount>& cayley_table();

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector operator*(const Multivector& a, const Multivector& b);
/// Outer product: the grade(a) + grade(b) part of each blade product.
Multivector wedge(const Multivector& a, const Multivector& b);
/// Left contraction: the grade(b) - grade(a) part of each blade product.
Multivector inner(const Multivector& a, const Multivector& b);
Multivector reverse(const Multivector& a);

enum class VersorKind { Identity, Rotor, Translator, Dilator, Motor };

/// Even-grade multivector applied by sandwich product.
struct Versor {
    Multivector mv = Multivector::scalar(1.0);
    VersorKind kind = VersorKind::Identity;
};

Versor operator*(const Versor& a, const Versor& b);

/// T = 1 - t e_inf / 2.
Versor translator(const Vec3& t);
/// R = cos(phi/2) - sin(phi/2) B, B the unit bivector dual to `axis`. Throws DegenerateAxis.
Versor rotor(const Vec3& axis, double angle);
/// D = cosh(ln d / 2) + sinh(ln d / 2) (e_o ^ e_inf), a uniform scaling about the origin.
Versor dilator(double d);
/// translator(t) * rotor(axis, angle) * dilator(d): dilate, then rotate, then translate.
Versor motor(const Vec3& t, const Vec3& axis, double angle, double d);

struct ConformalPoint {
    Multivector mv;
};

/// P = p + |p|^2 / 2 e_inf + e_o.
ConformalPoint embed(const Vec3& p);
/// Normalizes by the e_o coefficient; throws PointAtInfinity when it is below 1e-12.
Vec3 extract(const ConformalPoint& point);
/// V P reverse(V), rescaled so the e_o coefficient is 1.
ConformalPoint apply(const Versor& v, const ConformalPoint& point);
/// Matrix built from the images of the origin and the three unit directions.
Mat4 versor_to_matrix(const Versor& v);

} // namespace elements::cga
