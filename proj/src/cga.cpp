#include "elements/cga.hpp"

#include <algorithm>
#include <cmath>

#include "elements/error.hpp"

namespace elements::cga {

namespace {

constexpr double metric_of_bit(int bit) { return bit == 4 ? -1.0 : 1.0; }

// Sign from moving every factor of b left past the factors of a that sort after it.
double reordering_sign(unsigned a, unsigned b) {
    a >>= 1;
    int swaps = 0;
    while (a != 0) {
        swaps += std::popcount(a & b);
        a >>= 1;
    }
    return (swaps & 1) ? -1.0 : 1.0;
}

std::array<std::array<BladeProduct, kBladeCount>, kBladeCount> build_cayley_table() {
    std::array<std::array<BladeProduct, kBladeCount>, kBladeCount> table{};
    for (unsigned a = 0; a < kBladeCount; ++a) {
        for (unsigned b = 0; b < kBladeCount; ++b) {
            double sign = reordering_sign(a, b);
            const unsigned shared = a & b;
            for (int bit = 0; bit < 5; ++bit)
                if (shared & (1u << bit)) sign *= metric_of_bit(bit);
            table[a][b] = {static_cast<std::uint8_t>(a ^ b), sign};
        }
    }
    return table;
}

template <typename Keep>
Multivector filtered_product(const Multivector& a, const Multivector& b, Keep keep) {
    const auto& table = cayley_table();
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        for (int j = 0; j < kBladeCount; ++j) {
            const double bj = b[j];
            if (bj == 0.0 || !keep(i, j)) continue;
            const BladeProduct& p = table[i][j];
            r[p.blade] += p.sign * ai * bj;
        }
    }
    return r;
}

double origin_weight(const Multivector& mv) { return mv[blade::em] - mv[blade::ep]; }

} // namespace

Multivector Multivector::scalar(double s) { return basis(blade::scalar, s); }

Multivector Multivector::basis(std::uint8_t blade_index, double coefficient) {
    Multivector r;
    r.coeffs_[blade_index] = coefficient;
    return r;
}

Multivector Multivector::vector(const Vec3& v) {
    Multivector r;
    r.coeffs_[blade::e1] = v.x;
    r.coeffs_[blade::e2] = v.y;
    r.coeffs_[blade::e3] = v.z;
    return r;
}

Multivector Multivector::e_origin() {
    Multivector r;
    r.coeffs_[blade::em] = 0.5;
    r.coeffs_[blade::ep] = -0.5;
    return r;
}

Multivector Multivector::e_infinity() {
    Multivector r;
    r.coeffs_[blade::em] = 1.0;
    r.coeffs_[blade::ep] = 1.0;
    return r;
}

Multivector Multivector::grade_part(int k) const {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i)
        if (grade(static_cast<std::uint8_t>(i)) == k) r.coeffs_[i] = coeffs_[i];
    return r;
}

Multivector Multivector::even_part() const {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i)
        if (grade(static_cast<std::uint8_t>(i)) % 2 == 0) r.coeffs_[i] = coeffs_[i];
    return r;
}

double Multivector::max_abs() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Multivector Multivector::operator+(const Multivector& o) const {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return r;
}

Multivector Multivector::operator-(const Multivector& o) const {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i) r.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    return r;
}

Multivector Multivector::operator*(double s) const {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i) r.coeffs_[i] = coeffs_[i] * s;
    return r;
}

const std::array<std::array<BladeProduct, kBladeCount>, kBladeCount>& cayley_table() {
    static const auto table = build_cayley_table();
    return table;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
    return filtered_product(a, b, [](int, int) { return true; });
}

Multivector operator*(const Multivector& a, const Multivector& b) { return geometric_product(a, b); }

Multivector wedge(const Multivector& a, const Multivector& b) {
    return filtered_product(a, b, [](int i, int j) { return (i & j) == 0; });
}

Multivector inner(const Multivector& a, const Multivector& b) {
    return filtered_product(a, b, [](int i, int j) { return (i & j) == i; });
}

Multivector reverse(const Multivector& a) {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i) {
        const int k = grade(static_cast<std::uint8_t>(i));
        r[i] = ((k * (k - 1) / 2) % 2 == 0) ? a[i] : -a[i];
    }
    return r;
}

Versor operator*(const Versor& a, const Versor& b) {
    VersorKind kind = VersorKind::Motor;
    if (a.kind == VersorKind::Identity) kind = b.kind;
    else if (b.kind == VersorKind::Identity || a.kind == b.kind) kind = a.kind;
    return {geometric_product(a.mv, b.mv), kind};
}

Versor translator(const Vec3& t) {
    // 1 - t e_inf / 2; (t e_inf)^2 = 0 so the exponential series stops here.
    const Multivector half_t_einf = Multivector::vector(t) * Multivector::e_infinity() * 0.5;
    return {Multivector::scalar(1.0) - half_t_einf, VersorKind::Translator};
}

Versor rotor(const Vec3& axis, double angle) {
    const double len = length(axis);
    if (!(len >= 1e-12)) throw Error(ErrorCode::DegenerateAxis, "rotor axis has zero length");
    const Vec3 n = axis / len;
    // Bivector dual to n: n e123 = n.x e23 + n.y e31 + n.z e12.
    const Multivector plane = Multivector::vector(n) * Multivector::basis(blade::e1 | blade::e2 | blade::e3);
    return {Multivector::scalar(std::cos(angle * 0.5)) - plane * std::sin(angle * 0.5), VersorKind::Rotor};
}

Versor dilator(double d) {
    if (!(d > 0.0)) throw Error(ErrorCode::NonPositiveDilation, "dilation factor must be positive");
    const double half_log = std::log(d) * 0.5;
    const Multivector origin_infinity = wedge(Multivector::e_origin(), Multivector::e_infinity());
    return {Multivector::scalar(std::cosh(half_log)) + origin_infinity * std::sinh(half_log), VersorKind::Dilator};
}

Versor motor(const Vec3& t, const Vec3& axis, double angle, double d) {
    Versor m = translator(t) * rotor(axis, angle) * dilator(d);
    m.kind = VersorKind::Motor;
    return m;
}

ConformalPoint embed(const Vec3& p) {
    return {Multivector::vector(p) + Multivector::e_infinity() * (0.5 * dot(p, p)) + Multivector::e_origin()};
}

Vec3 extract(const ConformalPoint& point) {
    const double w = origin_weight(point.mv);
    if (!(std::abs(w) >= 1e-12)) throw Error(ErrorCode::PointAtInfinity, "conformal point has no e_o component");
    return point.mv.euclidean_part() / w;
}

ConformalPoint apply(const Versor& v, const ConformalPoint& point) {
    const Multivector image = (v.mv * point.mv * reverse(v.mv)).grade_part(1);
    const double w = origin_weight(image);
    if (!(std::abs(w) >= 1e-12)) throw Error(ErrorCode::PointAtInfinity, "versor sent the point to infinity");
    return {image * (1.0 / w)};
}

Mat4 versor_to_matrix(const Versor& v) {
    const Vec3 origin = extract(apply(v, embed({0.0, 0.0, 0.0})));
    const Vec3 ex = extract(apply(v, embed({1.0, 0.0, 0.0}))) - origin;
    const Vec3 ey = extract(apply(v, embed({0.0, 1.0, 0.0}))) - origin;
    const Vec3 ez = extract(apply(v, embed({0.0, 0.0, 1.0}))) - origin;
    Mat4 r = Mat4::identity();
    for (int row = 0; row < 3; ++row) {
        r(row, 0) = ex[row];
        r(row, 1) = ey[row];
        r(row, 2) = ez[row];
        r(row, 3) = origin[row];
    }
    return r;
}

} // namespace elements::cga
