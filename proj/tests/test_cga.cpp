#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "elements/cga.hpp"
#include "elements/error.hpp"
#include "support/oracles.hpp"

using namespace elements;
using namespace elements::cga;

namespace {

// Blade-by-blade reference product. A blade is a list of generator indices
// 0..4 (e1, e2, e3, e+, e-) kept sorted; products concatenate the lists,
// bubble-sort them counting swaps, and contract equal neighbours with the
// metric diag(1, 1, 1, 1, -1).
struct ListBlade {
    std::vector<int> gens;
    double sign = 1.0;
};

ListBlade list_product(const std::vector<int>& a, const std::vector<int>& b) {
    ListBlade r;
    r.gens = a;
    r.gens.insert(r.gens.end(), b.begin(), b.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < r.gens.size(); ++i) {
            if (r.gens[i] > r.gens[i + 1]) {
                std::swap(r.gens[i], r.gens[i + 1]);
                r.sign = -r.sign;
                changed = true;
            } else if (r.gens[i] == r.gens[i + 1]) {
                if (r.gens[i] == 4) r.sign = -r.sign;
                r.gens.erase(r.gens.begin() + static_cast<long>(i), r.gens.begin() + static_cast<long>(i) + 2);
                changed = true;
                break;
            }
        }
    }
    return r;
}

std::vector<int> gens_of(int index) {
    std::vector<int> g;
    for (int b = 0; b < 5; ++b)
        if (index & (1 << b)) g.push_back(b);
    return g;
}

int index_of(const std::vector<int>& gens) {
    int i = 0;
    for (int g : gens) i |= 1 << g;
    return i;
}

Multivector oracle_product(const Multivector& a, const Multivector& b) {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i)
        for (int j = 0; j < kBladeCount; ++j) {
            if (a[i] == 0.0 || b[j] == 0.0) continue;
            const ListBlade p = list_product(gens_of(i), gens_of(j));
            r[index_of(p.gens)] += p.sign * a[i] * b[j];
        }
    return r;
}

Multivector random_mv(oracle::Rng& rng) {
    Multivector m;
    for (int i = 0; i < kBladeCount; ++i) m[i] = rng.uniform(-1, 1);
    return m;
}

double max_diff(const Multivector& a, const Multivector& b) { return (a - b).max_abs(); }

void expect_point(const Vec3& a, const Vec3& b, double tol) {
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
    EXPECT_NEAR(a.z, b.z, tol);
}

bool is_scalar_one(const Versor& v, double tol) { return max_diff(v.mv, Multivector::scalar(1.0)) <= tol; }

} // namespace

TEST(Cga, CayleyTableMatchesListOracle) {
    const auto& table = cayley_table();
    for (int i = 0; i < kBladeCount; ++i)
        for (int j = 0; j < kBladeCount; ++j) {
            const ListBlade p = list_product(gens_of(i), gens_of(j));
            EXPECT_EQ(table[i][j].blade, index_of(p.gens)) << i << "*" << j;
            EXPECT_EQ(table[i][j].sign, p.sign) << i << "*" << j;
        }
}

TEST(Cga, GeometricProductMatchesOracleOnRandomMultivectors) {
    oracle::Rng rng(21);
    for (int n = 0; n < 200; ++n) {
        const Multivector a = random_mv(rng), b = random_mv(rng);
        EXPECT_LT(max_diff(a * b, oracle_product(a, b)), 1e-12);
    }
}

TEST(Cga, Metric) {
    EXPECT_EQ((Multivector::basis(blade::e1) * Multivector::basis(blade::e1))[0], 1.0);
    EXPECT_EQ((Multivector::basis(blade::ep) * Multivector::basis(blade::ep))[0], 1.0);
    EXPECT_EQ((Multivector::basis(blade::em) * Multivector::basis(blade::em))[0], -1.0);
    EXPECT_EQ(wedge(Multivector::basis(blade::e1), Multivector::basis(blade::e1)).max_abs(), 0.0);
    // Distinct generators anticommute.
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) {
            const Multivector x = Multivector::basis(1 << a), y = Multivector::basis(1 << b);
            EXPECT_EQ((x * y + y * x).max_abs(), 0.0);
        }
}

TEST(Cga, NullBasis) {
    const Multivector eo = Multivector::e_origin(), ei = Multivector::e_infinity();
    EXPECT_EQ((eo * eo).max_abs(), 0.0);
    EXPECT_EQ((ei * ei).max_abs(), 0.0);
    EXPECT_EQ(inner(eo, ei).scalar_part(), -1.0);
    EXPECT_EQ(inner(ei, eo).scalar_part(), -1.0);
}

TEST(Cga, EmbedExtract) {
    EXPECT_LT(max_diff(embed({0, 0, 0}).mv, Multivector::e_origin()), 1e-15);
    oracle::Rng rng(22);
    for (int i = 0; i < 500; ++i) {
        const Vec3 p = rng.vec(-100, 100);
        const ConformalPoint P = embed(p);
        expect_point(extract(P), p, 1e-12);
        EXPECT_LT((P.mv * P.mv).max_abs(), 1e-9 * std::max(1.0, dot(p, p)));
    }
    ConformalPoint inf{Multivector::e_infinity()};
    EXPECT_THROW(extract(inf), Error);
}

TEST(Cga, Translator) {
    EXPECT_TRUE(is_scalar_one(translator({0, 0, 0}), 0.0));
    expect_point(extract(apply(translator({1, 2, 3}), embed({0, 0, 0}))), {1, 2, 3}, 1e-12);
    oracle::Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        const Vec3 a = rng.vec(-5, 5), b = rng.vec(-5, 5), p = rng.vec(-5, 5);
        EXPECT_LT(max_diff((translator(a) * translator(b)).mv, translator(a + b).mv), 1e-12);
        expect_point(extract(apply(translator(a), embed(p))), p + a, 1e-12);
        EXPECT_LT(max_diff(apply(translator(a), embed(p)).mv, embed(p + a).mv), 1e-9);
    }
}

TEST(Cga, Rotor) {
    oracle::Rng rng(24);
    EXPECT_TRUE(is_scalar_one(rotor(rng.axis(), 0.0), 0.0));
    expect_point(extract(apply(rotor({0, 0, 1}, kPi / 2), embed({1, 0, 0}))), {0, 1, 0}, 1e-12);
    for (int i = 0; i < 100; ++i) {
        const Vec3 b = rng.axis();
        const double phi = rng.uniform(-kPi, kPi), psi = rng.uniform(-kPi, kPi);
        EXPECT_LT(max_diff((rotor(b, phi) * rotor(b, psi)).mv, rotor(b, phi + psi).mv), 1e-9);
        const Vec3 p = rng.vec(-5, 5);
        const auto o = oracle::apply(oracle::trs({0, 0, 0}, oracle::arr(b), phi, 1.0), oracle::arr(p));
        expect_point(extract(apply(rotor(b, phi), embed(p))), {o[0], o[1], o[2]}, 1e-9);
    }
}

TEST(Cga, Dilator) {
    EXPECT_TRUE(is_scalar_one(dilator(1.0), 1e-15));
    expect_point(extract(apply(dilator(2.0), embed({1, 0, 0}))), {2, 0, 0}, 1e-12);
    EXPECT_THROW(dilator(0.0), Error);
    EXPECT_THROW(dilator(-1.0), Error);
    oracle::Rng rng(25);
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform(0.2, 3), b = rng.uniform(0.2, 3);
        const Vec3 p = rng.vec(-5, 5);
        expect_point(extract(apply(dilator(a) * dilator(b), embed(p))), extract(apply(dilator(a * b), embed(p))),
                     1e-9);
        expect_point(extract(apply(dilator(a), embed(p))), p * a, 1e-9);
    }
}

TEST(Cga, VersorNormality) {
    oracle::Rng rng(26);
    for (int i = 0; i < 200; ++i) {
        const Vec3 t = rng.vec(-5, 5), b = rng.axis();
        const double phi = rng.uniform(-kPi, kPi), d = rng.uniform(0.2, 3);
        for (const Versor& v : {translator(t), rotor(b, phi), dilator(d), motor(t, b, phi, d)})
            EXPECT_LT(max_diff(v.mv * reverse(v.mv), Multivector::scalar(1.0)), 1e-9);
    }
}

TEST(Cga, MotorExamples) {
    EXPECT_TRUE(is_scalar_one(motor({0, 0, 0}, {0, 0, 1}, 0.0, 1.0), 1e-15));
    expect_point(extract(apply(motor({1, 0, 0}, {0, 0, 1}, kPi / 2, 2.0), embed({1, 0, 0}))), {1, 2, 0}, 1e-12);
    EXPECT_EQ(versor_to_matrix(Versor{}), Mat4::identity());
    EXPECT_LT(max_abs_diff(versor_to_matrix(translator({1, 2, 3})), mat_translate({1, 2, 3})), 1e-15);
}

TEST(Cga, MotorMatchesMatrixOracle) {
    oracle::Rng rng(27);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 t = rng.vec(-10, 10), b = rng.axis();
        const double phi = rng.uniform(-kPi, kPi), d = rng.uniform(0.1, 5);
        const Versor m = motor(t, b, phi, d);
        const Mat4 reference = compose_trs(t, Quaternion::from_axis_angle(b, phi), d);
        EXPECT_LT(max_abs_diff(versor_to_matrix(m), reference), 1e-9);
        EXPECT_LT(oracle::max_diff(oracle::trs(oracle::arr(t), oracle::arr(b), phi, d), versor_to_matrix(m)), 1e-9);
    }
}

TEST(Cga, SandwichComposesAndPreservesNullPoints) {
    oracle::Rng rng(28);
    for (int i = 0; i < 200; ++i) {
        const Versor M = motor(rng.vec(-3, 3), rng.axis(), rng.uniform(-kPi, kPi), rng.uniform(0.3, 2));
        const Versor N = motor(rng.vec(-3, 3), rng.axis(), rng.uniform(-kPi, kPi), rng.uniform(0.3, 2));
        const Vec3 p = rng.vec(-3, 3);
        const ConformalPoint once = apply(M * N, embed(p));
        expect_point(extract(apply(M, apply(N, embed(p)))), extract(once), 1e-9);
        EXPECT_LT((once.mv * once.mv).max_abs(), 1e-8);
        const ConformalPoint id = apply(Versor{}, embed(p));
        EXPECT_LT(max_diff(id.mv, embed(p).mv), 1e-12);
    }
}
