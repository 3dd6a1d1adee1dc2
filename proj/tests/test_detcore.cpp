#include "doctest.h"

#include <cmath>
#include <random>

#include "tandet/detcore.hpp"
#include "tandet/ntheory.hpp"

using namespace tandet;
using namespace tandet::detcore;
using realball::RealBall;

namespace {

// oracle: plain long-double evaluation of a residue matrix determinant
long double naive_det(const ResidueMatrix& m) {
    const size_t n = m.dim;
    std::vector<long double> a(n * n);
    const long double pi = 3.14159265358979323846264338327950288L;
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
            long double angle = pi * m.at(j, k) / m.den;
            long double v = 0;
            switch (m.func) {
                case realball::TrigFunc::tan: v = std::tan(angle); break;
                case realball::TrigFunc::cot: v = 1.0L / std::tan(angle); break;
                case realball::TrigFunc::sin: v = std::sin(angle); break;
                case realball::TrigFunc::cos: v = std::cos(angle); break;
            }
            if (m.squared) v *= v;
            a[j * n + k] = v * m.weight_at(j, k);
        }
    long double det = 1;
    for (size_t s = 0; s < n; ++s) {
        size_t piv = s;
        for (size_t i = s + 1; i < n; ++i)
            if (std::fabs((double)a[i * n + s]) > std::fabs((double)a[piv * n + s])) piv = i;
        if (a[piv * n + s] == 0) return 0;
        if (piv != s) {
            for (size_t j = 0; j < n; ++j) std::swap(a[s * n + j], a[piv * n + j]);
            det = -det;
        }
        det *= a[s * n + s];
        for (size_t i = s + 1; i < n; ++i) {
            long double f = a[i * n + s] / a[s * n + s];
            for (size_t j = s + 1; j < n; ++j) a[i * n + j] -= f * a[s * n + j];
        }
    }
    return det;
}

mpq_class q(long n, long d = 1) {
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

}  // namespace

TEST_CASE("builders: residues and parameter validation") {
    ResidueMatrix m = build(TanQuad{5, 1, 1, 1});
    CHECK(m.dim == 2);
    CHECK(m.residues == std::vector<long>{2, 0, 0, 3});

    ResidueMatrix jk = build(CotJK{7});
    CHECK(jk.dim == 3);
    CHECK(jk.residues == std::vector<long>{1, 2, 3, 2, 4, 6, 3, 6, 2});

    CHECK_THROWS_AS(build(CotQuad{5, 1, 1}), domain_error);  // (-1/5) = +1: pole
    CHECK_THROWS_AS(build(TanQuad{9, 1, 1, 0}), param_error);
    CHECK_THROWS_AS(build(TanLin{9, 3, 1, 0}), param_error);
    CHECK_THROWS_AS(build(TanQuad{5, 5, 1, 0}), param_error);

    ResidueMatrix lg = build(LegTanQuad{7, 1, 1});
    CHECK(lg.dim == 4);
    CHECK(lg.weight_at(0, 0) == 0);  // symbol of 0
}

TEST_CASE("det_ball examples against hand values and the naive oracle") {
    // 2x2: cot(pi/5)cot(4pi/5) - cot^2(2pi/5) = -2
    RealBall d5 = det_ball(build(CotJK{5}), 128);
    CHECK(d5.contains(q(-2)));
    // 3x3 equals -4 sqrt(7) = -10.58300524...
    ResidueMatrix m7 = build(CotJK{7});
    RealBall d7 = det_ball(m7, 128);
    RealBall expect = RealBall::from_long(-4, 128) * RealBall::sqrt_int(7, 128);
    CHECK_FALSE(d7.disjoint(expect));
    CHECK(std::fabs((double)(naive_det(m7) - (-10.583005244258363L))) < 1e-9);
    // 2x2 tan(pi(j+k)/3): det = -3
    RealBall d3 = det_ball(build(TanLin{3, 1, 1, 1}), 128);
    CHECK(d3.contains(q(-3)));
}

TEST_CASE("det_ball agrees with the naive oracle across families") {
    std::vector<MatrixSpec> specs{
        TanQuad{7, 1, 1, 0},  TanQuad{13, 1, 2, 1}, CotQuad{7, 1, 1},
        TanLin{9, 1, 2, 1},   CotJK{11},            TanJK{15},
        Tan2Quad{7, 2, 3, 1}, Tan2LinSum{7},        Cot2Quad{7, 1, 2},
        LegTanQuad{7, 1, 1},  LegCotQuad{7, 1, 1},  CosJK{6, 0, false},
        CosJK{7, 1, true},    SinJK{8, false},      SinJK{9, true}};
    for (const auto& spec : specs) {
        ResidueMatrix m = build(spec);
        RealBall d = det_ball(m, 192);
        double approx = (double)naive_det(m);
        double mid = d.mid_double();
        double scale = std::max(1.0, std::fabs(approx));
        CHECK(std::fabs(mid - approx) / scale < 1e-9);
    }
}

TEST_CASE("det_exact examples") {
    CycloElement d5 = det_exact(build(CotJK{5}));
    CHECK(d5.rational_value() == q(-2));

    CycloElement t54 = det_exact(build(TanQuad{5, 1, 4, 1}));
    auto sv = subfield_project(t54, 5);
    REQUIRE(sv.has_value());
    CHECK(sv->r == q(5));
    CHECK(sv->s == q(2));  // tan^2(2 pi/5) = 5 + 2 sqrt(5)

    CycloElement t3 = det_exact(build(TanLin{3, 1, 1, 1}));
    CHECK(t3.rational_value() == q(-3));
}

TEST_CASE("cauchy engine equals bareiss exact mode and the ball engine") {
    std::vector<MatrixSpec> specs{TanQuad{5, 1, 1, 0}, TanQuad{5, 1, 4, 1},
                                  TanQuad{7, 1, 1, 0}, TanQuad{7, 2, 3, 1},
                                  TanQuad{13, 1, 1, 1}, TanLin{3, 1, 1, 1},
                                  TanLin{9, 1, 2, 1},  TanLin{9, 2, 1, 0},
                                  CotQuad{7, 1, 1},    CotQuad{11, 1, 3},
                                  CotQuad{13, 1, 2}};
    for (const auto& spec : specs) {
        REQUIRE(cauchy_supported(spec));
        CycloElement via_cauchy = det_cauchy_exact(spec);
        CycloElement via_bareiss = det_exact(build(spec));
        CHECK(via_cauchy == via_bareiss);
        if (via_cauchy.is_zero()) continue;  // singular: the ball engine reports undecided
        RealBall d = det_ball(build(spec), 160);
        CHECK_FALSE(d.disjoint(via_cauchy.embed(160).re));
    }
    CHECK_FALSE(cauchy_supported(MatrixSpec{CotJK{7}}));
}

TEST_CASE("cauchy_det examples and the elimination oracle") {
    using V = std::vector<mpq_class>;
    CHECK(cauchy_det<mpq_class>(V{q(2)}, V{q(3)}, q(1)) == q(1, 5));
    CHECK(cauchy_det<mpq_class>(V{q(1), q(2)}, V{q(0), q(1)}, q(1)) == q(1, 12));
    std::mt19937_64 rng(23);
    for (int t = 0; t < 8; ++t) {
        size_t n = 4;
        V xs, ys;
        for (size_t i = 0; i < n; ++i) {
            xs.push_back(q(static_cast<long>(rng() % 40) + 1, static_cast<long>(rng() % 7) + 1));
            ys.push_back(q(static_cast<long>(rng() % 40) + 100,
                           static_cast<long>(rng() % 7) + 1));
        }
        // nodes must be distinct for a nonzero determinant; duplicates only
        // make both sides zero, which still agrees
        std::vector<mpq_class> m;
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) m.push_back(q(1) / (xs[j] + ys[k]));
        CHECK(cauchy_det<mpq_class>(xs, ys, q(1)) == dense_det(m, n));
    }
}

TEST_CASE("border split examples and the shift identity") {
    using V = std::vector<mpq_class>;
    auto [a1, b1] = border_split<mpq_class>(V{q(7)}, 1, q(1));
    CHECK(a1 == q(7));
    CHECK(b1 == q(1));
    auto [a2, b2] = border_split<mpq_class>(V{q(0), q(1), q(2), q(5)}, 2, q(1));
    CHECK(a2 == q(-2));
    CHECK(b2 == q(2));
    std::mt19937_64 rng(31);
    for (int t = 0; t < 6; ++t) {
        size_t n1 = 4;
        V m;
        for (size_t i = 0; i < n1 * n1; ++i)
            m.push_back(q(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1));
        auto [da, db] = border_split<mpq_class>(m, n1, q(1));
        for (long x : {0L, 1L, -3L}) {
            V shifted = m;
            for (auto& v : shifted) v += x;
            CHECK(dense_det(shifted, n1) == da + x * db);
        }
    }
}

TEST_CASE("x-shift independence for the antisymmetric quadratic family") {
    // tan pi a(j^2 - k^2)/p over 1..(p-1)/2: border det B vanishes exactly
    for (long p : {5L, 13L}) {
        ResidueMatrix m = build(TanQuad{p, 1, p - 1, 1});
        auto field = CycloField::make(4 * p);
        std::vector<CycloElement> e;
        for (size_t j = 0; j < m.dim; ++j)
            for (size_t k = 0; k < m.dim; ++k)
                e.push_back(encode_entry(field, p, m.func, false, m.at(j, k), 1));
        auto [da, db] = border_split<CycloElement>(e, m.dim, field->one());
        CHECK(db.is_zero());
        // equivalently det[x + entries] is constant in x
        for (long x : {1L, 2L}) {
            std::vector<CycloElement> shifted = e;
            for (auto& v : shifted) v = v + field->from_ratio(mpq_class(x));
            CHECK(bareiss_det(shifted, m.dim) == da);
        }
    }
}

TEST_CASE("half-range square sums vanish mod p for p > 3") {
    // p = 3 is the genuine exception: 0^2 + 1^2 = 1 (mod 3)
    for (long p = 5; p <= 199; p += 2) {
        if (!ntheory::is_probable_prime(p)) continue;
        long s = 0;
        for (long k = 0; k <= (p - 1) / 2; ++k) s = (s + k * k) % p;
        CHECK(s == 0);
    }
}

TEST_CASE("transpose antisymmetry of tan pi a(j - k)/n at the residue level") {
    for (long n : {9L, 15L}) {
        ResidueMatrix m = build(TanLin{n, 1, n - 1, 0});
        for (size_t j = 0; j < m.dim; ++j)
            for (size_t k = 0; k < m.dim; ++k)
                CHECK((m.at(j, k) + m.at(k, j)) % n == 0);
    }
}

TEST_CASE("exact budget gate") {
    ExactBudget tight{2, 10};
    CHECK_THROWS_AS(det_exact(build(CotJK{11}), tight), param_error);
}

TEST_CASE("dense ball determinant flags zero pivots distinctly") {
    std::vector<RealBall> rows;
    for (long v : {1L, 2L, 2L, 4L}) rows.push_back(RealBall::from_long(v, 64));
    // singular matrix: elimination must not fabricate a nonzero result
    RealBall d = dense_det(rows, 2);
    CHECK(d.contains_zero());
}
