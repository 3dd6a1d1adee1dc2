#include "doctest.h"

#include <random>

#include "tandet/ball.hpp"

using namespace tandet;
using namespace tandet::realball;

namespace {

mpq_class q(long n, long d) {
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

bool contains_sqrt(const RealBall& v, long n, bool negated = false) {
    // squared enclosure must contain n and the sign must match
    RealBall s = negated ? -v : v;
    if (!s.is_positive()) return false;
    return (s * s).contains(mpq_class(n));
}

}  // namespace

TEST_CASE("tan_pi examples") {
    CHECK(tan_pi({0, 3}, 64).is_exact_zero());
    RealBall t = tan_pi({1, 3}, 128);
    CHECK(contains_sqrt(t, 3));
    RealBall t2 = tan_pi({4, 3}, 128);  // period-1 normalization
    CHECK(t2.contains_ball(t));
    CHECK(t.contains_ball(t2));
    CHECK_THROWS_AS(tan_pi({1, 4}, 64), domain_error);
}

TEST_CASE("cot_pi examples") {
    RealBall c = cot_pi({1, 4}, 64);
    CHECK(c.is_exact());
    CHECK(c.contains(mpq_class(1)));
    RealBall c3 = cot_pi({1, 3}, 128);
    CHECK((c3 * c3 * RealBall::from_long(3, 128)).contains(mpq_class(1)));
    RealBall c53 = cot_pi({5, 3}, 128);
    CHECK((c53 + c3).contains(mpq_class(0)));  // cot(5pi/3) = -cot(pi/3)
    CHECK(c53.is_negative());
    CHECK_THROWS_AS(cot_pi({3, 3}, 64), domain_error);
}

TEST_CASE("sin_pi and cos_pi exact points") {
    CHECK(sin_pi({1, 2}, 64).is_exact());
    CHECK(sin_pi({1, 2}, 64).contains(mpq_class(1)));
    CHECK(cos_pi({1, 3}, 128).contains(q(1, 2)));
    CHECK(sin_pi({1, 6}, 128).contains(q(1, 2)));
    CHECK(sin_pi({0, 5}, 64).is_exact_zero());
    CHECK(cos_pi({1, 2}, 64).is_exact_zero());
}

TEST_CASE("root_of_unity examples") {
    ComplexBall one = root_of_unity(0, 7, 64);
    CHECK(one.re.contains(mpq_class(1)));
    CHECK(one.im.is_exact_zero());
    ComplexBall i = root_of_unity(1, 4, 64);
    CHECK(i.re.is_exact_zero());
    CHECK(i.im.contains(mpq_class(1)));
    ComplexBall w = root_of_unity(1, 3, 128);
    CHECK(w.re.contains(q(-1, 2)));
    RealBall im2 = w.im * w.im;
    CHECK(im2.contains(q(3, 4)));
}

TEST_CASE("sqrt_int examples") {
    CHECK(RealBall::sqrt_int(4, 64).is_exact());
    CHECK(RealBall::sqrt_int(4, 64).contains(mpq_class(2)));
    CHECK(RealBall::sqrt_int(0, 64).is_exact_zero());
    RealBall r = RealBall::sqrt_int(7, 128);
    CHECK((r * r).contains(mpq_class(7)));
    CHECK_THROWS_AS(RealBall::sqrt_int(-1, 64), domain_error);
}

TEST_CASE("radius shrinks geometrically with precision") {
    for (long num : {1L, 2L, 5L}) {
        RealBall lo = tan_pi({num, 13}, 64);
        RealBall hi = tan_pi({num, 13}, 256);
        CHECK_FALSE(lo.disjoint(hi));
        CHECK(hi.rad_ratio() * (mpz_class(1) << 96) < lo.rad_ratio());
    }
}

TEST_CASE("pythagorean and reciprocal properties on random fractions") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        long den = 3 + 2 * static_cast<long>(rng() % 60);
        long num = static_cast<long>(rng() % (2 * den));
        RealBall s = sin_pi({num, den}, 128);
        RealBall c = cos_pi({num, den}, 128);
        CHECK((s * s + c * c).contains(mpq_class(1)));
        if (num % den != 0) {
            RealBall t1 = tan_pi({num, den}, 128);
            RealBall t2 = cot_pi({num, den}, 128);
            CHECK((t1 * t2).contains(mpq_class(1)));
        }
    }
}

TEST_CASE("tangent addition law inside enclosures") {
    std::mt19937_64 rng(5);
    int tried = 0;
    while (tried < 40) {
        long den = 5 + 2 * static_cast<long>(rng() % 40);
        long x = 1 + static_cast<long>(rng() % (den - 1));
        long y = 1 + static_cast<long>(rng() % (den - 1));
        if ((x + y) % den == 0) continue;
        ++tried;
        RealBall tx = tan_pi({x, den}, 160);
        RealBall ty = tan_pi({y, den}, 160);
        RealBall lhs = tan_pi({x + y, den}, 160);
        RealBall denom = RealBall::one(160) - tx * ty;
        if (denom.contains_zero()) continue;
        RealBall rhs = (tx + ty) / denom;
        CHECK_FALSE(lhs.disjoint(rhs));
    }
}

TEST_CASE("roots of unity to the m-th power enclose 1") {
    for (long m : {3L, 7L, 12L, 21L}) {
        for (long k = 0; k < m; ++k) {
            ComplexBall z = root_of_unity(k, m, 96);
            ComplexBall acc = ComplexBall::one(96);
            for (long e = 0; e < m; ++e) acc *= z;
            CHECK(acc.re.contains(mpq_class(1)));
            CHECK(acc.im.contains(mpq_class(0)));
        }
    }
}

TEST_CASE("ball division by an enclosure containing zero is undecided") {
    RealBall tiny = tan_pi({1, 3}, 64) - tan_pi({1, 3}, 64);  // straddles zero
    CHECK(tiny.contains_zero());
    CHECK_THROWS_AS(RealBall::one(64) / tiny, undecided_error);
}

TEST_CASE("trig cache reuses residues") {
    TrigCache cache(TrigFunc::tan, 7, 96);
    const RealBall& a = cache.at(3);
    const RealBall& b = cache.at(10);  // same residue mod 7
    CHECK(&a == &b);
    CHECK(contains_sqrt(cache.at(0) + tan_pi({1, 3}, 96), 3));
}
