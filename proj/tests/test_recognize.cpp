#include "doctest.h"

#include "tandet/harness.hpp"
#include "tandet/ntheory.hpp"
#include "tandet/recognize.hpp"

using namespace tandet;
using namespace tandet::recognize;
using detcore::build;
using detcore::CotQuad;
using detcore::det_exact;
using detcore::LegTanQuad;
using detcore::MatrixSpec;
using detcore::TanLin;
using detcore::TanQuad;
using realball::RealBall;

namespace {

mpq_class q(long n, long d = 1) {
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

RealBall ball_near(double x, realball::Prec prec = 96) {
    mpq_class approx(x * (1 << 30), 1 << 30);
    approx.canonicalize();
    return RealBall::from_ratio(approx, prec);
}

}  // namespace

TEST_CASE("predict: theorem-covered families") {
    auto inv7 = quadfield::invariants_for(7);
    auto form = predict(MatrixSpec{TanQuad{7, 1, 1, 0}}, inv7);
    REQUIRE(form.has_value());
    // 2^3 * 7^2 = 392
    CHECK(eval_form(*form, 96).contains(q(392)));

    auto inv13 = quadfield::invariants_for(13);
    auto z = predict(MatrixSpec{TanQuad{13, 1, 1, 0}}, inv13);
    REQUIRE(z.has_value());
    CHECK(form_is_zero(*z));

    auto cot = predict(MatrixSpec{CotQuad{7, 1, 1}}, inv7);
    REQUIRE(cot.has_value());
    // -8/sqrt(7), from h(-7) = 1 and (1/7) = 1
    RealBall v = eval_form(*cot, 128);
    RealBall expect = RealBall::from_long(-8, 128) / RealBall::sqrt_int(7, 128);
    CHECK_FALSE(v.disjoint(expect));

    auto inv5 = quadfield::invariants_for(5);
    auto surd = predict(MatrixSpec{TanQuad{5, 1, 4, 1}}, inv5);
    REQUIRE(surd.has_value());
    const auto* qs = std::get_if<QuadSurd>(&*surd);
    REQUIRE(qs != nullptr);
    CHECK(qs->r == q(5));
    CHECK(qs->s == q(2));

    // residue invariance in the coefficients
    auto f1 = predict(MatrixSpec{TanQuad{7, 2, 3, 0}}, inv7);
    auto f2 = predict(MatrixSpec{TanQuad{7, 2 + 7, 3 - 7, 0}}, inv7);
    CHECK(form_repr(*f1) == form_repr(*f2));

    CHECK(form_is_zero(*predict(MatrixSpec{TanLin{9, 1, 2, 0}}, inv7)));
    auto lin = predict(MatrixSpec{TanLin{9, 1, 2, 1}}, inv7);
    CHECK(eval_form(*lin, 96).contains(q(4782969)));  // (-2/9) 9^7

    CHECK(form_is_zero(*predict(MatrixSpec{LegTanQuad{13, 1, 1}}, inv13)));
    CHECK_FALSE(predict(MatrixSpec{LegTanQuad{7, 1, 1}}, inv7).has_value());
}

TEST_CASE("match_ball examples") {
    ClosedForm pf{PowerForm{+1, 3, 7, 4}};  // 2^3 * 7^2 = 392
    CHECK(match_ball(ball_near(392.0), pf).kind == VerdictKind::confirmed);

    ClosedForm cot{PowerForm{-1, 3, 7, -1}};  // -8/sqrt(7) = -3.0237...
    CHECK(match_ball(ball_near(-10.583), cot).kind == VerdictKind::refuted);

    RealBall tiny = RealBall::from_ratio(q(3, 1000000), 96) -
                    RealBall::from_ratio(q(3, 1000000), 96);
    CHECK(match_ball(tiny, ClosedForm{ZeroForm{}}).kind == VerdictKind::consistent_zero);
    CHECK(match_ball(ball_near(1.0), ClosedForm{ZeroForm{}}).kind == VerdictKind::refuted);

    // ambiguous signs must be separated before they confirm
    ClosedForm amb{PowerForm{0, 3, 7, 4}};
    Verdict v = match_ball(ball_near(-392.0), amb);
    CHECK(v.kind == VerdictKind::confirmed);
    CHECK(v.observed_sign == -1);
}

TEST_CASE("match_exact decides equality in the field") {
    auto F = detcore::CycloField::make(20);
    detcore::CycloElement x =
        F->from_ratio(q(5)) + detcore::sqrt_p_element(F, 5).mul_ratio(q(2));
    CHECK(match_exact(x, ClosedForm{QuadSurd{q(5), q(2), 5}}).kind == VerdictKind::confirmed);
    CHECK(match_exact(x, ClosedForm{QuadSurd{q(5), q(3), 5}}).kind == VerdictKind::refuted);
    CHECK(match_exact(F->zero(), ClosedForm{ZeroForm{}}).kind == VerdictKind::confirmed);
    CHECK(match_exact(x, ClosedForm{ZeroForm{}}).kind == VerdictKind::refuted);
}

TEST_CASE("structural zero certificates") {
    auto cert = structural_zero(build(TanQuad{13, 1, 1, 0}));
    REQUIRE(cert.has_value());
    CHECK(cert->kind == ZeroKind::negation_symmetry);
    CHECK(cert->q == 5);  // 5^2 = -1 (mod 13)

    auto lin = structural_zero(build(TanLin{9, 1, 1, 0}));
    REQUIRE(lin.has_value());
    CHECK(lin->kind == ZeroKind::full_range_antisymmetry);

    CHECK_FALSE(structural_zero(build(TanQuad{7, 1, 1, 0})).has_value());

    // p = 3 (mod 4), delta = 1, (ab/p) = -1: column-permuted skew transpose
    auto tr = structural_zero(build(TanQuad{11, 1, 10, 1}));
    REQUIRE(tr.has_value());
    CHECK(tr->kind == ZeroKind::transpose_antisymmetry);

    // weighted zero for p = 1 (mod 4)
    auto leg = structural_zero(build(LegTanQuad{13, 1, 1}));
    REQUIRE(leg.has_value());
    CHECK(leg->kind == ZeroKind::negation_symmetry);
}

TEST_CASE("certified structural zeros imply exact zeros") {
    std::vector<MatrixSpec> specs{TanQuad{5, 1, 1, 0}, TanQuad{13, 1, 2, 0},
                                  TanLin{9, 1, 1, 0},  TanLin{13, 2, 1, 0},
                                  TanQuad{7, 1, 6, 1}, TanQuad{11, 2, 9, 1},
                                  LegTanQuad{5, 1, 1}, LegTanQuad{13, 1, 2}};
    for (const auto& spec : specs) {
        auto rm = build(spec);
        auto cert = structural_zero(rm);
        REQUIRE(cert.has_value());
        CHECK(det_exact(rm).is_zero());
    }
}

TEST_CASE("rational recognition") {
    RealBall x = RealBall::from_ratio(q(-2), 192);
    CHECK(recognize_rational(x, mpz_class(1000)) == q(-2));
    CHECK(recognize_rational(RealBall::from_ratio(q(1, 3), 192), mpz_class(1000)) == q(1, 3));
    // pi is not 22/7: the gate rejects wide enclosures, tight ones refuse
    RealBall pi = RealBall::pi(192);
    CHECK_FALSE(recognize_rational(pi, mpz_class(10)).has_value());
    // enclosure too wide for the bound
    RealBall wide = RealBall::pi(32);
    CHECK_FALSE(recognize_rational(wide, mpz_class(1000000)).has_value());
}

TEST_CASE("integer quotient recognition") {
    // the cot jk/7 determinant is exactly -4 sqrt(7)
    RealBall x = detcore::det_ball(build(detcore::CotJK{7}), 128);
    RealBall base = RealBall::from_long(4, 128) * RealBall::sqrt_int(7, 128);
    CHECK(recognize_integer_quotient(x, base) == mpz_class(-1));
    CHECK(recognize_integer_quotient(RealBall::from_long(392, 96),
                                     RealBall::from_long(392, 96)) == mpz_class(1));
    // quotient width >= 1/2 gives nothing
    RealBall wide_base = RealBall::from_ratio(q(1, 1), 64);
    RealBall wide = RealBall::pi(8);
    CHECK_FALSE(recognize_integer_quotient(wide, wide_base).has_value());
}
