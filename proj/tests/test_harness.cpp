#include "doctest.h"

#include "tandet/harness.hpp"
#include "tandet/oeis.hpp"

using namespace tandet;
using namespace tandet::harness;
using recognize::VerdictKind;

namespace {

RunConfig test_cfg() {
    RunConfig cfg;
    cfg.prec_start = 64;
    cfg.prec_cap = 2048;
    return cfg;
}

}  // namespace

TEST_CASE("sequence s starts 1, -2, 4, 4, 48, -160") {
    auto recs = sequence_s(6, test_cfg());
    std::vector<long> expect{1, -2, 4, 4, 48, -160};
    REQUIRE(recs.size() == 6);
    for (size_t i = 0; i < 6; ++i) {
        CHECK(recs[i].certified);
        CHECK(recs[i].value == expect[i]);
    }
}

TEST_CASE("a_p^+- values for p = 3 and 7") {
    auto [a3p, a3m] = compute_a_pm(3, test_cfg());
    CHECK(a3p == -1);
    CHECK(a3m == -1);
    auto [a7p, a7m] = compute_a_pm(7, test_cfg());
    CHECK(a7p == 60);
    CHECK(a7m == 3);
}

TEST_CASE("theorem 1.2 instance n=9, a=1, b=2 confirms 4782969") {
    auto recs = verify_theorem("1.2", Range{9, 9}, test_cfg());
    bool seen = false;
    for (const auto& r : recs) {
        CHECK(r.verdict == VerdictKind::confirmed);
        if (r.params.at("a") == 1 && r.params.at("b") == 2 && r.params.at("delta") == 1) {
            seen = true;
            CHECK(r.predicted == "4782969");
        }
    }
    CHECK(seen);
}

TEST_CASE("theorem 1.1 instance p=5, a=1, b=4, delta=1 confirms 5 + 2 sqrt(5)") {
    auto recs = verify_theorem("1.1", Range{5, 5}, test_cfg());
    bool seen = false;
    for (const auto& r : recs) {
        CHECK(r.verdict == VerdictKind::confirmed);
        if (r.params.at("a") == 1 && r.params.at("b") == 4 && r.params.at("delta") == 1) {
            seen = true;
            CHECK(r.predicted == "5 + 2*sqrt(5)");
        }
    }
    CHECK(seen);
}

TEST_CASE("theorem 1.3 instance p=7 confirms with the predicted sign") {
    auto recs = verify_theorem("1.3", Range{7, 7}, test_cfg());
    REQUIRE(!recs.empty());
    for (const auto& r : recs) CHECK(r.verdict == VerdictKind::confirmed);
}

TEST_CASE("theorem 1.4 recognizes D_5 = -2 and D_7/sqrt(7) = -4") {
    auto recs = verify_theorem("1.4", Range{5, 7}, test_cfg());
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].recognized == mpq_class(-2));
    CHECK(recs[1].recognized == mpq_class(-4));
    CHECK(recs[0].exact_present);
    CHECK(recs[1].exact_present);
}

TEST_CASE("p = 3 anomaly reported raw") {
    auto recs = theorem11_p3_anomaly(test_cfg());
    bool refuted_seen = false, confirmed_seen = false;
    for (const auto& r : recs) {
        if (r.verdict == VerdictKind::refuted) refuted_seen = true;
        if (r.verdict == VerdictKind::confirmed) confirmed_seen = true;
    }
    // (ab/3) = 1 instances break the closed forms, b = -a instances hold
    CHECK(refuted_seen);
    CHECK(confirmed_seen);
}

TEST_CASE("conjecture 5.1 at p = 7 certifies quotient 1") {
    auto rows = scan_conjecture("5.1", Range{7, 7}, test_cfg());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].verdict == "Divisible");
    CHECK(rows[0].quotient == mpz_class(1));
}

TEST_CASE("conjecture 5.3 at n = 3: determinant 9, quotient 3") {
    auto rows = scan_conjecture("5.3", Range{3, 3}, test_cfg());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].verdict == "Divisible");
    CHECK(rows[0].quotient == mpz_class(3));
}

TEST_CASE("conjecture 5.6 at n = 3 includes det[sin pi jk/3] = -3/2") {
    auto rows = scan_conjecture("5.6", Range{3, 3}, test_cfg());
    bool seen = false;
    for (const auto& r : rows) {
        CHECK(r.verdict == "Confirmed");
        if (r.note == "(5.13)") seen = true;
    }
    CHECK(seen);
}

TEST_CASE("product identities confirm at p = 7") {
    for (long a : {1L, 3L}) {
        auto recs = verify_products(7, a, std::nullopt, 128);
        REQUIRE(!recs.empty());
        for (const auto& r : recs) {
            INFO(r.id);
            CHECK(r.verdict == VerdictKind::confirmed);
        }
    }
}

TEST_CASE("oeis comparison against the shipped fixture") {
    auto seq = sequence_s(11, test_cfg());
    auto terms = oeis::parse_bfile(oeis::fixture_a277445());
    auto report = compare_oeis(seq, terms, "A277445");
    CHECK(report.mismatches == 0);
    CHECK(report.gaps == 0);
    REQUIRE(report.rows.size() == 11);
    CHECK(report.rows[2].relation == "negated");  // n = 3
    CHECK(report.rows[9].status == "holds");      // s_10 = t_10 = 0
    CHECK_THROWS_AS(compare_oeis({}, terms, "A277445"), param_error);
}

TEST_CASE("5.3diff data rows certify integrality") {
    auto rows = scan_conjecture("5.3diff", Range{3, 9}, test_cfg());
    for (const auto& r : rows) CHECK(r.verdict == "Divisible");
}
