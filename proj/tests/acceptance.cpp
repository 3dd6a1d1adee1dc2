// Acceptance suite: one pass/fail line per criterion. Exit code counts the
// failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "tandet/harness.hpp"
#include "tandet/ntheory.hpp"
#include "tandet/oeis.hpp"

using namespace tandet;
using namespace tandet::harness;
using detcore::build;
using detcore::CycloElement;
using detcore::det_ball;
using detcore::det_exact;
using detcore::MatrixSpec;
using detcore::ResidueMatrix;
using ntheory::is_probable_prime;
using ntheory::jacobi;
using ntheory::mod_reduce;
using realball::RealBall;
using recognize::VerdictKind;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunConfig cfg_default() {
    RunConfig cfg;
    return cfg;
}

std::vector<long> primes(long lo, long hi, int residue_mod4 = 0) {
    std::vector<long> out;
    for (long p = lo; p <= hi; ++p)
        if (p % 2 == 1 && is_probable_prime(p) && (residue_mod4 == 0 || p % 4 == residue_mod4))
            out.push_back(p);
    return out;
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    auto recs = sequence_s(11, cfg_default());
    std::vector<long> expect{1, -2, 4, 4, 48, -160, 32, 2176, 6912, 0, 273408};
    bool ok = recs.size() == 11;
    std::string detail = "seq s 1..11 = ";
    for (size_t i = 0; i < recs.size(); ++i) {
        ok = ok && recs[i].certified && recs[i].value == expect[i];
        detail += recs[i].value.get_str() + (i + 1 < recs.size() ? "," : "");
    }
    ok = ok && recs[9].source == "exact";  // s_10 = 0 proven exactly
    double secs = seconds_since(t0);
    ok = ok && secs < 120.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, " (s_10 via %s, %.1fs)", recs[9].source.c_str(), secs);
    report(1, ok, detail + buf);
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    struct Want {
        long p;
        mpz_class plus, minus;
    };
    std::vector<Want> wants{{3, mpz_class(-1), mpz_class(-1)},
                            {7, mpz_class(60), mpz_class(3)},
                            {11, mpz_class(1728), mpz_class(-373)},
                            {19, mpz_class(402124800), mpz_class(-11846345)}};
    bool ok = true;
    std::string detail = "a_p^+- for p in {3,7,11,19}:";
    for (const auto& w : wants) {
        auto [ap, am] = compute_a_pm(w.p, cfg_default());
        ok = ok && ap == w.plus && am == w.minus;
        detail += " (" + ap.get_str() + "," + am.get_str() + ")";
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 300.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.1fs)", secs);
    report(2, ok, detail + buf);
}

void criterion3() {
    auto recs = verify_theorem("1.1", Range{5, 37}, cfg_default());
    long confirmed = 0, zero_certified = 0, zero_claims = 0, refuted = 0, undecided = 0;
    for (const auto& r : recs) {
        if (r.verdict == VerdictKind::confirmed) ++confirmed;
        else if (r.verdict == VerdictKind::refuted) ++refuted;
        else ++undecided;
        if (r.predicted == "0") {
            ++zero_claims;
            if (!r.certificate.empty() || r.engine.find("exact") != std::string::npos)
                ++zero_certified;
        }
    }
    auto anomaly = theorem11_p3_anomaly(cfg_default());
    bool anomaly_reported = !anomaly.empty();
    bool ok = refuted == 0 && undecided == 0 && confirmed == static_cast<long>(recs.size()) &&
              zero_certified == zero_claims && anomaly_reported;
    std::ostringstream os;
    os << "theorem 1.1 sweep p=5..37: " << confirmed << "/" << recs.size()
       << " confirmed, " << zero_certified << "/" << zero_claims
       << " zero claims certified, p=3 anomaly records " << anomaly.size();
    report(3, ok, os.str());
}

void criterion4() {
    auto recs = verify_theorem("1.2", Range{3, 15}, cfg_default());
    std::map<long, std::set<std::pair<long, long>>> pairs_per_n;
    bool all_ok = !recs.empty();
    for (const auto& r : recs) {
        all_ok = all_ok && r.verdict == VerdictKind::confirmed;
        pairs_per_n[r.params.at("n")].insert({r.params.at("a"), r.params.at("b")});
    }
    for (long n = 3; n <= 15; n += 2)
        all_ok = all_ok && pairs_per_n.count(n) && pairs_per_n[n].size() >= 4;
    std::ostringstream os;
    os << "theorem 1.2 n=3..15: " << recs.size() << " instances confirmed, >=4 pairs per n";
    report(4, all_ok, os.str());
}

void criterion5() {
    auto recs = verify_theorem("1.3", Range{5, 23}, cfg_default());
    bool ok = !recs.empty();
    for (const auto& r : recs) {
        ok = ok && r.verdict == VerdictKind::confirmed;
        long p = r.params.at("p");
        if (p % 4 == 3) {
            long h = quadfield::class_number_imag(p);
            int expect = ((h + 1) / 2 % 2 == 0 ? 1 : -1) * jacobi(r.params.at("a"), p);
            ok = ok && r.observed_sign == expect;
        }
    }
    std::ostringstream os;
    os << "theorem 1.3 p=5..23: " << recs.size()
       << " instances confirmed with the (1.10) sign law";
    report(5, ok, os.str());
}

void criterion6() {
    bool ok = true;
    std::string detail = "theorem 1.4 + conjecture 5.1: D_5=";
    auto recs = verify_theorem("1.4", Range{5, 23}, cfg_default());
    std::map<long, mpq_class> recognized;
    for (const auto& r : recs) {
        if (r.verdict != VerdictKind::confirmed || !r.recognized) ok = false;
        else recognized[r.params.at("p")] = *r.recognized;
    }
    for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L}) ok = ok && recognized.count(p);
    ok = ok && recognized[5] == mpq_class(-2);
    detail += recognized.count(5) ? recognized[5].get_str() : "?";
    auto rows = scan_conjecture("5.1", Range{7, 23}, cfg_default());
    for (const auto& row : rows) {
        ok = ok && row.verdict == "Divisible" && row.quotient && *row.quotient >= 1;
        if (row.params.at("p") == 7) ok = ok && *row.quotient == 1;
        detail += " q(" + std::to_string(row.params.at("p")) + ")=" +
                  (row.quotient ? row.quotient->get_str() : "?");
    }
    report(6, ok, detail);
}

void criterion7() {
    auto rows = scan_conjecture("5.6", Range{1, 12}, cfg_default());
    bool ok = !rows.empty();
    long exact_rows = 0;
    for (const auto& row : rows) {
        ok = ok && row.verdict == "Confirmed";
        if (row.engine.find("exact") != std::string::npos) ++exact_rows;
    }
    std::ostringstream os;
    os << "conjecture 5.6 (5.11)-(5.14) n<=12: " << rows.size() << " rows confirmed, "
       << exact_rows << " decided in exact mode";
    report(7, ok && exact_rows > 0, os.str());
}

void criterion8() {
    bool ok = true;
    long count = 0;
    for (long p : primes(3, 23)) {
        std::vector<long> as{1};
        if (p > 3) as.push_back(least_nonresidue(p));
        for (long a : as) {
            auto recs = verify_products(p, a, std::nullopt, 160);
            for (const auto& r : recs) {
                ++count;
                if (r.verdict != VerdictKind::confirmed) {
                    ok = false;
                    std::fprintf(stderr, "  product %s not confirmed\n", r.id.c_str());
                }
            }
        }
    }
    std::ostringstream os;
    os << "product identities (2.4)-(2.9), (3.1), (4.1), (4.2), gauss for p<=23: " << count
       << " records confirmed at radius < 1e-10";
    report(8, ok, os.str());
}

void criterion9() {
    bool ok = true;
    for (long n = 3; n <= 99 && ok; n += 2)
        for (long a = 1; a < n && ok; ++a) {
            if (std::gcd(a, n) != 1) continue;
            ok = ntheory::zolotarev_sign(a, n).sign == jacobi(a, n);
        }
    bool pan_ok = true;
    for (long n = 3; n <= 99 && pan_ok; n += 2)
        for (long c = 1; c < n && pan_ok; ++c) {
            if (std::gcd(c, n) != 1) continue;
            int expect = (n + 1) / 2 % 2 == 0 ? 1 : jacobi(c, n);
            pan_ok = ntheory::pan_sign(c, n).sign == expect;
        }
    bool reps_ok = true;
    for (long p : primes(3, 31))
        for (long a = 1; a < p && reps_ok; ++a)
            for (long b = 1; b < p && reps_ok; ++b) {
                if (jacobi(mod_reduce(-a * b, p), p) != -1) continue;
                for (long m = 0; m < p && reps_ok; ++m) {
                    long brute = 0;
                    for (long j = 1; j <= (p - 1) / 2; ++j)
                        for (long k = 1; k <= (p - 1) / 2; ++k)
                            if (mod_reduce(a * j * j + b * k * k, p) == m) ++brute;
                    reps_ok = ntheory::count_quad_reps(p, a, b, m) == brute;
                }
            }
    bool class_ok = true, mordell_ok = true;
    for (long p : primes(3, 199, 3)) {
        class_ok = class_ok &&
                   quadfield::class_number_imag(p) == quadfield::class_number_imag_oracle(p);
        if (p > 3) {
            int expect = ((quadfield::class_number_imag(p) + 1) / 2) % 2 == 0 ? 1 : -1;
            mordell_ok = mordell_ok && quadfield::mordell_sign(p) == expect;
        }
    }
    ok = ok && pan_ok && reps_ok && class_ok && mordell_ok;
    std::ostringstream os;
    os << "oracles: zolotarev=" << (ok ? "ok" : "FAIL") << " pan=" << (pan_ok ? "ok" : "FAIL")
       << " quad-reps=" << (reps_ok ? "ok" : "FAIL") << " h(-p)=" << (class_ok ? "ok" : "FAIL")
       << " mordell=" << (mordell_ok ? "ok" : "FAIL");
    report(9, ok, os.str());
}

void criterion10() {
    detcore::ExactBudget budget{14, 200000};
    std::vector<MatrixSpec> specs;
    for (long p : primes(3, 13)) {
        std::vector<long> as{1};
        std::vector<long> bs{1, p - 1};
        if (p > 3) {
            long r = least_nonresidue(p);
            as.push_back(r);
            bs = coefficient_reps(p);
        }
        for (long a : as)
            for (long b : bs) {
                for (int delta : {0, 1}) {
                    specs.push_back(detcore::TanQuad{p, a, b, delta});
                    specs.push_back(detcore::Tan2Quad{p, a, b, delta});
                }
                specs.push_back(detcore::LegTanQuad{p, a, b});
                if (jacobi(mod_reduce(-a * b, p), p) == -1) {
                    specs.push_back(detcore::CotQuad{p, a, b});
                    specs.push_back(detcore::Cot2Quad{p, a, b});
                    specs.push_back(detcore::LegCotQuad{p, a, b});
                }
            }
        specs.push_back(detcore::CotJK{p});
    }
    for (long n = 3; n <= 13; n += 2) {
        for (long a : {1L, 2L})
            for (long b : {1L, 2L})
                for (int delta : {0, 1}) specs.push_back(detcore::TanLin{n, a, b, delta});
        specs.push_back(detcore::Tan2LinSum{n});
        specs.push_back(detcore::TanJK{n});
    }
    for (long n = 1; n <= 13; ++n) {
        for (int delta : {0, 1}) specs.push_back(detcore::CosJK{n, delta, false});
        if (n % 2 == 1) {
            for (int delta : {0, 1}) specs.push_back(detcore::CosJK{n, delta, true});
            if (n >= 3) specs.push_back(detcore::SinJK{n, true});
        }
        if (n >= 2) specs.push_back(detcore::SinJK{n, false});
    }
    long checked = 0, violations = 0;
    for (const auto& spec : specs) {
        ResidueMatrix rm = build(spec);
        CycloElement z = det_exact(rm, budget);
        RealBall d(128);
        bool have = false;
        for (realball::Prec prec = 128; prec <= 1024 && !have; prec *= 2) {
            try {
                d = det_ball(rm, prec);
                have = true;
            } catch (const undecided_error&) {
            }
        }
        if (!have) {
            // exact zeros: elimination always hits a zero pivot and reports
            // Undecided; that is the contract, not a containment violation
            if (z.is_zero()) {
                ++checked;
                continue;
            }
            ++violations;
            continue;
        }
        bool contained = false;
        for (realball::Prec eprec = d.prec() + 64; eprec <= 8192; eprec *= 2) {
            RealBall emb = z.embed(eprec).re;
            if (d.contains_ball(emb)) {
                contained = true;
                break;
            }
            if (d.disjoint(emb)) break;
        }
        ++checked;
        if (!contained) {
            ++violations;
            std::fprintf(stderr, "  cross-engine violation: %s\n",
                         detcore::family_name(spec).c_str());
        }
    }
    std::ostringstream os;
    os << "cross-engine containment (modulus <= 13): " << checked << " instances, "
       << violations << " violations";
    report(10, violations == 0 && checked > 100, os.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%s: %d/10 criteria passed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                10 - g_failures);
    return g_failures;
}
