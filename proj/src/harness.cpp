#include "tandet/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

#include "tandet/ntheory.hpp"

namespace tandet::harness {

using detcore::build;
using detcore::CotJK;
using detcore::CotQuad;
using detcore::Cot2Quad;
using detcore::CosJK;
using detcore::CycloElement;
using detcore::det_ball;
using detcore::det_cauchy_exact;
using detcore::det_exact;
using detcore::cauchy_supported;
using detcore::euler_phi;
using detcore::family_name;
using detcore::family_params;
using detcore::LegCotQuad;
using detcore::LegTanQuad;
using detcore::SinJK;
using detcore::subfield_project;
using detcore::Tan2LinSum;
using detcore::Tan2Quad;
using detcore::TanJK;
using detcore::TanLin;
using detcore::TanQuad;
using ntheory::is_probable_prime;
using ntheory::jacobi;
using ntheory::mod_reduce;
using realball::AngleFraction;
using realball::ComplexBall;
using realball::root_of_unity;
using recognize::ClosedForm;
using recognize::eval_form;
using recognize::form_repr;
using recognize::match_ball;
using recognize::match_exact;
using recognize::PowerForm;
using recognize::structural_zero;
using recognize::Verdict;
using recognize::VerdictKind;
using recognize::ZeroForm;
using recognize::zero_kind_name;

namespace {

std::atomic<long> g_det_evals{0};

long now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

std::vector<long> primes_in(Range r) {
    std::vector<long> out;
    for (long p = std::max(r.lo, 3L); p <= r.hi; ++p)
        if (p % 2 == 1 && is_probable_prime(p)) out.push_back(p);
    return out;
}

void fill_enclosure(VerificationRecord& rec, const RealBall& v, Prec prec) {
    rec.mid_dec = v.mid_decimal();
    rec.rad_dec = v.rad_decimal();
    rec.prec_bits = prec;
}

void fill_enclosure(ScanRow& row, const RealBall& v, Prec prec) {
    row.mid_dec = v.mid_decimal();
    row.rad_dec = v.rad_decimal();
    row.prec_bits = prec;
}

// run tasks with bounded parallelism, results in task order
template <typename R>
std::vector<R> run_tasks(std::vector<std::function<R()>>& tasks, int jobs) {
    std::vector<R> out(tasks.size());
    if (jobs <= 1 || tasks.size() <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
        return out;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                out[i] = tasks[i]();
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int nthreads = std::min<int>(jobs, static_cast<int>(tasks.size()));
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace

long det_eval_count() { return g_det_evals.load(); }

DetOutcome compute_det(const MatrixSpec& spec, const RunConfig& cfg, bool want_exact) {
    DetOutcome out;
    ResidueMatrix rm = build(spec);
    out.engine = "ball";
    bool have_ball = false;
    for (Prec prec = cfg.prec_start; prec <= cfg.prec_cap; prec *= 2) {
        try {
            ++g_det_evals;
            out.enclosure = det_ball(rm, prec);
            out.prec = prec;
            have_ball = true;
            break;
        } catch (const undecided_error&) {
            continue;  // restart from scratch at doubled precision
        }
    }
    if (!have_ball) out.undecided = true;
    if (want_exact) {
        if (cauchy_supported(spec)) {
            out.exact = det_cauchy_exact(spec);
            out.engine = have_ball ? "ball+cauchy-exact" : "cauchy-exact";
        } else {
            unsigned long phi = euler_phi(4 * static_cast<unsigned long>(rm.den));
            if (cfg.exact_budget.allows(rm.dim, phi)) {
                out.exact = det_exact(rm, cfg.exact_budget);
                out.engine = have_ball ? "ball+exact" : "exact";
            }
        }
        if (out.exact && have_ball) {
            ComplexBall e = out.exact->embed(std::max<Prec>(out.prec, 64));
            if (out.enclosure.disjoint(e.re))
                throw domain_error("compute_det: ball and exact engines disagree");
        }
    }
    return out;
}

long least_nonresidue(long p) {
    for (long r = 2; r < p; ++r)
        if (jacobi(r, p) == -1) return r;
    throw domain_error("least_nonresidue: none found");
}

std::vector<long> coefficient_reps(long p) {
    long r = least_nonresidue(p);
    std::vector<long> bs{1, r, p - 1, p - r};
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
    return bs;
}

namespace {

std::string make_id(const std::string& prefix, const std::map<std::string, long>& params) {
    std::string id = prefix;
    for (const auto& [k, v] : params) id += "/" + k + "=" + std::to_string(v);
    return id;
}

// One Theorem 1.1 / 1.2 / 1.3 style instance: predicted form vs computed
// determinant, zero claims via certificate or exact engine.
VerificationRecord run_form_instance(const std::string& id_prefix, const MatrixSpec& spec,
                                     const std::optional<ClosedForm>& form,
                                     const RunConfig& cfg) {
    long t0 = now_ms();
    VerificationRecord rec;
    rec.family = family_name(spec);
    rec.params = family_params(spec);
    rec.id = make_id(id_prefix, rec.params);
    if (form) rec.predicted = form_repr(*form);

    ResidueMatrix rm = build(spec);
    if (form && recognize::form_is_zero(*form)) {
        if (auto cert = structural_zero(rm)) {
            rec.certificate = zero_kind_name(cert->kind);
            rec.engine = "structural";
            rec.verdict = VerdictKind::confirmed;
            // ball cross-check: the enclosure must be consistent with zero
            DetOutcome d = compute_det(spec, cfg, false);
            if (!d.undecided) {
                fill_enclosure(rec, d.enclosure, d.prec);
                if (!d.enclosure.contains_zero())
                    throw domain_error("structural zero contradicted by ball engine");
            }
            rec.runtime_ms = now_ms() - t0;
            return rec;
        }
        DetOutcome d = compute_det(spec, cfg, true);
        if (!d.undecided) fill_enclosure(rec, d.enclosure, d.prec);
        if (d.exact) {
            rec.exact_present = true;
            rec.exact_repr = d.exact->repr();
            rec.engine = d.engine;
            Verdict v = match_exact(*d.exact, *form);
            rec.verdict = v.kind;
            if (v.kind == VerdictKind::refuted)
                rec.note = "exact value " + d.exact->repr() + " contradicts the zero claim";
        } else if (!d.undecided) {
            rec.engine = "ball";
            rec.verdict = match_ball(d.enclosure, *form, cfg.prec_cap).kind;
        } else {
            rec.engine = "ball";
            rec.verdict = VerdictKind::undecided;
        }
        rec.runtime_ms = now_ms() - t0;
        return rec;
    }

    // exact confirmation is cheap at small dimension; large value instances
    // are settled by the certified ball match alone
    DetOutcome d = compute_det(spec, cfg, rm.dim <= 12);
    if (d.undecided) {
        rec.engine = "ball";
        rec.verdict = VerdictKind::undecided;
        rec.note = "precision cap reached";
        rec.runtime_ms = now_ms() - t0;
        return rec;
    }
    fill_enclosure(rec, d.enclosure, d.prec);
    rec.engine = d.engine;
    if (d.exact) {
        rec.exact_present = true;
        rec.exact_repr = d.exact->repr();
    }
    if (!form) {
        rec.verdict = VerdictKind::undecided;
        rec.note = "no covered closed form";
        rec.runtime_ms = now_ms() - t0;
        return rec;
    }
    Verdict vb = match_ball(d.enclosure, *form, cfg.prec_cap);
    if (d.exact) {
        Verdict ve = match_exact(*d.exact, *form);
        if (vb.kind == VerdictKind::confirmed && ve.kind == VerdictKind::refuted)
            throw domain_error("ball and exact matches disagree");
        rec.verdict = ve.kind;
        rec.observed_sign = ve.observed_sign != 0 ? ve.observed_sign : vb.observed_sign;
        if (ve.kind == VerdictKind::refuted)
            rec.note = "exact value " + d.exact->repr() + " differs from the predicted form";
    } else {
        rec.verdict = vb.kind;
        rec.observed_sign = vb.observed_sign;
    }
    // escalate the ball determinant until the verdict settles
    Prec prec = d.prec;
    while (rec.verdict == VerdictKind::undecided && prec * 2 <= cfg.prec_cap) {
        prec *= 2;
        RunConfig c2 = cfg;
        c2.prec_start = prec;
        DetOutcome d2 = compute_det(spec, c2, false);
        if (d2.undecided) break;
        fill_enclosure(rec, d2.enclosure, d2.prec);
        Verdict v2 = match_ball(d2.enclosure, *form, cfg.prec_cap);
        rec.verdict = v2.kind;
        rec.observed_sign = v2.observed_sign;
    }
    rec.runtime_ms = now_ms() - t0;
    return rec;
}

std::vector<VerificationRecord> verify_theorem_11(Range range, const RunConfig& cfg) {
    std::vector<std::function<VerificationRecord()>> tasks;
    for (long p : primes_in(range)) {
        if (p == 3) continue;  // anomaly path
        auto inv = quadfield::invariants_for(p);
        long r = least_nonresidue(p);
        for (long a : std::vector<long>{1, r})
            for (long b : coefficient_reps(p))
                for (int delta : {0, 1}) {
                    MatrixSpec spec = TanQuad{p, a, b, delta};
                    tasks.push_back([spec, inv, &cfg]() {
                        auto form = recognize::predict(spec, inv);
                        return run_form_instance("thm1.1", spec, form, cfg);
                    });
                }
    }
    return run_tasks(tasks, cfg.jobs);
}

std::vector<VerificationRecord> verify_theorem_12(Range range, const RunConfig& cfg) {
    std::vector<std::function<VerificationRecord()>> tasks;
    quadfield::QuadInvariants none;
    for (long n = std::max(range.lo, 3L); n <= range.hi; ++n) {
        if (n % 2 == 0) continue;
        std::set<std::pair<long, long>> pairs;
        for (long a : {1L, 2L})
            for (long b : std::vector<long>{1, 2, n - 1, n - 2}) {
                if (std::gcd(a, n) != 1 || std::gcd(mod_reduce(b, n), n) != 1) continue;
                pairs.insert({a, mod_reduce(b, n)});
            }
        for (auto [a, b] : pairs)
            for (int delta : {0, 1}) {
                MatrixSpec spec = TanLin{n, a, b, delta};
                tasks.push_back([spec, none, &cfg]() {
                    auto form = recognize::predict(spec, none);
                    return run_form_instance("thm1.2", spec, form, cfg);
                });
            }
    }
    return run_tasks(tasks, cfg.jobs);
}

std::vector<VerificationRecord> verify_theorem_13(Range range, const RunConfig& cfg) {
    std::vector<std::function<VerificationRecord()>> tasks;
    for (long p : primes_in(range)) {
        if (p <= 3) continue;
        auto inv = quadfield::invariants_for(p);
        long r = least_nonresidue(p);
        for (long a : std::vector<long>{1, r}) {
            int found = 0;
            for (long b = 1; b < p && found < 2; ++b) {
                if (jacobi(mod_reduce(-a * b, p), p) != -1) continue;
                ++found;
                MatrixSpec spec = CotQuad{p, a, b};
                tasks.push_back([spec, inv, &cfg]() {
                    auto form = recognize::predict(spec, inv);
                    return run_form_instance("thm1.3", spec, form, cfg);
                });
            }
        }
    }
    return run_tasks(tasks, cfg.jobs);
}

// Theorem 1.4: recognize D_p (p = 1 mod 4) or D_p/sqrt(p) as a rational via
// the two-stage continued-fraction certification.
VerificationRecord run_cotjk_instance(long p, const RunConfig& cfg) {
    long t0 = now_ms();
    MatrixSpec spec = CotJK{p};
    VerificationRecord rec;
    rec.family = family_name(spec);
    rec.params = family_params(spec);
    rec.id = make_id("thm1.4", rec.params);
    rec.predicted = p % 4 == 1 ? "rational" : "rational*sqrt(p)";

    mpz_class bound = mpz_class(1) << ((p + 1) / 2);
    bound *= mpz_class(p) * p;

    ResidueMatrix rm = build(spec);
    for (Prec prec = cfg.prec_start; prec <= cfg.prec_cap; prec *= 2) {
        RealBall d1(prec), d2(prec);
        try {
            ++g_det_evals;
            d1 = det_ball(rm, prec);
            ++g_det_evals;
            d2 = det_ball(rm, prec * 2);
        } catch (const undecided_error&) {
            continue;
        }
        auto strip = [&](const RealBall& d, Prec q) {
            return p % 4 == 1 ? d : d / RealBall::sqrt_int(mpz_class(p), q);
        };
        RealBall x1 = strip(d1, prec), x2 = strip(d2, prec * 2);
        auto cand = recognize::recognize_rational(x1, bound);
        if (!cand) continue;
        // refined enclosure must keep the candidate with a 2^20 margin
        if (!x2.contains(*cand)) continue;
        if (!(x2.rad_ratio() * (mpz_class(1) << 20) <= x1.rad_ratio())) continue;
        rec.recognized = *cand;
        rec.verdict = VerdictKind::confirmed;
        rec.engine = "ball";
        fill_enclosure(rec, d2, prec * 2);
        break;
    }
    if (!rec.recognized) {
        rec.verdict = VerdictKind::undecided;
        rec.note = "no certified rational below the denominator bound";
    }
    // exact cross-check at small p
    unsigned long phi = euler_phi(4 * static_cast<unsigned long>(p));
    if (rec.recognized && cfg.exact_budget.allows(rm.dim, phi)) {
        CycloElement z = det_exact(rm, cfg.exact_budget);
        auto sub = subfield_project(z, p);
        if (!sub) throw domain_error("thm1.4: exact value outside the quadratic subfield");
        mpq_class expect_r = p % 4 == 1 ? *rec.recognized : mpq_class(0);
        mpq_class expect_s = p % 4 == 1 ? mpq_class(0) : *rec.recognized;
        if (sub->r != expect_r || sub->s != expect_s)
            throw domain_error("thm1.4: exact projection disagrees with recognition");
        rec.exact_present = true;
        rec.exact_repr = z.repr();
        rec.engine = "ball+exact";
    }
    rec.runtime_ms = now_ms() - t0;
    return rec;
}

std::vector<VerificationRecord> verify_theorem_14(Range range, const RunConfig& cfg) {
    std::vector<std::function<VerificationRecord()>> tasks;
    for (long p : primes_in(range))
        tasks.push_back([p, &cfg]() { return run_cotjk_instance(p, cfg); });
    return run_tasks(tasks, cfg.jobs);
}

}  // namespace

std::vector<VerificationRecord> verify_theorem(const std::string& id, Range range,
                                               const RunConfig& cfg) {
    if (id == "1.1") return verify_theorem_11(range, cfg);
    if (id == "1.2") return verify_theorem_12(range, cfg);
    if (id == "1.3") return verify_theorem_13(range, cfg);
    if (id == "1.4") return verify_theorem_14(range, cfg);
    throw param_error("verify_theorem: unknown theorem id '" + id + "'");
}

std::vector<VerificationRecord> theorem11_p3_anomaly(const RunConfig& cfg) {
    std::vector<VerificationRecord> out;
    auto inv = quadfield::invariants_for(3);
    for (long a : {1L, 2L})
        for (long b : {1L, 2L})
            for (int delta : {0, 1}) {
                MatrixSpec spec = TanQuad{3, a, b, delta};
                auto form = recognize::predict(spec, inv);
                VerificationRecord rec = run_form_instance("thm1.1-anomaly", spec, form, cfg);
                rec.note = rec.note.empty()
                               ? "p=3 excluded from the sweep; raw verdict reported"
                               : rec.note + "; p=3 excluded from the sweep";
                out.push_back(std::move(rec));
            }
    return out;
}

namespace {

// divisor described by a closed form times an integer factor
struct Divisor {
    ClosedForm form;
    long factor = 1;
    std::string repr;
};

RealBall eval_divisor(const Divisor& dv, Prec prec) {
    RealBall v = eval_form(dv.form, prec);
    if (dv.factor != 1) v = v * RealBall::from_long(dv.factor, prec);
    return v;
}

// quotient certification with the precision ladder
ScanRow run_divisibility(const std::string& conj, const MatrixSpec* spec,
                         const ResidueMatrix& rm, const Divisor& dv, bool require_positive,
                         const RunConfig& cfg, const std::string& note) {
    long t0 = now_ms();
    ScanRow row;
    row.conjecture = conj;
    row.family = spec ? family_name(*spec) : "custom";
    row.params = spec ? family_params(*spec) : std::map<std::string, long>{};
    row.id = make_id("conj" + conj, row.params);
    row.divisor_repr = dv.repr;
    row.note = note;
    row.verdict = "Undecided";
    for (Prec prec = cfg.prec_start; prec <= cfg.prec_cap; prec *= 2) {
        RealBall d(prec);
        try {
            ++g_det_evals;
            d = det_ball(rm, prec);
        } catch (const undecided_error&) {
            continue;
        }
        fill_enclosure(row, d, prec);
        row.engine = "ball";
        RealBall divisor = eval_divisor(dv, prec);
        auto q = recognize::recognize_integer_quotient(d, divisor);
        if (!q) {
            // a quotient enclosure with no integer at all refutes the claim
            try {
                if (recognize::excludes_integers(d / divisor)) {
                    row.verdict = "Refuted";
                    row.note = row.note.empty()
                                   ? "quotient enclosure excludes all integers"
                                   : row.note + "; quotient enclosure excludes all integers";
                    break;
                }
            } catch (const undecided_error&) {
            }
            continue;
        }
        row.quotient = *q;
        bool ok = !require_positive || *q >= 1;
        row.verdict = ok ? "Divisible" : "Refuted";
        break;
    }
    row.runtime_ms = now_ms() - t0;
    return row;
}

std::vector<ScanRow> scan_51(Range range, const RunConfig& cfg) {
    std::vector<std::function<ScanRow()>> tasks;
    for (long p : primes_in(range)) {
        if (p % 4 != 3) continue;
        tasks.push_back([p, &cfg]() {
            long h = quadfield::class_number_imag(p);
            int sgn = jacobi(p - 2, p);
            MatrixSpec spec = CotJK{p};
            Divisor dv{ClosedForm{PowerForm{sgn, (p - 3) / 2, p, (p - 5) / 2}}, h,
                       "(-2/p)*2^((p-3)/2)*p^((p-5)/4)*h(-p)"};
            ResidueMatrix rm = build(spec);
            return run_divisibility("5.1", &spec, rm, dv, true, cfg, "");
        });
    }
    return run_tasks(tasks, cfg.jobs);
}

std::vector<ScanRow> scan_52ii(Range range, const RunConfig& cfg) {
    std::vector<std::function<ScanRow()>> tasks;
    for (long n = std::max(range.lo, 1L); n <= range.hi; ++n) {
        tasks.push_back([n, &cfg]() {
            long m = 2 * n + 1;
            MatrixSpec spec = TanJK{m};
            ResidueMatrix rm = build(spec);
            rm.squared = true;
            Divisor dv{ClosedForm{PowerForm{+1, 2 * (n - 1), m, n + 1}}, 1,
                       "(2n+1)^((n+1)/2)*4^(n-1)"};
            return run_divisibility("5.2ii", &spec, rm, dv, false, cfg,
                                    "index range read as 1..n (statement says (p-1)/2)");
        });
    }
    return run_tasks(tasks, cfg.jobs);
}

std::vector<ScanRow> scan_53(Range range, const RunConfig& cfg) {
    std::vector<std::function<ScanRow()>> tasks;
    for (long n = std::max(range.lo, 3L); n <= range.hi; ++n) {
        if (n % 2 == 0) continue;
        tasks.push_back([n, &cfg]() {
            MatrixSpec spec = Tan2LinSum{n};
            ResidueMatrix rm = build(spec);
            Divisor dv{ClosedForm{PowerForm{+1, 0, n, 2 * (n - 2)}}, 1, "n^(n-2)"};
            return run_divisibility("5.3", &spec, rm, dv, false, cfg, "");
        });
    }
    return run_tasks(tasks, cfg.jobs);
}

std::vector<ScanRow> scan_53diff(Range range, const RunConfig& cfg) {
    // tan^2 pi (j-k)/n determinants: integer-valued, no closed form to match
    std::vector<std::function<ScanRow()>> tasks;
    for (long n = std::max(range.lo, 3L); n <= range.hi; ++n) {
        if (n % 2 == 0) continue;
        tasks.push_back([n, &cfg]() {
            ResidueMatrix rm;
            rm.dim = static_cast<size_t>(n - 1);
            rm.den = n;
            rm.func = realball::TrigFunc::tan;
            rm.squared = true;
            rm.residues.resize(rm.dim * rm.dim);
            for (long j = 1; j <= n - 1; ++j) {
                rm.row_index.push_back(j);
                rm.col_index.push_back(j);
            }
            for (size_t j = 0; j < rm.dim; ++j)
                for (size_t k = 0; k < rm.dim; ++k)
                    rm.residues[j * rm.dim + k] =
                        mod_reduce(static_cast<long>(j) - static_cast<long>(k), n);
            Divisor dv{ClosedForm{recognize::RationalForm{mpq_class(1)}}, 1, "1"};
            ScanRow row = run_divisibility("5.3diff", nullptr, rm, dv, false, cfg,
                                           "integrality data only; no closed form");
            row.family = "tan2-lindiff";
            row.params = {{"n", n}};
            row.id = make_id("conj5.3diff", row.params);
            return row;
        });
    }
    return run_tasks(tasks, cfg.jobs);
}

std::vector<ScanRow> scan_54(Range range, const RunConfig& cfg) {
    std::vector<std::function<ScanRow()>> tasks;
    for (long p : primes_in(range)) {
        if (p % 4 != 3) continue;
        long r = least_nonresidue(p);
        for (long a : std::vector<long>{1, r})
            for (long b : coefficient_reps(p)) {
                tasks.push_back([p, a, b, &cfg]() {
                    MatrixSpec spec = Tan2Quad{p, a, b, 1};
                    ResidueMatrix rm = build(spec);
                    Divisor dv{ClosedForm{PowerForm{+1, 0, p, (p - 3) / 2}}, 1, "p^((p-3)/4)"};
                    return run_divisibility("5.4", &spec, rm, dv, false, cfg, "(5.5)");
                });
                tasks.push_back([p, a, b, &cfg]() {
                    MatrixSpec spec = Tan2Quad{p, a, b, 0};
                    ResidueMatrix rm = build(spec);
                    Divisor dv{ClosedForm{PowerForm{+1, 0, p, (p + 1) / 2}}, 1, "p^((p+1)/4)"};
                    return run_divisibility("5.4", &spec, rm, dv, false, cfg, "(5.6)");
                });
                if (jacobi(mod_reduce(a * b, p), p) == 1) {
                    tasks.push_back([p, a, b, &cfg]() {
                        MatrixSpec spec = Cot2Quad{p, a, b};
                        ResidueMatrix rm = build(spec);
                        Divisor dv{ClosedForm{PowerForm{+1, p - 3, p, -2}}, 1, "2^(p-3)/p"};
                        return run_divisibility("5.4", &spec, rm, dv, false, cfg, "(5.7)");
                    });
                }
            }
    }
    return run_tasks(tasks, cfg.jobs);
}

std::vector<ScanRow> scan_55(Range range, const RunConfig& cfg) {
    std::vector<std::function<ScanRow()>> tasks;
    for (long p : primes_in(range)) {
        if (p % 4 != 3) continue;
        long r = least_nonresidue(p);
        for (long a : std::vector<long>{1, r})
            for (long b : coefficient_reps(p)) {
                tasks.push_back([p, a, b, &cfg]() {
                    MatrixSpec spec = LegTanQuad{p, a, b};
                    ResidueMatrix rm = build(spec);
                    Divisor dv{ClosedForm{recognize::RationalForm{mpq_class(p)}}, 1, "p"};
                    return run_divisibility("5.5", &spec, rm, dv, false, cfg, "(5.9)");
                });
                if (jacobi(mod_reduce(a * b, p), p) == 1) {
                    tasks.push_back([p, a, b, &cfg]() {
                        MatrixSpec spec = LegCotQuad{p, a, b};
                        ResidueMatrix rm = build(spec);
                        Divisor dv{ClosedForm{PowerForm{+1, 0, p, -1}}, 1, "1/sqrt(p)"};
                        return run_divisibility("5.5", &spec, rm, dv, false, cfg, "(5.10)");
                    });
                }
            }
    }
    return run_tasks(tasks, cfg.jobs);
}

// closed-form scan row for the sin/cos determinant displays
ScanRow run_cos_sin_equality(const std::string& conj, const MatrixSpec& spec,
                             const ClosedForm& form, const RunConfig& cfg,
                             const std::string& note) {
    long t0 = now_ms();
    ScanRow row;
    row.conjecture = conj;
    row.family = family_name(spec);
    row.params = family_params(spec);
    row.id = make_id("conj" + conj, row.params);
    row.divisor_repr = form_repr(form);
    row.note = note;
    row.verdict = "Undecided";
    DetOutcome d = compute_det(spec, cfg, true);
    if (!d.undecided) fill_enclosure(row, d.enclosure, d.prec);
    row.engine = d.engine;
    Verdict v;
    if (d.exact) {
        v = match_exact(*d.exact, form);
    } else if (!d.undecided) {
        v = match_ball(d.enclosure, form, cfg.prec_cap);
    }
    row.verdict = recognize::verdict_name(v.kind);
    if (v.kind == VerdictKind::confirmed) row.quotient = mpz_class(1);
    row.runtime_ms = now_ms() - t0;
    return row;
}

// sign * n^(e/2) / 2^(e/2): stored over base n for odd n (integer alpha) and
// over base n/2 for even n
ClosedForm half_ratio_power(int sign, long n, long e) {
    if (n % 2 == 1) {
        if (e % 2 != 0) throw param_error("half_ratio_power: odd base with odd exponent");
        return ClosedForm{PowerForm{sign, -(e / 2), n, e}};
    }
    return ClosedForm{PowerForm{sign, 0, n / 2, e}};
}

// multiply a PowerForm by 2n in place
void scale_by_2n(ClosedForm& form, long n) {
    auto* pf = std::get_if<PowerForm>(&form);
    if (!pf) throw param_error("scale_by_2n: expected a power form");
    if (pf->base == n) {
        pf->alpha += 1;       // 2n = 2 * n
        pf->beta_half += 2;
    } else {
        pf->alpha += 2;       // 2n = 4 * (n/2)
        pf->beta_half += 2;
    }
}

std::vector<ScanRow> scan_56(Range range, const RunConfig& cfg) {
    std::vector<std::function<ScanRow()>> tasks;
    for (long n = std::max(range.lo, 1L); n <= range.hi; ++n) {
        // (5.11): both index ranges of the cos jk/n determinant
        tasks.push_back([n, &cfg]() {
            int sign = ((n + 1) / 2) % 2 == 0 ? +1 : -1;
            ClosedForm form = half_ratio_power(sign, n, n - 1);
            MatrixSpec spec = CosJK{n, 1, false};
            return run_cos_sin_equality("5.6", spec, form, cfg, "(5.11) inner");
        });
        tasks.push_back([n, &cfg]() {
            // the bordered determinant over 0..n equals 2n times the inner one
            int sign = ((n + 1) / 2) % 2 == 0 ? +1 : -1;
            ClosedForm form = half_ratio_power(sign, n, n - 1);
            scale_by_2n(form, n);
            MatrixSpec spec = CosJK{n, 0, false};
            return run_cos_sin_equality("5.6", spec, form, cfg, "(5.11) bordered = 2n*inner");
        });
        if (n % 2 == 1) {
            for (int delta : {0, 1}) {
                tasks.push_back([n, delta, &cfg]() {
                    int sign = jacobi(2, n);
                    ClosedForm form{
                        PowerForm{sign, -(n - 1) / 2, n, (n + 1) / 2 - 2 * delta}};
                    MatrixSpec spec = CosJK{n, delta, true};
                    return run_cos_sin_equality("5.6", spec, form, cfg, "(5.12)");
                });
            }
        }
        if (n > 1) {
            tasks.push_back([n, &cfg]() {
                int sign = ((n - 1) / 2) % 2 == 0 ? +1 : -1;
                ClosedForm form = half_ratio_power(sign, n, n - 1);
                MatrixSpec spec = SinJK{n, false};
                return run_cos_sin_equality("5.6", spec, form, cfg, "(5.13)");
            });
        }
        if (n % 2 == 1 && n >= 3) {
            tasks.push_back([n, &cfg]() {
                int sign = jacobi(mod_reduce(-2, n), n);
                ClosedForm form{PowerForm{sign, -(n - 1) / 2, n, (n - 1) / 2}};
                MatrixSpec spec = SinJK{n, true};
                return run_cos_sin_equality("5.6", spec, form, cfg, "(5.14)");
            });
        }
    }
    return run_tasks(tasks, cfg.jobs);
}

std::vector<ScanRow> sequence_rows(Range range, const RunConfig& cfg) {
    std::vector<ScanRow> rows;
    for (const auto& sr : sequence_s(range.hi, cfg)) {
        if (sr.n < range.lo) continue;
        ScanRow row;
        row.conjecture = "5.2i";
        row.family = "tan-jk";
        row.params = {{"n", sr.n}};
        row.id = make_id("conj5.2i", row.params);
        row.divisor_repr = "(2n+1)^(n/2)";
        row.quotient = sr.value;
        row.verdict = sr.certified ? "Divisible" : "Undecided";
        row.engine = sr.source;
        row.prec_bits = sr.prec_bits;
        row.runtime_ms = sr.runtime_ms;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::vector<ScanRow> scan_conjecture(const std::string& id, Range range, const RunConfig& cfg) {
    if (id == "5.1") return scan_51(range, cfg);
    if (id == "5.2i") return sequence_rows(range, cfg);
    if (id == "5.2ii") return scan_52ii(range, cfg);
    if (id == "5.3") return scan_53(range, cfg);
    if (id == "5.3diff") return scan_53diff(range, cfg);
    if (id == "5.4") return scan_54(range, cfg);
    if (id == "5.5") return scan_55(range, cfg);
    if (id == "5.6") return scan_56(range, cfg);
    throw param_error("scan_conjecture: unknown conjecture id '" + id + "'");
}

std::vector<SequenceRecord> sequence_s(long n_max, const RunConfig& cfg) {
    if (n_max < 1) throw param_error("sequence_s: n_max must be >= 1");
    std::vector<std::function<SequenceRecord()>> tasks;
    for (long n = 1; n <= n_max; ++n) {
        tasks.push_back([n, &cfg]() {
            long t0 = now_ms();
            long m = 2 * n + 1;
            SequenceRecord rec;
            rec.n = n;
            ResidueMatrix rm = build(MatrixSpec{TanJK{m}});
            unsigned long phi = euler_phi(4 * static_cast<unsigned long>(m));
            for (Prec prec = cfg.prec_start; prec <= cfg.prec_cap; prec *= 2) {
                RealBall d(prec);
                bool stuck = false;
                try {
                    ++g_det_evals;
                    d = det_ball(rm, prec);
                } catch (const undecided_error&) {
                    stuck = true;  // vanishing determinants never resolve in ball mode
                }
                rec.prec_bits = prec;
                if (stuck || d.contains_zero()) {
                    // zero is only believed when an exact engine proves it
                    if (!cfg.exact_budget.allows(rm.dim, phi)) continue;
                    CycloElement z = det_exact(rm, cfg.exact_budget);
                    if (z.is_zero()) {
                        rec.value = 0;
                        rec.certified = true;
                        rec.source = "exact";
                        rec.runtime_ms = now_ms() - t0;
                        return rec;
                    }
                    // nonzero but tiny: use the exact embedding instead
                    ComplexBall e = z.embed(prec * 2);
                    d = e.re;
                }
                // base (2n+1)^(n/2)
                mpz_class whole;
                mpz_ui_pow_ui(whole.get_mpz_t(), static_cast<unsigned long>(m),
                              static_cast<unsigned long>(n / 2));
                RealBall base = RealBall::from_int(whole, prec);
                if (n % 2 == 1) base = base * RealBall::sqrt_int(mpz_class(m), prec);
                auto q = recognize::recognize_integer_quotient(d, base);
                if (q) {
                    rec.value = *q;
                    rec.certified = true;
                    rec.source = "ball";
                    rec.runtime_ms = now_ms() - t0;
                    return rec;
                }
            }
            rec.certified = false;
            rec.source = "ball";
            rec.runtime_ms = now_ms() - t0;
            return rec;
        });
    }
    return run_tasks(tasks, cfg.jobs);
}

std::pair<mpz_class, mpz_class> compute_a_pm(long p, const RunConfig& cfg) {
    if (p % 4 != 3) throw param_error("compute_a_pm: p must be 3 (mod 4)");
    auto one_value = [&](long b) {
        MatrixSpec spec = LegTanQuad{p, 1, b};
        ResidueMatrix rm = build(spec);
        for (Prec prec = cfg.prec_start; prec <= cfg.prec_cap; prec *= 2) {
            RealBall d(prec);
            try {
                ++g_det_evals;
                d = det_ball(rm, prec);
            } catch (const undecided_error&) {
                continue;
            }
            auto q = recognize::recognize_integer_quotient(d, RealBall::from_long(p, prec));
            if (q) return *q;
        }
        throw undecided_error("compute_a_pm: precision cap reached");
    };
    return {one_value(1), one_value(p - 1)};
}

namespace {

// Multiply as a balanced tree: sequential complex ball products inflate the
// relative radius by a constant factor per step, a tree keeps it logarithmic.
ComplexBall balanced_product(std::vector<ComplexBall> factors, Prec prec) {
    if (factors.empty()) return ComplexBall::one(prec);
    while (factors.size() > 1) {
        std::vector<ComplexBall> next;
        next.reserve((factors.size() + 1) / 2);
        for (size_t i = 0; i + 1 < factors.size(); i += 2)
            next.push_back(factors[i] * factors[i + 1]);
        if (factors.size() % 2 == 1) next.push_back(factors.back());
        factors = std::move(next);
    }
    return factors[0];
}

struct ProductChecker {
    long p;
    Prec prec;
    std::vector<ComplexBall> zeta;  // zeta_p^t

    ProductChecker(long p_, Prec prec_) : p(p_), prec(prec_) {
        zeta.reserve(p);
        for (long t = 0; t < p; ++t) zeta.push_back(root_of_unity(t, p, prec));
    }
    const ComplexBall& zp(long e) const { return zeta[mod_reduce(e, p)]; }

    VerificationRecord record(const std::string& eq, long a, std::optional<long> b,
                              const ComplexBall& lhs, const ComplexBall& rhs,
                              bool ambiguous_sign) const {
        VerificationRecord rec;
        rec.family = "product";
        rec.params["p"] = p;
        rec.params["a"] = a;
        if (b) rec.params["b"] = *b;
        rec.id = make_id("prod" + eq, rec.params);
        rec.engine = "ball";
        rec.prec_bits = prec;
        rec.mid_dec = lhs.re.mid_decimal();
        rec.rad_dec = lhs.re.rad_decimal();
        rec.verdict = VerdictKind::undecided;
        auto check = [&](const ComplexBall& cand) {
            ComplexBall diff = lhs - cand;
            bool contains = diff.re.contains_zero() && diff.im.contains_zero();
            bool small = diff.re.rad_ratio() < mpq_class(1, 10000000000L) &&
                         diff.im.rad_ratio() < mpq_class(1, 10000000000L);
            if (!contains) return VerdictKind::refuted;
            return small ? VerdictKind::confirmed : VerdictKind::undecided;
        };
        if (!ambiguous_sign) {
            rec.verdict = check(rhs);
        } else {
            VerdictKind plus = check(rhs);
            VerdictKind minus = check(-rhs);
            if (plus == VerdictKind::confirmed && minus == VerdictKind::refuted) {
                rec.verdict = VerdictKind::confirmed;
                rec.observed_sign = +1;
            } else if (minus == VerdictKind::confirmed && plus == VerdictKind::refuted) {
                rec.verdict = VerdictKind::confirmed;
                rec.observed_sign = -1;
            } else if (plus == VerdictKind::refuted && minus == VerdictKind::refuted) {
                rec.verdict = VerdictKind::refuted;
            }
        }
        return rec;
    }
};

}  // namespace

std::vector<VerificationRecord> verify_products(long p, long a, std::optional<long> b,
                                                Prec prec) {
    if (!is_probable_prime(p) || p < 3) throw param_error("verify_products: p must be an odd prime");
    if (mod_reduce(a, p) == 0) throw param_error("verify_products: p divides a");
    std::vector<VerificationRecord> out;
    long n = (p - 1) / 2;
    ProductChecker pc(p, prec);
    auto inv = quadfield::invariants_for(p);
    RealBall rp = RealBall::sqrt_int(mpz_class(p), prec);
    ComplexBall one = ComplexBall::one(prec);

    auto real_cb = [&](const RealBall& r) { return ComplexBall::from_real(r); };

    if (p % 4 == 1) {
        long h = *inv.h_plus;
        const auto& eps = *inv.eps;
        // (2.4) plus-product vs +-eps^((a/p) h ((2/p)-1)/2)
        {
            std::vector<ComplexBall> fs;
            for (long j = 1; j <= n; ++j)
                for (long k = j + 1; k <= n; ++k)
                    fs.push_back(pc.zp(a * j * j) + pc.zp(a * k * k));
            ComplexBall lhs = balanced_product(std::move(fs), prec);
            long e = jacobi(a, p) * h * (jacobi(2, p) - 1) / 2;
            RealBall rhs = quadfield::unit_embed(quadfield::unit_power_signed(eps, p, e), p, prec);
            out.push_back(pc.record("2.4", a, std::nullopt, lhs, real_cb(rhs), true));
        }
        // (2.5) squared difference product
        {
            std::vector<ComplexBall> fs;
            for (long j = 1; j <= n; ++j)
                for (long k = j + 1; k <= n; ++k) {
                    ComplexBall d = pc.zp(a * j * j) - pc.zp(a * k * k);
                    fs.push_back(d * d);
                }
            ComplexBall lhs = balanced_product(std::move(fs), prec);
            long e = jacobi(a, p) * h;
            RealBall rhs =
                quadfield::unit_embed(quadfield::unit_power_signed(eps, p, e), p, prec);
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>((p - 5) / 4));
            rhs = rhs * RealBall::from_int(pw, prec) * rp;
            if (((p - 1) / 4) % 2 == 1) rhs = -rhs;
            out.push_back(pc.record("2.5", a, std::nullopt, lhs, real_cb(rhs), false));
        }
    } else {
        long h = *inv.h_minus;
        // (2.6) plus-product = 1
        {
            std::vector<ComplexBall> fs;
            for (long j = 1; j <= n; ++j)
                for (long k = j + 1; k <= n; ++k)
                    fs.push_back(pc.zp(a * j * j) + pc.zp(a * k * k));
            ComplexBall lhs = balanced_product(std::move(fs), prec);
            out.push_back(pc.record("2.6", a, std::nullopt, lhs, one, false));
        }
        // (2.7) difference product
        {
            std::vector<ComplexBall> fs;
            for (long j = 1; j <= n; ++j)
                for (long k = j + 1; k <= n; ++k)
                    fs.push_back(pc.zp(a * j * j) - pc.zp(a * k * k));
            ComplexBall lhs = balanced_product(std::move(fs), prec);
            ComplexBall rhs = one;
            if (p % 8 == 3) {
                mpz_class pw;
                mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                              static_cast<unsigned long>((p - 3) / 8));
                RealBall v = RealBall::from_int(pw, prec);
                if (((p - 3) / 8) % 2 == 1) v = -v;
                rhs = real_cb(v);
            } else {
                int sgn = ((p + 1) / 8 + (h - 1) / 2) % 2 == 0 ? 1 : -1;
                sgn *= jacobi(a, p);
                mpz_class pw;
                mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                              static_cast<unsigned long>((p - 7) / 8));
                RealBall mag = RealBall::from_int(pw * sgn, prec) * rp;
                rhs = ComplexBall{RealBall::zero(prec), mag};
            }
            out.push_back(pc.record("2.7", a, std::nullopt, lhs, rhs, false));
        }
        // (2.8) 1 - zeta^{a k^2} product; the class-number sign law needs
        // p > 3 (the extra units of Q(sqrt(-3)) break it at p = 3)
        if (p > 3) {
            std::vector<ComplexBall> fs;
            for (long k = 1; k <= n; ++k) fs.push_back(one - pc.zp(a * k * k));
            ComplexBall lhs = balanced_product(std::move(fs), prec);
            int sgn = ((h + 1) / 2) % 2 == 0 ? 1 : -1;
            sgn *= jacobi(a, p);
            ComplexBall rhs{RealBall::zero(prec),
                            sgn > 0 ? rp : -rp};
            out.push_back(pc.record("2.8", a, std::nullopt, lhs, rhs, false));
        }
    }

    // (2.9) needs (-ab/p) = -1 and p > 3 (it rests on the (2.8) sign law)
    if (p > 3) {
        long bb;
        if (b) {
            bb = *b;
            if (jacobi(mod_reduce(-a * bb, p), p) != -1)
                throw param_error("verify_products: (2.9) needs (-ab/p) = -1");
        } else {
            bb = 1;
            while (jacobi(mod_reduce(-a * bb, p), p) != -1) ++bb;
        }
        std::vector<ComplexBall> fs;
        for (long j = 1; j <= n; ++j)
            for (long k = 1; k <= n; ++k)
                fs.push_back(one - pc.zp(a * j * j + bb * k * k));
        ComplexBall lhs = balanced_product(std::move(fs), prec);
        ComplexBall rhs = one;
        mpz_class pw;
        if (p % 4 == 1) {
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>((p - 1) / 4));
            rhs = real_cb(RealBall::from_int(pw, prec));
        } else {
            // p^((p-1)/4) = p^((p-3)/4) sqrt(p) here
            long h = *inv.h_minus;
            int sgn = ((h - 1) / 2) % 2 == 0 ? 1 : -1;
            sgn *= jacobi(a, p);
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>((p - 3) / 4));
            RealBall mag = RealBall::from_int(pw * sgn, prec) * rp;
            rhs = ComplexBall{RealBall::zero(prec), mag};
        }
        out.push_back(pc.record("2.9", a, bb, lhs, rhs, false));
    }

    // (3.1): integer congruence plus the ball product; stated for p > 3
    if (p > 3) {
        long s = 0;
        for (long k = 0; k <= n; ++k) s = (s + k * k) % p;
        std::vector<ComplexBall> fs;
        for (long k = 0; k <= n; ++k) fs.push_back(pc.zp(k * k));
        ComplexBall lhs = balanced_product(std::move(fs), prec);
        VerificationRecord rec = pc.record("3.1", a, std::nullopt, lhs, one, false);
        if (s != 0) {
            rec.verdict = VerdictKind::refuted;
            rec.note = "sum of squares not divisible by p";
        }
        out.push_back(rec);
    }

    // (4.1) Vandermonde square over the full range, n here is the modulus p
    {
        std::vector<ComplexBall> fs;
        for (long j = 1; j <= p - 1; ++j)
            for (long k = j + 1; k <= p - 1; ++k) {
                ComplexBall d = pc.zp(a * k) - pc.zp(a * j);
                fs.push_back(d * d);
            }
        ComplexBall lhs = balanced_product(std::move(fs), prec);
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(p - 2));
        RealBall v = RealBall::from_int(pw, prec);
        if (((p - 1) / 2) % 2 == 1) v = -v;
        out.push_back(pc.record("4.1", a, std::nullopt, lhs, real_cb(v), false));
    }

    // (4.2) full cyclotomic product = p
    {
        std::vector<ComplexBall> fs;
        for (long r = 1; r <= p - 1; ++r) fs.push_back(one - pc.zp(a * r));
        ComplexBall lhs = balanced_product(std::move(fs), prec);
        out.push_back(
            pc.record("4.2", a, std::nullopt, lhs, real_cb(RealBall::from_long(p, prec)), false));
    }

    // Gauss sum: sum_x zeta^{a x^2} = (a/p) sqrt(p) or (a/p) i sqrt(p)
    {
        ComplexBall lhs = ComplexBall::zero(prec);
        for (long x = 0; x < p; ++x) lhs = lhs + pc.zp(a * x * x);
        int sgn = jacobi(a, p);
        ComplexBall rhs = p % 4 == 1
                              ? real_cb(sgn > 0 ? rp : -rp)
                              : ComplexBall{RealBall::zero(prec), sgn > 0 ? rp : -rp};
        out.push_back(pc.record("gauss", a, std::nullopt, lhs, rhs, false));
    }
    return out;
}

OeisReport compare_oeis(const std::vector<SequenceRecord>& seq,
                        const std::vector<std::pair<long, mpz_class>>& bfile,
                        const std::string& sequence_id) {
    if (seq.empty() || bfile.empty())
        throw param_error("compare_oeis: empty sequence or reference list");
    std::map<long, mpz_class> ref(bfile.begin(), bfile.end());
    OeisReport report;
    report.sequence_id = sequence_id;
    bool overlap = false;
    for (const auto& sr : seq) {
        OeisRow row;
        row.n = sr.n;
        row.computed = sr.value;
        row.relation = sr.n % 4 == 3 ? "negated" : "equal";
        auto it = ref.find(sr.n);
        if (it == ref.end()) {
            row.status = "missing";
            ++report.gaps;
        } else {
            overlap = true;
            row.reference = it->second;
            mpz_class expect = row.relation == "negated" ? mpz_class(-it->second) : it->second;
            if (sr.value == expect) {
                row.status = "holds";
            } else {
                row.status = "mismatch";
                ++report.mismatches;
            }
        }
        report.rows.push_back(std::move(row));
    }
    if (!overlap) throw param_error("compare_oeis: no overlapping indices");
    return report;
}

}  // namespace tandet::harness
