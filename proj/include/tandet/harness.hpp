#pragma once

#include <functional>
#include <utility>

#include "tandet/records.hpp"

namespace tandet::harness {

using detcore::MatrixSpec;
using detcore::ResidueMatrix;
using realball::Prec;
using realball::RealBall;

struct Range {
    long lo = 0, hi = 0;
};

// Determinant with the precision ladder plus optional exact engines.
struct DetOutcome {
    RealBall enclosure{64};
    Prec prec = 0;
    std::optional<detcore::CycloElement> exact;
    std::string engine;
    bool undecided = false;
};

DetOutcome compute_det(const MatrixSpec& spec, const RunConfig& cfg, bool want_exact);

// Representative coefficients covering the four ((a/p),(b/p)) symbol classes.
std::vector<long> coefficient_reps(long p);
long least_nonresidue(long p);

// Theorem suites. id is one of "1.1", "1.2", "1.3", "1.4".
std::vector<VerificationRecord> verify_theorem(const std::string& id, Range range,
                                               const RunConfig& cfg);

// Raw p = 3 records for the excluded-anomaly report of Theorem 1.1.
std::vector<VerificationRecord> theorem11_p3_anomaly(const RunConfig& cfg);

// Conjecture scans. id in {"5.1","5.2i","5.2ii","5.3","5.3diff","5.4","5.5","5.6"}.
std::vector<ScanRow> scan_conjecture(const std::string& id, Range range, const RunConfig& cfg);

std::vector<SequenceRecord> sequence_s(long n_max, const RunConfig& cfg);

// (a_p^+, a_p^-) for p = 3 (mod 4), integrality certified.
std::pair<mpz_class, mpz_class> compute_a_pm(long p, const RunConfig& cfg);

// Root-of-unity product identities and the Gauss sum, checked as complex
// ball products against their closed forms.
std::vector<VerificationRecord> verify_products(long p, long a, std::optional<long> b,
                                                Prec prec);

OeisReport compare_oeis(const std::vector<SequenceRecord>& seq,
                        const std::vector<std::pair<long, mpz_class>>& bfile,
                        const std::string& sequence_id);

// Number of determinant evaluations performed since process start; the
// result store uses it to demonstrate warm-cache replay.
long det_eval_count();

}  // namespace tandet::harness
