#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tandet/detcore.hpp"
#include "tandet/recognize.hpp"

#include "json.hpp"

namespace tandet::harness {

struct RunConfig {
    realball::Prec prec_start = 64;
    realball::Prec prec_cap = 4096;
    detcore::ExactBudget exact_budget;
    int jobs = 1;
    std::string cache_dir = ".tandet-cache";
    bool offline = false;
    std::string format = "table";
};

// One verification event: a family instance or a product identity, the
// computed enclosure (and exact value when an exact engine ran), the
// predicted form and the verdict.
struct VerificationRecord {
    std::string id;
    std::string family;
    std::map<std::string, long> params;
    std::string engine;
    realball::Prec prec_bits = 0;
    std::string mid_dec, rad_dec;
    bool exact_present = false;
    std::string exact_repr;
    std::string predicted;
    recognize::VerdictKind verdict = recognize::VerdictKind::undecided;
    int observed_sign = 0;
    std::optional<mpq_class> recognized;
    std::optional<mpz_class> quotient;
    std::string certificate;
    std::string note;
    long runtime_ms = 0;
};

// One conjecture-scan row: the determinant, the claimed divisor and the
// certified integer quotient when certification succeeded.
struct ScanRow {
    std::string id;
    std::string conjecture;
    std::string family;
    std::map<std::string, long> params;
    std::string engine;
    realball::Prec prec_bits = 0;
    std::string mid_dec, rad_dec;
    std::string divisor_repr;
    std::optional<mpz_class> quotient;
    std::string verdict;  // "Divisible", "Undecided", "Refuted"
    std::string note;
    long runtime_ms = 0;
};

struct SequenceRecord {
    long n = 0;
    mpz_class value;
    bool certified = false;
    std::string source;  // "exact" or "ball"
    realball::Prec prec_bits = 0;
    long runtime_ms = 0;
};

struct OeisRow {
    long n = 0;
    mpz_class computed;
    std::optional<mpz_class> reference;
    std::string relation;  // "equal" or "negated"
    std::string status;    // "holds", "mismatch", "missing"
};

struct OeisReport {
    std::string sequence_id;
    std::vector<OeisRow> rows;
    long mismatches = 0;
    long gaps = 0;
};

nlohmann::ordered_json to_json(const VerificationRecord& r);
nlohmann::ordered_json to_json(const ScanRow& r);
nlohmann::ordered_json to_json(const SequenceRecord& r);
nlohmann::ordered_json to_json(const OeisReport& r);

}  // namespace tandet::harness
