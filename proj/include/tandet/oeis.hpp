#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tandet::oeis {

// transport/cache failure (maps to exit code 4 at the CLI)
struct fetch_error : std::runtime_error {
    explicit fetch_error(const std::string& msg) : std::runtime_error(msg) {}
};

bool valid_sequence_id(const std::string& id);

// b-file format: "index value" per line, '#' comments and blanks ignored;
// malformed lines are reported with their line number.
std::vector<std::pair<long, mpz_class>> parse_bfile(const std::string& text);

// Fetch the b-file for an A-number. Reads the on-disk cache first, then (if
// offline) the shipped fixture, then the network; a successful download is
// cached. Cold cache + offline (or a failed download) without a fixture
// raises fetch_error.
std::vector<std::pair<long, mpz_class>> fetch(const std::string& seq_id,
                                              const std::string& cache_dir, bool offline);

// the pinned A277445 fixture that ships with the tool
const std::string& fixture_a277445();

}  // namespace tandet::oeis
