#pragma once

#include <optional>

#include <gmpxx.h>

#include "tandet/ball.hpp"
#include "tandet/errors.hpp"

namespace tandet::quadfield {

// (u + v sqrt(p)) / 2 with u^2 - p v^2 = +-4 for units.
struct UnitPair {
    mpz_class u, v;
    bool operator==(const UnitPair& o) const { return u == o.u && v == o.v; }
};

struct QuadInvariants {
    long p = 0;
    std::optional<long> h_minus;     // p = 3 (mod 4)
    std::optional<long> h_plus;      // p = 1 (mod 4)
    std::optional<UnitPair> eps;     // p = 1 (mod 4)
};

// h(-p) by the Dirichlet character sum (1/(2-(2/p))) sum_{k<=(p-1)/2} (k/p);
// p = 3 is tabulated since the normalization assumes p > 3.
long class_number_imag(long p);

// Independent oracle: count reduced primitive forms of discriminant -p.
long class_number_imag_oracle(long p);

// Minimal (u, v) with u, v >= 1 and u^2 - p v^2 = +-4, via the continued
// fraction of sqrt(p) (plus the odd half-unit search for p = 5 mod 8).
UnitPair fundamental_unit(long p);

UnitPair unit_one();
UnitPair unit_mul(const UnitPair& a, const UnitPair& b, long p);
UnitPair unit_inverse(const UnitPair& a, long p);
UnitPair unit_power(const UnitPair& pair, long p, unsigned long e);
UnitPair unit_power_signed(const UnitPair& pair, long p, long e);
int unit_norm(const UnitPair& a, long p);  // (u^2 - p v^2)/4, must be +-1
realball::RealBall unit_embed(const UnitPair& a, long p, realball::Prec prec);

// h(p) from the certified sine-product regulator quotient.
long class_number_real(long p, realball::Prec prec);

// sign of ((p-1)/2)! mod p for primes p = 3 (mod 4), p > 3.
int mordell_sign(long p);

QuadInvariants invariants_for(long p, realball::Prec prec = 192);

}  // namespace tandet::quadfield
