#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "tandet/errors.hpp"

namespace tandet::ntheory {

// Value of a Legendre/Jacobi symbol: -1, 0 or +1. 0 exactly when the
// argument shares a factor with the modulus.
struct SymbolValue {
    int value;
};

// Sign of a finite permutation together with the permutation itself so the
// parity can be re-checked independently.
struct PermSign {
    int sign;                       // +1 or -1
    std::vector<long> witness;      // witness[i] = image of the i-th point
};

bool is_probable_prime(long n);

long mod_reduce(long a, long m);   // representative in [0, m)
long mod_pow(long base, long exp, long m);
long mod_inverse(long a, long m);  // gcd(a,m)=1 required

// Jacobi symbol (a/n) for odd n >= 1, by the binary reciprocity iteration.
SymbolValue jacobi(const mpz_class& a, const mpz_class& n);
inline int jacobi(long a, long n) { return jacobi(mpz_class(a), mpz_class(n)).value; }

// Smaller square root of a modulo an odd prime p, when (a/p) = 1.
std::optional<long> sqrt_mod(long a, long p);

int permutation_sign(const std::vector<long>& perm);

// sign of j -> aj mod n on {0,...,n-1}; equals (a/n) for odd n.
PermSign zolotarev_sign(long a, long n);

// sign of pi_c on {1,...,(n-1)/2} where pi_c(j) = |cj mod n| folded into the
// half range; equals (c/n)^((n+1)/2).
PermSign pan_sign(long c, long n);

// sum_{x=0}^{p-1} ((a0 x^2 + a1 x + a2)/p) for odd prime p, p not dividing a0.
long quad_char_sum(long a0, long a1, long a2, long p);

// |{(j,k) : 1<=j,k<=(p-1)/2, a j^2 + b k^2 = m (mod p)}| for (-ab/p) = -1.
long count_quad_reps(long p, long a, long b, long m);

}  // namespace tandet::ntheory
