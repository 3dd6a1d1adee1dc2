#include "doctest.h"

#include <numeric>
#include <random>

#include "tandet/ntheory.hpp"

using namespace tandet;
using namespace tandet::ntheory;

namespace {

// oracle: quadratic residue test by exhaustive squaring
int brute_legendre(long a, long p) {
    long r = mod_reduce(a, p);
    if (r == 0) return 0;
    for (long x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

// oracle: smallest square root by exhaustive search
std::optional<long> brute_sqrt_mod(long a, long p) {
    long r = mod_reduce(a, p);
    for (long x = 0; x <= p / 2; ++x)
        if (x * x % p == r) return x;
    return std::nullopt;
}

// oracle: parity by counting inversions
int brute_perm_sign(const std::vector<long>& perm) {
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

std::vector<long> odd_primes_upto(long n) {
    std::vector<long> out;
    for (long p = 3; p <= n; p += 2)
        if (is_probable_prime(p)) out.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("jacobi examples and oracle agreement") {
    CHECK(jacobi(1, 9) == 1);
    CHECK(jacobi(2, 7) == 1);   // 3^2 = 2 (mod 7)
    CHECK(jacobi(3, 7) == -1);  // squares mod 7 are {1,2,4}
    for (long p : odd_primes_upto(61))
        for (long a = 0; a < p; ++a) {
            CHECK(jacobi(a, p) == brute_legendre(a, p));
            mpz_class za(a), zp(p);
            CHECK(jacobi(za, zp).value == mpz_jacobi(za.get_mpz_t(), zp.get_mpz_t()));
        }
    CHECK_THROWS_AS(jacobi(mpz_class(3), mpz_class(8)), domain_error);
    CHECK_THROWS_AS(jacobi(mpz_class(3), mpz_class(-5)), domain_error);
}

TEST_CASE("jacobi multiplicativity on random triples") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 400; ++t) {
        long n = 2 * (rng() % 250) + 1;
        if (n < 3) n = 3;
        long a = static_cast<long>(rng() % 1000) - 500;
        long b = static_cast<long>(rng() % 1000) - 500;
        CHECK(jacobi(mpz_class(a) * b, mpz_class(n)).value == jacobi(a, n) * jacobi(b, n));
    }
}

TEST_CASE("sqrt_mod examples and oracle") {
    CHECK(sqrt_mod(-1, 5) == 2);
    CHECK(sqrt_mod(4, 7) == 2);
    CHECK_FALSE(sqrt_mod(3, 5).has_value());
    for (long p : odd_primes_upto(61))
        for (long a = 0; a < p; ++a) {
            auto got = sqrt_mod(a, p);
            auto want = brute_sqrt_mod(a, p);
            CHECK(got == want);
            if (got) CHECK((*got) * (*got) % p == mod_reduce(a, p));
        }
    CHECK_THROWS_AS(sqrt_mod(1, 15), domain_error);
}

TEST_CASE("zolotarev sign examples") {
    CHECK(zolotarev_sign(1, 9).sign == 1);
    CHECK(zolotarev_sign(2, 5).sign == -1);  // 4-cycle (1 2 4 3)
    CHECK(zolotarev_sign(2, 7).sign == 1);
    CHECK_THROWS_AS(zolotarev_sign(3, 9), domain_error);
}

TEST_CASE("zolotarev sign equals the jacobi symbol for odd n <= 99") {
    for (long n = 3; n <= 99; n += 2)
        for (long a = 1; a < n; ++a) {
            if (std::gcd(a, n) != 1) continue;
            PermSign ps = zolotarev_sign(a, n);
            CHECK(ps.sign == jacobi(a, n));
            CHECK(ps.sign == brute_perm_sign(ps.witness));
        }
}

TEST_CASE("pan sign examples and the half-range law") {
    CHECK(pan_sign(1, 7).sign == 1);
    CHECK(pan_sign(3, 5).sign == -1);
    CHECK(pan_sign(2, 7).sign == 1);
    for (long n = 3; n <= 99; n += 2)
        for (long c = 1; c < n; ++c) {
            if (std::gcd(c, n) != 1) continue;
            PermSign ps = pan_sign(c, n);
            int expect = (n + 1) / 2 % 2 == 0 ? 1 : jacobi(c, n);
            CHECK(ps.sign == expect);
            CHECK(ps.sign == brute_perm_sign(ps.witness));
        }
}

TEST_CASE("quadratic character sums: examples and the closed form") {
    CHECK(quad_char_sum(1, 0, 0, 5) == 4);
    CHECK(quad_char_sum(1, 0, 1, 5) == -1);
    CHECK(quad_char_sum(1, 1, 0, 3) == -1);
    std::mt19937_64 rng(11);
    for (long p : odd_primes_upto(31)) {
        for (int t = 0; t < 40; ++t) {
            long a0 = 1 + static_cast<long>(rng() % (p - 1));
            long a1 = static_cast<long>(rng() % p);
            long a2 = static_cast<long>(rng() % p);
            long disc = mod_reduce(a1 * a1 - 4 * a0 * a2, p);
            long expect = disc == 0 ? (p - 1) * jacobi(a0, p) : -jacobi(a0, p);
            CHECK(quad_char_sum(a0, a1, a2, p) == expect);
        }
    }
    CHECK_THROWS_AS(quad_char_sum(5, 1, 1, 5), domain_error);
}

TEST_CASE("count_quad_reps: examples and brute force for p <= 31") {
    CHECK(count_quad_reps(5, 1, 2, 0) == 0);
    CHECK(count_quad_reps(5, 1, 2, 1) == 1);
    CHECK(count_quad_reps(7, 1, 1, 3) == 2);
    for (long p : odd_primes_upto(31))
        for (long a = 1; a < p; ++a)
            for (long b = 1; b < p; ++b) {
                if (jacobi(mod_reduce(-a * b, p), p) != -1) continue;
                for (long m = 0; m < p; ++m) {
                    long brute = 0;
                    for (long j = 1; j <= (p - 1) / 2; ++j)
                        for (long k = 1; k <= (p - 1) / 2; ++k)
                            if (mod_reduce(a * j * j + b * k * k, p) == m) ++brute;
                    CHECK(count_quad_reps(p, a, b, m) == brute);
                }
                // one (a, b) pair per prime keeps the sweep quick
                b = p;
                a = p;
            }
    CHECK_THROWS_AS(count_quad_reps(5, 1, 1, 1), domain_error);
}
