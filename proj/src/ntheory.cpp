#include "tandet/ntheory.hpp"

#include <numeric>

namespace tandet::ntheory {

bool is_probable_prime(long n) {
    if (n < 2) return false;
    mpz_class z(n);
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

long mod_reduce(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long mod_pow(long base, long exp, long m) {
    unsigned __int128 acc = 1;
    unsigned __int128 b = mod_reduce(base, m);
    while (exp > 0) {
        if (exp & 1) acc = acc * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<long>(acc);
}

long mod_inverse(long a, long m) {
    long g, x;
    // extended euclid on (a mod m, m)
    long r0 = mod_reduce(a, m), r1 = m, x0 = 1, x1 = 0;
    while (r1 != 0) {
        long q = r0 / r1;
        long r2 = r0 - q * r1;
        long x2 = x0 - q * x1;
        r0 = r1; r1 = r2; x0 = x1; x1 = x2;
    }
    g = r0; x = x0;
    if (g != 1) throw domain_error("mod_inverse: arguments not coprime");
    return mod_reduce(x, m);
}

SymbolValue jacobi(const mpz_class& a_in, const mpz_class& n_in) {
    if (n_in <= 0 || mpz_even_p(n_in.get_mpz_t()))
        throw domain_error("jacobi: modulus must be odd and positive");
    mpz_class a = a_in % n_in, n = n_in;
    if (a < 0) a += n;
    int s = 1;
    while (a != 0) {
        // pull out factors of two; (2/n) = (-1)^((n^2-1)/8)
        unsigned long twos = mpz_scan1(a.get_mpz_t(), 0);
        if (twos & 1) {
            unsigned long nm8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
            if (nm8 == 3 || nm8 == 5) s = -s;
        }
        a >>= twos;
        // reciprocity: both odd now
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3)
            s = -s;
        std::swap(a, n);
        a %= n;
    }
    if (n == 1) return SymbolValue{s};
    return SymbolValue{0};
}

std::optional<long> sqrt_mod(long a_in, long p) {
    if (p < 3 || !is_probable_prime(p) || p % 2 == 0)
        throw domain_error("sqrt_mod: p must be an odd prime");
    long a = mod_reduce(a_in, p);
    if (a == 0) return 0;
    if (jacobi(a, p) != 1) return std::nullopt;
    long r;
    if (p % 4 == 3) {
        r = mod_pow(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks
        long q = p - 1, s = 0;
        while (q % 2 == 0) { q /= 2; ++s; }
        long z = 2;
        while (jacobi(z, p) != -1) ++z;
        long m = s;
        long c = mod_pow(z, q, p);
        long t = mod_pow(a, q, p);
        r = mod_pow(a, (q + 1) / 2, p);
        while (t != 1) {
            long i = 0, t2 = t;
            while (t2 != 1) {
                t2 = static_cast<long>((unsigned __int128)t2 * t2 % p);
                ++i;
            }
            long b = c;
            for (long j = 0; j < m - i - 1; ++j)
                b = static_cast<long>((unsigned __int128)b * b % p);
            m = i;
            c = static_cast<long>((unsigned __int128)b * b % p);
            t = static_cast<long>((unsigned __int128)t * c % p);
            r = static_cast<long>((unsigned __int128)r * b % p);
        }
    }
    return std::min(r, p - r);
}

int permutation_sign(const std::vector<long>& perm) {
    // parity via cycle decomposition
    const size_t n = perm.size();
    std::vector<char> seen(n, 0);
    int sign = 1;
    for (size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        size_t len = 0, j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = static_cast<size_t>(perm[j]);
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

PermSign zolotarev_sign(long a, long n) {
    if (n <= 1 || n % 2 == 0) throw domain_error("zolotarev_sign: n must be odd > 1");
    if (std::gcd(mod_reduce(a, n), n) != 1) throw domain_error("zolotarev_sign: gcd(a,n) != 1");
    std::vector<long> perm(n);
    for (long j = 0; j < n; ++j) perm[j] = mod_reduce(a * j, n);
    return PermSign{permutation_sign(perm), std::move(perm)};
}

PermSign pan_sign(long c, long n) {
    if (n <= 1 || n % 2 == 0) throw domain_error("pan_sign: n must be odd > 1");
    if (std::gcd(mod_reduce(c, n), n) != 1) throw domain_error("pan_sign: gcd(c,n) != 1");
    long half = (n - 1) / 2;
    std::vector<long> perm(half);
    for (long j = 1; j <= half; ++j) {
        long r = mod_reduce(c * j, n);
        if (r > half) r = n - r;
        perm[j - 1] = r - 1;
    }
    return PermSign{permutation_sign(perm), std::move(perm)};
}

long quad_char_sum(long a0, long a1, long a2, long p) {
    if (p < 3 || !is_probable_prime(p)) throw domain_error("quad_char_sum: p must be an odd prime");
    if (mod_reduce(a0, p) == 0) throw domain_error("quad_char_sum: p divides leading coefficient");
    long sum = 0;
    for (long x = 0; x < p; ++x) {
        long v = mod_reduce(mod_reduce(a0 * x % p * x, p) + a1 * x + a2, p);
        sum += jacobi(v, p);
    }
    return sum;
}

long count_quad_reps(long p, long a, long b, long m) {
    if (p < 3 || !is_probable_prime(p)) throw domain_error("count_quad_reps: p must be an odd prime");
    if (mod_reduce(a, p) == 0 || mod_reduce(b, p) == 0)
        throw domain_error("count_quad_reps: p divides a coefficient");
    if (jacobi(mod_reduce(-a * b, p), p) != -1)
        throw domain_error("count_quad_reps: requires (-ab/p) = -1");
    long mm = mod_reduce(m, p);
    if (mm == 0) return 0;
    // (p-1)/4 - ((1-(-1/p))/4)(am/p), an integer in both residue classes of p mod 4
    mpq_class r(p - 1, 4);
    mpq_class corr(1 - jacobi(p - 1, p), 4);
    r -= corr * jacobi(mod_reduce(a * mm, p), p);
    r.canonicalize();
    if (r.get_den() != 1) throw domain_error("count_quad_reps: internal non-integer count");
    return r.get_num().get_si();
}

}  // namespace tandet::ntheory
