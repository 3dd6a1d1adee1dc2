#include "tandet/quadfield.hpp"

#include <cmath>
#include <numeric>

#include "tandet/ntheory.hpp"

namespace tandet::quadfield {

using ntheory::is_probable_prime;
using ntheory::jacobi;
using realball::AngleFraction;
using realball::Prec;
using realball::RealBall;
using realball::sin_pi;

long class_number_imag(long p) {
    if (!is_probable_prime(p) || p % 4 != 3)
        throw domain_error("class_number_imag: p must be a prime = 3 (mod 4)");
    if (p == 3) return 1;
    long sum = 0;
    for (long k = 1; k <= (p - 1) / 2; ++k) sum += jacobi(k, p);
    long denom = 2 - jacobi(2, p);
    if (sum % denom != 0 || sum <= 0)
        throw domain_error("class_number_imag: character sum not divisible");
    return sum / denom;
}

long class_number_imag_oracle(long p) {
    if (!is_probable_prime(p) || p % 4 != 3)
        throw domain_error("class_number_imag_oracle: p must be a prime = 3 (mod 4)");
    // reduced primitive forms ax^2+bxy+cy^2, b^2-4ac = -p, |b| <= a <= c,
    // with b >= 0 when |b| = a or a = c
    long count = 0;
    for (long a = 1; a * a * 3 <= p; ++a) {
        for (long b = -a; b <= a; ++b) {
            long num = b * b + p;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if ((b < 0) && (b == -a || a == c)) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            ++count;
        }
    }
    return count;
}

namespace {

// continued fraction of sqrt(p): least solution of x^2 - p y^2 = +-1
void pell_least_solution(long p, mpz_class& x, mpz_class& y) {
    long s = static_cast<long>(std::sqrt(static_cast<double>(p)));
    while (s * s > p) --s;
    while ((s + 1) * (s + 1) <= p) ++s;
    long P = 0, Q = 1;
    long a = s;
    mpz_class h0 = 1, h1 = s, k0 = 0, k1 = 1;  // convergents after a0 = s
    while (true) {
        P = a * Q - P;
        Q = (p - P * P) / Q;
        a = (P + s) / Q;
        mpz_class h2 = a * h1 + h0;
        mpz_class k2 = a * k1 + k0;
        if (Q == 1) {
            // period closes after this partial quotient; the previous
            // convergent gives the fundamental +-1 solution
            x = h1;
            y = k1;
            return;
        }
        h0 = h1; h1 = h2;
        k0 = k1; k1 = k2;
    }
}

}  // namespace

UnitPair fundamental_unit(long p) {
    if (!is_probable_prime(p) || p % 4 != 1)
        throw domain_error("fundamental_unit: p must be a prime = 1 (mod 4)");
    mpz_class x, y;
    pell_least_solution(p, x, y);
    UnitPair full{2 * x, 2 * y};
    if (p % 8 == 5) {
        // a half-integer unit (u, v odd) can only exist for p = 5 (mod 8);
        // if it does, its cube is the +-1 solution, so v is far below 2y
        for (mpz_class v = 1; v <= y; v += 2) {
            mpz_class pv2 = v * v * p;
            for (int s : {-4, 4}) {
                mpz_class u2 = pv2 + s;
                if (u2 <= 0) continue;
                if (mpz_perfect_square_p(u2.get_mpz_t())) {
                    mpz_class u;
                    mpz_sqrt(u.get_mpz_t(), u2.get_mpz_t());
                    return UnitPair{u, v};
                }
            }
        }
    }
    return full;
}

UnitPair unit_one() { return UnitPair{2, 0}; }

UnitPair unit_mul(const UnitPair& a, const UnitPair& b, long p) {
    mpz_class u = a.u * b.u + p * a.v * b.v;
    mpz_class v = a.u * b.v + a.v * b.u;
    if (mpz_odd_p(u.get_mpz_t()) || mpz_odd_p(v.get_mpz_t()))
        throw domain_error("unit_mul: product not integral");
    return UnitPair{u / 2, v / 2};
}

int unit_norm(const UnitPair& a, long p) {
    mpz_class n = a.u * a.u - p * a.v * a.v;
    if (n == 4) return 1;
    if (n == -4) return -1;
    throw domain_error("unit_norm: pair is not a unit of norm +-1");
}

UnitPair unit_inverse(const UnitPair& a, long p) {
    int n = unit_norm(a, p);
    if (n == 1) return UnitPair{a.u, -a.v};
    return UnitPair{-a.u, a.v};
}

UnitPair unit_power(const UnitPair& pair, long p, unsigned long e) {
    UnitPair acc = unit_one();
    UnitPair base = pair;
    while (e > 0) {
        if (e & 1) acc = unit_mul(acc, base, p);
        base = unit_mul(base, base, p);
        e >>= 1;
    }
    return acc;
}

UnitPair unit_power_signed(const UnitPair& pair, long p, long e) {
    if (e >= 0) return unit_power(pair, p, static_cast<unsigned long>(e));
    return unit_power(unit_inverse(pair, p), p, static_cast<unsigned long>(-e));
}

RealBall unit_embed(const UnitPair& a, long p, Prec prec) {
    RealBall root = RealBall::sqrt_int(mpz_class(p), prec);
    RealBall v = RealBall::from_int(a.u, prec) + RealBall::from_int(a.v, prec) * root;
    return v.mul_2exp(-1);
}

long class_number_real(long p, Prec prec) {
    if (!is_probable_prime(p) || p % 4 != 1)
        throw domain_error("class_number_real: p must be a prime = 1 (mod 4)");
    UnitPair eps = fundamental_unit(p);
    // R = prod_{(j/p)=-1} sin(pi j/p) / prod_{(j/p)=1} sin(pi j/p) over the
    // half range equals eps^h exactly
    RealBall num = RealBall::one(prec), den = RealBall::one(prec);
    for (long j = 1; j <= (p - 1) / 2; ++j) {
        RealBall s = sin_pi(AngleFraction{j, p}, prec);
        if (jacobi(j, p) == 1)
            den *= s;
        else
            num *= s;
    }
    RealBall reg = num / den;
    double h_guess = std::log(reg.mid_double()) /
                     std::log(unit_embed(eps, p, 64).mid_double());
    long h = std::lround(h_guess);
    if (h < 1) throw undecided_error("class_number_real: regulator estimate below 1");
    // certify: R must meet eps^h and miss eps^(h-1), eps^(h+1)
    RealBall eh = unit_embed(unit_power(eps, p, h), p, prec);
    RealBall lo = unit_embed(unit_power(eps, p, h - 1), p, prec);
    RealBall hi = unit_embed(unit_power(eps, p, h + 1), p, prec);
    if (reg.disjoint(eh) || !reg.disjoint(lo) || !reg.disjoint(hi))
        throw undecided_error("class_number_real: enclosure too wide to pin h");
    return h;
}

int mordell_sign(long p) {
    if (!is_probable_prime(p) || p % 4 != 3 || p <= 3)
        throw domain_error("mordell_sign: p must be a prime = 3 (mod 4), p > 3");
    unsigned __int128 f = 1;
    for (long k = 2; k <= (p - 1) / 2; ++k) f = f * k % p;
    long r = static_cast<long>(f);
    if (r == 1) return 1;
    if (r == p - 1) return -1;
    throw domain_error("mordell_sign: factorial not +-1 mod p");
}

QuadInvariants invariants_for(long p, Prec prec) {
    QuadInvariants inv;
    inv.p = p;
    if (p % 4 == 3) {
        inv.h_minus = class_number_imag(p);
    } else if (p % 4 == 1) {
        inv.eps = fundamental_unit(p);
        inv.h_plus = class_number_real(p, prec);
    }
    return inv;
}

}  // namespace tandet::quadfield
