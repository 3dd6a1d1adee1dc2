#pragma once

#include <map>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "tandet/errors.hpp"

namespace tandet::realball {

using Prec = mpfr_prec_t;

// Angle num/den in units of pi: the value is f(pi * num / den).
struct AngleFraction {
    long num;
    long den;  // > 0
};

// Midpoint-radius interval: the represented real number lies in
// [mid - rad, mid + rad]. Every operation rounds outward, so containment of
// the true value is preserved through arbitrary expression trees. rad == 0
// marks an exactly representable value.
class RealBall {
  public:
    RealBall();
    explicit RealBall(Prec prec);
    RealBall(const RealBall& o);
    RealBall(RealBall&& o) noexcept;
    RealBall& operator=(const RealBall& o);
    RealBall& operator=(RealBall&& o) noexcept;
    ~RealBall();

    static RealBall zero(Prec prec);
    static RealBall one(Prec prec);
    static RealBall from_long(long v, Prec prec);
    static RealBall from_int(const mpz_class& v, Prec prec);
    static RealBall from_ratio(const mpq_class& q, Prec prec);
    static RealBall pi(Prec prec);
    static RealBall sqrt_int(const mpz_class& n, Prec prec);

    Prec prec() const { return mpfr_get_prec(mid_); }
    bool is_exact() const { return mpfr_zero_p(rad_); }
    bool is_exact_zero() const { return mpfr_zero_p(mid_) && is_exact(); }
    bool contains_zero() const;
    bool is_positive() const;  // whole enclosure > 0
    bool is_negative() const;

    // Exact rational decisions (no rounding involved).
    bool contains(const mpq_class& v) const;
    bool contains_ball(const RealBall& inner) const;
    bool disjoint(const RealBall& other) const;

    mpq_class mid_ratio() const;
    mpq_class rad_ratio() const;  // upper bound on the radius
    double mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    std::string mid_decimal(size_t digits = 32) const;
    std::string rad_decimal() const;

    RealBall round_to(Prec prec) const;

    friend RealBall operator-(const RealBall& a);
    friend RealBall operator+(const RealBall& a, const RealBall& b);
    friend RealBall operator-(const RealBall& a, const RealBall& b);
    friend RealBall operator*(const RealBall& a, const RealBall& b);
    friend RealBall operator/(const RealBall& a, const RealBall& b);

    RealBall& operator+=(const RealBall& b) { *this = *this + b; return *this; }
    RealBall& operator-=(const RealBall& b) { *this = *this - b; return *this; }
    RealBall& operator*=(const RealBall& b) { *this = *this * b; return *this; }
    RealBall& operator/=(const RealBall& b) { *this = *this / b; return *this; }

    RealBall abs() const;
    RealBall mul_ratio(const mpq_class& q) const;
    RealBall mul_2exp(long e) const;
    RealBall pow_ui(unsigned long e) const;
    RealBall inv() const;
    RealBall sqrt() const;  // enclosure must be strictly positive

    friend RealBall sin_pi(const AngleFraction& f, Prec prec);
    friend RealBall cos_pi(const AngleFraction& f, Prec prec);

  private:
    mpfr_t mid_;
    mpfr_t rad_;
    void bump(int ternary);  // absorb the rounding error of the last mid op
    static RealBall sin_cos_kernel(bool want_sin, const mpq_class& q, Prec prec);
};

RealBall sin_pi(const AngleFraction& f, Prec prec);
RealBall cos_pi(const AngleFraction& f, Prec prec);
RealBall tan_pi(const AngleFraction& f, Prec prec);  // den must be odd
RealBall cot_pi(const AngleFraction& f, Prec prec);  // num % den must be nonzero

struct ComplexBall {
    RealBall re, im;

    ComplexBall() = default;
    ComplexBall(RealBall r, RealBall i) : re(std::move(r)), im(std::move(i)) {}
    static ComplexBall zero(Prec prec) { return {RealBall::zero(prec), RealBall::zero(prec)}; }
    static ComplexBall one(Prec prec) { return {RealBall::one(prec), RealBall::zero(prec)}; }
    static ComplexBall from_real(RealBall r) {
        Prec p = r.prec();
        return {std::move(r), RealBall::zero(p)};
    }

    ComplexBall conj() const { return {re, -im}; }
    RealBall abs_sq() const { return re * re + im * im; }
    bool contains(const mpq_class& x, const mpq_class& y) const {
        return re.contains(x) && im.contains(y);
    }

    friend ComplexBall operator-(const ComplexBall& a) { return {-a.re, -a.im}; }
    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
        RealBall d = b.abs_sq();
        ComplexBall n = a * b.conj();
        return {n.re / d, n.im / d};
    }
    ComplexBall& operator*=(const ComplexBall& b) { *this = *this * b; return *this; }
};

// e^{2 pi i k / m}
ComplexBall root_of_unity(long k, long m, Prec prec);

enum class TrigFunc { tan, cot, sin, cos };

long trig_period(TrigFunc f);  // 1 for tan/cot, 2 for sin/cos

// Per-(func, den, prec) value table: a den-modulus matrix has at most
// period*den distinct entry values, computed once and reused.
class TrigCache {
  public:
    TrigCache(TrigFunc func, long den, Prec prec);
    const RealBall& at(long residue);  // residue taken mod period*den
    Prec prec() const { return prec_; }

  private:
    TrigFunc func_;
    long den_;
    Prec prec_;
    std::map<long, RealBall> slots_;
};

}  // namespace tandet::realball
