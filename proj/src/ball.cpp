#include "tandet/ball.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace tandet::realball {

namespace {

constexpr Prec kRadPrec = 32;
constexpr Prec kMinPrec = 8;

// |x| rounded away from zero into a low-precision bound.
void abs_up(mpfr_t out, const mpfr_t x) {
    mpfr_set(out, x, MPFR_RNDA);
    mpfr_abs(out, out, MPFR_RNDU);
}

// |x| rounded toward zero (a lower bound on the magnitude).
void abs_down(mpfr_t out, const mpfr_t x) {
    mpfr_set(out, x, MPFR_RNDZ);
    mpfr_abs(out, out, MPFR_RNDD);
}

struct ScopedMpfr {
    mpfr_t v;
    explicit ScopedMpfr(Prec p) { mpfr_init2(v, p); }
    ~ScopedMpfr() { mpfr_clear(v); }
    ScopedMpfr(const ScopedMpfr&) = delete;
    ScopedMpfr& operator=(const ScopedMpfr&) = delete;
};

}  // namespace

RealBall::RealBall() : RealBall(64) {}

RealBall::RealBall(Prec prec) {
    mpfr_init2(mid_, std::max(prec, kMinPrec));
    mpfr_set_zero(mid_, 1);
    mpfr_init2(rad_, kRadPrec);
    mpfr_set_zero(rad_, 1);
}

RealBall::RealBall(const RealBall& o) {
    mpfr_init2(mid_, mpfr_get_prec(o.mid_));
    mpfr_set(mid_, o.mid_, MPFR_RNDN);  // same precision: exact
    mpfr_init2(rad_, kRadPrec);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept {
    mpfr_init2(mid_, kMinPrec);
    mpfr_init2(rad_, kRadPrec);
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
}

RealBall& RealBall::operator=(const RealBall& o) {
    if (this != &o) {
        mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
    return *this;
}

RealBall::~RealBall() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

void RealBall::bump(int ternary) {
    if (ternary == 0) return;
    if (!mpfr_number_p(mid_))
        throw undecided_error("ball arithmetic overflow");
    if (mpfr_zero_p(mid_))
        throw undecided_error("ball arithmetic underflow to zero");
    // rounding error of an RNDN op is at most half an ulp; 2^(e-prec) covers it
    ScopedMpfr ulp(kRadPrec);
    mpfr_set_ui_2exp(ulp.v, 1, mpfr_get_exp(mid_) - mpfr_get_prec(mid_), MPFR_RNDU);
    mpfr_add(rad_, rad_, ulp.v, MPFR_RNDU);
}

RealBall RealBall::zero(Prec prec) { return RealBall(prec); }

RealBall RealBall::one(Prec prec) {
    RealBall r(prec);
    mpfr_set_ui(r.mid_, 1, MPFR_RNDN);
    return r;
}

RealBall RealBall::from_long(long v, Prec prec) {
    RealBall r(prec);
    int t = mpfr_set_si(r.mid_, v, MPFR_RNDN);
    r.bump(t);
    return r;
}

RealBall RealBall::from_int(const mpz_class& v, Prec prec) {
    RealBall r(prec);
    int t = mpfr_set_z(r.mid_, v.get_mpz_t(), MPFR_RNDN);
    r.bump(t);
    return r;
}

RealBall RealBall::from_ratio(const mpq_class& q, Prec prec) {
    RealBall r(prec);
    int t = mpfr_set_q(r.mid_, q.get_mpq_t(), MPFR_RNDN);
    r.bump(t);
    return r;
}

RealBall RealBall::pi(Prec prec) {
    RealBall r(prec);
    int t = mpfr_const_pi(r.mid_, MPFR_RNDN);
    r.bump(t);
    return r;
}

RealBall RealBall::sqrt_int(const mpz_class& n, Prec prec) {
    if (n < 0) throw domain_error("sqrt_int: negative argument");
    size_t nbits = mpz_sizeinbase(n.get_mpz_t(), 2);
    ScopedMpfr t(std::max<Prec>(prec, static_cast<Prec>(nbits) + 8));
    mpfr_set_z(t.v, n.get_mpz_t(), MPFR_RNDN);  // exact at this precision
    RealBall r(prec);
    int tern = mpfr_sqrt(r.mid_, t.v, MPFR_RNDN);
    r.bump(tern);
    return r;
}

bool RealBall::contains_zero() const {
    return mpfr_cmpabs(mid_, rad_) <= 0;
}

bool RealBall::is_positive() const {
    return mpfr_sgn(mid_) > 0 && !contains_zero();
}

bool RealBall::is_negative() const {
    return mpfr_sgn(mid_) < 0 && !contains_zero();
}

mpq_class RealBall::mid_ratio() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), mid_);
    return q;
}

mpq_class RealBall::rad_ratio() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), rad_);
    return q;
}

bool RealBall::contains(const mpq_class& v) const {
    mpq_class d = mid_ratio() - v;
    return ::abs(d) <= rad_ratio();
}

bool RealBall::contains_ball(const RealBall& inner) const {
    mpq_class d = mid_ratio() - inner.mid_ratio();
    return ::abs(d) + inner.rad_ratio() <= rad_ratio();
}

bool RealBall::disjoint(const RealBall& other) const {
    mpq_class d = mid_ratio() - other.mid_ratio();
    return ::abs(d) > rad_ratio() + other.rad_ratio();
}

std::string RealBall::mid_decimal(size_t digits) const {
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%zuRg", digits);
    char* s = nullptr;
    mpfr_asprintf(&s, fmt, mid_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string RealBall::rad_decimal() const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.3Re", rad_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

RealBall RealBall::round_to(Prec prec) const {
    RealBall r(prec);
    int t = mpfr_set(r.mid_, mid_, MPFR_RNDN);
    mpfr_set(r.rad_, rad_, MPFR_RNDU);
    r.bump(t);
    return r;
}

RealBall operator-(const RealBall& a) {
    RealBall r(a.prec());
    mpfr_neg(r.mid_, a.mid_, MPFR_RNDN);  // exact
    mpfr_set(r.rad_, a.rad_, MPFR_RNDU);
    return r;
}

RealBall operator+(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.prec(), b.prec()));
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    r.bump(t);
    return r;
}

RealBall operator-(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.prec(), b.prec()));
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    r.bump(t);
    return r;
}

RealBall operator*(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.prec(), b.prec()));
    // |a| rb + |b| ra + ra rb
    ScopedMpfr am(kRadPrec), bm(kRadPrec), t1(kRadPrec);
    abs_up(am.v, a.mid_);
    abs_up(bm.v, b.mid_);
    mpfr_mul(t1.v, am.v, b.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, t1.v, MPFR_RNDU);
    mpfr_mul(t1.v, bm.v, a.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, t1.v, MPFR_RNDU);
    mpfr_mul(t1.v, a.rad_, b.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, t1.v, MPFR_RNDU);
    int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    r.bump(t);
    return r;
}

RealBall operator/(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.prec(), b.prec()));
    // lower bound on |b| over the whole enclosure
    ScopedMpfr lo(kRadPrec), bm_d(kRadPrec);
    abs_down(bm_d.v, b.mid_);
    mpfr_sub(lo.v, bm_d.v, b.rad_, MPFR_RNDD);
    if (!mpfr_number_p(lo.v) || mpfr_sgn(lo.v) <= 0)
        throw undecided_error("ball division: divisor enclosure contains zero");
    // (ra |b| + rb |a|) / (|b| * lo)
    ScopedMpfr am(kRadPrec), bm(kRadPrec), num(kRadPrec), den(kRadPrec), t1(kRadPrec);
    abs_up(am.v, a.mid_);
    abs_up(bm.v, b.mid_);
    mpfr_mul(num.v, a.rad_, bm.v, MPFR_RNDU);
    mpfr_mul(t1.v, b.rad_, am.v, MPFR_RNDU);
    mpfr_add(num.v, num.v, t1.v, MPFR_RNDU);
    mpfr_mul(den.v, bm_d.v, lo.v, MPFR_RNDD);
    mpfr_div(r.rad_, num.v, den.v, MPFR_RNDU);
    int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    r.bump(t);
    return r;
}

RealBall RealBall::abs() const {
    RealBall r(prec());
    mpfr_abs(r.mid_, mid_, MPFR_RNDN);  // exact
    mpfr_set(r.rad_, rad_, MPFR_RNDU);
    return r;
}

RealBall RealBall::mul_ratio(const mpq_class& q) const {
    RealBall r(prec());
    ScopedMpfr qa(kRadPrec), t1(kRadPrec);
    mpfr_set_q(qa.v, q.get_mpq_t(), MPFR_RNDA);
    mpfr_abs(qa.v, qa.v, MPFR_RNDU);
    mpfr_mul(r.rad_, rad_, qa.v, MPFR_RNDU);
    int t = mpfr_mul_q(r.mid_, mid_, q.get_mpq_t(), MPFR_RNDN);
    r.bump(t);
    return r;
}

RealBall RealBall::mul_2exp(long e) const {
    RealBall r(*this);
    mpfr_mul_2si(r.mid_, r.mid_, e, MPFR_RNDN);  // exact
    mpfr_mul_2si(r.rad_, r.rad_, e, MPFR_RNDU);
    return r;
}

RealBall RealBall::pow_ui(unsigned long e) const {
    RealBall acc = one(prec());
    RealBall base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

RealBall RealBall::inv() const {
    return one(prec()) / *this;
}

RealBall RealBall::sqrt() const {
    // needs a strictly positive enclosure
    ScopedMpfr lo(kRadPrec);
    abs_down(lo.v, mid_);
    if (mpfr_sgn(mid_) <= 0)
        throw undecided_error("ball sqrt: enclosure not strictly positive");
    mpfr_sub(lo.v, lo.v, rad_, MPFR_RNDD);
    if (mpfr_sgn(lo.v) <= 0)
        throw undecided_error("ball sqrt: enclosure not strictly positive");
    RealBall r(prec());
    // derivative bound: |sqrt(x) - sqrt(m)| <= rad / (2 sqrt(lo))
    ScopedMpfr den(kRadPrec);
    mpfr_sqrt(den.v, lo.v, MPFR_RNDD);
    mpfr_mul_2ui(den.v, den.v, 1, MPFR_RNDD);
    mpfr_div(r.rad_, rad_, den.v, MPFR_RNDU);
    int t = mpfr_sqrt(r.mid_, mid_, MPFR_RNDN);
    r.bump(t);
    return r;
}

// sin(pi q) or cos(pi q) for exact rational q in [0, 1/4]. The argument
// x = pi*q is itself a ball; |sin'| and |cos'| are <= 1, so the argument
// radius carries through unscaled.
RealBall RealBall::sin_cos_kernel(bool want_sin, const mpq_class& q, Prec prec) {
    Prec wp = prec + 24;
    RealBall x = RealBall::pi(wp).mul_ratio(q);
    RealBall r(wp);
    int t = want_sin ? mpfr_sin(r.mid_, x.mid_, MPFR_RNDN)
                     : mpfr_cos(r.mid_, x.mid_, MPFR_RNDN);
    mpfr_set(r.rad_, x.rad_, MPFR_RNDU);
    r.bump(t);
    return r.round_to(prec);
}

namespace {

struct ReducedAngle {
    int sign;         // 0 if the value is exactly 0 or +-1 (see kind)
    int exact;        // 0: none, 1: value sign*0, 2: value sign*1
    bool use_cos;     // evaluate cos kernel instead of sin
    mpq_class q;      // kernel argument in [0, 1/4]
};

// Reduce sin(pi num/den) using periodicity and reflection symmetries only
// (all exact integer arithmetic).
ReducedAngle reduce_sin(long num, long den) {
    ReducedAngle out{1, 0, false, mpq_class(0)};
    long two_den = 2 * den;
    long r = num % two_den;
    if (r < 0) r += two_den;
    if (r >= den) {  // sin(pi(x+1)) = -sin(pi x)
        out.sign = -1;
        r -= den;
    }
    if (r == 0) {
        out.exact = 1;
        return out;
    }
    if (2 * r == den) {
        out.exact = 2;
        return out;
    }
    if (2 * r > den) r = den - r;  // sin(pi(1-x)) = sin(pi x)
    if (4 * r <= den) {
        out.q = mpq_class(r, den);
    } else {
        out.use_cos = true;  // sin(pi x) = cos(pi(1/2 - x))
        out.q = mpq_class(den - 2 * r, 2 * den);
    }
    out.q.canonicalize();
    return out;
}

}  // namespace

RealBall sin_pi(const AngleFraction& f, Prec prec) {
    if (f.den <= 0) throw domain_error("sin_pi: denominator must be positive");
    ReducedAngle ra = reduce_sin(f.num, f.den);
    if (ra.exact == 1) return RealBall::zero(prec);
    if (ra.exact == 2) return RealBall::from_long(ra.sign, prec);
    RealBall v = RealBall::sin_cos_kernel(!ra.use_cos, ra.q, prec);
    return ra.sign > 0 ? v : -v;
}

RealBall cos_pi(const AngleFraction& f, Prec prec) {
    if (f.den <= 0) throw domain_error("cos_pi: denominator must be positive");
    // cos(pi x) = sin(pi(x + 1/2))
    return sin_pi(AngleFraction{2 * f.num + f.den, 2 * f.den}, prec);
}

RealBall tan_pi(const AngleFraction& f, Prec prec) {
    if (f.den <= 0) throw domain_error("tan_pi: denominator must be positive");
    if (f.den % 2 == 0) throw domain_error("tan_pi: denominator must be odd");
    long r = f.num % f.den;
    if (r < 0) r += f.den;
    if (r == 0) return RealBall::zero(prec);
    Prec wp = prec + 16;
    RealBall s = sin_pi(AngleFraction{r, f.den}, wp);
    RealBall c = cos_pi(AngleFraction{r, f.den}, wp);
    return (s / c).round_to(prec);
}

RealBall cot_pi(const AngleFraction& f, Prec prec) {
    if (f.den <= 0) throw domain_error("cot_pi: denominator must be positive");
    long r = f.num % f.den;
    if (r < 0) r += f.den;
    if (r == 0) throw domain_error("cot_pi: pole at integer angle");
    long g = std::gcd(r, f.den);
    long rn = r / g, dn = f.den / g;
    if (dn == 2) return RealBall::zero(prec);          // cot(pi/2) = 0
    if (dn == 4) return RealBall::from_long(rn == 1 ? 1 : -1, prec);
    Prec wp = prec + 16;
    RealBall s = sin_pi(AngleFraction{r, f.den}, wp);
    RealBall c = cos_pi(AngleFraction{r, f.den}, wp);
    return (c / s).round_to(prec);
}

ComplexBall root_of_unity(long k, long m, Prec prec) {
    if (m <= 0) throw domain_error("root_of_unity: order must be positive");
    long r = k % m;
    if (r < 0) r += m;
    return {cos_pi(AngleFraction{2 * r, m}, prec), sin_pi(AngleFraction{2 * r, m}, prec)};
}

long trig_period(TrigFunc f) {
    return (f == TrigFunc::tan || f == TrigFunc::cot) ? 1 : 2;
}

TrigCache::TrigCache(TrigFunc func, long den, Prec prec)
    : func_(func), den_(den), prec_(prec) {
    if (den <= 0) throw domain_error("TrigCache: denominator must be positive");
}

const RealBall& TrigCache::at(long residue) {
    long mod = trig_period(func_) * den_;
    long r = residue % mod;
    if (r < 0) r += mod;
    auto it = slots_.find(r);
    if (it != slots_.end()) return it->second;
    AngleFraction f{r, den_};
    RealBall v(prec_);
    switch (func_) {
        case TrigFunc::tan: v = tan_pi(f, prec_); break;
        case TrigFunc::cot: v = cot_pi(f, prec_); break;
        case TrigFunc::sin: v = sin_pi(f, prec_); break;
        case TrigFunc::cos: v = cos_pi(f, prec_); break;
    }
    return slots_.emplace(r, std::move(v)).first->second;
}

}  // namespace tandet::realball
