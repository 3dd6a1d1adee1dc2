#include "tandet/recognize.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "tandet/ntheory.hpp"

namespace tandet::recognize {

using detcore::CotJK;
using detcore::CotQuad;
using detcore::CycloField;
using detcore::LegTanQuad;
using detcore::sqrt_p_element;
using detcore::SubfieldValue;
using detcore::TanLin;
using detcore::TanQuad;
using ntheory::jacobi;
using ntheory::mod_inverse;
using ntheory::mod_reduce;
using ntheory::sqrt_mod;
using realball::TrigFunc;

bool form_is_zero(const ClosedForm& form) {
    return std::holds_alternative<ZeroForm>(form);
}

bool form_sign_ambiguous(const ClosedForm& form) {
    const auto* pf = std::get_if<PowerForm>(&form);
    return pf && pf->sign == 0;
}

namespace {

mpq_class pow_ratio(long base, long e) {
    mpz_class b(base), p;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(std::labs(e)));
    if (e >= 0) return mpq_class(p);
    return mpq_class(1) / mpq_class(p);
}

// base^(beta_half/2) split into a rational part and an optional sqrt factor
std::pair<mpq_class, bool> half_power(long base, long beta_half) {
    long t = mod_reduce(beta_half, 2);
    long m = (beta_half - t) / 2;
    return {pow_ratio(base, m), t == 1};
}

}  // namespace

std::string form_repr(const ClosedForm& form) {
    std::ostringstream os;
    if (std::holds_alternative<ZeroForm>(form)) return "0";
    if (const auto* pf = std::get_if<PowerForm>(&form)) {
        if (pf->sign == 0) os << "+-";
        else if (pf->sign < 0) os << "-";
        os << "2^" << pf->alpha << "*" << pf->base << "^(" << pf->beta_half << "/2)";
        return os.str();
    }
    if (const auto* qs = std::get_if<QuadSurd>(&form)) {
        os << qs->r.get_str() << " + " << qs->s.get_str() << "*sqrt(" << qs->p << ")";
        return os.str();
    }
    if (const auto* rf = std::get_if<RationalForm>(&form)) return rf->q.get_str();
    const auto& sm = std::get<SqrtMultiple>(form);
    os << sm.q.get_str() << "*sqrt(" << sm.p << ")";
    return os.str();
}

RealBall eval_form(const ClosedForm& form, Prec prec, int sign_choice) {
    if (std::holds_alternative<ZeroForm>(form)) return RealBall::zero(prec);
    if (const auto* pf = std::get_if<PowerForm>(&form)) {
        auto [q, has_root] = half_power(pf->base, pf->beta_half);
        int sgn = pf->sign == 0 ? sign_choice : pf->sign;
        RealBall v = RealBall::from_ratio(q * sgn, prec).mul_2exp(pf->alpha);
        if (has_root) v = v * RealBall::sqrt_int(mpz_class(pf->base), prec);
        return v;
    }
    if (const auto* qs = std::get_if<QuadSurd>(&form)) {
        return RealBall::from_ratio(qs->r, prec) +
               RealBall::from_ratio(qs->s, prec) * RealBall::sqrt_int(mpz_class(qs->p), prec);
    }
    if (const auto* rf = std::get_if<RationalForm>(&form))
        return RealBall::from_ratio(rf->q, prec);
    const auto& sm = std::get<SqrtMultiple>(form);
    return RealBall::from_ratio(sm.q, prec) * RealBall::sqrt_int(mpz_class(sm.p), prec);
}

std::string verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::confirmed: return "Confirmed";
        case VerdictKind::refuted: return "Refuted";
        case VerdictKind::undecided: return "Undecided";
        case VerdictKind::consistent_zero: return "ConsistentZero";
    }
    return "?";
}

std::optional<ClosedForm> predict(const MatrixSpec& spec,
                                  const quadfield::QuadInvariants& inv) {
    if (const auto* t = std::get_if<TanQuad>(&spec)) {
        long p = t->p;
        int jab = jacobi(mod_reduce(t->a, p) * mod_reduce(t->b, p), p);
        if (p % 4 == 1) {
            if (t->delta == 0) return ClosedForm{ZeroForm{}};
            if (jab == 1) {
                if (!inv.eps || !inv.h_plus)
                    throw param_error("predict: missing real quadratic invariants");
                long c = *sqrt_mod(
                    mod_reduce(mod_reduce(t->b, p) * mod_inverse(mod_reduce(t->a, p), p), p), p);
                int sgn = jacobi(2 * c, p);
                long e = jacobi(t->a, p) * (2 - jacobi(2, p)) * *inv.h_plus;
                quadfield::UnitPair pw = quadfield::unit_power_signed(*inv.eps, p, e);
                // sgn * p^((p-5)/4) * (v p + u sqrt(p)) / 2
                mpq_class scale = pow_ratio(p, (p - 5) / 4) * sgn;
                mpq_class r = scale * mpq_class(pw.v * p, 2);
                mpq_class s = scale * mpq_class(pw.u, 2);
                r.canonicalize();
                s.canonicalize();
                return ClosedForm{QuadSurd{r, s, p}};
            }
            return ClosedForm{PowerForm{0, (p - 1) / 2, p, (p - 3) / 2}};
        }
        // p = 3 (mod 4)
        if (t->delta == 1) return ClosedForm{ZeroForm{}};
        return ClosedForm{PowerForm{+1, jab == 1 ? (p - 1) / 2 : 0, p, (p + 1) / 2}};
    }
    if (const auto* t = std::get_if<TanLin>(&spec)) {
        if (t->delta == 0) return ClosedForm{ZeroForm{}};
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(t->n),
                      static_cast<unsigned long>(t->n - 2));
        int s = jacobi(mod_reduce(-t->a * t->b, t->n), t->n);
        return ClosedForm{RationalForm{mpq_class(v * s)}};
    }
    if (const auto* t = std::get_if<CotQuad>(&spec)) {
        long p = t->p;
        if (p <= 3) return std::nullopt;  // the closed form assumes p > 3
        if (p % 4 == 1) return ClosedForm{PowerForm{0, (p - 1) / 2, p, -1}};
        if (!inv.h_minus) throw param_error("predict: missing imaginary class number");
        int sgn = ((*inv.h_minus + 1) / 2) % 2 == 0 ? 1 : -1;
        sgn *= jacobi(t->a, p);
        return ClosedForm{PowerForm{sgn, (p - 1) / 2, p, -1}};
    }
    if (const auto* t = std::get_if<LegTanQuad>(&spec)) {
        if (t->p % 4 == 1) return ClosedForm{ZeroForm{}};
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

Verdict decide_point(const RealBall& value, const ClosedForm& form, int sign_choice,
                     Prec cap) {
    for (Prec fp = std::max<Prec>(value.prec(), 64); fp <= cap; fp *= 2) {
        RealBall v = eval_form(form, fp, sign_choice);
        if (value.disjoint(v)) return {VerdictKind::refuted, 0, "candidate outside enclosure"};
        if (value.contains_ball(v)) return {VerdictKind::confirmed, sign_choice, ""};
    }
    return {VerdictKind::undecided, 0, "form evaluation cap reached"};
}

}  // namespace

Verdict match_ball(const RealBall& value, const ClosedForm& form, Prec form_prec_cap) {
    if (form_is_zero(form)) {
        if (!value.contains_zero()) return {VerdictKind::refuted, 0, "enclosure excludes zero"};
        return {VerdictKind::consistent_zero, 0, "ball cannot certify an exact zero"};
    }
    if (!form_sign_ambiguous(form)) {
        int s = +1;
        if (const auto* pf = std::get_if<PowerForm>(&form)) s = pf->sign;
        Verdict v = decide_point(value, form, s, form_prec_cap);
        if (v.kind == VerdictKind::confirmed)
            v.observed_sign = value.is_negative() ? -1 : (value.is_positive() ? 1 : 0);
        return v;
    }
    // ambiguous sign: separate the realized sign from the opposite and from 0
    Verdict plus = decide_point(value, form, +1, form_prec_cap);
    Verdict minus = decide_point(value, form, -1, form_prec_cap);
    if (plus.kind == VerdictKind::refuted && minus.kind == VerdictKind::refuted)
        return {VerdictKind::refuted, 0, "both signs excluded"};
    if (plus.kind == VerdictKind::confirmed && minus.kind == VerdictKind::refuted &&
        !value.contains_zero())
        return {VerdictKind::confirmed, +1, ""};
    if (minus.kind == VerdictKind::confirmed && plus.kind == VerdictKind::refuted &&
        !value.contains_zero())
        return {VerdictKind::confirmed, -1, ""};
    return {VerdictKind::undecided, 0, "signs not separated"};
}

namespace {

// exact candidate value inside the field of `value`; sqrt factors need the
// conductor to host the corresponding Gauss sums
CycloElement exact_candidate(const CycloElement& value, const ClosedForm& form,
                             int sign_choice) {
    const auto field = value.field_ptr();
    if (const auto* pf = std::get_if<PowerForm>(&form)) {
        auto [q, has_root] = half_power(pf->base, pf->beta_half);
        int sgn = pf->sign == 0 ? sign_choice : pf->sign;
        mpq_class scale = q * sgn * pow_ratio(2, pf->alpha);
        CycloElement v = field->from_ratio(scale);
        if (has_root) v = v * detcore::sqrt_element(field, pf->base);
        return v;
    }
    if (const auto* qs = std::get_if<QuadSurd>(&form)) {
        return field->from_ratio(qs->r) +
               detcore::sqrt_element(field, qs->p).mul_ratio(qs->s);
    }
    if (const auto* rf = std::get_if<RationalForm>(&form)) return field->from_ratio(rf->q);
    const auto& sm = std::get<SqrtMultiple>(form);
    return detcore::sqrt_element(field, sm.p).mul_ratio(sm.q);
}

}  // namespace

Verdict match_exact(const CycloElement& value, const ClosedForm& form) {
    if (form_is_zero(form)) {
        if (value.is_zero()) return {VerdictKind::confirmed, 0, "exact zero"};
        return {VerdictKind::refuted, 0, "exact value nonzero"};
    }
    if (!form_sign_ambiguous(form)) {
        if (value == exact_candidate(value, form, +1))
            return {VerdictKind::confirmed, 0, "exact equality"};
        return {VerdictKind::refuted, 0, "exact values differ"};
    }
    if (value == exact_candidate(value, form, +1))
        return {VerdictKind::confirmed, +1, "exact equality"};
    if (value == exact_candidate(value, form, -1))
        return {VerdictKind::confirmed, -1, "exact equality"};
    return {VerdictKind::refuted, 0, "exact values differ under both signs"};
}

std::string zero_kind_name(ZeroKind k) {
    switch (k) {
        case ZeroKind::negation_symmetry: return "NegationSymmetry";
        case ZeroKind::transpose_antisymmetry: return "TransposeAntisymmetry";
        case ZeroKind::full_range_antisymmetry: return "FullRangeAntisymmetry";
    }
    return "?";
}

namespace {

// entry(j,k) must negate under the index maps: weights zero pair with zero,
// otherwise either the residue negates with equal weight or the residue is
// fixed with flipped weight (all functions here are odd).
bool verify_negation(const ResidueMatrix& m, const std::vector<size_t>& rp,
                     const std::vector<size_t>& cp) {
    long mod = m.residue_mod();
    for (size_t j = 0; j < m.dim; ++j)
        for (size_t k = 0; k < m.dim; ++k) {
            long r = m.at(j, k);
            long ri = m.at(rp[j], cp[k]);
            int w = m.weight_at(j, k);
            int wi = m.weight_at(rp[j], cp[k]);
            if (w == 0 || wi == 0) {
                if (w != wi) return false;
                continue;
            }
            bool ok = (wi == w && (ri + r) % mod == 0) || (wi == -w && ri == r);
            if (!ok) return false;
        }
    return true;
}

bool verify_transpose_neg(const ResidueMatrix& m, const std::vector<size_t>& cp) {
    long mod = m.residue_mod();
    for (size_t j = 0; j < m.dim; ++j)
        for (size_t k = 0; k < m.dim; ++k) {
            long r = m.at(j, cp[k]);
            long rt = m.at(k, cp[j]);
            int w = m.weight_at(j, cp[k]);
            int wt = m.weight_at(k, cp[j]);
            if (w == 0 || wt == 0) {
                if (w != wt) return false;
                continue;
            }
            bool ok = (wt == w && (rt + r) % mod == 0) || (wt == -w && rt == r);
            if (!ok) return false;
        }
    return true;
}

// index value -> position lookup
std::map<long, size_t> positions(const std::vector<long>& idx) {
    std::map<long, size_t> pos;
    for (size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = i;
    return pos;
}

// map index value v to the position of +-(mult*v) mod den within the set
std::optional<std::vector<size_t>> build_map(const std::vector<long>& idx, long mult,
                                             long den) {
    auto pos = positions(idx);
    std::vector<size_t> out(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) {
        long t = mod_reduce(mult * idx[i], den);
        auto it = pos.find(t);
        if (it == pos.end()) it = pos.find(mod_reduce(den - t, den));
        if (it == pos.end()) return std::nullopt;
        out[i] = it->second;
    }
    // must be a bijection
    std::vector<char> seen(idx.size(), 0);
    for (size_t v : out) {
        if (seen[v]) return std::nullopt;
        seen[v] = 1;
    }
    return out;
}

}  // namespace

std::optional<ZeroCertificate> structural_zero(const ResidueMatrix& m) {
    if (m.squared || m.func == TrigFunc::cos) return std::nullopt;  // even entry map
    if (m.dim % 2 == 0) return std::nullopt;
    bool same_index = m.row_index == m.col_index;

    // (a) j -> qj with q^2 = -1 negating every residue, same map on both sides
    if (same_index) {
        for (long q = 2; q < m.den; ++q) {
            if ((q * q + 1) % m.den != 0) continue;
            auto map = build_map(m.row_index, q, m.den);
            if (!map) continue;
            if (verify_negation(m, *map, *map))
                return ZeroCertificate{ZeroKind::negation_symmetry, q, *map, *map};
        }
        // (b) full-range reflection j -> -j
        auto neg = build_map(m.row_index, m.den - 1, m.den);
        if (neg && verify_negation(m, *neg, *neg))
            return ZeroCertificate{ZeroKind::full_range_antisymmetry, m.den - 1, *neg, *neg};
    }

    // (c) column permutation turning the matrix into a skew-transpose pattern
    for (long c = 1; c < m.den; ++c) {
        auto map = build_map(m.col_index, c, m.den);
        if (!map) continue;
        if (verify_transpose_neg(m, *map)) {
            std::vector<size_t> id(m.dim);
            for (size_t i = 0; i < m.dim; ++i) id[i] = i;
            return ZeroCertificate{ZeroKind::transpose_antisymmetry, c, id, *map};
        }
    }
    return std::nullopt;
}

std::optional<mpq_class> recognize_rational(const RealBall& x, const mpz_class& denom_bound) {
    if (denom_bound < 1) return std::nullopt;
    mpq_class rad = x.rad_ratio();
    mpq_class gate = mpq_class(1) / mpq_class(4 * denom_bound * denom_bound);
    if (rad >= gate) return std::nullopt;  // enclosure too wide to isolate
    // convergents of mid until the denominator bound passes
    mpq_class mid = x.mid_ratio();
    mpz_class a = mid.get_num(), b = mid.get_den();
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // h: numerators, k: denominators
    // continued fraction of a/b (floor convention)
    while (b != 0) {
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpz_class h2 = q * h0 + h1;
        mpz_class k2 = q * k0 + k1;
        if (k2 > denom_bound) break;
        mpq_class cand(h2, k2);
        cand.canonicalize();
        if (x.contains(cand)) return cand;
        h1 = h0; h0 = h2;
        k1 = k0; k0 = k2;
        a = b;
        b = r;
    }
    return std::nullopt;
}

std::optional<mpz_class> recognize_integer_quotient(const RealBall& x, const RealBall& base) {
    RealBall q = x / base;
    mpq_class mid = q.mid_ratio();
    mpq_class rad = q.rad_ratio();
    // nearest integer to mid
    mpz_class k;
    mpq_class shifted = mid + mpq_class(1, 2);
    mpz_fdiv_q(k.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    mpq_class dist = ::abs(mid - mpq_class(k));
    // k must lie inside the quotient enclosure and every enclosed point must
    // round to k
    if (dist <= rad && dist + rad < mpq_class(1, 2)) return k;
    return std::nullopt;
}

bool excludes_integers(const RealBall& x) {
    mpq_class lo = x.mid_ratio() - x.rad_ratio();
    mpq_class hi = x.mid_ratio() + x.rad_ratio();
    mpz_class ceil_lo, floor_hi;
    mpz_cdiv_q(ceil_lo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_fdiv_q(floor_hi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    return floor_hi < ceil_lo;
}

}  // namespace tandet::recognize
