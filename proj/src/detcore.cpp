#include "tandet/detcore.hpp"

#include <algorithm>
#include <cmath>

#include "tandet/ntheory.hpp"

namespace tandet::detcore {

using ntheory::jacobi;
using ntheory::mod_reduce;
using realball::TrigFunc;

namespace {

RealBall ball_entry(const ResidueMatrix& m, TrigCache& cache, size_t j, size_t k) {
    int w = m.weight_at(j, k);
    if (w == 0) return RealBall::zero(cache.prec());
    RealBall v = cache.at(m.at(j, k));
    if (m.squared) v = v * v;
    if (w < 0) v = -v;
    return v;
}

}  // namespace

RealBall det_ball(const ResidueMatrix& m, Prec prec) {
    if (prec < 32) throw param_error("det_ball: prec must be >= 32");
    const size_t n = m.dim;
    if (n == 0) return RealBall::one(prec);
    TrigCache cache(m.func, m.den, prec);
    std::vector<RealBall> a;
    a.reserve(n * n);
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) a.push_back(ball_entry(m, cache, j, k));

    auto at = [&](size_t j, size_t k) -> RealBall& { return a[j * n + k]; };
    int sign = 1;
    RealBall det = RealBall::one(prec);
    for (size_t step = 0; step < n; ++step) {
        // full pivoting on the lower magnitude bound |mid| - rad
        size_t bi = step, bj = step;
        double best = -1;
        for (size_t i = step; i < n; ++i)
            for (size_t j = step; j < n; ++j) {
                const RealBall& v = at(i, j);
                double lb = std::abs(v.mid_double()) - v.rad_double();
                if (lb > best) { best = lb; bi = i; bj = j; }
            }
        if (at(bi, bj).contains_zero()) {
            // double-precision scoring can underflow; fall back to the exact test
            bool found = false;
            for (size_t i = step; i < n && !found; ++i)
                for (size_t j = step; j < n && !found; ++j)
                    if (!at(i, j).contains_zero()) { bi = i; bj = j; found = true; }
        }
        if (at(bi, bj).contains_zero()) {
            // exact zero row/column in the remaining block proves det = 0
            for (size_t j = step; j < n; ++j) {
                bool all_zero = true;
                for (size_t i = step; i < n && all_zero; ++i)
                    all_zero = at(i, j).is_exact_zero();
                if (all_zero) return RealBall::zero(prec);
            }
            for (size_t i = step; i < n; ++i) {
                bool all_zero = true;
                for (size_t j = step; j < n && all_zero; ++j)
                    all_zero = at(i, j).is_exact_zero();
                if (all_zero) return RealBall::zero(prec);
            }
            throw undecided_error("det_ball: pivot enclosure contains zero");
        }
        if (bi != step) {
            for (size_t j = 0; j < n; ++j) std::swap(at(step, j), at(bi, j));
            sign = -sign;
        }
        if (bj != step) {
            for (size_t i = 0; i < n; ++i) std::swap(at(i, step), at(i, bj));
            sign = -sign;
        }
        const RealBall piv = at(step, step);
        det = det * piv;
        for (size_t i = step + 1; i < n; ++i) {
            if (at(i, step).is_exact_zero()) continue;
            RealBall f = at(i, step) / piv;
            for (size_t j = step + 1; j < n; ++j)
                at(i, j) = at(i, j) - f * at(step, j);
        }
    }
    return sign > 0 ? det : -det;
}

CycloElement encode_entry(const std::shared_ptr<const CycloField>& field, long den,
                          TrigFunc func, bool squared, long residue, int weight) {
    const CycloField& F = *field;
    long M = static_cast<long>(F.conductor());
    if (M != 4 * den) throw param_error("encode_entry: conductor must be 4*den");
    CycloElement out = F.zero();
    if (weight != 0) {
        CycloElement i_unit = F.zeta_pow(den);  // zeta_{4den}^den = i
        CycloElement two_i = i_unit.mul_ratio(2);
        switch (func) {
            case TrigFunc::tan: {
                CycloElement z = F.zeta_pow(4 * residue);
                out = -i_unit + two_i * (z + F.one()).inverse();
                break;
            }
            case TrigFunc::cot: {
                if (residue % den == 0) throw domain_error("encode_entry: cot pole");
                CycloElement z = F.zeta_pow(4 * residue);
                out = i_unit + two_i * (z - F.one()).inverse();
                break;
            }
            case TrigFunc::sin: {
                CycloElement d = F.zeta_pow(2 * residue) - F.zeta_pow(-2 * residue);
                out = (d * i_unit).mul_ratio(mpq_class(-1, 2));
                break;
            }
            case TrigFunc::cos: {
                CycloElement d = F.zeta_pow(2 * residue) + F.zeta_pow(-2 * residue);
                out = d.mul_ratio(mpq_class(1, 2));
                break;
            }
        }
        if (squared) out = out * out;
        if (weight < 0) out = -out;
    }
    return out;
}

CycloElement bareiss_det(std::vector<CycloElement> a, size_t dim) {
    if (dim == 0) throw param_error("bareiss_det: empty matrix");
    const auto field = a[0].field_ptr();
    auto at = [&](size_t j, size_t k) -> CycloElement& { return a[j * dim + k]; };
    int sign = 1;
    CycloElement prev = field->one();
    for (size_t step = 0; step + 1 < dim; ++step) {
        size_t piv_row = step;
        while (piv_row < dim && at(piv_row, step).is_zero()) ++piv_row;
        if (piv_row == dim) return field->zero();
        if (piv_row != step) {
            for (size_t j = 0; j < dim; ++j) std::swap(at(step, j), at(piv_row, j));
            sign = -sign;
        }
        const CycloElement piv = at(step, step);
        const CycloElement prev_inv = prev.inverse();
        for (size_t i = step + 1; i < dim; ++i) {
            for (size_t j = step + 1; j < dim; ++j) {
                at(i, j) = (at(i, j) * piv - at(i, step) * at(step, j)) * prev_inv;
            }
            at(i, step) = field->zero();
        }
        prev = piv;
    }
    CycloElement det = at(dim - 1, dim - 1);
    return sign > 0 ? det : -det;
}

CycloElement det_exact(const ResidueMatrix& m, const ExactBudget& budget) {
    unsigned long M = 4 * static_cast<unsigned long>(m.den);
    unsigned long phi = euler_phi(M);
    if (!budget.allows(m.dim, phi))
        throw param_error("det_exact: matrix exceeds the exact-size budget");
    auto field = CycloField::make(M);
    const size_t n = m.dim;
    if (n == 0) return field->one();

    // one encode per (residue, |weight|) pattern; weights fold in afterwards
    std::map<long, CycloElement> plain;
    std::vector<CycloElement> a;
    a.reserve(n * n);
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
            int w = m.weight_at(j, k);
            long r = m.at(j, k);
            if (w == 0) {
                a.push_back(field->zero());
                continue;
            }
            auto it = plain.find(r);
            if (it == plain.end())
                it = plain.emplace(r, encode_entry(field, m.den, m.func, m.squared, r, 1)).first;
            a.push_back(w < 0 ? -it->second : it->second);
        }

    // clear row denominators so Bareiss runs over Z[zeta]
    mpq_class scale(1);
    for (size_t j = 0; j < n; ++j) {
        mpz_class l(1);
        for (size_t k = 0; k < n; ++k)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a[j * n + k].den().get_mpz_t());
        if (l != 1) {
            for (size_t k = 0; k < n; ++k) a[j * n + k] = a[j * n + k].mul_ratio(mpq_class(l));
            scale *= mpq_class(l);
        }
    }
    CycloElement det = bareiss_det(std::move(a), n).mul_ratio(mpq_class(1) / scale);
    if (!det.is_real())
        throw domain_error("det_exact: non-real determinant (internal error)");
    return det;
}

bool cauchy_supported(const MatrixSpec& spec) {
    return std::holds_alternative<TanQuad>(spec) || std::holds_alternative<TanLin>(spec) ||
           std::holds_alternative<CotQuad>(spec);
}

CycloElement det_cauchy_exact(const MatrixSpec& spec) {
    long den = 0, a = 0, b = 0;
    bool is_cot = false;
    std::vector<long> rows, cols;  // index lists
    bool quadratic = false;
    if (const auto* t = std::get_if<TanQuad>(&spec)) {
        den = t->p; a = t->a; b = t->b; quadratic = true;
        for (long j = t->delta; j <= (t->p - 1) / 2; ++j) rows.push_back(j);
    } else if (const auto* t = std::get_if<TanLin>(&spec)) {
        den = t->n; a = t->a; b = t->b;
        for (long j = t->delta; j <= t->n - 1; ++j) rows.push_back(j);
    } else if (const auto* t = std::get_if<CotQuad>(&spec)) {
        den = t->p; a = t->a; b = t->b; quadratic = true; is_cot = true;
        for (long j = 1; j <= (t->p - 1) / 2; ++j) rows.push_back(j);
    } else {
        throw param_error("det_cauchy_exact: family has no separable closed form");
    }
    build(spec);  // run the family's own validation
    cols = rows;
    auto field = CycloField::make(4 * static_cast<unsigned long>(den));
    const CycloField& F = *field;
    auto exps = [&](const std::vector<long>& idx, long coef) {
        std::vector<long> out;
        out.reserve(idx.size());
        for (long v : idx) {
            long e = quadratic ? mod_reduce(coef * (v % den) % den * (v % den), den)
                               : mod_reduce(coef * v, den);
            out.push_back(e);
        }
        return out;
    };
    std::vector<long> u = exps(rows, mod_reduce(a, den));
    std::vector<long> v = exps(cols, mod_reduce(b, den));
    const size_t n = rows.size();
    std::vector<CycloElement> xs, ys;
    xs.reserve(n);
    ys.reserve(n);
    for (size_t j = 0; j < n; ++j) xs.push_back(F.zeta_pow(4 * u[j]));
    for (size_t k = 0; k < n; ++k) {
        CycloElement yk = F.zeta_pow(-4 * v[k]);
        ys.push_back(is_cot ? -yk : yk);
    }
    // prefactor prod_k 2i zeta^{-v_k}
    CycloElement pref = F.one();
    CycloElement two_i = F.zeta_pow(den).mul_ratio(2);
    for (size_t k = 0; k < n; ++k) pref *= two_i * F.zeta_pow(-4 * v[k]);
    // Cauchy closed form
    CycloElement num = F.one(), dpr = F.one();
    for (size_t j = 0; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k)
            num *= (xs[k] - xs[j]) * (ys[k] - ys[j]);
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) dpr *= xs[j] + ys[k];
    CycloElement z = pref * num * dpr.inverse();
    // real part of the shifted determinant = the plain determinant
    return (z + z.conj()).mul_ratio(mpq_class(1, 2));
}

mpq_class dense_det(std::vector<mpq_class> a, size_t dim) {
    if (dim == 0) return mpq_class(1);
    auto at = [&](size_t j, size_t k) -> mpq_class& { return a[j * dim + k]; };
    int sign = 1;
    mpq_class det(1);
    for (size_t step = 0; step < dim; ++step) {
        size_t piv = step;
        while (piv < dim && at(piv, step) == 0) ++piv;
        if (piv == dim) return mpq_class(0);
        if (piv != step) {
            for (size_t j = 0; j < dim; ++j) std::swap(at(step, j), at(piv, j));
            sign = -sign;
        }
        det *= at(step, step);
        for (size_t i = step + 1; i < dim; ++i) {
            if (at(i, step) == 0) continue;
            mpq_class f = at(i, step) / at(step, step);
            for (size_t j = step + 1; j < dim; ++j) at(i, j) -= f * at(step, j);
        }
    }
    return sign > 0 ? det : -det;
}

RealBall dense_det(std::vector<RealBall> a, size_t dim) {
    if (dim == 0) return RealBall::one(64);
    Prec prec = a[0].prec();
    auto at = [&](size_t j, size_t k) -> RealBall& { return a[j * dim + k]; };
    int sign = 1;
    RealBall det = RealBall::one(prec);
    for (size_t step = 0; step < dim; ++step) {
        size_t bi = step;
        double best = -1;
        for (size_t i = step; i < dim; ++i) {
            double lb = std::abs(at(i, step).mid_double()) - at(i, step).rad_double();
            if (lb > best) { best = lb; bi = i; }
        }
        if (at(bi, step).contains_zero()) {
            for (size_t i = step; i < dim; ++i)
                if (!at(i, step).contains_zero()) { bi = i; break; }
        }
        if (at(bi, step).contains_zero()) {
            bool all_zero = true;
            for (size_t i = step; i < dim && all_zero; ++i)
                all_zero = at(i, step).is_exact_zero();
            if (all_zero) return RealBall::zero(prec);
            throw undecided_error("dense_det: pivot enclosure contains zero");
        }
        if (bi != step) {
            for (size_t j = 0; j < dim; ++j) std::swap(at(step, j), at(bi, j));
            sign = -sign;
        }
        det = det * at(step, step);
        for (size_t i = step + 1; i < dim; ++i) {
            RealBall f = at(i, step) / at(step, step);
            for (size_t j = step + 1; j < dim; ++j)
                at(i, j) = at(i, j) - f * at(step, j);
        }
    }
    return sign > 0 ? det : -det;
}

CycloElement dense_det(std::vector<CycloElement> a, size_t dim) {
    return bareiss_det(std::move(a), dim);
}

CycloElement sqrt_p_element(const std::shared_ptr<const CycloField>& field, long p) {
    const CycloField& F = *field;
    unsigned long M = F.conductor();
    if (M % (4 * static_cast<unsigned long>(p)) != 0)
        throw param_error("sqrt_p_element: conductor must be divisible by 4p");
    long step = static_cast<long>(M) / p;
    CycloElement g = F.zero();
    for (long t = 0; t < p; ++t) g += F.zeta_pow(step * (t % p * t % p));
    // g = sqrt(p) for p = 1 (mod 4), i sqrt(p) for p = 3 (mod 4)
    CycloElement w = g;
    if (p % 4 == 3) {
        CycloElement minus_i = F.zeta_pow(-(static_cast<long>(M) / 4));
        w = minus_i * g;
    }
    CycloElement sq = w * w;
    auto qv = sq.rational_value();
    if (!qv || *qv != p) throw domain_error("sqrt_p_element: gauss sum sanity check failed");
    return w;
}

CycloElement sqrt_element(const std::shared_ptr<const CycloField>& field, long n) {
    if (n <= 0) throw param_error("sqrt_element: argument must be positive");
    const CycloField& F = *field;
    long square = 1, free = 1, m = n;
    for (long p = 2; p * p <= m; ++p) {
        while (m % (p * p) == 0) { square *= p; m /= p * p; }
        if (m % p == 0) { free *= p; m /= p; }
    }
    free *= m;
    CycloElement out = F.from_ratio(mpq_class(square));
    long rest = free;
    if (rest % 2 == 0) {
        if (F.conductor() % 8 != 0)
            throw param_error("sqrt_element: conductor cannot host sqrt(2)");
        long e = static_cast<long>(F.conductor()) / 8;
        out = out * (F.zeta_pow(e) + F.zeta_pow(-e));  // 2 cos(pi/4)
        rest /= 2;
    }
    for (long p = 3; rest > 1; p += 2) {
        if (rest % p != 0) continue;
        out = out * sqrt_p_element(field, p);
        rest /= p;
    }
    return out;
}

std::optional<SubfieldValue> subfield_project(const CycloElement& x, long p) {
    const auto field = x.field_ptr();
    unsigned long M = field->conductor();
    if (M % static_cast<unsigned long>(p) != 0)
        throw param_error("subfield_project: conductor not divisible by p");
    if (auto q = x.rational_value()) return SubfieldValue{*q, mpq_class(0), +1};
    if (M % (4 * static_cast<unsigned long>(p)) != 0) return std::nullopt;
    long mp = static_cast<long>(M) / p;
    if (mp % p == 0) throw param_error("subfield_project: p^2 divides the conductor");
    // Galois element fixing zeta_{M/p} and acting as a nonresidue mod p
    long r = 2;
    while (jacobi(r, p) != -1) ++r;
    // CRT: c = 1 (mod M/p), c = r (mod p)
    long inv = ntheory::mod_inverse(mp % p, p);
    long c = mod_reduce(1 + mp * mod_reduce((r - 1) * inv, p), static_cast<long>(M));
    CycloElement sx = x.galois(static_cast<unsigned long>(c));
    CycloElement rat = (x + sx).mul_ratio(mpq_class(1, 2));
    auto rv = rat.rational_value();
    if (!rv) return std::nullopt;
    CycloElement rem = (x - sx).mul_ratio(mpq_class(1, 2));
    CycloElement w = sqrt_p_element(field, p);
    if (auto sv = (rem * w.inverse()).rational_value())
        return SubfieldValue{*rv, *sv, +1};
    CycloElement iw = field->zeta_pow(static_cast<long>(M) / 4) * w;
    if (auto sv = (rem * iw.inverse()).rational_value())
        return SubfieldValue{*rv, *sv, -1};
    return std::nullopt;
}

}  // namespace tandet::detcore
