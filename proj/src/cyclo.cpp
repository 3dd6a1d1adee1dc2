#include "tandet/cyclo.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tandet::detcore {

using realball::ComplexBall;
using realball::Prec;
using realball::RealBall;
using realball::root_of_unity;

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

// exact division of integer polynomials, remainder must vanish
std::vector<mpz_class> poly_divexact(std::vector<mpz_class> num,
                                     const std::vector<mpz_class>& den) {
    std::vector<mpz_class> q(num.size() - den.size() + 1, mpz_class(0));
    for (size_t i = q.size(); i-- > 0;) {
        mpz_class c = num[i + den.size() - 1] / den.back();
        q[i] = c;
        if (c != 0)
            for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0) throw domain_error("cyclotomic_poly: non-exact division");
    return q;
}

}  // namespace

std::vector<mpz_class> cyclotomic_poly(unsigned long n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<mpz_class> num(n + 1, mpz_class(0));
    num[0] = -1;
    num[n] = 1;
    for (unsigned long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = poly_divexact(std::move(num), cyclotomic_poly(d));
    }
    return num;
}

CycloField::CycloField(unsigned long m) : m_(m) {
    if (m < 1) throw domain_error("CycloField: conductor must be positive");
    phi_poly_ = cyclotomic_poly(m);
    degree_ = phi_poly_.size() - 1;
    // x^k mod Phi for all k < 2m, built by the shift-and-reduce recurrence
    pow_rows_.assign(2 * m, {});
    for (unsigned long k = 0; k < 2 * m; ++k) {
        std::vector<mpz_class>& row = pow_rows_[k];
        row.assign(degree_, mpz_class(0));
        if (k < degree_) {
            row[k] = 1;
            continue;
        }
        const std::vector<mpz_class>& prev = pow_rows_[k - 1];
        // multiply by x
        std::vector<mpz_class> shifted(degree_ + 1, mpz_class(0));
        for (size_t i = 0; i < degree_; ++i) shifted[i + 1] = prev[i];
        // reduce the single overflow coefficient: x^deg = -(lower part of Phi)
        mpz_class top = shifted[degree_];
        for (size_t i = 0; i < degree_; ++i) row[i] = shifted[i] - top * phi_poly_[i];
    }
}

std::shared_ptr<const CycloField> CycloField::make(unsigned long m) {
    return std::shared_ptr<const CycloField>(new CycloField(m));
}

CycloElement CycloField::zero() const {
    return CycloElement(shared_from_this(), std::vector<mpz_class>(degree_, mpz_class(0)), 1);
}

CycloElement CycloField::one() const {
    std::vector<mpz_class> c(degree_, mpz_class(0));
    c[0] = 1;
    return CycloElement(shared_from_this(), std::move(c), 1);
}

CycloElement CycloField::from_ratio(const mpq_class& q) const {
    std::vector<mpz_class> c(degree_, mpz_class(0));
    c[0] = q.get_num();
    return CycloElement(shared_from_this(), std::move(c), q.get_den());
}

CycloElement CycloField::zeta_pow(long k) const {
    long r = k % static_cast<long>(m_);
    if (r < 0) r += m_;
    std::vector<mpz_class> c = pow_rows_[r];
    return CycloElement(shared_from_this(), std::move(c), 1);
}

CycloElement::CycloElement(std::shared_ptr<const CycloField> f, std::vector<mpz_class> num,
                           mpz_class den)
    : field_(std::move(f)), num_(std::move(num)), den_(std::move(den)) {
    if (num_.size() != field_->degree()) throw domain_error("CycloElement: wrong length");
    normalize();
}

void CycloElement::normalize() {
    if (den_ == 0) throw domain_error("CycloElement: zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    mpz_class g = den_;
    for (const auto& c : num_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
    }
    if (g > 1) {
        den_ /= g;
        for (auto& c : num_) c /= g;
    }
    bool all_zero = std::all_of(num_.begin(), num_.end(),
                                [](const mpz_class& c) { return c == 0; });
    if (all_zero) den_ = 1;
}

bool CycloElement::is_zero() const {
    return std::all_of(num_.begin(), num_.end(),
                       [](const mpz_class& c) { return c == 0; });
}

bool CycloElement::is_rational() const {
    for (size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return false;
    return true;
}

std::optional<mpq_class> CycloElement::rational_value() const {
    if (!is_rational()) return std::nullopt;
    mpq_class q(num_[0], den_);
    q.canonicalize();
    return q;
}

mpq_class CycloElement::coeff(size_t k) const {
    mpq_class q(num_[k], den_);
    q.canonicalize();
    return q;
}

CycloElement CycloElement::operator-() const {
    std::vector<mpz_class> c(num_.size());
    for (size_t i = 0; i < num_.size(); ++i) c[i] = -num_[i];
    return CycloElement(field_, std::move(c), den_);
}

CycloElement operator+(const CycloElement& a, const CycloElement& b) {
    if (a.field_->conductor() != b.field_->conductor())
        throw domain_error("CycloElement: conductor mismatch");
    std::vector<mpz_class> c(a.num_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
    return CycloElement(a.field_, std::move(c), a.den_ * b.den_);
}

CycloElement operator-(const CycloElement& a, const CycloElement& b) {
    if (a.field_->conductor() != b.field_->conductor())
        throw domain_error("CycloElement: conductor mismatch");
    std::vector<mpz_class> c(a.num_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.num_[i] * b.den_ - b.num_[i] * a.den_;
    return CycloElement(a.field_, std::move(c), a.den_ * b.den_);
}

CycloElement operator*(const CycloElement& a, const CycloElement& b) {
    if (a.field_->conductor() != b.field_->conductor())
        throw domain_error("CycloElement: conductor mismatch");
    const CycloField& F = *a.field_;
    size_t deg = F.degree();
    std::vector<mpz_class> conv(2 * deg - 1, mpz_class(0));
    for (size_t i = 0; i < deg; ++i) {
        if (a.num_[i] == 0) continue;
        for (size_t j = 0; j < deg; ++j) {
            if (b.num_[j] == 0) continue;
            conv[i + j] += a.num_[i] * b.num_[j];
        }
    }
    std::vector<mpz_class> c(conv.begin(), conv.begin() + deg);
    for (size_t k = deg; k < conv.size(); ++k) {
        if (conv[k] == 0) continue;
        const std::vector<mpz_class>& row = F.pow_row(k);
        for (size_t i = 0; i < deg; ++i)
            if (row[i] != 0) c[i] += conv[k] * row[i];
    }
    return CycloElement(a.field_, std::move(c), a.den_ * b.den_);
}

bool CycloElement::operator==(const CycloElement& b) const {
    return (*this - b).is_zero();
}

CycloElement CycloElement::mul_ratio(const mpq_class& q) const {
    std::vector<mpz_class> c(num_.size());
    for (size_t i = 0; i < num_.size(); ++i) c[i] = num_[i] * q.get_num();
    return CycloElement(field_, std::move(c), den_ * q.get_den());
}

namespace {

using QPoly = std::vector<mpq_class>;  // dense coefficients, zero tail allowed

size_t qlen(const QPoly& p) {
    size_t d = p.size();
    while (d > 0 && p[d - 1] == 0) --d;
    return d;  // 0 for the zero polynomial, degree+1 otherwise
}

// r := r mod d, returning the quotient
QPoly qpoly_divmod(QPoly& r, const QPoly& d) {
    size_t dd = qlen(d);
    QPoly quot(r.size(), mpq_class(0));
    while (true) {
        size_t dr = qlen(r);
        if (dr < dd) break;
        mpq_class c = r[dr - 1] / d[dd - 1];
        size_t shift = dr - dd;
        quot[shift] += c;
        for (size_t i = 0; i < dd; ++i) r[shift + i] -= c * d[i];
        r[dr - 1] = 0;
    }
    return quot;
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    size_t la = qlen(a), lb = qlen(b);
    if (la == 0 || lb == 0) return {};
    QPoly out(la + lb - 1, mpq_class(0));
    for (size_t i = 0; i < la; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < lb; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

QPoly qpoly_sub(QPoly a, const QPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), mpq_class(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

}  // namespace

CycloElement CycloElement::inverse() const {
    if (is_zero()) throw domain_error("CycloElement: inverse of zero");
    const CycloField& F = *field_;
    size_t deg = F.degree();
    // extended euclid over Q[x]: on exit s0*A === gcd (mod Phi), gcd constant
    QPoly r0(deg, mpq_class(0)), r1(deg + 1, mpq_class(0));
    for (size_t i = 0; i < deg; ++i) r0[i] = coeff(i);
    for (size_t i = 0; i <= deg; ++i) r1[i] = mpq_class(F.poly()[i]);
    QPoly s0{mpq_class(1)}, s1{};
    while (qlen(r1) > 0) {
        QPoly q = qpoly_divmod(r0, r1);
        std::swap(r0, r1);
        QPoly snew = qpoly_sub(std::move(s0), qpoly_mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(snew);
    }
    if (qlen(r0) != 1)
        throw domain_error("CycloElement: inverse failed (gcd not constant)");
    mpq_class g = r0[0];
    // after the final swap the cofactor of r0 sits in s0
    std::vector<mpq_class> inv_coeffs(deg, mpq_class(0));
    if (qlen(s0) > deg) throw domain_error("CycloElement: inverse cofactor too long");
    for (size_t i = 0; i < s0.size() && i < deg; ++i) inv_coeffs[i] = s0[i] / g;
    mpz_class den(1);
    for (size_t i = 0; i < deg; ++i) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), inv_coeffs[i].get_den().get_mpz_t());
        den = l;
    }
    std::vector<mpz_class> c(deg, mpz_class(0));
    for (size_t i = 0; i < deg; ++i) {
        mpq_class scaled = inv_coeffs[i] * den;
        c[i] = scaled.get_num() / scaled.get_den();  // exact by the lcm choice
    }
    return CycloElement(field_, std::move(c), den);
}

CycloElement CycloElement::galois(unsigned long g) const {
    const CycloField& F = *field_;
    unsigned long m = F.conductor();
    if (std::gcd(g % m, m) != 1) throw domain_error("CycloElement: galois exponent not coprime");
    size_t deg = F.degree();
    std::vector<mpz_class> c(deg, mpz_class(0));
    for (size_t k = 0; k < deg; ++k) {
        if (num_[k] == 0) continue;
        const std::vector<mpz_class>& row = F.pow_row((g * k) % m);
        for (size_t i = 0; i < deg; ++i)
            if (row[i] != 0) c[i] += num_[k] * row[i];
    }
    return CycloElement(field_, std::move(c), den_);
}

CycloElement CycloElement::conj() const {
    return galois(field_->conductor() - 1);
}

ComplexBall CycloElement::embed(Prec prec) const {
    unsigned long m = field_->conductor();
    ComplexBall acc = ComplexBall::zero(prec);
    for (size_t k = 0; k < num_.size(); ++k) {
        if (num_[k] == 0) continue;
        mpq_class q(num_[k], den_);
        q.canonicalize();
        ComplexBall z = root_of_unity(static_cast<long>(k), static_cast<long>(m), prec);
        acc = acc + ComplexBall{z.re.mul_ratio(q), z.im.mul_ratio(q)};
    }
    return acc;
}

std::string CycloElement::repr() const {
    if (auto q = rational_value()) return q->get_str();
    std::ostringstream os;
    os << "cyclo(" << field_->conductor() << ")[";
    bool first = true;
    for (size_t k = 0; k < num_.size(); ++k) {
        if (num_[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        mpq_class q(num_[k], den_);
        q.canonicalize();
        os << "(" << q.get_str() << ")*z^" << k;
    }
    os << "]";
    return os.str();
}

}  // namespace tandet::detcore
