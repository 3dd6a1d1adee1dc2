#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tandet/ball.hpp"
#include "tandet/errors.hpp"

namespace tandet::detcore {

class CycloElement;

// Q(zeta_m): elements are stored in the power basis 1, x, ..., x^(phi(m)-1)
// modulo the m-th cyclotomic polynomial. Reduction rows x^k mod Phi_m are
// precomputed for every k < 2m, which covers products, Galois twists and
// root-of-unity powers.
class CycloField : public std::enable_shared_from_this<CycloField> {
  public:
    static std::shared_ptr<const CycloField> make(unsigned long m);

    unsigned long conductor() const { return m_; }
    size_t degree() const { return degree_; }
    const std::vector<mpz_class>& poly() const { return phi_poly_; }

    CycloElement zero() const;
    CycloElement one() const;
    CycloElement from_ratio(const mpq_class& q) const;
    CycloElement zeta_pow(long k) const;  // zeta_m^k

    // integer coefficient row of x^k reduced mod Phi_m, 0 <= k < 2m
    const std::vector<mpz_class>& pow_row(unsigned long k) const { return pow_rows_[k]; }

  private:
    explicit CycloField(unsigned long m);
    unsigned long m_;
    size_t degree_;
    std::vector<mpz_class> phi_poly_;               // monic, degree phi(m)
    std::vector<std::vector<mpz_class>> pow_rows_;  // x^k mod Phi, k < 2m
};

// Exact element of Q(zeta_m), stored as an integer coefficient vector over a
// common positive denominator.
class CycloElement {
  public:
    CycloElement() = default;
    CycloElement(std::shared_ptr<const CycloField> f, std::vector<mpz_class> num,
                 mpz_class den);

    const CycloField& field() const { return *field_; }
    const std::shared_ptr<const CycloField>& field_ptr() const { return field_; }
    const std::vector<mpz_class>& num() const { return num_; }
    const mpz_class& den() const { return den_; }

    bool is_zero() const;
    bool is_rational() const;
    std::optional<mpq_class> rational_value() const;
    mpq_class coeff(size_t k) const;

    CycloElement operator-() const;
    friend CycloElement operator+(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator-(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
    CycloElement& operator+=(const CycloElement& b) { *this = *this + b; return *this; }
    CycloElement& operator-=(const CycloElement& b) { *this = *this - b; return *this; }
    CycloElement& operator*=(const CycloElement& b) { *this = *this * b; return *this; }
    bool operator==(const CycloElement& b) const;

    CycloElement mul_ratio(const mpq_class& q) const;
    CycloElement inverse() const;  // extended euclid against Phi_m
    CycloElement galois(unsigned long g) const;  // zeta -> zeta^g, gcd(g,m)=1
    CycloElement conj() const;                   // zeta -> zeta^(m-1)
    bool is_real() const { return conj() == *this; }

    realball::ComplexBall embed(realball::Prec prec) const;
    std::string repr() const;  // short printable form

  private:
    std::shared_ptr<const CycloField> field_;
    std::vector<mpz_class> num_;
    mpz_class den_{1};
    void normalize();
};

unsigned long euler_phi(unsigned long n);
std::vector<mpz_class> cyclotomic_poly(unsigned long n);

}  // namespace tandet::detcore
