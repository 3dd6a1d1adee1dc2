#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "tandet/cyclo.hpp"
#include "tandet/matrices.hpp"

namespace tandet::detcore {

using realball::ComplexBall;
using realball::Prec;
using realball::RealBall;
using realball::TrigCache;

// Certified determinant by outward-rounded Gaussian elimination with full
// pivoting on the lower magnitude bound. Throws undecided_error when a pivot
// enclosure straddles zero (caller restarts at doubled precision); returns an
// exact zero ball when a remaining row or column is exactly zero.
RealBall det_ball(const ResidueMatrix& m, Prec prec);

struct ExactBudget {
    size_t max_dim = 12;
    unsigned long max_work = 60000;  // phi(4 den) * dim^3 cap
    bool allows(size_t dim, unsigned long phi) const {
        return dim <= max_dim || phi * dim * dim * dim <= max_work;
    }
};

// Exact cyclotomic entry for f(pi r/den) in Q(zeta_{4 den}); weights and
// squaring applied. tan r/den -> -i + 2i/(z^r+1) with z = zeta_den, cot ->
// i + 2i/(z^r-1), sin/cos through zeta_{2 den}.
CycloElement encode_entry(const std::shared_ptr<const CycloField>& field, long den,
                          realball::TrigFunc func, bool squared, long residue, int weight);

// Exact determinant over Q(zeta_{4 den}) by fraction-free (Bareiss)
// elimination after clearing row denominators. The result must be fixed by
// complex conjugation; a non-real result aborts.
CycloElement det_exact(const ResidueMatrix& m, const ExactBudget& budget = {});

// Exact determinant by the Cauchy closed form for the separable families
// (TanQuad, TanLin, CotQuad): det[s*i + entries] factors through
// det[1/(x_j + y_k)], and the shifted determinant's real part is the target
// determinant by the border identity. Cheap at every modulus.
bool cauchy_supported(const MatrixSpec& spec);
CycloElement det_cauchy_exact(const MatrixSpec& spec);

// Bareiss determinant of an explicit element matrix (row major).
CycloElement bareiss_det(std::vector<CycloElement> a, size_t dim);

// det[1/(x_j + y_k)] via prod_{j<k}(x_k-x_j)(y_k-y_j) / prod_{j,k}(x_j+y_k).
template <typename T>
T cauchy_det(const std::vector<T>& xs, const std::vector<T>& ys, const T& one) {
    if (xs.size() != ys.size() || xs.empty())
        throw param_error("cauchy_det: need equal nonempty node lists");
    T num = one, den = one;
    for (size_t j = 0; j < xs.size(); ++j)
        for (size_t k = j + 1; k < xs.size(); ++k)
            num = num * ((xs[k] - xs[j]) * (ys[k] - ys[j]));
    for (size_t j = 0; j < xs.size(); ++j)
        for (size_t k = 0; k < ys.size(); ++k) den = den * (xs[j] + ys[k]);
    return num / den;
}

// Generic dense determinant by Gaussian elimination, exact for rational
// scalars; RealBall pivots that straddle zero throw undecided_error.
mpq_class dense_det(std::vector<mpq_class> a, size_t dim);
RealBall dense_det(std::vector<RealBall> a, size_t dim);
CycloElement dense_det(std::vector<CycloElement> a, size_t dim);

// Border split: for an (n+1)x(n+1) matrix A returns (det A, det B) with
// B[j][k] = A[j][k] - A[j][0] - A[0][k] + A[0][0], so that det[x + A] =
// det A + x det B identically.
template <typename T>
std::pair<T, T> border_split(const std::vector<T>& a, size_t n_plus_1, const T& one) {
    size_t n = n_plus_1 - 1;
    auto at = [&](size_t j, size_t k) -> const T& { return a[j * n_plus_1 + k]; };
    std::vector<T> b;
    b.reserve(n * n);
    for (size_t j = 1; j <= n; ++j)
        for (size_t k = 1; k <= n; ++k)
            b.push_back(at(j, k) - at(j, 0) - at(0, k) + at(0, 0));
    T det_a = dense_det(a, n_plus_1);
    T det_b = n == 0 ? one : dense_det(b, n);
    return {det_a, det_b};
}

// When x lies in Q(sqrt(p)) (or Q(i sqrt(p))), write it as r + s*w and report
// which root w is: +1 for sqrt(p), -1 for i*sqrt(p). Requires p | conductor.
struct SubfieldValue {
    mpq_class r, s;
    int root;  // +1: sqrt(p), -1: i*sqrt(p)
};
std::optional<SubfieldValue> subfield_project(const CycloElement& x, long p);

// sqrt(p) as an exact element (via the quadratic Gauss sum), conductor must
// be divisible by 4p.
CycloElement sqrt_p_element(const std::shared_ptr<const CycloField>& field, long p);

// sqrt(n) for any positive n, assembled from the square part, prime Gauss
// sums, and zeta_8 + zeta_8^-1 for the factor 2. Throws when the conductor
// cannot host a needed factor.
CycloElement sqrt_element(const std::shared_ptr<const CycloField>& field, long n);

}  // namespace tandet::detcore
