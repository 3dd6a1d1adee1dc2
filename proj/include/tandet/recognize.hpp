#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tandet/detcore.hpp"
#include "tandet/quadfield.hpp"

namespace tandet::recognize {

using detcore::CycloElement;
using detcore::MatrixSpec;
using detcore::ResidueMatrix;
using realball::Prec;
using realball::RealBall;

struct ZeroForm {};
// sign * 2^alpha * base^(beta_half / 2); sign 0 means the statement leaves
// the sign open.
struct PowerForm {
    int sign;
    long alpha;
    long base;
    long beta_half;
};
// r + s sqrt(p)
struct QuadSurd {
    mpq_class r, s;
    long p;
};
struct RationalForm {
    mpq_class q;
};
// q * sqrt(p)
struct SqrtMultiple {
    mpq_class q;
    long p;
};

using ClosedForm = std::variant<ZeroForm, PowerForm, QuadSurd, RationalForm, SqrtMultiple>;

bool form_is_zero(const ClosedForm& form);
bool form_sign_ambiguous(const ClosedForm& form);
std::string form_repr(const ClosedForm& form);
// sign_choice resolves an ambiguous PowerForm; ignored otherwise.
RealBall eval_form(const ClosedForm& form, Prec prec, int sign_choice = +1);

enum class VerdictKind { confirmed, refuted, undecided, consistent_zero };

struct Verdict {
    VerdictKind kind = VerdictKind::undecided;
    int observed_sign = 0;
    std::string reason;
};

std::string verdict_name(VerdictKind k);

// The theorem-predicted value for a covered family instance; nullopt for
// conjecture-only families.
std::optional<ClosedForm> predict(const MatrixSpec& spec, const quadfield::QuadInvariants& inv);

// Ball matching: Confirmed needs the candidate enclosed and separated from
// the alternatives; a ball can never confirm a Zero form.
Verdict match_ball(const RealBall& value, const ClosedForm& form, Prec form_prec_cap = 4096);

// Exact matching decides equality in the cyclotomic field.
Verdict match_exact(const CycloElement& value, const ClosedForm& form);

enum class ZeroKind { negation_symmetry, transpose_antisymmetry, full_range_antisymmetry };

// Exact combinatorial evidence that a determinant vanishes; the permutations
// are re-verified entrywise on the residues before the certificate is issued.
struct ZeroCertificate {
    ZeroKind kind;
    long q = 0;                    // index multiplier witness where applicable
    std::vector<size_t> row_perm;  // row j of the image sits at row_perm[j]
    std::vector<size_t> col_perm;
};

std::string zero_kind_name(ZeroKind k);
std::optional<ZeroCertificate> structural_zero(const ResidueMatrix& m);

// Unique rational with denominator <= bound inside the enclosure, via the
// continued fraction of the midpoint. Needs rad < 1/(4 bound^2).
std::optional<mpq_class> recognize_rational(const RealBall& x, const mpz_class& denom_bound);

// Unique integer k with x/base around k and quotient width below 1/2.
std::optional<mpz_class> recognize_integer_quotient(const RealBall& x, const RealBall& base);

// True when the enclosure provably contains no integer at all (a certified
// non-divisibility witness).
bool excludes_integers(const RealBall& x);

}  // namespace tandet::recognize
