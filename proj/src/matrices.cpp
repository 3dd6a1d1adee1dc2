#include "tandet/matrices.hpp"

#include <numeric>

#include "tandet/ntheory.hpp"

namespace tandet::detcore {

using ntheory::is_probable_prime;
using ntheory::jacobi;
using ntheory::mod_reduce;

namespace {

void require_odd_prime(long p, const char* who) {
    if (p < 3 || p % 2 == 0 || !is_probable_prime(p))
        throw param_error(std::string(who) + ": modulus must be an odd prime");
}

void require_coprime(long a, long b, long n, const char* who) {
    if (std::gcd(mod_reduce(a, n), n) != 1 || std::gcd(mod_reduce(b, n), n) != 1)
        throw param_error(std::string(who) + ": coefficients must be coprime to the modulus");
}

void require_cot_nonsingular(long p, long a, long b, const char* who) {
    if (jacobi(mod_reduce(-a * b, p), p) != -1)
        throw domain_error(std::string(who) +
                           ": (-ab/p) = -1 required, otherwise an angle hits the cot pole");
}

struct Ranges {
    std::vector<long> js, ks;
};

Ranges index_range(long lo, long hi) {
    Ranges r;
    for (long v = lo; v <= hi; ++v) {
        r.js.push_back(v);
        r.ks.push_back(v);
    }
    return r;
}

ResidueMatrix fill_quad(long p, long a, long b, long lo, TrigFunc func, bool squared,
                        bool weighted) {
    Ranges idx = index_range(lo, (p - 1) / 2);
    long ar = mod_reduce(a, p), br = mod_reduce(b, p);
    ResidueMatrix m;
    m.dim = idx.js.size();
    m.den = p;
    m.func = func;
    m.squared = squared;
    m.row_index = idx.js;
    m.col_index = idx.ks;
    m.residues.resize(m.dim * m.dim);
    if (weighted) m.weights.resize(m.dim * m.dim);
    for (size_t j = 0; j < m.dim; ++j)
        for (size_t k = 0; k < m.dim; ++k) {
            long r = mod_reduce(ar * idx.js[j] % p * idx.js[j] + br * idx.ks[k] % p * idx.ks[k], p);
            m.residues[j * m.dim + k] = r;
            if (weighted) m.weights[j * m.dim + k] = jacobi(r, p);
            if (func == TrigFunc::cot && r == 0)
                throw domain_error("cot family: residue 0 hits a pole");
        }
    return m;
}

ResidueMatrix fill_jk(long n, long lo, long hi, TrigFunc func, bool squared, long mult) {
    Ranges idx = index_range(lo, hi);
    ResidueMatrix m;
    m.dim = idx.js.size();
    m.den = n;
    m.func = func;
    m.squared = squared;
    m.row_index = idx.js;
    m.col_index = idx.ks;
    m.residues.resize(m.dim * m.dim);
    long mod = m.residue_mod();
    for (size_t j = 0; j < m.dim; ++j)
        for (size_t k = 0; k < m.dim; ++k) {
            long r = mod_reduce(mult * idx.js[j] % mod * idx.ks[k], mod);
            m.residues[j * m.dim + k] = r;
            if (func == TrigFunc::cot && r % n == 0)
                throw domain_error("cot family: residue 0 hits a pole");
        }
    return m;
}

}  // namespace

std::string family_name(const MatrixSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TanQuad>) return "tan-quad";
            else if constexpr (std::is_same_v<T, TanLin>) return "tan-lin";
            else if constexpr (std::is_same_v<T, CotQuad>) return "cot-quad";
            else if constexpr (std::is_same_v<T, CotJK>) return "cot-jk";
            else if constexpr (std::is_same_v<T, TanJK>) return "tan-jk";
            else if constexpr (std::is_same_v<T, Tan2Quad>) return "tan2-quad";
            else if constexpr (std::is_same_v<T, Tan2LinSum>) return "tan2-linsum";
            else if constexpr (std::is_same_v<T, Cot2Quad>) return "cot2-quad";
            else if constexpr (std::is_same_v<T, LegTanQuad>) return "leg-tan-quad";
            else if constexpr (std::is_same_v<T, LegCotQuad>) return "leg-cot-quad";
            else if constexpr (std::is_same_v<T, CosJK>) return "cos-jk";
            else return "sin-jk";
        },
        spec);
}

std::map<std::string, long> family_params(const MatrixSpec& spec) {
    std::map<std::string, long> out;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TanQuad> || std::is_same_v<T, Tan2Quad>) {
                out["p"] = s.p; out["a"] = s.a; out["b"] = s.b; out["delta"] = s.delta;
            } else if constexpr (std::is_same_v<T, TanLin>) {
                out["n"] = s.n; out["a"] = s.a; out["b"] = s.b; out["delta"] = s.delta;
            } else if constexpr (std::is_same_v<T, CotQuad> || std::is_same_v<T, Cot2Quad> ||
                                 std::is_same_v<T, LegTanQuad> || std::is_same_v<T, LegCotQuad>) {
                out["p"] = s.p; out["a"] = s.a; out["b"] = s.b;
            } else if constexpr (std::is_same_v<T, CotJK>) {
                out["p"] = s.p;
            } else if constexpr (std::is_same_v<T, TanJK>) {
                out["m"] = s.m;
            } else if constexpr (std::is_same_v<T, Tan2LinSum>) {
                out["n"] = s.n;
            } else if constexpr (std::is_same_v<T, CosJK>) {
                out["n"] = s.n; out["delta"] = s.delta; out["doubled"] = s.doubled ? 1 : 0;
            } else if constexpr (std::is_same_v<T, SinJK>) {
                out["n"] = s.n; out["doubled"] = s.doubled ? 1 : 0;
            }
        },
        spec);
    return out;
}

ResidueMatrix build(const MatrixSpec& spec) {
    return std::visit(
        [](const auto& s) -> ResidueMatrix {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TanQuad>) {
                require_odd_prime(s.p, "tan-quad");
                require_coprime(s.a, s.b, s.p, "tan-quad");
                if (s.delta != 0 && s.delta != 1) throw param_error("tan-quad: delta must be 0 or 1");
                return fill_quad(s.p, s.a, s.b, s.delta, TrigFunc::tan, false, false);
            } else if constexpr (std::is_same_v<T, Tan2Quad>) {
                require_odd_prime(s.p, "tan2-quad");
                require_coprime(s.a, s.b, s.p, "tan2-quad");
                if (s.delta != 0 && s.delta != 1) throw param_error("tan2-quad: delta must be 0 or 1");
                return fill_quad(s.p, s.a, s.b, s.delta, TrigFunc::tan, true, false);
            } else if constexpr (std::is_same_v<T, CotQuad>) {
                require_odd_prime(s.p, "cot-quad");
                require_coprime(s.a, s.b, s.p, "cot-quad");
                require_cot_nonsingular(s.p, s.a, s.b, "cot-quad");
                return fill_quad(s.p, s.a, s.b, 1, TrigFunc::cot, false, false);
            } else if constexpr (std::is_same_v<T, Cot2Quad>) {
                require_odd_prime(s.p, "cot2-quad");
                require_coprime(s.a, s.b, s.p, "cot2-quad");
                require_cot_nonsingular(s.p, s.a, s.b, "cot2-quad");
                return fill_quad(s.p, s.a, s.b, 1, TrigFunc::cot, true, false);
            } else if constexpr (std::is_same_v<T, LegTanQuad>) {
                require_odd_prime(s.p, "leg-tan-quad");
                require_coprime(s.a, s.b, s.p, "leg-tan-quad");
                return fill_quad(s.p, s.a, s.b, 0, TrigFunc::tan, false, true);
            } else if constexpr (std::is_same_v<T, LegCotQuad>) {
                require_odd_prime(s.p, "leg-cot-quad");
                require_coprime(s.a, s.b, s.p, "leg-cot-quad");
                require_cot_nonsingular(s.p, s.a, s.b, "leg-cot-quad");
                return fill_quad(s.p, s.a, s.b, 1, TrigFunc::cot, false, true);
            } else if constexpr (std::is_same_v<T, TanLin>) {
                if (s.n <= 1 || s.n % 2 == 0) throw param_error("tan-lin: n must be odd > 1");
                require_coprime(s.a, s.b, s.n, "tan-lin");
                if (s.delta != 0 && s.delta != 1) throw param_error("tan-lin: delta must be 0 or 1");
                Ranges idx = index_range(s.delta, s.n - 1);
                long ar = mod_reduce(s.a, s.n), br = mod_reduce(s.b, s.n);
                ResidueMatrix m;
                m.dim = idx.js.size();
                m.den = s.n;
                m.func = TrigFunc::tan;
                m.row_index = idx.js;
                m.col_index = idx.ks;
                m.residues.resize(m.dim * m.dim);
                for (size_t j = 0; j < m.dim; ++j)
                    for (size_t k = 0; k < m.dim; ++k)
                        m.residues[j * m.dim + k] =
                            mod_reduce(ar * idx.js[j] + br * idx.ks[k], s.n);
                return m;
            } else if constexpr (std::is_same_v<T, Tan2LinSum>) {
                if (s.n <= 1 || s.n % 2 == 0) throw param_error("tan2-linsum: n must be odd > 1");
                Ranges idx = index_range(1, s.n - 1);
                ResidueMatrix m;
                m.dim = idx.js.size();
                m.den = s.n;
                m.func = TrigFunc::tan;
                m.squared = true;
                m.row_index = idx.js;
                m.col_index = idx.ks;
                m.residues.resize(m.dim * m.dim);
                for (size_t j = 0; j < m.dim; ++j)
                    for (size_t k = 0; k < m.dim; ++k)
                        m.residues[j * m.dim + k] = mod_reduce(idx.js[j] + idx.ks[k], s.n);
                return m;
            } else if constexpr (std::is_same_v<T, CotJK>) {
                require_odd_prime(s.p, "cot-jk");
                return fill_jk(s.p, 1, (s.p - 1) / 2, TrigFunc::cot, false, 1);
            } else if constexpr (std::is_same_v<T, TanJK>) {
                if (s.m <= 1 || s.m % 2 == 0) throw param_error("tan-jk: modulus must be odd > 1");
                return fill_jk(s.m, 1, (s.m - 1) / 2, TrigFunc::tan, false, 1);
            } else if constexpr (std::is_same_v<T, CosJK>) {
                if (s.n < 1) throw param_error("cos-jk: n must be positive");
                if (s.delta != 0 && s.delta != 1) throw param_error("cos-jk: delta must be 0 or 1");
                if (s.doubled) {
                    if (s.n % 2 == 0) throw param_error("cos-jk doubled: n must be odd");
                    return fill_jk(s.n, s.delta, (s.n - 1) / 2, TrigFunc::cos, false, 2);
                }
                return fill_jk(s.n, s.delta, s.n, TrigFunc::cos, false, 1);
            } else if constexpr (std::is_same_v<T, SinJK>) {
                if (s.doubled) {
                    if (s.n < 3 || s.n % 2 == 0) throw param_error("sin-jk doubled: n must be odd >= 3");
                    return fill_jk(s.n, 1, (s.n - 1) / 2, TrigFunc::sin, false, 2);
                }
                if (s.n < 2) throw param_error("sin-jk: n must be > 1");
                return fill_jk(s.n, 1, s.n - 1, TrigFunc::sin, false, 1);
            } else {
                throw param_error("unknown family");
            }
        },
        spec);
}

}  // namespace tandet::detcore
