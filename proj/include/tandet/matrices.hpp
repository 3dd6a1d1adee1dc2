#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tandet/ball.hpp"
#include "tandet/errors.hpp"

namespace tandet::detcore {

using realball::TrigFunc;

// det[tan pi (a j^2 + b k^2)/p], delta <= j,k <= (p-1)/2
struct TanQuad { long p, a, b; int delta; };
// det[tan pi (a j + b k)/n], delta <= j,k <= n-1
struct TanLin { long n, a, b; int delta; };
// det[cot pi (a j^2 + b k^2)/p], 1 <= j,k <= (p-1)/2, needs (-ab/p) = -1
struct CotQuad { long p, a, b; };
// det[cot pi jk/p], 1 <= j,k <= (p-1)/2
struct CotJK { long p; };
// det[tan pi jk/m], 1 <= j,k <= (m-1)/2, odd m
struct TanJK { long m; };
// det[tan^2 pi (a j^2 + b k^2)/p]
struct Tan2Quad { long p, a, b; int delta; };
// det[tan^2 pi (j + k)/n], 1 <= j,k <= n-1
struct Tan2LinSum { long n; };
// det[cot^2 pi (a j^2 + b k^2)/p], 1 <= j,k <= (p-1)/2
struct Cot2Quad { long p, a, b; };
// det[((a j^2 + b k^2)/p) tan pi (a j^2 + b k^2)/p], 0 <= j,k <= (p-1)/2
struct LegTanQuad { long p, a, b; };
// det[((a j^2 + b k^2)/p) cot pi (a j^2 + b k^2)/p], 1 <= j,k <= (p-1)/2
struct LegCotQuad { long p, a, b; };
// det[cos pi jk/n], delta <= j,k <= n; doubled: det[cos 2pi jk/n], delta..(n-1)/2
struct CosJK { long n; int delta; bool doubled; };
// det[sin pi jk/n], 1 <= j,k <= n-1; doubled: det[sin 2pi jk/n], 1..(n-1)/2
struct SinJK { long n; bool doubled; };

using MatrixSpec = std::variant<TanQuad, TanLin, CotQuad, CotJK, TanJK, Tan2Quad,
                                Tan2LinSum, Cot2Quad, LegTanQuad, LegCotQuad,
                                CosJK, SinJK>;

std::string family_name(const MatrixSpec& spec);
std::map<std::string, long> family_params(const MatrixSpec& spec);

// Symbolic matrix: integer residues modulo the angle denominator (modulo
// 2*den for the period-2 sin/cos families), plus optional +-1/0 symbol
// weights. No entry is ever stored as a float.
struct ResidueMatrix {
    size_t dim = 0;
    long den = 1;
    TrigFunc func = TrigFunc::tan;
    bool squared = false;
    std::vector<long> residues;   // dim*dim, row major, in [0, period*den)
    std::vector<int> weights;     // empty, or dim*dim of {-1, 0, +1}
    std::vector<long> row_index;  // the j values behind each row
    std::vector<long> col_index;  // the k values behind each column

    long residue_mod() const { return realball::trig_period(func) * den; }
    long at(size_t j, size_t k) const { return residues[j * dim + k]; }
    int weight_at(size_t j, size_t k) const {
        return weights.empty() ? 1 : weights[j * dim + k];
    }
    bool weighted() const { return !weights.empty(); }
};

ResidueMatrix build(const MatrixSpec& spec);

}  // namespace tandet::detcore
