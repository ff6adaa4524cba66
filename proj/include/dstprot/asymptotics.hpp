#ifndef DSTPROT_ASYMPTOTICS_HPP
#define DSTPROT_ASYMPTOTICS_HPP

#include <span>
#include <vector>

#include "dstprot/exact_sequence.hpp"
#include "dstprot/qseries.hpp"

namespace dstprot {

// Residue coefficient
//   b_m = B(x) / (4L (x-1)^3 (x-2)^2),  x = 2^-m,  L = log 2,
// with log x replaced by the exact -mL. b_0 is the removable-singularity
// limit 37/(12L) - 4.
PrecFloat b_coefficient(int m, const PrecisionConfig& cfg);

// The same closed expression at an arbitrary real x in (0, 1) U (1, 2) U (2, inf),
// using a genuine log(x). Loses roughly 3*log10(1/|x-1|) digits to
// cancellation near x = 1; the working precision absorbs that for the
// distances used in practice.
PrecFloat b_expression(const Real& x, const PrecisionConfig& cfg);

// Limits of b_m: m -> infinity gives (20 - 16L)/(16L); m = 0 gives 37/(12L) - 4.
PrecFloat b_limit_at_infinity(const PrecisionConfig& cfg);
PrecFloat b_zero_limit(const PrecisionConfig& cfg);

struct AsymptoticConstant {
    PrecFloat value;
    int truncation_index = 0;  // last m included in the sum
    Real tail_bound;           // bound on the omitted terms
};

// Leading constant C = (1/Q_inf) sum_{m>=0} a_{m+1} b_m of l_N ~ C N.
//
// The sum stops at the first M whose tail bound drops below
// 10^-(digits + guard_digits). The bound uses |a_{m+1}| <= 2^{-m(m+1)/2}/Q_inf
// and |b_m| <= 2 max(|b_1|, ..., |b_20|, |b_inf|) for m >= 1.
AsymptoticConstant protected_constant(const PrecisionConfig& cfg);

// Sum over m = 0..last_index only; tail_bound is the same analytic bound.
AsymptoticConstant protected_constant_truncated(int last_index, const PrecisionConfig& cfg);

struct IndexRange {
    int first = 1;
    int last = 40;
};

// Truncated Fourier series for the periodic fluctuation, summed term by
// term:
//
//   delta(x) = (1/Q_inf) sum_{0<|l|<=l_max} sum_{m in range} a_{m+1}
//              l pi 2^m / (2 L^2 (2^m-1)^2 (2^{m+1}-1))
//              [i L (7 - 15 2^m + 10 4^m) - 2 pi l (2^{m+1}-1)] e^{-2 pi i l x}
//
// The +l and -l terms are complex conjugates and are summed in pairs, so
// the result is real. Diagnostic grade only: the m = 0 term is singular
// (rejected here) and the printed coefficients grow like l^2, so the
// l-sum does not converge as l_max grows.
PrecFloat delta_fourier(const Real& x, int l_max, IndexRange m_range, const PrecisionConfig& cfg);

struct ResidualRow {
    int N = 0;
    PrecFloat exact_ratio;  // l_N / N
    PrecFloat constant;
    PrecFloat residual;     // exact_ratio - constant
    double log2n_frac = 0;  // fractional part of log2 N
};

// One row per entry of Ns (in the given order). Exact l_N values come from
// the binomial transform of m_n; the m_n table is built once up to max(Ns).
std::vector<ResidualRow> residual_table(std::span<const int> Ns, const PrecisionConfig& cfg);

// Same, with the constant and exact l values supplied by the caller.
std::vector<ResidualRow> residual_table(std::span<const int> Ns, const SequenceTable& l_table,
                                        const AsymptoticConstant& constant, const PrecisionConfig& cfg);

}  // namespace dstprot

#endif  // DSTPROT_ASYMPTOTICS_HPP
