#ifndef DSTPROT_EXACT_SEQUENCE_HPP
#define DSTPROT_EXACT_SEQUENCE_HPP

#include <vector>

#include "dstprot/real.hpp"

namespace dstprot {

enum class SequenceKind { L_SEQUENCE, M_SEQUENCE };
enum class SequenceMethod { RECURSION, CLOSED_FORM, BINOMIAL_TRANSFORM };

// Exact values of l_n (mean number of 2-protected nodes in a random DST of
// size n) or of m_n (coefficients of its Poisson generating function),
// indexed from 0.
struct SequenceTable {
    SequenceKind kind;
    SequenceMethod method;
    std::vector<Rational> values;

    int max_index() const { return static_cast<int>(values.size()) - 1; }
};

Integer binomial(int n, int k);

// l_0..l_N from the split recursion
//   l_{n+1} = 1 + 2^{1-n} sum_k C(n,k) l_k - n 2^{1-n},   n >= 3,
// seeded with l_0 = l_1 = l_2 = 0, l_3 = 1/2.
//
// Cost is O(N^2) big-number operations on numerators of O(N^2) bits; the
// sum for each n is accumulated over a common power-of-two denominator so
// no gcd work happens inside the inner loop.
SequenceTable l_sequence_recursion(int N);

// m_0..m_N with m_0 = m_1 = 0 and, for n >= 1,
//   m_{n+1} = -(1 - 2^{1-n}) m_n + n(-1)^n 2^{1-n} - (-1)^n + n(n-1)/4 (-1)^n.
SequenceTable m_sequence_recursion(int N);

// m_N = Q_{N-2} (-1)^N sum_{n=1}^{N-2} (1 - (n+1)2^-n - n(n+1)/4) / Q_n.
// Requires N >= 2.
Rational m_closed_form(int N);

// l_N = sum_{k=2}^N C(N,k) m_k from an M_SEQUENCE table.
Rational l_from_m(const SequenceTable& m_table, int N);

// l_0..l_N through the binomial transform of m_sequence_recursion. Only
// O(N^2) operations in total, which makes it the practical route for
// N in the thousands.
SequenceTable l_sequence_binomial_transform(int N);

// The explicit double sum
//   l_N = sum_{k=2}^N C(N,k) (-1)^k Q_{k-2} sum_{n=1}^{k-2} (1 - (n+1)2^-n - n(n+1)/4) / Q_n,
// evaluated entirely in rationals. l_0 = l_1 = 0 (empty sum).
Rational l_closed_form(int N);

// l_0..l_N from the same double sum, sharing the inner sums across N.
SequenceTable l_closed_form_table(int N);

// True when the denominator of q is a power of two.
bool has_dyadic_denominator(const Rational& q);

}  // namespace dstprot

#endif  // DSTPROT_EXACT_SEQUENCE_HPP
