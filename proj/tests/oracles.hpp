// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the routines it is used to check.
#ifndef DSTPROT_TESTS_ORACLES_HPP
#define DSTPROT_TESTS_ORACLES_HPP

#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "dstprot/real.hpp"

namespace oracle {

using dstprot::Integer;
using dstprot::Rational;
using dstprot::Real;

inline Rational make(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

// Pascal's triangle row n.
inline std::vector<Integer> pascal_row(int n) {
    std::vector<Integer> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<Integer> next(row.size() + 1, 1);
        for (std::size_t k = 1; k < row.size(); ++k) next[k] = row[k - 1] + row[k];
        row = std::move(next);
    }
    return row;
}

// prod_{k=1..terms} (1 - x 2^-k) in exact rationals.
inline Rational truncated_product(const Rational& x, int terms) {
    Rational out = 1;
    Rational p = 1;
    for (int k = 1; k <= terms; ++k) {
        p /= 2;
        out *= 1 - x * p;
    }
    return out;
}

// l_n by the textbook recursion, plain rationals throughout.
inline std::vector<Rational> l_plain(int N) {
    std::vector<Rational> l(static_cast<std::size_t>(N) + 1, Rational(0));
    if (N >= 3) l[3] = make(1, 2);
    for (int n = 3; n < N; ++n) {
        const auto row = pascal_row(n);
        Rational s = 0;
        for (int k = 0; k <= n; ++k) s += Rational(row[k]) * l[k];
        Rational scale = 1;
        for (int i = 0; i < n - 1; ++i) scale /= 2;  // 2^{1-n}
        l[n + 1] = 1 + scale * s - n * scale;
    }
    return l;
}

// Random DST shapes under the split model, enumerated exhaustively.
struct Shape {
    std::shared_ptr<const Shape> left;
    std::shared_ptr<const Shape> right;
};
using ShapePtr = std::shared_ptr<const Shape>;

inline bool is_leaf(const ShapePtr& s) { return s && !s->left && !s->right; }

// A node is 2-protected when it has a child and none of its children is a leaf.
inline int count_protected2(const ShapePtr& s) {
    if (!s) return 0;
    const bool has_child = s->left || s->right;
    const bool self = has_child && !is_leaf(s->left) && !is_leaf(s->right);
    return (self ? 1 : 0) + count_protected2(s->left) + count_protected2(s->right);
}

struct WeightedShape {
    ShapePtr shape;
    Rational probability;
};

// All shapes of size n with their probabilities: one item at the root, the
// remaining n-1 split (i, n-1-i) with probability C(n-1,i) 2^{-(n-1)}.
inline std::vector<WeightedShape> enumerate_shapes(int n) {
    static std::map<int, std::vector<WeightedShape>> memo;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::vector<WeightedShape> out;
    if (n == 0) {
        out.push_back({nullptr, 1});
    } else {
        const auto row = pascal_row(n - 1);
        Rational half_power = 1;
        for (int i = 0; i < n - 1; ++i) half_power /= 2;
        for (int i = 0; i <= n - 1; ++i) {
            const Rational split = Rational(row[i]) * half_power;
            for (const auto& l : enumerate_shapes(i))
                for (const auto& r : enumerate_shapes(n - 1 - i))
                    out.push_back({std::make_shared<const Shape>(Shape{l.shape, r.shape}),
                                   split * l.probability * r.probability});
        }
    }
    memo[n] = out;
    return out;
}

// Exact distribution of the 2-protected count at size n.
inline std::map<int, Rational> protected2_distribution(int n) {
    std::map<int, Rational> dist;
    for (const auto& ws : enumerate_shapes(n)) dist[count_protected2(ws.shape)] += ws.probability;
    return dist;
}

inline Rational protected2_expectation(int n) {
    Rational e = 0;
    for (const auto& [count, p] : protected2_distribution(n)) e += count * p;
    return e;
}

// b(x) rewritten as -4/(x-2)^2 + [poly(x) + x log x (-8 + 12x - 10x^2 + 4x^3)] / (4L (x-1)^3 (x-2)^2),
// i.e. with the 16L(1-x)^3 part of B cancelled against the denominator.
inline Real b_factored(const Real& x, const Real& log_x) {
    const Real ln2 = Real::ln2(x.precision());
    const Real xm1 = x - 1L;
    const Real xm2 = x - 2L;
    const Real poly = Real(-20L, x.precision()) + x * (60L + x * (-69L + x * (36L + x * -7L)));
    const Real logs = x * log_x * (Real(-8L, x.precision()) + x * (12L + x * (-10L + x * 4L)));
    return Real(-4L, x.precision()) / (xm2 * xm2) + (poly + logs) / (4L * ln2 * xm1 * xm1 * xm1 * xm2 * xm2);
}

// Unpaired complex evaluation of the displayed Fourier double sum (both
// signs of l summed separately), in long double. Returns the full complex
// value so tests can confirm the imaginary part cancels.
inline std::complex<long double> delta_complex(long double x, int l_max, int m_first, int m_last) {
    const long double L = std::log(2.0L);
    const long double pi = std::acos(-1.0L);
    long double q_inf = 1;
    for (int k = 1; k < 200; ++k) q_inf *= 1 - std::ldexp(1.0L, -k);
    std::complex<long double> sum = 0;
    for (int l = -l_max; l <= l_max; ++l) {
        if (l == 0) continue;
        long double q_m = 1;
        for (int m = 0; m <= m_last; ++m) {
            if (m > 0) q_m *= 1 - std::ldexp(1.0L, -m);
            if (m < m_first) continue;
            const long double a = (m % 2 ? -1.0L : 1.0L) * std::ldexp(1.0L, -m * (m + 1) / 2) / q_m;
            const long double p = std::ldexp(1.0L, m);
            const long double coeff = l * pi * p / (2 * L * L * (p - 1) * (p - 1) * (2 * p - 1));
            const std::complex<long double> bracket(-2 * pi * l * (2 * p - 1), L * (7 - 15 * p + 10 * p * p));
            sum += a * coeff * bracket * std::polar(1.0L, -2 * pi * l * x);
        }
    }
    return sum / q_inf;
}

}  // namespace oracle

#endif  // DSTPROT_TESTS_ORACLES_HPP
