#include "dstprot/exact_sequence.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>

namespace dstprot {

namespace {

Rational fraction(long numerator, long denominator) {
    Rational q(numerator, denominator);
    q.canonicalize();
    return q;
}

Rational dyadic(long numerator, unsigned long exponent) {
    Integer den = 1;
    den <<= exponent;
    Rational q(Integer(numerator), den);
    q.canonicalize();
    return q;
}

// 1 - (n+1) 2^-n - n(n+1)/4, the summand numerator shared by both closed forms.
Rational closed_form_numerator(int n) {
    return Rational(1) - dyadic(n + 1, static_cast<unsigned long>(n)) - fraction(n * (n + 1), 4);
}

unsigned long dyadic_exponent(const Rational& q) {
    // Caller guarantees a power-of-two denominator.
    return mpz_sizeinbase(q.get_den_mpz_t(), 2) - 1;
}

// sum_k C(n,k) values[k] for k in [first, n]. Values with power-of-two
// denominators (the only kind the sequences here produce) are accumulated
// over one common denominator; anything else falls back to plain rationals.
Rational binomial_weighted_sum(int n, int first, std::span<const Rational> values) {
    bool dyadic_only = true;
    unsigned long common = 0;
    for (int k = first; k <= n; ++k) {
        if (!has_dyadic_denominator(values[k])) {
            dyadic_only = false;
            break;
        }
        common = std::max(common, dyadic_exponent(values[k]));
    }

    Integer c = 1;  // C(n, k), advanced incrementally
    for (int k = 0; k < first; ++k) {
        c *= n - k;
        c /= k + 1;
    }
    if (!dyadic_only) {
        Rational out = 0;
        for (int k = first; k <= n; ++k) {
            out += Rational(c) * values[k];
            c *= n - k;
            c /= k + 1;
        }
        return out;
    }

    Integer sum = 0;
    Integer term;
    for (int k = first; k <= n; ++k) {
        if (values[k] != 0) {
            mpz_mul(term.get_mpz_t(), c.get_mpz_t(), values[k].get_num_mpz_t());
            mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), common - dyadic_exponent(values[k]));
            sum += term;
        }
        c *= n - k;
        c /= k + 1;
    }
    Integer den = 1;
    den <<= common;
    Rational out(sum, den);
    out.canonicalize();
    return out;
}

void require_non_negative(int N, const char* what) {
    if (N < 0) throw std::invalid_argument(std::string(what) + ": N must be non-negative");
}

}  // namespace

Integer binomial(int n, int k) {
    if (n < 0) throw std::invalid_argument("binomial: n must be non-negative");
    if (k < 0 || k > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

bool has_dyadic_denominator(const Rational& q) {
    const mpz_srcptr den = q.get_den_mpz_t();
    return mpz_scan1(den, 0) == mpz_sizeinbase(den, 2) - 1;
}

SequenceTable l_sequence_recursion(int N) {
    require_non_negative(N, "l_sequence_recursion");
    SequenceTable table{SequenceKind::L_SEQUENCE, SequenceMethod::RECURSION, {}};
    auto& l = table.values;
    l.assign(static_cast<std::size_t>(N) + 1, Rational(0));
    if (N >= 3) l[3] = Rational(1, 2);

    std::vector<Integer> row{1};  // C(n, .) for the current n
    for (int n = 1; n <= 3 && n < N; ++n) {
        std::vector<Integer> next(row.size() + 1);
        next.front() = next.back() = 1;
        for (std::size_t k = 1; k < row.size(); ++k) next[k] = row[k - 1] + row[k];
        row = std::move(next);
    }

    for (int n = 3; n < N; ++n) {
        unsigned long common = 0;
        for (int k = 0; k <= n; ++k) common = std::max(common, dyadic_exponent(l[k]));

        Integer sum = 0;
        Integer term;
        for (int k = 0; k <= n; ++k) {
            if (l[k] == 0) continue;
            mpz_mul(term.get_mpz_t(), row[k].get_mpz_t(), l[k].get_num_mpz_t());
            mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), common - dyadic_exponent(l[k]));
            sum += term;
        }

        // l_{n+1} = ((2^{n-1} - n) 2^common + sum) / 2^{common + n - 1}
        Integer head = 1;
        head <<= static_cast<unsigned long>(n - 1);
        head -= n;
        head <<= common;
        Integer den = 1;
        den <<= common + static_cast<unsigned long>(n - 1);
        Rational next_value(head + sum, den);
        next_value.canonicalize();
        l[n + 1] = std::move(next_value);

        std::vector<Integer> next(row.size() + 1);
        next.front() = next.back() = 1;
        for (std::size_t k = 1; k < row.size(); ++k) next[k] = row[k - 1] + row[k];
        row = std::move(next);
    }
    return table;
}

SequenceTable m_sequence_recursion(int N) {
    require_non_negative(N, "m_sequence_recursion");
    SequenceTable table{SequenceKind::M_SEQUENCE, SequenceMethod::RECURSION, {}};
    auto& m = table.values;
    m.assign(static_cast<std::size_t>(N) + 1, Rational(0));
    for (int n = 1; n < N; ++n) {
        const int sign = n % 2 == 0 ? 1 : -1;
        const Rational two_pow = dyadic(1, static_cast<unsigned long>(n - 1));  // 2^{1-n}
        Rational next = -(Rational(1) - two_pow) * m[n];
        next += sign * (n * two_pow - 1 + fraction(n * (n - 1), 4));
        m[n + 1] = std::move(next);
    }
    return table;
}

Rational m_closed_form(int N) {
    if (N < 2) throw std::invalid_argument("m_closed_form: N must be >= 2");
    Rational q = 1;  // Q_n as n advances
    Rational inner = 0;
    for (int n = 1; n <= N - 2; ++n) {
        q *= Rational(1) - dyadic(1, static_cast<unsigned long>(n));
        inner += closed_form_numerator(n) / q;
    }
    // q now holds Q_{N-2}
    Rational out = q * inner;
    return N % 2 == 0 ? out : Rational(-out);
}

Rational l_from_m(const SequenceTable& m_table, int N) {
    require_non_negative(N, "l_from_m");
    if (m_table.kind != SequenceKind::M_SEQUENCE)
        throw std::invalid_argument("l_from_m: table does not hold m_n values");
    if (m_table.max_index() < N)
        throw std::out_of_range("l_from_m: table covers indices up to " + std::to_string(m_table.max_index()) +
                                ", need " + std::to_string(N));
    return binomial_weighted_sum(N, 2, m_table.values);
}

SequenceTable l_sequence_binomial_transform(int N) {
    require_non_negative(N, "l_sequence_binomial_transform");
    const SequenceTable m = m_sequence_recursion(N);
    SequenceTable table{SequenceKind::L_SEQUENCE, SequenceMethod::BINOMIAL_TRANSFORM, {}};
    table.values.reserve(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) table.values.push_back(l_from_m(m, n));
    return table;
}

SequenceTable l_closed_form_table(int N) {
    require_non_negative(N, "l_closed_form_table");
    // Signed inner terms (-1)^k Q_{k-2} sum_{n=1}^{k-2} (...) / Q_n, shared by every N.
    std::vector<Rational> inner_terms(static_cast<std::size_t>(N) + 1, Rational(0));
    Rational q = 1;
    Rational inner = 0;
    for (int k = 3; k <= N; ++k) {
        const int n = k - 2;
        q *= Rational(1) - dyadic(1, static_cast<unsigned long>(n));
        inner += closed_form_numerator(n) / q;
        inner_terms[k] = k % 2 == 0 ? Rational(q * inner) : Rational(-(q * inner));
    }
    SequenceTable table{SequenceKind::L_SEQUENCE, SequenceMethod::CLOSED_FORM, {}};
    table.values.reserve(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) table.values.push_back(n < 2 ? Rational(0) : binomial_weighted_sum(n, 2, inner_terms));
    return table;
}

Rational l_closed_form(int N) {
    require_non_negative(N, "l_closed_form");
    Rational out = 0;
    Rational q = 1;      // Q_{k-2}
    Rational inner = 0;  // sum_{n=1}^{k-2} (...) / Q_n
    for (int k = 3; k <= N; ++k) {
        const int n = k - 2;
        q *= Rational(1) - dyadic(1, static_cast<unsigned long>(n));
        inner += closed_form_numerator(n) / q;
        const Rational term = Rational(binomial(N, k)) * q * inner;
        if (k % 2 == 0)
            out += term;
        else
            out -= term;
    }
    return out;
}

}  // namespace dstprot
