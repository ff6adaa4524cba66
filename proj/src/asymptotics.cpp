#include "dstprot/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dstprot {

namespace {

// B(x) with log(x) supplied separately so callers can pass -mL exactly.
Real b_numerator(const Real& x, const Real& log_x, const Real& ln2) {
    const Real one(1L, x.precision());
    const Real one_minus = one - x;
    const Real x2 = x * x;
    const Real x3 = x2 * x;
    const Real x4 = x3 * x;
    Real out = 16L * ln2 * one_minus * one_minus * one_minus;
    out += Real(-20L, x.precision()) + 60L * x - 69L * x2 + 36L * x3 - 7L * x4;
    out += log_x * (-8L * x + 12L * x2 - 10L * x3 + 4L * x4);
    return out;
}

Real b_from_parts(const Real& x, const Real& log_x, const Real& ln2) {
    const Real xm1 = x - 1L;
    const Real xm2 = x - 2L;
    return b_numerator(x, log_x, ln2) / (4L * ln2 * xm1 * xm1 * xm1 * xm2 * xm2);
}

Real b_value(int m, Real::Bits bits, const Real& ln2) {
    if (m == 0) return Real(37L, bits) / (12L * ln2) - 4L;
    const Real x = ldexp(Real(1L, bits), -m);
    return b_from_parts(x, -(static_cast<long>(m) * ln2), ln2);
}

// sum_{m > last} 2^{-m(m+1)/2} <= 2 * 2^{-(last+1)(last+2)/2}
Real tail_bound_after(int last, const Real& b_max, const Real& q_inf) {
    const long e = static_cast<long>(last + 1) * (last + 2) / 2;
    return ldexp(b_max / (q_inf * q_inf), 1 - e);
}

Real b_bound(const PrecisionConfig& cfg, const Real& ln2) {
    Real b_max = abs(b_limit_at_infinity(cfg).value);
    for (int m = 1; m <= 20; ++m) {
        const Real b = abs(b_value(m, cfg.working_bits(), ln2));
        if (b > b_max) b_max = b;
    }
    return ldexp(b_max, 1);
}

AsymptoticConstant constant_sum(int last_index, const PrecisionConfig& cfg, const Real& ln2, const Real& q_inf,
                                const Real& b_max) {
    const Real::Bits bits = cfg.working_bits();
    Real sum(0L, bits);
    for (int m = 0; m <= last_index; ++m)
        sum += Real(euler_coefficient(m), bits) * b_value(m, bits, ln2);
    return {PrecFloat{sum / q_inf, cfg.digits}, last_index, tail_bound_after(last_index, b_max, q_inf)};
}

}  // namespace

PrecFloat b_coefficient(int m, const PrecisionConfig& cfg) {
    cfg.validate();
    if (m < 0) throw std::invalid_argument("b_coefficient: m must be non-negative");
    const Real::Bits bits = cfg.working_bits();
    return {b_value(m, bits, Real::ln2(bits)), cfg.digits};
}

PrecFloat b_expression(const Real& x, const PrecisionConfig& cfg) {
    cfg.validate();
    const Real::Bits bits = std::max(cfg.working_bits(), x.precision());
    const Real xx = x * Real(1L, bits);
    if (xx.sign() <= 0) throw std::domain_error("b_expression: x must be positive");
    if (xx == Real(1L, bits) || xx == Real(2L, bits))
        throw std::domain_error("b_expression: singular at x = 1 and x = 2");
    const Real ln2 = Real::ln2(bits);
    return {b_from_parts(xx, log(xx), ln2), cfg.digits};
}

PrecFloat b_limit_at_infinity(const PrecisionConfig& cfg) {
    cfg.validate();
    const Real ln2 = Real::ln2(cfg.working_bits());
    return {(20L - 16L * ln2) / (16L * ln2), cfg.digits};
}

PrecFloat b_zero_limit(const PrecisionConfig& cfg) {
    cfg.validate();
    return b_coefficient(0, cfg);
}

AsymptoticConstant protected_constant_truncated(int last_index, const PrecisionConfig& cfg) {
    cfg.validate();
    if (last_index < 0) throw std::invalid_argument("protected_constant_truncated: negative index");
    const Real ln2 = Real::ln2(cfg.working_bits());
    const Real q_inf = q_infinity(cfg).value;
    return constant_sum(last_index, cfg, ln2, q_inf, b_bound(cfg, ln2));
}

AsymptoticConstant protected_constant(const PrecisionConfig& cfg) {
    cfg.validate();
    const Real::Bits bits = cfg.working_bits();
    const Real ln2 = Real::ln2(bits);
    const Real q_inf = q_infinity(cfg).value;
    const Real b_max = b_bound(cfg, ln2);
    const Real target = pow(Real(10L, bits), -cfg.working_digits());

    for (int last = 0; last <= cfg.max_truncation_index; ++last) {
        if (tail_bound_after(last, b_max, q_inf) < target) return constant_sum(last, cfg, ln2, q_inf, b_max);
    }
    throw PrecisionError("protected_constant: truncation cap " + std::to_string(cfg.max_truncation_index) +
                         " is too small for " + std::to_string(cfg.digits) + " digits");
}

PrecFloat delta_fourier(const Real& x, int l_max, IndexRange m_range, const PrecisionConfig& cfg) {
    cfg.validate();
    if (l_max < 0) throw std::invalid_argument("delta_fourier: l_max must be non-negative");
    if (m_range.first > m_range.last) throw std::invalid_argument("delta_fourier: empty m range");
    if (m_range.first <= 0)
        throw std::domain_error("delta_fourier: the m = 0 term divides by (2^0 - 1)^2 = 0; use m >= 1");
    if (m_range.last > cfg.max_truncation_index)
        throw std::invalid_argument("delta_fourier: m range exceeds the truncation cap");

    const Real::Bits bits = cfg.working_bits();
    const Real ln2 = Real::ln2(bits);
    const Real pi = Real::pi(bits);
    const Real q_inf = q_infinity(cfg).value;
    const Real xx = x * Real(1L, bits);

    // Per-m factors that do not depend on l.
    struct MTerm {
        Real scale;     // a_{m+1} pi 2^m / (2 L^2 (2^m-1)^2 (2^{m+1}-1))
        Real imag;      // L (7 - 15 2^m + 10 4^m)
        Real r;         // 2^{m+1} - 1
    };
    std::vector<MTerm> terms;
    for (int m = m_range.first; m <= m_range.last; ++m) {
        const Real p = ldexp(Real(1L, bits), m);
        const Real pm1 = p - 1L;
        const Real r = ldexp(p, 1) - 1L;
        Real scale = Real(euler_coefficient(m), bits) * pi * p / (2L * ln2 * ln2 * pm1 * pm1 * r);
        Real imag = ln2 * (Real(7L, bits) - 15L * p + 10L * p * p);
        terms.push_back({std::move(scale), std::move(imag), r});
    }

    Real sum(0L, bits);
    for (int l = 1; l <= l_max; ++l) {
        const Real theta = 2L * pi * static_cast<long>(l) * xx;
        const Real c = cos(theta);
        const Real s = sin(theta);
        // c_l e^{-i theta} + conj(c_l) e^{i theta} = 2 Re(c_l e^{-i theta}),
        // c_l = l * scale * (-2 pi l r + i imag).
        for (const auto& t : terms) {
            const Real re = -(2L * pi * static_cast<long>(l) * t.r);
            sum += 2L * static_cast<long>(l) * t.scale * (re * c + t.imag * s);
        }
    }
    return {sum / q_inf, cfg.digits};
}

namespace {

ResidualRow make_row(int n, const Rational& l_n, const AsymptoticConstant& constant, const PrecisionConfig& cfg) {
    const Real::Bits bits = cfg.working_bits();
    Real ratio = Real(l_n, bits) / Real(static_cast<long>(n), bits);
    Real residual = ratio - constant.value.value;
    const double lg = std::log2(static_cast<double>(n));
    return {n, PrecFloat{std::move(ratio), cfg.digits}, constant.value, PrecFloat{std::move(residual), cfg.digits},
            lg - std::floor(lg)};
}

void check_sizes(std::span<const int> Ns) {
    for (const int n : Ns)
        if (n < 1) throw std::invalid_argument("residual_table: N must be >= 1");
}

}  // namespace

std::vector<ResidualRow> residual_table(std::span<const int> Ns, const SequenceTable& l_table,
                                        const AsymptoticConstant& constant, const PrecisionConfig& cfg) {
    if (l_table.kind != SequenceKind::L_SEQUENCE)
        throw std::invalid_argument("residual_table: table does not hold l_n values");
    check_sizes(Ns);
    std::vector<ResidualRow> rows;
    rows.reserve(Ns.size());
    for (const int n : Ns) {
        if (n > l_table.max_index())
            throw std::out_of_range("residual_table: no exact value for N = " + std::to_string(n));
        rows.push_back(make_row(n, l_table.values[n], constant, cfg));
    }
    return rows;
}

std::vector<ResidualRow> residual_table(std::span<const int> Ns, const PrecisionConfig& cfg) {
    if (Ns.empty()) return {};
    check_sizes(Ns);
    const int max_n = *std::max_element(Ns.begin(), Ns.end());
    const SequenceTable m = m_sequence_recursion(max_n);
    const AsymptoticConstant constant = protected_constant(cfg);
    std::vector<ResidualRow> rows;
    rows.reserve(Ns.size());
    for (const int n : Ns) rows.push_back(make_row(n, l_from_m(m, n), constant, cfg));
    return rows;
}

}  // namespace dstprot
