#include "dstprot/qseries.hpp"

namespace dstprot {

void PrecisionConfig::validate() const {
    if (digits < 1) throw std::invalid_argument("digits must be >= 1");
    if (guard_digits < 0) throw std::invalid_argument("guard_digits must be >= 0");
    if (max_truncation_index < 1) throw std::invalid_argument("max_truncation_index must be >= 1");
}

Rational q_partial(int m) {
    if (m < 0) throw std::invalid_argument("q_partial: m must be non-negative");
    // Build numerator and denominator separately: the product of (2^k - 1)
    // over 2^{m(m+1)/2} is already in lowest terms (odd over a power of 2).
    Integer num = 1;
    for (int k = 1; k <= m; ++k) {
        Integer factor = 1;
        factor <<= k;
        num *= factor - 1;
    }
    Integer den = 1;
    den <<= static_cast<mp_bitcnt_t>(m) * (m + 1) / 2;
    Rational q(num, den);
    q.canonicalize();
    return q;
}

PrecFloat q_of_x(const Real& x, const PrecisionConfig& cfg) {
    cfg.validate();
    const Real::Bits bits = cfg.working_bits();
    const Real target = pow(Real(10L, bits), -cfg.working_digits());
    const Real one(1L, bits);
    const Real half(0.5, bits);
    const Real ax = abs(Real(x)) * one;

    Real product = one;
    for (int m = 0; m <= cfg.max_truncation_index; ++m) {
        if (m > 0) {
            product *= one - ldexp(x * one, -m);
            if (product.is_zero()) return {product, cfg.digits};
        }
        // Tail prod_{k>m}: |log tail| <= |x| 2^-m / (1 - |x| 2^-(m+1)),
        // and |e^t - 1| <= 2|t| once |t| <= 1.
        const Real next_factor = ldexp(ax, -(m + 1));
        if (next_factor >= half) continue;
        const Real log_tail = ldexp(ax, -m) / (one - next_factor);
        if (log_tail > one) continue;
        const Real err = abs(product) * ldexp(log_tail, 1);
        if (err < target) return {product, cfg.digits};
    }
    throw PrecisionError("q_of_x: truncation cap " + std::to_string(cfg.max_truncation_index) +
                         " is too small for " + std::to_string(cfg.digits) + " digits");
}

PrecFloat q_infinity(const PrecisionConfig& cfg) {
    return q_of_x(Real(1L, cfg.working_bits()), cfg);
}

Rational euler_coefficient(int m) {
    if (m < 0) throw std::invalid_argument("euler_coefficient: m must be non-negative");
    Integer scale = 1;
    scale <<= static_cast<mp_bitcnt_t>(m) * (m + 1) / 2;
    Rational a = 1 / (Rational(scale) * q_partial(m));
    return m % 2 == 0 ? a : Rational(-a);
}

PrecFloat verify_euler_identity(const Real& t, int terms, const PrecisionConfig& cfg) {
    if (terms < 1) throw std::invalid_argument("verify_euler_identity: need at least one term");
    const Real::Bits bits = cfg.working_bits();
    const PrecFloat lhs = q_of_x(t, cfg);

    const Real tt = t * Real(1L, bits);
    Real power(1L, bits);
    Real series(0L, bits);
    for (int m = 0; m < terms; ++m) {
        series += Real(euler_coefficient(m), bits) * power;
        power *= tt;
    }
    return {abs(lhs.value - series), cfg.digits};
}

}  // namespace dstprot
