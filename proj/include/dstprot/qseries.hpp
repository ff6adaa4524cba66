#ifndef DSTPROT_QSERIES_HPP
#define DSTPROT_QSERIES_HPP

#include <stdexcept>
#include <string>

#include "dstprot/real.hpp"

namespace dstprot {

// Precision request shared by every floating-point routine.
//
// `digits` is the number of decimal places the caller wants in the final
// answer; `guard_digits` extra digits are carried internally and the result
// is rounded once at the end. `max_truncation_index` caps how many factors
// or series terms a routine may use before it gives up.
struct PrecisionConfig {
    int digits = 30;
    int guard_digits = 15;
    int max_truncation_index = 100000;

    void validate() const;
    int working_digits() const { return digits + guard_digits; }
    Real::Bits working_bits() const { return bits_for_digits(working_digits()); }
};

// A high-precision value together with the number of decimal places it is
// certified to (absolute error below 10^-digits).
struct PrecFloat {
    Real value;
    int digits = 0;

    std::string str() const { return value.to_fixed(digits); }
    double to_double() const { return value.to_double(); }
};

// Raised when a truncated product or series cannot reach the requested
// accuracy within PrecisionConfig::max_truncation_index terms.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// prod_{k=1..m} (1 - 2^-k), exactly. Q_0 = 1.
Rational q_partial(int m);

// prod_{k>=1} (1 - 2^-k) with absolute error below 10^-cfg.digits.
PrecFloat q_infinity(const PrecisionConfig& cfg);

// prod_{k>=1} (1 - x 2^-k) for real x.
PrecFloat q_of_x(const Real& x, const PrecisionConfig& cfg);

// Power-series coefficient a_{m+1} of Q(t) = sum_{m>=0} a_{m+1} t^m:
// (-1)^m 2^{-m(m+1)/2} / Q_m.
Rational euler_coefficient(int m);

// |Q(t) - sum_{m<terms} a_{m+1} t^m| evaluated at working precision.
// Diagnostic for the Euler partition identity.
PrecFloat verify_euler_identity(const Real& t, int terms, const PrecisionConfig& cfg);

}  // namespace dstprot

#endif  // DSTPROT_QSERIES_HPP
