#ifndef DSTPROT_REAL_HPP
#define DSTPROT_REAL_HPP

#include <compare>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace dstprot {

using Integer = mpz_class;
using Rational = mpq_class;

// Owning handle to an MPFR value. Every value carries its own precision;
// binary operations produce a result at the larger of the two operand
// precisions, rounded to nearest. Mixed operations with integers, doubles
// and rationals use the Real operand's precision.
class Real {
public:
    using Bits = mpfr_prec_t;

    explicit Real(Bits bits = 64);
    Real(long v, Bits bits);
    Real(double v, Bits bits);
    Real(const Rational& q, Bits bits);  // correctly rounded
    Real(const Integer& z, Bits bits);
    Real(const std::string& decimal, Bits bits);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    Bits precision() const { return mpfr_get_prec(value_); }
    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    static Real pi(Bits bits);
    static Real ln2(Bits bits);

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);
    Real& operator*=(long rhs);
    Real& operator+=(long rhs);

    friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
    friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
    friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
    friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
    friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
    friend Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
    friend Real operator+(Real lhs, long rhs) { return lhs += rhs; }
    friend Real operator-(Real lhs, long rhs) { return lhs += -rhs; }
    friend Real operator-(long lhs, const Real& rhs) { return Real(lhs, rhs.precision()) - rhs; }
    friend Real operator+(long lhs, Real rhs) { return rhs += lhs; }
    Real operator-() const;

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);

    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    // Fixed-point rendering with exactly `places` digits after the point,
    // rounded to nearest.
    std::string to_fixed(int places) const;
    // Scientific rendering with `significant` digits.
    std::string to_scientific(int significant) const;

private:
    mpfr_t value_;
};

Real abs(Real x);
Real log(Real x);
Real exp(Real x);
Real sin(Real x);
Real cos(Real x);
Real sqrt(Real x);
Real ldexp(Real x, long exponent);  // x * 2^exponent, exact
Real pow(Real x, long exponent);

// Binary precision carrying `decimal_digits` significant decimal digits
// plus a small fixed margin.
Real::Bits bits_for_digits(int decimal_digits);

}  // namespace dstprot

#endif  // DSTPROT_REAL_HPP
