#include "dstprot/real.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dstprot {

namespace {

std::string take_mpfr_string(char* raw) {
    if (raw == nullptr) throw std::runtime_error("mpfr formatting failed");
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
}

void widen_to(mpfr_ptr target, mpfr_prec_t bits) {
    if (mpfr_get_prec(target) < bits) mpfr_prec_round(target, bits, MPFR_RNDN);
}

}  // namespace

Real::Bits bits_for_digits(int decimal_digits) {
    const int d = std::max(decimal_digits, 1);
    return static_cast<Real::Bits>(std::ceil(d * 3.321928094887362)) + 16;
}

Real::Real(Bits bits) {
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

Real::Real(long v, Bits bits) {
    mpfr_init2(value_, bits);
    mpfr_set_si(value_, v, MPFR_RNDN);
}

Real::Real(double v, Bits bits) {
    mpfr_init2(value_, bits);
    mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(const Rational& q, Bits bits) {
    mpfr_init2(value_, bits);
    mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Integer& z, Bits bits) {
    mpfr_init2(value_, bits);
    mpfr_set_z(value_, z.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const std::string& decimal, Bits bits) {
    mpfr_init2(value_, bits);
    char* end = nullptr;
    mpfr_strtofr(value_, decimal.c_str(), &end, 10, MPFR_RNDN);
    if (decimal.empty() || end == nullptr || *end != '\0') {
        mpfr_clear(value_);
        throw std::invalid_argument("not a decimal number: '" + decimal + "'");
    }
}

Real::Real(const Real& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    // Leave `other` as a valid minimal-precision zero.
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::pi(Bits bits) {
    Real r(bits);
    mpfr_const_pi(r.value_, MPFR_RNDN);
    return r;
}

Real Real::ln2(Bits bits) {
    Real r(bits);
    mpfr_const_log2(r.value_, MPFR_RNDN);
    return r;
}

Real& Real::operator+=(const Real& rhs) {
    widen_to(value_, rhs.precision());
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs) {
    widen_to(value_, rhs.precision());
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs) {
    widen_to(value_, rhs.precision());
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs) {
    widen_to(value_, rhs.precision());
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(long rhs) {
    mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
    return *this;
}

Real& Real::operator+=(long rhs) {
    mpfr_add_si(value_, value_, rhs, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real r(*this);
    mpfr_neg(r.value_, r.value_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

std::string Real::to_fixed(int places) const {
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%.*RNf", std::max(places, 0), value_);
    return take_mpfr_string(raw);
}

std::string Real::to_scientific(int significant) const {
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%.*RNe", std::max(significant - 1, 0), value_);
    return take_mpfr_string(raw);
}

Real abs(Real x) {
    mpfr_abs(x.get(), x.get(), MPFR_RNDN);
    return x;
}

Real log(Real x) {
    mpfr_log(x.get(), x.get(), MPFR_RNDN);
    return x;
}

Real exp(Real x) {
    mpfr_exp(x.get(), x.get(), MPFR_RNDN);
    return x;
}

Real sin(Real x) {
    mpfr_sin(x.get(), x.get(), MPFR_RNDN);
    return x;
}

Real cos(Real x) {
    mpfr_cos(x.get(), x.get(), MPFR_RNDN);
    return x;
}

Real sqrt(Real x) {
    mpfr_sqrt(x.get(), x.get(), MPFR_RNDN);
    return x;
}

Real ldexp(Real x, long exponent) {
    mpfr_mul_2si(x.get(), x.get(), exponent, MPFR_RNDN);
    return x;
}

Real pow(Real x, long exponent) {
    mpfr_pow_si(x.get(), x.get(), exponent, MPFR_RNDN);
    return x;
}

}  // namespace dstprot
