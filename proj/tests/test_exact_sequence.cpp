#include <doctest.h>

#include "dstprot/exact_sequence.hpp"
#include "oracles.hpp"

using namespace dstprot;
using oracle::make;

TEST_CASE("binomial") {
    CHECK(binomial(5, 2) == 10);
    for (const int n : {0, 1, 7, 40}) CHECK(binomial(n, 0) == 1);
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(5, 6) == 0);
    CHECK_THROWS_AS(binomial(-1, 0), std::invalid_argument);

    const auto row = oracle::pascal_row(500);
    const Integer c = binomial(500, 250);
    CHECK(c == row[250]);
    CHECK(c.get_str().size() == 150);
    for (int k = 0; k <= 500; k += 37) CHECK(binomial(500, k) == row[k]);
}

TEST_CASE("l_sequence_recursion initial values") {
    const auto t = l_sequence_recursion(3);
    CHECK(t.kind == SequenceKind::L_SEQUENCE);
    CHECK(t.method == SequenceMethod::RECURSION);
    REQUIRE(t.values.size() == 4);
    CHECK(t.values[0] == 0);
    CHECK(t.values[1] == 0);
    CHECK(t.values[2] == 0);
    CHECK(t.values[3] == make(1, 2));

    CHECK(l_sequence_recursion(4).values[4] == make(3, 8));
    CHECK(l_sequence_recursion(0).values.size() == 1);
    CHECK_THROWS_AS(l_sequence_recursion(-1), std::invalid_argument);
}

TEST_CASE("l_sequence_recursion matches the plain rational recursion") {
    const auto fast = l_sequence_recursion(80);
    const auto plain = oracle::l_plain(80);
    CHECK(fast.values == plain);
}

TEST_CASE("m_sequence_recursion small values") {
    const auto t = m_sequence_recursion(4);
    CHECK(t.kind == SequenceKind::M_SEQUENCE);
    CHECK(t.values[0] == 0);
    CHECK(t.values[1] == 0);
    CHECK(t.values[2] == 0);
    CHECK(t.values[3] == make(1, 2));
    CHECK(t.values[4] == make(-13, 8));
}

TEST_CASE("m_closed_form") {
    CHECK(m_closed_form(2) == 0);
    CHECK(m_closed_form(3) == make(1, 2));
    CHECK(m_closed_form(4) == make(-13, 8));
    CHECK_THROWS_AS(m_closed_form(1), std::invalid_argument);
}

TEST_CASE("l_from_m") {
    const auto m = m_sequence_recursion(10);
    CHECK(l_from_m(m, 2) == 0);
    CHECK(l_from_m(m, 3) == make(1, 2));
    CHECK(l_from_m(m, 4) == make(3, 8));
    CHECK_THROWS_AS(l_from_m(m, 11), std::out_of_range);
    CHECK_THROWS_AS(l_from_m(l_sequence_recursion(10), 4), std::invalid_argument);
}

TEST_CASE("l_closed_form") {
    CHECK(l_closed_form(0) == 0);
    CHECK(l_closed_form(1) == 0);
    CHECK(l_closed_form(2) == 0);
    CHECK(l_closed_form(3) == make(1, 2));
    CHECK(l_closed_form(4) == make(3, 8));
}

TEST_CASE("three exact routes agree for N <= 200") {
    const int N = 200;
    const auto rec = l_sequence_recursion(N);
    const auto m = m_sequence_recursion(N);
    const auto table = l_closed_form_table(N);
    for (int n = 0; n <= N; ++n) {
        CAPTURE(n);
        CHECK(l_from_m(m, n) == rec.values[n]);
        CHECK(table.values[n] == rec.values[n]);
        if (n % 10 == 0 || n < 12) CHECK(l_closed_form(n) == rec.values[n]);
        if (n >= 2) CHECK(m_closed_form(n) == m.values[n]);
    }
    CHECK(l_sequence_binomial_transform(N).values == rec.values);
}

TEST_CASE("sequence shape properties") {
    const int N = 300;
    const auto l = l_sequence_recursion(N).values;
    const auto m = m_sequence_recursion(N).values;

    // l_3 = 1/2 exceeds l_4 = 3/8; from n = 4 on the sequence never decreases.
    CHECK(l[4] < l[3]);
    for (int n = 4; n < N; ++n) CHECK(l[n] <= l[n + 1]);

    for (int n = 0; n <= N; ++n) {
        CHECK(l[n] >= 0);
        CHECK(l[n] <= n);
        CHECK(has_dyadic_denominator(l[n]));
        CHECK(has_dyadic_denominator(m[n]));
    }
    CHECK_FALSE(has_dyadic_denominator(make(1, 3)));
}

TEST_CASE("l_N / N stays between 0.30 and 0.32 for 100 <= N <= 2000") {
    const int N = 2000;
    const auto m = m_sequence_recursion(N);
    for (int n = 100; n <= N; n += 95) {
        const double ratio = Rational(l_from_m(m, n) / n).get_d();
        CAPTURE(n);
        CHECK(ratio > 0.30);
        CHECK(ratio < 0.32);
    }
}
