// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "dstprot/asymptotics.hpp"
#include "dstprot/dst_sim.hpp"
#include "dstprot/exact_sequence.hpp"
#include "dstprot/qseries.hpp"
#include "oracles.hpp"

using namespace dstprot;

namespace {

constexpr double kSigmas = 3.0;                    // criteria 8, 9
constexpr double kLeafSlack = 0.002;               // criterion 9
constexpr double kBeta = 0.372046812;              // criterion 9
constexpr double kResidualFloor = 1e-4;            // criterion 10
constexpr double kResidualA = 2.0;                 // criterion 10
constexpr double kPeriodTolerance = 1e-30;         // criterion 10b
constexpr double kDeltaAmplitude = 1e-4;           // criterion 10c
constexpr double kEulerTolerance = 1e-20;          // criterion 11
constexpr int kAgreementDigits = 6;                // criterion 5
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass;
    std::string detail;
};

PrecisionConfig digits(int d) {
    PrecisionConfig cfg;
    cfg.digits = d;
    return cfg;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome initial_values() {
    const auto l = l_sequence_recursion(3).values;
    const bool ok = l[0] == 0 && l[1] == 0 && l[2] == 0 && l[3] == oracle::make(1, 2);
    return {ok, "l_0..l_3 = " + l[0].get_str() + ", " + l[1].get_str() + ", " + l[2].get_str() + ", " + l[3].get_str()};
}

Outcome route_equivalence() {
    const int N = 200;
    const auto rec = l_sequence_recursion(N);
    const auto m = m_sequence_recursion(N);
    int mismatches = 0;
    for (int n = 0; n <= N; ++n) {
        if (l_closed_form(n) != rec.values[n]) ++mismatches;
        if (l_from_m(m, n) != rec.values[n]) ++mismatches;
        if (n >= 2 && m_closed_form(n) != m.values[n]) ++mismatches;
    }
    return {mismatches == 0, "N = 0..200, " + std::to_string(mismatches) + " mismatches"};
}

Outcome spot_value() {
    const auto l = l_sequence_recursion(500).values;
    const Rational ratio = l[500] / 500;
    const std::string s = Real(ratio, 128).to_fixed(6);
    return {s == "0.305710", "l_500/500 = " + s};
}

Outcome constant() {
    const auto c = protected_constant(digits(23));
    const std::string s = c.value.str();
    return {s == "0.30707981393605921828549", "C = " + s + " (M = " + std::to_string(c.truncation_index) + ")"};
}

// Agreement to d digits: both values rounded to d decimal places coincide.
Outcome b_zero() {
    const PrecisionConfig cfg = digits(30);
    const Real b0 = b_coefficient(0, cfg).value;
    const Real ln2 = Real::ln2(256);
    const bool formula = abs(b0 - (Real(37L, 256) / (12L * ln2) - 4L)) < pow(Real(10L, 256), -28);

    bool shrinking = true;
    Real previous(1L, 256);
    std::string trail;
    std::string last;
    for (const char* x : {"0.999", "0.9999", "0.99999"}) {
        const PrecFloat b = b_expression(Real(std::string(x), 256), cfg);
        const Real err = abs(b.value - b0);
        if (!(err < previous)) shrinking = false;
        previous = err;
        trail += " " + err.to_scientific(2);
        last = b.value.to_fixed(kAgreementDigits);
    }
    const std::string target = b0.to_fixed(kAgreementDigits);
    const bool agree = last == target;
    return {formula && shrinking && agree,
            std::string("b_0 formula ") + (formula ? "ok" : "off") + "; errors" + trail + "; at 1-1e-5 " + last +
                " vs b_0 " + target};
}

Outcome brute_force() {
    const auto l = l_sequence_recursion(8).values;
    int bad = 0;
    for (int n = 0; n <= 8; ++n)
        if (oracle::protected2_expectation(n) != l[n]) ++bad;
    return {bad == 0, "n = 0..8, " + std::to_string(bad) + " mismatches"};
}

Outcome nine_key_tree() {
    const auto t = build_from_strings(read_bit_strings_file(std::string(DSTPROT_TEST_DATA) + "/nine_keys.txt"));
    std::string set;
    for (const auto i : k_protected_nodes(t, 2)) set += t.node(static_cast<std::size_t>(i)).label.value_or("?");
    const bool ok = t.render() == "A(B(C,E(F,)),D(,G(I,H)))" && count_k_protected(t, 2) == 2 && set == "AD" &&
                    count_k_protected(t, 1) == 5 && count_leaves(t) == 4;
    return {ok, t.render() + ", 2-protected {" + set + "}, 1-protected " + std::to_string(count_k_protected(t, 1)) +
                    ", leaves " + std::to_string(count_leaves(t))};
}

Outcome monte_carlo_mean() {
    const double exact = l_sequence_binomial_transform(500).values[500].get_d();
    const auto s = monte_carlo(500, 100000, kSeed, Statistic::protected_nodes(2));
    const double z = (s.mean - exact) / s.std_error;
    return {std::abs(z) <= kSigmas, "mean " + fmt("%.4f", s.mean) + " vs " + fmt("%.4f", exact) + ", z = " + fmt("%.2f", z)};
}

Outcome endnodes() {
    const int n = 2000;
    const auto s = monte_carlo(n, 10000, kSeed, Statistic::leaves());
    const double ratio = s.mean / n;
    const double tol = std::max(kSigmas * s.std_error / n, kLeafSlack);
    return {std::abs(ratio - kBeta) <= tol,
            "leaf fraction " + fmt("%.6f", ratio) + ", |diff| " + fmt("%.2e", std::abs(ratio - kBeta)) + " <= " +
                fmt("%.2e", tol)};
}

// Smallest A with |r_N| <= A/N + floor for every N, then A <= kResidualA.
Outcome residuals() {
    std::vector<int> ns;
    for (int j = 5; j <= 11; ++j) ns.push_back(1 << j);
    const auto rows = residual_table(ns, digits(30));
    double a = 0;
    for (const auto& r : rows)
        a = std::max(a, r.N * std::max(0.0, std::abs(r.residual.to_double()) - kResidualFloor));
    return {a <= kResidualA, "fitted A = " + fmt("%.4f", a)};
}

Outcome delta_periodic() {
    const PrecisionConfig cfg = digits(30);
    double worst = 0;
    for (const double x : {0.0, 0.2, 0.5, 0.8}) {
        const Real a = delta_fourier(Real(x, 256), 10, {1, 40}, cfg).value;
        const Real b = delta_fourier(Real(x, 256) + 1L, 10, {1, 40}, cfg).value;
        worst = std::max(worst, (abs(a - b) / (abs(a) + 1L)).to_double());
    }
    return {worst <= kPeriodTolerance, "relative shift error " + fmt("%.1e", worst)};
}

Outcome delta_amplitude() {
    const double d = delta_fourier(Real(0.5, 128), 10, {1, 40}, digits(30)).to_double();
    return {std::abs(d) < kDeltaAmplitude, "delta(0.5), l <= 10, m = 1..40: " + fmt("%.6g", d)};
}

Outcome euler() {
    double worst = 0;
    for (const double t : {-1.0, 0.5, 1.0})
        worst = std::max(worst, verify_euler_identity(Real(t, 256), 40, digits(25)).to_double());
    return {worst < kEulerTolerance, "max residual " + fmt("%.1e", worst)};
}

Outcome determinism() {
    auto output = [](const std::string& threads) {
        std::ostringstream out;
        std::ostringstream err;
        cli::run({"simulate", "--n", "500", "--trials", "10000", "--seed", "7", "--threads", threads}, out, err);
        return out.str();
    };
    const std::string a = output("1");
    const bool ok = !a.empty() && a == output("1") && a == output("4");
    return {ok, std::to_string(a.size()) + " bytes compared across 3 runs"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1", initial_values}, {"2", route_equivalence}, {"3", spot_value},    {"4", constant},
        {"5", b_zero},         {"6", brute_force},       {"7", nine_key_tree},    {"8", monte_carlo_mean},
        {"9", endnodes},       {"10", residuals},        {"10b", delta_periodic}, {"10c", delta_amplitude},
        {"11", euler},         {"12", determinism},
    };
    int failures = 0;
    for (const auto& [id, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::printf("[%s] criterion %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}
