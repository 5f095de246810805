#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <deque>
#include <vector>

#include "delayrc/narma.hpp"
#include "delayrc/rng.hpp"

using namespace delayrc;
using Catch::Matchers::WithinAbs;

namespace {

/// Direct reimplementation with explicit shifting vectors, kept
/// independent of the ring-buffer implementation it checks.
std::vector<double> narma10_oracle(const std::vector<double>& inputs) {
    std::deque<double> a_hist(10, 0.0);  // front = A_n, back = A_{n-9}
    std::deque<double> u_hist(10, 0.0);  // front = u_{n-1}, back = u_{n-10}
    std::vector<double> out;
    for (double u : inputs) {
        const double a_n = a_hist.front();
        double sum = 0.0;
        for (double a : a_hist) sum += a;
        const double u_n9 = u_hist[8];  // u_{n-9}
        const double next = 0.3 * a_n + 0.05 * a_n * sum + 1.5 * u_n9 * u + 0.1;
        a_hist.push_front(next);
        a_hist.pop_back();
        u_hist.push_front(u);
        u_hist.pop_back();
        out.push_back(next);
    }
    return out;
}

}  // namespace

TEST_CASE("first step from rest keeps only the constant term") {
    Narma10State s;
    CHECK_THAT(s.step(0.0), WithinAbs(0.1, 1e-15));
}

TEST_CASE("the product term couples u_n to u_{n-9} with weight 1.5") {
    // Changing only u_0 leaves targets 0..8 untouched (it enters nowhere
    // else) and shifts target 9 by exactly 1.5 * u_0 * u_9.
    std::vector<double> with{0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0.5};
    std::vector<double> without = with;
    without[0] = 0.0;
    const auto a = narma10_sequence(with);
    const auto b = narma10_sequence(without);
    for (int n = 0; n < 9; ++n) CHECK(a[static_cast<std::size_t>(n)] == b[static_cast<std::size_t>(n)]);
    CHECK_THAT(a[9] - b[9], WithinAbs(1.5 * 0.5 * 0.5, 1e-15));
}

TEST_CASE("sequence matches the independent oracle step for step") {
    const std::vector<double> inputs = uniform_sequence(42, 1000, 0.0, 0.5);
    const std::vector<double> got = narma10_sequence(inputs);
    const std::vector<double> want = narma10_oracle(inputs);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK_THAT(got[i], WithinAbs(want[i], 1e-12));
}

TEST_CASE("zero input settles on the closed-form fixed point") {
    // A* solves A = 0.3A + 0.5A^2 + 0.1, the smaller root of
    // 0.5A^2 - 0.7A + 0.1 = 0.
    const double fixed_point = (0.7 - std::sqrt(0.29)) / 1.0;
    Narma10State s;
    double a = 0.0;
    for (int n = 0; n < 4000; ++n) a = s.step(0.0);
    CHECK_THAT(a, WithinAbs(fixed_point, 1e-9));
}

TEST_CASE("empty input gives an empty sequence") {
    CHECK(narma10_sequence(std::vector<double>{}).empty());
}

TEST_CASE("targets depend only on past and current inputs") {
    std::vector<double> inputs = uniform_sequence(43, 200, 0.0, 0.5);
    const std::vector<double> base = narma10_sequence(inputs);
    inputs[150] = 0.49;
    const std::vector<double> changed = narma10_sequence(inputs);
    for (std::size_t i = 0; i < 150; ++i) CHECK(base[i] == changed[i]);
    CHECK(base[150] != changed[150]);
}

TEST_CASE("the benchmark range stays bounded over a long run") {
    const std::vector<double> inputs = uniform_sequence(44, 1000000, 0.0, 0.5);
    Narma10State s;
    double a = 0.0;
    for (double u : inputs) a = s.step(u);  // would throw on divergence
    CHECK(std::isfinite(a));
}

TEST_CASE("divergence reports the failing index") {
    // Constant maximal input has no real fixed point and blows up.
    const std::vector<double> inputs(1000, 0.5);
    try {
        narma10_sequence(inputs);
        FAIL("expected divergence");
    } catch (const SequenceDivergedError& e) {
        CHECK(e.index == 27);
    }
}
