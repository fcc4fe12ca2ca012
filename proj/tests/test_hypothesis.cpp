#include <doctest.h>

#include <cmath>

#include "brute_force.hpp"
#include "qls/hypothesis.hpp"
#include "synthetic_table.hpp"

using namespace qls;

TEST_CASE("bin detunings: centered grid and half-step shift") {
    TestConfig c;
    c.bins = 3;
    c.step = 5.0;
    CHECK(bin_detunings(c) == std::vector<double>{-5.0, 0.0, 5.0});
    c.position = LinePosition::HalfStepShifted;
    CHECK(bin_detunings(c) == std::vector<double>{-2.5, 2.5, 7.5});
    c.bins = 1;
    c.position = LinePosition::Aligned;
    CHECK(bin_detunings(c) == std::vector<double>{0.0});
}

TEST_CASE("even bin count leaves no bin on the peak") {
    TestConfig c;
    c.bins = 4;
    c.step = 2.0;
    CHECK(bin_detunings(c) == std::vector<double>{-3.0, -1.0, 1.0, 3.0});
}

TEST_CASE("worst case: off-peak position misses more (L = 1)") {
    const LineshapeTable table = qls_test::gaussian_table(0.7, 2.0, 0.05);
    TestConfig c;
    c.bins = 1;
    c.shots = 8;
    c.step = 4.0;
    c.phi = 0.0;
    const PositionModels m = build_position_models(c, table);
    const TestDistributions d = test_distributions(m, c.shots, 0.0);
    const ErrorPair aligned = error_probabilities(d.h1_aligned, d.h2, c.phi);
    const ErrorPair shifted = error_probabilities(d.h1_shifted, d.h2, c.phi);
    CHECK(shifted.miss_rate >= aligned.miss_rate);
    const ErrorPair worst = worst_case_miss(c, table);
    CHECK(worst.miss_rate == doctest::Approx(shifted.miss_rate).epsilon(1e-14));
    CHECK(worst.false_alarm == doctest::Approx(aligned.false_alarm).epsilon(1e-14));
}

TEST_CASE("flat lineshape is blind: MR + FA = 1 at any threshold") {
    const LineshapeTable table = qls_test::flat_table(0.05);
    TestConfig c;
    c.bins = 3;
    c.shots = 6;
    c.step = 3.0;
    for (const double phi : {-2.0, 0.0, 1.5}) {
        c.phi = phi;
        const ErrorPair e = worst_case_miss(c, table);
        CHECK(e.miss_rate + e.false_alarm == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("spam identity at xi = 0 and depolarization toward 1/2") {
    BinModel m;
    m.p_signal = Eigen::VectorXd(2);
    m.p_signal << 0.8, 0.4;
    m.p_background = 0.06;
    m.apply_floor();

    const auto [h1_noisy, h2_noisy] = spam_exact(m, 5, 0.0);
    const StatisticDistribution h1 = statistic_distribution(m, 5, Hypothesis::SignalPresent);
    const StatisticDistribution h2 = statistic_distribution(m, 5, Hypothesis::BackgroundOnly);
    REQUIRE(h1_noisy.atoms.size() == h1.atoms.size());
    for (std::size_t i = 0; i < h1.atoms.size(); ++i) {
        CHECK(h1_noisy.atoms[i].prob == doctest::Approx(h1.atoms[i].prob).epsilon(1e-14));
        CHECK(h2_noisy.atoms[i].prob == doctest::Approx(h2.atoms[i].prob).epsilon(1e-14));
    }

    // near-total depolarization: both hypotheses generate near-identical data
    const auto [d1, d2] = spam_exact(m, 5, 0.499);
    REQUIRE(d1.atoms.size() == d2.atoms.size());
    for (std::size_t i = 0; i < d1.atoms.size(); ++i) {
        CHECK(d1.atoms[i].prob == doctest::Approx(d2.atoms[i].prob).epsilon(0.05));
    }
    CHECK(flip_probability(0.9, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(flip_probability(0.1, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("spam_exact equals brute force with flipped data probabilities") {
    BinModel m;
    m.p_signal = Eigen::VectorXd(2);
    m.p_signal << 0.75, 0.3;
    m.p_background = 0.1;
    m.apply_floor();
    const double xi = 0.1;
    const auto [h1, h2] = spam_exact(m, 4, xi);
    const std::vector<double> flipped{flip_probability(0.75, xi), flip_probability(0.3, xi)};
    const auto bf = qls_test::brute_force(m, 4, 0.0, flipped);
    REQUIRE(h1.atoms.size() == bf.atoms_h1.size());
    for (std::size_t i = 0; i < h1.atoms.size(); ++i) {
        CHECK(h1.atoms[i].value ==
              doctest::Approx(bf.atoms_h1[i].value).epsilon(1e-12).scale(1.0));
        CHECK(h1.atoms[i].prob ==
              doctest::Approx(bf.atoms_h1[i].prob).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("monte carlo agrees with the exact mismatched model within 4 SE") {
    BinModel m;
    m.p_signal = Eigen::VectorXd(3);
    m.p_signal << 0.7, 0.35, 0.12;
    m.p_background = 0.08;
    m.apply_floor();
    const double phi = 0.4;
    for (const double xi : {0.0, 0.1}) {
        const auto [h1, h2] = spam_exact(m, 6, xi);
        const ErrorPair exact = error_probabilities(h1, h2, phi);
        const MonteCarloErrors mc = spam_monte_carlo(m, 6, xi, phi, 40'000, 777);
        CHECK(std::abs(mc.errors.miss_rate - exact.miss_rate) <=
              4.0 * std::max(mc.se_miss_rate, 1e-4));
        CHECK(std::abs(mc.errors.false_alarm - exact.false_alarm) <=
              4.0 * std::max(mc.se_false_alarm, 1e-4));
    }
}

TEST_CASE("monte carlo is bit-reproducible for a fixed seed") {
    BinModel m;
    m.p_signal = Eigen::VectorXd(2);
    m.p_signal << 0.6, 0.25;
    m.p_background = 0.1;
    m.apply_floor();
    const MonteCarloErrors a = spam_monte_carlo(m, 5, 0.07, 0.1, 20'000, 4242);
    const MonteCarloErrors b = spam_monte_carlo(m, 5, 0.07, 0.1, 20'000, 4242);
    CHECK(a.errors.miss_rate == b.errors.miss_rate);
    CHECK(a.errors.false_alarm == b.errors.false_alarm);
    const MonteCarloErrors c = spam_monte_carlo(m, 5, 0.07, 0.1, 20'000, 4243);
    CHECK(a.errors.miss_rate != c.errors.miss_rate);
}
