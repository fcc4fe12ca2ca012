#ifndef QLS_HYPOTHESIS_HPP
#define QLS_HYPOTHESIS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qls/lineshape.hpp"
#include "qls/statistic.hpp"

namespace qls {

enum class LinePosition { Aligned, HalfStepShifted };

// One hypothesis-test instance: L adjacent bins of M Bernoulli trials each.
struct TestConfig {
    int bins = 5;        // L
    int shots = 8;       // M
    double time = 35.0;  // t, units of T
    double step = 5.0;   // delta_s, units of the Rabi frequency
    double phi = 0.0;    // decision threshold
    double spam = 0.0;   // xi, per-shot flip probability
    LinePosition position = LinePosition::Aligned;

    void validate() const;
};

// Bin detunings relative to the line center. Aligned places the centered
// grid (k - (L-1)/2) * step; HalfStepShifted offsets it by +step/2.
std::vector<double> bin_detunings(const TestConfig& config);

// The test statistic is always evaluated with the Aligned (nominal) model:
// the experimenter assumes the line sits on the grid. A shifted line changes
// only the data-generating probabilities (mismatched-model computation), so
// the false alarm is position independent.
struct PositionModels {
    BinModel nominal;               // aligned probabilities, floored
    Eigen::VectorXd data_aligned;   // equals nominal.p_signal
    Eigen::VectorXd data_shifted;   // signal at half-step-shifted positions
};

PositionModels build_position_models(const TestConfig& config, const LineshapeTable& table);

// Per-shot SPAM flip: data-generating p becomes p(1-xi) + (1-p)xi.
double flip_probability(double p, double xi);

// Distributions entering the worst-case test. SPAM (config.spam) folds into
// the data probabilities while lambda keeps the noiseless nominal model.
struct TestDistributions {
    StatisticDistribution h1_aligned;
    StatisticDistribution h1_shifted;
    StatisticDistribution h2;
};

TestDistributions test_distributions(const PositionModels& models, int shots, double spam,
                                     std::size_t max_atoms = 10'000'000);

// Worst case over the two line positions at config.phi:
// MR = max(MR_aligned, MR_shifted); FA computed once.
ErrorPair worst_case_miss(const TestConfig& config, const LineshapeTable& table,
                          TieRule rule = TieRule::BackgroundAtThreshold);

// Exact mismatched-model distributions under per-shot bit flips with
// probability xi (single position; lambda from the noiseless model).
std::pair<StatisticDistribution, StatisticDistribution> spam_exact(const BinModel& model,
                                                                   int shots, double xi);

struct MonteCarloErrors {
    ErrorPair errors;
    double se_miss_rate = 0.0;
    double se_false_alarm = 0.0;
    long samples = 0;
};

// Samples per-shot outcomes with flips under each hypothesis and tallies
// decisions at phi; seeded substreams make runs bit-reproducible.
MonteCarloErrors spam_monte_carlo(const BinModel& model, int shots, double xi, double phi,
                                  long n_samples, std::uint64_t seed,
                                  TieRule rule = TieRule::BackgroundAtThreshold);

}  // namespace qls

#endif
