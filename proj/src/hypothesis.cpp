#include "qls/hypothesis.hpp"

#include <cmath>
#include <string>

#include "qls/errors.hpp"
#include "qls/rng.hpp"

namespace qls {

void TestConfig::validate() const {
    if (bins < 1) throw SchemaError("test.bins must be >= 1");
    if (shots < 1) throw SchemaError("test.shots must be >= 1");
    if (!(time > 0.0)) throw SchemaError("test.time must be > 0");
    if (!(step > 0.0)) throw SchemaError("test.step must be > 0");
    if (spam < 0.0 || spam >= 0.5) throw SchemaError("test.spam must lie in [0, 0.5)");
}

std::vector<double> bin_detunings(const TestConfig& config) {
    config.validate();
    std::vector<double> d(static_cast<std::size_t>(config.bins));
    const double offset = config.position == LinePosition::HalfStepShifted
                              ? 0.5 * config.step
                              : 0.0;
    for (int k = 0; k < config.bins; ++k) {
        d[static_cast<std::size_t>(k)] =
            (k - 0.5 * (config.bins - 1)) * config.step + offset;
    }
    return d;
}

PositionModels build_position_models(const TestConfig& config,
                                     const LineshapeTable& table) {
    TestConfig aligned = config;
    aligned.position = LinePosition::Aligned;
    TestConfig shifted = config;
    shifted.position = LinePosition::HalfStepShifted;

    const std::vector<double> da = bin_detunings(aligned);
    const std::vector<double> ds = bin_detunings(shifted);

    PositionModels m;
    m.data_aligned.resize(config.bins);
    m.data_shifted.resize(config.bins);
    for (int k = 0; k < config.bins; ++k) {
        m.data_aligned[k] = BinModel::floor_probability(
            table.signal_at(da[static_cast<std::size_t>(k)]));
        m.data_shifted[k] = BinModel::floor_probability(
            table.signal_at(ds[static_cast<std::size_t>(k)]));
    }
    m.nominal.p_signal = m.data_aligned;
    m.nominal.p_background = BinModel::floor_probability(table.background);
    return m;
}

double flip_probability(double p, double xi) {
    return p * (1.0 - xi) + (1.0 - p) * xi;
}

namespace {

Eigen::VectorXd flipped(const Eigen::VectorXd& p, double xi) {
    Eigen::VectorXd out(p.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) out[i] = flip_probability(p[i], xi);
    return out;
}

}  // namespace

TestDistributions test_distributions(const PositionModels& models, int shots, double spam,
                                     std::size_t max_atoms) {
    const BinModel& nominal = models.nominal;
    TestDistributions d;
    d.h1_aligned = statistic_distribution(nominal, shots, Hypothesis::SignalPresent,
                                          flipped(models.data_aligned, spam), max_atoms);
    d.h1_shifted = statistic_distribution(nominal, shots, Hypothesis::SignalPresent,
                                          flipped(models.data_shifted, spam), max_atoms);
    const Eigen::VectorXd bg =
        Eigen::VectorXd::Constant(nominal.bins(), flip_probability(nominal.p_background, spam));
    d.h2 = statistic_distribution(nominal, shots, Hypothesis::BackgroundOnly, bg, max_atoms);
    return d;
}

ErrorPair worst_case_miss(const TestConfig& config, const LineshapeTable& table,
                          TieRule rule) {
    config.validate();
    const PositionModels models = build_position_models(config, table);
    const TestDistributions d = test_distributions(models, config.shots, config.spam);
    const ErrorPair aligned = error_probabilities(d.h1_aligned, d.h2, config.phi, rule);
    const ErrorPair shifted = error_probabilities(d.h1_shifted, d.h2, config.phi, rule);
    return ErrorPair{std::max(aligned.miss_rate, shifted.miss_rate), aligned.false_alarm};
}

std::pair<StatisticDistribution, StatisticDistribution> spam_exact(const BinModel& model,
                                                                   int shots, double xi) {
    if (xi < 0.0 || xi >= 0.5) throw Error("spam_exact: xi must lie in [0, 0.5)");
    StatisticDistribution h1 = statistic_distribution(
        model, shots, Hypothesis::SignalPresent, flipped(model.p_signal, xi));
    const Eigen::VectorXd bg =
        Eigen::VectorXd::Constant(model.bins(), flip_probability(model.p_background, xi));
    StatisticDistribution h2 =
        statistic_distribution(model, shots, Hypothesis::BackgroundOnly, bg);
    return {std::move(h1), std::move(h2)};
}

MonteCarloErrors spam_monte_carlo(const BinModel& model, int shots, double xi, double phi,
                                  long n_samples, std::uint64_t seed, TieRule rule) {
    if (n_samples < 1) throw Error("spam_monte_carlo: n_samples must be >= 1");
    const int bins = model.bins();
    std::vector<int> g(static_cast<std::size_t>(bins));

    const auto run = [&](Hypothesis hyp, const char* label) {
        Rng rng = substream(seed, label);
        long errors = 0;
        for (long s = 0; s < n_samples; ++s) {
            for (int k = 0; k < bins; ++k) {
                const double p = hyp == Hypothesis::SignalPresent ? model.p_signal[k]
                                                                  : model.p_background;
                int count = 0;
                for (int shot = 0; shot < shots; ++shot) {
                    bool outcome = rng.bernoulli(p);
                    if (rng.bernoulli(xi)) outcome = !outcome;  // SPAM bit flip
                    count += outcome ? 1 : 0;
                }
                g[static_cast<std::size_t>(k)] = count;
            }
            const double lambda = np_statistic(g, model, shots);
            const bool decide_background =
                rule == TieRule::BackgroundAtThreshold ? lambda >= phi : lambda > phi;
            if (hyp == Hypothesis::SignalPresent ? decide_background : !decide_background) {
                ++errors;
            }
        }
        return static_cast<double>(errors) / static_cast<double>(n_samples);
    };

    MonteCarloErrors out;
    out.samples = n_samples;
    out.errors.miss_rate = run(Hypothesis::SignalPresent, "mc/h1");
    out.errors.false_alarm = run(Hypothesis::BackgroundOnly, "mc/h2");
    const double n = static_cast<double>(n_samples);
    out.se_miss_rate = std::sqrt(out.errors.miss_rate * (1.0 - out.errors.miss_rate) / n);
    out.se_false_alarm =
        std::sqrt(out.errors.false_alarm * (1.0 - out.errors.false_alarm) / n);
    return out;
}

}  // namespace qls
