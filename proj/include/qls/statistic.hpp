#ifndef QLS_STATISTIC_HPP
#define QLS_STATISTIC_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qls {

// Per-bin Bernoulli success probabilities entering the likelihood ratio.
// Probabilities are floored into [1e-12, 1 - 1e-12] so the log terms stay
// finite (t -> 0 gives a background of exactly zero otherwise).
struct BinModel {
    Eigen::VectorXd p_signal;  // length L: P0(t, delta_k)
    double p_background = 0.0;

    static constexpr double probability_floor = 1e-12;

    int bins() const { return static_cast<int>(p_signal.size()); }
    static double floor_probability(double p);
    // Floors all entries; call after construction from raw lineshape values.
    void apply_floor();
};

// Log-likelihood ratio lambda(g) = ln Pr(g|H2) - ln Pr(g|H1); binomial
// coefficients cancel, leaving
//   sum_k [ g_k ln(Pbg/P0k) + (M - g_k) ln((1-Pbg)/(1-P0k)) ].
// Small lambda favours the signal hypothesis.
double np_statistic(std::span<const int> g, const BinModel& model, int shots);

enum class Hypothesis { SignalPresent, BackgroundOnly };  // H1, H2

struct Atom {
    double value = 0.0;  // lambda
    double prob = 0.0;
};

// Discrete distribution of lambda under one hypothesis: sorted, merged atoms.
struct StatisticDistribution {
    std::vector<Atom> atoms;

    double total_probability() const;
    // Pr(lambda >= phi)
    double upper_tail(double phi) const;
    // Pr(lambda < phi)
    double lower_tail(double phi) const;
};

// Exact distribution of lambda, built by convolving the L independent
// per-bin distributions (M+1 atoms each). Lambda is always evaluated with
// the nominal `model`; `effective_p`, when given, replaces the
// data-generating probabilities (mismatched-model computation, e.g. SPAM).
// Atoms closer than 1e-12 (relative, unit floor) merge. Throws AtomOverflow
// if the atom count would exceed `max_atoms`.
StatisticDistribution statistic_distribution(
    const BinModel& model, int shots, Hypothesis hypothesis,
    const std::optional<Eigen::VectorXd>& effective_p = std::nullopt,
    std::size_t max_atoms = 10'000'000);

// Decision-region convention for atoms exactly at the threshold.
enum class TieRule {
    BackgroundAtThreshold,  // lambda >= phi decides H2: ties count into MR (default)
    ExcludedAtThreshold,    // strict inequalities: ties count toward neither error
};

struct ErrorPair {
    double miss_rate = 0.0;
    double false_alarm = 0.0;
};

// MR = Pr(lambda >= phi | H1), FA = Pr(lambda < phi | H2) under the default
// region convention.
ErrorPair error_probabilities(const StatisticDistribution& dist_h1,
                              const StatisticDistribution& dist_h2, double phi,
                              TieRule rule = TieRule::BackgroundAtThreshold);

struct ThresholdChoice {
    double phi = 0.0;
    ErrorPair errors;
};

// Searches midpoints between adjacent distinct atom values (plus sentinels
// outside the support) for a phi with MR <= eps1 and FA <= eps2; among
// feasible candidates returns the one minimizing max(MR/eps1, FA/eps2).
std::optional<ThresholdChoice> find_threshold(const StatisticDistribution& dist_h1,
                                              const StatisticDistribution& dist_h2,
                                              double eps1, double eps2);

// Same, but MR is the worst case over several H1 distributions (one per
// line position); FA comes from the single H2 distribution.
std::optional<ThresholdChoice> find_threshold_worst_case(
    std::span<const StatisticDistribution> dists_h1, const StatisticDistribution& dist_h2,
    double eps1, double eps2);

// Unconditional variant: the threshold minimizing max(MR/eps1, FA/eps2),
// whether or not it meets the bounds.
ThresholdChoice best_threshold_by_score(std::span<const StatisticDistribution> dists_h1,
                                        const StatisticDistribution& dist_h2, double eps1,
                                        double eps2);

// Stable binomial pmf row: w[g] = C(M,g) p^g (1-p)^(M-g), g = 0..M.
std::vector<double> binomial_pmf_row(int shots, double p);

}  // namespace qls

#endif
