#include "qls/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qls/errors.hpp"

namespace qls {

double BinModel::floor_probability(double p) {
    return std::min(std::max(p, probability_floor), 1.0 - probability_floor);
}

void BinModel::apply_floor() {
    for (Eigen::Index i = 0; i < p_signal.size(); ++i) {
        p_signal[i] = floor_probability(p_signal[i]);
    }
    p_background = floor_probability(p_background);
}

std::vector<double> binomial_pmf_row(int shots, double p) {
    std::vector<double> w(static_cast<std::size_t>(shots) + 1);
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    double lchoose = 0.0;  // ln C(M, 0)
    for (int g = 0; g <= shots; ++g) {
        if (g > 0) lchoose += std::log(static_cast<double>(shots - g + 1)) -
                              std::log(static_cast<double>(g));
        w[static_cast<std::size_t>(g)] = std::exp(lchoose + g * lp + (shots - g) * lq);
    }
    return w;
}

double np_statistic(std::span<const int> g, const BinModel& model, int shots) {
    if (static_cast<int>(g.size()) != model.bins()) {
        throw DimensionMismatch("np_statistic: data length does not match bin count");
    }
    const double pbg = model.p_background;
    double lambda = 0.0;
    for (int k = 0; k < model.bins(); ++k) {
        const double pk = model.p_signal[k];
        const double c = std::log(pbg / pk);
        const double d = std::log1p(-pbg) - std::log1p(-pk);
        lambda += g[static_cast<std::size_t>(k)] * c +
                  (shots - g[static_cast<std::size_t>(k)]) * d;
    }
    return lambda;
}

namespace {

// Merge atoms closer than 1e-12 relative (with unit floor); keeps the first
// value of each run. Input must be sorted by value.
void merge_sorted(std::vector<Atom>& atoms) {
    constexpr double tol = 1e-12;
    std::size_t out = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (out > 0) {
            const double a = atoms[out - 1].value;
            const double b = atoms[i].value;
            if (b - a <= tol * std::max({1.0, std::abs(a), std::abs(b)})) {
                atoms[out - 1].prob += atoms[i].prob;
                continue;
            }
        }
        atoms[out++] = atoms[i];
    }
    atoms.resize(out);
}

}  // namespace

StatisticDistribution statistic_distribution(const BinModel& model, int shots,
                                             Hypothesis hypothesis,
                                             const std::optional<Eigen::VectorXd>& effective_p,
                                             std::size_t max_atoms) {
    if (shots < 1) throw Error("statistic_distribution: shots must be >= 1");
    if (effective_p && effective_p->size() != model.p_signal.size()) {
        throw DimensionMismatch("statistic_distribution: effective_p length mismatch");
    }
    const int bins = model.bins();
    const double pbg = model.p_background;

    std::vector<Atom> acc{{0.0, 1.0}};
    std::vector<Atom> next;
    for (int k = 0; k < bins; ++k) {
        const double pk = model.p_signal[k];
        const double c = std::log(pbg / pk);
        const double d = std::log1p(-pbg) - std::log1p(-pk);
        double p_data = hypothesis == Hypothesis::SignalPresent ? pk : pbg;
        if (effective_p) p_data = (*effective_p)[k];
        p_data = BinModel::floor_probability(p_data);
        const std::vector<double> w = binomial_pmf_row(shots, p_data);

        if (acc.size() * w.size() > max_atoms) {
            throw AtomOverflow("statistic_distribution: atom count " +
                               std::to_string(acc.size() * w.size()) + " exceeds " +
                               std::to_string(max_atoms));
        }
        next.clear();
        next.reserve(acc.size() * w.size());
        for (const Atom& a : acc) {
            for (int g = 0; g <= shots; ++g) {
                next.push_back({a.value + (g * c + (shots - g) * d),
                                a.prob * w[static_cast<std::size_t>(g)]});
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const Atom& x, const Atom& y) { return x.value < y.value; });
        merge_sorted(next);
        acc.swap(next);
    }
    return StatisticDistribution{std::move(acc)};
}

double StatisticDistribution::total_probability() const {
    long double s = 0.0;
    for (const Atom& a : atoms) s += a.prob;
    return static_cast<double>(s);
}

double StatisticDistribution::upper_tail(double phi) const {
    long double s = 0.0;
    for (auto it = atoms.rbegin(); it != atoms.rend() && it->value >= phi; ++it) {
        s += it->prob;
    }
    return static_cast<double>(s);
}

double StatisticDistribution::lower_tail(double phi) const {
    long double s = 0.0;
    for (auto it = atoms.begin(); it != atoms.end() && it->value < phi; ++it) {
        s += it->prob;
    }
    return static_cast<double>(s);
}

ErrorPair error_probabilities(const StatisticDistribution& dist_h1,
                              const StatisticDistribution& dist_h2, double phi,
                              TieRule rule) {
    ErrorPair e;
    if (rule == TieRule::BackgroundAtThreshold) {
        e.miss_rate = dist_h1.upper_tail(phi);
    } else {
        // strictly above phi
        long double s = 0.0;
        for (auto it = dist_h1.atoms.rbegin();
             it != dist_h1.atoms.rend() && it->value > phi; ++it) {
            s += it->prob;
        }
        e.miss_rate = static_cast<double>(s);
    }
    e.false_alarm = dist_h2.lower_tail(phi);
    return e;
}

namespace {

struct TailTable {
    std::vector<double> values;  // ascending
    std::vector<double> suffix;  // suffix[i] = sum of probs at index >= i
    std::vector<double> prefix;  // prefix[i] = sum of probs at index < i

    explicit TailTable(const StatisticDistribution& d) {
        const std::size_t n = d.atoms.size();
        values.resize(n);
        suffix.assign(n + 1, 0.0);
        prefix.assign(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) values[i] = d.atoms[i].value;
        long double s = 0.0;
        for (std::size_t i = n; i-- > 0;) {
            s += d.atoms[i].prob;
            suffix[i] = static_cast<double>(s);
        }
        s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += d.atoms[i].prob;
            prefix[i + 1] = static_cast<double>(s);
        }
    }
    // Pr(value >= phi)
    double upper(double phi) const {
        const auto it = std::lower_bound(values.begin(), values.end(), phi);
        return suffix[static_cast<std::size_t>(it - values.begin())];
    }
    // Pr(value < phi)
    double lower(double phi) const {
        const auto it = std::lower_bound(values.begin(), values.end(), phi);
        return prefix[static_cast<std::size_t>(it - values.begin())];
    }
};

}  // namespace

ThresholdChoice best_threshold_by_score(std::span<const StatisticDistribution> dists_h1,
                                        const StatisticDistribution& dist_h2, double eps1,
                                        double eps2) {
    if (!(eps1 > 0.0 && eps1 < 1.0 && eps2 > 0.0 && eps2 < 1.0)) {
        throw Error("find_threshold: confidence bounds must lie in (0, 1)");
    }
    std::vector<double> support;
    for (const auto& d : dists_h1) {
        for (const Atom& a : d.atoms) support.push_back(a.value);
    }
    for (const Atom& a : dist_h2.atoms) support.push_back(a.value);
    if (support.empty()) throw Error("find_threshold: empty distributions");
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    std::vector<double> candidates;
    candidates.reserve(support.size() + 1);
    candidates.push_back(support.front() - 1.0);  // decide H2 always
    for (std::size_t i = 1; i < support.size(); ++i) {
        candidates.push_back(0.5 * (support[i - 1] + support[i]));
    }
    candidates.push_back(support.back() + 1.0);  // decide H1 always

    std::vector<TailTable> h1_tables;
    h1_tables.reserve(dists_h1.size());
    for (const auto& d : dists_h1) h1_tables.emplace_back(d);
    const TailTable h2_table(dist_h2);

    std::optional<ThresholdChoice> best;
    double best_score = 0.0;
    for (const double phi : candidates) {
        double mr = 0.0;
        for (const auto& t : h1_tables) mr = std::max(mr, t.upper(phi));
        const double fa = h2_table.lower(phi);
        const double score = std::max(mr / eps1, fa / eps2);
        if (!best || score < best_score) {
            best = ThresholdChoice{phi, ErrorPair{mr, fa}};
            best_score = score;
        }
    }
    return *best;
}

std::optional<ThresholdChoice> find_threshold_worst_case(
    std::span<const StatisticDistribution> dists_h1, const StatisticDistribution& dist_h2,
    double eps1, double eps2) {
    // The global minimizer of max(MR/eps1, FA/eps2) is feasible exactly when
    // any threshold is.
    const ThresholdChoice c = best_threshold_by_score(dists_h1, dist_h2, eps1, eps2);
    if (c.errors.miss_rate <= eps1 && c.errors.false_alarm <= eps2) return c;
    return std::nullopt;
}

std::optional<ThresholdChoice> find_threshold(const StatisticDistribution& dist_h1,
                                              const StatisticDistribution& dist_h2,
                                              double eps1, double eps2) {
    return find_threshold_worst_case(std::span<const StatisticDistribution>(&dist_h1, 1),
                                     dist_h2, eps1, eps2);
}

}  // namespace qls
