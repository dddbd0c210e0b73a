#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "dlcz/config.hpp"
#include "dlcz/emission.hpp"
#include "dlcz/error.hpp"

using namespace dlcz;

namespace {

/// p-value of a chi-square homogeneity test between two count histograms,
/// pooling sparse tail bins until every expected count is at least 5.
double homogeneity_p_value(const std::map<std::uint32_t, double>& a,
                           const std::map<std::uint32_t, double>& b) {
    std::map<std::uint32_t, std::pair<double, double>> joint;
    for (const auto& [k, v] : a) joint[k].first += v;
    for (const auto& [k, v] : b) joint[k].second += v;
    double na = 0.0, nb = 0.0;
    for (const auto& [k, v] : joint) {
        na += v.first;
        nb += v.second;
    }
    std::vector<std::pair<double, double>> bins;
    std::pair<double, double> pending{0.0, 0.0};
    for (const auto& [k, v] : joint) {
        pending.first += v.first;
        pending.second += v.second;
        const double total = pending.first + pending.second;
        if (std::min(total * na, total * nb) / (na + nb) >= 5.0) {
            bins.push_back(pending);
            pending = {0.0, 0.0};
        }
    }
    if (pending.first + pending.second > 0.0) {
        if (bins.empty()) return 1.0;
        bins.back().first += pending.first;
        bins.back().second += pending.second;
    }
    double stat = 0.0;
    for (const auto& [x, y] : bins) {
        const double total = x + y;
        const double ea = total * na / (na + nb), eb = total * nb / (na + nb);
        stat += (x - ea) * (x - ea) / ea + (y - eb) * (y - eb) / eb;
    }
    if (bins.size() < 2) return 1.0;
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(bins.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Goodness of fit of a histogram against an exact pmf.
double fit_p_value(const std::map<std::uint32_t, double>& observed,
                   const std::function<double(std::uint32_t)>& pmf, std::uint32_t max_k,
                   double n) {
    double stat = 0.0, pending_obs = 0.0, pending_exp = 0.0;
    int bins = 0;
    for (std::uint32_t k = 0; k <= max_k; ++k) {
        const auto it = observed.find(k);
        pending_obs += it == observed.end() ? 0.0 : it->second;
        pending_exp += n * pmf(k);
        if (pending_exp >= 5.0 || k == max_k) {
            if (k == max_k) {
                double tail_obs = 0.0;
                for (const auto& [kk, v] : observed) {
                    if (kk > max_k) tail_obs += v;
                }
                double below = 0.0;
                for (std::uint32_t j = 0; j <= max_k; ++j) below += pmf(j);
                pending_obs += tail_obs;
                pending_exp += n * (1.0 - below);
            }
            stat += (pending_obs - pending_exp) * (pending_obs - pending_exp) / pending_exp;
            ++bins;
            pending_obs = pending_exp = 0.0;
        }
    }
    boost::math::chi_squared_distribution<double> dist(bins - 1);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

ExperimentConfig quiet_config(double p) {
    ExperimentConfig c = paper_default();
    c.excitation_probability = p;
    c.intrinsic_retrieval_efficiency = 1.0;
    c.noise = NoiseRates{};
    for (DetectionChain* d : {&c.stokes_chain, &c.antistokes_chain}) {
        d->dark_rate = 0.0;
        d->dead_time = 0.0;
    }
    return c;
}

}  // namespace

TEST(SampleWrite, ZeroExcitationProbability) {
    RandomStream rng(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const WriteSample s = sample_write(0.0, rng);
        ASSERT_EQ(s.excitations, 0u);
        ASSERT_EQ(s.stokes_photons, 0u);
    }
}

TEST(SampleWrite, BoseEinsteinMoments) {
    constexpr double p = 0.1;
    constexpr int n = 1'000'000;
    RandomStream rng(2, 0);
    double sum = 0.0, nonzero = 0.0;
    for (int i = 0; i < n; ++i) {
        const WriteSample s = sample_write(p, rng);
        ASSERT_EQ(s.excitations, s.stokes_photons);
        sum += s.excitations;
        nonzero += s.excitations > 0;
    }
    EXPECT_NEAR(sum / n, p, 4.0 * std::sqrt(p * (1 + p) / n));
    const double q = p / (1 + p);  // 0.0909...
    EXPECT_NEAR(nonzero / n, q, 4.0 * std::sqrt(q * (1 - q) / n));
}

TEST(SampleWrite, DistributionAndThinnedDistribution) {
    // A thinned Bose-Einstein variable is again Bose-Einstein with mean p eta.
    constexpr double p = 0.8, eta = 0.4;
    constexpr int n = 1'000'000;
    RandomStream rng(3, 0);
    std::map<std::uint32_t, double> raw, thinned;
    for (int i = 0; i < n; ++i) {
        const WriteSample s = sample_write(p, rng);
        raw[s.excitations] += 1;
        thinned[thin(s.stokes_photons, eta, rng)] += 1;
    }
    const auto be = [](double mean) {
        return [mean](std::uint32_t k) {
            return std::pow(mean, k) / std::pow(1 + mean, k + 1.0);
        };
    };
    EXPECT_GT(fit_p_value(raw, be(p), 25, n), 0.001);
    EXPECT_GT(fit_p_value(thinned, be(p * eta), 15, n), 0.001);
}

TEST(SampleRead, Examples) {
    RandomStream rng(4, 0);
    for (std::uint32_t m = 0; m < 50; ++m) {
        EXPECT_EQ(sample_read(m, 1.0, rng), m);
        EXPECT_EQ(sample_read(m, 0.0, rng), 0u);
    }
    constexpr int n = 1'000'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_read(3, 0.4, rng);
    EXPECT_NEAR(sum / n, 1.2, 4.0 * std::sqrt(3 * 0.4 * 0.6 / n));
}

TEST(Thin, ExtremesAndLargeCounts) {
    RandomStream rng(5, 0);
    for (std::uint32_t c : {0u, 1u, 7u, 64u, 65u, 1000u}) {
        EXPECT_EQ(thin(c, 1.0, rng), c);
        EXPECT_EQ(thin(c, 0.0, rng), 0u);
    }
    constexpr int n = 200'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += thin(1000, 0.3, rng);
    EXPECT_NEAR(sum / n, 300.0, 4.0 * std::sqrt(1000 * 0.3 * 0.7 / n));
}

TEST(Thin, CompositionMatchesProductEfficiency) {
    constexpr int n = 1'000'000;
    constexpr double a = 0.6, b = 0.45;
    RandomStream rng(6, 0);
    for (std::uint32_t count : {20u, 200u}) {
        std::map<std::uint32_t, double> twice, once;
        for (int i = 0; i < n; ++i) {
            twice[thin(thin(count, a, rng), b, rng)] += 1;
            once[thin(count, a * b, rng)] += 1;
        }
        EXPECT_GT(homogeneity_p_value(twice, once), 0.01) << count;
    }
}

TEST(Poisson, MeansAcrossBranches) {
    RandomStream rng(7, 0);
    EXPECT_EQ(sample_poisson(0.0, rng), 0u);
    for (double mean : {1e-4, 0.7, 12.0, 80.0}) {
        const int n = 400'000;
        double sum = 0.0, sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double k = sample_poisson(mean, rng);
            sum += k;
            sq += k * k;
        }
        const double m = sum / n;
        EXPECT_NEAR(m, mean, 4.0 * std::sqrt(mean / n)) << mean;
        if (mean > 0.5) EXPECT_NEAR(sq / n - m * m, mean, 0.02 * mean) << mean;
    }
}

TEST(AddBackground, Examples) {
    RandomStream rng(8, 0);
    EXPECT_TRUE(add_background(1e-6, 0.0, EventLabel::dark, rng).empty());
    constexpr int n = 1'000'000;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (const auto& e : add_background(1e-6, 1e-4, EventLabel::crf, rng)) {
            ASSERT_GE(e.timestamp, 0.0);
            ASSERT_LT(e.timestamp, 1e-6);
            ASSERT_EQ(e.label, EventLabel::crf);
            total += 1;
        }
    }
    EXPECT_NEAR(total / n, 1e-4, 4.0 * std::sqrt(1e-4 / n));
}

TEST(AddBackground, DarkCountsPerMicrosecondWindow) {
    DetectionChain chain;
    chain.dark_rate = 100.0;
    EXPECT_NEAR(dark_counts_per_window(chain, 1e-6), 1e-4, 1e-18);
}

TEST(DeadTime, Examples) {
    const std::vector<DetectionEvent> close{{0.0, EventLabel::signal}, {50e-9, EventLabel::dark}};
    EXPECT_EQ(dead_time_filter(close, 80e-9).size(), 1u);
    EXPECT_EQ(dead_time_filter(close, 80e-9).front().label, EventLabel::signal);
    const std::vector<DetectionEvent> apart{{0.0, EventLabel::signal}, {100e-9, EventLabel::dark}};
    EXPECT_EQ(dead_time_filter(apart, 80e-9).size(), 2u);
    EXPECT_TRUE(dead_time_filter({}, 80e-9).empty());
    const std::vector<DetectionEvent> unsorted{{1e-7, EventLabel::dark}, {0.0, EventLabel::dark}};
    EXPECT_THROW(dead_time_filter(unsorted, 80e-9), UnsortedInputError);
}

TEST(DeadTime, GreedyProperty) {
    RandomStream rng(9, 0);
    for (int trial = 0; trial < 2000; ++trial) {
        auto events = add_background(1e-6, 8.0, EventLabel::dark, rng);
        std::sort(events.begin(), events.end(),
                  [](const auto& x, const auto& y) { return x.timestamp < y.timestamp; });
        const auto kept = dead_time_filter(events, 80e-9);
        if (events.empty()) {
            EXPECT_TRUE(kept.empty());
            continue;
        }
        ASSERT_FALSE(kept.empty());
        EXPECT_EQ(kept.front(), events.front());
        for (std::size_t i = 1; i < kept.size(); ++i) {
            EXPECT_GE(kept[i].timestamp - kept[i - 1].timestamp, 80e-9);
        }
        // Every dropped event falls inside the dead time of the last kept one.
        std::size_t k = 0;
        for (const auto& e : events) {
            if (k + 1 < kept.size() && e.timestamp >= kept[k + 1].timestamp) ++k;
            if (e.timestamp != kept[k].timestamp) EXPECT_LT(e.timestamp - kept[k].timestamp, 80e-9);
        }
    }
}

TEST(SimulateTrial, NoSourcesNoEvents) {
    const ExperimentConfig c = quiet_config(0.0);
    RandomStream rng(10, 0);
    for (int i = 0; i < 10000; ++i) {
        const TrialOutcome t = simulate_trial(c, 1e-6, rng);
        ASSERT_TRUE(t.stokes_events.empty());
        ASSERT_TRUE(t.antistokes_events.empty());
    }
}

TEST(SimulateTrial, OutcomeInvariants) {
    ExperimentConfig c = paper_default();
    c.excitation_probability = 0.5;
    c.intrinsic_retrieval_efficiency = 0.7;
    c.noise.crf_stokes_window = 0.3;
    c.noise.crf_antistokes_window = 0.2;
    c.noise.leakage_stokes = 0.1;
    const TrialModel model = TrialModel::from(c, 1e-6);
    TrialOutcome t;
    for (std::uint64_t i = 0; i < 20000; ++i) {
        RandomStream rng(11, i);
        simulate_trial(model, rng, t);
        ASSERT_LE(t.retrieved, t.true_excitations);
        std::uint32_t stokes_signal = 0, antistokes_signal = 0;
        for (const auto& e : t.stokes_events) {
            ASSERT_GE(e.timestamp, 0.0);
            ASSERT_LT(e.timestamp, c.pulses.write_duration);
            stokes_signal += e.label == EventLabel::signal;
        }
        for (const auto& e : t.antistokes_events) {
            ASSERT_GE(e.timestamp, 0.0);
            ASSERT_LT(e.timestamp, c.pulses.read_duration);
            antistokes_signal += e.label == EventLabel::signal;
        }
        ASSERT_LE(stokes_signal, t.true_excitations);
        ASSERT_LE(antistokes_signal, t.retrieved);
        ASSERT_TRUE(std::is_sorted(t.stokes_events.begin(), t.stokes_events.end(),
                                   [](const auto& x, const auto& y) {
                                       return x.timestamp < y.timestamp;
                                   }));
    }
}

TEST(SimulateTrial, ControlModeHasNoAntiStokesSignal) {
    ExperimentConfig c = paper_default();
    c.excitation_probability = 0.5;
    c.intrinsic_retrieval_efficiency = 1.0;
    const TrialModel model = TrialModel::from(c, 0.0, RunMode::control);
    TrialOutcome t;
    std::size_t background = 0;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        RandomStream rng(12, i);
        simulate_trial(model, rng, t);
        for (const auto& e : t.antistokes_events) {
            ASSERT_NE(e.label, EventLabel::signal);
            ++background;
        }
    }
    EXPECT_GT(background, 0u);
}

TEST(SimulateRun, PaperPerShotRates) {
    const ExperimentConfig c = paper_default();
    constexpr std::uint64_t n = 10'000'000;
    const CountRecord r = simulate_run(c, 0.0, n, 99, 1);
    const double stokes = static_cast<double>(r.n1) / n;
    const double antistokes = static_cast<double>(r.n2) / n;
    EXPECT_NEAR(stokes, 0.005, 4.0 * std::sqrt(0.005 / n));
    EXPECT_NEAR(antistokes, 2e-4, 4.0 * std::sqrt(2e-4 / n));
}

TEST(SimulateRun, WorkerCountDoesNotChangeResult) {
    ExperimentConfig c = paper_default();
    c.excitation_probability = 0.2;
    const CountRecord one = simulate_run(c, 1e-6, 100'003, 5, 1);
    const CountRecord eight = simulate_run(c, 1e-6, 100'003, 5, 8);
    EXPECT_EQ(one, eight);
    EXPECT_EQ(one.n_trials, 100'003u);
    EXPECT_NE(simulate_run(c, 1e-6, 100'003, 6, 1), one);
}

TEST(SimulateRun, RejectsEmptyRunsAndNoWorkers) {
    const ExperimentConfig c = paper_default();
    EXPECT_THROW(simulate_run(c, 0.0, 0, 1, 1), DomainError);
    EXPECT_THROW(simulate_run(c, 0.0, 10, 1, 0), DomainError);
    EXPECT_THROW(TrialModel::from(c, -1e-6), DomainError);
}

TEST(DumpEvents, HeaderAndDeterminism) {
    ExperimentConfig c = paper_default();
    c.excitation_probability = 0.3;
    const TrialModel model = TrialModel::from(c, 0.0);
    std::ostringstream a, b;
    dump_events(model, 2000, 3, a);
    dump_events(model, 2000, 3, b);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().rfind("trial,channel,timestamp_ns,label\n", 0), 0u);
    EXPECT_NE(a.str().find(",stokes,"), std::string::npos);
}
