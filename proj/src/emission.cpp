#include "dlcz/emission.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "dlcz/decoherence.hpp"
#include "dlcz/error.hpp"

namespace dlcz {

namespace {

constexpr std::uint32_t small_binomial_limit = 64;
constexpr double small_poisson_limit = 30.0;
constexpr std::uint64_t chunk_trials = 1u << 14;

bool by_time(const DetectionEvent& a, const DetectionEvent& b) {
    return a.timestamp < b.timestamp;
}

void apply_dead_time(std::vector<DetectionEvent>& events, double dead_time) {
    if (events.size() < 2 || dead_time <= 0.0) return;
    std::size_t kept = 1;
    double last = events.front().timestamp;
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].timestamp >= last + dead_time) {
            last = events[i].timestamp;
            events[kept++] = events[i];
        }
    }
    events.resize(kept);
}

void add_backgrounds(const ChannelModel& channel, RandomStream& rng,
                     std::vector<DetectionEvent>& out) {
    const std::uint32_t count = sample_poisson(channel.background_total, rng);
    for (std::uint32_t i = 0; i < count; ++i) {
        // Superposed Poisson sources: each event belongs to source j with
        // probability expected_j / total.
        double pick = rng.uniform() * channel.background_total;
        EventLabel label = channel.backgrounds.back().label;
        for (const auto& source : channel.backgrounds) {
            if (pick < source.expected) {
                label = source.label;
                break;
            }
            pick -= source.expected;
        }
        out.push_back({rng.uniform() * channel.window, label});
    }
}

void finish_channel(const ChannelModel& channel, std::uint32_t signal_photons, RandomStream& rng,
                    std::vector<DetectionEvent>& events) {
    for (std::uint32_t i = 0; i < signal_photons; ++i) {
        events.push_back({rng.uniform() * channel.window, EventLabel::signal});
    }
    add_backgrounds(channel, rng, events);
    if (events.size() > 1) {
        std::sort(events.begin(), events.end(), by_time);
        apply_dead_time(events, channel.dead_time);
    }
}

ChannelModel make_channel(const DetectionChain& chain, double window, double efficiency,
                          double crf, double leakage) {
    ChannelModel m;
    m.window = window;
    m.efficiency = efficiency;
    m.dead_time = chain.dead_time;
    m.backgrounds = {BackgroundSource{EventLabel::crf, crf},
                     BackgroundSource{EventLabel::leakage, leakage},
                     BackgroundSource{EventLabel::dark, dark_counts_per_window(chain, window)}};
    for (const auto& b : m.backgrounds) m.background_total += b.expected;
    return m;
}

void check_fraction(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError(fmt::format("{} must lie in [0, 1], got {}", what, x));
    }
}

}  // namespace

std::string_view to_string(EventLabel label) {
    switch (label) {
        case EventLabel::signal: return "signal";
        case EventLabel::crf: return "crf";
        case EventLabel::leakage: return "leakage";
        case EventLabel::dark: return "dark";
    }
    return "?";
}

WriteSample sample_write(double p, RandomStream& rng) {
    if (!(p >= 0.0)) throw DomainError(fmt::format("p must be >= 0, got {}", p));
    if (p == 0.0) return {0, 0};
    // P(m >= k) = q^k with q = p / (1 + p); invert the tail.
    const double log_q = std::log(p / (1.0 + p));
    const double m = std::floor(std::log(rng.uniform()) / log_q);
    const auto excitations = static_cast<std::uint32_t>(
        std::min(m, static_cast<double>(std::numeric_limits<std::uint32_t>::max())));
    return {excitations, excitations};
}

std::uint32_t thin(std::uint32_t count, double efficiency, RandomStream& rng) {
    check_fraction(efficiency, "efficiency");
    if (count == 0 || efficiency == 0.0) return 0;
    if (efficiency == 1.0) return count;
    if (count <= small_binomial_limit) {
        std::uint32_t kept = 0;
        for (std::uint32_t i = 0; i < count; ++i) kept += rng.uniform() < efficiency ? 1 : 0;
        return kept;
    }
    return std::binomial_distribution<std::uint32_t>(count, efficiency)(rng);
}

std::uint32_t sample_read(std::uint32_t excitations, double eta_ret, RandomStream& rng) {
    return thin(excitations, eta_ret, rng);
}

std::uint32_t sample_poisson(double mean, RandomStream& rng) {
    if (!(mean >= 0.0)) throw DomainError(fmt::format("Poisson mean must be >= 0, got {}", mean));
    if (mean == 0.0) return 0;
    if (mean < small_poisson_limit) {
        const double u = rng.uniform();
        double term = std::exp(-mean);
        double cdf = term;
        std::uint32_t k = 0;
        while (u > cdf && term > 0.0) {
            ++k;
            term *= mean / k;
            cdf += term;
        }
        return k;
    }
    return std::poisson_distribution<std::uint32_t>(mean)(rng);
}

std::vector<DetectionEvent> add_background(double window, double expected, EventLabel label,
                                           RandomStream& rng) {
    if (!(window > 0.0)) throw DomainError("background window must be > 0");
    std::vector<DetectionEvent> events(sample_poisson(expected, rng));
    for (auto& e : events) e = {rng.uniform() * window, label};
    return events;
}

std::vector<DetectionEvent> dead_time_filter(std::span<const DetectionEvent> events,
                                             double dead_time) {
    if (!std::is_sorted(events.begin(), events.end(), by_time)) {
        throw UnsortedInputError("dead-time filter needs events sorted by timestamp");
    }
    if (dead_time < 0.0) throw DomainError("dead time must be >= 0");
    std::vector<DetectionEvent> kept(events.begin(), events.end());
    apply_dead_time(kept, dead_time);
    return kept;
}

double dark_counts_per_window(const DetectionChain& chain, double window) {
    return chain.dark_rate * window;
}

TrialModel TrialModel::from(const ExperimentConfig& c, double storage_delay, RunMode mode) {
    if (!(storage_delay >= 0.0)) {
        throw DomainError(fmt::format("storage delay must be >= 0, got {}", storage_delay));
    }
    const double crf_scale = c.noise.crf_scale(c.cell.buffer_pressure);
    TrialModel m;
    m.excitation_probability = c.excitation_probability;
    m.retrieval =
        retrieval_efficiency(storage_delay, decoherence_budget(c), c.intrinsic_retrieval_efficiency);
    m.stokes = make_channel(c.stokes_chain, c.pulses.write_duration,
                            c.stokes_chain.overall_efficiency(),
                            c.noise.crf_stokes_window * crf_scale, c.noise.leakage_stokes);
    m.antistokes = make_channel(
        c.antistokes_chain, c.pulses.read_duration,
        mode == RunMode::control ? 0.0 : c.antistokes_chain.overall_efficiency(),
        c.noise.crf_antistokes_window * crf_scale, c.noise.leakage_antistokes);
    return m;
}

void simulate_trial(const TrialModel& model, RandomStream& rng, TrialOutcome& out) {
    out.clear();
    const WriteSample write = sample_write(model.excitation_probability, rng);
    out.true_excitations = write.excitations;
    const std::uint32_t stokes_signal = thin(write.stokes_photons, model.stokes.efficiency, rng);
    out.retrieved = sample_read(write.excitations, model.retrieval, rng);
    const std::uint32_t antistokes_signal = thin(out.retrieved, model.antistokes.efficiency, rng);
    finish_channel(model.stokes, stokes_signal, rng, out.stokes_events);
    finish_channel(model.antistokes, antistokes_signal, rng, out.antistokes_events);
}

TrialOutcome simulate_trial(const ExperimentConfig& config, double delay, RandomStream& rng,
                            RunMode mode) {
    TrialOutcome out;
    simulate_trial(TrialModel::from(config, delay, mode), rng, out);
    return out;
}

CountRecord simulate_run(const TrialModel& model, std::uint64_t n_trials, std::uint64_t seed,
                         unsigned workers) {
    if (n_trials == 0) throw DomainError("n_trials must be >= 1");
    if (workers == 0) throw DomainError("workers must be >= 1");

    const auto run_range = [&](std::uint64_t begin, std::uint64_t end, CountRecord& record,
                               TrialOutcome& scratch) {
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            RandomStream rng(seed, trial);
            simulate_trial(model, rng, scratch);
            record.add_trial(scratch.stokes_events.size(), scratch.antistokes_events.size());
        }
    };

    if (workers == 1) {
        CountRecord record;
        TrialOutcome scratch;
        run_range(0, n_trials, record, scratch);
        return record;
    }

    // Disjoint chunks of trial indices; the merge is field-wise integer
    // addition, so the result is independent of scheduling.
    std::atomic<std::uint64_t> next_chunk{0};
    const std::uint64_t n_chunks = (n_trials + chunk_trials - 1) / chunk_trials;
    CountRecord total;
    std::mutex merge_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            CountRecord local;
            TrialOutcome scratch;
            for (std::uint64_t chunk = next_chunk++; chunk < n_chunks; chunk = next_chunk++) {
                const std::uint64_t begin = chunk * chunk_trials;
                run_range(begin, std::min(n_trials, begin + chunk_trials), local, scratch);
            }
            const std::lock_guard lock(merge_mutex);
            total += local;
        });
    }
    for (auto& t : pool) t.join();
    return total;
}

CountRecord simulate_run(const ExperimentConfig& config, double delay, std::uint64_t n_trials,
                         std::uint64_t seed, unsigned workers, RunMode mode) {
    return simulate_run(TrialModel::from(config, delay, mode), n_trials, seed, workers);
}

void dump_events(const TrialModel& model, std::uint64_t n_trials, std::uint64_t seed,
                 std::ostream& out) {
    out << "trial,channel,timestamp_ns,label\n";
    TrialOutcome scratch;
    for (std::uint64_t trial = 0; trial < n_trials; ++trial) {
        RandomStream rng(seed, trial);
        simulate_trial(model, rng, scratch);
        for (const auto& e : scratch.stokes_events) {
            out << fmt::format("{},stokes,{:.3f},{}\n", trial, e.timestamp * 1e9, to_string(e.label));
        }
        for (const auto& e : scratch.antistokes_events) {
            out << fmt::format("{},anti_stokes,{:.3f},{}\n", trial, e.timestamp * 1e9,
                               to_string(e.label));
        }
    }
}

}  // namespace dlcz
