#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "dlcz/config.hpp"
#include "dlcz/correlation.hpp"
#include "dlcz/random.hpp"

namespace dlcz {

enum class EventLabel : std::uint8_t { signal, crf, leakage, dark };

std::string_view to_string(EventLabel label);

struct DetectionEvent {
    double timestamp;  // seconds from the start of the pulse window
    EventLabel label;

    friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

struct TrialOutcome {
    std::vector<DetectionEvent> stokes_events;
    std::vector<DetectionEvent> antistokes_events;
    std::uint32_t true_excitations = 0;
    std::uint32_t retrieved = 0;

    void clear() noexcept {
        stokes_events.clear();
        antistokes_events.clear();
        true_excitations = 0;
        retrieved = 0;
    }
};

struct WriteSample {
    std::uint32_t excitations;
    std::uint32_t stokes_photons;
};

/// Bose-Einstein excitation number, P(m) = p^m / (1 + p)^(m + 1); every
/// excitation is paired with one Stokes photon before losses.
WriteSample sample_write(double p, RandomStream& rng);

/// Number of excitations converted back into anti-Stokes photons.
std::uint32_t sample_read(std::uint32_t excitations, double eta_ret, RandomStream& rng);

/// Binomial thinning of `count` photons by `efficiency`.
std::uint32_t thin(std::uint32_t count, double efficiency, RandomStream& rng);

std::uint32_t sample_poisson(double mean, RandomStream& rng);

/// Poisson number of events with i.i.d. uniform timestamps in [0, window).
std::vector<DetectionEvent> add_background(double window, double expected, EventLabel label,
                                           RandomStream& rng);

/// Greedy non-paralysable dead time: an event survives iff it arrives at
/// least `dead_time` after the last surviving event. Input must be sorted.
std::vector<DetectionEvent> dead_time_filter(std::span<const DetectionEvent> events,
                                             double dead_time);

enum class RunMode {
    signal,
    /// Anti-Stokes etalon tuned onto the fluorescence: the anti-Stokes signal
    /// efficiency is zero while every background is kept.
    control,
};

struct BackgroundSource {
    EventLabel label;
    double expected;  // events per window
};

struct ChannelModel {
    double window = 0.0;
    double efficiency = 0.0;
    double dead_time = 0.0;
    std::array<BackgroundSource, 3> backgrounds{};
    double background_total = 0.0;
};

/// Per-trial constants for one configuration and storage delay.
struct TrialModel {
    double excitation_probability = 0.0;
    double retrieval = 0.0;
    ChannelModel stokes;
    ChannelModel antistokes;

    /// `storage_delay` is the gap between the end of the write pulse and the
    /// start of the read pulse.
    static TrialModel from(const ExperimentConfig& config, double storage_delay,
                           RunMode mode = RunMode::signal);
};

/// Expected per-window dark counts, dark_rate * pulse duration.
double dark_counts_per_window(const DetectionChain& chain, double window);

TrialOutcome simulate_trial(const ExperimentConfig& config, double delay, RandomStream& rng,
                            RunMode mode = RunMode::signal);

/// Allocation-free variant; `out` is cleared and refilled.
void simulate_trial(const TrialModel& model, RandomStream& rng, TrialOutcome& out);

/// Runs trials 0..n_trials-1, trial i drawing from RandomStream(seed, i).
/// The result does not depend on `workers`. Throws DomainError for
/// n_trials == 0 or workers == 0.
CountRecord simulate_run(const ExperimentConfig& config, double delay, std::uint64_t n_trials,
                         std::uint64_t seed, unsigned workers, RunMode mode = RunMode::signal);

CountRecord simulate_run(const TrialModel& model, std::uint64_t n_trials, std::uint64_t seed,
                         unsigned workers);

/// Writes `trial,channel,timestamp_ns,label` rows for every detected event.
void dump_events(const TrialModel& model, std::uint64_t n_trials, std::uint64_t seed,
                 std::ostream& out);

}  // namespace dlcz
