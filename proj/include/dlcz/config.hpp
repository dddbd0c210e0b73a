#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlcz/etalon.hpp"
#include "dlcz/geometry.hpp"
#include "dlcz/noise.hpp"
#include "dlcz/units.hpp"

namespace dlcz {

enum class BufferGas { Ne };

struct VaporCell {
    double length = 0.075;                       // m
    double temperature = 310.15;                 // K
    BufferGas buffer_species = BufferGas::Ne;
    double buffer_pressure = 10.0 * constants::torr;  // Pa
    std::optional<double> atomic_density_override;    // m^-3

    void validate() const;
    /// Override if present, otherwise rb_number_density(temperature).
    double atomic_density() const;

    friend bool operator==(const VaporCell&, const VaporCell&) = default;
};

enum class BeamRole { write, read, pump };
enum class ReferenceLine { F1_excited, F2_excited };

/// Detuning is signed: negative is below (red of) the reference line.
struct Beam {
    BeamRole role = BeamRole::write;
    double power = 0.0;          // W
    double waist = 1.3e-3;       // m, 1/e^2 radius
    double wavelength = 795e-9;  // m
    double detuning = 0.0;       // Hz
    ReferenceLine reference_line = ReferenceLine::F1_excited;

    void validate() const;
    double intensity() const;

    friend bool operator==(const Beam&, const Beam&) = default;
};

/// write_read_delay is leading edge to leading edge; the storage time seen by
/// the spin wave is the gap between the end of the write pulse and the start
/// of the read pulse.
struct PulseSequence {
    double write_duration = 1e-6;
    double read_duration = 1e-6;
    double write_read_delay = 1e-6;
    double pump_gap_before_write = 400e-9;
    double repetition_rate = 20e3;

    double storage_gap() const noexcept { return write_read_delay - write_duration; }
    void validate() const;

    friend bool operator==(const PulseSequence&, const PulseSequence&) = default;
};

enum class Channel { stokes, anti_stokes };

struct DetectionChain {
    Channel channel = Channel::stokes;
    double path_transmission = 1.0;
    double detector_efficiency = 1.0;
    double dark_rate = 0.0;   // counts/s
    double dead_time = 0.0;   // s

    double overall_efficiency() const noexcept { return path_transmission * detector_efficiency; }
    void validate() const;

    friend bool operator==(const DetectionChain&, const DetectionChain&) = default;
};

/// Reference point of the buffer-gas diffusion scaling
/// D = D0 (P0 / P) (T / T0)^(3/2).
struct DiffusionReference {
    double d0 = 2e-5;                  // m^2/s
    double p0 = constants::atm;        // Pa
    double t0 = 300.0;                 // K

    void validate() const;

    friend bool operator==(const DiffusionReference&, const DiffusionReference&) = default;
};

struct ExperimentConfig {
    VaporCell cell;
    Beam write;
    Beam read;
    PulseSequence pulses;
    DetectionChain stokes_chain;
    DetectionChain antistokes_chain;
    EtalonFilter stokes_filter;
    EtalonFilter antistokes_filter;
    GeometryConfig geometry;
    double excitation_probability = 0.0;
    double intrinsic_retrieval_efficiency = 1.0;
    Extent tau_other = Extent::unbounded();
    NoiseRates noise;
    CrfCalibration spectrum;
    DiffusionReference diffusion;
    double hyperfine_ground_splitting = 6.834682610904e9;  // Hz
    double excited_splitting = 0.814e9;                    // Hz

    /// Checks every invariant; throws ValidationError on the first violation
    /// and returns non-fatal warnings.
    std::vector<std::string> validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Apparatus preset: 7.5 cm cell at 37 C with 10 Torr Ne, 0.6/1.2 mW beams
/// with 1.3 mm waist, 1 us pulses at 20 kHz, etalons of finesse 100, and the
/// excitation, noise and decoherence parameters calibrated to the measured
/// per-shot detection rates (see calibration.hpp).
ExperimentConfig paper_default();

inline constexpr std::string_view paper_default_name = "paper-default";

/// Parses an INI document with one section per component and unit-suffixed
/// values. A top-level `preset = paper-default` key makes every other key
/// optional, falling back to the preset.
ExperimentConfig load_config(std::string_view text);

/// Reads a file, or returns the preset when `path` is "paper-default".
ExperimentConfig load_config_file(const std::string& path);

/// Complete document that load_config maps back to an equal config.
std::string serialize(const ExperimentConfig& config);

/// I = P / (pi w^2), W/m^2.
double beam_intensity(double power, double waist);

/// Saturated rubidium vapour density (m^-3) for 250 K < T < 450 K.
double rb_number_density(double temperature);

/// Rb diffusion coefficient in the buffer gas, m^2/s.
double diffusion_coefficient(BufferGas species, double pressure, double temperature,
                             const DiffusionReference& ref = {});

/// Frequencies of the write, read, Stokes and anti-Stokes fields. The write
/// beam addresses ground F=1 and the read beam ground F=2; F=1 -> F'=1 is
/// placed at c / photon_wavelength.
FieldFrequencies field_frequencies(const ExperimentConfig& config);

std::string_view to_string(BufferGas g);
std::string_view to_string(ReferenceLine l);
std::string_view to_string(Channel c);
Channel parse_channel(std::string_view name);

}  // namespace dlcz
