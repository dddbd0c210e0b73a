#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlcz/config.hpp"
#include "dlcz/etalon.hpp"
#include "dlcz/noise.hpp"

namespace dlcz {

enum class ComponentKind { signal, fluorescence };
enum class LineShape { lorentzian, gaussian };

/// A spectral line; `weight` is its integrated rate in counts per second and
/// the normalised shape integrates to one.
struct SpectralComponent {
    ComponentKind kind;
    std::string name;
    double center;  // Hz, relative to the channel signal frequency
    double fwhm;    // Hz
    LineShape shape;
    double weight;
    std::optional<FluorescenceLine> line;  // set for fluorescence components

    double density(double nu) const;
    void validate() const;
};

struct SpectralModel {
    std::vector<SpectralComponent> components;
    EtalonFilter filter;

    void validate() const;
};

/// Doppler FWHM of a transition at `frequency` for 87Rb at `temperature`.
double doppler_fwhm(double temperature, double frequency);

/// Offset of a hyperfine line from the channel's signal frequency.
double line_offset(const ExperimentConfig& config, Channel channel, FluorescenceLine line);

/// Fraction of a unit-weight component passed by the etalon when tuned to
/// `etalon_center`: the integral of shape(nu) T(nu - etalon_center) over the
/// real line, evaluated over one free spectral range of the periodised
/// shape. Throws IntegrationError if the 1e-4 relative tolerance is missed.
double transmitted_fraction(const SpectralComponent& component, const EtalonFilter& filter,
                            double etalon_center);

/// Signal line plus Doppler-broadened fluorescence lines for one channel,
/// with fluorescence weights scaled by the calibration and by
/// (P / P_ref)^exponent. Throws CalibrationError when `calibration` is empty
/// or cannot be satisfied.
SpectralModel build_channel_spectrum(Channel channel, const ExperimentConfig& config,
                                     const std::optional<CrfCalibration>& calibration);

/// Uses config.spectrum as the calibration.
SpectralModel build_channel_spectrum(Channel channel, const ExperimentConfig& config);

struct ScanPoint {
    double etalon_center;
    double expected_counts;
    std::vector<double> per_component;
};

std::vector<ScanPoint> scan(const SpectralModel& model, std::span<const double> centers,
                            double integration);

/// Stokes-to-fluorescence count ratio through the signal-tuned Stokes etalon
/// at write-detuning magnitude `write_detuning` (0.3 to 3 GHz; the sign is
/// taken from config.write). The signal scales as 1/detuning^2 and the
/// fluorescence follows the Doppler wing seen by the write beam, both
/// relative to the calibration point at config.write.detuning. Unbounded when
/// there is no fluorescence.
Extent snr(double write_detuning, const ExperimentConfig& config,
           const CrfCalibration& calibration);

}  // namespace dlcz
