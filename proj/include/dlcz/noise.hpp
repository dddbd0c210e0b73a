#pragma once

#include <array>
#include <optional>

#include "dlcz/units.hpp"

namespace dlcz {

/// Background sources, expressed as expected detections per pulse window.
/// CRF terms are quoted at `crf_reference_pressure` and scale as
/// (P / P_ref)^crf_pressure_exponent. Dark counts are derived from the
/// detection chains and pulse durations, see dark_counts_per_window().
struct NoiseRates {
    double crf_stokes_window = 0.0;
    double crf_antistokes_window = 0.0;
    double leakage_stokes = 0.0;
    double leakage_antistokes = 0.0;
    double crf_pressure_exponent = 1.0;
    double crf_reference_pressure = 10.0 * constants::torr;

    double crf_scale(double pressure) const;

    void validate() const;

    friend bool operator==(const NoiseRates&, const NoiseRates&) = default;
};

/// Hyperfine fluorescence lines, indexed by (excited F', ground F).
enum class FluorescenceLine { e1_g1 = 0, e2_g1 = 1, e1_g2 = 2, e2_g2 = 3 };
inline constexpr std::array all_fluorescence_lines{
    FluorescenceLine::e1_g1, FluorescenceLine::e2_g1, FluorescenceLine::e1_g2,
    FluorescenceLine::e2_g2};

/// Calibration for the spectral model. Line weights are relative; their
/// absolute scale is fixed by requiring the channel's signal-to-fluorescence
/// ratio through the signal-tuned etalon to equal `*_snr` at the configured
/// beam detuning and the CRF reference pressure.
struct CrfCalibration {
    std::array<double, 4> stokes_line_weights{0.0, 0.0, 1.0, 1.0};
    std::array<double, 4> antistokes_line_weights{1.0, 1.0, 0.0, 0.0};
    Extent stokes_snr = Extent::unbounded();
    Extent antistokes_snr = Extent::unbounded();
    double signal_linewidth = 1e6;  // Hz
    /// Gaussian FWHM of the fluorescence lines; Doppler width at the cell
    /// temperature when unset.
    std::optional<double> fluorescence_fwhm;

    void validate() const;

    friend bool operator==(const CrfCalibration&, const CrfCalibration&) = default;
};

}  // namespace dlcz
