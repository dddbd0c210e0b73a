#pragma once

namespace dlcz {

/// Scanning Fabry-Perot etalon. The free spectral range follows from the
/// finesse and the transmission bandwidth: fsr = finesse * fwhm.
struct EtalonFilter {
    double finesse = 100.0;
    double fwhm = 100e6;              // Hz
    double peak_transmission = 1.0;
    double center_offset = 0.0;       // Hz, relative to the channel signal frequency

    double fsr() const noexcept { return finesse * fwhm; }

    /// Throws ValidationError naming the offending field.
    void validate() const;

    friend bool operator==(const EtalonFilter&, const EtalonFilter&) = default;
};

/// Airy transmission at `nu` Hz from a transmission peak:
/// T = T0 / (1 + (2F/pi)^2 sin^2(pi nu / fsr)).
double etalon_transmission(double nu, const EtalonFilter& filter);

}  // namespace dlcz
