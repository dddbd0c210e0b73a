#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "dlcz/units.hpp"

namespace dlcz {

enum class PropagationMode { co_propagating, counter_propagating };

std::string_view to_string(PropagationMode m);
/// Throws DomainError for unknown names.
PropagationMode parse_propagation_mode(std::string_view name);

/// Beam and photon directions. All angles are in radians; the collection
/// half-angle defaults to waist / cell length (the acceptance of the
/// interaction volume) when not set.
struct GeometryConfig {
    double theta_write_stokes = 0.0;
    double theta_read_antistokes = 0.0;
    double theta_write_read = 6e-3;
    PropagationMode propagation = PropagationMode::co_propagating;
    double photon_wavelength = 795e-9;
    std::optional<double> collection_half_angle;

    void validate() const;

    friend bool operator==(const GeometryConfig&, const GeometryConfig&) = default;
};

class WaveVector {
public:
    /// `direction` is normalised; throws DomainError on a zero direction or
    /// nonpositive magnitude.
    WaveVector(const Eigen::Vector3d& direction, double magnitude);

    static WaveVector from_frequency(const Eigen::Vector3d& direction, double frequency_hz);

    const Eigen::Vector3d& direction() const noexcept { return direction_; }
    double magnitude() const noexcept { return magnitude_; }
    Eigen::Vector3d vector() const { return direction_ * magnitude_; }

private:
    Eigen::Vector3d direction_;
    double magnitude_;
};

/// Effective spin-wave wavelength photon_wavelength / sin(theta); unbounded
/// at theta = 0. Domain: theta in [0, pi/2].
Extent spin_wave_wavelength(double theta, double photon_wavelength);

struct PhaseMismatch {
    Eigen::Vector3d mismatch;  // (kW + kR) - (kS + kAS), rad/m
    double magnitude;          // rad/m
    Extent coherence_length;   // pi / |dk|

    bool satisfied_over(double cell_length) const {
        return coherence_length.is_unbounded() || coherence_length.value() >= cell_length;
    }
};

PhaseMismatch phase_mismatch(const WaveVector& k_write, const WaveVector& k_read,
                             const WaveVector& k_stokes, const WaveVector& k_antistokes);

/// Etendue estimate of the number of collected spatial modes,
/// max(1, round(pi w^2 * pi theta^2 / lambda^2)).
std::int64_t spatial_mode_count(double waist, double collection_half_angle,
                                double photon_wavelength);

/// Optical frequencies of the four fields taking part in the write/read cycle.
struct FieldFrequencies {
    double write;
    double read;
    double stokes;
    double antistokes;
};

struct FieldWaveVectors {
    WaveVector write;
    WaveVector read;
    WaveVector stokes;
    WaveVector antistokes;
};

/// Lays the beams out in the x-z plane. The write beam runs along +z, the read
/// beam is tilted by theta_write_read, the Stokes photon by +theta_write_stokes
/// from the write beam and the anti-Stokes photon by -theta_read_antistokes from
/// the read beam. In counter-propagating mode the read beam is reversed while
/// both photons stay forward.
FieldWaveVectors layout_wave_vectors(const GeometryConfig& geometry, PropagationMode mode,
                                     const FieldFrequencies& nu);

}  // namespace dlcz
