#include "dlcz/geometry.hpp"

#include <cmath>

#include <Eigen/Geometry>
#include <fmt/format.h>

#include "dlcz/error.hpp"

namespace dlcz {

std::string_view to_string(PropagationMode m) {
    return m == PropagationMode::co_propagating ? "co_propagating" : "counter_propagating";
}

PropagationMode parse_propagation_mode(std::string_view name) {
    if (name == "co_propagating") return PropagationMode::co_propagating;
    if (name == "counter_propagating") return PropagationMode::counter_propagating;
    throw DomainError(fmt::format("unknown geometry preset '{}'", name));
}

WaveVector::WaveVector(const Eigen::Vector3d& direction, double magnitude)
    : magnitude_(magnitude) {
    const double norm = direction.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("wave vector direction is zero");
    if (!(magnitude > 0.0)) {
        throw DomainError(fmt::format("wave vector magnitude must be > 0, got {}", magnitude));
    }
    direction_ = direction / norm;
}

WaveVector WaveVector::from_frequency(const Eigen::Vector3d& direction, double frequency_hz) {
    return WaveVector(direction, 2.0 * constants::pi * frequency_hz / constants::speed_of_light);
}

Extent spin_wave_wavelength(double theta, double photon_wavelength) {
    if (!(theta >= 0.0 && theta <= constants::pi / 2)) {
        throw DomainError(fmt::format("spin-wave angle must lie in [0, pi/2], got {}", theta));
    }
    if (!(photon_wavelength > 0.0)) throw DomainError("photon wavelength must be > 0");
    if (theta == 0.0) return Extent::unbounded();
    return Extent::finite(photon_wavelength / std::sin(theta));
}

PhaseMismatch phase_mismatch(const WaveVector& k_write, const WaveVector& k_read,
                             const WaveVector& k_stokes, const WaveVector& k_antistokes) {
    const Eigen::Vector3d dk =
        (k_write.vector() + k_read.vector()) - (k_stokes.vector() + k_antistokes.vector());
    const double magnitude = dk.norm();
    const Extent coherence =
        magnitude > 0.0 ? Extent::finite(constants::pi / magnitude) : Extent::unbounded();
    return PhaseMismatch{dk, magnitude, coherence};
}

std::int64_t spatial_mode_count(double waist, double collection_half_angle,
                                double photon_wavelength) {
    if (!(waist > 0.0)) throw DomainError("waist must be > 0");
    if (!(collection_half_angle > 0.0 && collection_half_angle < constants::pi / 2)) {
        throw DomainError("collection half-angle must lie in (0, pi/2)");
    }
    if (!(photon_wavelength > 0.0)) throw DomainError("photon wavelength must be > 0");
    const double area = constants::pi * waist * waist;
    const double solid_angle = constants::pi * collection_half_angle * collection_half_angle;
    const double modes = area * solid_angle / (photon_wavelength * photon_wavelength);
    return std::max<std::int64_t>(1, std::llround(modes));
}

FieldWaveVectors layout_wave_vectors(const GeometryConfig& g, PropagationMode mode,
                                     const FieldFrequencies& nu) {
    const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
    const auto tilt = [](double angle) {
        return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitY());
    };
    const Eigen::Vector3d write_dir = z;
    const Eigen::Vector3d read_forward = tilt(g.theta_write_read) * z;
    const Eigen::Vector3d stokes_dir = tilt(g.theta_write_stokes) * write_dir;
    const Eigen::Vector3d antistokes_dir = tilt(-g.theta_read_antistokes) * read_forward;
    const Eigen::Vector3d read_dir =
        mode == PropagationMode::co_propagating ? read_forward : Eigen::Vector3d(-read_forward);
    return FieldWaveVectors{
        WaveVector::from_frequency(write_dir, nu.write),
        WaveVector::from_frequency(read_dir, nu.read),
        WaveVector::from_frequency(stokes_dir, nu.stokes),
        WaveVector::from_frequency(antistokes_dir, nu.antistokes),
    };
}

}  // namespace dlcz
