#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace dlcz {

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double boltzmann = 1.380649e-23;       // J/K
inline constexpr double speed_of_light = 299792458.0;   // m/s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double rb87_mass = 86.909180527 * atomic_mass_unit;
inline constexpr double torr = 101325.0 / 760.0;         // Pa
inline constexpr double atm = 101325.0;                  // Pa
inline constexpr double zero_celsius = 273.15;           // K
}  // namespace constants

/// A length or time scale that may be unbounded (a lifetime with no
/// decay, a wavelength at zero angle). Kept distinct from a plain double so
/// that callers branch on unboundedness explicitly.
class Extent {
public:
    static constexpr Extent unbounded() noexcept { return Extent(); }
    static Extent finite(double value);

    constexpr bool is_unbounded() const noexcept { return unbounded_; }
    constexpr bool is_finite() const noexcept { return !unbounded_; }

    /// Throws DomainError when unbounded.
    double value() const;

    /// 1/value, or 0 for an unbounded extent.
    constexpr double rate() const noexcept { return unbounded_ ? 0.0 : 1.0 / value_; }

    /// value, or +infinity.
    constexpr double or_infinity() const noexcept {
        return unbounded_ ? std::numeric_limits<double>::infinity() : value_;
    }

    friend constexpr bool operator==(const Extent&, const Extent&) = default;

private:
    constexpr Extent() = default;
    constexpr explicit Extent(double v) : value_(v), unbounded_(false) {}

    double value_ = 0.0;
    bool unbounded_ = true;
};

enum class Dimension {
    dimensionless,
    length,
    time,
    frequency,
    power,
    temperature,
    pressure,
    angle,
    diffusivity,
    number_density,
};

std::string_view to_string(Dimension d);

/// Parses "<number> <unit>" into SI. Dimensionless quantities accept a bare
/// number or a "%" suffix; every other dimension requires a unit.
double parse_quantity(std::string_view text, Dimension dim);

/// Parses an Extent: "unbounded" / "inf", or a quantity.
Extent parse_extent(std::string_view text, Dimension dim);

/// Formats an SI value with its base unit so that parse_quantity recovers
/// the identical double.
std::string format_quantity(double value_si, Dimension dim);
std::string format_extent(const Extent& e, Dimension dim);

}  // namespace dlcz
