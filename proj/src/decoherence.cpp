#include "dlcz/decoherence.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "dlcz/config.hpp"
#include "dlcz/error.hpp"
#include "dlcz/geometry.hpp"

namespace dlcz {

DecoherenceBudget::DecoherenceBudget(Extent tau_fringe, double tau_transit, Extent tau_other)
    : tau_fringe_(tau_fringe), tau_transit_(tau_transit), tau_other_(tau_other) {
    if (!(tau_transit > 0.0)) throw DomainError("transit lifetime must be > 0");
    tau_combined_ = 1.0 / (tau_fringe_.rate() + 1.0 / tau_transit_ + tau_other_.rate());
}

Extent fringe_lifetime(double diffusion, const Extent& spin_wavelength) {
    if (!(diffusion > 0.0)) {
        throw DomainError(fmt::format("diffusion coefficient must be > 0, got {}", diffusion));
    }
    if (spin_wavelength.is_unbounded()) return Extent::unbounded();
    const double k = 2.0 * constants::pi / spin_wavelength.value();
    return Extent::finite(1.0 / (diffusion * k * k));
}

double transit_lifetime(double waist, double diffusion) {
    if (!(waist > 0.0)) throw DomainError(fmt::format("waist must be > 0, got {}", waist));
    if (!(diffusion > 0.0)) {
        throw DomainError(fmt::format("diffusion coefficient must be > 0, got {}", diffusion));
    }
    return waist * waist / (4.0 * diffusion);
}

double retrieval_efficiency(double delay, const DecoherenceBudget& budget, double eta0) {
    if (!(delay >= 0.0)) throw DomainError(fmt::format("delay must be >= 0, got {}", delay));
    if (!(eta0 >= 0.0 && eta0 <= 1.0)) {
        throw DomainError(fmt::format("eta0 must lie in [0, 1], got {}", eta0));
    }
    return eta0 * std::exp(-delay / budget.tau_combined());
}

DecoherenceBudget decoherence_budget(const ExperimentConfig& c) {
    const double d = diffusion_coefficient(c.cell.buffer_species, c.cell.buffer_pressure,
                                           c.cell.temperature, c.diffusion);
    const Extent lambda_spin =
        spin_wave_wavelength(c.geometry.theta_write_stokes, c.geometry.photon_wavelength);
    return DecoherenceBudget(fringe_lifetime(d, lambda_spin), transit_lifetime(c.write.waist, d),
                             c.tau_other);
}

}  // namespace dlcz
