#pragma once

#include "dlcz/units.hpp"

namespace dlcz {

struct ExperimentConfig;

/// Spin-wave lifetimes per mechanism. The combined lifetime is the harmonic
/// sum 1/tau = 1/tau_fringe + 1/tau_transit + 1/tau_other, unbounded terms
/// contributing zero.
class DecoherenceBudget {
public:
    DecoherenceBudget(Extent tau_fringe, double tau_transit, Extent tau_other);

    const Extent& tau_fringe() const noexcept { return tau_fringe_; }
    double tau_transit() const noexcept { return tau_transit_; }
    const Extent& tau_other() const noexcept { return tau_other_; }
    double tau_combined() const noexcept { return tau_combined_; }

private:
    Extent tau_fringe_;
    double tau_transit_;
    Extent tau_other_;
    double tau_combined_;
};

/// Diffusive wash-out of a spin-wave grating: 1 / (D k^2), k = 2 pi / lambda.
Extent fringe_lifetime(double diffusion, const Extent& spin_wavelength);

/// Lowest-order diffusive escape from the beam: w^2 / (4 D).
double transit_lifetime(double waist, double diffusion);

/// eta0 * exp(-delay / tau_combined).
double retrieval_efficiency(double delay, const DecoherenceBudget& budget, double eta0);

/// Budget for a configuration: D from the buffer gas, the spin-wave
/// wavelength from theta_write_stokes, transit across the write-beam waist.
DecoherenceBudget decoherence_budget(const ExperimentConfig& config);

}  // namespace dlcz
