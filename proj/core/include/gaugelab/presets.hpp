#pragma once

#include "gaugelab/config.hpp"
#include "gaugelab/interaction.hpp"
#include "gaugelab/symmetry.hpp"

#include <string>
#include <vector>

namespace gaugelab {

struct PresetInfo {
  std::string name;
  std::string summary;
};

// Catalog for the CLI `presets` verb.
const std::vector<PresetInfo>& preset_catalog();
bool is_preset(const std::string& name);

// Named models selectable from the config file:
//   gauge_ising: J Z(x)Z + mu Z under the charge (+1, -1) action
//   single_site: mu Z only; every window bound degenerates to zero
//   xxz_charge:  (J/2)(X(x)X + Y(x)Y) + J*delta Z(x)Z + mu Z, a
//                charge-conserving coupling with off-diagonal terms
SymmetrySpec preset_symmetry(const std::string& name);
Interaction preset_interaction(const std::string& name, double J, double mu, double delta);

// Model described by a config: preset or raw [symmetry] + [[term]]
// blocks. Raw terms are validated against the declared action.
SymmetrySpec configured_symmetry(const ExperimentConfig& cfg);
Interaction configured_interaction(const ExperimentConfig& cfg);

}  // namespace gaugelab
