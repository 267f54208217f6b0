#include "gaugelab/presets.hpp"

#include "gaugelab/operator_kernel.hpp"

namespace gaugelab {

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = {
      {"gauge_ising", "J ZZ coupling with a mu Z field, charges (+1, -1)"},
      {"single_site", "mu Z field only; all surface quantities vanish"},
      {"xxz_charge", "(J/2)(XX + YY) + J*delta ZZ + mu Z, charge conserving"},
  };
  return catalog;
}

bool is_preset(const std::string& name) {
  for (const PresetInfo& p : preset_catalog())
    if (p.name == name) return true;
  return false;
}

SymmetrySpec preset_symmetry(const std::string& name) {
  if (!is_preset(name)) throw ConfigError("unknown preset '" + name + "'");
  return SymmetrySpec::abelian({1, -1});
}

Interaction preset_interaction(const std::string& name, double J, double mu, double delta) {
  const SymmetrySpec spec = preset_symmetry(name);
  std::vector<InteractionTerm> terms;
  if (name == "gauge_ising") {
    if (J != 0.0) terms.push_back({{0, 1}, J * tensor(pauli_z(), pauli_z())});
    if (mu != 0.0) terms.push_back({{0}, mu * pauli_z()});
  } else if (name == "single_site") {
    if (mu != 0.0) terms.push_back({{0}, mu * pauli_z()});
  } else if (name == "xxz_charge") {
    Matrix two = 0.5 * J * (tensor(pauli_x(), pauli_x()) + tensor(pauli_y(), pauli_y()));
    two += (J * delta) * tensor(pauli_z(), pauli_z());
    if (J != 0.0) terms.push_back({{0, 1}, two});
    if (mu != 0.0) terms.push_back({{0}, mu * pauli_z()});
  }
  return Interaction(spec, std::move(terms));
}

SymmetrySpec configured_symmetry(const ExperimentConfig& cfg) {
  if (!cfg.preset.empty()) return preset_symmetry(cfg.preset);
  if (cfg.symmetry_kind == "trivial") return SymmetrySpec::trivial(cfg.d);
  if (cfg.symmetry_kind == "abelian") {
    if (cfg.charges.empty())
      throw ConfigError("config: [symmetry] kind 'abelian' needs 'charges'");
    return SymmetrySpec::abelian(cfg.charges);
  }
  if (cfg.symmetry_kind == "finite_group") {
    if (cfg.group_elements.empty())
      throw ConfigError("config: [symmetry] kind 'finite_group' needs 'elements'");
    return SymmetrySpec::finite_group(cfg.d, cfg.group_elements);
  }
  if (cfg.symmetry_kind == "lie") {
    if (cfg.lie_generators.empty())
      throw ConfigError("config: [symmetry] kind 'lie' needs 'generators'");
    return SymmetrySpec::lie(cfg.d, cfg.lie_generators);
  }
  throw ConfigError("config: unknown [symmetry] kind '" + cfg.symmetry_kind + "'");
}

Interaction configured_interaction(const ExperimentConfig& cfg) {
  if (!cfg.preset.empty())
    return preset_interaction(cfg.preset, cfg.J, cfg.mu, cfg.delta);
  const SymmetrySpec spec = configured_symmetry(cfg);
  std::vector<InteractionTerm> terms;
  terms.reserve(cfg.raw_terms.size());
  for (const RawTerm& t : cfg.raw_terms) terms.push_back({t.offsets, t.op});
  try {
    return Interaction(spec, std::move(terms));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace gaugelab
