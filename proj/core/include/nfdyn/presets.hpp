#ifndef NFDYN_PRESETS_HPP
#define NFDYN_PRESETS_HPP

#include <string>
#include <vector>

#include "nfdyn/qpoly.hpp"
#include "nfdyn/quadreal.hpp"
#include "nfdyn/ring.hpp"

namespace nfdyn {

struct FieldPreset {
  std::string name;
  std::string description;
  QPoly min_poly;
};

struct GeneratorPreset {
  std::string name;
  std::string description;
  QuadReal value;
};

// Rational coefficient lists, low degree first, one per family member;
// instantiated over a concrete field through poly_from_rational_coeffs.
struct FamilyPreset {
  std::string name;
  std::string description;
  std::vector<QVec> coeffs;
};

const std::vector<FieldPreset>& field_presets();
const std::vector<GeneratorPreset>& generator_presets();
const std::vector<FamilyPreset>& family_presets();

const FieldPreset* find_field_preset(const std::string& name);
const GeneratorPreset* find_generator_preset(const std::string& name);
const FamilyPreset* find_family_preset(const std::string& name);

NumberFieldSpec make_preset_field(const std::string& name);

}  // namespace nfdyn

#endif
