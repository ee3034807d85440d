#include "nfdyn/presets.hpp"

#include "nfdyn/errors.hpp"

namespace nfdyn {

namespace {

QPoly poly(std::vector<long> coeffs) {
  QVec c;
  for (long v : coeffs) c.emplace_back(v);
  return QPoly(std::move(c));
}

QVec qvec(std::vector<long> coeffs) {
  QVec c;
  for (long v : coeffs) c.emplace_back(v);
  return c;
}

}  // namespace

const std::vector<FieldPreset>& field_presets() {
  static const std::vector<FieldPreset> presets = {
      {"rational", "Q, the rationals (degree 1)", poly({0, 1})},
      {"gaussian", "Q(i), x^2 + 1", poly({1, 0, 1})},
      {"sqrt2", "Q(sqrt 2), x^2 - 2", poly({-2, 0, 1})},
      {"cubic", "Q(theta), x^3 - x - 1", poly({-1, -1, 0, 1})},
  };
  return presets;
}

const std::vector<GeneratorPreset>& generator_presets() {
  static const std::vector<GeneratorPreset> presets = {
      {"sqrt2", "sqrt 2", QuadReal(mpq_class(0), mpq_class(1), 2)},
      {"sqrt3", "sqrt 3", QuadReal(mpq_class(0), mpq_class(1), 3)},
      {"golden", "(1 + sqrt 5) / 2", QuadReal(mpq_class(1, 2), mpq_class(1, 2), 5)},
      {"sqrt2-minus-1", "sqrt 2 - 1", QuadReal(mpq_class(-1), mpq_class(1), 2)},
  };
  return presets;
}

const std::vector<FamilyPreset>& family_presets() {
  static const std::vector<FamilyPreset> presets = {
      {"square", "{ x^2 }", {qvec({0, 0, 1})}},
      {"square-plus-one", "{ x^2 + 1 }", {qvec({1, 0, 1})}},
      {"square-and-shift", "{ x^2, x - 1 }", {qvec({0, 0, 1}), qvec({-1, 1})}},
      {"linear-square", "{ x, x^2 }", {qvec({0, 1}), qvec({0, 0, 1})}},
      {"triple-1-2-3", "{ p, 2p, 3p } with p = x^2",
       {qvec({0, 0, 1}), qvec({0, 0, 2}), qvec({0, 0, 3})}},
  };
  return presets;
}

namespace {

template <typename T>
const T* find_by_name(const std::vector<T>& list, const std::string& name) {
  for (const auto& item : list)
    if (item.name == name) return &item;
  return nullptr;
}

}  // namespace

const FieldPreset* find_field_preset(const std::string& name) {
  return find_by_name(field_presets(), name);
}
const GeneratorPreset* find_generator_preset(const std::string& name) {
  return find_by_name(generator_presets(), name);
}
const FamilyPreset* find_family_preset(const std::string& name) {
  return find_by_name(family_presets(), name);
}

NumberFieldSpec make_preset_field(const std::string& name) {
  const FieldPreset* p = find_field_preset(name);
  if (!p) throw ValidationError("unknown field preset: " + name);
  return make_field(p->min_poly);
}

}  // namespace nfdyn
