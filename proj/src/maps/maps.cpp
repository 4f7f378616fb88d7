#include "invariety/maps/maps.hpp"

namespace invariety::maps {

namespace {

struct Entry {
  MapId id;
  const char* name;
  std::size_t dim;
  std::size_t invariants;
  std::vector<std::string> params;
};

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries{
      {MapId::TwoDimLogistic, "2d-logistic", 2, 1, {}},
      {MapId::TwoDimBC, "2d-bc", 2, 1, {"b", "c"}},
      {MapId::OneDimBC, "1d-bc", 1, 0, {"h", "b", "c"}},
      {MapId::LV3, "lv3", 3, 2, {}},
      {MapId::PainleveV, "painleve5", 4, 3, {}},
      {MapId::QRT, "qrt", 2, 1, {"a1", "b1", "c1", "d1", "e1", "f1", "a2", "b2", "c2", "d2", "e2", "f2"}},
      {MapId::NormalForm, "normal-form", 1, 0, {"h", "hp"}},
  };
  return entries;
}

const Entry& lookup(MapId id) {
  for (const auto& e : catalog()) {
    if (e.id == id) return e;
  }
  throw Error("unknown map id");
}

}  // namespace

MapId map_id_from_string(const std::string& name) {
  for (const auto& e : catalog()) {
    if (name == e.name) return e.id;
  }
  throw UsageError("unknown map '" + name + "'");
}

std::string to_string(MapId id) { return lookup(id).name; }
std::size_t dimension(MapId id) { return lookup(id).dim; }
std::size_t invariant_count(MapId id) { return lookup(id).invariants; }
std::size_t parameter_count(MapId id) { return lookup(id).params.size(); }
std::vector<std::string> parameter_names(MapId id) { return lookup(id).params; }

MapSpec make_spec(MapId id, std::vector<cplx> params) {
  if (params.size() != parameter_count(id)) {
    throw UsageError("map '" + to_string(id) + "' takes " + std::to_string(parameter_count(id)) + " parameters, got " +
                     std::to_string(params.size()));
  }
  return {id, std::move(params)};
}

cplx OneDimReduction::operator()(cplx x) const { return maps::apply(spec(), std::vector<cplx>{x})[0]; }

cplx OneDimReduction::companion(cplx X) const { return checked_ratio(h * (1.0 - c * X), 1.0 - b * X, "1-bX"); }

OneDimReduction reduce_two_dim(cplx b, cplx c, cplx h) { return {h, b, c}; }

cplx NormalFormConjugacy::z_of_x(cplx x) const { return offset + checked_ratio(slope, x, "x"); }

cplx NormalFormConjugacy::x_of_z(cplx z) const { return checked_ratio(slope, z - offset, "z - offset"); }

NormalFormConjugacy conjugate_to_normal(cplx b, cplx c, cplx h) {
  if (std::abs(b - c) < kPoleTolerance * (1.0 + std::abs(b))) throw DegenerateInput("b = c: no normal-form conjugacy");
  if (std::abs(h) == 0.0 || std::abs(1.0 - h) < kPoleTolerance) throw DegenerateInput("h = 0 or h = 1");
  cplx hp = (1.0 + c / (b - c) * (1.0 - h) * (1.0 - h)) / h;
  NormalFormConjugacy out;
  out.h = h;
  out.hp = hp;
  out.offset = (1.0 - hp) / (1.0 - h);
  out.slope = (1.0 - h) / (h * (b - c));
  return out;
}

cplx normal_form_derivative(cplx h, cplx hp, cplx z) {
  cplx den = 1.0 + h * z;
  return checked_ratio(hp + 2.0 * z + h * z * z, den * den, "1+hz");
}

cplx fixed_point_zp(cplx h, cplx hp) { return checked_ratio(1.0 - hp, 1.0 - h, "1-h"); }

std::array<cplx, 2> critical_points(cplx h, cplx hp) {
  cplx root = std::sqrt(1.0 - h * hp);
  return {(-1.0 + root) / h, (-1.0 - root) / h};
}

std::array<cplx, 3> fixed_point_multipliers(cplx h, cplx hp) {
  return {hp, checked_ratio(2.0 - h - hp, 1.0 - h * hp, "1-hh'"), h};
}

cplx normal_form_at_infinity(cplx h, cplx hp, cplx w) { return checked_ratio(w * (w + h), 1.0 + hp * w, "1+h'w"); }

}  // namespace invariety::maps
