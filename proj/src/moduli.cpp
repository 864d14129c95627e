#include "charvar/moduli.hpp"

#include <numbers>

#include "charvar/errors.hpp"

namespace charvar {

ModuliPoint ModuliPoint::trivial(int genus) {
  ModuliPoint p;
  p.handles.assign(2 * static_cast<std::size_t>(genus), UnitQuaternion::identity());
  return p;
}

ModuliPoint RepresentationPoint::moduli() const {
  ModuliPoint p;
  p.handles = handles;
  return p;
}

RepresentationPoint RepresentationPoint::trivial(int genus) {
  return {std::vector<UnitQuaternion>(2 * static_cast<std::size_t>(genus),
                                      UnitQuaternion::identity())};
}

RepresentationPoint RepresentationPoint::from_moduli(const ModuliPoint& p,
                                                     double tolerance) {
  const ModuliPoint ref = ModuliPoint::trivial(0);
  for (int k = 0; k < 3; ++k)
    if (distance(p.punctures[k], ref.punctures[k]) > tolerance)
      throw NotInStratumError("punctures are not pinned to (i, j, -k)");
  return {p.handles};
}

UnitQuaternion commutator_product(std::span<const UnitQuaternion> handles) {
  if (handles.size() % 2 != 0)
    throw ShapeError("handle list must have even length");
  UnitQuaternion acc;
  for (std::size_t s = 0; s < handles.size(); s += 2) {
    const UnitQuaternion& a = handles[s];
    const UnitQuaternion& b = handles[s + 1];
    acc = acc * a * b * a.inverse() * b.inverse();
  }
  return acc;
}

double relation_residual(const ModuliPoint& p) {
  const UnitQuaternion lhs = commutator_product(p.handles) * p.punctures[0] *
                             p.punctures[1] * p.punctures[2];
  return distance(lhs, UnitQuaternion::identity());
}

ModuliPoint conjugate_point(const ModuliPoint& p, const UnitQuaternion& m) {
  ModuliPoint out;
  out.handles.reserve(p.handles.size());
  for (const UnitQuaternion& h : p.handles) out.handles.push_back(conjugate_by(m, h));
  for (int k = 0; k < 3; ++k) out.punctures[k] = conjugate_by(m, p.punctures[k]);
  return out;
}

ModuliPoint pin_gauge(const ModuliPoint& p) {
  const double res = relation_residual(p);
  if (res > 1e-8)
    throw NotInStratumError("relation residual " + std::to_string(res) +
                            " exceeds 1e-8");
  const UnitQuaternion m =
      standardize_triple(p.punctures[0], p.punctures[1], p.punctures[2], 1e-8);
  ModuliPoint out = conjugate_point(p, m);
  out.punctures = ModuliPoint::trivial(0).punctures;
  return out;
}

int moduli_dimension(int genus, int punctures) {
  if (punctures % 2 == 0)
    throw SmoothnessConditionError(
        "traceless moduli space is smooth only for an odd number of "
        "punctures");
  if (genus < 0 || punctures < 1)
    throw InvalidParameterError("need genus >= 0 and at least one puncture");
  const int dim = 6 * genus - 6 + 2 * punctures;
  if (dim < 0) throw InvalidParameterError("moduli space is empty");
  return dim;
}

double ht_gamma(std::span<const UnitQuaternion> handles) {
  const UnitQuaternion p = commutator_product(handles);
  if (distance(p, UnitQuaternion::identity()) <= 1e-15) return 0.5;
  const double t = p.trace();
  if (p.z() == 0.0) return 0.25;
  const double cot = 1.0 / std::tan(std::numbers::pi * t / 4.0);
  return std::atan(cot / p.z()) / (2.0 * std::numbers::pi);
}

ModuliPoint ht_embed(std::span<const UnitQuaternion> handles) {
  const UnitQuaternion p = commutator_product(handles);
  const double t = p.trace();
  if (t <= 1.0)
    throw OutOfNeighborhoodError("trace of prod [A,B] is " + std::to_string(t) +
                                 ", outside (1, 2]");
  const double angle = 2.0 * std::numbers::pi * ht_gamma(handles);
  const UnitQuaternion rot = UnitQuaternion::exp(0.0, 0.0, angle);
  ModuliPoint out;
  out.handles.assign(handles.begin(), handles.end());
  out.punctures[0] = UnitQuaternion::i();
  out.punctures[1] = rot * UnitQuaternion::i();
  out.punctures[2] = -(rot * p.inverse());
  return out;
}

}  // namespace charvar
