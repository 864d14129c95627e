#include "charvar/solver.hpp"

#include <algorithm>
#include <cmath>

#include "charvar/detail/engine.hpp"
#include "charvar/errors.hpp"

namespace charvar {
namespace {

using detail::Su2Group;
using System = detail::WordSystem<Su2Group>;
using Point = detail::PointOf<Su2Group>;

Point to_point(const RepresentationPoint& p) {
  Point x;
  x.reserve(p.handles.size());
  for (const UnitQuaternion& q : p.handles) x.push_back(q.raw());
  return x;
}

RepresentationPoint from_point(const Point& x) {
  RepresentationPoint p;
  p.handles.reserve(x.size());
  for (const Quaternion& q : x) p.handles.push_back(UnitQuaternion::normalized(q));
  return p;
}

System make_system(const HeegaardDiagram& d) {
  std::vector<FreeWord> words = d.all_curves();
  if (d.genus > 0) words.push_back(surface_relator(d.genus));
  return System(Su2Group{}, 2 * d.genus, std::move(words));
}

void check_arity(const HeegaardDiagram& d, const RepresentationPoint& p) {
  if (p.handles.size() != 2 * static_cast<std::size_t>(d.genus))
    throw ShapeError("point has " + std::to_string(p.handles.size()) +
                     " handle entries, diagram genus " +
                     std::to_string(d.genus) + " needs " +
                     std::to_string(2 * d.genus));
}

}  // namespace

std::string to_string(Classification c) {
  switch (c) {
    case Classification::kIsolated: return "isolated";
    case Classification::kSphere: return "sphere";
    case Classification::kThreeSphereLike: return "three-sphere-like";
    case Classification::kOther: return "other";
  }
  return "other";
}

Classification classify(int dimension, bool signature_constant) {
  if (dimension == 0) return Classification::kIsolated;
  if (dimension == 2 && signature_constant) return Classification::kSphere;
  if (dimension == 3) return Classification::kThreeSphereLike;
  return Classification::kOther;
}

FreeWord surface_relator(int genus) {
  FreeWord w;
  for (int j = 1; j <= genus; ++j) {
    const FreeWord a = FreeWord::a(j), b = FreeWord::b(j);
    w = w * a * b * a.inverse() * b.inverse();
  }
  return w;
}

double residual(const HeegaardDiagram& d, const RepresentationPoint& p) {
  check_arity(d, p);
  return make_system(d).residual_norm(to_point(p));
}

RefineResult refine(const HeegaardDiagram& d, const RepresentationPoint& p,
                    const SolverConfig& cfg) {
  check_arity(d, p);
  const System sys = make_system(d);
  auto res = detail::levenberg_marquardt(sys, to_point(p), cfg.converge_tol,
                                         cfg.max_iterations);
  return {from_point(res.x), res.residual, res.converged, res.iterations};
}

Eigen::MatrixXd constraint_jacobian(const HeegaardDiagram& d,
                                    const RepresentationPoint& p,
                                    bool analytic) {
  check_arity(d, p);
  const System sys = make_system(d);
  Eigen::MatrixXd jac;
  if (analytic) {
    sys.jacobian(to_point(p), jac);
  } else {
    sys.jacobian_fd(to_point(p), jac);
  }
  return jac;
}

int jacobian_kernel_dim(const HeegaardDiagram& d, const RepresentationPoint& p,
                        const SolverConfig& cfg) {
  check_arity(d, p);
  return detail::kernel_dimension_fd(make_system(d), to_point(p), cfg.rank_tol);
}

SolutionSet solve_intersection(const HeegaardDiagram& d,
                               const SolverConfig& cfg) {
  cfg.validate();
  const ValidationReport rep = validate_diagram(d);
  if (!rep.pass) throw ValidationError(rep.failures.front());
  const System sys = make_system(d);
  const Su2Group group;
  const int slots = 2 * d.genus;
  auto sample = [&](int k) {
    if (k == 0) return Point(slots, group.identity());
    auto rng = detail::indexed_rng(cfg.seed, static_cast<std::uint64_t>(k));
    const auto mode =
        k % 2 == 1 ? detail::StartMode::kHaar : detail::StartMode::kTorus;
    Point x;
    for (int s = 0; s < slots; ++s) x.push_back(group.random(rng, mode));
    return x;
  };
  auto raw = detail::multistart(sys, cfg, cfg.effective_starts(d.genus), sample);

  SolutionSet out;
  out.diagram = d;
  out.starts = raw.starts;
  out.converged_starts = raw.converged;
  for (const Point& x : raw.points) out.points.push_back(from_point(x));
  out.residuals = raw.residuals;
  out.kernel_dims = raw.kernel_dims;
  return out;
}

ComponentReport cluster_components(const SolutionSet& s,
                                   const SolverConfig& cfg) {
  const System sys = make_system(s.diagram);
  std::vector<Point> pts;
  for (const RepresentationPoint& p : s.points) pts.push_back(to_point(p));
  const auto comps = detail::cluster(sys, pts, s.kernel_dims, cfg);

  ComponentReport rep;
  rep.diagram = s.diagram;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& gc = comps[c];
    Component comp;
    comp.dimension = gc.dimension;
    for (int m : gc.members) comp.samples.push_back(s.points[m]);
    comp.trace_signature = gc.signature;
    comp.signature_constant = gc.signature_constant;
    comp.kernel_agreement = gc.agreement;
    comp.ambiguous = gc.ambiguous;
    comp.local_dimension = gc.local_dimension;
    comp.classification = classify(gc.dimension, gc.signature_constant);
    if (gc.ambiguous)
      rep.warnings.push_back("component " + std::to_string(c) +
                             ": kernel dimensions agree on only " +
                             std::to_string(gc.agreement) + " of samples");
    if (gc.local_dimension != gc.dimension)
      rep.warnings.push_back(
          "component " + std::to_string(c) + ": local sampling dimension " +
          std::to_string(gc.local_dimension) + " differs from kernel dimension " +
          std::to_string(gc.dimension));
    rep.components.push_back(std::move(comp));
  }
  return rep;
}

GeneratorMap identity_map(int genus) {
  GeneratorMap m(2 * static_cast<std::size_t>(genus));
  for (std::size_t s = 0; s < m.size(); ++s) m[s] = static_cast<int>(s);
  return m;
}

static void check_map(const ComponentReport& r1, const ComponentReport& r2,
               const GeneratorMap& slot_map) {
  if (slot_map.size() != 2 * static_cast<std::size_t>(r1.diagram.genus))
    throw ShapeError("generator map must cover every slot of the first diagram");
  for (int s : slot_map)
    if (s < 0 || s >= 2 * r2.diagram.genus)
      throw ShapeError("generator map leaves the second diagram");
}

std::vector<int> restrict_components(const ComponentReport& r1,
                                     const ComponentReport& r2,
                                     const GeneratorMap& slot_map,
                                     const SolverConfig& cfg) {
  check_map(r1, r2, slot_map);
  const System sys1 = make_system(r1.diagram);
  std::vector<Point> pts;
  std::vector<detail::GenericComponent> comps1;
  for (const Component& c : r1.components) {
    detail::GenericComponent gc;
    gc.dimension = c.dimension;
    for (const RepresentationPoint& p : c.samples) {
      gc.members.push_back(static_cast<int>(pts.size()));
      pts.push_back(to_point(p));
    }
    comps1.push_back(std::move(gc));
  }

  std::vector<int> out;
  for (const Component& comp : r2.components) {
    std::vector<std::size_t> picks{0};
    if (comp.samples.size() > 2) picks.push_back(comp.samples.size() / 2);
    if (comp.samples.size() > 1) picks.push_back(comp.samples.size() - 1);
    int found = -2;
    for (std::size_t idx : picks) {
      Point pulled;
      for (int s : slot_map) pulled.push_back(comp.samples[idx].handles[s].raw());
      const int c1 = detail::locate_component(sys1, pulled, pts, comps1, cfg);
      found = (found == -2 || found == c1) ? c1 : -1;
    }
    out.push_back(found < 0 ? -1 : found);
  }
  return out;
}

Matching match_reports(const ComponentReport& r1, const ComponentReport& r2,
                       const GeneratorMap& slot_map, const SolverConfig& cfg) {
  check_map(r1, r2, slot_map);
  const int slots2 = 2 * r2.diagram.genus;
  std::vector<bool> image(slots2, false);
  for (int s : slot_map) image[s] = true;

  Matching out;
  const std::vector<int> target = restrict_components(r1, r2, slot_map, cfg);
  std::vector<int> hits(r1.components.size(), 0);
  for (std::size_t c2 = 0; c2 < r2.components.size(); ++c2) {
    const Component& comp = r2.components[c2];
    for (const RepresentationPoint& p : comp.samples)
      for (int s = 0; s < slots2; ++s)
        if (!image[s])
          out.unmapped_deviation =
              std::max(out.unmapped_deviation,
                       distance(p.handles[s], UnitQuaternion::identity()));
    int found = target[c2];
    if (found >= 0 && r1.components[found].dimension != comp.dimension) {
      out.details.push_back("component " + std::to_string(c2) +
                            " has dimension " + std::to_string(comp.dimension) +
                            " but restricts into a component of dimension " +
                            std::to_string(r1.components[found].dimension));
      found = -1;
    }
    if (found >= 0 && comp.signature_constant &&
        r1.components[found].signature_constant) {
      const auto& sig1 = r1.components[found].trace_signature;
      for (std::size_t s = 0; s < slot_map.size(); ++s) {
        if (std::abs(sig1[s] - comp.trace_signature[slot_map[s]]) > 1e-8) {
          out.details.push_back("component " + std::to_string(c2) +
                                " trace signature differs on slot " +
                                std::to_string(s));
          found = -1;
          break;
        }
      }
    }
    if (found >= 0) {
      out.pairs.emplace_back(found, static_cast<int>(c2));
      ++hits[found];
    } else {
      out.unmatched_second.push_back(static_cast<int>(c2));
    }
  }
  for (std::size_t c1 = 0; c1 < hits.size(); ++c1) {
    if (hits[c1] == 0) out.unmatched_first.push_back(static_cast<int>(c1));
    if (hits[c1] > 1)
      out.details.push_back("component " + std::to_string(c1) +
                            " of the first report is hit " +
                            std::to_string(hits[c1]) + " times");
  }
  bool injective = std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; });
  out.perfect = injective && out.unmatched_first.empty() &&
                out.unmatched_second.empty();
  return out;
}

}  // namespace charvar
