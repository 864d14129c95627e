#include "charvar/correspondences.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "charvar/detail/engine.hpp"
#include "charvar/errors.hpp"

namespace charvar {
namespace {

using detail::Su2Group;
using Point = detail::PointOf<Su2Group>;

constexpr double kCompositionTol = 1e-6;
constexpr int kRestarts = 50;

// Layout of a moduli point inside a flat slot vector: 2g handles, then the
// three punctures.
struct Block {
  int offset = 0;
  int genus = 0;
  int size() const { return 2 * genus + 3; }
  int puncture(int k) const { return offset + 2 * genus + k; }
};

Quaternion raw_holonomy(const FreeWord& w, const Point& x, const Block& b) {
  Quaternion acc{1.0, 0.0, 0.0, 0.0};
  for (const Letter& l : w.letters()) {
    const Quaternion& g = x[b.offset + l.slot()];
    acc = acc * (l.sign > 0 ? g : g.conjugate());
  }
  return acc;
}

Quaternion raw_relator(const Point& x, const Block& b) {
  Quaternion acc{1.0, 0.0, 0.0, 0.0};
  for (int j = 0; j < b.genus; ++j) {
    const Quaternion& a = x[b.offset + 2 * j];
    const Quaternion& c = x[b.offset + 2 * j + 1];
    acc = acc * a * c * a.conjugate() * c.conjugate();
  }
  for (int k = 0; k < 3; ++k) acc = acc * x[b.puncture(k)];
  return acc;
}

void push(std::vector<double>& r, const Quaternion& q) {
  r.insert(r.end(), {q.w, q.x, q.y, q.z});
}

const Quaternion kOne{1.0, 0.0, 0.0, 0.0};

// Relation, traceless punctures and trivial words of one moduli point.
void point_residual(const Point& x, const Block& b,
                    const std::vector<FreeWord>& words, std::vector<double>& r) {
  push(r, raw_relator(x, b) - kOne);
  for (int k = 0; k < 3; ++k) r.push_back(x[b.puncture(k)].w);
  for (const FreeWord& w : words) push(r, raw_holonomy(w, x, b) - kOne);
}

// Common entries (first m handle pairs and the punctures) of the point.
std::vector<int> common_slots(const Block& b, int m) {
  std::vector<int> out;
  for (int s = 0; s < 2 * m; ++s) out.push_back(b.offset + s);
  for (int k = 0; k < 3; ++k) out.push_back(b.puncture(k));
  return out;
}

ModuliPoint unflatten(const Point& x, const Block& b) {
  ModuliPoint p;
  for (int s = 0; s < 2 * b.genus; ++s)
    p.handles.push_back(UnitQuaternion::normalized(x[b.offset + s]));
  for (int k = 0; k < 3; ++k)
    p.punctures[k] = UnitQuaternion::normalized(x[b.puncture(k)]);
  return p;
}

std::vector<UnitQuaternion> common_entries(const ModuliPoint& p, int m) {
  std::vector<UnitQuaternion> out(p.handles.begin(), p.handles.begin() + 2 * m);
  out.insert(out.end(), p.punctures.begin(), p.punctures.end());
  return out;
}

UnitQuaternion haar(std::mt19937_64& rng) {
  return UnitQuaternion::normalized(Su2Group{}.random(rng, detail::StartMode::kHaar));
}

UnitQuaternion random_pure(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Quaternion q;
  do {
    q = {0.0, normal(rng), normal(rng), normal(rng)};
  } while (q.norm() < 1e-9);
  return UnitQuaternion::normalized(q);
}

Point random_point(int slots, std::mt19937_64& rng) {
  Point x;
  for (int s = 0; s < slots; ++s)
    x.push_back(Su2Group{}.random(rng, detail::StartMode::kHaar));
  return x;
}

bool is_standard(const ElementaryBordism& b) {
  const int high = std::max(b.source_genus, b.target_genus);
  return b.kind == BordismKind::kCylinder || b.attaching_word == FreeWord::a(high);
}

// Endpoint across b from y, where y sits on the source side when
// y_is_source, else on the target side.
ModuliPoint across(const ElementaryBordism& b, const ModuliPoint& y,
                   bool y_is_source, std::mt19937_64& rng) {
  ModuliPoint out = y;
  const int other = y_is_source ? b.target_genus : b.source_genus;
  if (other < y.genus()) {
    out.handles.resize(2 * other);
  } else if (other > y.genus()) {
    out.handles.push_back(UnitQuaternion::identity());
    out.handles.push_back(haar(rng));
  }
  return conjugate_point(out, haar(rng));
}

}  // namespace

std::string to_string(BordismKind k) {
  switch (k) {
    case BordismKind::kGenusRaising: return "genus-raising";
    case BordismKind::kGenusLowering: return "genus-lowering";
    case BordismKind::kCylinder: return "cylinder";
  }
  return "";
}

ElementaryBordism ElementaryBordism::raising(int genus) {
  return {BordismKind::kGenusRaising, genus, genus + 1, FreeWord::a(genus + 1)};
}

ElementaryBordism ElementaryBordism::lowering(int genus) {
  return {BordismKind::kGenusLowering, genus + 1, genus, FreeWord::a(genus + 1)};
}

ElementaryBordism ElementaryBordism::cylinder(int genus) {
  return {BordismKind::kCylinder, genus, genus, FreeWord{}};
}

void ElementaryBordism::validate() const {
  if (source_genus < 0 || target_genus < 0)
    throw InvalidParameterError("negative genus");
  const int high = std::max(source_genus, target_genus);
  bool ok = false;
  switch (kind) {
    case BordismKind::kGenusRaising: ok = target_genus == source_genus + 1; break;
    case BordismKind::kGenusLowering: ok = source_genus == target_genus + 1; break;
    case BordismKind::kCylinder:
      ok = source_genus == target_genus && attaching_word.empty();
      break;
  }
  if (!ok)
    throw InvalidParameterError(to_string(kind) + " bordism with genera " +
                                std::to_string(source_genus) + " -> " +
                                std::to_string(target_genus));
  if (attaching_word.max_generator() > 2 * high)
    throw InvalidParameterError("attaching word " + attaching_word.to_string() +
                                " exceeds genus " + std::to_string(high));
}

StandardSystem standard_system(const ElementaryBordism& b) {
  b.validate();
  StandardSystem s;
  s.source_genus = b.source_genus;
  s.target_genus = b.target_genus;
  s.common_genus = std::min(b.source_genus, b.target_genus);
  if (b.kind == BordismKind::kGenusRaising) s.target_words = {b.attaching_word};
  if (b.kind == BordismKind::kGenusLowering) s.source_words = {b.attaching_word};
  return s;
}

StandardSystem compose(const ElementaryBordism& b1, const ElementaryBordism& b2) {
  b1.validate();
  b2.validate();
  if (b1.target_genus != b2.source_genus)
    throw ShapeError("cannot compose: target genus " +
                     std::to_string(b1.target_genus) + " vs source genus " +
                     std::to_string(b2.source_genus));
  if (!is_standard(b1) || !is_standard(b2))
    throw UnsupportedCompositionError("attaching words must be standard handles");
  if (b1.kind == BordismKind::kCylinder) return standard_system(b2);
  if (b2.kind == BordismKind::kCylinder) return standard_system(b1);
  const int g = std::min(b1.source_genus, b1.target_genus);
  if (b1.kind == BordismKind::kGenusRaising &&
      b2.kind == BordismKind::kGenusLowering)
    return {g, g, {}, {}, g};
  if (b1.kind == BordismKind::kGenusLowering &&
      b2.kind == BordismKind::kGenusRaising)
    return {g + 1, g + 1, {FreeWord::a(g + 1)}, {FreeWord::a(g + 1)}, g};
  throw UnsupportedCompositionError(to_string(b1.kind) + " followed by " +
                                    to_string(b2.kind));
}

double best_conjugator(const std::vector<UnitQuaternion>& x,
                       const std::vector<UnitQuaternion>& y,
                       UnitQuaternion* conjugator) {
  if (x.size() != y.size()) throw ShapeError("conjugator tuples differ in length");
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (std::size_t s = 0; s < x.size(); ++s) {
    const Eigen::Vector3d u(x[s].x(), x[s].y(), x[s].z());
    const Eigen::Vector3d v(y[s].x(), y[s].y(), y[s].z());
    h += v * u.transpose();
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU |
                                                     Eigen::ComputeFullV);
  Eigen::Matrix3d fix = Eigen::Matrix3d::Identity();
  fix(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0 ? -1.0 : 1.0;
  const Eigen::Matrix3d r = svd.matrixU() * fix * svd.matrixV().transpose();
  std::array<double, 9> flat{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) flat[3 * a + b] = r(a, b);
  const UnitQuaternion m = from_rotation_matrix(flat);
  double acc = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) {
    const double d = distance(conjugate_by(m, x[s]), y[s]);
    acc += d * d;
  }
  if (conjugator) *conjugator = m;
  return std::sqrt(acc);
}

Membership system_membership(const StandardSystem& s, const CorrespondencePair& pair,
                             double tol) {
  if (pair.left.genus() != s.source_genus || pair.right.genus() != s.target_genus)
    throw ShapeError("pair genera (" + std::to_string(pair.left.genus()) + ", " +
                     std::to_string(pair.right.genus()) + ") do not match (" +
                     std::to_string(s.source_genus) + ", " +
                     std::to_string(s.target_genus) + ")");
  Membership out;
  double words = 0.0;
  auto add_words = [&](const std::vector<FreeWord>& ws, const ModuliPoint& p) {
    for (const FreeWord& w : ws) {
      const double d = distance(holonomy(w, p.handles), UnitQuaternion::identity());
      words += d * d;
    }
  };
  add_words(s.source_words, pair.left);
  add_words(s.target_words, pair.right);
  out.word_residual = std::sqrt(words);

  double rel = 0.0;
  for (const ModuliPoint* p : {&pair.left, &pair.right}) {
    const double r = relation_residual(*p);
    rel += r * r;
    for (const UnitQuaternion& c : p->punctures) rel += c.w() * c.w();
  }
  out.relation_residual = std::sqrt(rel);

  out.conjugation_residual =
      best_conjugator(common_entries(pair.left, s.common_genus),
                      common_entries(pair.right, s.common_genus), &out.conjugator);
  out.residual = std::sqrt(words + rel + out.conjugation_residual *
                                             out.conjugation_residual);
  out.member = out.residual <= tol;
  return out;
}

Membership correspondence_membership(const ElementaryBordism& b,
                                     const CorrespondencePair& pair, double tol) {
  return system_membership(standard_system(b), pair, tol);
}

ModuliPoint random_moduli_point(int genus, std::uint64_t seed, std::uint64_t index,
                                const std::vector<int>& trivial_slots) {
  std::mt19937_64 rng = detail::indexed_rng(seed, index, 0x3d1);
  ModuliPoint p;
  for (int s = 0; s < 2 * genus; ++s) p.handles.push_back(haar(rng));
  for (int s : trivial_slots) {
    if (s < 0 || s >= 2 * genus) throw ShapeError("trivial slot out of range");
    p.handles[s] = UnitQuaternion::identity();
  }
  const UnitQuaternion c3 = random_pure(rng);
  // C_1 C_2 = R with R = P^-1 C_3^-1; C_1 = u and C_2 = -u R are pure when u
  // is orthogonal to the axis of R.
  const UnitQuaternion r = commutator_product(p.handles).inverse() * c3.inverse();
  Eigen::Vector3d axis(r.x(), r.y(), r.z());
  if (axis.norm() < 1e-12) axis = Eigen::Vector3d::UnitZ();
  axis.normalize();
  Eigen::Vector3d u;
  do {
    const UnitQuaternion t = random_pure(rng);
    u = Eigen::Vector3d(t.x(), t.y(), t.z());
    u -= u.dot(axis) * axis;
  } while (u.norm() < 1e-6);
  u.normalize();
  const UnitQuaternion c1 = UnitQuaternion::normalized({0.0, u.x(), u.y(), u.z()});
  p.punctures = {c1, -(c1 * r), c3};
  return p;
}

CompositionReport composition_check(const ElementaryBordism& b1,
                                    const ElementaryBordism& b2, int samples,
                                    std::uint64_t seed, const SolverConfig& cfg) {
  if (samples < 0) throw InvalidParameterError("negative sample count");
  CompositionReport out;
  out.composite = compose(b1, b2);
  out.samples = samples;
  const StandardSystem& comp = out.composite;
  const StandardSystem s1 = standard_system(b1), s2 = standard_system(b2);
  const int workers = worker_count(cfg);

  // Members of the composite from the joint system, with z in x's gauge.
  const Block bx{0, comp.source_genus};
  const Block bz{bx.size(), comp.target_genus};
  const auto xs = common_slots(bx, comp.common_genus);
  const auto zs = common_slots(bz, comp.common_genus);
  const detail::FunctionProblem<Su2Group> joint(
      Su2Group{}, bx.size() + bz.size(), [&](const Point& x) {
        std::vector<double> r;
        point_residual(x, bx, comp.source_words, r);
        point_residual(x, bz, comp.target_words, r);
        for (std::size_t q = 0; q < xs.size(); ++q) push(r, x[zs[q]] - x[xs[q]]);
        return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(r.data(), r.size()));
      });

  std::vector<std::optional<CorrespondencePair>> members(samples);
  detail::parallel_for(samples, workers, [&](int k) {
    for (int attempt = 0; attempt < kRestarts; ++attempt) {
      std::mt19937_64 rng = detail::indexed_rng(seed, k, 0xc0 + attempt);
      auto res = detail::levenberg_marquardt(
          joint, random_point(bx.size() + bz.size(), rng), cfg.converge_tol,
          cfg.max_iterations);
      if (!res.converged) continue;
      members[k] = CorrespondencePair{
          unflatten(res.x, bx), conjugate_point(unflatten(res.x, bz), haar(rng))};
      return;
    }
  });

  // Factor each member through an intermediate point y, with y in x's gauge
  // and one conjugator carrying y to z.
  const int gy = b1.target_genus;
  struct Factor {
    bool ok = false;
    double residual = 0.0;
  };
  std::vector<Factor> factors(samples);
  detail::parallel_for(samples, workers, [&](int k) {
    if (!members[k]) return;
    const ModuliPoint& x = members[k]->left;
    const ModuliPoint& z = members[k]->right;
    const Block by{0, gy};
    const int m_slot = by.size();
    const auto x_common = common_entries(x, s1.common_genus);
    const auto z_common = common_entries(z, s2.common_genus);
    const auto y1 = common_slots(by, s1.common_genus);
    const auto y2 = common_slots(by, s2.common_genus);
    std::vector<FreeWord> y_words = s1.target_words;
    y_words.insert(y_words.end(), s2.source_words.begin(), s2.source_words.end());
    const detail::FunctionProblem<Su2Group> problem(
        Su2Group{}, by.size() + 1, [&](const Point& y) {
          std::vector<double> r;
          point_residual(y, by, y_words, r);
          for (std::size_t q = 0; q < y1.size(); ++q)
            push(r, y[y1[q]] - x_common[q].raw());
          const Quaternion& m = y[m_slot];
          for (std::size_t q = 0; q < y2.size(); ++q)
            push(r, m * y[y2[q]] * m.conjugate() - z_common[q].raw());
          return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(r.data(), r.size()));
        });
    double best = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < kRestarts; ++attempt) {
      std::mt19937_64 rng = detail::indexed_rng(seed, k, 0x1c0 + attempt);
      auto res = detail::levenberg_marquardt(problem, random_point(by.size() + 1, rng),
                                             cfg.converge_tol, cfg.max_iterations);
      if (res.residual > kCompositionTol) continue;
      const ModuliPoint y = unflatten(res.x, by);
      const double r1 = system_membership(s1, {x, y}, kCompositionTol).residual;
      const double r2 = system_membership(s2, {y, z}, kCompositionTol).residual;
      best = std::min(best, std::max(r1, r2));
      if (best <= kCompositionTol) break;
    }
    factors[k] = {best <= kCompositionTol, best};
  });

  // Composable pairs sampled from the factors.
  std::vector<double> forward(samples, std::numeric_limits<double>::infinity());
  detail::parallel_for(samples, workers, [&](int k) {
    std::vector<int> trivial;
    if (gy > 0 && (b1.kind == BordismKind::kGenusRaising ||
                   b2.kind == BordismKind::kGenusLowering))
      trivial.push_back(2 * (gy - 1));
    const ModuliPoint y = random_moduli_point(gy, seed, k, trivial);
    std::mt19937_64 rng = detail::indexed_rng(seed, k, 0x2c0);
    const ModuliPoint x = across(b1, y, false, rng);
    const ModuliPoint z = across(b2, y, true, rng);
    const double f1 = system_membership(s1, {x, y}).residual;
    const double f2 = system_membership(s2, {y, z}).residual;
    if (f1 > kCompositionTol || f2 > kCompositionTol) return;
    forward[k] = system_membership(comp, {x, z}).residual;
  });

  // Each side is a point of a moduli space, so sides are compared up to
  // independent conjugations.
  std::vector<std::pair<std::vector<UnitQuaternion>, std::vector<UnitQuaternion>>>
      classes;
  for (int k = 0; k < samples; ++k) {
    if (members[k] &&
        system_membership(comp, *members[k], kCompositionTol).member) {
      ++out.composite_members;
      auto tx = common_entries(members[k]->left, comp.source_genus);
      auto tz = common_entries(members[k]->right, comp.target_genus);
      bool fresh = true;
      for (const auto& [cx, cz] : classes)
        if (best_conjugator(cx, tx) <= kCompositionTol &&
            best_conjugator(cz, tz) <= kCompositionTol) {
          fresh = false;
          break;
        }
      if (fresh) classes.emplace_back(std::move(tx), std::move(tz));
    }
    if (factors[k].ok) {
      ++out.factored;
      out.max_factor_residual = std::max(out.max_factor_residual, factors[k].residual);
    } else {
      out.counterexample_candidates.push_back(k);
    }
    if (std::isfinite(forward[k])) {
      ++out.composable_pairs;
      if (forward[k] <= kCompositionTol) ++out.forward_members;
      out.max_forward_residual = std::max(out.max_forward_residual, forward[k]);
    }
  }
  out.distinct_classes = static_cast<int>(classes.size());
  return out;
}

}  // namespace charvar
