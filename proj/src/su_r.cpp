#include "charvar/su_r.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "charvar/detail/engine.hpp"
#include "charvar/errors.hpp"

namespace charvar {
namespace {

using detail::SunGroup;
using Matrix = Eigen::MatrixXcd;
using Point = detail::PointOf<SunGroup>;

Eigen::VectorXd flat(const SunGroup& g, const Matrix& m) {
  Eigen::VectorXd v(g.flat_dim());
  g.flatten(m, v.data());
  return v;
}

// Coordinates of an anti-Hermitian X in the basis i * lambda_a.
Eigen::VectorXd algebra_coords(const SunGroup& g, const Matrix& x) {
  Eigen::VectorXd c(g.tangent_dim());
  for (int a = 0; a < g.tangent_dim(); ++a)
    c(a) = 0.5 * (g.hermitian_basis(a) * x).trace().imag();
  return c;
}

int rank_of(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index q = 0; q < sv.size(); ++q) rank += sv(q) > 1e-8 * sv(0);
  return rank;
}

std::vector<SpecialUnitary> wrap(const Point& x) {
  std::vector<SpecialUnitary> out;
  for (const Matrix& m : x) out.emplace_back(m);
  return out;
}

// Tangent dimension of {C_k in class, prod C_k = 1} and of the conjugation
// orbit, both in left-trivialized coordinates.
std::pair<int, int> genus0_dimensions(const SunGroup& g, const Point& c) {
  const int t = g.tangent_dim();
  const int n = static_cast<int>(c.size());
  Eigen::MatrixXd blocks = Eigen::MatrixXd::Zero(n * t, n * t);
  Eigen::MatrixXd product = Eigen::MatrixXd::Zero(t, n * t);
  Eigen::MatrixXd orbit(n * t, t);
  Matrix prefix = g.identity();
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < t; ++a) {
      const Matrix x = g.generator(a);
      const Eigen::VectorXd col = algebra_coords(g, x - c[k] * x * c[k].adjoint());
      blocks.block(k * t, k * t + a, t, 1) = col;
      orbit.block(k * t, a, t, 1) = col;
      product.col(k * t + a) = algebra_coords(g, prefix * x * prefix.adjoint());
    }
    prefix = prefix * c[k];
  }
  const int tangent = rank_of(blocks) - rank_of(product * blocks);
  return {tangent, rank_of(orbit)};
}

std::string key_string(int r, std::uint64_t seed) {
  return std::to_string(r) + ":" + std::to_string(seed);
}

}  // namespace

void AlcoveLabel::validate() const {
  if (lambdas.empty()) throw InvalidParameterError("empty alcove label");
  const double sum = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
  if (std::abs(sum) > 1e-12)
    throw InvalidParameterError("alcove label does not sum to zero");
  if (!std::is_sorted(lambdas.begin(), lambdas.end()))
    throw InvalidParameterError("alcove label is not ascending");
  if (lambdas.back() - lambdas.front() > 1.0 + 1e-12)
    throw InvalidParameterError("alcove label spread exceeds 1");
}

SpecialUnitary::SpecialUnitary(Eigen::MatrixXcd m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw InvalidElementError("special unitary matrix must be square");
  const double unitary =
      (m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols())).norm();
  const double det = std::abs(m_.determinant() - 1.0);
  if (!(unitary <= tol) || !(det <= tol))
    throw InvalidElementError("matrix is not special unitary (|U*U - 1| = " +
                              std::to_string(unitary) + ", |det - 1| = " +
                              std::to_string(det) + ")");
}

SpecialUnitary SpecialUnitary::identity(int rank) {
  return SpecialUnitary(Matrix::Identity(rank, rank));
}

SpecialUnitary SpecialUnitary::from_quaternion(const UnitQuaternion& q) {
  using C = std::complex<double>;
  Matrix m(2, 2);
  m << C(q.w(), q.x()), C(q.y(), q.z()), C(-q.y(), q.z()), C(q.w(), -q.x());
  return SpecialUnitary(m);
}

SpecialUnitary SpecialUnitary::adjoint() const { return SpecialUnitary(m_.adjoint()); }

SpecialUnitary SpecialUnitary::operator*(const SpecialUnitary& o) const {
  if (o.rank() != rank()) throw ShapeError("rank mismatch in product");
  return SpecialUnitary(m_ * o.m_, 1e-9);
}

double distance(const SpecialUnitary& a, const SpecialUnitary& b) {
  if (a.rank() != b.rank()) throw ShapeError("rank mismatch in distance");
  return (a.matrix() - b.matrix()).norm();
}

AlcoveLabel mu_label(int r, int j) {
  if (r < 2 || j < 1 || j > r - 1)
    throw InvalidParameterError("mu_label needs 1 <= j <= r-1, got r=" +
                                std::to_string(r) + ", j=" + std::to_string(j));
  AlcoveLabel out;
  out.lambdas.assign(r - j, -static_cast<double>(j) / (2.0 * r));
  out.lambdas.insert(out.lambdas.end(), j, static_cast<double>(r - j) / (2.0 * r));
  return out;
}

SpecialUnitary class_representative(const AlcoveLabel& label) {
  label.validate();
  Eigen::VectorXcd d(label.rank());
  for (int k = 0; k < label.rank(); ++k)
    d(k) = std::polar(1.0, 2.0 * std::numbers::pi * label.lambdas[k]);
  return SpecialUnitary(d.asDiagonal().toDenseMatrix());
}

int sur_dimension(int r, int j, int g) {
  if (r < 2 || j < 1 || j > r - 1)
    throw InvalidParameterError("sur_dimension needs 1 <= j <= r-1");
  if (g < 0) throw InvalidParameterError("negative genus");
  return (2 * g - 2) * (r * r - 1) + 2 * j * (r + 1) * (r - j);
}

double sur_monotonicity(int r) {
  if (r < 2) throw InvalidParameterError("rank must be at least 2");
  return 1.0 / (2.0 * r);
}

CoweightCheck coweight_check(int r, int j) {
  mu_label(r, j);  // range check
  CoweightCheck out{r, j, {}};
  // Every entry is a multiple of 1/(2r); work with the numerators.
  const std::int64_t den = 2 * r;
  for (int d = 1; d < r; ++d) {
    if (std::gcd(d, r) != 1) continue;
    std::vector<std::int64_t> diff;
    for (int k = 0; k < r; ++k) {
      const std::int64_t mu = k < j ? r - j : -j;
      const std::int64_t omega = k < d ? 2 * (r - d) : -2 * d;
      diff.push_back(2 * (r + 1) * mu - omega);
    }
    std::int64_t sum = 0;
    bool integral_gaps = true;
    for (int k = 0; k < r; ++k) {
      sum += diff[k];
      if ((diff[k] - diff[0]) % den != 0) integral_gaps = false;
    }
    if (sum == 0 && integral_gaps) out.admissible_d.push_back(d);
  }
  return out;
}

ConjugacyResult unitary_conjugacy_test(const std::vector<SpecialUnitary>& a,
                                       const std::vector<SpecialUnitary>& b,
                                       double tol, std::uint64_t seed) {
  if (a.size() != b.size()) throw ShapeError("conjugacy tuples differ in length");
  ConjugacyResult out;
  if (a.empty()) {
    out.conjugate = true;
    return out;
  }
  const int r = a.front().rank();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].rank() != r || b[i].rank() != r) throw ShapeError("rank mismatch");
  out.conjugator = Matrix::Identity(r, r);
  // |tr X| <= sqrt(r) |X|_F, so a trace gap bounds the objective below.
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    gap += std::norm(a[i].trace() - b[i].trace()) / r;
  if (gap > tol) {
    out.trace_certificate = true;
    out.objective = gap;
    return out;
  }

  const SunGroup g(r);
  const detail::FunctionProblem<SunGroup> problem(g, 1, [&](const Point& m) {
    Eigen::VectorXd res(a.size() * g.flat_dim());
    for (std::size_t i = 0; i < a.size(); ++i)
      res.segment(i * g.flat_dim(), g.flat_dim()) =
          flat(g, m[0] * a[i].matrix() * m[0].adjoint() - b[i].matrix());
    return res;
  });
  out.objective = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::mt19937_64 rng = detail::indexed_rng(seed, attempt, 0xc07);
    Point start{attempt == 0 ? g.identity() : g.haar(rng)};
    auto res = detail::levenberg_marquardt(problem, start, 1e-13, 200);
    const double obj = res.residual * res.residual;
    if (obj < out.objective) {
      out.objective = obj;
      out.conjugator = res.x[0];
    }
    if (out.objective <= tol) break;
  }
  out.conjugate = out.objective <= tol;
  return out;
}

Genus0Report genus0_uniqueness(int r, const SolverConfig& cfg, double tol) {
  if (r < 2) throw InvalidParameterError("rank must be at least 2");
  cfg.validate();
  Genus0Report out;
  out.r = r;
  const SunGroup g(r);
  const Matrix d = class_representative(mu_label(r, 1)).matrix();
  const int n = r + 1;
  auto classes = [&](const Point& u) {
    Point c;
    for (const Matrix& m : u) c.push_back(m * d * m.adjoint());
    return c;
  };
  const detail::FunctionProblem<SunGroup> problem(g, n, [&](const Point& u) {
    Matrix acc = g.identity();
    for (const Matrix& c : classes(u)) acc = acc * c;
    return flat(g, acc - g.identity());
  });

  out.starts = cfg.effective_starts(0);
  std::vector<std::optional<Point>> found(out.starts);
  detail::parallel_for(out.starts, worker_count(cfg), [&](int k) {
    std::mt19937_64 rng = detail::indexed_rng(cfg.seed, k, 0x90);
    Point u;
    for (int s = 0; s < n; ++s) u.push_back(g.haar(rng));
    auto res = detail::levenberg_marquardt(problem, u, cfg.converge_tol,
                                           cfg.max_iterations);
    if (res.converged) found[k] = classes(res.x);
  });

  std::vector<Point> distinct;
  for (const auto& c : found) {
    if (!c) continue;
    ++out.converged;
    bool dup = false;
    for (const Point& q : distinct)
      if (detail::point_distance(g, *c, q) <= cfg.dedup_radius) {
        dup = true;
        break;
      }
    if (!dup) distinct.push_back(*c);
  }
  for (const Point& c : distinct) out.solutions.push_back(wrap(c));
  if (out.solutions.empty()) {
    out.failures.push_back("no start converged");
    return out;
  }

  for (std::size_t s = 1; s < out.solutions.size(); ++s) {
    const ConjugacyResult cr =
        unitary_conjugacy_test(out.solutions.front(), out.solutions[s], tol, cfg.seed + s);
    out.max_conjugacy_objective = std::max(out.max_conjugacy_objective, cr.objective);
    if (!cr.conjugate)
      out.failures.push_back("solution " + std::to_string(s) +
                             " is not conjugate to solution 0 (objective " +
                             std::to_string(cr.objective) + ")");
  }
  const auto [tangent, orbit] = genus0_dimensions(g, distinct.front());
  out.tangent_dimension = tangent;
  out.orbit_dimension = orbit;
  if (out.dimension_audit() != 0)
    out.failures.push_back("solution set has dimension " + std::to_string(tangent) +
                           " against orbit dimension " + std::to_string(orbit));
  out.pass = out.failures.empty();
  return out;
}

std::vector<SpecialUnitary> pinned_punctures(int r, const SolverConfig& cfg) {
  static std::mutex mu;
  static std::map<std::string, std::vector<SpecialUnitary>> cache;
  const std::string key = key_string(r, cfg.seed);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const CoweightCheck cw = coweight_check(r, 1);
  if (!cw.satisfied())
    throw ConfigurationError("coweight condition fails for r=" + std::to_string(r));
  const Genus0Report rep = genus0_uniqueness(r, cfg);
  if (!rep.pass)
    throw ConfigurationError("genus-0 moduli space at r=" + std::to_string(r) +
                             " is not a single point: " +
                             (rep.failures.empty() ? "" : rep.failures.front()));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, rep.solutions.front()).first->second;
}

SurComponentReport solve_sur(const HeegaardDiagram& d, int r, const SolverConfig& cfg) {
  if (r < 2) throw InvalidParameterError("rank must be at least 2");
  cfg.validate();
  const ValidationReport rep = validate_diagram(d);
  if (!rep.pass) throw ValidationError(rep.failures.front());
  pinned_punctures(r, cfg);

  const SunGroup g(r);
  std::vector<FreeWord> words = d.all_curves();
  if (d.genus > 0) words.push_back(surface_relator(d.genus));
  const detail::WordSystem<SunGroup> sys(g, 2 * d.genus, std::move(words));
  const int slots = 2 * d.genus;
  auto sample = [&](int k) {
    if (k == 0) return Point(slots, g.identity());
    auto rng = detail::indexed_rng(cfg.seed, static_cast<std::uint64_t>(k));
    const auto mode = k % 2 == 1 ? detail::StartMode::kHaar : detail::StartMode::kTorus;
    Point x;
    for (int s = 0; s < slots; ++s) x.push_back(g.random(rng, mode));
    return x;
  };
  const auto raw = detail::multistart(sys, cfg, cfg.effective_starts(d.genus), sample);
  const auto comps = detail::cluster(sys, raw.points, raw.kernel_dims, cfg);

  SurComponentReport out;
  out.diagram = d;
  out.rank = r;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& gc = comps[c];
    SurComponent comp;
    comp.dimension = gc.dimension;
    for (int m : gc.members) comp.samples.push_back({wrap(raw.points[m])});
    comp.trace_signature = gc.signature;
    comp.signature_constant = gc.signature_constant;
    comp.kernel_agreement = gc.agreement;
    comp.ambiguous = gc.ambiguous;
    comp.local_dimension = gc.local_dimension;
    comp.classification = classify(gc.dimension, gc.signature_constant);
    if (gc.ambiguous)
      out.warnings.push_back("component " + std::to_string(c) +
                             ": kernel dimensions agree on only " +
                             std::to_string(gc.agreement) + " of samples");
    if (gc.local_dimension != gc.dimension)
      out.warnings.push_back("component " + std::to_string(c) +
                             ": local sampling dimension " +
                             std::to_string(gc.local_dimension) +
                             " differs from kernel dimension " +
                             std::to_string(gc.dimension));
    out.components.push_back(std::move(comp));
  }
  return out;
}

}  // namespace charvar
