#pragma once

// Group-generic numerics behind the SU(2) and SU(r) intersection solvers:
// word constraint systems with Fox-calculus Jacobians, Levenberg-Marquardt
// on products of groups, multistart, and path-connectivity clustering.

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "charvar/detail/groups.hpp"
#include "charvar/errors.hpp"
#include "charvar/free_word.hpp"
#include "charvar/solver_config.hpp"

namespace charvar::detail {

template <class G>
using PointOf = std::vector<typename G::Element>;

template <class G>
double point_distance_sq(const G& group, const PointOf<G>& a,
                         const PointOf<G>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += group.distance_sq(a[k], b[k]);
  return s;
}

template <class G>
double point_distance(const G& group, const PointOf<G>& a,
                      const PointOf<G>& b) {
  return std::sqrt(point_distance_sq(group, a, b));
}

// Words in the slots that must all evaluate to the identity.
template <class G>
class WordSystem {
 public:
  using Element = typename G::Element;
  using Point = PointOf<G>;

  WordSystem(G group, int slots, std::vector<FreeWord> words)
      : group_(std::move(group)), slots_(slots), words_(std::move(words)) {
    for (const FreeWord& w : words_) {
      if (w.max_generator() > slots_) {
        throw MalformedWordError("word " + w.to_string() + " uses generator " +
                                 std::to_string(w.max_generator()) +
                                 " but only " + std::to_string(slots_) +
                                 " slots exist");
      }
    }
  }

  const G& group() const { return group_; }
  int slots() const { return slots_; }
  int unknowns() const { return slots_ * group_.tangent_dim(); }
  int residual_size() const {
    return static_cast<int>(words_.size()) * group_.flat_dim();
  }
  const std::vector<FreeWord>& words() const { return words_; }

  Element evaluate(const FreeWord& w, const Point& x) const {
    Element acc = group_.identity();
    for (const Letter& l : w.letters()) {
      const Element& g = x[l.slot()];
      acc = group_.mul(acc, l.sign > 0 ? g : group_.inverse(g));
    }
    return acc;
  }

  Eigen::VectorXd residual(const Point& x) const {
    const int fd = group_.flat_dim();
    Eigen::VectorXd r(residual_size());
    const Element one = group_.identity();
    for (std::size_t k = 0; k < words_.size(); ++k) {
      const Element v = evaluate(words_[k], x);
      group_.flatten(v - one, r.data() + k * fd);
    }
    return r;
  }

  double residual_norm(const Point& x) const { return residual(x).norm(); }

  // Fox-calculus Jacobian for left perturbations x_s -> exp(delta_s) x_s.
  void jacobian(const Point& x, Eigen::MatrixXd& jac) const {
    const int fd = group_.flat_dim();
    const int td = group_.tangent_dim();
    jac.setZero(residual_size(), unknowns());
    std::vector<Element> inv(x.size());
    for (std::size_t s = 0; s < x.size(); ++s) inv[s] = group_.inverse(x[s]);
    std::vector<double> buf(fd);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      const auto& ls = words_[k].letters();
      const std::size_t n = ls.size();
      std::vector<Element> prefix(n + 1, group_.identity());
      std::vector<Element> suffix(n + 1, group_.identity());
      for (std::size_t m = 0; m < n; ++m) {
        const Element& v = ls[m].sign > 0 ? x[ls[m].slot()] : inv[ls[m].slot()];
        prefix[m + 1] = group_.mul(prefix[m], v);
      }
      for (std::size_t m = n; m-- > 0;) {
        const Element& v = ls[m].sign > 0 ? x[ls[m].slot()] : inv[ls[m].slot()];
        suffix[m] = group_.mul(v, suffix[m + 1]);
      }
      for (std::size_t m = 0; m < n; ++m) {
        const int s = ls[m].slot();
        for (int i = 0; i < td; ++i) {
          Element d;
          if (ls[m].sign > 0) {
            d = group_.mul(group_.mul(prefix[m], group_.mul(group_.generator(i), x[s])),
                           suffix[m + 1]);
          } else {
            d = group_.mul(
                group_.mul(prefix[m], group_.negate(group_.mul(inv[s], group_.generator(i)))),
                suffix[m + 1]);
          }
          group_.flatten(d, buf.data());
          for (int c = 0; c < fd; ++c) jac(k * fd + c, s * td + i) += buf[c];
        }
      }
    }
  }

  // Central differences in tangent directions.
  void jacobian_fd(const Point& x, Eigen::MatrixXd& jac, double h = 1e-6) const {
    jac.resize(residual_size(), unknowns());
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(unknowns());
    for (int c = 0; c < unknowns(); ++c) {
      delta(c) = h;
      const Eigen::VectorXd rp = residual(retract(x, delta));
      delta(c) = -h;
      const Eigen::VectorXd rm = residual(retract(x, delta));
      delta(c) = 0.0;
      jac.col(c) = (rp - rm) / (2.0 * h);
    }
  }

  Point retract(const Point& x, const Eigen::VectorXd& delta) const {
    const int td = group_.tangent_dim();
    Point y(x.size());
    for (std::size_t s = 0; s < x.size(); ++s)
      y[s] = group_.retract(x[s], delta.data() + s * td);
    return y;
  }

  // Negative gradient of 0.5 |x - target|^2 in tangent coordinates.
  Eigen::VectorXd pull_toward(const Point& x, const Point& target) const {
    const int td = group_.tangent_dim();
    const int fd = group_.flat_dim();
    Eigen::VectorXd g(unknowns());
    std::vector<double> a(fd), b(fd), c(fd);
    for (std::size_t s = 0; s < x.size(); ++s) {
      group_.flatten(target[s] - x[s], b.data());
      for (int i = 0; i < td; ++i) {
        group_.flatten(group_.mul(group_.generator(i), x[s]), a.data());
        double dot = 0.0;
        for (int q = 0; q < fd; ++q) dot += a[q] * b[q];
        g(s * td + i) = dot;
      }
    }
    return g;
  }

  Eigen::VectorXd tangent_offset(const Point& x, const Point& y) const {
    const int td = group_.tangent_dim();
    Eigen::VectorXd out(unknowns());
    for (std::size_t s = 0; s < x.size(); ++s)
      group_.tangent_offset(x[s], y[s], out.data() + s * td);
    return out;
  }

  std::vector<double> signature(const Point& x) const {
    const int sd = group_.signature_dim();
    std::vector<double> out(x.size() * sd);
    for (std::size_t s = 0; s < x.size(); ++s)
      group_.signature(x[s], out.data() + s * sd);
    return out;
  }

 private:
  G group_;
  int slots_;
  std::vector<FreeWord> words_;
};

// Runs fn(0..n-1) on up to `workers` threads. Callers write results into
// per-index slots so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(int n, int workers, Fn&& fn) {
  workers = std::min(workers, std::max(n, 1));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int k = next++; k < n; k = next++) fn(k);
  };
  if (workers <= 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

// Least-squares problem on a product of group copies with a user residual and
// a central-difference Jacobian.
template <class G>
class FunctionProblem {
 public:
  using Point = PointOf<G>;
  using Residual = std::function<Eigen::VectorXd(const Point&)>;

  FunctionProblem(G group, int slots, Residual fn)
      : group_(std::move(group)), slots_(slots), fn_(std::move(fn)) {}

  Eigen::VectorXd residual(const Point& x) const { return fn_(x); }

  void jacobian(const Point& x, Eigen::MatrixXd& jac) const {
    const double h = 1e-6;
    const int n = slots_ * group_.tangent_dim();
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < n; ++c) {
      delta(c) = h;
      const Eigen::VectorXd rp = fn_(retract(x, delta));
      delta(c) = -h;
      const Eigen::VectorXd rm = fn_(retract(x, delta));
      delta(c) = 0.0;
      if (c == 0) jac.resize(rp.size(), n);
      jac.col(c) = (rp - rm) / (2.0 * h);
    }
  }

  Point retract(const Point& x, const Eigen::VectorXd& delta) const {
    const int td = group_.tangent_dim();
    Point y(x.size());
    for (std::size_t s = 0; s < x.size(); ++s)
      y[s] = group_.retract(x[s], delta.data() + s * td);
    return y;
  }

 private:
  G group_;
  int slots_;
  Residual fn_;
};

template <class Point>
struct LmResult {
  Point x;
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Levenberg-Marquardt with tangent steps and exponential retraction. The
// problem supplies residual(x), jacobian(x, J) and retract(x, delta).
template <class Problem, class Point>
LmResult<Point> levenberg_marquardt(const Problem& problem, Point x,
                                    double tol, int max_iterations) {
  Eigen::VectorXd r = problem.residual(x);
  double f = r.norm();
  double lambda = 1e-3;
  Eigen::MatrixXd jac;
  LmResult<Point> out;
  int it = 0;
  for (; it < max_iterations && f > tol; ++it) {
    problem.jacobian(x, jac);
    const Eigen::MatrixXd a = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd m = a;
      m.diagonal().array() += lambda;
      const Eigen::VectorXd step = m.ldlt().solve(-g);
      Point trial = problem.retract(x, step);
      Eigen::VectorXd rt = problem.residual(trial);
      const double ft = rt.norm();
      if (std::isfinite(ft) && ft < f) {
        x = std::move(trial);
        r = std::move(rt);
        f = ft;
        lambda = std::max(lambda / 3.0, 1e-14);
        accepted = true;
      } else {
        lambda *= 4.0;
        if (lambda > 1e10) {
          out.x = std::move(x);
          out.residual = f;
          out.iterations = it;
          return out;
        }
      }
    }
  }
  out.x = std::move(x);
  out.residual = f;
  out.converged = f <= tol;
  out.iterations = it;
  return out;
}

inline Eigen::VectorXd singular_values(const Eigen::MatrixXd& jac) {
  if (jac.size() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  return svd.singularValues();
}

inline int numerical_rank(const Eigen::MatrixXd& jac, double rank_tol) {
  const Eigen::VectorXd s = singular_values(jac);
  if (s.size() == 0 || s(0) <= 1e-300) return 0;
  int rank = 0;
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > rank_tol * s(0)) ++rank;
  return rank;
}

// Orthonormal basis of the numerical kernel.
inline Eigen::MatrixXd null_space(const Eigen::MatrixXd& jac, double rank_tol) {
  const int n = static_cast<int>(jac.cols());
  if (jac.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  const double top = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (int k = 0; k < s.size(); ++k)
    if (top > 1e-300 && s(k) > rank_tol * top) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

template <class G>
int kernel_dimension_fd(const WordSystem<G>& sys, const PointOf<G>& x,
                        double rank_tol) {
  Eigen::MatrixXd jac;
  sys.jacobian_fd(x, jac);
  return sys.unknowns() - numerical_rank(jac, rank_tol);
}

// Walks from `from` toward `target` inside the solution set: steps follow the
// distance gradient projected on the Jacobian kernel and are pulled back onto
// the set by LM. Returns true once within cluster_radius of target.
template <class G>
bool walk_connects(const WordSystem<G>& sys, PointOf<G> x,
                   const PointOf<G>& target, const SolverConfig& cfg) {
  const G& group = sys.group();
  double d = point_distance(group, x, target);
  double step = 0.15;
  Eigen::MatrixXd jac;
  for (int it = 0; it < 600 && step > 1e-6; ++it) {
    if (d <= cfg.cluster_radius) return true;
    sys.jacobian(x, jac);
    const Eigen::MatrixXd kernel = null_space(jac, cfg.rank_tol);
    if (kernel.cols() == 0) return false;
    const Eigen::VectorXd g = sys.pull_toward(x, target);
    const Eigen::VectorXd v = kernel * (kernel.transpose() * g);
    const double vn = v.norm();
    if (vn < 1e-14) return false;
    const double h = std::min(step, d);
    auto res = levenberg_marquardt(sys, sys.retract(x, v * (h / vn)),
                                   cfg.converge_tol, 60);
    if (!res.converged) {
      step *= 0.5;
      continue;
    }
    const double dn = point_distance(group, res.x, target);
    if (dn < d) {
      x = std::move(res.x);
      d = dn;
      step = std::min(step * 1.5, 0.3);
    } else {
      step *= 0.5;
    }
  }
  return d <= cfg.cluster_radius;
}

// Rank of displacements obtained by perturbing x in random tangent directions
// and re-solving.
template <class G>
int local_dimension(const WordSystem<G>& sys, const PointOf<G>& x,
                    const SolverConfig& cfg, std::uint64_t salt) {
  const int n = sys.unknowns();
  if (n == 0) return 0;
  const int samples = std::max(20, n + 5);
  std::mt19937_64 rng = indexed_rng(cfg.seed, salt, 0x10ca1);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd disp(samples, n);
  int rows = 0;
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd delta(n);
    for (int c = 0; c < n; ++c) delta(c) = normal(rng);
    delta *= 1e-5 / delta.norm();
    auto res = levenberg_marquardt(sys, sys.retract(x, delta),
                                   cfg.converge_tol, cfg.max_iterations);
    if (!res.converged) continue;
    disp.row(rows++) = sys.tangent_offset(x, res.x).transpose() / 1e-5;
  }
  if (rows == 0) return -1;
  // Rows are displacements in units of the perturbation size; re-solve noise
  // is far below 1e-3.
  const Eigen::VectorXd sv = singular_values(disp.topRows(rows));
  int rank = 0;
  for (Eigen::Index q = 0; q < sv.size(); ++q) rank += sv(q) > 1e-3;
  return rank;
}

template <class G>
struct RawSolutions {
  std::vector<PointOf<G>> points;
  std::vector<double> residuals;
  std::vector<int> kernel_dims;
  std::vector<int> start_index;
  int starts = 0;
  int converged = 0;
};

// Runs LM from every start (index order), then deduplicates in index order so
// the result does not depend on scheduling.
template <class G, class Sampler>
RawSolutions<G> multistart(const WordSystem<G>& sys, const SolverConfig& cfg,
                           int starts, Sampler&& sample) {
  using Point = PointOf<G>;
  std::vector<std::optional<LmResult<Point>>> results(starts);
  parallel_for(starts, worker_count(cfg), [&](int k) {
    auto res = levenberg_marquardt(sys, sample(k), cfg.converge_tol,
                                   cfg.max_iterations);
    if (res.converged) results[k] = std::move(res);
  });

  RawSolutions<G> out;
  out.starts = starts;
  const double dedup_sq = cfg.dedup_radius * cfg.dedup_radius;
  for (int k = 0; k < starts; ++k) {
    if (!results[k]) continue;
    ++out.converged;
    const Point& p = results[k]->x;
    bool duplicate = false;
    for (const Point& q : out.points) {
      if (point_distance_sq(sys.group(), p, q) <= dedup_sq) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    out.points.push_back(p);
    out.residuals.push_back(results[k]->residual);
    out.start_index.push_back(k);
  }
  out.kernel_dims.reserve(out.points.size());
  for (const Point& p : out.points)
    out.kernel_dims.push_back(kernel_dimension_fd(sys, p, cfg.rank_tol));
  return out;
}

struct GenericComponent {
  std::vector<int> members;  // indices into the solution list
  int dimension = 0;
  double agreement = 1.0;    // fraction of members with the modal kernel dim
  bool ambiguous = false;
  int local_dimension = -1;
  std::vector<double> signature;
  bool signature_constant = true;
};

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    for (int k = 0; k < n; ++k) parent_[k] = k;
  }
  int find(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

template <class G>
int nearest_member(const WordSystem<G>& sys, const std::vector<PointOf<G>>& pts,
                   const std::vector<int>& members, const PointOf<G>& x,
                   double* dist) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int m : members) {
    const double d = point_distance_sq(sys.group(), pts[m], x);
    if (d < best_d) {
      best_d = d;
      best = m;
    }
  }
  if (dist) *dist = std::sqrt(best_d);
  return best;
}

// Proximity union-find at cluster_radius, then proximity clusters of equal
// kernel dimension are merged when a walk inside the solution set joins them.
template <class G>
std::vector<GenericComponent> cluster(const WordSystem<G>& sys,
                                      const std::vector<PointOf<G>>& pts,
                                      const std::vector<int>& kernel_dims,
                                      const SolverConfig& cfg) {
  const int n = static_cast<int>(pts.size());
  UnionFind uf(n);
  const double r2 = cfg.cluster_radius * cfg.cluster_radius;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (point_distance_sq(sys.group(), pts[a], pts[b]) <= r2) uf.unite(a, b);

  std::vector<std::vector<int>> groups;
  std::map<int, int> root_to_group;
  for (int a = 0; a < n; ++a) {
    const int root = uf.find(a);
    auto [it, inserted] =
        root_to_group.emplace(root, static_cast<int>(groups.size()));
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(a);
  }

  std::vector<std::vector<int>> comps;
  std::vector<int> comp_dim;
  for (const auto& grp : groups) {
    const int lead = grp.front();
    const int dim = kernel_dims[lead];
    int joined = -1;
    if (dim > 0) {
      // Nearest components first.
      std::vector<std::pair<double, int>> order;
      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (comp_dim[c] != dim) continue;
        double d = 0.0;
        nearest_member(sys, pts, comps[c], pts[lead], &d);
        order.emplace_back(d, static_cast<int>(c));
      }
      std::sort(order.begin(), order.end());
      for (const auto& [d, c] : order) {
        const int target = nearest_member(sys, pts, comps[c], pts[lead], nullptr);
        if (walk_connects(sys, pts[lead], pts[target], cfg)) {
          joined = c;
          break;
        }
      }
    }
    if (joined < 0) {
      comps.push_back(grp);
      comp_dim.push_back(dim);
    } else {
      comps[joined].insert(comps[joined].end(), grp.begin(), grp.end());
    }
  }

  std::vector<GenericComponent> out;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    GenericComponent comp;
    comp.members = comps[c];
    std::sort(comp.members.begin(), comp.members.end());
    std::map<int, int> hist;
    for (int m : comp.members) ++hist[kernel_dims[m]];
    int mode = 0, count = -1;
    for (const auto& [dim, cnt] : hist)
      if (cnt > count) {
        mode = dim;
        count = cnt;
      }
    comp.dimension = mode;
    comp.agreement = static_cast<double>(count) / comp.members.size();
    comp.ambiguous = comp.agreement < 0.9;
    comp.signature = sys.signature(pts[comp.members.front()]);
    for (int m : comp.members) {
      const auto sig = sys.signature(pts[m]);
      for (std::size_t q = 0; q < sig.size(); ++q)
        if (std::abs(sig[q] - comp.signature[q]) > 1e-8)
          comp.signature_constant = false;
    }
    comp.local_dimension =
        local_dimension(sys, pts[comp.members.front()], cfg, c + 1);
    out.push_back(std::move(comp));
  }
  return out;
}

// Index of the component (given as sample lists) containing x, or -1 when x is
// not a solution or lies in none of them.
template <class G>
int locate_component(const WordSystem<G>& sys, const PointOf<G>& x,
                     const std::vector<PointOf<G>>& pts,
                     const std::vector<GenericComponent>& comps,
                     const SolverConfig& cfg) {
  if (sys.residual_norm(x) > 1e-8) return -1;
  auto res = levenberg_marquardt(sys, x, cfg.converge_tol, cfg.max_iterations);
  if (!res.converged) return -1;
  std::vector<std::pair<double, int>> order;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    double d = 0.0;
    nearest_member(sys, pts, comps[c].members, res.x, &d);
    if (d <= cfg.cluster_radius) return static_cast<int>(c);
    order.emplace_back(d, static_cast<int>(c));
  }
  std::sort(order.begin(), order.end());
  for (const auto& [d, c] : order) {
    if (comps[c].dimension == 0) continue;
    const int target = nearest_member(sys, pts, comps[c].members, res.x, nullptr);
    if (walk_connects(sys, res.x, pts[target], cfg)) return c;
  }
  return -1;
}

}  // namespace charvar::detail
