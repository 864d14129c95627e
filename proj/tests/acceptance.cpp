// Acceptance suite: one PASS/FAIL line per criterion. Every criterion also
// returns its reports as canonical JSON so the determinism criterion can rerun
// them and compare bytes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "charvar/correspondences.hpp"
#include "charvar/invariants.hpp"
#include "charvar/io.hpp"
#include "charvar/su_r.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace charvar;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  Json reports = Json::array();

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const Check* find_check(const std::vector<Check>& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

FreeWord random_word(std::mt19937_64& rng, int generators, int min_len, int max_len) {
  std::uniform_int_distribution<int> gen(1, generators), len(min_len, max_len), sgn(0, 1);
  std::vector<Letter> ls;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) ls.push_back({gen(rng), sgn(rng) ? 1 : -1});
  return FreeWord(ls);
}

std::vector<HeegaardDiagram> criteria_1_to_3_diagrams() {
  std::vector<HeegaardDiagram> ds;
  for (int g = 0; g <= 3; ++g) ds.push_back(s3_genus(g));
  ds.push_back(s2xs1());
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {5, 1}, {5, 2}, {7, 2}, {8, 3}})
    ds.push_back(lens(p, q));
  return ds;
}

Outcome s3_census(const SolverConfig& base) {
  Outcome o;
  for (int g = 0; g <= 3; ++g) {
    SolverConfig cfg = base;
    cfg.starts = g == 3 ? 4000 : 0;
    const auto t0 = Clock::now();
    const auto c = generator_census(s3_genus(g), cfg);
    const double secs = seconds_since(t0);
    o.reports.push_back(census_to_json(c));
    const auto& comps = c.report.components;
    o.require(comps.size() == 1, "s3_genus(" + std::to_string(g) + ") has " +
                                     std::to_string(comps.size()) + " components");
    if (!comps.empty()) {
      o.require(comps[0].classification == Classification::kIsolated, "theta isolated");
      o.require(jacobian_kernel_dim(s3_genus(g), RepresentationPoint::trivial(g), cfg) == 0,
                "kernel dimension 0 at theta");
    }
    if (g == 3) {
      o.require(secs <= 60.0, "runtime " + fmt(secs) + " s at g=3");
      o.note("g=3, 4000 starts: " + fmt(secs) + " s");
    }
  }
  return o;
}

Outcome s2xs1_census(const SolverConfig& cfg) {
  Outcome o;
  const auto c = generator_census(s2xs1(), cfg);
  o.reports.push_back(census_to_json(c));
  const auto& comps = c.report.components;
  o.require(comps.size() == 1, std::to_string(comps.size()) + " components");
  if (comps.size() == 1) o.require(comps[0].dimension == 3, "dimension 3");
  double lo = 2, hi = -2;
  for (const auto& comp : comps)
    for (const auto& s : comp.samples) {
      lo = std::min(lo, s.handles[1].trace());
      hi = std::max(hi, s.handles[1].trace());
    }
  o.require(lo <= -1.9 && hi >= 1.9, "trace(B) span [" + fmt(lo) + ", " + fmt(hi) + "]");
  o.require(c.euler_prediction == 0, "euler_prediction 0");
  o.note("trace(B) in [" + fmt(lo) + ", " + fmt(hi) + "]");
  return o;
}

Outcome lens_censuses(const SolverConfig& cfg) {
  Outcome o;
  double slowest = 0;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {5, 1}, {5, 2}, {7, 2}, {8, 3}}) {
    const std::string name = "lens(" + std::to_string(p) + "," + std::to_string(q) + ")";
    const auto t0 = Clock::now();
    const auto c = generator_census(lens(p, q), cfg);
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    o.reports.push_back(census_to_json(c));
    const int isolated = p % 2 ? 1 : 2;
    const int spheres = p % 2 ? (p - 1) / 2 : (p - 2) / 2;
    o.require(c.report.count(Classification::kIsolated) == isolated, name + " isolated count");
    o.require(c.report.count(Classification::kSphere) == spheres, name + " sphere count");
    o.require(static_cast<int>(c.report.components.size()) == isolated + spheres,
              name + " no extra components");
    auto want = oracle::su2_lens(p).traces;
    std::vector<double> got;
    for (const auto& comp : c.report.components) got.push_back(comp.trace_signature.at(1));
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    bool traces = got.size() == want.size();
    for (std::size_t i = 0; traces && i < got.size(); ++i) traces = std::abs(got[i] - want[i]) <= 1e-8;
    o.require(traces, name + " trace signatures");
    o.require(c.betti_rank == p, name + " betti rank " + std::to_string(c.betti_rank));
    o.require(c.euler_prediction == p, name + " euler prediction");
    o.require(secs <= 120.0, name + " runtime " + fmt(secs) + " s");
  }
  o.note("slowest run " + fmt(slowest) + " s");
  return o;
}

Outcome kunneth(const SolverConfig& cfg) {
  Outcome o;
  const auto a = kunneth_check(lens(2, 1), lens(3, 1), cfg);
  o.reports.push_back(kunneth_to_json(a));
  o.require(a.pass(), "lens(2,1)#lens(3,1) checks");
  o.require(a.sum.h1 == AbelianGroupInvariants{0, {6}}, "H1 = Z/6");
  const auto b = kunneth_check(lens(3, 1), s2xs1(), cfg);
  o.reports.push_back(kunneth_to_json(b));
  o.require(b.pass(), "lens(3,1)#s2xs1 checks");
  o.require(b.sum.h1 == AbelianGroupInvariants{1, {3}}, "H1 = Z + Z/3");
  o.note("sum censuses " + std::to_string(a.sum.report.components.size()) + " and " +
         std::to_string(b.sum.report.components.size()) + " components");
  return o;
}

Outcome move_invariance(const SolverConfig& cfg) {
  Outcome o;
  const std::vector<HeegaardDiagram> genus2{
      connected_sum(lens(2, 1), lens(3, 1)), connected_sum(lens(5, 2), lens(2, 1)),
      connected_sum(lens(3, 1), lens(3, 1)), s3_genus(2), connected_sum(lens(4, 1), s3_genus(1))};
  std::mt19937_64 rng(cfg.seed * 7919 + 1);
  auto family = [&] { return rng() % 2 ? CurveFamily::kAlpha : CurveFamily::kBeta; };
  int isotopies = 0, slides = 0, stabilizations = 0;
  double hausdorff = 0;
  for (int n = 0; n < 10; ++n) {
    const auto& d = genus2[n % genus2.size()];
    Move m{MoveKind::kIsotopy, family(), 1 + static_cast<int>(rng() % 2), 1, 1,
           random_word(rng, 4, 1, 4)};
    const auto r = verify_move(d, m, cfg);
    o.reports.push_back(move_to_json(r));
    o.require(r.pass(), "isotopy " + m.to_string() + " on " + d.name);
    isotopies += r.pass();
  }
  for (int n = 0; n < 10; ++n) {
    const auto& d = genus2[n % genus2.size()];
    const int j = 1 + static_cast<int>(rng() % 2);
    Move m{MoveKind::kHandleslide, family(), j, 3 - j, rng() % 2 ? 1 : -1,
           random_word(rng, 4, 0, 2)};
    const auto r = verify_move(d, m, cfg);
    o.reports.push_back(move_to_json(r));
    o.require(r.pass() && r.hausdorff <= 1e-9, "handleslide " + m.to_string() + " on " + d.name);
    hausdorff = std::max(hausdorff, r.hausdorff);
    slides += r.pass();
  }
  for (const auto& d : criteria_1_to_3_diagrams()) {
    const auto r = verify_move(d, Move{MoveKind::kStabilize}, cfg);
    o.reports.push_back(move_to_json(r));
    o.require(r.pass(), "stabilization of " + d.name);
    stabilizations += r.pass();
  }
  o.note(std::to_string(isotopies) + "/10 isotopies, " + std::to_string(slides) +
         "/10 slides (Hausdorff " + fmt(hausdorff) + "), " + std::to_string(stabilizations) +
         "/12 stabilizations");
  return o;
}

Outcome blowup(const SolverConfig& cfg) {
  Outcome o;
  const auto r = blowup_triple_check(cfg);
  o.reports.push_back(blowup_to_json(r));
  o.require(r.censuses.size() == 3, "three diagrams");
  for (const auto& c : r.censuses) {
    o.require(c.report.components.size() == 1 &&
                  c.report.components[0].classification == Classification::kIsolated,
              c.diagram_name + " single isolated point");
  }
  o.require(r.pass(), "blowup checks");
  return o;
}

Outcome ht_identities(const SolverConfig& cfg) {
  Outcome o;
  std::mt19937_64 rng(cfg.seed);
  double traceless = 0, product = 0, trace = 0;
  for (int genus : {1, 2})
    for (int n = 0; n < 1000; ++n) {
      const auto hs = support::handles_in_neighborhood(genus, rng);
      const auto p = ht_embed(hs);
      const auto inserted = commutator_product(hs).inverse();
      const auto c = p.punctures[0] * p.punctures[1] * p.punctures[2];
      traceless = std::max({traceless, std::abs(p.punctures[0].w()), std::abs(p.punctures[1].w())});
      product = std::max(product, distance(c, inserted));
      trace = std::max(trace, std::abs(c.trace() - commutator_product(hs).trace()));
    }
  o.require(traceless <= 1e-12, "C1, C2 traceless");
  o.require(product <= 1e-12, "C1 C2 C3 equals the inserted product");
  o.require(trace <= 1e-12, "trace consistency");
  o.note("max errors " + fmt(traceless) + ", " + fmt(product) + ", " + fmt(trace));
  o.reports.push_back(Json{{"traceless", traceless}, {"product", product}, {"trace", trace}});
  return o;
}

Outcome composition(const SolverConfig& cfg) {
  Outcome o;
  const std::vector<std::pair<ElementaryBordism, ElementaryBordism>> pairs{
      {ElementaryBordism::raising(0), ElementaryBordism::lowering(0)},
      {ElementaryBordism::cylinder(0), ElementaryBordism::cylinder(0)},
      {ElementaryBordism::cylinder(1), ElementaryBordism::cylinder(1)},
      {ElementaryBordism::lowering(0), ElementaryBordism::raising(0)}};
  double worst = 0;
  for (const auto& [b1, b2] : pairs) {
    const auto r = composition_check(b1, b2, 200, cfg.seed, cfg);
    o.reports.push_back(composition_to_json(r));
    const std::string name = to_string(b1.kind) + "(" + std::to_string(b1.source_genus) + ") then " +
                             to_string(b2.kind) + "(" + std::to_string(b2.source_genus) + ")";
    o.require(r.pass(), name);
    o.require(r.max_factor_residual <= 1e-6 && r.max_forward_residual <= 1e-6, name + " residuals");
    worst = std::max({worst, r.max_factor_residual, r.max_forward_residual});
    if (b1.kind == BordismKind::kGenusRaising)
      o.require(r.distinct_classes == 1, name + " composite is a single point");
  }
  o.note("max residual " + fmt(worst));
  return o;
}

Outcome sur(const SolverConfig& cfg) {
  Outcome o;
  for (int r : {2, 3}) {
    const auto t0 = Clock::now();
    const auto g0 = genus0_uniqueness(r, cfg, 1e-6);
    const double secs = seconds_since(t0);
    o.reports.push_back(genus0_to_json(g0));
    o.require(g0.pass, "genus0 r=" + std::to_string(r));
    o.require(g0.dimension_audit() == 0, "dimension audit r=" + std::to_string(r));
    o.require(secs <= 600, "genus0 runtime r=" + std::to_string(r));
  }
  o.require(sur_dimension(2, 1, 1) == 6 && sur_dimension(3, 1, 0) == 0 && sur_dimension(3, 1, 1) == 16,
            "dimension spot values");
  auto t0 = Clock::now();
  const auto s3 = solve_sur(s3_genus(1), 3, cfg);
  o.require(seconds_since(t0) <= 600, "s3 runtime");
  o.reports.push_back(report_to_json(s3));
  o.require(s3.components.size() == 1 && s3.components[0].dimension == 0,
            "s3_genus(1) at r=3 is one isolated point");
  t0 = Clock::now();
  const auto s = solve_sur(s2xs1(), 3, cfg);
  o.require(seconds_since(t0) <= 600, "s2xs1 runtime");
  o.reports.push_back(report_to_json(s));
  o.require(s.components.size() == 1 && s.components[0].dimension == 8,
            "s2xs1 at r=3 is one component of dimension 8");
  return o;
}

Outcome oracle_equivalence(const SolverConfig& cfg) {
  Outcome o;
  std::ostringstream counts;
  for (int r : {2, 3})
    for (int p = 2; p <= 8; ++p) {
      const auto report = solve_sur(lens(p, 1), r, cfg);
      o.reports.push_back(report_to_json(report));
      const auto classes = oracle::sur_root_classes(r, p);
      const std::string name = "lens(" + std::to_string(p) + ",1) r=" + std::to_string(r);
      o.require(report.components.size() == classes.size(),
                name + " count " + std::to_string(report.components.size()) + " vs oracle " +
                    std::to_string(classes.size()));
      for (const auto& c : report.components) {
        const std::complex<double> t{c.trace_signature.at(2), c.trace_signature.at(3)};
        const bool found = std::any_of(classes.begin(), classes.end(),
                                       [&](auto z) { return std::abs(z - t) <= 1e-8; });
        o.require(found, name + " signature in oracle set");
      }
      counts << report.components.size() << (p == 8 ? (r == 2 ? " | " : "") : ",");
    }
  o.note("component counts r=2 | r=3: " + counts.str());
  return o;
}

struct Criterion {
  int number;
  std::string title;
  std::function<Outcome(const SolverConfig&)> run;
};

}  // namespace

int main() {
  SolverConfig cfg;
  cfg.seed = 20240611;
  const std::vector<Criterion> criteria{
      {1, "S3 census", s3_census},
      {2, "S2xS1 census", s2xs1_census},
      {3, "lens censuses", lens_censuses},
      {4, "Kunneth", kunneth},
      {5, "move invariance", move_invariance},
      {6, "blowup triple", blowup},
      {7, "h_t identities", ht_identities},
      {8, "correspondence composition", composition},
      {9, "SU(r)", sur},
      {10, "oracle equivalence", oracle_equivalence},
  };

  bool all = true;
  std::vector<std::string> first_runs;
  auto print = [&](int number, const std::string& title, const Outcome& o, double secs) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << number << " (" << title << ", "
              << fmt(secs) << " s)";
    std::string sep = ": ";
    for (const auto& n : o.notes) {
      std::cout << sep << n;
      sep = "; ";
    }
    std::cout << std::endl;
    all = all && o.pass;
  };

  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run(cfg);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    first_runs.push_back(canonical_dump(o.reports));
    print(c.number, c.title, o, seconds_since(t0));
  }

  // Determinism: rerun everything with a different worker count.
  const auto t0 = Clock::now();
  Outcome det;
  SolverConfig again = cfg;
  again.threads = 3;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string bytes;
    try {
      bytes = canonical_dump(criteria[i].run(again).reports);
    } catch (const std::exception& e) {
      bytes = e.what();
    }
    det.require(bytes == first_runs[i], "criterion " + std::to_string(criteria[i].number) + " differs");
  }
  if (det.pass) det.note("criteria 1-10 rerun with 3 workers, reports byte-identical");
  print(11, "determinism", det, seconds_since(t0));
  return all ? 0 : 1;
}
