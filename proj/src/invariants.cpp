#include "charvar/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "charvar/errors.hpp"

namespace charvar {
namespace {

std::string format_point(const RepresentationPoint& p) {
  std::string out = "[";
  for (std::size_t s = 0; s < p.handles.size(); ++s) {
    if (s) out += ", ";
    out += p.handles[s].to_string();
  }
  return out + "]";
}

double tuple_distance(const RepresentationPoint& a, const RepresentationPoint& b) {
  double acc = 0.0;
  for (std::size_t s = 0; s < a.handles.size(); ++s) {
    const double d = distance(a.handles[s], b.handles[s]);
    acc += d * d;
  }
  return std::sqrt(acc);
}

std::string join_dims(std::vector<int> dims) {
  std::sort(dims.begin(), dims.end());
  std::string out = "{";
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(dims[k]);
  }
  return out + "}";
}

// Component dimensions of the summand's representation variety.
std::vector<int> piece_dimensions(const FamilyPiece& f) {
  switch (f.kind) {
    case FamilyPiece::kSphere: return {0};
    case FamilyPiece::kS2xS1: return {3};
    case FamilyPiece::kLens: {
      std::vector<int> dims(f.p % 2 == 0 ? 2 : 1, 0);
      dims.insert(dims.end(), (f.p - 1) / 2, 2);
      return dims;
    }
  }
  return {};
}

std::int64_t piece_euler(const FamilyPiece& f) {
  switch (f.kind) {
    case FamilyPiece::kSphere: return 1;
    case FamilyPiece::kS2xS1: return 0;
    case FamilyPiece::kLens: return f.p;
  }
  return 0;
}

int piece_betti(const FamilyPiece& f) {
  switch (f.kind) {
    case FamilyPiece::kSphere: return 1;
    case FamilyPiece::kS2xS1: return 2;
    case FamilyPiece::kLens: return f.p;
  }
  return 0;
}

bool same_curves(const HeegaardDiagram& a, const HeegaardDiagram& b) {
  return a.genus == b.genus && a.alpha == b.alpha && a.beta == b.beta;
}

void family_checks(const std::vector<FamilyPiece>& pieces, CensusReport& out) {
  const ComponentReport& rep = out.report;
  std::vector<int> expected{0};
  std::int64_t euler = 1;
  int betti = 1;
  for (const FamilyPiece& f : pieces) {
    std::vector<int> next;
    for (int a : expected)
      for (int b : piece_dimensions(f)) next.push_back(a + b);
    expected = std::move(next);
    euler *= piece_euler(f);
    betti *= piece_betti(f);
  }
  std::vector<int> found;
  for (const Component& c : rep.components) found.push_back(c.dimension);
  std::sort(expected.begin(), expected.end());
  std::sort(found.begin(), found.end());
  out.checks.push_back({"family-census", found == expected,
                        "expected dimensions " + join_dims(expected) +
                            ", found " + join_dims(found)});
  out.checks.push_back({"family-euler", out.euler_prediction == euler,
                        "expected " + std::to_string(euler) + ", predicted " +
                            std::to_string(out.euler_prediction)});
  if (out.betti_rank >= 0)
    out.checks.push_back({"family-betti", out.betti_rank == betti,
                          "expected " + std::to_string(betti) + ", found " +
                              std::to_string(out.betti_rank)});

  int offset = 0;
  for (const FamilyPiece& f : pieces) {
    const int b_slot = 2 * offset + 1;
    if (f.kind == FamilyPiece::kLens) {
      // B^p = 1 forces trace(B) = 2 cos(2 pi k / p).
      std::vector<double> allowed;
      for (int k = 0; k <= f.p / 2; ++k)
        allowed.push_back(2.0 * std::cos(2.0 * std::numbers::pi * k / f.p));
      std::vector<bool> seen(allowed.size(), false);
      bool ok = true;
      std::string detail;
      for (std::size_t c = 0; c < rep.components.size(); ++c) {
        const Component& comp = rep.components[c];
        // Only this summand's slot has to be constant; other summands may
        // contribute positive-dimensional factors with varying traces.
        bool hit = false;
        for (std::size_t k = 0; k < allowed.size(); ++k) {
          bool all = true;
          for (const RepresentationPoint& p : comp.samples)
            all = all && std::abs(p.handles[b_slot].trace() - allowed[k]) <= 1e-8;
          if (all) {
            seen[k] = true;
            hit = true;
          }
        }
        if (!hit) {
          ok = false;
          detail = "component " + std::to_string(c) + " has trace(b" +
                   std::to_string(offset + 1) + ") outside {2cos(2 pi k/" +
                   std::to_string(f.p) + ")}";
        }
      }
      if (pieces.size() == 1) {
        for (std::size_t k = 0; k < seen.size(); ++k)
          if (!seen[k]) {
            ok = false;
            detail = "no component with trace 2cos(2 pi " + std::to_string(k) +
                     "/" + std::to_string(f.p) + ")";
          }
      }
      out.checks.push_back({"lens-trace-signature", ok,
                            ok ? "traces in {2cos(2 pi k/p)}" : detail});
    }
    if (f.kind == FamilyPiece::kS2xS1 && pieces.size() == 1 &&
        rep.components.size() == 1) {
      double lo = 2.0, hi = -2.0;
      for (const RepresentationPoint& p : rep.components.front().samples) {
        lo = std::min(lo, p.handles[b_slot].trace());
        hi = std::max(hi, p.handles[b_slot].trace());
      }
      std::ostringstream os;
      os << "trace(b1) spans [" << lo << ", " << hi << "]";
      out.checks.push_back({"trace-span", lo <= -1.9 && hi >= 1.9, os.str()});
    }
    offset += f.genus;
  }
}

}  // namespace

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass; });
}

int betti_rank(const ComponentReport& r) {
  int total = 0;
  for (const Component& c : r.components) {
    switch (c.classification) {
      case Classification::kIsolated: total += 1; break;
      case Classification::kSphere:
      case Classification::kThreeSphereLike: total += 2; break;
      case Classification::kOther: return -1;
    }
  }
  return total;
}

std::int64_t predict_euler(const HeegaardDiagram& d) {
  const AbelianGroupInvariants h1 = h1_invariants(d);
  return h1.free_rank == 0 ? h1.torsion_order() : 0;
}

CensusReport generator_census(const HeegaardDiagram& d, const SolverConfig& cfg) {
  CensusReport out;
  out.diagram_name = d.name;
  out.h1 = h1_invariants(d);
  out.euler_prediction = out.h1.free_rank == 0 ? out.h1.torsion_order() : 0;
  out.report = cluster_components(solve_intersection(d, cfg), cfg);
  out.betti_rank = betti_rank(out.report);

  if (out.h1.free_rank == 0) {
    // theta must be a transverse (isolated) solution.
    const RepresentationPoint theta = RepresentationPoint::trivial(d.genus);
    int owner = -1;
    for (std::size_t c = 0; c < out.report.components.size() && owner < 0; ++c)
      for (const RepresentationPoint& p : out.report.components[c].samples)
        if (tuple_distance(p, theta) <= 1e-9) owner = static_cast<int>(c);
    const int kdim = jacobian_kernel_dim(d, theta, cfg);
    const bool ok = owner >= 0 && kdim == 0 &&
                    out.report.components[owner].dimension == 0;
    out.checks.push_back({"theta-isolated", ok,
                          "kernel dimension at theta " + std::to_string(kdim) +
                              (owner < 0 ? ", theta not found" : "")});
  }

  if (const auto pieces = parse_family_name(d.name)) {
    const auto rebuilt = diagram_from_name(d.name);
    if (rebuilt && same_curves(*rebuilt, d)) family_checks(*pieces, out);
  }
  return out;
}

KunnethReport kunneth_check(const HeegaardDiagram& d1, const HeegaardDiagram& d2,
                            const SolverConfig& cfg) {
  KunnethReport out;
  const HeegaardDiagram sum = connected_sum(d1, d2);
  out.first = generator_census(d1, cfg);
  out.second = generator_census(d2, cfg);
  out.sum = generator_census(sum, cfg);

  const int g1 = d1.genus;
  GeneratorMap map1(2 * g1), map2(2 * d2.genus);
  for (int s = 0; s < 2 * g1; ++s) map1[s] = s;
  for (int s = 0; s < 2 * d2.genus; ++s) map2[s] = 2 * g1 + s;
  // A genus-0 summand leaves the other diagram unchanged.
  if (d2.genus > 0 && d1.genus == 0) map2 = identity_map(d2.genus);
  const auto left = restrict_components(out.first.report, out.sum.report, map1, cfg);
  const auto right = restrict_components(out.second.report, out.sum.report, map2, cfg);

  const auto& c1 = out.first.report.components;
  const auto& c2 = out.second.report.components;
  const auto& cs = out.sum.report.components;
  bool defined = true, additive = true, injective = true;
  std::vector<std::vector<int>> hits(c1.size(), std::vector<int>(c2.size(), 0));
  std::string dim_detail, def_detail;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    out.restriction.emplace_back(left[k], right[k]);
    if (left[k] < 0 || right[k] < 0) {
      if (defined) {
        def_detail = "component " + std::to_string(k) + " restricts to no factor component";
        out.witness = format_point(cs[k].samples.front());
      }
      defined = false;
      continue;
    }
    if (++hits[left[k]][right[k]] > 1) injective = false;
    if (cs[k].dimension != c1[left[k]].dimension + c2[right[k]].dimension) {
      if (additive) {
        dim_detail = "component " + std::to_string(k) + " has dimension " +
                     std::to_string(cs[k].dimension) + ", factors " +
                     std::to_string(c1[left[k]].dimension) + " + " +
                     std::to_string(c2[right[k]].dimension);
        if (out.witness.empty()) out.witness = format_point(cs[k].samples.front());
      }
      additive = false;
    }
  }
  const bool counts = cs.size() == c1.size() * c2.size();
  const bool bijective = defined && injective && counts;
  out.checks.push_back(
      {"restriction-bijection", bijective,
       defined ? std::to_string(cs.size()) + " components for " +
                     std::to_string(c1.size()) + " x " + std::to_string(c2.size()) +
                     " pairs"
               : def_detail});
  out.checks.push_back({"dimensions-additive", defined && additive,
                        additive ? "dim(sum) = dim + dim" : dim_detail});

  const AbelianGroupInvariants& h1 = out.first.h1;
  const AbelianGroupInvariants& h2 = out.second.h1;
  const AbelianGroupInvariants& hs = out.sum.h1;
  const bool h_ok = hs.free_rank == h1.free_rank + h2.free_rank &&
                    hs.torsion_order() == h1.torsion_order() * h2.torsion_order();
  out.checks.push_back({"h1-additive", h_ok,
                        h1.to_string() + " + " + h2.to_string() + " vs " +
                            hs.to_string()});
  const int b1 = out.first.betti_rank, b2 = out.second.betti_rank;
  if (b1 >= 0 && b2 >= 0 && out.sum.betti_rank >= 0)
    out.checks.push_back({"betti-multiplicative", out.sum.betti_rank == b1 * b2,
                          std::to_string(out.sum.betti_rank) + " vs " +
                              std::to_string(b1) + " x " + std::to_string(b2)});
  return out;
}

std::string Move::to_string() const {
  const std::string fam = family == CurveFamily::kAlpha ? "alpha" : "beta";
  switch (kind) {
    case MoveKind::kStabilize: return "stabilize";
    case MoveKind::kIsotopy:
      return "isotopy:" + fam + ":" + std::to_string(j) + ":" + word.to_string();
    case MoveKind::kHandleslide:
      return "slide:" + fam + ":" + std::to_string(j) + ":" + std::to_string(k) +
             ":" + std::to_string(sign) + ":" + word.to_string();
  }
  return "";
}

HeegaardDiagram apply_move(const HeegaardDiagram& d, const Move& m) {
  switch (m.kind) {
    case MoveKind::kStabilize: return stabilize(d);
    case MoveKind::kIsotopy: {
      HeegaardDiagram out = conjugate_curve(d, m.family, m.j, m.word);
      out.name = d.name + "~isotopy";
      return out;
    }
    case MoveKind::kHandleslide:
      return handleslide(d, m.family, m.j, m.k, m.word, m.sign);
  }
  throw InvalidMoveError("unknown move");
}

MoveReport verify_move(const HeegaardDiagram& d, const Move& m,
                       const SolverConfig& cfg) {
  MoveReport out;
  out.move = m;
  const HeegaardDiagram moved = apply_move(d, m);
  out.before = cluster_components(solve_intersection(d, cfg), cfg);
  out.after = cluster_components(solve_intersection(moved, cfg), cfg);
  out.matching = match_reports(out.before, out.after, identity_map(d.genus), cfg);

  std::string detail = std::to_string(out.matching.pairs.size()) + " pairs";
  for (const std::string& s : out.matching.details) detail += "; " + s;
  if (!out.matching.unmatched_first.empty())
    detail += "; " + std::to_string(out.matching.unmatched_first.size()) +
              " unmatched before";
  if (!out.matching.unmatched_second.empty())
    detail += "; " + std::to_string(out.matching.unmatched_second.size()) +
              " unmatched after";
  out.checks.push_back({"perfect-matching", out.matching.perfect, detail});

  if (m.kind == MoveKind::kStabilize) {
    std::ostringstream os;
    os << "new handle slots deviate from 1 by " << out.matching.unmapped_deviation;
    out.checks.push_back(
        {"new-handle-trivial", out.matching.unmapped_deviation <= 1e-9, os.str()});
  }
  if (m.kind == MoveKind::kHandleslide) {
    auto one_way = [&](const ComponentReport& from, const HeegaardDiagram& other) {
      double worst = 0.0;
      for (const Component& c : from.components)
        for (const RepresentationPoint& p : c.samples) {
          const RefineResult r = refine(other, p, cfg);
          worst = std::max(worst, r.converged ? tuple_distance(p, r.point)
                                              : std::numeric_limits<double>::infinity());
        }
      return worst;
    };
    out.hausdorff = std::max(one_way(out.before, moved), one_way(out.after, d));
    std::ostringstream os;
    os << "Hausdorff distance on samples " << out.hausdorff;
    out.checks.push_back({"pointwise-equal", out.hausdorff <= 1e-9, os.str()});
  }
  return out;
}

std::vector<HeegaardDiagram> blowup_diagrams() {
  const FreeWord a = FreeWord::a(1), b = FreeWord::b(1);
  const FreeWord c = b * a.inverse();
  std::vector<HeegaardDiagram> out;
  const std::vector<std::tuple<FreeWord, FreeWord, std::string>> pairs{
      {a, b, "blowup(a,b)"}, {b, c, "blowup(b,ba^-1)"}, {a, c, "blowup(a,ba^-1)"}};
  for (const auto& [x, y, name] : pairs) {
    HeegaardDiagram d;
    d.genus = 1;
    d.alpha = {x};
    d.beta = {y};
    d.name = name;
    out.push_back(std::move(d));
  }
  return out;
}

BlowupReport blowup_triple_check(const SolverConfig& cfg) {
  BlowupReport out;
  for (const HeegaardDiagram& d : blowup_diagrams()) {
    CensusReport c = generator_census(d, cfg);
    const auto& comps = c.report.components;
    const bool ok = comps.size() == 1 && comps.front().dimension == 0 &&
                    c.checks.size() == 1 && c.pass();
    out.checks.push_back({d.name, ok,
                          std::to_string(comps.size()) + " component(s)"});
    out.censuses.push_back(std::move(c));
  }
  return out;
}

}  // namespace charvar
