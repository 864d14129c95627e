#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "charvar/solver.hpp"
#include "charvar/io.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace charvar;

namespace {

RepresentationPoint point(std::vector<UnitQuaternion> hs) { return {std::move(hs)}; }

std::vector<double> b_traces(const ComponentReport& r) {
  std::vector<double> out;
  for (const auto& c : r.components) out.push_back(c.trace_signature.at(1));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("residual examples") {
  CHECK(residual(lens(5, 2), RepresentationPoint::trivial(1)) == 0.0);
  CHECK(residual(s3_genus(3), RepresentationPoint::trivial(3)) == 0.0);
  std::mt19937_64 rng(1);
  for (int n = 0; n < 20; ++n)
    CHECK(residual(s2xs1(), point({UnitQuaternion::identity(), oracle::haar(rng)})) <= 1e-15);
  CHECK(residual(lens(2, 1), point({UnitQuaternion::identity(), UnitQuaternion::i()})) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS(residual(lens(2, 1), RepresentationPoint::trivial(2)));
}

TEST_CASE("refine fixes exact solutions") {
  const auto theta = RepresentationPoint::trivial(2);
  const auto r = refine(connected_sum(lens(3, 1), lens(2, 1)), theta);
  CHECK(r.converged);
  CHECK(r.point.handles == theta.handles);
}

TEST_CASE("refine pulls a perturbed theta back") {
  std::mt19937_64 rng(2);
  for (const auto& d : {lens(5, 1), lens(7, 2), connected_sum(lens(2, 1), lens(3, 1))}) {
    const auto start = support::perturb(RepresentationPoint::trivial(d.genus).handles, 1e-3, rng);
    const auto r = refine(d, point(start));
    CHECK(r.converged);
    CHECK(r.residual <= 1e-12);
    for (const auto& h : r.point.handles) CHECK(distance(h, UnitQuaternion::identity()) <= 1e-9);
  }
}

TEST_CASE("refine from residual two lands on a square root of one or flags") {
  const auto r = refine(lens(2, 1), point({UnitQuaternion::identity(), UnitQuaternion::i()}));
  if (r.converged) {
    const auto& b = r.point.handles[1];
    CHECK(std::abs(std::abs(b.w()) - 1.0) <= 1e-9);
    CHECK(distance(r.point.handles[0], UnitQuaternion::identity()) <= 1e-9);
  } else {
    CHECK(r.residual > 1e-12);
  }
}

TEST_CASE("kernel dimensions") {
  CHECK(jacobian_kernel_dim(lens(5, 1), RepresentationPoint::trivial(1)) == 0);
  std::mt19937_64 rng(3);
  for (int n = 0; n < 5; ++n)
    CHECK(jacobian_kernel_dim(s2xs1(), point({UnitQuaternion::identity(), oracle::haar(rng)})) == 3);
  const auto root = UnitQuaternion::exp(2 * oracle::kPi / 5, 0, 0);
  for (int n = 0; n < 5; ++n) {
    const auto b = conjugate_by(oracle::haar(rng), root);
    CHECK(jacobian_kernel_dim(lens(5, 1), point({UnitQuaternion::identity(), b})) == 2);
  }
}

TEST_CASE("Fox Jacobian agrees with central differences") {
  std::mt19937_64 rng(4);
  const std::vector<HeegaardDiagram> ds{lens(5, 2), s3_genus(2), connected_sum(lens(3, 1), s2xs1()),
                                        handleslide(s3_genus(2), CurveFamily::kBeta, 1, 2,
                                                    FreeWord::parse("a1 b2^-1"), -1)};
  for (const auto& d : ds)
    for (int n = 0; n < 10; ++n) {
      std::vector<UnitQuaternion> hs;
      for (int s = 0; s < 2 * d.genus; ++s) hs.push_back(oracle::haar(rng));
      const auto fox = constraint_jacobian(d, point(hs), true);
      const auto fd = constraint_jacobian(d, point(hs), false);
      REQUIRE(fox.rows() == fd.rows());
      REQUIRE(fox.cols() == fd.cols());
      CHECK((fox - fd).cwiseAbs().maxCoeff() <= 1e-5);
    }
}

TEST_CASE("solve examples") {
  const auto s3 = cluster_components(solve_intersection(s3_genus(1)));
  REQUIRE(s3.components.size() == 1);
  CHECK(s3.components[0].classification == Classification::kIsolated);

  const auto l3 = cluster_components(solve_intersection(lens(3, 1)));
  CHECK(l3.count(Classification::kIsolated) == 1);
  CHECK(l3.count(Classification::kSphere) == 1);
  CHECK(b_traces(l3).front() == doctest::Approx(-1.0).epsilon(1e-8));

  const auto set = solve_intersection(lens(2, 1));
  const auto l2 = cluster_components(set);
  REQUIRE(l2.components.size() == 2);
  CHECK(l2.count(Classification::kIsolated) == 2);
  CHECK(b_traces(l2) == std::vector<double>{-2.0, 2.0});
}

TEST_CASE("theta is always found and first") {
  for (const auto& d : {s3_genus(0), s3_genus(2), lens(4, 1), s2xs1(), connected_sum(lens(2, 1), s2xs1())}) {
    const auto s = solve_intersection(d);
    REQUIRE_FALSE(s.points.empty());
    CHECK(s.residuals[0] <= 1e-12);
    for (const auto& h : s.points[0].handles) CHECK(h == UnitQuaternion::identity());
    for (double r : s.residuals) CHECK(r <= SolverConfig{}.converge_tol);
  }
}

TEST_CASE("cluster examples") {
  const auto l5 = cluster_components(solve_intersection(lens(5, 1)));
  CHECK(l5.count(Classification::kIsolated) == 1);
  CHECK(l5.count(Classification::kSphere) == 2);
  const auto l4 = cluster_components(solve_intersection(lens(4, 1)));
  CHECK(l4.count(Classification::kIsolated) == 2);
  CHECK(l4.count(Classification::kSphere) == 1);
  const auto s = cluster_components(solve_intersection(s2xs1()));
  REQUIRE(s.components.size() == 1);
  CHECK(s.components[0].dimension == 3);
  CHECK(s.components[0].classification == Classification::kThreeSphereLike);
}

TEST_CASE("lens trace signatures match the root oracle") {
  for (int p = 2; p <= 8; ++p)
    for (int q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const auto report = cluster_components(solve_intersection(lens(p, q)));
      const auto expected = oracle::su2_lens(p);
      CHECK(report.count(Classification::kIsolated) == expected.isolated);
      CHECK(report.count(Classification::kSphere) == expected.spheres);
      auto want = expected.traces;
      std::sort(want.begin(), want.end());
      const auto got = b_traces(report);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-8);
      int betti = 0;
      for (const auto& c : report.components) betti += c.dimension == 0 ? 1 : 2;
      CHECK(betti == p);
    }
}

TEST_CASE("equal seeds give identical reports") {
  SolverConfig cfg;
  cfg.seed = 42;
  const auto a = canonical_dump(report_to_json(cluster_components(solve_intersection(lens(7, 2), cfg), cfg)));
  const auto b = canonical_dump(report_to_json(cluster_components(solve_intersection(lens(7, 2), cfg), cfg)));
  CHECK(a == b);
  cfg.threads = 3;
  const auto c = canonical_dump(report_to_json(cluster_components(solve_intersection(lens(7, 2), cfg), cfg)));
  CHECK(a == c);
}

TEST_CASE("match_reports") {
  const auto d = lens(5, 2);
  const auto r = cluster_components(solve_intersection(d));
  const auto st = cluster_components(solve_intersection(stabilize(d)));
  const auto m = match_reports(r, st, identity_map(1));
  CHECK(m.perfect);
  CHECK(m.unmapped_deviation <= 1e-9);

  const auto slid = cluster_components(solve_intersection(
      handleslide(connected_sum(lens(3, 1), lens(2, 1)), CurveFamily::kBeta, 1, 2)));
  const auto base = cluster_components(solve_intersection(connected_sum(lens(3, 1), lens(2, 1))));
  CHECK(match_reports(base, slid, identity_map(2)).perfect);

  const auto two = cluster_components(solve_intersection(lens(2, 1)));
  const auto three = cluster_components(solve_intersection(lens(3, 1)));
  const auto bad = match_reports(two, three, identity_map(1));
  CHECK_FALSE(bad.perfect);
  CHECK(bad.unmatched_first.size() + bad.unmatched_second.size() > 0);
}

TEST_CASE("config validation") {
  SolverConfig cfg;
  cfg.converge_tol = -1;
  CHECK_THROWS(cfg.validate());
  SolverConfig ok;
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.effective_starts(3) == 4000);
}
