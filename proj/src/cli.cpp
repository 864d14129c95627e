#include "charvar/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "charvar/errors.hpp"
#include "charvar/su_r.hpp"

namespace charvar {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(what + ": expected an integer, got '" + s + "'");
}

// A diagram from a file path or a constructor name.
HeegaardDiagram resolve_diagram(const std::string& spec) {
  if (std::filesystem::exists(spec) || spec.ends_with(".json"))
    return read_diagram_file(spec);
  if (auto d = diagram_from_name(spec)) return *d;
  throw ParseError("'" + spec + "' is neither a diagram file nor a constructor name");
}

HeegaardDiagram primary_diagram(const Command& c) {
  if (!c.inputs.empty()) return read_diagram_file(c.inputs.front());
  if (c.family.empty()) throw ParseError("a diagram is required (--in or --family)");
  if (c.family == "lens") return lens(c.p, c.q);
  if (c.family == "s3") return s3_genus(c.genus);
  if (c.family == "s2xs1") return s2xs1();
  if (auto d = diagram_from_name(c.family)) return *d;
  throw ParseError("unknown family '" + c.family + "'");
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

template <class Report>
std::string component_table(const Report& r) {
  std::ostringstream os;
  os << "diagram " << (r.diagram.name.empty() ? "(unnamed)" : r.diagram.name)
     << "  genus " << r.diagram.genus << "  rank " << r.rank << "\n";
  os << pad("component", 11) << pad("dim", 5) << pad("classification", 20) << "samples\n";
  for (std::size_t c = 0; c < r.components.size(); ++c) {
    const auto& comp = r.components[c];
    os << pad(std::to_string(c), 11) << pad(std::to_string(comp.dimension), 5)
       << pad(to_string(comp.classification), 20) << comp.samples.size() << "\n";
  }
  for (const std::string& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

std::string check_table(const std::vector<Check>& checks) {
  std::ostringstream os;
  for (const Check& c : checks)
    os << (c.pass ? "PASS " : "FAIL ") << pad(c.name, 24) << c.detail << "\n";
  return os.str();
}

}  // namespace

Move parse_move(const std::string& descriptor) {
  const auto parts = split(descriptor, ':');
  Move m;
  if (parts.empty()) throw InvalidMoveError("empty move descriptor");
  auto family = [&](const std::string& s) {
    if (s == "alpha") return CurveFamily::kAlpha;
    if (s == "beta") return CurveFamily::kBeta;
    throw InvalidMoveError("curve family must be alpha or beta, got '" + s + "'");
  };
  if (parts[0] == "stabilize" && parts.size() == 1) {
    m.kind = MoveKind::kStabilize;
  } else if (parts[0] == "isotopy" && parts.size() == 4) {
    m.kind = MoveKind::kIsotopy;
    m.family = family(parts[1]);
    m.j = to_int(parts[2], "move curve index");
    m.word = FreeWord::parse(parts[3]);
  } else if (parts[0] == "slide" && parts.size() >= 4 && parts.size() <= 6) {
    m.kind = MoveKind::kHandleslide;
    m.family = family(parts[1]);
    m.j = to_int(parts[2], "move curve index");
    m.k = to_int(parts[3], "move curve index");
    if (parts.size() >= 5) m.sign = to_int(parts[4], "slide sign");
    if (parts.size() == 6) m.word = FreeWord::parse(parts[5]);
  } else {
    throw InvalidMoveError("unrecognized move descriptor '" + descriptor + "'");
  }
  return m;
}

std::vector<ElementaryBordism> parse_bordisms(const std::string& list) {
  std::vector<ElementaryBordism> out;
  for (const std::string& item : split(list, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw ParseError("bordism must be kind:genus, got '" + item + "'");
    const int g = to_int(parts[1], "bordism genus");
    if (g < 0) throw ParseError("bordism genus must be non-negative");
    if (parts[0] == "raise") {
      out.push_back(ElementaryBordism::raising(g));
    } else if (parts[0] == "lower") {
      out.push_back(ElementaryBordism::lowering(g));
    } else if (parts[0] == "cylinder") {
      out.push_back(ElementaryBordism::cylinder(g));
    } else {
      throw ParseError("unknown bordism kind '" + parts[0] + "'");
    }
  }
  return out;
}

CommandResult run_command(const Command& c) {
  SolverConfig cfg = c.cfg;
  if (c.tol && c.verb != "genus0") cfg.converge_tol = *c.tol;
  cfg.validate();
  CommandResult res;
  bool pass = true;

  if (c.verb == "census") {
    const CensusReport census = generator_census(primary_diagram(c), cfg);
    res.report = census_to_json(census);
    res.summary = component_table(census.report) + "H1 " + census.h1.to_string() +
                  "  euler prediction " + std::to_string(census.euler_prediction) +
                  "\n" + check_table(census.checks);
    pass = census.pass();
  } else if (c.verb == "euler") {
    const HeegaardDiagram d = primary_diagram(c);
    const AbelianGroupInvariants h1 = h1_invariants(d);
    const std::int64_t e = predict_euler(d);
    res.report = Json{{"diagram", diagram_to_json(d)},
                      {"h1", Json{{"free_rank", h1.free_rank}, {"torsion", h1.torsion}}},
                      {"euler_prediction", e}};
    res.summary = "H1 " + h1.to_string() + "  euler prediction " + std::to_string(e) + "\n";
  } else if (c.verb == "kunneth") {
    const HeegaardDiagram d1 = primary_diagram(c);
    HeegaardDiagram d2;
    if (!c.second.empty()) {
      d2 = resolve_diagram(c.second);
    } else if (c.inputs.size() >= 2) {
      d2 = read_diagram_file(c.inputs[1]);
    } else {
      throw ParseError("kunneth needs a second diagram (--second or a second --in)");
    }
    const KunnethReport k = kunneth_check(d1, d2, cfg);
    res.report = kunneth_to_json(k);
    res.summary = component_table(k.sum.report) + check_table(k.checks);
    pass = k.pass();
  } else if (c.verb == "verify-move") {
    if (c.move.empty()) throw ParseError("verify-move needs --move");
    const MoveReport m = verify_move(primary_diagram(c), parse_move(c.move), cfg);
    res.report = move_to_json(m);
    res.summary = component_table(m.before) + component_table(m.after) + check_table(m.checks);
    pass = m.pass();
  } else if (c.verb == "blowup") {
    const BlowupReport b = blowup_triple_check(cfg);
    res.report = blowup_to_json(b);
    res.summary = check_table(b.checks);
    pass = b.pass();
  } else if (c.verb == "compose-check") {
    const auto bs = parse_bordisms(c.bordisms.empty() ? "raise:0,lower:0" : c.bordisms);
    if (bs.size() != 2) throw ParseError("compose-check needs exactly two bordisms");
    const CompositionReport r = composition_check(bs[0], bs[1], c.samples, cfg.seed, cfg);
    res.report = composition_to_json(r);
    std::ostringstream os;
    os << "composite members " << r.composite_members << "/" << r.samples << ", factored "
       << r.factored << "/" << r.samples << ", forward " << r.forward_members << "/"
       << r.composable_pairs << "\n";
    res.summary = os.str();
    pass = r.pass();
  } else if (c.verb == "sur-census" || c.verb == "genus0") {
    if (c.rank < 2) throw InvalidParameterError("--rank must be at least 2");
    if (c.rank > 4 && !c.allow_high_rank)
      throw InvalidParameterError("--rank above 4 needs --allow-high-rank");
    if (c.verb == "genus0") {
      const Genus0Report g = genus0_uniqueness(c.rank, cfg, c.tol.value_or(1e-6));
      res.report = genus0_to_json(g);
      res.summary = std::string(g.pass ? "PASS" : "FAIL") + " genus-0 uniqueness at rank " +
                    std::to_string(c.rank) + ", " + std::to_string(g.solutions.size()) +
                    " solutions\n";
      pass = g.pass;
    } else {
      const SurComponentReport r = solve_sur(primary_diagram(c), c.rank, cfg);
      res.report = report_to_json(r);
      res.summary = component_table(r);
    }
  } else {
    throw ParseError("unknown verb '" + c.verb + "'");
  }
  res.exit_code = pass ? kExitPass : kExitCheckFailure;
  return res;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SU(2) and SU(r) character-variety censuses of Heegaard diagrams"};
  Command c;
  int threads = 0;
  app.add_option("verb", c.verb, "census | euler | kunneth | verify-move | blowup | "
                                 "compose-check | sur-census | genus0")
      ->required();
  app.add_option("--in", c.inputs, "diagram JSON file (repeatable)");
  app.add_option("--family", c.family, "lens, s3, s2xs1 or a constructor name");
  app.add_option("--p", c.p, "lens parameter p");
  app.add_option("--q", c.q, "lens parameter q");
  app.add_option("--genus", c.genus, "genus for --family s3");
  app.add_option("--rank", c.rank, "SU(r) rank");
  app.add_flag("--allow-high-rank", c.allow_high_rank, "permit --rank above 4");
  app.add_option("--starts", c.cfg.starts, "multistart count (0 = 500 * 2^g)");
  app.add_option("--seed", c.cfg.seed, "random seed");
  app.add_option("--tol", c.tol, "convergence tolerance (genus0: conjugacy tolerance)");
  app.add_option("--threads", threads, "worker cap (else CHARVAR_THREADS)");
  app.add_option("--second", c.second, "kunneth: second diagram file or name");
  app.add_option("--move", c.move, "verify-move descriptor");
  app.add_option("--bordisms", c.bordisms, "compose-check pair, e.g. raise:0,lower:0");
  app.add_option("--samples", c.samples, "compose-check sample count");
  app.add_option("--out", c.out, "report path");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  c.cfg.threads = threads;

  CommandResult res;
  try {
    res = run_command(c);
    const std::string text = canonical_dump(res.report);
    if (c.out.empty()) {
      out << text << "\n";
      err << res.summary;
    } else {
      write_report(res.report, c.out);
      out << res.summary;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return res.exit_code;
}

}  // namespace charvar
