#include "charvar/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "charvar/errors.hpp"

namespace charvar {
namespace {

void dump(const Json& j, int indent, std::string& out) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        dump(it.value(), indent + 2, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) {
        return !e.is_structured();
      });
      out += flat ? "[" : "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += flat ? ", " : ",\n";
        if (!flat) out += inner;
        dump(j[k], indent + 2, out);
      }
      out += flat ? "]" : "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_float(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

Json word_to_json(const FreeWord& w) {
  Json out = Json::array();
  for (const Letter& l : w.letters())
    out.push_back(Json::array({l.is_a() ? "a" : "b", l.handle(), l.sign}));
  return out;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError("at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

FreeWord word_from_json(const Json& j, const std::string& where, int genus) {
  if (!j.is_array()) fail(where, "word must be an array of letters");
  std::vector<Letter> letters;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "/" + std::to_string(k);
    const Json& l = j[k];
    if (!l.is_array() || l.size() != 3) fail(at, "letter must be [kind, index, sign]");
    if (!l[0].is_string() || (l[0] != "a" && l[0] != "b"))
      fail(at + "/0", "letter kind must be \"a\" or \"b\"");
    if (!l[1].is_number_integer()) fail(at + "/1", "index must be an integer");
    if (!l[2].is_number_integer()) fail(at + "/2", "sign must be an integer");
    const int index = l[1].get<int>();
    const int sign = l[2].get<int>();
    if (index < 1 || index > genus)
      fail(at + "/1", "index " + std::to_string(index) + " outside 1.." +
                          std::to_string(genus));
    if (sign != 1 && sign != -1) fail(at + "/2", "sign must be +1 or -1");
    const bool is_a = l[0] == "a";
    letters.push_back({is_a ? 2 * index - 1 : 2 * index, sign});
  }
  FreeWord w;
  for (const Letter& l : letters)
    w = w * FreeWord::generator_power(l.generator, l.sign);
  return w;
}

Json component_common(const auto& c) {
  return Json{{"dim", c.dimension},
              {"classification", to_string(c.classification)},
              {"trace_signature", c.trace_signature},
              {"signature_constant", c.signature_constant},
              {"samples", c.samples.size()},
              {"kernel_agreement", c.kernel_agreement},
              {"ambiguous", c.ambiguous},
              {"local_dimension", c.local_dimension}};
}

template <class Report>
Json report_common(const Report& r) {
  Json comps = Json::array();
  for (const auto& c : r.components) comps.push_back(component_common(c));
  return Json{{"diagram", diagram_to_json(r.diagram)},
              {"components", comps},
              {"warnings", r.warnings}};
}

Json h1_to_json(const AbelianGroupInvariants& h) {
  return Json{{"free_rank", h.free_rank}, {"torsion", h.torsion}};
}

}  // namespace

std::string format_float(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, 0, out);
  return out;
}

Json diagram_to_json(const HeegaardDiagram& d) {
  Json alpha = Json::array(), beta = Json::array();
  for (const FreeWord& w : d.alpha) alpha.push_back(word_to_json(w));
  for (const FreeWord& w : d.beta) beta.push_back(word_to_json(w));
  return Json{{"genus", d.genus}, {"alpha", alpha}, {"beta", beta}, {"name", d.name}};
}

HeegaardDiagram diagram_from_json(const Json& j) {
  if (!j.is_object()) fail("", "diagram must be an object");
  for (const char* key : {"genus", "alpha", "beta"})
    if (!j.contains(key)) fail("", std::string("missing key \"") + key + "\"");
  if (!j["genus"].is_number_integer() || j["genus"].get<int>() < 0)
    fail("/genus", "genus must be a non-negative integer");
  HeegaardDiagram d;
  d.genus = j["genus"].get<int>();
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("/name", "name must be a string");
    d.name = j["name"].get<std::string>();
  }
  for (const char* fam : {"alpha", "beta"}) {
    const Json& list = j[fam];
    const std::string at = std::string("/") + fam;
    if (!list.is_array()) fail(at, "curve list must be an array");
    auto& dest = std::string(fam) == "alpha" ? d.alpha : d.beta;
    for (std::size_t k = 0; k < list.size(); ++k)
      dest.push_back(word_from_json(list[k], at + "/" + std::to_string(k), d.genus));
  }
  return d;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON");
  }
}

HeegaardDiagram read_diagram_file(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return diagram_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json checks_to_json(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const Check& c : checks)
    out.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return out;
}

Json report_to_json(const ComponentReport& r) {
  Json out = report_common(r);
  out["rank"] = r.rank;
  return out;
}

Json report_to_json(const SurComponentReport& r) {
  Json out = report_common(r);
  out["rank"] = r.rank;
  return out;
}

Json census_to_json(const CensusReport& c) {
  Json out = report_common(c.report);
  out["h1"] = h1_to_json(c.h1);
  out["euler_prediction"] = c.euler_prediction;
  out["betti_rank"] = c.betti_rank;
  out["checks"] = checks_to_json(c.checks);
  out["pass"] = c.pass();
  return out;
}

Json kunneth_to_json(const KunnethReport& k) {
  Json restriction = Json::array();
  for (const auto& [a, b] : k.restriction) restriction.push_back(Json::array({a, b}));
  return Json{{"first", census_to_json(k.first)},
              {"second", census_to_json(k.second)},
              {"sum", census_to_json(k.sum)},
              {"restriction", restriction},
              {"checks", checks_to_json(k.checks)},
              {"witness", k.witness},
              {"pass", k.pass()}};
}

Json move_to_json(const MoveReport& m) {
  Json pairs = Json::array();
  for (const auto& [a, b] : m.matching.pairs) pairs.push_back(Json::array({a, b}));
  return Json{{"move", m.move.to_string()},
              {"before", report_to_json(m.before)},
              {"after", report_to_json(m.after)},
              {"matching",
               Json{{"perfect", m.matching.perfect},
                    {"pairs", pairs},
                    {"unmatched_before", m.matching.unmatched_first},
                    {"unmatched_after", m.matching.unmatched_second},
                    {"unmapped_deviation", m.matching.unmapped_deviation},
                    {"details", m.matching.details}}},
              {"hausdorff", m.hausdorff},
              {"checks", checks_to_json(m.checks)},
              {"pass", m.pass()}};
}

Json blowup_to_json(const BlowupReport& b) {
  Json censuses = Json::array();
  for (const CensusReport& c : b.censuses) censuses.push_back(census_to_json(c));
  return Json{{"censuses", censuses}, {"checks", checks_to_json(b.checks)}, {"pass", b.pass()}};
}

Json composition_to_json(const CompositionReport& c) {
  auto words = [](const std::vector<FreeWord>& ws) {
    Json out = Json::array();
    for (const FreeWord& w : ws) out.push_back(w.to_string());
    return out;
  };
  return Json{{"composite",
               Json{{"source_genus", c.composite.source_genus},
                    {"target_genus", c.composite.target_genus},
                    {"source_words", words(c.composite.source_words)},
                    {"target_words", words(c.composite.target_words)},
                    {"common_genus", c.composite.common_genus}}},
              {"samples", c.samples},
              {"composite_members", c.composite_members},
              {"factored", c.factored},
              {"max_factor_residual", c.max_factor_residual},
              {"composable_pairs", c.composable_pairs},
              {"forward_members", c.forward_members},
              {"max_forward_residual", c.max_forward_residual},
              {"distinct_classes", c.distinct_classes},
              {"counterexample_candidates", c.counterexample_candidates},
              {"pass", c.pass()}};
}

Json genus0_to_json(const Genus0Report& g) {
  return Json{{"rank", g.r},
              {"starts", g.starts},
              {"converged", g.converged},
              {"solutions", g.solutions.size()},
              {"max_conjugacy_objective", g.max_conjugacy_objective},
              {"tangent_dimension", g.tangent_dimension},
              {"orbit_dimension", g.orbit_dimension},
              {"dimension_audit", g.dimension_audit()},
              {"failures", g.failures},
              {"pass", g.pass}};
}

void write_report(const Json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write '" + path + "'");
  out << canonical_dump(j) << "\n";
  if (!out) throw ConfigurationError("failed writing '" + path + "'");
}

}  // namespace charvar
