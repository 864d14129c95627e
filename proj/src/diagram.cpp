#include "charvar/diagram.hpp"

#include <numeric>
#include <regex>
#include <sstream>

#include "charvar/errors.hpp"

namespace charvar {
namespace {

int integer_rank(const IntMatrix& m) {
  if (m.empty() || m[0].empty()) return 0;
  const SmithNormalForm snf = smith_normal_form(m);
  int rank = 0;
  for (const mpz_class& d : snf.invariant_factors)
    if (d != 0) ++rank;
  return rank;
}

std::vector<FreeWord>& family_of(HeegaardDiagram& d, CurveFamily f) {
  return f == CurveFamily::kAlpha ? d.alpha : d.beta;
}

const char* family_name(CurveFamily f) {
  return f == CurveFamily::kAlpha ? "alpha" : "beta";
}

}  // namespace

std::vector<FreeWord> HeegaardDiagram::all_curves() const {
  std::vector<FreeWord> out = alpha;
  out.insert(out.end(), beta.begin(), beta.end());
  return out;
}

std::int64_t AbelianGroupInvariants::torsion_order() const {
  std::int64_t order = 1;
  for (std::int64_t d : torsion) order *= d;
  return order;
}

std::string AbelianGroupInvariants::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (std::int64_t d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::vector<std::int64_t> abelianize(const FreeWord& word, int genus) {
  std::vector<std::int64_t> v(2 * static_cast<std::size_t>(genus), 0);
  for (const Letter& l : word.letters()) {
    if (l.generator > 2 * genus) {
      throw MalformedWordError("generator " + std::to_string(l.generator) +
                               " exceeds 2g = " + std::to_string(2 * genus));
    }
    v[l.slot()] += l.sign;
  }
  return v;
}

ValidationReport validate_diagram(const HeegaardDiagram& d) {
  ValidationReport rep;
  auto fail = [&](std::string why) {
    rep.pass = false;
    rep.failures.push_back(std::move(why));
  };
  if (d.genus < 0) {
    fail("negative genus");
    return rep;
  }
  const auto g = static_cast<std::size_t>(d.genus);
  if (d.alpha.size() != g)
    fail("expected " + std::to_string(g) + " alpha curves, got " +
         std::to_string(d.alpha.size()));
  if (d.beta.size() != g)
    fail("expected " + std::to_string(g) + " beta curves, got " +
         std::to_string(d.beta.size()));
  for (CurveFamily f : {CurveFamily::kAlpha, CurveFamily::kBeta}) {
    const auto& curves = f == CurveFamily::kAlpha ? d.alpha : d.beta;
    IntMatrix m;
    bool words_ok = true;
    for (std::size_t k = 0; k < curves.size(); ++k) {
      if (curves[k].max_generator() > 2 * d.genus) {
        fail(std::string(family_name(f)) + "_" + std::to_string(k + 1) +
             " uses a generator beyond genus " + std::to_string(d.genus));
        words_ok = false;
        continue;
      }
      m.push_back(abelianize(curves[k], d.genus));
    }
    if (!words_ok || curves.size() != g) continue;
    const int rank = integer_rank(m);
    if (rank != d.genus)
      fail(std::string(family_name(f)) + " curves span rank " +
           std::to_string(rank) + " < " + std::to_string(d.genus));
  }
  return rep;
}

HeegaardDiagram s3_genus(int genus) {
  if (genus < 0) throw InvalidParameterError("genus must be >= 0");
  HeegaardDiagram d;
  d.genus = genus;
  for (int j = 1; j <= genus; ++j) {
    d.alpha.push_back(FreeWord::a(j));
    d.beta.push_back(FreeWord::b(j));
  }
  d.name = "s3_genus(" + std::to_string(genus) + ")";
  return d;
}

HeegaardDiagram s2xs1() {
  HeegaardDiagram d;
  d.genus = 1;
  d.alpha = {FreeWord::a(1)};
  d.beta = {FreeWord::a(1)};
  d.name = "s2xs1";
  return d;
}

HeegaardDiagram lens(int p, int q) {
  if (p < 1) throw InvalidParameterError("lens space needs p >= 1");
  if (std::gcd(p, q) != 1)
    throw InvalidParameterError("lens(" + std::to_string(p) + "," +
                                std::to_string(q) + "): gcd(p,q) != 1");
  HeegaardDiagram d;
  d.genus = 1;
  d.alpha = {FreeWord::a(1)};
  d.beta = {FreeWord::a(1, q) * FreeWord::b(1, p)};
  d.name = "lens(" + std::to_string(p) + "," + std::to_string(q) + ")";
  return d;
}

std::optional<std::vector<FamilyPiece>> parse_family_name(
    const std::string& name) {
  static const std::regex lens_re(R"(lens\((\d+),(-?\d+)\))");
  static const std::regex s3_re(R"(s3_genus\((\d+)\))");
  std::vector<FamilyPiece> out;
  std::stringstream ss(name);
  std::string part;
  while (std::getline(ss, part, '#')) {
    std::smatch m;
    FamilyPiece piece;
    if (std::regex_match(part, m, lens_re)) {
      piece.kind = FamilyPiece::kLens;
      piece.genus = 1;
      piece.p = std::stoi(m[1]);
      piece.q = std::stoi(m[2]);
    } else if (std::regex_match(part, m, s3_re)) {
      piece.genus = std::stoi(m[1]);
    } else if (part == "s2xs1") {
      piece.kind = FamilyPiece::kS2xS1;
      piece.genus = 1;
    } else {
      return std::nullopt;
    }
    out.push_back(piece);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<HeegaardDiagram> diagram_from_name(const std::string& name) {
  const auto pieces = parse_family_name(name);
  if (!pieces) return std::nullopt;
  std::optional<HeegaardDiagram> acc;
  for (const FamilyPiece& f : *pieces) {
    HeegaardDiagram piece;
    try {
      switch (f.kind) {
        case FamilyPiece::kLens: piece = lens(f.p, f.q); break;
        case FamilyPiece::kS2xS1: piece = s2xs1(); break;
        case FamilyPiece::kSphere: piece = s3_genus(f.genus); break;
      }
    } catch (const Error&) {
      return std::nullopt;
    }
    acc = acc ? connected_sum(*acc, piece) : piece;
  }
  if (acc) acc->name = name;
  return acc;
}

HeegaardDiagram connected_sum(const HeegaardDiagram& d1,
                              const HeegaardDiagram& d2) {
  for (const HeegaardDiagram* d : {&d1, &d2}) {
    const ValidationReport rep = validate_diagram(*d);
    if (!rep.pass)
      throw ValidationError("connected sum of invalid diagram '" + d->name +
                            "': " + rep.failures.front());
  }
  if (d2.genus == 0) return d1;
  if (d1.genus == 0) return d2;
  HeegaardDiagram out = d1;
  out.genus = d1.genus + d2.genus;
  for (const FreeWord& w : d2.alpha) out.alpha.push_back(w.shifted(d1.genus));
  for (const FreeWord& w : d2.beta) out.beta.push_back(w.shifted(d1.genus));
  out.name = d1.name + "#" + d2.name;
  return out;
}

HeegaardDiagram stabilize(const HeegaardDiagram& d) {
  const ValidationReport rep = validate_diagram(d);
  if (!rep.pass) throw ValidationError(rep.failures.front());
  HeegaardDiagram out = d;
  out.genus = d.genus + 1;
  out.alpha.push_back(FreeWord::a(out.genus));
  out.beta.push_back(FreeWord::b(out.genus));
  out.name = d.name + "#s3_genus(1)";
  return out;
}

HeegaardDiagram handleslide(const HeegaardDiagram& d, CurveFamily family,
                            int j, int k, const FreeWord& path, int sign) {
  if (j == k) throw InvalidMoveError("cannot slide a curve over itself");
  if (sign != 1 && sign != -1) throw InvalidMoveError("sign must be +-1");
  if (j < 1 || k < 1 || j > d.genus || k > d.genus)
    throw InvalidMoveError("curve index out of range");
  if (path.max_generator() > 2 * d.genus)
    throw InvalidMoveError("path word leaves the surface generators");
  HeegaardDiagram out = d;
  auto& curves = family_of(out, family);
  const FreeWord over = curves[k - 1].power(sign).conjugated_by(path);
  curves[j - 1] = curves[j - 1] * over;
  out.name = d.name + "~slide";
  return out;
}

HeegaardDiagram conjugate_curve(const HeegaardDiagram& d, CurveFamily family,
                                int j, const FreeWord& w) {
  if (j < 1 || j > d.genus) throw InvalidMoveError("curve index out of range");
  if (w.max_generator() > 2 * d.genus)
    throw InvalidMoveError("conjugating word leaves the surface generators");
  HeegaardDiagram out = d;
  auto& curves = family_of(out, family);
  curves[j - 1] = curves[j - 1].conjugated_by(w);
  out.name = d.name + "~isotopy";
  return out;
}

AbelianGroupInvariants invariants_from_snf(const SmithNormalForm& snf,
                                           int ambient_rank) {
  AbelianGroupInvariants out;
  int nonzero = 0;
  for (const mpz_class& d : snf.invariant_factors) {
    if (d == 0) continue;
    ++nonzero;
    if (d >= 2) {
      if (!d.fits_slong_p())
        throw InvalidParameterError("torsion coefficient exceeds 64 bits");
      out.torsion.push_back(d.get_si());
    }
  }
  out.free_rank = ambient_rank - nonzero;
  return out;
}

AbelianGroupInvariants h1_invariants(const HeegaardDiagram& d) {
  const ValidationReport rep = validate_diagram(d);
  if (!rep.pass) throw ValidationError(rep.failures.front());
  if (d.genus == 0) return {};
  IntMatrix m;
  for (const FreeWord& w : d.all_curves()) m.push_back(abelianize(w, d.genus));
  return invariants_from_snf(smith_normal_form(m), 2 * d.genus);
}

}  // namespace charvar
