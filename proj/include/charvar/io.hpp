#pragma once

#include <json.hpp>
#include <string>

#include "charvar/correspondences.hpp"
#include "charvar/diagram.hpp"
#include "charvar/invariants.hpp"
#include "charvar/su_r.hpp"

namespace charvar {

using Json = nlohmann::json;

// Sorted keys, two-space indentation, floats as %.12e, non-finite floats as
// null. Equal values give identical bytes.
std::string canonical_dump(const Json& j);
std::string format_float(double v);

// {"genus": g, "alpha": [[["a", 1, 1], ...], ...], "beta": [...], "name": "..."}
Json diagram_to_json(const HeegaardDiagram& d);
// Throws ParseError naming the offending JSON pointer.
HeegaardDiagram diagram_from_json(const Json& j);
// Throws ParseError with file name, line and column on malformed input.
HeegaardDiagram read_diagram_file(const std::string& path);
Json read_json_file(const std::string& path);

Json report_to_json(const ComponentReport& r);
Json report_to_json(const SurComponentReport& r);
Json census_to_json(const CensusReport& c);
Json kunneth_to_json(const KunnethReport& k);
Json move_to_json(const MoveReport& m);
Json blowup_to_json(const BlowupReport& b);
Json composition_to_json(const CompositionReport& c);
Json genus0_to_json(const Genus0Report& g);
Json checks_to_json(const std::vector<Check>& checks);

// Writes canonical_dump(j) plus a newline. Throws ConfigurationError when
// the path cannot be written.
void write_report(const Json& j, const std::string& path);

}  // namespace charvar
