#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rheokit/error.hpp"
#include "rheokit/maxwell0d.hpp"
#include "rheokit/rheology.hpp"

namespace rheokit::io {

using nlohmann::json;

/// Schema violation, tagged with the offending field path
/// (for example `children[1].potential.D`).
class DocumentError : public InvalidInput {
 public:
  DocumentError(std::string path, const std::string& what);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Parses JSON text; syntax errors throw InvalidInput as `source:line:col: ...`.
json parse_json_text(std::string_view text, std::string_view source);
json read_json_file(const std::string& path);

/// Potential objects: {"kind": "dashpot", "D"} | {"kind": "plastic", "sigma_a"} |
/// {"kind": "powerlaw", "D", "n"} (n may be "inf") | {"kind": "huber", "sigma_a", "D"} |
/// {"kind": "quad_plus_ball", "Dinv", "sigma_a"} | {"kind": "ball", "radius"} |
/// {"kind": "sampled", "grid": [...], "values": [...]} ("inf" allowed in values).
Potential parse_potential(const json& j, const std::string& path = "");
json dump_potential(const Potential& p);

/// {"node": "leaf", "potential": {...}} | {"node": "parallel"|"serial", "children": [...]}
RheoExpr parse_model(const json& j, const std::string& path = "");
json dump_model(const RheoExpr& e);

struct SimulationDocument {
  MaxwellModel model;
  DriveProgram drive;
  double e_el0 = 0.0;
};

/// {"E": number, "elements": [potential, ...], "drive": [{"t_end", "eps"}, ...], "e_el0"?}
SimulationDocument parse_simulation(const json& j);
json dump_simulation(const SimulationDocument& doc);

/// 17 significant digits, locale-independent; `inf`, `-inf`, `nan` tokens.
std::string format_number(double v);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(std::span<const double> values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace rheokit::io
