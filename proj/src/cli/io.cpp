#include "rheokit/cli/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace rheokit::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw DocumentError(path.empty() ? "<root>" : path, "expected an object");
  return j;
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) throw DocumentError(join(path, key), "unknown field");
  }
}

const json& field(const json& j, const std::string& path, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw DocumentError(join(path, key), "missing required field");
  return *it;
}

std::string string_field(const json& j, const std::string& path, const char* key) {
  const json& v = field(j, path, key);
  if (!v.is_string()) throw DocumentError(join(path, key), "expected a string");
  return v.get<std::string>();
}

// A number, or the string "inf" where allowed.
double number(const json& v, const std::string& path, bool allow_inf) {
  if (v.is_number()) return v.get<double>();
  if (allow_inf && v.is_string() && v.get<std::string>() == "inf") return kInf;
  throw DocumentError(path, allow_inf ? "expected a number or \"inf\"" : "expected a number");
}

double positive(const json& j, const std::string& path, const char* key, bool allow_inf = false) {
  const std::string p = join(path, key);
  const double v = number(field(j, path, key), p, allow_inf);
  if (!(v > 0.0)) {
    std::ostringstream msg;
    msg << "must be positive, got " << v;
    throw DocumentError(p, msg.str());
  }
  return v;
}

std::vector<double> number_array(const json& j, const std::string& path, const char* key,
                                 bool allow_inf) {
  const json& a = field(j, path, key);
  const std::string p = join(path, key);
  if (!a.is_array()) throw DocumentError(p, "expected an array");
  std::vector<double> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(number(a[i], index(p, i), allow_inf));
  return out;
}

json number_json(double v) {
  if (v == kInf) return "inf";
  return v;
}

// Runs a library constructor and reports its validation failures at `path`.
template <class F>
auto at_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const DocumentError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw DocumentError(path.empty() ? "<root>" : path, e.what());
  }
}

}  // namespace

DocumentError::DocumentError(std::string path, const std::string& what)
    : InvalidInput(path + ": " + what), path_(std::move(path)) {}

json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << col << ": JSON syntax error";
    const std::string detail = e.what();
    if (const auto pos = detail.find("syntax error"); pos != std::string::npos)
      msg << detail.substr(pos + std::string_view("syntax error").size());
    throw InvalidInput(msg.str());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

Potential parse_potential(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string kind = string_field(j, path, "kind");
  if (kind == "dashpot") {
    reject_unknown(j, path, {"kind", "D"});
    return Dashpot{positive(j, path, "D")};
  }
  if (kind == "plastic") {
    reject_unknown(j, path, {"kind", "sigma_a"});
    return PerfectPlastic{positive(j, path, "sigma_a")};
  }
  if (kind == "powerlaw") {
    reject_unknown(j, path, {"kind", "D", "n"});
    const double D = positive(j, path, "D");
    const double n = positive(j, path, "n", true);
    if (n == kInf) return PerfectPlastic{D};
    return PowerLaw{D, n};
  }
  if (kind == "huber") {
    reject_unknown(j, path, {"kind", "sigma_a", "D"});
    return Huber{positive(j, path, "sigma_a"), positive(j, path, "D")};
  }
  if (kind == "quad_plus_ball") {
    reject_unknown(j, path, {"kind", "Dinv", "sigma_a"});
    return QuadPlusBall{positive(j, path, "Dinv"), positive(j, path, "sigma_a")};
  }
  if (kind == "ball") {
    reject_unknown(j, path, {"kind", "radius"});
    return BallIndicator{positive(j, path, "radius")};
  }
  if (kind == "sampled") {
    reject_unknown(j, path, {"kind", "grid", "values"});
    auto grid = number_array(j, path, "grid", false);
    auto values = number_array(j, path, "values", true);
    if (grid.size() != values.size())
      throw DocumentError(join(path, "values"), "length differs from grid");
    return at_path(path, [&] { return sampled(SampledFunction(grid, values)); });
  }
  throw DocumentError(join(path, "kind"), "unknown potential kind \"" + kind + "\"");
}

json dump_potential(const Potential& p) {
  return std::visit(
      overloaded{
          [](const Dashpot& d) { return json{{"kind", "dashpot"}, {"D", d.D}}; },
          [](const PerfectPlastic& pp) { return json{{"kind", "plastic"}, {"sigma_a", pp.sigma_a}}; },
          [](const PowerLaw& pl) { return json{{"kind", "powerlaw"}, {"D", pl.D}, {"n", pl.n}}; },
          [](const Huber& h) { return json{{"kind", "huber"}, {"sigma_a", h.sigma_a}, {"D", h.D}}; },
          [](const QuadPlusBall& q) {
            return json{{"kind", "quad_plus_ball"}, {"Dinv", q.Dinv_quad}, {"sigma_a", q.sigma_a}};
          },
          [](const BallIndicator& b) { return json{{"kind", "ball"}, {"radius", b.radius}}; },
          [](const Sampled& s) {
            json grid = json::array();
            json values = json::array();
            for (double x : s.function().grid()) grid.push_back(x);
            for (double v : s.function().values()) values.push_back(number_json(v));
            return json{{"kind", "sampled"}, {"grid", grid}, {"values", values}};
          },
      },
      p);
}

RheoExpr parse_model(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string node = string_field(j, path, "node");
  if (node == "leaf") {
    reject_unknown(j, path, {"node", "potential"});
    const std::string pp = join(path, "potential");
    Potential p = parse_potential(field(j, path, "potential"), pp);
    return at_path(pp, [&] { return RheoExpr::leaf(std::move(p)); });
  }
  if (node != "parallel" && node != "serial")
    throw DocumentError(join(path, "node"), "expected \"leaf\", \"parallel\" or \"serial\"");
  reject_unknown(j, path, {"node", "children"});
  const json& cs = field(j, path, "children");
  const std::string cp = join(path, "children");
  if (!cs.is_array()) throw DocumentError(cp, "expected an array");
  std::vector<RheoExpr> children;
  children.reserve(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) children.push_back(parse_model(cs[i], index(cp, i)));
  return at_path(path, [&] {
    return node == "parallel" ? RheoExpr::parallel(std::move(children))
                              : RheoExpr::serial(std::move(children));
  });
}

json dump_model(const RheoExpr& e) {
  if (e.kind() == RheoExpr::Kind::Leaf)
    return json{{"node", "leaf"}, {"potential", dump_potential(e.potential())}};
  json children = json::array();
  for (const auto& c : e.children()) children.push_back(dump_model(c));
  return json{{"node", e.kind() == RheoExpr::Kind::Parallel ? "parallel" : "serial"},
              {"children", children}};
}

SimulationDocument parse_simulation(const json& j) {
  require_object(j, "");
  reject_unknown(j, "", {"E", "elements", "drive", "e_el0"});
  SimulationDocument doc;
  doc.model.E = positive(j, "", "E");

  const json& els = field(j, "", "elements");
  if (!els.is_array() || els.empty()) throw DocumentError("elements", "expected a nonempty array");
  for (std::size_t i = 0; i < els.size(); ++i)
    doc.model.elements.push_back(parse_potential(els[i], index("elements", i)));

  const json& drv = field(j, "", "drive");
  if (!drv.is_array()) throw DocumentError("drive", "expected an array");
  double prev = 0.0;
  for (std::size_t i = 0; i < drv.size(); ++i) {
    const std::string p = index("drive", i);
    require_object(drv[i], p);
    reject_unknown(drv[i], p, {"t_end", "eps"});
    const double t_end = number(field(drv[i], p, "t_end"), join(p, "t_end"), false);
    if (!(t_end > prev)) {
      std::ostringstream msg;
      msg << "must exceed " << prev << ", got " << t_end;
      throw DocumentError(join(p, "t_end"), msg.str());
    }
    const double eps = number(field(drv[i], p, "eps"), join(p, "eps"), false);
    doc.drive.segments.push_back({t_end, eps});
    prev = t_end;
  }
  if (const auto it = j.find("e_el0"); it != j.end()) doc.e_el0 = number(*it, "e_el0", false);
  return doc;
}

json dump_simulation(const SimulationDocument& doc) {
  json elements = json::array();
  for (const auto& p : doc.model.elements) elements.push_back(dump_potential(p));
  json drive = json::array();
  for (const auto& s : doc.drive.segments) drive.push_back({{"t_end", s.t_end}, {"eps", s.eps}});
  return json{{"E", doc.model.E}, {"elements", elements}, {"drive", drive}, {"e_el0", doc.e_el0}};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != columns_) throw InvalidInput("csv row width differs from header");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << '\n';
}

}  // namespace rheokit::io
