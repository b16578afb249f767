#include "polyproj/instance.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "polyproj/error.hpp"

namespace polyproj {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, "instance: " + what);
}

double real_field(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where + " must be finite");
  return v;
}

Vector vector_field(const json& j, int dim, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array");
  if (static_cast<int>(j.size()) != dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "instance: " + where + " has length " +
                    std::to_string(j.size()) + ", expected " +
                    std::to_string(dim));
  }
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = real_field(j[static_cast<std::size_t>(i)], where);
  }
  return v;
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    bad("\"dim\" must be an integer");
  }
  Instance inst;
  inst.dim = doc["dim"].get<int>();
  if (inst.dim < 1) bad("\"dim\" must be positive");

  if (!doc.contains("sets") || !doc["sets"].is_array()) {
    bad("\"sets\" must be an array");
  }
  for (std::size_t i = 0; i < doc["sets"].size(); ++i) {
    const json& s = doc["sets"][i];
    const std::string where = "sets[" + std::to_string(i) + "]";
    if (!s.is_object() || !s.contains("kind") || !s["kind"].is_string() ||
        !s.contains("u") || !s.contains("eta")) {
      bad(where + " needs \"kind\", \"u\" and \"eta\"");
    }
    const std::string kind = s["kind"].get<std::string>();
    Vector u = vector_field(s["u"], inst.dim, where + ".u");
    const double eta = real_field(s["eta"], where + ".eta");
    if (kind == "hyperplane") {
      inst.sets.emplace_back(Hyperplane{std::move(u), eta});
    } else if (kind == "halfspace") {
      inst.sets.emplace_back(Halfspace{std::move(u), eta});
    } else {
      bad(where + ".kind must be \"hyperplane\" or \"halfspace\"");
    }
  }

  if (doc.contains("points")) {
    if (!doc["points"].is_array()) bad("\"points\" must be an array");
    for (std::size_t i = 0; i < doc["points"].size(); ++i) {
      inst.points.push_back(vector_field(doc["points"][i], inst.dim,
                                         "points[" + std::to_string(i) + "]"));
    }
  }
  return inst;
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_vector(std::ostream& os, const Vector& v) {
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << format_real(v[i]);
  }
  os << ']';
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  std::ostringstream os;
  os << "{\n  \"dim\": " << inst.dim << ",\n  \"sets\": [";
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    os << (i ? ",\n" : "\n") << "    {\"kind\": \""
       << to_string(kind_of(inst.sets[i])) << "\", \"u\": ";
    write_vector(os, normal_of(inst.sets[i]));
    os << ", \"eta\": " << format_real(offset_of(inst.sets[i])) << '}';
  }
  os << (inst.sets.empty() ? "" : "\n  ") << "],\n  \"points\": [";
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    os << (i ? ",\n    " : "\n    ");
    write_vector(os, inst.points[i]);
  }
  os << (inst.points.empty() ? "" : "\n  ") << "]\n}\n";
  return os.str();
}

}  // namespace polyproj
