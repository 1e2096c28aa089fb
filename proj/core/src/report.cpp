#include "funcmodel/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "funcmodel/problem.hpp"

namespace funcmodel {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void Report::add(std::string name, const std::string& inputs, double residual,
                 double tolerance, std::string note, bool at_least) {
  CheckRecord r;
  r.name = std::move(name);
  r.inputs_digest = fnv_digest(inputs);
  r.tolerance = tolerance * (at_least ? 1.0 : tol_scale);
  r.comparison = at_least ? "ge" : "le";
  if (std::isfinite(residual)) {
    r.residual = residual;
    r.pass = at_least ? residual >= r.tolerance : residual <= r.tolerance;
  } else {
    r.pass = false;
    if (note.empty()) note = "non-finite residual";
  }
  r.note = std::move(note);
  records.push_back(std::move(r));
}

void Report::add_error(std::string name, const std::string& inputs, double tolerance,
                       const std::string& what) {
  CheckRecord r;
  r.name = std::move(name);
  r.inputs_digest = fnv_digest(inputs);
  r.tolerance = tolerance * tol_scale;
  r.pass = false;
  r.note = what;
  records.push_back(std::move(r));
}

std::size_t Report::passed() const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.pass ? 1 : 0;
  return n;
}

std::string Report::to_json() const {
  nlohmann::ordered_json doc;
  doc["problem"] = problem;
  doc["command"] = command;
  doc["seed"] = seed;
  doc["tol_scale"] = tol_scale;
  auto& recs = doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["inputs_digest"] = r.inputs_digest;
    j["residual"] = r.residual ? nlohmann::ordered_json(*r.residual) : nlohmann::ordered_json();
    j["tolerance"] = r.tolerance;
    j["comparison"] = r.comparison;
    j["pass"] = r.pass;
    if (!r.note.empty()) j["note"] = r.note;
    recs.push_back(std::move(j));
  }
  doc["summary"] = {{"total", records.size()}, {"passed", passed()}, {"failed", failed()}};
  doc["status"] = exit_status();
  return doc.dump(2) + "\n";
}

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "name,inputs_digest,residual,tolerance,comparison,pass,note\n";
  for (const auto& r : records) {
    out << csv_field(r.name) << ',' << r.inputs_digest << ','
        << (r.residual ? format_double(*r.residual) : std::string()) << ','
        << format_double(r.tolerance) << ',' << r.comparison << ','
        << (r.pass ? "true" : "false") << ',' << csv_field(r.note) << '\n';
  }
  return out.str();
}

}  // namespace funcmodel
