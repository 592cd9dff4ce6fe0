#include "gff/report.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace gff {
namespace {

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

StatReport statistical(const ReportHeader& h, std::string test, std::string target, double estimate, double stderr,
                       double reference, double threshold, std::string note) {
  StatReport r;
  r.suite = h.suite;
  r.anchor = h.anchor;
  r.seed = h.seed;
  r.truncation = h.truncation;
  r.replicas = h.replicas;
  r.test = std::move(test);
  r.target = std::move(target);
  r.kind = StatReport::Kind::Statistical;
  r.estimate = estimate;
  r.stderr = stderr;
  r.reference = reference;
  r.threshold = threshold;
  const double diff = estimate - reference;
  if (stderr > 0.0)
    r.z = diff / stderr;
  else
    r.z = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
  r.pass = std::isfinite(r.z) && std::abs(r.z) <= threshold;
  r.note = std::move(note);
  return r;
}

StatReport deterministic(const ReportHeader& h, std::string test, std::string target, double estimate,
                         double reference, double residual, double tolerance, std::string note) {
  StatReport r;
  r.suite = h.suite;
  r.anchor = h.anchor;
  r.seed = h.seed;
  r.truncation = h.truncation;
  r.replicas = h.replicas;
  r.test = std::move(test);
  r.target = std::move(target);
  r.kind = StatReport::Kind::Deterministic;
  r.estimate = estimate;
  r.reference = reference;
  r.residual = residual;
  r.tolerance = tolerance;
  r.threshold = 0.0;
  r.pass = std::isfinite(residual) && residual <= tolerance;
  r.note = std::move(note);
  return r;
}

const char* kind_name(StatReport::Kind kind) {
  return kind == StatReport::Kind::Statistical ? "statistical" : "deterministic";
}

nlohmann::ordered_json to_json(const StatReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["test"] = r.test;
  j["anchor"] = r.anchor;
  j["target"] = r.target;
  j["kind"] = kind_name(r.kind);
  j["estimate"] = number(r.estimate);
  j["stderr"] = number(r.stderr);
  j["reference"] = number(r.reference);
  j["z"] = number(r.z);
  j["threshold"] = number(r.threshold);
  j["residual"] = r.residual ? number(*r.residual) : nlohmann::ordered_json(nullptr);
  j["tolerance"] = number(r.tolerance);
  j["verdict"] = r.pass ? "pass" : "fail";
  j["seed"] = r.seed;
  j["truncation"] = r.truncation;
  j["replicas"] = r.replicas;
  j["note"] = r.note;
  return j;
}

std::string render_json(const nlohmann::ordered_json& config, const std::string& config_hash,
                        const std::vector<StatReport>& reports) {
  nlohmann::ordered_json doc;
  doc["config"] = config;
  doc["config_hash"] = config_hash;
  std::size_t failed = 0;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    rows.push_back(to_json(r));
    if (!r.pass) ++failed;
  }
  doc["summary"] = {{"tests", reports.size()}, {"failed", failed}};
  doc["reports"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void write_csv(std::ostream& os, const std::string& provenance, const std::vector<StatReport>& reports) {
  os << "# " << provenance << '\n';
  os << "suite,test,anchor,target,kind,estimate,stderr,reference,z,threshold,residual,tolerance,verdict,seed,"
        "truncation,replicas,note\n";
  for (const auto& r : reports) {
    os << csv_field(r.suite) << ',' << csv_field(r.test) << ',' << csv_field(r.anchor) << ','
       << csv_field(r.target) << ',' << kind_name(r.kind) << ',' << fmt(r.estimate) << ',' << fmt(r.stderr) << ','
       << fmt(r.reference) << ',' << fmt(r.z) << ',' << fmt(r.threshold) << ','
       << (r.residual ? fmt(*r.residual) : std::string()) << ',' << fmt(r.tolerance) << ','
       << (r.pass ? "pass" : "fail") << ',' << r.seed << ',' << csv_field(r.truncation) << ',' << r.replicas << ','
       << csv_field(r.note) << '\n';
  }
}

}  // namespace gff
