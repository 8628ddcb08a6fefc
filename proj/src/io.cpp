#include "stopping/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

#include "json.hpp"
#include "stopping/error.hpp"

namespace stopping {

namespace {

using nlohmann::json;

std::string load_spec_text(const std::string& spec) {
  std::size_t first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos &&
      (spec[first] == '{' || spec[first] == '['))
    return spec;
  std::ifstream in(spec, std::ios::binary);
  if (!in)
    fail(errc::parse_error, "cannot read spec file '" + spec + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse_error, e.what());  // includes byte position
  }
}

double num_field(const json& j, const char* key) {
  if (!j.contains(key))
    fail(errc::parse_error, std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number())
    fail(errc::parse_error, std::string("field \"") + key +
                                "\" must be a number");
  return v.get<double>();
}

DistPtr distribution_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family") ||
      !j.at("family").is_string())
    fail(errc::parse_error,
         "distribution spec must be an object with a \"family\" string");
  const std::string family = j.at("family").get<std::string>();
  if (family == "exponential") return make_exponential(num_field(j, "rate"));
  if (family == "frechet")
    return make_frechet(num_field(j, "shape"), num_field(j, "scale"));
  if (family == "pointmasses") {
    if (!j.contains("atoms") || !j.at("atoms").is_array())
      fail(errc::parse_error, "pointmasses needs an \"atoms\" array");
    std::vector<std::pair<double, double>> atoms;
    for (const auto& a : j.at("atoms")) {
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() ||
          !a[1].is_number())
        fail(errc::parse_error, "each atom must be a [value, mass] pair");
      atoms.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
    return make_point_masses(std::move(atoms));
  }
  if (family == "truncated_pareto")
    return make_truncated_pareto(num_field(j, "lo"), num_field(j, "top"));
  if (family == "scaled") {
    if (!j.contains("base"))
      fail(errc::parse_error, "scaled needs a \"base\" distribution");
    return make_scaled(distribution_from_json(j.at("base")),
                       num_field(j, "factor"));
  }
  fail(errc::parse_error, "unknown distribution family \"" + family + "\"");
}

ThresholdPolicy policy_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    fail(errc::parse_error,
         "policy spec must be an object with a \"kind\" string");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "deterministic") return Deterministic{num_field(j, "t")};
  if (kind == "finite") {
    FiniteRandom p;
    for (const char* key : {"thresholds", "probs"}) {
      if (!j.contains(key) || !j.at(key).is_array())
        fail(errc::parse_error,
             std::string("finite policy needs a \"") + key + "\" array");
      auto& dst = std::string(key) == "thresholds" ? p.thresholds : p.probs;
      for (const auto& v : j.at(key)) {
        if (!v.is_number())
          fail(errc::parse_error,
               std::string("\"") + key + "\" entries must be numbers");
        dst.push_back(v.get<double>());
      }
    }
    validate_policy(ThresholdPolicy(p));
    return p;
  }
  if (kind == "uniform") {
    UniformRandom p{num_field(j, "lo"), num_field(j, "hi")};
    validate_policy(ThresholdPolicy(p));
    return p;
  }
  fail(errc::parse_error, "unknown policy kind \"" + kind + "\"");
}

std::string csv_cell(const std::optional<double>& v) {
  return v ? format_g9(*v) : "nan";
}

std::string status_cell(const BoundsRow& row) {
  if (row.issues.empty()) return "ok";
  std::string s;
  for (std::size_t i = 0; i < row.issues.size(); ++i) {
    if (i) s += ';';
    s += row.issues[i];
  }
  return s;
}

BoundsRow one_bounds_row(const DistPtr& d, int n, Scaling scaling) {
  BoundsRow row;
  row.n = n;
  BoundReport report;
  try {
    report = bound_report(*d, n);
  } catch (const Error& e) {
    row.issues.push_back(std::string("report:") + errc_name(e.code()));
    return row;
  }
  const double factor = scaling == Scaling::sqrt_n
                            ? std::sqrt(static_cast<double>(n))
                            : 1.0;
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  row.lower_det = report.lower_det * factor;
  row.upper_universal = report.upper_universal * factor;
  if (report.lower_uniform) {
    row.lower_uniform = *report.lower_uniform * factor;
    row.const_lower_uniform = n2 * (*report.lower_uniform - report.lower_det);
  }
  if (report.upper_partition) {
    row.upper_partition = *report.upper_partition * factor;
    row.const_upper_partition =
        n2 * (*report.upper_partition - report.lower_det);
  }
  row.issues = report.meta.notes;
  row.complete = report.lower_uniform.has_value() &&
                 report.upper_partition.has_value();
  return row;
}

}  // namespace

DistPtr parse_distribution(const std::string& spec) {
  return distribution_from_json(parse_json_text(load_spec_text(spec)));
}

ThresholdPolicy parse_policy(const std::string& spec) {
  return policy_from_json(parse_json_text(load_spec_text(spec)));
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(token, &pos);
    } catch (const std::exception&) {
      fail(errc::parse_error, "cannot parse n entry '" + token + "'");
    }
    while (pos < token.size() && std::isspace(
               static_cast<unsigned char>(token[pos])))
      ++pos;
    if (pos != token.size())
      fail(errc::parse_error, "cannot parse n entry '" + token + "'");
    if (value < 1)
      fail(errc::invalid_argument, "n entries must be positive");
    out.push_back(value);
  }
  if (out.empty())
    fail(errc::invalid_argument, "the n list is empty");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1])
      fail(errc::invalid_argument, "the n list must be strictly increasing");
  return out;
}

std::string format_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<BoundsRow> compute_bounds_rows(const DistPtr& d,
                                           const std::vector<int>& n_list,
                                           Scaling scaling) {
  std::vector<std::future<BoundsRow>> futures;
  futures.reserve(n_list.size());
  for (int n : n_list)
    futures.push_back(std::async(std::launch::async, [d, n, scaling] {
      return one_bounds_row(d, n, scaling);
    }));
  std::vector<BoundsRow> rows;
  rows.reserve(n_list.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;  // future order == n_list order: already sorted by n
}

std::string bounds_csv(const std::vector<BoundsRow>& rows) {
  std::string out =
      "n,lower_det,lower_uniform,upper_universal,upper_partition,"
      "const_lower_uniform,const_upper_partition,status\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    out += csv_cell(row.lower_det);
    out += ',';
    out += csv_cell(row.lower_uniform);
    out += ',';
    out += csv_cell(row.upper_universal);
    out += ',';
    out += csv_cell(row.upper_partition);
    out += ',';
    out += csv_cell(row.const_lower_uniform);
    out += ',';
    out += csv_cell(row.const_upper_partition);
    out += ',';
    out += status_cell(row);
    out += '\n';
  }
  return out;
}

std::string bounds_json(const std::vector<BoundsRow>& rows) {
  // Built by hand so numeric formatting matches the CSV (9 significant
  // digits, bit-stable).
  auto cell = [](const std::optional<double>& v) {
    return v ? format_g9(*v) : std::string("null");
  };
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    out += "  {\"n\":" + std::to_string(row.n);
    out += ",\"lower_det\":" + cell(row.lower_det);
    out += ",\"lower_uniform\":" + cell(row.lower_uniform);
    out += ",\"upper_universal\":" + cell(row.upper_universal);
    out += ",\"upper_partition\":" + cell(row.upper_partition);
    out += ",\"const_lower_uniform\":" + cell(row.const_lower_uniform);
    out += ",\"const_upper_partition\":" + cell(row.const_upper_partition);
    out += ",\"status\":\"" + status_cell(row) + "\"}";
    if (i + 1 < rows.size()) out += ',';
    out += '\n';
  }
  out += "]\n";
  return out;
}

}  // namespace stopping
