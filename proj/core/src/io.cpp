#include "singmod/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace singmod::io {

namespace {

using nlohmann::json;

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string(what) + ": missing field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string(what) + ": field \"" + key + "\" has the wrong type");
  }
}

Rational rational_field(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw FormatError(std::string(what) + ": missing field \"" + key + "\"");
  const json& v = j.at(key);
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return make_rational(v.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
  throw FormatError(std::string(what) + ": field \"" + key + "\" must be a \"p/q\" string or an integer");
}

}  // namespace

cmval::HeegnerDivisor parse_divisor(const std::string& text) {
  const json j = parse(text, "divisor");
  cmval::HeegnerDivisor div(field<std::int64_t>(j, "N", "divisor"));
  const json coeffs = field<json>(j, "coeffs", "divisor");
  if (!coeffs.is_array()) throw FormatError("divisor: \"coeffs\" must be an array");
  for (const auto& e : coeffs)
    div.add(field<std::int64_t>(e, "d", "divisor entry"), field<std::int64_t>(e, "r", "divisor entry"),
            rational_field(e, "c", "divisor entry"));
  return div;
}

std::string divisor_to_json(const cmval::HeegnerDivisor& divisor) {
  json coeffs = json::array();
  for (const auto& [key, c] : divisor.coeffs()) coeffs.push_back({{"d", key.first}, {"r", key.second}, {"c", to_pq_string(c)}});
  return json{{"N", divisor.N()}, {"coeffs", coeffs}}.dump(2);
}

std::string profile_to_json(const cmval::ValuationProfile& profile) {
  json primes = json::array();
  for (const auto& [p, row] : profile.per_prime) {
    json by_class = json::array();
    for (std::size_t i = 0; i < row.size(); ++i) by_class.push_back({{"label", profile.labels[i]}, {"ord", to_pq_string(row[i])}});
    primes.push_back({{"p", p}, {"by_class", by_class}});
  }
  json j{{"D", profile.D},
         {"rho", profile.rho},
         {"N", profile.N},
         {"backend", profile.backend},
         {"normalization", profile.normalization},
         {"labels", profile.labels},
         {"unit", profile.is_zero()},
         {"primes", primes}};
  return j.dump(2);
}

cmval::ValuationProfile parse_profile(const std::string& text) {
  const json j = parse(text, "profile");
  cmval::ValuationProfile prof;
  prof.D = field<std::int64_t>(j, "D", "profile");
  prof.rho = field<std::int64_t>(j, "rho", "profile");
  prof.N = j.contains("N") ? field<std::int64_t>(j, "N", "profile") : 1;
  prof.backend = j.contains("backend") ? field<std::string>(j, "backend", "profile") : "";
  prof.normalization = j.contains("normalization") ? field<std::string>(j, "normalization", "profile") : "";
  prof.labels = field<std::vector<std::string>>(j, "labels", "profile");
  for (const auto& e : field<json>(j, "primes", "profile")) {
    std::vector<Rational> row(prof.labels.size());
    for (const auto& c : field<json>(e, "by_class", "profile prime")) {
      const auto label = field<std::string>(c, "label", "profile entry");
      auto it = std::find(prof.labels.begin(), prof.labels.end(), label);
      if (it == prof.labels.end()) throw FormatError("profile: unknown label " + label);
      row[static_cast<std::size_t>(it - prof.labels.begin())] = rational_field(c, "ord", "profile entry");
    }
    prof.per_prime[field<std::int64_t>(e, "p", "profile prime")] = row;
  }
  return prof;
}

analytic::BorcherdsInput parse_borcherds_table(const std::string& text) {
  const json j = parse(text, "borcherds table");
  const json growth = field<json>(j, "growth", "borcherds table");
  std::vector<Integer> table;
  for (const auto& e : field<json>(j, "exponents", "borcherds table")) {
    Rational c = e.is_string() ? parse_rational(e.get<std::string>())
                               : (e.is_number_integer() ? make_rational(e.get<std::int64_t>()) : Rational(0));
    if (!e.is_string() && !e.is_number_integer()) throw FormatError("borcherds table: exponents must be integers");
    if (!is_integral(c)) throw FormatError("borcherds table: exponent " + to_pq_string(c) + " is not integral");
    table.push_back(c.get_num());
  }
  try {
    return analytic::BorcherdsInput::from_table(field<std::int64_t>(j, "N", "borcherds table"),
                                                rational_field(j, "weyl", "borcherds table"), std::move(table),
                                                field<double>(growth, "A", "borcherds growth"),
                                                field<double>(growth, "B", "borcherds growth"));
  } catch (const FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string genus_report_to_json(const cycles::GenusReport& r, const quad::ClassGroup& G) {
  json per_class = json::array();
  for (const auto& e : r.per_class)
    per_class.push_back({{"label", G.label(e.label)},
                         {"rho_class", G.label(e.rho_class)},
                         {"rho", e.rho},
                         {"value", to_pq_string(e.value)}});
  json j{{"m", to_pq_string(r.m)},
         {"ideal_norm", to_pq_string(r.ideal_norm)},
         {"ideal_class", G.label(r.ideal_class)},
         {"mu_norm", to_pq_string(r.mu_norm)},
         {"diff", r.diff},
         {"p", r.p},
         {"nu", to_pq_string(r.nu)},
         {"o", r.o},
         {"ramification", r.ramification},
         {"p0", r.aux.p0},
         {"kappa", r.aux.kappa},
         {"c0_class", G.label(r.c0_class)},
         {"rho_argument", to_pq_string(r.rho_argument)},
         {"per_class", per_class}};
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace singmod::io
