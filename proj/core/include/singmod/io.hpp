#pragma once

#include <string>

#include "singmod/analytic.hpp"
#include "singmod/cmval.hpp"
#include "singmod/speccycles.hpp"

// JSON schemas. Objects are written with sorted keys and rationals as "p/q" strings.
//   divisor:  {"N": 47, "coeffs": [{"d": -11, "r": 41, "c": "1/2"}, ...]}
//   profile:  {"D", "rho", "N", "backend", "normalization", "labels", "unit",
//              "primes": [{"p": 2, "by_class": [{"label": "[1,1,27]", "ord": "0/1"}, ...]}]}
//   borcherds table: {"N", "weyl": "p/q", "growth": {"A", "B"}, "exponents": ["c(1)", "c(2)", ...]}
namespace singmod::io {

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

cmval::HeegnerDivisor parse_divisor(const std::string& text);
std::string divisor_to_json(const cmval::HeegnerDivisor& divisor);

std::string profile_to_json(const cmval::ValuationProfile& profile);
cmval::ValuationProfile parse_profile(const std::string& text);

analytic::BorcherdsInput parse_borcherds_table(const std::string& text);

std::string genus_report_to_json(const cycles::GenusReport& report, const quad::ClassGroup& G);

/// Reads a whole file; throws FormatError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace singmod::io
