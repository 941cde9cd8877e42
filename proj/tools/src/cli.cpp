#include "singmod_cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "singmod/analytic.hpp"
#include "singmod/cmval.hpp"
#include "singmod/io.hpp"
#include "singmod/localsym.hpp"
#include "singmod/numtheory.hpp"
#include "singmod/qseries.hpp"

namespace singmod::cli {

namespace {

using nlohmann::json;

std::string default_cache_dir() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return (std::filesystem::path(xdg) / "singmod").string();
  if (const char* home = std::getenv("HOME"); home && *home)
    return (std::filesystem::path(home) / ".cache" / "singmod").string();
  return ".singmod-cache";
}

std::string render(const json& j, const std::string& format, const std::function<std::string(const json&)>& table) {
  return format == "table" ? table(j) : j.dump(2) + "\n";
}

std::string profile_table(const json& j) {
  std::ostringstream os;
  os << "D = " << j["D"] << ", rho = " << j["rho"] << ", N = " << j["N"] << " (" << j["backend"].get<std::string>() << ")\n";
  if (j["unit"].get<bool>()) {
    os << "unit\n";
    return os.str();
  }
  os << "p";
  for (const auto& l : j["labels"]) os << '\t' << l.get<std::string>();
  os << '\n';
  for (const auto& p : j["primes"]) {
    os << p["p"];
    for (const auto& e : p["by_class"]) os << '\t' << e["ord"].get<std::string>();
    os << '\n';
  }
  return os.str();
}

std::string generic_table(const json& j) {
  std::ostringstream os;
  for (const auto& [k, v] : j.items()) os << k << '\t' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  return os.str();
}

analytic::PrecisionContext context_for(const RunConfig& cfg) {
  auto ctx = analytic::PrecisionContext::from_bits(cfg.prec_bits.value_or(256));
  return cfg.trunc ? ctx.with_max_terms(*cfg.trunc) : ctx;
}

json complex_json(const analytic::BigComplex& v, int digits) {
  return {{"re", v.re().to_string(digits)}, {"im", v.im().to_string(digits)}, {"radius", v.rad().value().to_string(3)}};
}

json poly_json(const analytic::ClassPolynomial& cp) {
  json coeffs = json::array();
  for (const auto& c : cp.poly.coeffs) coeffs.push_back(c.get_str());
  json residuals = json::array();
  for (double r : cp.residuals) residuals.push_back(r);
  return {{"polynomial", cp.poly.to_string()},
          {"coefficients", coeffs},
          {"residuals", residuals},
          {"max_radius", cp.max_radius},
          {"bits", cp.bits},
          {"verified_bits", cp.verified_bits}};
}

json norm_json(const analytic::NormCheck& nc) {
  json primes = json::array();
  for (const auto& pa : nc.primes) {
    json entry{{"p", pa.p},
               {"algebraic", to_pq_string(pa.algebraic)},
               {"analytic", to_pq_string(pa.analytic)},
               {"agree", pa.agree}};
    if (pa.multiset_checked) {
      json a = json::array(), b = json::array();
      for (const auto& x : pa.profile_multiset) a.push_back(to_pq_string(x));
      for (const auto& x : pa.newton_multiset) b.push_back(to_pq_string(x));
      entry["profile_multiset"] = a;
      entry["newton_multiset"] = b;
      entry["multiset_agree"] = pa.multiset_agree;
    }
    primes.push_back(entry);
  }
  return {{"pass", nc.pass},
          {"algebraic", nc.algebraic.get_str()},
          {"analytic", nc.analytic.get_str()},
          {"index", nc.index},
          {"primes", primes}};
}

struct Common {
  std::int64_t N = 0;
  std::int64_t D = 0;
  std::int64_t rho = 0;
  std::string divisor_path;
};

json cmd_valuation(const Common& c) {
  const auto divisor = io::parse_divisor(io::read_file(c.divisor_path));
  const auto prof = cmval::valuations(c.N, c.D, c.rho, divisor);
  json j = json::parse(io::profile_to_json(prof));
  if (prof.is_zero()) j["message"] = "unit";
  return j;
}

json cmd_verify(const Common& c, const std::vector<std::string>& model, const RunConfig& cfg) {
  const auto divisor = io::parse_divisor(io::read_file(c.divisor_path));
  const auto prof = cmval::valuations(c.N, c.D, c.rho, divisor);
  const auto G = quad::ClassGroupCache::global().get(c.D);

  analytic::Evaluator fn;
  std::string model_name;
  if (divisor.empty()) {
    model_name = "constant";
    fn = [](const analytic::BigComplex&, const analytic::PrecisionContext& ctx) {
      return analytic::BigComplex(analytic::BigFloat(1L, ctx.bits()), analytic::BigFloat(ctx.bits()));
    };
  } else {
    if (model.empty()) throw std::invalid_argument("--model is required for a non-empty divisor");
    model_name = model.front();
    if (model_name == "hauptmodul47") {
      if (model.size() != 1) throw std::invalid_argument("--model hauptmodul47 takes no file");
      if (c.N != 47) throw std::invalid_argument("the hauptmodul47 model needs --N 47");
      fn = analytic::hauptmodul47;
    } else if (model_name == "borcherds-table") {
      if (model.size() != 2) throw std::invalid_argument("--model borcherds-table needs a table file");
      auto input = std::make_shared<analytic::BorcherdsInput>(io::parse_borcherds_table(io::read_file(model[1])));
      if (input->N != c.N) throw std::invalid_argument("Borcherds table level differs from --N");
      fn = [input](const analytic::BigComplex& z, const analytic::PrecisionContext& ctx) {
        return analytic::borcherds_eval(*input, z, ctx);
      };
    } else {
      throw std::invalid_argument("unknown model " + model_name + " (hauptmodul47 | borcherds-table <file>)");
    }
  }

  std::optional<analytic::PrecisionContext> ctx;
  if (cfg.prec_bits) ctx = context_for(cfg);
  auto cp = analytic::class_polynomial_verified(fn, c.D, c.N, c.rho, ctx);
  auto used = analytic::PrecisionContext::from_bits(cp.bits);
  if (cfg.trunc) used = used.with_max_terms(*cfg.trunc);
  const auto values = analytic::conjugate_values(fn, c.D, c.N, c.rho, used);
  const auto real = analytic::real_value_index(values);
  const std::optional<int> real_label = real ? std::optional<int>(values[*real].label) : std::nullopt;
  const auto nc = analytic::norm_crosscheck(prof, cp.poly, c.D);
  const auto cc = analytic::conjugation_fixed_check(prof, cp.poly, real_label);

  // The real conjugate sits at the class b with b^2 = [n]^{-1}.
  const int n_class = quad::level_ideal_class(*G, c.N, c.rho);
  const auto predicted = G->square_roots(G->inverse(n_class));

  const int digits = std::min(used.target_digits(), 40);
  json conj = json::array();
  for (const auto& v : values)
    conj.push_back({{"label", G->label(v.label)}, {"form", v.form.label()}, {"value", complex_json(v.value, digits)}});
  json predicted_labels = json::array();
  for (int b : predicted) predicted_labels.push_back(G->label(b));

  json checks = json::array();
  bool pass = true;
  auto check = [&](const std::string& name, bool ok, const std::string& note) {
    checks.push_back({{"name", name}, {"pass", ok}, {"note", note}});
    pass = pass && ok;
  };
  check("class_polynomial", cp.verified_bits > 0, "rounded at " + std::to_string(cp.bits) + " bits, confirmed at " +
                                                      std::to_string(cp.verified_bits));
  check("norm", nc.pass, nc.algebraic.get_str() + " vs " + nc.analytic.get_str());
  if (cc.applicable)
    check("conjugation_fixed_label", cc.pass, cc.note);
  else
    checks.push_back({{"name", "conjugation_fixed_label"}, {"pass", nullptr}, {"note", "skipped: " + cc.note}});
  if (model_name == "constant") {
    checks.push_back({{"name", "real_conjugate_label"}, {"pass", nullptr}, {"note", "skipped: constant function"}});
  } else {
    const bool real_ok = real_label && std::find(predicted.begin(), predicted.end(), *real_label) != predicted.end();
    check("real_conjugate_label", real_ok, real_label ? "real value at " + G->label(*real_label) : "no unique real value");
  }

  json report{{"model", model_name},
              {"profile", json::parse(io::profile_to_json(prof))},
              {"class_polynomial", poly_json(cp)},
              {"conjugates", conj},
              {"predicted_real_labels", predicted_labels},
              {"norm_check", norm_json(nc)},
              {"checks", checks},
              {"pass", pass}};
  if (real) report["real_conjugate"] = {{"label", G->label(*real_label)}, {"value", values[*real].value.re().to_string(digits)}};
  return report;
}

std::string verify_table(const json& j) {
  std::ostringstream os;
  os << "model\t" << j["model"].get<std::string>() << '\n';
  os << "polynomial\t" << j["class_polynomial"]["polynomial"].get<std::string>() << '\n';
  for (const auto& c : j["conjugates"])
    os << "conjugate " << c["label"].get<std::string>() << '\t' << c["value"]["re"].get<std::string>() << " + i "
       << c["value"]["im"].get<std::string>() << '\n';
  if (j.contains("real_conjugate"))
    os << "real\t" << j["real_conjugate"]["label"].get<std::string>() << '\t'
       << j["real_conjugate"]["value"].get<std::string>() << '\n';
  os << "norm\t" << j["norm_check"]["algebraic"].get<std::string>() << " = " << j["norm_check"]["analytic"].get<std::string>()
     << '\n';
  for (const auto& c : j["checks"])
    os << "check " << c["name"].get<std::string>() << '\t' << (c["pass"].is_null() ? "skip" : c["pass"].get<bool>() ? "pass" : "FAIL")
       << '\t' << c["note"].get<std::string>() << '\n';
  os << (j["pass"].get<bool>() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

json cmd_clgroup(std::int64_t D) {
  const auto G = quad::ClassGroupCache::global().get(D);
  json forms = json::array();
  for (int i = 0; i < G->h(); ++i) forms.push_back(G->label(i));
  return {{"D", D}, {"h", G->h()}, {"w", G->disc().unit_count()}, {"forms", forms}};
}

json cmd_rho(std::int64_t D, const std::string& n_text) {
  const Rational n = parse_rational(n_text);
  const auto G = quad::ClassGroupCache::global().get(D);
  const auto counts = quad::rho_all(*G, n);
  json by_class = json::array();
  std::int64_t total = 0;
  for (int i = 0; i < G->h(); ++i) {
    by_class.push_back({{"label", G->label(i)}, {"rho", counts[static_cast<std::size_t>(i)]}});
    total += counts[static_cast<std::size_t>(i)];
  }
  return {{"D", D}, {"n", to_pq_string(n)}, {"by_class", by_class}, {"total", total}};
}

json cmd_diff(const std::string& m_text, const std::string& scale_text, std::int64_t D) {
  const auto disc = quad::Discriminant::fundamental(D);
  const auto r = local::diff_set(parse_rational(m_text), parse_rational(scale_text), disc);
  json j{{"m", to_pq_string(r.m)}, {"scale", to_pq_string(r.scale)}, {"D", r.D}, {"primes", r.primes}};
  if (r.primes.size() == 1) {
    const std::int64_t p = r.primes.front();
    j["nu"] = to_pq_string(local::nu_p(r.m, p, disc));
    j["o"] = local::o_m(r.m, disc);
  }
  return j;
}

json cmd_hilbert(const std::string& a, const std::string& b, const std::string& place) {
  const Rational x = parse_rational(a), y = parse_rational(b);
  if (x == 0 || y == 0) throw std::invalid_argument("Hilbert symbol arguments must be nonzero");
  local::Place v = (place == "inf" || place == "0") ? local::Place::infinity() : local::Place::prime(std::stoll(place));
  return {{"a", to_pq_string(x)}, {"b", to_pq_string(y)}, {"place", v.str()}, {"symbol", local::hilbert_symbol(x, y, v)}};
}

json cmd_content(const std::string& name, std::int64_t p, std::int64_t terms) {
  if (terms < 1) throw std::invalid_argument("--terms must be positive");
  std::optional<series::ExactQSeries> f;
  if (name == "hauptmodul47")
    f = series::hauptmodul47_series(terms);
  else if (name == "j")
    f = series::j_series(terms);
  else if (name == "e4")
    f = series::e4_series(terms);
  else if (name == "eta-eta47")
    f = series::eta_eta47(terms);
  else
    throw std::invalid_argument("unknown series " + name + " (hauptmodul47 | j | e4 | eta-eta47)");
  if (!nt::is_prime(p)) throw std::invalid_argument("--p must be prime");
  return {{"series", name}, {"p", p}, {"terms", terms}, {"content", series::fourier_content(*f, p)}};
}

}  // namespace

RunConfig resolve_config(const ConfigSources& src) {
  RunConfig cfg;
  json file = json::object();
  if (src.config_path) {
    file = json::parse(io::read_file(*src.config_path), nullptr, false);
    if (file.is_discarded() || !file.is_object()) throw io::FormatError("config file " + *src.config_path + " is not a JSON object");
  }
  auto from_file = [&](const char* key) -> const json* { return file.contains(key) ? &file.at(key) : nullptr; };

  if (src.prec_bits)
    cfg.prec_bits = *src.prec_bits;
  else if (auto* v = from_file("prec_bits"); v && v->is_number_integer())
    cfg.prec_bits = v->get<long>();
  if (cfg.prec_bits && *cfg.prec_bits < 64) throw std::invalid_argument("precision must be at least 64 bits");

  if (src.trunc)
    cfg.trunc = *src.trunc;
  else if (auto* v = from_file("trunc"); v && v->is_number_integer())
    cfg.trunc = v->get<std::int64_t>();
  if (cfg.trunc && *cfg.trunc < 1) throw std::invalid_argument("--trunc must be positive");

  if (src.cache_dir)
    cfg.cache_dir = *src.cache_dir;
  else if (src.env_cache_dir && !src.env_cache_dir->empty())
    cfg.cache_dir = *src.env_cache_dir;
  else if (auto* v = from_file("cache_dir"); v && v->is_string())
    cfg.cache_dir = v->get<std::string>();
  else
    cfg.cache_dir = default_cache_dir();

  if (src.format)
    cfg.format = *src.format;
  else if (auto* v = from_file("format"); v && v->is_string())
    cfg.format = v->get<std::string>();
  if (cfg.format != "json" && cfg.format != "table") throw std::invalid_argument("--format must be json or table");
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Valuations of CM values of modular functions and their analytic verification", "singmod"};
  app.require_subcommand(1);

  ConfigSources src;
  auto add_common_flags = [&](CLI::App* sub) {
    sub->add_option("--prec-bits", src.prec_bits, "Working precision in bits (>= 64)");
    sub->add_option("--trunc", src.trunc, "Largest series truncation order");
    sub->add_option("--cache-dir", src.cache_dir, "Class group cache directory");
    sub->add_option("--format", src.format, "json or table");
    sub->add_option("--config", src.config_path, "JSON config file");
  };

  Common c;
  auto add_divisor_flags = [&](CLI::App* sub) {
    sub->add_option("--N", c.N, "Level")->required();
    sub->add_option("--D", c.D, "Fundamental discriminant")->required();
    sub->add_option("--rho", c.rho, "rho with rho^2 = D (mod 4N)")->required();
    sub->add_option("--divisor", c.divisor_path, "Divisor JSON file")->required();
  };

  auto* valuation = app.add_subcommand("valuation", "Valuation profile of f(z_{D,rho})");
  add_divisor_flags(valuation);
  add_common_flags(valuation);

  std::vector<std::string> model;
  auto* verify = app.add_subcommand("verify", "Exact profile, analytic conjugates, class polynomial and norm check");
  add_divisor_flags(verify);
  add_common_flags(verify);
  verify->add_option("--model", model, "hauptmodul47 | borcherds-table <file>")->expected(1, 2);

  std::int64_t D = 0;
  auto* clgroup = app.add_subcommand("clgroup", "Reduced forms of the class group");
  clgroup->add_option("--D", D)->required();
  add_common_flags(clgroup);

  std::string n_text = "1";
  auto* rho = app.add_subcommand("rho", "Ideal counts of norm n per class");
  rho->add_option("--D", D)->required();
  rho->add_option("--n", n_text)->required();
  add_common_flags(rho);

  std::string m_text, scale_text = "1";
  auto* diff = app.add_subcommand("diff", "Primes p with (-m scale, D)_p = -1");
  diff->add_option("--m", m_text)->required();
  diff->add_option("--scale", scale_text);
  diff->add_option("--D", D)->required();
  add_common_flags(diff);

  std::string a_text, b_text, place = "inf";
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert symbol (a, b)_v");
  hilbert->add_option("-a", a_text)->required();
  hilbert->add_option("-b", b_text)->required();
  hilbert->add_option("-p", place, "Prime, or inf");
  add_common_flags(hilbert);

  std::string series_name = "hauptmodul47";
  std::int64_t p = 2, terms = 50;
  auto* content = app.add_subcommand("content", "Minimal p-adic valuation of stored Fourier coefficients");
  content->add_option("--series", series_name, "hauptmodul47 | j | e4 | eta-eta47");
  content->add_option("--p", p)->required();
  content->add_option("--terms", terms);
  add_common_flags(content);

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (const char* env = std::getenv("SINGMOD_CACHE_DIR")) src.env_cache_dir = env;
    const RunConfig cfg = resolve_config(src);
    quad::ClassGroupCache::global().set_directory(std::filesystem::path(cfg.cache_dir));

    std::string text;
    if (*valuation) {
      text = render(cmd_valuation(c), cfg.format, profile_table);
    } else if (*verify) {
      const json report = cmd_verify(c, model, cfg);
      out << render(report, cfg.format, verify_table);
      return report["pass"].get<bool>() ? kOk : kValidation;
    } else if (*clgroup) {
      text = render(cmd_clgroup(D), cfg.format, generic_table);
    } else if (*rho) {
      text = render(cmd_rho(D, n_text), cfg.format, generic_table);
    } else if (*diff) {
      text = render(cmd_diff(m_text, scale_text, D), cfg.format, generic_table);
    } else if (*hilbert) {
      text = render(cmd_hilbert(a_text, b_text, place), cfg.format, generic_table);
    } else if (*content) {
      text = render(cmd_content(series_name, p, terms), cfg.format, generic_table);
    }
    out << text;
    return kOk;
  } catch (const cmval::ImproperIntersection& e) {
    err << "error: " << e.what() << '\n';
    return kImproperIntersection;
  } catch (const analytic::PrecisionError& e) {
    err << "precision insufficient: " << e.what() << " (retry with a larger --prec-bits or --trunc)\n";
    return kPrecision;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace singmod::cli
