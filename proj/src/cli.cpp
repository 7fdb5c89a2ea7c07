#include "eisdens/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "eisdens/errors.hpp"
#include "eisdens/parallel.hpp"
#include "eisdens/poly.hpp"

namespace eisdens::cli {

using io::Json;

namespace {

template <class T>
Json opt_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
void read_opt(const Json& j, const char* key, std::optional<T>& dst) {
  if (!j.contains(key) || j.at(key).is_null()) {
    dst.reset();
    return;
  }
  dst = j.at(key).get<T>();
}

template <class T>
void read(const Json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace

Json config_to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["subcommand"] = c.subcommand;
  j["q"] = c.q;
  j["modulus"] = opt_json(c.modulus);
  j["d"] = c.d;
  j["kind"] = c.kind;
  j["exclude"] = c.exclude;
  j["width"] = c.width;
  j["N"] = opt_json(c.N);
  j["places"] = opt_json(c.places);
  j["spectrum"] = opt_json(c.spectrum);
  j["truncated_only"] = c.truncated_only;
  j["divisor"] = opt_json(c.divisor);
  j["degree"] = opt_json(c.degree);
  j["degrees"] = opt_json(c.degrees);
  j["max_degree"] = opt_json(c.max_degree);
  j["T"] = c.T;
  j["mode"] = opt_json(c.mode);
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["budget"] = c.budget;
  j["fallback_mc"] = c.fallback_mc;
  j["z_limit"] = c.z_limit;
  j["cap"] = c.cap;
  j["format"] = c.format;
  j["output"] = opt_json(c.output);
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    const Json defaults = config_to_json(RunConfig{});
    for (auto it = defaults.begin(); it != defaults.end(); ++it) k.push_back(it.key());
    return k;
  }();
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      throw std::invalid_argument("unknown config key '" + it.key() + "'");
  RunConfig c;
  try {
    read(j, "command", c.command);
    read(j, "subcommand", c.subcommand);
    read(j, "q", c.q);
    read_opt(j, "modulus", c.modulus);
    read(j, "d", c.d);
    read(j, "kind", c.kind);
    read(j, "exclude", c.exclude);
    read(j, "width", c.width);
    read_opt(j, "N", c.N);
    read_opt(j, "places", c.places);
    read_opt(j, "spectrum", c.spectrum);
    read(j, "truncated_only", c.truncated_only);
    read_opt(j, "divisor", c.divisor);
    read_opt(j, "degree", c.degree);
    read_opt(j, "degrees", c.degrees);
    read_opt(j, "max_degree", c.max_degree);
    read(j, "T", c.T);
    read_opt(j, "mode", c.mode);
    read(j, "samples", c.samples);
    read(j, "seed", c.seed);
    read(j, "budget", c.budget);
    read(j, "fallback_mc", c.fallback_mc);
    read(j, "z_limit", c.z_limit);
    read(j, "cap", c.cap);
    read(j, "format", c.format);
    read_opt(j, "output", c.output);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  return c;
}

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

gf::FieldPtr make_field(const RunConfig& c) {
  if (c.q > gf::kMaxOrder) throw std::domain_error("q = " + std::to_string(c.q) + " exceeds the maximum order 2^16");
  const auto [p, m] = gf::prime_power(c.q);
  if (!c.modulus) return std::make_shared<const gf::Field>(gf::Field::of_order(static_cast<std::uint32_t>(c.q)));
  std::vector<std::uint32_t> digits;
  std::stringstream ss(*c.modulus);
  std::string tok;
  while (std::getline(ss, tok, ',')) digits.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
  return std::make_shared<const gf::Field>(gf::Field::make(p, m, digits));
}

rff::HolomorphySet make_ring(const gf::FieldPtr& F, const RunConfig& c) {
  std::vector<rff::Place> ex = rff::parse_place_list(*F, c.exclude);
  if (std::find(ex.begin(), ex.end(), rff::Place::infinite()) == ex.end()) ex.push_back(rff::Place::infinite());
  return rff::HolomorphySet(F, ex);
}

std::pair<unsigned, unsigned> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("degree range must look like a:b, got '" + s + "'");
  try {
    const unsigned long a = std::stoul(s.substr(0, colon));
    const unsigned long b = std::stoul(s.substr(colon + 1));
    if (a > b) throw UsageError("empty degree range '" + s + "'");
    return {static_cast<unsigned>(a), static_cast<unsigned>(b)};
  } catch (const std::logic_error&) {
    throw UsageError("malformed degree range '" + s + "'");
  }
}

std::string decimal(const Rational& r) { return to_decimal(r, 15); }

std::string cmd_density(const RunConfig& c, unsigned workers) {
  (void)workers;
  const auto F = make_field(c);
  const auto kind = density::parse_kind(c.kind);
  density::PlaceSpectrum spec;
  if (c.places && c.spectrum) throw UsageError("--places and --spectrum are mutually exclusive");
  if (c.places) {
    std::vector<unsigned> degs;
    for (const auto& P : rff::parse_place_list(*F, *c.places)) {
      if (P.is_infinite()) throw std::domain_error("the infinite place is never in S");
      degs.push_back(P.degree());
    }
    spec = density::finite_spectrum(c.q, degs);
  } else if (c.spectrum) {
    std::ifstream in(*c.spectrum);
    if (!in) throw UsageError("cannot open spectrum file '" + *c.spectrum + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("malformed spectrum JSON: ") + e.what());
    }
    spec = io::spectrum_from_json(j);
  } else {
    spec = density::rational_field_spectrum(make_ring(F, c));
  }

  density::DensityInterval iv;
  const bool unverified = spec.provenance != density::Provenance::rational_field &&
                          spec.beyond == density::Beyond::unverified;
  if (c.N) {
    iv = density::eisenstein_density_at(spec, c.d, kind, *c.N);
  } else if (c.truncated_only || unverified) {
    if (!c.truncated_only)
      throw UnachievableWidth("place counts beyond degree " + std::to_string(spec.cutoff) +
                                  " are unverified; rerun with --truncated-only or --N",
                              std::nullopt);
    if (spec.provenance == density::Provenance::rational_field)
      throw UsageError("--truncated-only needs --N for the rational function field");
    iv = density::eisenstein_density_at(spec, c.d, kind, spec.cutoff);
  } else {
    iv = density::eisenstein_density(spec, c.d, kind, parse_rational(c.width));
  }

  if (c.format == "csv") {
    std::ostringstream os;
    os << "q,d,kind,N,exact,certified,truncated_lo,truncated_hi,tail,lo,hi,lo_decimal,hi_decimal\n";
    os << c.q << ',' << c.d << ',' << c.kind << ',' << iv.N << ',' << (iv.exact ? "true" : "false") << ','
       << (iv.certified ? "true" : "false") << ',' << to_string(iv.truncated_lo) << ',' << to_string(iv.truncated_hi)
       << ',' << to_string(iv.tail) << ',' << to_string(iv.lo) << ',' << to_string(iv.hi) << ',' << decimal(iv.lo)
       << ',' << decimal(iv.hi) << '\n';
    return os.str();
  }
  Json j;
  j["q"] = c.q;
  j["d"] = c.d;
  j["kind"] = density::to_string(kind);
  j["spectrum"] = density::to_string(spec.provenance);
  if (!c.N && !c.truncated_only) j["target_width"] = c.width;
  const Json body = io::interval_json(iv);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j.dump(2) + "\n";
}

std::string render_reports(const RunConfig& c, const std::vector<verify::ExperimentReport>& rs, bool array) {
  if (c.format == "csv") {
    std::string s = io::report_csv_header() + "\n";
    for (const auto& r : rs) s += io::report_csv_row(r) + "\n";
    return s;
  }
  if (array) return io::reports_json(rs).dump(2) + "\n";
  return io::report_json(rs.front()).dump(2) + "\n";
}

std::string cmd_verify(const RunConfig& c, unsigned workers, bool& all_passed) {
  const auto F = make_field(c);
  const auto H = make_ring(F, c);
  const auto kind = density::parse_kind(c.kind);
  const auto T = rff::parse_place_list(*F, c.T);
  const verify::Mode mode = c.mode ? verify::parse_mode(*c.mode)
                                   : (T.empty() ? verify::Mode::eisenstein_anywhere : verify::Mode::not_eisenstein_at_T);
  if (c.budget < 1) throw UsageError("--budget must be >= 1");
  verify::ExperimentOptions opts;
  opts.enumeration.budget = c.budget;
  opts.enumeration.workers = workers;
  opts.samples = c.samples;
  opts.seed = c.seed;
  opts.width = parse_rational(c.width);
  opts.fallback_to_monte_carlo = c.fallback_mc;
  opts.z_limit = c.z_limit;

  auto divisor = [&]() {
    if (c.divisor && c.degree) throw UsageError("--divisor and --degree are mutually exclusive");
    if (c.divisor) return rff::parse_divisor(H, *c.divisor);
    if (c.degree) return rff::multiple_of_infinity(H, *c.degree);
    throw UsageError("verify " + c.subcommand + " needs --divisor or --degree");
  };

  std::vector<verify::ExperimentReport> reports;
  bool array = false;
  if (c.subcommand == "exact") {
    reports.push_back(verify::run_exhaustive(H, divisor(), c.d, kind, mode, T, opts));
  } else if (c.subcommand == "mc") {
    reports.push_back(verify::run_monte_carlo(H, divisor(), c.d, kind, mode, T, opts));
  } else if (c.subcommand == "sweep") {
    if (!c.degrees) throw UsageError("verify sweep needs --degrees a:b");
    const auto [a, b] = parse_range(*c.degrees);
    rff::Divisor base = c.divisor ? rff::parse_divisor(H, *c.divisor) : rff::multiple_of_infinity(H, 0);
    reports = verify::convergence_sweep(H, c.d, kind, mode, T, a, b, base, opts);
    array = true;
  } else {
    throw UsageError("unknown verify subcommand '" + c.subcommand + "'");
  }
  all_passed = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
  return render_reports(c, reports, array);
}

std::string cmd_places(const RunConfig& c, unsigned workers) {
  const auto F = make_field(c);
  const auto H = make_ring(F, c);
  std::vector<std::string> excluded;
  for (const auto& P : H.excluded()) excluded.push_back(rff::to_string(*F, P));
  if (c.subcommand == "count") {
    const unsigned top = c.max_degree ? *c.max_degree : (c.degree ? *c.degree : 0);
    if (top == 0) throw UsageError("places count needs --max-degree");
    const unsigned first = c.max_degree ? 1 : top;
    const auto spec = density::rational_field_spectrum(H);
    if (c.format == "csv") {
      std::string s = "degree,count\n";
      for (unsigned n = first; n <= top; ++n) s += std::to_string(n) + "," + spec.count(n).get_str() + "\n";
      return s;
    }
    Json rows = Json::array();
    for (unsigned n = first; n <= top; ++n) rows.push_back(Json{{"degree", n}, {"count", spec.count(n).get_str()}});
    return Json{{"q", c.q}, {"exclude", excluded}, {"counts", rows}}.dump(2) + "\n";
  }
  if (c.subcommand == "list") {
    if (!c.degree) throw UsageError("places list needs --degree");
    const unsigned n = *c.degree;
    if (n == 0) throw std::domain_error("place degree must be >= 1");
    const BigInt total = poly::count_irreducibles(c.q, n);
    if (total > BigInt(static_cast<unsigned long>(c.cap)))
      throw std::domain_error("pi_q(n) = (1/n) sum_{k|n} mu(n/k) q^k = " + total.get_str() +
                              " places exceed the listing cap " + std::to_string(c.cap));
    const auto places = H.places_of_degree(n, workers);
    if (c.format == "csv") {
      std::string s = "degree,index,place\n";
      for (const auto& P : places)
        s += std::to_string(n) + "," + std::to_string(poly::monic_index(*F, P.poly())) + "," +
             io::csv_field(poly::to_string(*F, P.poly())) + "\n";
      return s;
    }
    Json rows = Json::array();
    for (const auto& P : places) rows.push_back(poly::to_string(*F, P.poly()));
    return Json{{"q", c.q}, {"degree", n}, {"exclude", excluded}, {"places", rows}}.dump(2) + "\n";
  }
  throw UsageError("unknown places subcommand '" + c.subcommand + "'");
}

Json error_json(const std::string& type, const std::string& message, int code) {
  return Json{{"error", type}, {"message", message}, {"exit_code", code}};
}

void write_output(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (!c.output) {
    out << text;
    return;
  }
  std::filesystem::path path(*c.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
}

void add_common(CLI::App* s, RunConfig& c, unsigned& workers, bool& emit) {
  s->add_option("--q", c.q, "field order (prime power <= 2^16)");
  s->add_option("--modulus", c.modulus, "field modulus as base-p digits, constant term first");
  s->add_option("--exclude", c.exclude, "excluded places E, e.g. \"inf,(x)\"");
  s->add_option("--workers", workers, "worker threads (results do not depend on it)");
  s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  s->add_option("--output", c.output, "output file (relative to $EISDENS_OUTPUT_DIR if set)");
  s->add_flag("--emit-config", emit, "print the run configuration as JSON and exit");
}

void add_poly_options(CLI::App* s, RunConfig& c) {
  s->add_option("--d", c.d, "polynomial degree (> 1)");
  s->add_option("--kind", c.kind, "monic or general");
}

void add_verify_options(CLI::App* s, RunConfig& c) {
  add_poly_options(s, c);
  s->add_option("--T", c.T, "places of T, e.g. \"(x),(x+1)\"");
  s->add_option("--mode", c.mode, "not-eisenstein-at-T or eisenstein-anywhere");
  s->add_option("--divisor", c.divisor, "divisor, e.g. \"4*inf + 1*(x)\"");
  s->add_option("--degree", c.degree, "use D = degree * inf");
  s->add_option("--samples", c.samples, "Monte Carlo samples");
  s->add_option("--seed", c.seed, "Monte Carlo seed");
  s->add_option("--budget", c.budget, "maximum number of tuples to enumerate");
  s->add_option("--width", c.width, "width of the expected density interval");
  s->add_flag("--fallback-mc", c.fallback_mc, "sample when enumeration is over budget");
  s->add_option("--z-limit", c.z_limit, "largest accepted |z| for Monte Carlo verdicts");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  unsigned workers = default_workers();
  bool emit = false;
  std::string config_path;

  CLI::App app{"Densities of Eisenstein polynomials over holomorphy rings of F_q(x)", "eisdens"};
  app.add_option("--config", config_path, "run a configuration file written by --emit-config");
  app.add_option("--workers", workers, "worker threads");

  auto* density_cmd = app.add_subcommand("density", "certified density interval");
  add_common(density_cmd, c, workers, emit);
  add_poly_options(density_cmd, c);
  density_cmd->add_option("--width", c.width, "target interval width: p/q, 1e-12 or 2^-40");
  density_cmd->add_option("--N", c.N, "fixed truncation degree");
  density_cmd->add_option("--places", c.places, "finite spectrum given by places, e.g. \"(x),(x+1)\"");
  density_cmd->add_option("--spectrum", c.spectrum, "spectrum JSON file");
  density_cmd->add_flag("--truncated-only", c.truncated_only, "report the truncated product up to the cutoff");

  auto* verify_cmd = app.add_subcommand("verify", "exhaustive and Monte Carlo experiments");
  verify_cmd->require_subcommand(1);
  auto* exact_cmd = verify_cmd->add_subcommand("exact", "exhaustive count over L(D)^k");
  auto* mc_cmd = verify_cmd->add_subcommand("mc", "seeded Monte Carlo estimate");
  auto* sweep_cmd = verify_cmd->add_subcommand("sweep", "one experiment per divisor degree");
  for (auto* s : {exact_cmd, mc_cmd, sweep_cmd}) {
    add_common(s, c, workers, emit);
    add_verify_options(s, c);
  }
  sweep_cmd->add_option("--degrees", c.degrees, "degree range a:b");

  auto* places_cmd = app.add_subcommand("places", "place counts and listings");
  places_cmd->require_subcommand(1);
  auto* count_cmd = places_cmd->add_subcommand("count", "places of S per degree");
  auto* list_cmd = places_cmd->add_subcommand("list", "places of S of one degree");
  for (auto* s : {count_cmd, list_cmd}) add_common(s, c, workers, emit);
  count_cmd->add_option("--max-degree", c.max_degree, "count degrees 1..n");
  count_cmd->add_option("--degree", c.degree, "count one degree");
  list_cmd->add_option("--degree", c.degree, "place degree");
  list_cmd->add_option("--cap", c.cap, "maximum number of places to list");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what(), kExitUsage).dump() << "\n";
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot open config file '" + config_path + "'");
      Json j;
      try {
        j = Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed config JSON: ") + e.what());
      }
      c = config_from_json(j);
    } else {
      for (auto* s : app.get_subcommands()) {
        c.command = s->get_name();
        for (auto* sub : s->get_subcommands()) c.subcommand = sub->get_name();
      }
      if (c.command.empty()) throw UsageError("a command is required: density, verify or places");
    }
    if (emit) {
      out << config_to_json(c).dump(2) << "\n";
      return kExitOk;
    }
    density::parse_kind(c.kind);
    if (c.format != "json" && c.format != "csv") throw UsageError("format must be json or csv");

    bool passed = true;
    std::string text;
    if (c.command == "density")
      text = cmd_density(c, workers);
    else if (c.command == "verify")
      text = cmd_verify(c, workers, passed);
    else if (c.command == "places")
      text = cmd_places(c, workers);
    else
      throw UsageError("unknown command '" + c.command + "'");
    write_output(c, text, out);
    return passed ? kExitOk : kExitVerification;
  } catch (const BudgetExceeded& e) {
    Json j = error_json("budget", e.what(), kExitBudget);
    j["count"] = e.count().get_str();
    j["budget"] = e.budget().get_str();
    err << j.dump() << "\n";
    return kExitBudget;
  } catch (const UnachievableWidth& e) {
    Json j = error_json("unachievable-width", e.what(), kExitUsage);
    j["best_width"] = e.best_width() ? io::rational_json(*e.best_width()) : Json(nullptr);
    err << j.dump() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << error_json("domain", e.what(), kExitUsage).dump() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << error_json("usage", e.what(), kExitUsage).dump() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << error_json("usage", e.what(), kExitUsage).dump() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << error_json("internal", e.what(), kExitInternal).dump() << "\n";
    return kExitInternal;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace eisdens::cli
