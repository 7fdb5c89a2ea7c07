#include "eisdens/io.hpp"

#include <stdexcept>

namespace eisdens::io {

using density::Beyond;
using density::PlaceSpectrum;
using density::Provenance;

Json rational_json(const Rational& r) { return eisdens::to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(BigInt(j.dump()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

BigInt bigint_from_json(const Json& j) {
  std::string s;
  if (j.is_number_integer())
    s = j.dump();
  else if (j.is_string())
    s = j.get<std::string>();
  else
    throw std::invalid_argument("expected an integer, got " + j.dump());
  BigInt v;
  if (s.empty() || v.set_str(s, 10) != 0) throw std::invalid_argument("malformed integer '" + s + "'");
  return v;
}

namespace {

Json bigint_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json decimal_json(const Rational& r) { return to_decimal(r, 15); }

Beyond parse_beyond(const std::string& s) {
  if (s == "unspecified") return Beyond::unspecified;
  if (s == "zero") return Beyond::zero;
  if (s == "unverified") return Beyond::unverified;
  if (s == "majorant") return Beyond::majorant;
  if (s == "genus-prefactor") return Beyond::genus_prefactor;
  throw std::invalid_argument("unknown beyond flag '" + s + "'");
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

}  // namespace

Json interval_json(const density::DensityInterval& iv) {
  Json j;
  j["N"] = iv.N;
  j["exact"] = iv.exact;
  j["certified"] = iv.certified;
  if (iv.truncated_lo == iv.truncated_hi)
    j["truncated"] = rational_json(iv.truncated_lo);
  else
    j["truncated"] = Json{{"lo", rational_json(iv.truncated_lo)}, {"hi", rational_json(iv.truncated_hi)}};
  j["tail"] = rational_json(iv.tail);
  j["lo"] = rational_json(iv.lo);
  j["hi"] = rational_json(iv.hi);
  j["width"] = rational_json(iv.width());
  j["decimal"] = Json{{"lo", decimal_json(iv.lo)}, {"hi", decimal_json(iv.hi)}, {"midpoint", decimal_json(iv.midpoint())}};
  return j;
}

Json spectrum_json(const PlaceSpectrum& spec, unsigned listed_degrees) {
  Json j;
  j["q"] = spec.q;
  j["genus"] = spec.genus;
  j["provenance"] = density::to_string(spec.provenance);
  Json counts = Json::object();
  if (spec.provenance == Provenance::rational_field) {
    Json ex = Json::array();
    for (const auto& [n, e] : spec.excluded_by_degree)
      for (BigInt k = 0; k < e; ++k) ex.push_back(n);
    j["excluded_degrees"] = ex;
    for (unsigned n = 1; n <= listed_degrees; ++n) counts[std::to_string(n)] = bigint_json(spec.count(n));
    j["counts"] = counts;
    j["cutoff"] = listed_degrees;
    j["beyond"] = "majorant";
    return j;
  }
  for (const auto& [n, c] : spec.counts) counts[std::to_string(n)] = bigint_json(c);
  j["counts"] = counts;
  j["cutoff"] = spec.cutoff;
  j["beyond"] = density::to_string(spec.beyond);
  if (spec.beyond == Beyond::majorant) j["majorant"] = rational_json(spec.majorant);
  return j;
}

PlaceSpectrum spectrum_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("spectrum JSON must be an object");
  if (!j.contains("q")) throw std::invalid_argument("spectrum JSON needs \"q\"");
  const std::uint64_t q = j.at("q").get<std::uint64_t>();
  const unsigned genus = get_or<unsigned>(j, "genus", 0);
  const std::string prov = get_or<std::string>(j, "provenance", j.contains("L") ? "L-polynomial" : "explicit");

  if (prov == "rational-field") {
    std::vector<unsigned> ex;
    if (j.contains("excluded_degrees")) ex = j.at("excluded_degrees").get<std::vector<unsigned>>();
    return density::rational_field_spectrum(q, ex);
  }
  if (prov == "L-polynomial") {
    std::vector<BigInt> L;
    for (const auto& c : j.at("L")) L.push_back(bigint_from_json(c));
    std::vector<std::pair<unsigned, BigInt>> excluded;
    if (j.contains("excluded")) {
      const Json& e = j.at("excluded");
      if (e.is_object()) {
        for (auto it = e.begin(); it != e.end(); ++it)
          excluded.emplace_back(static_cast<unsigned>(std::stoul(it.key())), bigint_from_json(it.value()));
      } else {
        for (const auto& pair : e) excluded.emplace_back(pair.at(0).get<unsigned>(), bigint_from_json(pair.at(1)));
      }
    }
    const unsigned cutoff = j.at("cutoff").get<unsigned>();
    PlaceSpectrum s = density::spectrum_from_L_polynomial(q, genus, L, excluded, cutoff,
                                                          get_or<bool>(j, "check_functional_equation", false));
    const std::string beyond = get_or<std::string>(j, "beyond", "unverified");
    if (beyond == "genus-prefactor") return density::with_genus_prefactor(std::move(s));
    if (beyond != "unverified")
      throw std::invalid_argument("L-polynomial spectra accept beyond = unverified or genus-prefactor");
    return s;
  }
  if (prov != "explicit") throw std::invalid_argument("unknown provenance '" + prov + "'");
  std::map<unsigned, BigInt> counts;
  unsigned top = 0;
  if (j.contains("counts")) {
    for (auto it = j.at("counts").begin(); it != j.at("counts").end(); ++it) {
      const unsigned n = static_cast<unsigned>(std::stoul(it.key()));
      counts[n] = bigint_from_json(it.value());
      top = std::max(top, n);
    }
  }
  const unsigned cutoff = get_or<unsigned>(j, "cutoff", top);
  const Beyond beyond = parse_beyond(get_or<std::string>(j, "beyond", "unspecified"));
  const Rational majorant = j.contains("majorant") ? rational_from_json(j.at("majorant")) : Rational(0);
  return density::explicit_spectrum(q, genus, std::move(counts), cutoff, beyond, majorant);
}

Json report_json(const verify::ExperimentReport& r) {
  Json j;
  j["experiment"] = r.experiment;
  j["method"] = r.method;
  j["q"] = r.q;
  j["d"] = r.d;
  j["kind"] = density::to_string(r.kind);
  j["mode"] = verify::to_string(r.mode);
  j["exclude"] = r.exclude;
  j["divisor"] = r.divisor;
  j["degree"] = r.degree;
  j["T"] = r.T;
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  j["samples"] = r.samples ? Json(*r.samples) : Json(nullptr);
  j["observed"] = Json{{"num", r.observed_num.get_str()}, {"den", r.observed_den.get_str()}};
  if (r.expected_exact)
    j["expected"] = rational_json(*r.expected_exact);
  else if (r.expected_interval)
    j["expected"] = Json{{"lo", rational_json(r.expected_interval->lo)},
                         {"hi", rational_json(r.expected_interval->hi)},
                         {"N", r.expected_interval->N}};
  else
    j["expected"] = nullptr;
  j["verdict"] = r.verdict;
  j["passed"] = r.passed();
  j["z_score"] = r.z_score ? Json(*r.z_score) : Json(nullptr);
  j["std_error"] = r.std_error ? Json(*r.std_error) : Json(nullptr);
  j["threshold"] = r.threshold ? Json(*r.threshold) : Json(nullptr);
  j["below_threshold"] = r.below_threshold;
  Rational obs(r.observed_num, r.observed_den);
  obs.canonicalize();
  j["observed_decimal"] = to_decimal(obs, 15);
  j["note"] = r.note;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

Json reports_json(const std::vector<verify::ExperimentReport>& rs) {
  Json a = Json::array();
  for (const auto& r : rs) a.push_back(report_json(r));
  return a;
}

const std::vector<std::string>& report_csv_columns() {
  static const std::vector<std::string> cols = {
      "experiment", "method",      "q",           "d",         "kind",      "mode",
      "exclude",    "divisor",     "degree",      "T",         "seed",      "samples",
      "observed_num", "observed_den", "expected", "expected_lo", "expected_hi", "verdict",
      "passed",     "z_score",     "std_error",   "threshold", "below_threshold", "observed_decimal",
      "note",       "elapsed_ms"};
  return cols;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string report_csv_header() { return join(report_csv_columns(), ","); }

std::string report_csv_row(const verify::ExperimentReport& r) {
  const Json j = report_json(r);
  auto scalar = [](const Json& v) -> std::string {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  std::vector<std::string> cells;
  for (const auto& c : report_csv_columns()) {
    std::string v;
    if (c == "exclude" || c == "T") {
      v = join(j.at(c).get<std::vector<std::string>>(), ";");
    } else if (c == "observed_num") {
      v = j["observed"]["num"];
    } else if (c == "observed_den") {
      v = j["observed"]["den"];
    } else if (c == "expected") {
      v = j["expected"].is_string() ? j["expected"].get<std::string>() : "";
    } else if (c == "expected_lo" || c == "expected_hi") {
      v = j["expected"].is_object() ? j["expected"][c == "expected_lo" ? "lo" : "hi"].get<std::string>() : "";
    } else {
      v = scalar(j.at(c));
    }
    cells.push_back(csv_field(v));
  }
  return join(cells, ",");
}

}  // namespace eisdens::io
