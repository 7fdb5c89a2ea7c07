#pragma once

// JSON and CSV renderings. Exact rationals are always "num/den" strings;
// floating values appear only in decimal display fields.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "eisdens/density.hpp"
#include "eisdens/verify.hpp"

namespace eisdens::io {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& r);
// Accepts "p/q" strings, decimal strings and JSON integers.
Rational rational_from_json(const Json& j);
BigInt bigint_from_json(const Json& j);

Json interval_json(const density::DensityInterval& iv);

// {"q", "genus", "provenance", "beyond", "cutoff", "counts", ...}. For
// rational-field spectra counts are listed up to `listed_degrees`.
Json spectrum_json(const density::PlaceSpectrum& spec, unsigned listed_degrees = 0);
// Builds and validates a spectrum. Throws std::invalid_argument on
// malformed JSON and std::domain_error on invalid spectra.
density::PlaceSpectrum spectrum_from_json(const Json& j);

Json report_json(const verify::ExperimentReport& r);
Json reports_json(const std::vector<verify::ExperimentReport>& rs);

// Fixed CSV header for experiment reports.
const std::vector<std::string>& report_csv_columns();
std::string report_csv_header();
std::string report_csv_row(const verify::ExperimentReport& r);

std::string csv_field(const std::string& s);
std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace eisdens::io
