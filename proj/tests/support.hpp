#pragma once

#include <memory>
#include <random>

#include "eisdens/rff.hpp"
#include "oracles.hpp"

namespace support {

using eisdens::gf::Elem;
using eisdens::gf::Field;
using eisdens::gf::FieldPtr;
using eisdens::poly::Poly;

inline FieldPtr field(std::uint32_t q) { return std::make_shared<const Field>(Field::of_order(q)); }

inline oracle::P to_oracle(const Poly& f) {
  oracle::P r;
  for (auto c : f.c) r.push_back(static_cast<int>(c.v));
  return r;
}

inline Poly from_oracle(const oracle::P& f) {
  std::vector<Elem> c;
  for (int v : f) c.push_back(Elem{static_cast<std::uint32_t>(v)});
  return Poly(c);
}

inline Poly random_poly(std::mt19937_64& rng, std::uint32_t q, int max_degree) {
  std::uniform_int_distribution<int> len(0, max_degree + 1);
  std::uniform_int_distribution<std::uint32_t> digit(0, q - 1);
  std::vector<Elem> c(len(rng));
  for (auto& e : c) e = Elem{digit(rng)};
  return Poly(c);
}

inline eisdens::rff::HolomorphySet ring(const FieldPtr& F, const std::string& exclude = "inf") {
  return eisdens::rff::HolomorphySet(F, eisdens::rff::parse_place_list(*F, exclude));
}

}  // namespace support
