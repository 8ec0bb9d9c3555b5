#pragma once

// Random unitary networks for property testing. Generation goes through the
// text format so every sample also exercises the parser.

#include "plfnet/network.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace plfnet {

struct RandomNetworkOptions {
  std::size_t min_species = 1;
  std::size_t max_species = 5;
  std::size_t min_reactions = 1;
  std::size_t max_reactions = 6;
  double influx_probability = 0.3;  // per species
};

namespace detail {

inline std::string species_name(std::size_t i) { return "X" + std::to_string(i + 1); }

inline std::string complex_text(const std::vector<std::size_t>& s) {
  if (s.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? " + " : "") + species_name(s[k]);
  return out;
}

inline std::string species_header(std::size_t n) {
  std::string h = "@species";
  for (std::size_t i = 0; i < n; ++i) h += " " + species_name(i);
  return h + "\n";
}

inline std::vector<std::size_t> draw_distinct(std::mt19937_64& rng, std::vector<std::size_t> pool, std::size_t k) {
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(k, pool.size()));
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace detail

/// Each internal reaction has one or two distinct reactants and up to two
/// distinct products disjoint from them, so S has entries in {-1, 0, 1} and
/// there is no autocatalysis.
inline std::string random_unitary_network_text(std::mt19937_64& rng, const RandomNetworkOptions& opt = {}) {
  const std::size_t n = detail::uniform(rng, opt.min_species, opt.max_species);
  const std::size_t m = detail::uniform(rng, opt.min_reactions, opt.max_reactions);
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::ostringstream os;
  os << detail::species_header(n);
  std::bernoulli_distribution influx(opt.influx_probability);
  for (std::size_t i = 0; i < n; ++i)
    if (influx(rng)) os << "0 -> " << detail::species_name(i) << "\n";
  for (std::size_t j = 0; j < m; ++j) {
    auto reactants = detail::draw_distinct(rng, all, detail::uniform(rng, 1, std::min<std::size_t>(2, n)));
    std::vector<std::size_t> rest;
    for (auto i : all)
      if (!std::binary_search(reactants.begin(), reactants.end(), i)) rest.push_back(i);
    auto products = detail::draw_distinct(rng, rest, detail::uniform(rng, 0, std::min<std::size_t>(2, rest.size())));
    os << detail::complex_text(reactants) << " -> " << detail::complex_text(products) << "\n";
  }
  return os.str();
}

/// Reactions of the forms X_i -> X_j, X_h + X_r -> 0 and X_w -> 0 only.
inline std::string random_monomolecular_network_text(std::mt19937_64& rng, const RandomNetworkOptions& opt = {}) {
  const std::size_t n = detail::uniform(rng, std::max<std::size_t>(opt.min_species, 2), opt.max_species);
  const std::size_t m = detail::uniform(rng, opt.min_reactions, opt.max_reactions);
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::ostringstream os;
  os << detail::species_header(n);
  for (std::size_t j = 0; j < m; ++j) {
    switch (detail::uniform(rng, 0, 2)) {
      case 0: {
        auto ij = detail::draw_distinct(rng, all, 2);
        if (detail::uniform(rng, 0, 1)) std::swap(ij[0], ij[1]);
        os << detail::species_name(ij[0]) << " -> " << detail::species_name(ij[1]) << "\n";
        break;
      }
      case 1: os << detail::complex_text(detail::draw_distinct(rng, all, 2)) << " -> 0\n"; break;
      default: os << detail::species_name(detail::uniform(rng, 0, n - 1)) << " -> 0\n"; break;
    }
  }
  return os.str();
}

inline ReactionNetwork random_unitary_network(std::mt19937_64& rng, const RandomNetworkOptions& opt = {}) {
  return parse_network(random_unitary_network_text(rng, opt));
}

inline ReactionNetwork random_monomolecular_network(std::mt19937_64& rng, const RandomNetworkOptions& opt = {}) {
  return parse_network(random_monomolecular_network_text(rng, opt));
}

}  // namespace plfnet
