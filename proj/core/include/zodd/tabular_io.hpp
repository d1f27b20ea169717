#pragma once

#include <filesystem>

#include "zodd/strategic_env.hpp"
#include "zodd/synthetic.hpp"

namespace zodd {

// Plain-text tables: one record per line, comma-separated, header row first.
//
//   population:  label,f1,f2,...,fk     (label 0 or 1)
//   prices:      theta,rho

void write_population_csv(const std::filesystem::path& path, const Population& population);
/// Throws ArgumentError naming the offending line on malformed input.
Population read_population_csv(const std::filesystem::path& path);

void write_prices_csv(const std::filesystem::path& path, const PriceVectors& prices);
PriceVectors read_prices_csv(const std::filesystem::path& path);

}  // namespace zodd
