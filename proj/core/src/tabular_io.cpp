#include "zodd/tabular_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "zodd/errors.hpp"

namespace zodd {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, const std::filesystem::path& path, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ArgumentError(path.string() + ":" + std::to_string(line) + ": invalid number '" + text +
                        "'");
  }
  return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

void write_population_csv(const std::filesystem::path& path, const Population& population) {
  auto out = open_out(path);
  const Eigen::Index k = population.empty() ? 0 : population.front().features.size();
  out << "label";
  for (Eigen::Index j = 0; j < k; ++j) out << ",f" << (j + 1);
  out << '\n';
  for (const Agent& a : population) {
    out << a.label;
    for (Eigen::Index j = 0; j < a.features.size(); ++j) out << ',' << a.features[j];
    out << '\n';
  }
}

Population read_population_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError(path.string() + ": missing header row");
  const auto header = split_fields(line);
  if (header.size() < 2 || header.front() != "label") {
    throw ArgumentError(path.string() + ":1: header must be 'label,f1,...'");
  }
  const std::size_t k = header.size() - 1;
  Population out;
  for (std::size_t number = 2; std::getline(in, line); ++number) {
    if (blank(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != k + 1) {
      throw ArgumentError(path.string() + ":" + std::to_string(number) + ": expected " +
                          std::to_string(k + 1) + " fields, found " +
                          std::to_string(fields.size()));
    }
    Agent a;
    const double label = parse_number(fields[0], path, number);
    if (label != 0.0 && label != 1.0) {
      throw ArgumentError(path.string() + ":" + std::to_string(number) + ": label must be 0 or 1");
    }
    a.label = static_cast<int>(label);
    a.features = Vector(static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j) {
      a.features[static_cast<Eigen::Index>(j)] = parse_number(fields[j + 1], path, number);
    }
    out.push_back(std::move(a));
  }
  return out;
}

void write_prices_csv(const std::filesystem::path& path, const PriceVectors& prices) {
  if (prices.theta.size() != prices.rho.size()) {
    throw ArgumentError("theta and rho must have equal length");
  }
  auto out = open_out(path);
  out << "theta,rho\n";
  for (Eigen::Index i = 0; i < prices.theta.size(); ++i) {
    out << prices.theta[i] << ',' << prices.rho[i] << '\n';
  }
}

PriceVectors read_prices_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || split_fields(line) != std::vector<std::string>{"theta", "rho"}) {
    throw ArgumentError(path.string() + ":1: header must be 'theta,rho'");
  }
  std::vector<double> theta;
  std::vector<double> rho;
  for (std::size_t number = 2; std::getline(in, line); ++number) {
    if (blank(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw ArgumentError(path.string() + ":" + std::to_string(number) +
                          ": expected 2 fields, found " + std::to_string(fields.size()));
    }
    theta.push_back(parse_number(fields[0], path, number));
    rho.push_back(parse_number(fields[1], path, number));
  }
  PriceVectors out;
  out.theta = Eigen::Map<const Vector>(theta.data(), static_cast<Eigen::Index>(theta.size()));
  out.rho = Eigen::Map<const Vector>(rho.data(), static_cast<Eigen::Index>(rho.size()));
  return out;
}

}  // namespace zodd
