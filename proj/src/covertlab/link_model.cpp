#include "covertlab/link_model.hpp"

#include <cmath>
#include <stdexcept>

namespace covert {

namespace {

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void NoiseProfile::validate() const {
  if (!positive_finite(sigma_b2) || !positive_finite(sigma_w2) ||
      !positive_finite(sigma_e2))
    throw std::invalid_argument("NoiseProfile: noise powers must be positive and finite");
  if (!positive_finite(upsilon))
    throw std::invalid_argument("NoiseProfile: upsilon must be positive and finite");
}

void TransmitConfig::validate() const {
  if (!positive_finite(pa))
    throw std::invalid_argument("TransmitConfig: pa must be positive and finite");
  if (!(rho > 0.0) || rho > 1.0)
    throw std::invalid_argument("TransmitConfig: rho must be in (0, 1]");
  if (!(rs >= 0.0) || !std::isfinite(rs))
    throw std::invalid_argument("TransmitConfig: rs must be >= 0 and finite");
}

void SecurityConstraints::validate() const {
  auto inside = [](double x) { return x > 0.0 && x < 1.0; };
  if (!inside(eps_c) || !inside(eps_s) || !inside(eps_t))
    throw std::invalid_argument("SecurityConstraints: bounds must lie strictly inside (0, 1)");
}

std::string_view ScenarioId::abbrev() const {
  if (relationship == Relationship::Independence)
    return scheme == Scheme::PowerControl ? "ip" : "ia";
  return scheme == Scheme::PowerControl ? "fp" : "fa";
}

std::optional<ScenarioId> ScenarioId::parse(std::string_view text) {
  if (text == "ip" || text == "IP") return ip();
  if (text == "ia" || text == "IA") return ia();
  if (text == "fp" || text == "FP") return fp();
  if (text == "fa" || text == "FA") return fa();
  return std::nullopt;
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) { return 10.0 * std::log10(x); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL));
}

}  // namespace covert
