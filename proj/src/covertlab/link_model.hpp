#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace covert {

/// Linear-scale noise powers at Bob, Willie and Eve plus the detection
/// margin used by the threshold-optimal detector. All fields strictly
/// positive and finite.
struct NoiseProfile {
  double sigma_b2;
  double sigma_w2;
  double sigma_e2;
  double upsilon = 0.01;

  void validate() const;  // throws std::invalid_argument
};

enum class Relationship : std::uint8_t { Independence, Friend };
enum class Scheme : std::uint8_t { PowerControl, ArtificialNoise };

/// One of the four attacker/transmission scenarios, abbreviated
/// ip, ia, fp, fa (relationship x scheme).
struct ScenarioId {
  Relationship relationship;
  Scheme scheme;

  static constexpr ScenarioId ip() {
    return {Relationship::Independence, Scheme::PowerControl};
  }
  static constexpr ScenarioId ia() {
    return {Relationship::Independence, Scheme::ArtificialNoise};
  }
  static constexpr ScenarioId fp() {
    return {Relationship::Friend, Scheme::PowerControl};
  }
  static constexpr ScenarioId fa() {
    return {Relationship::Friend, Scheme::ArtificialNoise};
  }

  std::string_view abbrev() const;
  static std::optional<ScenarioId> parse(std::string_view text);

  friend bool operator==(ScenarioId a, ScenarioId b) {
    return a.relationship == b.relationship && a.scheme == b.scheme;
  }
};

/// Transmit-side knobs: total power pa, message power fraction rho
/// (meaningful only under the artificial-noise scheme; rho = 1 means all
/// power goes to the message) and the target secrecy rate rs in bits per
/// channel use.
struct TransmitConfig {
  double pa;
  double rho = 1.0;
  double rs = 0.0;

  void validate() const;
};

/// Bounds on the three outage metrics: cop <= eps_c, sop <= eps_s,
/// tp >= 1 - eps_t. Each strictly inside (0, 1).
struct SecurityConstraints {
  double eps_c;
  double eps_s;
  double eps_t;

  void validate() const;
};

/// One joint draw of the three channel gains (unit-mean exponential).
struct ChannelDraw {
  double g_ab;
  double g_ae;
  double g_aw;
};

double db_to_linear(double x_db);
double linear_to_db(double x);

/// Derives an independent sub-seed from (seed, index); used to key worker
/// substreams and per-purpose generators.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded generator for channel gains. Substreams keyed by (seed, index)
/// are statistically independent, so workers never share a generator.
class ChannelRng {
 public:
  explicit ChannelRng(std::uint64_t seed) : engine_(seed) {}

  static ChannelRng substream(std::uint64_t seed, std::uint64_t index) {
    return ChannelRng(derive_seed(seed, index));
  }

  double uniform() {  // in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double exponential() {  // unit mean
    return -std::log1p(-uniform());
  }

  ChannelDraw sample() {
    const double ab = exponential();
    const double ae = exponential();
    const double aw = exponential();
    return ChannelDraw{ab, ae, aw};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace covert
