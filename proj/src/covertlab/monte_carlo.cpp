#include "covertlab/monte_carlo.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "covertlab/analytic_metrics.hpp"
#include "covertlab/parallel.hpp"

namespace covert::mc {

namespace {

constexpr std::uint64_t kBlock = 1ull << 16;

double bob_snr(ScenarioId sc, const NoiseProfile& noise,
               const TransmitConfig& cfg, double g_ab) {
  if (sc.scheme == Scheme::PowerControl)
    return cfg.pa * g_ab / noise.sigma_b2;
  const double sig = cfg.rho * cfg.pa * g_ab;
  return sig / ((1.0 - cfg.rho) * cfg.pa * g_ab + noise.sigma_b2);
}

// SNR of the eavesdropping side; under the friend relationship the two
// attackers pool both their received signals and their noise.
double attacker_snr(ScenarioId sc, const NoiseProfile& noise,
                    const TransmitConfig& cfg, double g_ae, double g_aw) {
  double gain;
  double n2;
  if (sc.relationship == Relationship::Friend) {
    gain = g_ae + g_aw;
    n2 = noise.sigma_e2 + noise.sigma_w2;
  } else {
    gain = g_ae;
    n2 = noise.sigma_e2;
  }
  if (sc.scheme == Scheme::PowerControl) return cfg.pa * gain / n2;
  return cfg.rho * cfg.pa * gain / ((1.0 - cfg.rho) * cfg.pa * gain + n2);
}

McEstimate bernoulli(std::uint64_t count, std::uint64_t n, std::uint64_t seed) {
  const double mean = static_cast<double>(count) / static_cast<double>(n);
  const double hw = 1.96 * std::sqrt(mean * (1.0 - mean) / static_cast<double>(n));
  return McEstimate{mean, hw, n, seed};
}

void require_samples(std::uint64_t n) {
  if (n < 1000)
    throw std::invalid_argument("monte carlo: need at least 1000 samples");
}

// Counts hits of pred over n samples. Blocks own independent substreams and
// integer counts sum identically for any worker count.
template <class Pred>
std::uint64_t count_blocks(std::uint64_t n, std::uint64_t stream_seed,
                           const Pred& pred) {
  const std::size_t blocks = static_cast<std::size_t>((n + kBlock - 1) / kBlock);
  std::vector<std::uint64_t> counts(blocks, 0);
  detail::parallel_for(blocks, [&](std::size_t b) {
    ChannelRng rng = ChannelRng::substream(stream_seed, b);
    const std::uint64_t lo = b * kBlock;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + kBlock, n);
    std::uint64_t c = 0;
    for (std::uint64_t i = lo; i < hi; ++i)
      if (pred(rng)) ++c;
    counts[b] = c;
  });
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

}  // namespace

bool three_sigma_pass(double analytic, const McEstimate& est) {
  return std::abs(analytic - est.mean) <= 3.0 * est.half_width + 1e-12;
}

McEstimate estimate_tp(ScenarioId sc, const NoiseProfile& noise,
                       const TransmitConfig& cfg, std::uint64_t n,
                       std::uint64_t seed) {
  require_samples(n);
  const double beta = std::exp2(cfg.rs) - 1.0;
  const std::uint64_t hits =
      count_blocks(n, seed, [&](ChannelRng& rng) {
        return bob_snr(sc, noise, cfg, rng.exponential()) >= beta;
      });
  return bernoulli(hits, n, seed);
}

McEstimate estimate_sop(ScenarioId sc, const NoiseProfile& noise,
                        const TransmitConfig& cfg, std::uint64_t n,
                        std::uint64_t seed) {
  require_samples(n);
  const bool friends = sc.relationship == Relationship::Friend;
  const double beta = std::exp2(cfg.rs) - 1.0;
  const double two = std::exp2(cfg.rs);

  const std::uint64_t max_attempts = 100 * n;
  std::uint64_t attempts = 0, accepted = 0, outages = 0;
  std::uint64_t block = 0;
  while (accepted < n && attempts < max_attempts) {
    ChannelRng rng = ChannelRng::substream(seed, block++);
    for (std::uint64_t i = 0; i < kBlock && accepted < n && attempts < max_attempts; ++i) {
      ++attempts;
      const double g_ab = rng.exponential();
      const double g_ae = rng.exponential();
      const double g_aw = friends ? rng.exponential() : 0.0;
      const double snr_b = bob_snr(sc, noise, cfg, g_ab);
      if (snr_b < beta) continue;
      ++accepted;
      const double snr_a = attacker_snr(sc, noise, cfg, g_ae, g_aw);
      // C_s < rs  <=>  1 + snr_b < 2^rs (1 + snr_a)
      if (1.0 + snr_b < two * (1.0 + snr_a)) ++outages;
    }
  }
  if (accepted < n)
    throw StarvationError("estimate_sop: acceptance rate below 1%, conditioning starved");
  return bernoulli(outages, accepted, seed);
}

DetectionEstimate estimate_detection(ScenarioId sc, const NoiseProfile& noise,
                                     const TransmitConfig& cfg, double theta,
                                     std::uint64_t n, std::uint64_t seed) {
  require_samples(n);
  const bool friends = sc.relationship == Relationship::Friend;
  const bool an = sc.scheme == Scheme::ArtificialNoise;
  const double floor = friends ? noise.sigma_e2 + noise.sigma_w2 : noise.sigma_w2;

  // transmit hypothesis: full power reaches the detector
  const std::uint64_t md_hits =
      count_blocks(n, derive_seed(seed, 0xF1), [&](ChannelRng& rng) {
        double gain = rng.exponential();
        if (friends) gain += rng.exponential();
        return cfg.pa * gain + floor <= theta;
      });
  // silent hypothesis: only the artificial-noise share is on the air
  const std::uint64_t fa_hits =
      count_blocks(n, derive_seed(seed, 0xF0), [&](ChannelRng& rng) {
        double power = floor;
        if (an) {
          double gain = rng.exponential();
          if (friends) gain += rng.exponential();
          power += (1.0 - cfg.rho) * cfg.pa * gain;
        }
        return power >= theta;
      });

  DetectionEstimate out;
  out.p_md = bernoulli(md_hits, n, seed);
  out.p_fa = bernoulli(fa_hits, n, seed);
  out.cop = McEstimate{
      1.0 - (out.p_fa.mean + out.p_md.mean),
      std::sqrt(out.p_fa.half_width * out.p_fa.half_width +
                out.p_md.half_width * out.p_md.half_width),
      n, seed};
  return out;
}

ValidationReport validate_scenario(ScenarioId sc, const NoiseProfile& noise,
                                   const TransmitConfig& cfg, std::uint64_t n,
                                   std::uint64_t seed, double analytic_bias) {
  noise.validate();
  cfg.validate();
  if (sc.scheme == Scheme::ArtificialNoise &&
      metrics::tp_an(noise, cfg.pa, cfg.rho, cfg.rs) == 0.0)
    throw metrics::FeasibilityError(
        "validate_scenario: rate at or above the capacity ceiling, tp = 0");

  const double theta = metrics::theta_star(sc, noise, cfg.pa, cfg.rho);

  ValidationReport report;
  report.theta_star = theta;

  const double tp_a = metrics::tp(sc, noise, cfg) + analytic_bias;
  const McEstimate tp_e = estimate_tp(sc, noise, cfg, n, derive_seed(seed, 1));
  report.checks[0] = Comparison{"tp", tp_a, tp_e, three_sigma_pass(tp_a, tp_e)};

  const double sop_a = metrics::sop(sc, noise, cfg) + analytic_bias;
  const McEstimate sop_e = estimate_sop(sc, noise, cfg, n, derive_seed(seed, 2));
  report.checks[1] = Comparison{"sop", sop_a, sop_e, three_sigma_pass(sop_a, sop_e)};

  const double cop_a =
      metrics::cop(sc, noise, cfg.pa, cfg.rho, theta) + analytic_bias;
  const McEstimate cop_e =
      estimate_detection(sc, noise, cfg, theta, n, derive_seed(seed, 3)).cop;
  report.checks[2] = Comparison{"cop", cop_a, cop_e, three_sigma_pass(cop_a, cop_e)};

  report.pass =
      report.checks[0].pass && report.checks[1].pass && report.checks[2].pass;
  return report;
}

}  // namespace covert::mc
