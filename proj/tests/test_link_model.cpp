#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "covertlab/link_model.hpp"
#include "doctest.h"

using namespace covert;

TEST_CASE("db conversion") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(-20.0) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(db_to_linear(-31.0) == doctest::Approx(7.943282347243e-4).epsilon(1e-10));

  for (double x : {1e-6, 1e-3, 0.5, 1.0, 42.0, 1e6}) {
    CHECK(db_to_linear(linear_to_db(x)) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("type invariants") {
  CHECK_NOTHROW((NoiseProfile{0.01, 1.0, 1.0, 0.01}).validate());
  CHECK_THROWS_AS((NoiseProfile{0.0, 1.0, 1.0, 0.01}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((NoiseProfile{0.01, 1.0, 1.0, 0.0}).validate(), std::invalid_argument);

  CHECK_NOTHROW((TransmitConfig{0.01, 1.0, 0.0}).validate());
  CHECK_THROWS_AS((TransmitConfig{0.01, 0.0, 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((TransmitConfig{0.01, 1.5, 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((TransmitConfig{-1.0, 1.0, 0.0}).validate(), std::invalid_argument);

  CHECK_NOTHROW((SecurityConstraints{0.1, 0.1, 0.5}).validate());
  CHECK_THROWS_AS((SecurityConstraints{0.0, 0.1, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((SecurityConstraints{0.1, 1.0, 0.5}).validate(), std::invalid_argument);
}

TEST_CASE("scenario taxonomy") {
  CHECK(ScenarioId::ip().abbrev() == "ip");
  CHECK(ScenarioId::ia().abbrev() == "ia");
  CHECK(ScenarioId::fp().abbrev() == "fp");
  CHECK(ScenarioId::fa().abbrev() == "fa");
  CHECK(ScenarioId::parse("fa") == ScenarioId::fa());
  CHECK(!ScenarioId::parse("xx"));
}

TEST_CASE("sampler determinism") {
  ChannelRng a(1234), b(1234);
  for (int i = 0; i < 100; ++i) {
    const ChannelDraw da = a.sample();
    const ChannelDraw db = b.sample();
    CHECK(da.g_ab == db.g_ab);
    CHECK(da.g_ae == db.g_ae);
    CHECK(da.g_aw == db.g_aw);
  }
  // substreams differ from the parent stream and from each other
  ChannelRng s0 = ChannelRng::substream(1234, 0);
  ChannelRng s1 = ChannelRng::substream(1234, 1);
  CHECK(s0.exponential() != s1.exponential());
}

TEST_CASE("sampler moments and tail") {
  ChannelRng rng(77);
  const int n = 1000000;
  double sum = 0.0;
  int tail = 0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.sample().g_ab;
    sum += g;
    if (g > 1.0) ++tail;
  }
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(static_cast<double>(tail) / n ==
        doctest::Approx(std::exp(-1.0)).epsilon(0.005 / std::exp(-1.0)));
}

TEST_CASE("empirical cdf matches 1 - exp(-x)") {
  // Kolmogorov-Smirnov at n = 1e5; 1% critical value 1.63/sqrt(n)
  const int n = 100000;
  ChannelRng rng(2024);
  std::vector<double> xs(n);
  for (auto& x : xs) x = rng.exponential();
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = -std::expm1(-xs[i]);
    ks = std::max(ks, std::abs(cdf - static_cast<double>(i + 1) / n));
    ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
  }
  CHECK(ks < 1.63 / std::sqrt(static_cast<double>(n)));
}
