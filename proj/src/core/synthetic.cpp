#include "core/synthetic.hpp"

#include <cmath>
#include <cstdio>

#include "core/dates.hpp"
#include "core/random.hpp"

namespace msq {

namespace {

// Box-Muller on SplitMix64 draws; fully specified so generated panels are
// identical across platforms.
double standard_normal(SplitMix64& rng) {
  double u1 = rng.next_double();
  while (u1 <= 0.0) u1 = rng.next_double();
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

PricePanel synth_prices(const SynthParams& params) {
  if (params.assets < 1 || params.days < 2)
    throw Error(ErrorCode::invalid_argument,
                "synth needs at least 1 asset and 2 days");
  auto start = parse_iso_date(params.start_date);
  if (!start)
    throw Error(ErrorCode::invalid_argument,
                "bad start date: " + params.start_date);

  PricePanel panel;
  const int width = params.assets > 100 ? 3 : 2;
  for (int a = 0; a < params.assets; ++a) {
    char name[16];
    std::snprintf(name, sizeof name, "A%0*d", width, a);
    panel.assets.push_back(name);
  }

  auto day = *start;
  for (int t = 0; t < params.days; ++t) {
    panel.dates.push_back(format_iso_date(day));
    day = next_weekday(day);
  }

  SplitMix64 rng(mix_seed(params.seed, 0x5954484e5953ULL));
  std::vector<double> price(params.assets), drift(params.assets),
      vol(params.assets);
  for (int a = 0; a < params.assets; ++a) {
    price[a] = params.price_low +
               (params.price_high - params.price_low) * rng.next_double();
    drift[a] = params.drift_low +
               (params.drift_high - params.drift_low) * rng.next_double();
    vol[a] =
        params.vol_low + (params.vol_high - params.vol_low) * rng.next_double();
  }

  const double dt = 1.0 / 252.0;
  panel.prices.resize(std::size_t(params.days) * params.assets);
  for (int t = 0; t < params.days; ++t) {
    for (int a = 0; a < params.assets; ++a) {
      if (t > 0) {
        const double z = standard_normal(rng);
        price[a] *= std::exp((drift[a] - 0.5 * vol[a] * vol[a]) * dt +
                             vol[a] * std::sqrt(dt) * z);
      }
      double cell = price[a];
      if (params.missing_rate > 0.0 && t > 0 &&
          rng.next_double() < params.missing_rate)
        cell = std::numeric_limits<double>::quiet_NaN();
      panel.at(std::size_t(t), std::size_t(a)) = cell;
    }
  }
  return panel;
}

}  // namespace msq
