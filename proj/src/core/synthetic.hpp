#pragma once

#include <cstdint>
#include <string>

#include "core/market_data.hpp"

namespace msq {

// Seeded geometric-Brownian-motion price generator for tests and demos.
struct SynthParams {
  int assets = 10;
  int days = 756;
  std::uint64_t seed = 42;
  std::string start_date = "2018-01-02";
  double price_low = 20.0, price_high = 180.0;    // initial price range
  double drift_low = 0.04, drift_high = 0.28;     // annual drift range
  double vol_low = 0.12, vol_high = 0.45;         // annual volatility range
  double missing_rate = 0.0;                      // isolated missing cells
};

PricePanel synth_prices(const SynthParams& params);

}  // namespace msq
