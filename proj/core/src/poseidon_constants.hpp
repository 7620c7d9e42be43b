// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "toxizk/field/bigint.hpp"

namespace toxizk::poseidon_data {

struct RawParams {
  std::size_t width;
  std::size_t num_constants;
  const U256* round_constants;
  const U256* mds;  // row-major width x width
};

inline constexpr std::size_t kMinWidth = 2;
inline constexpr std::size_t kNumWidths = 8;

extern const RawParams kRawParams[kNumWidths];

}  // namespace toxizk::poseidon_data
