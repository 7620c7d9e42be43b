// SPDX-License-Identifier: Apache-2.0
#include "toxizk/random.hpp"

#include <sodium.h>

#include "toxizk/errors.hpp"

namespace toxizk {

SystemRandom::SystemRandom() {
  if (sodium_init() < 0) throw SetupError("libsodium initialisation failed");
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  randombytes_buf(out.data(), out.size());
}

}  // namespace toxizk
