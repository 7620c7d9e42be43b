// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "toxizk/snark/curve.hpp"
#include "toxizk/snark/tower.hpp"

namespace toxizk::snark {

/// Line coefficients for one Miller-loop step; evaluated at P as
/// ell_0 + ell_vv * xP * w^4 + ell_vw * yP * w^3.
struct EllCoeffs {
  Fq2 ell_0;
  Fq2 ell_vw;
  Fq2 ell_vv;
};

/// G2 argument of the optimal ate pairing with its line coefficients
/// precomputed. Reusable across pairings with the same Q.
struct G2Prepared {
  std::vector<EllCoeffs> coeffs;
  bool infinity = true;
};

G2Prepared prepare_g2(const G2Affine& q);

Fq12 miller_loop(const G1Affine& p, const G2Prepared& q);
Fq12 final_exponentiation(const Fq12& f);

/// Reduced optimal ate pairing e: G1 x G2 -> GT.
Fq12 pairing(const G1Affine& p, const G2Affine& q);

/// Product of pairings with one shared final exponentiation.
Fq12 multi_pairing(std::span<const std::pair<G1Affine, const G2Prepared*>> terms);

/// Loop parameter 6u + 2 of the ate Miller loop and the curve parameter u.
const U256& ate_loop_count();
const U256& curve_parameter_u();

}  // namespace toxizk::snark
