#pragma once

#include "kgalab/curve.hpp"

namespace kga {

// Optimal ate pairing on BLS12-381, e: G1 x G2 -> GT (subgroup of Fp12*).
// Points at infinity map to the identity of GT.
Fp12 pairing(const G1Affine& p, const G2Affine& q);

Fp12 miller_loop(const G1Affine& p, const G2Affine& q);
Fp12 final_exponentiation(const Fp12& f);

}  // namespace kga
