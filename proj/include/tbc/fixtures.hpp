#pragma once

// Bundled components of published ciphers and the small worked example.

#include <string>
#include <vector>

#include "tbc/mixlayer.hpp"
#include "tbc/tbcipher.hpp"
#include "tbc/vboolfn.hpp"

namespace tbc::fixtures {

SBox present_sbox();
/// Bit i moves to 16 i mod 63, bit 63 stays.
LinearLayer present_layer();
CipherSpec present_spec();

SBox rectangle_sbox();
/// Row rotations by 0, 1, 12, 13 on the 4 x 16 state, re-indexed so the
/// S-box columns become bricks: bit 4 j + i is row i, column j.
LinearLayer rectangle_layer();
CipherSpec rectangle_spec();

SBox printcipher_sbox();
/// Bit i moves to 3 i mod 47, bit 47 stays.
LinearLayer printcipher_layer();
CipherSpec printcipher_spec();

/// x -> x^14 = x^-1 in F_16 = F_2[t]/(t^4 + t + 1), 0 -> 0.
SBox inversion_sbox();
/// Block rotation on n bricks of 4 bits: brick i goes to brick i + 1 mod n.
LinearLayer rotation_layer(unsigned n);
/// Inversion bricks with the rotation layer on 4 bricks; its desk layer is
/// the 2-brick rotation (the brick swap).
CipherSpec rotation_example_spec();

struct Named {
  std::string name;
  CipherSpec spec;
};
std::vector<Named> all_specs();

}  // namespace tbc::fixtures
