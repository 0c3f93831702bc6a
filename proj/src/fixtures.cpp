#include "tbc/fixtures.hpp"

namespace tbc::fixtures {

namespace {

LinearLayer multiplicative_layer(unsigned d, unsigned factor) {
  std::vector<unsigned> perm(d);
  for (unsigned i = 0; i + 1 < d; ++i) perm[i] = (factor * i) % (d - 1);
  perm[d - 1] = d - 1;
  return LinearLayer::from_bit_permutation(std::move(perm));
}

std::uint32_t gf16_mul(std::uint32_t a, std::uint32_t b) {
  std::uint32_t r = 0;
  for (int i = 0; i < 4; ++i) {
    if ((b >> i) & 1u) r ^= a << i;
  }
  for (int i = 6; i >= 4; --i)
    if ((r >> i) & 1u) r ^= 0x13u << (i - 4);
  return r;
}

}  // namespace

SBox present_sbox() {
  return SBox(4, {0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD, 0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2});
}

LinearLayer present_layer() { return multiplicative_layer(64, 16); }

CipherSpec present_spec() { return CipherSpec(4, 16, {present_sbox()}, present_layer()); }

SBox rectangle_sbox() {
  return SBox(4, {0x6, 0x5, 0xC, 0xA, 0x1, 0xE, 0x7, 0x9, 0xB, 0x0, 0x3, 0xD, 0x8, 0xF, 0x4, 0x2});
}

LinearLayer rectangle_layer() {
  constexpr unsigned shift[4] = {0, 1, 12, 13};
  std::vector<unsigned> perm(64);
  for (unsigned j = 0; j < 16; ++j)
    for (unsigned i = 0; i < 4; ++i) perm[4 * j + i] = 4 * ((j + shift[i]) % 16) + i;
  return LinearLayer::from_bit_permutation(std::move(perm));
}

CipherSpec rectangle_spec() { return CipherSpec(4, 16, {rectangle_sbox()}, rectangle_layer()); }

SBox printcipher_sbox() { return SBox(3, {0, 1, 3, 6, 7, 4, 5, 2}); }

LinearLayer printcipher_layer() { return multiplicative_layer(48, 3); }

CipherSpec printcipher_spec() {
  return CipherSpec(3, 16, {printcipher_sbox()}, printcipher_layer());
}

SBox inversion_sbox() {
  std::vector<std::uint32_t> t(16);
  for (std::uint32_t x = 0; x < 16; ++x) {
    std::uint32_t p = 1;
    for (int k = 0; k < 14; ++k) p = gf16_mul(p, x);
    t[x] = x == 0 ? 0 : p;
  }
  return SBox(4, std::move(t));
}

LinearLayer rotation_layer(unsigned n) {
  std::vector<unsigned> perm(4 * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < 4; ++k) perm[4 * i + k] = 4 * ((i + 1) % n) + k;
  return LinearLayer::from_bit_permutation(std::move(perm));
}

CipherSpec rotation_example_spec() {
  CipherSpec s(4, 4, {inversion_sbox()}, rotation_layer(4));
  s.desk_layer = rotation_layer(2);
  return s;
}

std::vector<Named> all_specs() {
  return {{"present", present_spec()},
          {"rectangle", rectangle_spec()},
          {"printcipher", printcipher_spec()},
          {"rotation-example", rotation_example_spec()}};
}

}  // namespace tbc::fixtures
