#pragma once

// Text formats for S-boxes, layers and cipher specs.
//
//   S-box:  "m=<int>" then one hex string (m = 4 only) or 2^m decimals.
//   Layer:  "d=<int>" then "perm:" and d images, or "matrix:" and d rows of
//           d characters '0'/'1' (row i is the image of e_i, character j is
//           coordinate j).
//   Spec:   "key: value" lines; keys m, n, bricks, layer,
//           key_schedule_surjective and optionally desk_layer. Paths are
//           relative to the spec file.
//
// '#' starts a comment anywhere. Bit 0 is the least significant bit unless
// the caller reverses the convention with the msb0 helpers.

#include <filesystem>
#include <string>
#include <string_view>

#include "tbc/mixlayer.hpp"
#include "tbc/tbcipher.hpp"
#include "tbc/vboolfn.hpp"

namespace tbc::io {

SBox parse_sbox(std::string_view text);
LinearLayer parse_layer(std::string_view text);

std::string serialize_sbox(const SBox& f);
std::string serialize_layer(const LinearLayer& layer);

/// Reads a file; throws Error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

SBox load_sbox(const std::filesystem::path& path, bool msb0 = false);
LinearLayer load_layer(const std::filesystem::path& path, bool msb0 = false);

struct SpecFile {
  CipherSpec spec;
  std::vector<std::filesystem::path> brick_paths;
  std::filesystem::path layer_path;
  std::optional<std::filesystem::path> desk_layer_path;
};

SpecFile parse_spec(std::string_view text, const std::filesystem::path& base_dir,
                    bool msb0 = false);
SpecFile load_spec(const std::filesystem::path& path, bool msb0 = false);

/// Conjugates by bit reversal, i.e. reads coordinate 0 as the most
/// significant bit.
SBox reverse_bit_order(const SBox& f);
LinearLayer reverse_bit_order(const LinearLayer& layer);

/// FNV-1a 64-bit, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace tbc::io
