#pragma once

// Structured reports. Every report is an ordered JSON document whose first
// key is "schema"; the text form is a deterministic rendering of the same
// document.

#include <optional>
#include <string>

#include <json.hpp>

#include "tbc/mixlayer.hpp"
#include "tbc/tbcipher.hpp"
#include "tbc/validate.hpp"
#include "tbc/vboolfn.hpp"

namespace tbc::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "tbc-report/1";

struct Input {
  std::string source;  // path or fixture name
  std::string text;    // serialized form, hashed into the report
};

struct SboxOptions {
  /// Levels reported for strong and plain anti-invariance; defaults to 1..m-1.
  std::optional<std::pair<unsigned, unsigned>> r_range;
  bool condition_2 = false;
};

Json sbox_report(const SBox& f, const Input& in, const SboxOptions& options = {});
Json layer_report(const LinearLayer& layer, const BrickPartition& p, const Input& in);
Json cipher_report(const CipherSpec& spec, const Verdict& verdict,
                   const std::optional<DeskCheck>& desk, const Input& in);
Json suite_report(const validate::SuiteResult& result);

Json subspace_json(const gf2::Subspace& s);
Json wall_json(const Wall& w);

/// Indented "key: value" lines; arrays of scalars stay on one line.
std::string render_text(const Json& doc);

}  // namespace tbc::report
