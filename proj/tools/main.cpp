// tbc: analysis commands for S-boxes, mixing layers and translation-based
// cipher specs.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tbc/error.hpp"
#include "tbc/fixtures.hpp"
#include "tbc/io.hpp"
#include "tbc/report.hpp"
#include "tbc/validate.hpp"

namespace fs = std::filesystem;
using tbc::report::Json;

namespace {

enum Exit { kOk = 0, kInputError = 1, kViolation = 2, kCapRefused = 3 };

struct Common {
  bool json = false;
  bool msb0 = false;
  bool timings = false;
};

class Stopwatch {
 public:
  void lap(const std::string& phase) {
    const auto now = std::chrono::steady_clock::now();
    laps_[phase] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  const Json& laps() const { return laps_; }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  Json laps_ = Json::object();
};

std::optional<tbc::SBox> fixture_sbox(const std::string& name) {
  namespace fx = tbc::fixtures;
  if (name == "present") return fx::present_sbox();
  if (name == "rectangle") return fx::rectangle_sbox();
  if (name == "printcipher") return fx::printcipher_sbox();
  if (name == "inversion") return fx::inversion_sbox();
  return std::nullopt;
}

std::optional<tbc::LinearLayer> fixture_layer(const std::string& name) {
  namespace fx = tbc::fixtures;
  if (name == "present") return fx::present_layer();
  if (name == "rectangle") return fx::rectangle_layer();
  if (name == "printcipher") return fx::printcipher_layer();
  if (name == "rotation") return fx::rotation_layer(4);
  return std::nullopt;
}

std::optional<tbc::CipherSpec> fixture_spec(const std::string& name) {
  for (auto& [n, spec] : tbc::fixtures::all_specs())
    if (n == name) return spec;
  return std::nullopt;
}

bool is_file(const std::string& source) {
  std::error_code ec;
  return fs::is_regular_file(source, ec);
}

void emit(Json doc, const Common& c, const Stopwatch& sw) {
  if (c.timings) doc["timings_ms"] = sw.laps();
  if (c.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << tbc::report::render_text(doc);
}

std::pair<unsigned, unsigned> parse_pair(const std::string& s, char sep, const char* what) {
  const auto pos = s.find(sep);
  try {
    if (pos == std::string::npos) throw std::invalid_argument(what);
    return {static_cast<unsigned>(std::stoul(s.substr(0, pos))),
            static_cast<unsigned>(std::stoul(s.substr(pos + 1)))};
  } catch (const std::logic_error&) {
    throw tbc::DomainError(std::string("malformed ") + what + " '" + s + "'");
  }
}

int run_sbox(const std::string& source, const std::string& r_range, bool group_check,
             const Common& c) {
  Stopwatch sw;
  tbc::report::Input in{source, {}};
  std::optional<tbc::SBox> f;
  if (is_file(source)) {
    in.text = tbc::io::read_file(source);
    f = tbc::io::parse_sbox(in.text);
    if (c.msb0) f = tbc::io::reverse_bit_order(*f);
  } else if ((f = fixture_sbox(source))) {
    in.text = tbc::io::serialize_sbox(*f);
  } else {
    throw tbc::Error("no such file or fixture '" + source + "'");
  }
  sw.lap("parse");
  tbc::report::SboxOptions opts;
  if (!r_range.empty()) opts.r_range = parse_pair(r_range, ':', "r range");
  opts.condition_2 = group_check;
  auto doc = tbc::report::sbox_report(*f, in, opts);
  sw.lap("analysis");
  emit(std::move(doc), c, sw);
  return kOk;
}

int run_layer(const std::string& source, const std::string& bricks, const Common& c) {
  Stopwatch sw;
  const auto [m, n] = parse_pair(bricks, ',', "brick shape");
  tbc::report::Input in{source, {}};
  std::optional<tbc::LinearLayer> layer;
  if (is_file(source)) {
    in.text = tbc::io::read_file(source);
    layer = tbc::io::parse_layer(in.text);
    if (c.msb0) layer = tbc::io::reverse_bit_order(*layer);
  } else if ((layer = fixture_layer(source))) {
    in.text = tbc::io::serialize_layer(*layer);
  } else {
    throw tbc::Error("no such file or fixture '" + source + "'");
  }
  const tbc::BrickPartition p(m, n);
  if (p.dim() != layer->dim())
    throw tbc::DimensionError("layer has dimension " + std::to_string(layer->dim()) +
                              " but the bricks give " + std::to_string(p.dim()));
  sw.lap("parse");
  auto doc = tbc::report::layer_report(*layer, p, in);
  sw.lap("analysis");
  emit(std::move(doc), c, sw);
  return kOk;
}

int run_cipher(const std::string& source, std::optional<unsigned> desk_n, std::uint64_t seed,
               const Common& c) {
  Stopwatch sw;
  tbc::report::Input in{source, {}};
  std::optional<tbc::CipherSpec> spec;
  if (is_file(source)) {
    in.text = tbc::io::read_file(source);
    spec = tbc::io::parse_spec(in.text, fs::path(source).parent_path(), c.msb0).spec;
  } else if ((spec = fixture_spec(source))) {
    in.text = source;
  } else {
    throw tbc::Error("no such file or fixture '" + source + "'");
  }
  sw.lap("parse");
  const tbc::Verdict v = tbc::analyze(*spec);
  sw.lap("theorems");
  std::optional<tbc::DeskCheck> desk;
  if (desk_n && v.model_applicable) {
    desk = tbc::desk_check(*spec, *desk_n, seed);
    sw.lap("desk_check");
  }
  auto doc = tbc::report::cipher_report(*spec, v, desk, in);
  if (desk_n) doc["seed"] = seed;
  emit(std::move(doc), c, sw);
  return kOk;
}

int run_validate(const std::string& suite, std::optional<std::uint64_t> trials,
                 std::uint64_t seed, const Common& c) {
  Stopwatch sw;
  const auto res = tbc::validate::run(suite, trials, seed);
  sw.lap(suite);
  emit(tbc::report::suite_report(res), c, sw);
  return res.passed() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis of translation-based block cipher components"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json, "Emit the report as JSON");
  app.add_flag("--msb0", common.msb0, "Read coordinate 0 as the most significant bit");
  app.add_flag("--timings", common.timings, "Add wall-clock timings to the report");

  std::string source, r_range, bricks, suite;
  bool group_check = false;
  std::optional<unsigned> desk_n;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 42;

  auto* sbox = app.add_subcommand("sbox", "Properties of one S-box");
  sbox->add_option("source", source, "S-box file or fixture name")->required();
  sbox->add_option("--r-range", r_range, "Anti-invariance levels lo:hi");
  sbox->add_flag("--with-group-check", group_check,
                 "Check Alt(F_2^m) <= <T, f T f^-1> (m <= 5)");

  auto* layer = app.add_subcommand("layer", "Proper and strongly proper tests for a layer");
  layer->add_option("source", source, "Layer file or fixture name")->required();
  layer->add_option("--bricks", bricks, "Brick shape m,n")->required();

  auto* cipher = app.add_subcommand("cipher", "Theorem engine and optional desk-scale check");
  cipher->add_option("source", source, "Spec file or fixture name")->required();
  cipher->add_option("--desk-check", desk_n, "Reduce to this many bricks and compute the group")
      ->check(CLI::PositiveNumber);
  cipher->add_option("--seed", seed, "Seed for the reduction layer");

  auto* validate = app.add_subcommand("validate", "Run a seeded property suite");
  validate->add_option("--suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(tbc::validate::suite_names()));
  validate->add_option("--trials", trials, "Number of random cases");
  validate->add_option("--seed", seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*sbox) return run_sbox(source, r_range, group_check, common);
    if (*layer) return run_layer(source, bricks, common);
    if (*cipher) return run_cipher(source, desk_n, seed, common);
    return run_validate(suite, trials, seed, common);
  } catch (const tbc::CapExceeded& e) {
    std::cerr << "tbc: refused: " << e.what() << "\n";
    return kCapRefused;
  } catch (const std::exception& e) {
    std::cerr << "tbc: " << e.what() << "\n";
    return kInputError;
  }
}
