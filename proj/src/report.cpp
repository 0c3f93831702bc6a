#include "tbc/report.hpp"

#include <sstream>

#include "tbc/error.hpp"
#include "tbc/io.hpp"
#include "tbc/sboxprops.hpp"

namespace tbc::report {

namespace {

Json input_json(const Input& in) {
  Json j;
  j["source"] = in.source;
  j["fnv1a"] = io::fnv1a_hex(in.text);
  return j;
}

Json optional_u32(const std::optional<std::uint32_t>& v) { return v ? Json(*v) : Json(nullptr); }

std::string wall_label(std::uint32_t bricks) {
  std::string s;
  for (unsigned i = 0; i < 32; ++i)
    if ((bricks >> i) & 1u) s += (s.empty() ? "V_" : "+V_") + std::to_string(i + 1);
  return s;
}

Json brick_json(const BrickEvidence& e) {
  Json j;
  j["positions"] = e.positions;
  j["normalized"] = e.normalized;
  j["delta"] = e.delta;
  j["min_image_size"] = e.min_image_size;
  j["max_r_strong"] = e.max_r_strong;
  j["nonlinearity"] = e.nonlinearity;
  j["anti_crooked"] = e.anti_crooked;
  j["non_ac_direction"] = optional_u32(e.non_ac_direction);
  j["condition_2"] = e.condition_2 ? Json(*e.condition_2) : Json(nullptr);
  return j;
}

Json rule_json(const RuleHit& h) {
  Json j;
  j["rule"] = h.rule;
  if (h.r != 0) j["r"] = h.r;
  j["detail"] = h.detail;
  return j;
}

Json layer_evidence_json(const LayerEvidence& l) {
  Json j;
  j["proper"] = l.proper;
  j["invariant_wall"] = l.invariant_wall ? wall_json(*l.invariant_wall) : Json(nullptr);
  j["strongly_proper"] = l.strongly_proper;
  if (l.wall_pair)
    j["wall_pair"] = Json::array({wall_json(l.wall_pair->first), wall_json(l.wall_pair->second)});
  else
    j["wall_pair"] = nullptr;
  return j;
}

bool is_scalar_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (e.is_structured() || e.is_string()) return false;
  return true;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

void render(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !is_scalar_array(v) && !v.empty()) {
        os << pad << k << ":\n";
        render(v, indent + 1, os);
      } else if (is_scalar_array(v)) {
        os << pad << k << ": [";
        bool first = true;
        for (const auto& e : v) {
          os << (first ? "" : " ") << scalar_text(e);
          first = false;
        }
        os << "]\n";
      } else {
        os << pad << k << ": " << (v.is_structured() ? std::string(v.is_array() ? "[]" : "{}")
                                                     : scalar_text(v))
           << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (e.is_structured()) {
        os << pad << "-\n";
        render(e, indent + 1, os);
      } else {
        os << pad << "- " << scalar_text(e) << "\n";
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace

Json subspace_json(const gf2::Subspace& s) {
  Json j;
  j["dim"] = s.dim();
  Json basis = Json::array();
  for (const auto& v : s.basis()) basis.push_back(v.to_string());
  j["basis"] = basis;
  return j;
}

Json wall_json(const Wall& w) {
  Json j;
  j["label"] = wall_label(w.bricks);
  Json bricks = Json::array();
  for (unsigned i = 0; i < 32; ++i)
    if ((w.bricks >> i) & 1u) bricks.push_back(i);
  j["bricks"] = bricks;
  j["dim"] = w.subspace.dim();
  return j;
}

Json sbox_report(const SBox& f, const Input& in, const SboxOptions& options) {
  if (f.width() > kMaxPropertyWidth)
    throw CapExceeded("S-box reports are limited to width " + std::to_string(kMaxPropertyWidth));
  const unsigned m = f.width();
  const SBox g = normalize_zero(f);
  Json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "sbox";
  Json input = input_json(in);
  input["width"] = m;
  input["table"] = f.table();
  doc["input"] = input;

  Json props;
  props["normalized"] = !f.fixes_zero();
  props["normalized_table"] = g.table();

  const auto prof = differential_uniformity(f);
  Json diff;
  diff["delta"] = prof.delta;
  diff["min_image_size"] = prof.min_image_size;
  diff["image_sizes"] =
      std::vector<std::uint32_t>(prof.image_sizes.begin() + 1, prof.image_sizes.end());
  Json weak;
  for (const auto& [delta, holds] : prof.weakly_uniform) weak[std::to_string(delta)] = holds;
  diff["weakly_uniform"] = weak;
  props["differential"] = diff;

  const auto ai = anti_invariance(f);
  Json anti;
  anti["max_r_strong"] = ai.max_r_strong;
  anti["max_r_plain"] = ai.max_r_plain;
  if (ai.witness) {
    Json w;
    w["domain"] = subspace_json(ai.witness->domain);
    w["image"] = subspace_json(ai.witness->image);
    anti["witness"] = w;
  } else {
    anti["witness"] = nullptr;
  }
  unsigned lo = 1, hi = m - 1;
  if (options.r_range) {
    lo = std::max(1u, options.r_range->first);
    hi = std::min(m - 1, options.r_range->second);
  }
  Json strong = Json::object(), plain = Json::object();
  for (unsigned r = lo; r <= hi; ++r) {
    strong[std::to_string(r)] = is_strongly_r_anti_invariant(g, r).holds;
    plain[std::to_string(r)] = is_r_anti_invariant(g, r).holds;
  }
  anti["strong"] = strong;
  anti["plain"] = plain;
  props["anti_invariance"] = anti;

  const auto ac = is_anti_crooked(f);
  Json acj;
  acj["holds"] = ac.holds;
  acj["witness_direction"] = optional_u32(ac.witness_direction);
  props["anti_crooked"] = acj;

  props["nonlinearity"] = nonlinearity(f);
  std::vector<unsigned> degrees;
  for (std::uint32_t v = 1; v < f.size(); ++v) degrees.push_back(anf_degree(component(f, v)));
  props["anf_degrees"] = degrees;
  props["min_anf_degree"] = *std::min_element(degrees.begin(), degrees.end());
  if (options.condition_2) {
    if (m <= kMaxConditionTwoWidth)
      props["condition_2"] = check_condition_2(g);
    else
      props["condition_2"] = "not evaluated: width above " + std::to_string(kMaxConditionTwoWidth);
  }
  doc["properties"] = props;
  return doc;
}

Json layer_report(const LinearLayer& layer, const BrickPartition& p, const Input& in) {
  Json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "layer";
  Json input = input_json(in);
  input["m"] = p.brick_width();
  input["n"] = p.brick_count();
  input["d"] = p.dim();
  input["bit_permutation"] = layer.bit_permutation().has_value();
  doc["input"] = input;
  const auto proper = is_proper(layer, p);
  const auto strong = is_strongly_proper(layer, p);
  Json res;
  res["proper"] = proper.holds;
  res["invariant_wall"] = proper.witness ? wall_json(*proper.witness) : Json(nullptr);
  res["strongly_proper"] = strong.holds;
  res["wall_pair"] = strong.witness ? Json::array({wall_json(strong.witness->first),
                                                    wall_json(strong.witness->second)})
                                    : Json(nullptr);
  try {
    res["parity"] = to_string(layer_parity(layer));
  } catch (const CapExceeded&) {
    res["parity"] = nullptr;
  }
  doc["layer"] = res;
  return doc;
}

Json cipher_report(const CipherSpec& spec, const Verdict& v, const std::optional<DeskCheck>& desk,
                   const Input& in) {
  Json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "cipher";
  Json input = input_json(in);
  input["m"] = spec.brick_width();
  input["n"] = spec.brick_count();
  Json hashes = Json::array();
  for (const auto& b : spec.bricks()) hashes.push_back(io::fnv1a_hex(io::serialize_sbox(b)));
  input["brick_fnv1a"] = hashes;
  input["layer_fnv1a"] = io::fnv1a_hex(io::serialize_layer(spec.layer()));
  input["key_schedule_surjective"] = spec.key_schedule_surjective();
  doc["input"] = input;

  doc["model_applicable"] = v.model_applicable;
  if (v.model_applicable) {
    doc["layer"] = layer_evidence_json(v.layer);
    Json bricks = Json::array();
    for (const auto& e : v.bricks) bricks.push_back(brick_json(e));
    doc["bricks"] = bricks;
  }
  Json verdict;
  verdict["primitivity"] = to_string(v.primitivity);
  Json prules = Json::array();
  for (const auto& h : v.primitivity_rules) prules.push_back(rule_json(h));
  verdict["primitivity_rules"] = prules;
  verdict["group"] = to_string(v.identity);
  Json irules = Json::array();
  for (const auto& h : v.identity_rules) irules.push_back(rule_json(h));
  verdict["group_rules"] = irules;
  doc["verdict"] = verdict;
  doc["trail"] = v.trail;

  if (desk) {
    Json d;
    d["n"] = desk->n;
    d["degree"] = desk->degree;
    d["layer_source"] = desk->layer_source;
    d["layer_seed"] = desk->layer_seed ? Json(*desk->layer_seed) : Json(nullptr);
    d["layer_strongly_proper"] = desk->layer_strongly_proper;
    d["round_parity"] = to_string(desk->round_parity);
    d["round_affine"] = desk->round_affine;
    d["transitive"] = desk->transitive;
    d["primitive"] = desk->primitive;
    d["block_size"] = desk->blocks ? Json(desk->blocks->block_size()) : Json(nullptr);
    d["order"] = desk->order.str();
    d["contains_alt"] = to_string(desk->giant);
    d["classification"] =
        desk->classification ? Json(to_string(*desk->classification)) : Json(nullptr);
    doc["desk_check"] = d;
  }
  return doc;
}

Json suite_report(const validate::SuiteResult& r) {
  Json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "validate";
  doc["suite"] = r.suite;
  doc["seed"] = r.seed;
  doc["cases"] = r.cases;
  doc["violations"] = r.violations;
  Json counters = Json::object();
  for (const auto& [k, v] : r.counters) counters[k] = v;
  doc["counters"] = counters;
  doc["examples"] = r.examples;
  doc["passed"] = r.passed();
  return doc;
}

std::string render_text(const Json& doc) {
  std::ostringstream os;
  render(doc, 0, os);
  return os.str();
}

}  // namespace tbc::report
