// Acceptance run: one PASS/FAIL line per criterion, each with its measured
// values and wall-clock budget. Exit status is nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "tbc/fixtures.hpp"
#include "tbc/mixlayer.hpp"
#include "tbc/permgroup.hpp"
#include "tbc/sboxprops.hpp"
#include "tbc/tbcipher.hpp"
#include "tbc/validate.hpp"

using namespace tbc;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.note << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    out.ok = false;
    out.note << " [over budget]";
  }
  if (!out.ok) ++failures;
  std::printf("%s %2d %s (%.2f s / %.0f s):%s\n", out.ok ? "PASS" : "FAIL", id, title, secs, budget_s,
              out.note.str().c_str());
  std::fflush(stdout);
}

std::string yes(bool b) { return b ? "true" : "false"; }

bool has_rule(const std::vector<RuleHit>& hits, const std::string& rule) {
  return std::any_of(hits.begin(), hits.end(), [&](const RuleHit& h) { return h.rule == rule; });
}

void suite_line(Outcome& o, const validate::SuiteResult& r) {
  o.note << " cases=" << r.cases << " violations=" << r.violations;
  for (const auto& [k, v] : r.counters) o.note << " " << k << "=" << v;
  o.expect(r.passed(), "zero violations");
  for (const auto& e : r.examples) o.note << " [" << e << "]";
}

}  // namespace

int main() {
  criterion(1, "PRESENT component facts", 5, [](Outcome& o) {
    const auto f = fixtures::present_sbox();
    const auto prof = differential_uniformity(f);
    const bool weak4 = is_weakly_delta_uniform(f, 4);
    const bool strong1 = is_strongly_r_anti_invariant(f, 1).holds;
    const BrickPartition p(4, 16);
    const auto proper = is_proper(fixtures::present_layer(), p);
    const auto strong = is_strongly_proper(fixtures::present_layer(), p);
    o.note << " delta=" << prof.delta << " weakly_4_uniform=" << yes(weak4)
           << " strongly_1_anti_invariant=" << yes(strong1) << " proper=" << yes(proper.holds)
           << " strongly_proper=" << yes(strong.holds);
    if (strong.witness)
      o.note << " (wall bricks 0x" << std::hex << strong.witness->first.bricks << " -> 0x"
             << strong.witness->second.bricks << std::dec << ")";
    o.expect(prof.delta == 4 && oracle::delta(f) == 4, "delta = 4");
    o.expect(weak4, "weakly 4-uniform");
    o.expect(strong1, "strongly 1-anti-invariant");
    o.expect(proper.holds, "proper");
    o.expect(strong.holds, "strongly proper");
  });

  criterion(2, "theorem engine reaches Alt on PRESENT, RECTANGLE, PRINTcipher", 10, [](Outcome& o) {
    for (const auto& [name, spec] :
         {std::pair{"present", fixtures::present_spec()}, {"rectangle", fixtures::rectangle_spec()},
          {"printcipher", fixtures::printcipher_spec()}}) {
      const auto v = analyze(spec);
      const bool prim_rule = !v.primitivity_rules.empty() &&
                             (v.primitivity_rules.front().rule == "uniformity-primitivity" ||
                              v.primitivity_rules.front().rule == "weak-uniformity-primitivity");
      o.note << " " << name << "=" << to_string(v.identity);
      if (!v.primitivity_rules.empty())
        o.note << " via " << v.primitivity_rules.front().rule << " r=" << v.primitivity_rules.front().r;
      o.note << (v.layer.strongly_proper ? " + strongly proper" : " + layer not strongly proper");
      if (has_rule(v.identity_rules, "small-brick-alt")) o.note << " + small-brick-alt";
      o.note << ";";
      o.expect(v.identity == GroupIdentity::proven_alt, std::string(name) + " proven_alt");
      o.expect(prim_rule && v.layer.strongly_proper && has_rule(v.identity_rules, "small-brick-alt"),
               std::string(name) + " rule trail");
    }
  });

  criterion(3, "desk-scale Alt(256) for the PRESENT brick", 600, [](Outcome& o) {
    const auto d = desk_check(fixtures::present_spec(), 2, kSeed);
    const BigInt expected = factorial(256) / 2;
    o.note << " layer=" << d.layer_source << " seed=" << kSeed
           << " strongly_proper=" << yes(d.layer_strongly_proper) << " degree=" << d.degree
           << " order==256!/2: " << yes(d.order == expected);
    o.expect(d.layer_strongly_proper, "layer strongly proper");
    o.expect(d.degree == 256, "degree 256");
    o.expect(d.order == expected, "order 256!/2");
  });

  criterion(4, "condition (2) groups", 1, [](Outcome& o) {
    for (const auto& [name, f] : {std::pair{"present", fixtures::present_sbox()},
                                  {"printcipher", fixtures::printcipher_sbox()}}) {
      const std::size_t n = f.size();
      auto gens = translation_generators(f.width());
      for (auto& c : conjugate_translations(f)) gens.push_back(c);
      GroupHandle g(n, gens);
      const BigInt order = bsgs_build(g);
      const bool prim = is_primitive(g).primitive;
      const BigInt half = factorial(static_cast<unsigned>(n)) / 2;
      o.note << " " << name << ": order=" << order << " primitive=" << yes(prim) << ";";
      o.expect(order >= half, std::string(name) + " order >= N!/2");
      o.expect(prim, std::string(name) + " primitive");
    }
  });

  criterion(5, "rotation example regression", 600, [](Outcome& o) {
    const auto spec = fixtures::rotation_example_spec();
    const BrickPartition p(4, 4);
    const bool proper = is_proper(spec.layer(), p).holds;
    const auto sp = is_strongly_proper(spec.layer(), p);
    const bool witness12 = sp.witness && sp.witness->first.bricks == 1 && sp.witness->second.bricks == 2;
    const auto d = desk_check(spec, 2, kSeed);
    const bool below = d.order < factorial(256) / 2;
    o.note << " proper=" << yes(proper) << " strongly_proper=" << yes(sp.holds)
           << " witness=(V_1,V_2): " << yes(witness12) << " degree=" << d.degree
           << " primitive=" << yes(d.primitive) << " affine=" << yes(d.round_affine)
           << " order=" << d.order << " class="
           << (d.classification ? to_string(*d.classification) : "-");
    o.expect(proper && !sp.holds && witness12, "layer verdicts");
    o.expect(d.degree == 256 && d.primitive, "primitive at degree 256");
    o.expect(below, "order < 256!/2");
    o.expect(d.classification == PrimitiveClass::product_action, "product_action");
  });

  criterion(6, "4-uniform 4-bit permutations are strongly 1-anti-invariant", 1800, [](Outcome& o) {
    suite_line(o, validate::fact_4uniform(1000000, kSeed));
  });

  criterion(7, "nonlinearity versus strong 1-anti-invariance", 600, [](Outcome& o) {
    const auto r = validate::nonlinearity_equivalence(10000, kSeed);
    suite_line(o, r);
    o.expect(r.cases == 40320 + 2 * 10000, "case count");
  });

  criterion(8, "V_a hull formula", 300, [](Outcome& o) {
    const auto r = validate::va_hull(100, kSeed);
    suite_line(o, r);
    o.expect(r.cases == 100 * (7 + 15 + 31), "case count");
  });

  criterion(9, "primitive <T, gTg^-1> are giants", 600, [](Outcome& o) {
    const auto r = validate::affine_proposition({3, 4, 5}, 1000, kSeed);
    suite_line(o, r);
    o.expect(r.cases == 3000, "case count");
  });

  criterion(10, "imprimitivity oracle agrees with the group engine", 1800, [](Outcome& o) {
    const auto r = validate::oracle_crosscheck(100, kSeed, 10);
    suite_line(o, r);
    o.expect(r.cases == 100, "case count");
  });

  criterion(11, "round permutations are even", 300, [](Outcome& o) {
    suite_line(o, validate::evenness(1000, kSeed));
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
