#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "kchain/charsums.hpp"
#include "kchain/constructions.hpp"
#include "kchain/experiments.hpp"
#include "kchain/lemmas.hpp"
#include "kchain/version.hpp"

namespace kchain {

using Json = nlohmann::json;

// Exact values serialize as decimal strings ("24", "-1/9"); floating point
// appears only in *_approx convenience fields.

inline Json to_json(const Point& p) {
  Json arr = Json::array();
  for (Element c : p) arr.push_back(c);
  return arr;
}

inline Json to_json(const std::vector<Point>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(to_json(p));
  return arr;
}

inline Json to_json(const Provenance& p) {
  Json j{{"structure", p.structure}, {"dimension", p.dim}, {"set_size", p.set_size}};
  if (p.seed) j["seed"] = *p.seed;
  return j;
}

inline Json to_json(const CountReport& r) {
  return Json{{"count", to_decimal(r.count)},
              {"main_term", to_decimal(r.main_term)},
              {"main_term_approx", approx(r.main_term)},
              {"relative_error", to_decimal(r.relative_error)},
              {"relative_error_approx", approx(r.relative_error)},
              {"policy", to_string(r.policy)},
              {"k", r.k},
              {"provenance", to_json(r.provenance)}};
}

inline Json to_json(const DecompositionReport& r) {
  Json terms = Json::array();
  for (const auto& [mask, value] : r.scaled_terms)
    terms.push_back(Json{{"support_mask", mask},
                         {"support_size", __builtin_popcount(mask)},
                         {"scaled", to_decimal(value)}});
  Json grouped = Json::array();
  for (const auto& g : r.grouped) grouped.push_back(to_decimal(g));
  return Json{{"k", r.k},
              {"q", r.q},
              {"set_size", r.set_size},
              {"scaled_total", to_decimal(r.scaled_total)},
              {"main_term_scaled", to_decimal(r.main_term_scaled)},
              {"terms", terms},
              {"grouped", grouped},
              {"reconstructed", r.reconstructed}};
}

inline Json to_json(const HalfPower& h) {
  return Json{{"coeff", to_decimal(h.coeff)},
              {"half_exp", h.half_exp},
              {"p", h.p},
              {"squared", to_decimal(h.squared())},
              {"value_approx", h.value_approx()}};
}

inline Json to_json(const PairLemmaReport& r) {
  return Json{{"gamma", r.gamma},
              {"lhs", to_decimal(r.lhs)},
              {"lhs_abs", to_decimal(r.lhs_abs)},
              {"bound", to_json(r.bound)},
              {"pass", r.pass},
              {"ratio_approx", r.ratio_approx}};
}

inline Json to_json(const TsumLemmaReport& r) {
  return Json{{"alpha_first", r.alpha_first},
              {"alpha_second", r.alpha_second},
              {"lhs_squared", to_decimal(r.lhs_squared)},
              {"t_value", to_decimal(r.t_value)},
              {"bound", to_json(r.bound)},
              {"constant", r.constant},
              {"pass", r.pass},
              {"ratio_approx", r.ratio_approx}};
}

inline Json to_json(const RcReport& r) {
  return Json{{"rows", r.rows},
              {"cols", r.cols},
              {"lhs_squared", to_decimal(r.lhs_squared)},
              {"rhs_squared", to_decimal(r.rhs_squared)},
              {"pass", r.pass}};
}

inline Json to_json(const TermStructure& t) {
  std::string bits;
  for (bool b : t.pattern) bits.push_back(b ? '1' : '0');
  return Json{{"k", t.k},
              {"pattern", bits},
              {"n", t.n},
              {"m", t.m},
              {"z", t.z},
              {"m_simulated", t.m_simulated},
              {"closed_form_consistent", t.closed_form_consistent},
              {"bound_holds", t.bound_holds}};
}

inline Json to_json(const LineSet& l) {
  return Json{{"v", to_json(l.v)}, {"alpha", l.alpha}, {"points", to_json(l.points)}};
}

inline Json to_json(const ErratumReport& r) {
  return Json{{"line_v", to_json(r.line_v)},
              {"line_w", to_json(r.line_w)},
              {"intersection", to_json(r.intersection)},
              {"intersection_size", r.intersection.size()},
              {"lines_match_expected", r.lines_match_expected},
              {"intersection_matches", r.intersection_matches},
              {"lines_differ", r.lines_differ},
              {"pass", r.pass}};
}

inline Json to_json(const SweepCell& c) {
  Json errors = Json::array(), errors_approx = Json::array(), seeds = Json::array();
  for (const auto& e : c.rel_errors) {
    errors.push_back(to_decimal(e));
    errors_approx.push_back(approx(e));
  }
  for (auto s : c.trial_seeds) seeds.push_back(s);
  Json j{{"requested_size", c.requested_size},
         {"size", c.size},
         {"near_saturation", c.near_saturation},
         {"skipped", c.skipped},
         {"trial_seeds", seeds},
         {"rel_errors", errors},
         {"rel_errors_approx", errors_approx},
         {"pairwise_deltas_available", c.pairwise_deltas_available},
         {"pass", c.pass}};
  if (c.pairwise_deltas_available) {
    Json deltas = Json::array();
    for (const auto& d : c.pairwise_deltas) deltas.push_back(to_decimal(d));
    j["pairwise_deltas"] = deltas;
  }
  if (c.skipped) j["skip_reason"] = c.skip_reason;
  if (!c.rel_errors.empty()) {
    j["mean_abs_error"] = to_decimal(c.mean_abs_error);
    j["mean_abs_error_approx"] = approx(c.mean_abs_error);
    j["min_error"] = to_decimal(c.min_error);
    j["max_error"] = to_decimal(c.max_error);
  }
  return j;
}

inline Json to_json(const SweepReport& r) {
  Json alphas = Json::array();
  for (Element a : r.config.alphas) alphas.push_back(a);
  Json cells = Json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  return Json{{"structure", r.config.structure_literal},
              {"d", r.config.d},
              {"k", r.k},
              {"q", r.q},
              {"alphas", alphas},
              {"trials", r.config.trials},
              {"master_seed", r.config.master_seed},
              {"tolerance", to_decimal(r.config.tolerance)},
              {"legend", r.legend},
              {"cells", cells},
              {"all_pass", r.all_pass}};
}

inline Json to_json(const SmallSetReport& r) {
  Json j{{"count", to_decimal(r.count)},
         {"k", r.k},
         {"cap_exponent", r.cap_exponent},
         {"ratio_cap", to_decimal(r.ratio_cap)},
         {"ratio_cap_approx", approx(r.ratio_cap)},
         {"provenance", to_json(r.provenance)}};
  if (r.ratio_square) {
    j["ratio_square"] = to_decimal(*r.ratio_square);
    j["ratio_square_approx"] = approx(*r.ratio_square);
  }
  return j;
}

inline Json to_json(const SmallSetSweep& s) {
  Json ratios = Json::array(), ratios_approx = Json::array(), seeds = Json::array(),
       counts = Json::array();
  for (const auto& r : s.ratios) {
    ratios.push_back(to_decimal(r));
    ratios_approx.push_back(approx(r));
  }
  for (const auto& c : s.counts) counts.push_back(to_decimal(c));
  for (auto v : s.trial_seeds) seeds.push_back(v);
  return Json{{"structure", s.config.structure_literal},
              {"k", s.config.k},
              {"size", s.config.size},
              {"trials", s.config.trials},
              {"master_seed", s.config.master_seed},
              {"cap_exponent", s.cap_exponent},
              {"trial_seeds", seeds},
              {"counts", counts},
              {"ratios", ratios},
              {"ratios_approx", ratios_approx},
              {"max_ratio", to_decimal(s.max_ratio)},
              {"max_ratio_approx", approx(s.max_ratio)}};
}

inline Json to_json(const ThresholdSpec& t) {
  return Json{{"setting", to_string(t.setting)},
              {"d", t.d},
              {"k", t.k},
              {"ell", t.ell},
              {"pattern", to_string(t.pattern)},
              {"exponent", to_decimal(t.exponent)},
              {"exponent_approx", approx(t.exponent)}};
}

/// Common machine-readable wrapper. Keys are stable across versions.
inline Json make_envelope(const std::string& command, const std::string& structure,
                          std::optional<std::uint64_t> seed, Json payload,
                          std::optional<bool> pass) {
  Json j{{"tool", kToolName},
         {"version", kVersion},
         {"command", command},
         {"payload", std::move(payload)}};
  if (!structure.empty()) j["structure"] = structure;
  if (seed) j["seed"] = *seed;
  if (pass) j["pass"] = *pass;
  return j;
}

}  // namespace kchain
