#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kchain/report.hpp"

namespace kchain::cli {

// exit codes: 0 success with all asserted checks passing, 1 check failure,
// 2 usage or input error
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline std::vector<Element> parse_element_list(const std::string& text) {
  std::vector<Element> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad element list '" + text + "' (comma-separated reprs)");
    out.push_back(static_cast<Element>(std::stoul(token)));
  }
  if (out.empty()) throw std::invalid_argument("empty element list");
  return out;
}

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  const auto parse_int = [&](const std::string& tok) {
    if (tok.empty() ||
        tok.find_first_not_of("0123456789", tok[0] == '-' ? 1 : 0) != std::string::npos)
      throw std::invalid_argument("bad rational '" + text + "' (use N or N/D)");
    return Int(tok);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string join_args(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) {
    if (!out.empty()) out.push_back(' ');
    out += a;
  }
  return out;
}

/// Random subset with the size itself drawn uniformly from [0, q^d].
inline PointSet sample_harness_set(const AlgebraicStructure& S, std::uint32_t d,
                                   std::uint64_t seed, std::uint64_t limit) {
  const std::uint64_t space = checked_space_size(S.q(), d, limit);
  SplitMix64 gen(seed);
  const std::uint64_t n = gen.below(space + 1);
  return sample_uniform(S, d, n, gen.next(), limit);
}

/// key,value flattening of top-level scalar payload fields.
inline std::string scalar_csv(const Json& payload) {
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [key, value] : payload.items()) {
    if (value.is_object() || value.is_array()) continue;
    out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  return out.str();
}

}  // namespace detail

struct Output {
  Json payload;
  std::optional<bool> pass;
  std::string structure;
  std::uint64_t seed = 0;
  std::string csv;  // optional tabular form; scalar_csv otherwise
};

/// Runs one subcommand; everything the harness prints goes through `out` and
/// `err` so tests can capture it.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact counting and verification for dot-product k-chains over F_q^d and Z_q^d"};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));

  // shared option storage; each subcommand binds the pieces it uses
  std::string set_path, structure_literal, alpha_text, beta_text, x_text, v_text, policy_text =
      "all";
  std::string domain_text = "space", tolerance_text = "1/10", sizes_text, out_path,
              max_ratio_text;
  std::uint32_t dim = 2, trials = 100, field_constant = 2, max_dim = 8, mn_k = 14, k_links = 2;
  std::uint64_t seed = 0, budget = kDefaultBruteBudget, enum_limit = kDefaultEnumerationLimit,
                size = 0;

  std::optional<Output> result;
  const std::string command_echo = detail::join_args(args);

  auto* count_cmd = app.add_subcommand("count", "count k-chains in a point-set file");
  count_cmd->add_option("--set", set_path, "point-set file")->required();
  count_cmd->add_option("--alpha", alpha_text, "comma-separated dot-product targets")->required();
  count_cmd->add_option("--policy", policy_text, "all | adjacent | pairwise");
  count_cmd->add_option("--budget", budget, "tuple-visit budget for pairwise counting");
  count_cmd->add_option("--seed", seed, "echoed into the report");
  count_cmd->callback([&] {
    const PointSet E = parse_pointset(detail::read_file(set_path));
    const ChainSpec spec{detail::parse_element_list(alpha_text),
                         distinctness_from_string(policy_text)};
    const CountReport r = spec.policy == Distinctness::PairwiseDistinct
                              ? count_chains_brute(E, spec, budget)
                              : count_chains_dp(E, spec);
    result = Output{to_json(r), true, E.structure.literal(), seed, {}};
  });

  auto* dec_cmd = app.add_subcommand("decompose", "orthogonality decomposition of q^k * count");
  dec_cmd->add_option("--set", set_path, "point-set file")->required();
  dec_cmd->add_option("--alpha", alpha_text, "comma-separated dot-product targets")->required();
  dec_cmd->add_option("--seed", seed, "echoed into the report");
  dec_cmd->callback([&] {
    const PointSet E = parse_pointset(detail::read_file(set_path));
    const auto rep =
        decompose(E, ChainSpec{detail::parse_element_list(alpha_text), Distinctness::AllTuples});
    result = Output{to_json(rep), rep.reconstructed, E.structure.literal(), seed, {}};
  });

  auto* charsum_cmd = app.add_subcommand("charsum", "exact character-sum evaluations");
  charsum_cmd->require_subcommand(1);
  auto* ssum_cmd = charsum_cmd->add_subcommand("ssum", "one-point sum S_{E,alpha}(x)");
  ssum_cmd->add_option("--set", set_path)->required();
  ssum_cmd->add_option("--alpha", alpha_text)->required();
  ssum_cmd->add_option("--x", x_text, "comma-separated point coordinates")->required();
  ssum_cmd->add_option("--seed", seed);
  ssum_cmd->callback([&] {
    const PointSet E = parse_pointset(detail::read_file(set_path));
    const auto alphas = detail::parse_element_list(alpha_text);
    if (alphas.size() != 1) throw std::invalid_argument("ssum takes a single alpha");
    const Point x = detail::parse_element_list(x_text);
    const std::int64_t v = s_sum(E, x, alphas[0]);
    result = Output{Json{{"value", v}, {"alpha", alphas[0]}, {"x", to_json(x)}},
                    true, E.structure.literal(), seed, {}};
  });
  auto* sl2_cmd = charsum_cmd->add_subcommand("sl2", "L2 mass of the one-point sums");
  sl2_cmd->add_option("--set", set_path)->required();
  sl2_cmd->add_option("--alpha", alpha_text)->required();
  sl2_cmd->add_option("--domain", domain_text, "set | space");
  sl2_cmd->add_option("--enum-limit", enum_limit);
  sl2_cmd->add_option("--seed", seed);
  sl2_cmd->callback([&] {
    const PointSet E = parse_pointset(detail::read_file(set_path));
    const auto alphas = detail::parse_element_list(alpha_text);
    if (alphas.size() != 1) throw std::invalid_argument("sl2 takes a single alpha");
    const SumDomain dom = domain_text == "set"     ? SumDomain::SetOnly
                          : domain_text == "space" ? SumDomain::WholeSpace
                                                   : throw std::invalid_argument(
                                                         "--domain must be set or space");
    const Int v = s_l2(E, alphas[0], dom, enum_limit);
    result = Output{Json{{"value", to_decimal(v)}, {"alpha", alphas[0]}, {"domain", domain_text}},
                    true, E.structure.literal(), seed, {}};
  });
  auto* tsum_cmd = charsum_cmd->add_subcommand("tsum", "two-link double character sum");
  tsum_cmd->add_option("--set", set_path)->required();
  tsum_cmd->add_option("--alpha", alpha_text)->required();
  tsum_cmd->add_option("--beta", beta_text)->required();
  tsum_cmd->add_option("--seed", seed);
  tsum_cmd->callback([&] {
    const PointSet E = parse_pointset(detail::read_file(set_path));
    const auto a = detail::parse_element_list(alpha_text);
    const auto b = detail::parse_element_list(beta_text);
    if (a.size() != 1 || b.size() != 1) throw std::invalid_argument("tsum takes single elements");
    const Int v = t_sum(E, a[0], b[0]);
    result = Output{Json{{"value", to_decimal(v)}, {"alpha", a[0]}, {"beta", b[0]}},
                    true, E.structure.literal(), seed, {}};
  });

  auto* lemma_cmd = app.add_subcommand("lemma-check", "randomized/exhaustive bound checkers");
  lemma_cmd->require_subcommand(1);

  const auto pair_lemma_handler = [&](bool ring) {
    const auto S = AlgebraicStructure::from_literal(structure_literal);
    if (ring != (S.kind() == StructureKind::IntegerRing))
      throw std::invalid_argument(ring ? "1dpR needs a Z:p^l structure"
                                       : "1dp needs a field structure");
    std::uint64_t checks = 0, passes = 0;
    Json failures = Json::array(), examples = Json::array();
    std::ostringstream csv;
    csv << "trial,gamma,lhs,pass\n";
    for (std::uint32_t t = 0; t < trials; ++t) {
      const PointSet E =
          detail::sample_harness_set(S, dim, derive_seed(seed, 0, t), enum_limit);
      for (const auto& rep : check_pair_lemma_all(E, /*units_only=*/ring)) {
        ++checks;
        passes += rep.pass;
        if (!rep.pass) failures.push_back(to_json(rep));
        if (examples.size() < 3) examples.push_back(to_json(rep));
        csv << t << ',' << rep.gamma << ',' << to_decimal(rep.lhs) << ',' << rep.pass << '\n';
      }
    }
    result = Output{Json{{"trials", trials},
                         {"d", dim},
                         {"checks", checks},
                         {"passes", passes},
                         {"failures", failures},
                         {"examples", examples}},
                    checks == passes, S.literal(), seed, csv.str()};
  };

  const auto tsum_lemma_handler = [&](bool ring) {
    const auto S = AlgebraicStructure::from_literal(structure_literal);
    if (ring != (S.kind() == StructureKind::IntegerRing))
      throw std::invalid_argument(ring ? "2dpR needs a Z:p^l structure"
                                       : "2dp needs a field structure");
    std::uint64_t checks = 0, passes = 0;
    Json failures = Json::array(), examples = Json::array();
    std::ostringstream csv;
    csv << "trial,alpha,beta,pass,ratio_approx\n";
    for (std::uint32_t t = 0; t < trials; ++t) {
      const std::uint64_t trial_seed = derive_seed(seed, 0, t);
      const PointSet E = detail::sample_harness_set(S, dim, trial_seed, enum_limit);
      std::vector<std::pair<Element, Element>> pairs;
      if (ring) {
        // the L2 factors depend on one alpha each; evaluate them once per unit
        const auto units = S.units();
        std::vector<Int> l2(units.size());
        for (std::size_t i = 0; i < units.size(); ++i)
          l2[i] = s_l2(E, units[i], SumDomain::WholeSpace, enum_limit);
        const std::uint32_t ell = S.e();
        const HalfPower bound{Int(2) * Int(E.size()), 2 * (dim * (2 * ell - 1) + 1), S.p()};
        const Int bound_sq = bound.squared();
        for (std::size_t i = 0; i < units.size(); ++i)
          for (std::size_t j = 0; j < units.size(); ++j) {
            ++checks;
            const bool ok = l2[i] * l2[j] <= bound_sq;
            passes += ok;
            const double denom = bound.value_approx();
            const double ratio =
                denom == 0.0 ? 0.0 : std::sqrt(approx(Int(l2[i] * l2[j]))) / denom;
            csv << t << ',' << units[i] << ',' << units[j] << ',' << ok << ',' << ratio << '\n';
            if (!ok)
              failures.push_back(Json{{"alpha", units[i]},
                                      {"beta", units[j]},
                                      {"lhs_squared", to_decimal(Int(l2[i] * l2[j]))},
                                      {"bound", to_json(bound)}});
          }
        continue;
      }
      SplitMix64 gen(mix64(trial_seed));
      const std::uint64_t q = S.q();
      if (q * q <= 64) {
        for (Element a = 0; a < q; ++a)
          for (Element b = 0; b < q; ++b) pairs.emplace_back(a, b);
      } else {
        for (int i = 0; i < 16; ++i)
          pairs.emplace_back(static_cast<Element>(gen.below(q)),
                             static_cast<Element>(gen.below(q)));
      }
      for (const auto& [a, b] : pairs) {
        const auto rep = check_tsum_lemma(E, a, b, field_constant, enum_limit);
        ++checks;
        passes += rep.pass;
        if (!rep.pass) failures.push_back(to_json(rep));
        if (examples.size() < 3) examples.push_back(to_json(rep));
        csv << t << ',' << a << ',' << b << ',' << rep.pass << ',' << rep.ratio_approx << '\n';
      }
    }
    result = Output{Json{{"trials", trials},
                         {"d", dim},
                         {"constant", ring ? 1 : field_constant},
                         {"checks", checks},
                         {"passes", passes},
                         {"failures", failures},
                         {"examples", examples}},
                    checks == passes, S.literal(), seed, csv.str()};
  };

  auto* l1dp = lemma_cmd->add_subcommand("1dp", "field pair bound, explicit constant 1");
  l1dp->add_option("--structure", structure_literal)->required();
  l1dp->add_option("--d", dim);
  l1dp->add_option("--trials", trials);
  l1dp->add_option("--seed", seed);
  l1dp->add_option("--enum-limit", enum_limit);
  l1dp->callback([&] { pair_lemma_handler(false); });

  auto* l1dpr = lemma_cmd->add_subcommand("1dpR", "ring pair bound, explicit constant 2");
  l1dpr->add_option("--structure", structure_literal)->required();
  l1dpr->add_option("--d", dim);
  l1dpr->add_option("--trials", trials);
  l1dpr->add_option("--seed", seed);
  l1dpr->add_option("--enum-limit", enum_limit);
  l1dpr->callback([&] { pair_lemma_handler(true); });

  auto* l2dp = lemma_cmd->add_subcommand("2dp", "field two-link bound, reported at pass@C");
  l2dp->add_option("--structure", structure_literal)->required();
  l2dp->add_option("--d", dim);
  l2dp->add_option("--trials", trials);
  l2dp->add_option("--seed", seed);
  l2dp->add_option("--c", field_constant, "constant C for the pass@C verdict");
  l2dp->add_option("--enum-limit", enum_limit);
  l2dp->callback([&] { tsum_lemma_handler(false); });

  auto* l2dpr = lemma_cmd->add_subcommand("2dpR", "ring two-link bound, explicit constant 2");
  l2dpr->add_option("--structure", structure_literal)->required();
  l2dpr->add_option("--d", dim);
  l2dpr->add_option("--trials", trials);
  l2dpr->add_option("--seed", seed);
  l2dpr->add_option("--enum-limit", enum_limit);
  l2dpr->callback([&] { tsum_lemma_handler(true); });

  auto* lrc = lemma_cmd->add_subcommand("rc", "row/column quadratic-form bound, exact rationals");
  lrc->add_option("--trials", trials);
  lrc->add_option("--seed", seed);
  lrc->add_option("--max-dim", max_dim);
  lrc->callback([&] {
    std::uint64_t checks = 0, passes = 0;
    Json failures = Json::array();
    std::ostringstream csv;
    csv << "trial,rows,cols,pass\n";
    for (std::uint32_t t = 0; t < trials; ++t) {
      SplitMix64 gen(derive_seed(seed, 0, t));
      const auto rnd_rat = [&gen] {
        const std::int64_t num = std::int64_t(gen.below(19)) - 9;
        const std::int64_t den = std::int64_t(gen.below(9)) + 1;
        return Rational(num, den);
      };
      const std::size_t m = 1 + gen.below(max_dim), n = 1 + gen.below(max_dim);
      std::vector<std::vector<RationalComplex>> c(m, std::vector<RationalComplex>(n));
      for (auto& row : c)
        for (auto& v : row) v = {rnd_rat(), Rational(0)};  // real entries keep |c_jk| rational
      std::vector<RationalComplex> z(m), y(n);
      for (auto& v : z) v = {rnd_rat(), rnd_rat()};
      for (auto& v : y) v = {rnd_rat(), rnd_rat()};
      const auto rep = check_rc(c, z, y);
      ++checks;
      passes += rep.pass;
      if (!rep.pass) failures.push_back(to_json(rep));
      csv << t << ',' << m << ',' << n << ',' << rep.pass << '\n';
    }
    result = Output{Json{{"trials", trials},
                         {"max_dim", max_dim},
                         {"checks", checks},
                         {"passes", passes},
                         {"failures", failures}},
                    checks == passes, "", seed, csv.str()};
  });

  auto* lmn = lemma_cmd->add_subcommand("mn", "support-pattern counting bound, exhaustive");
  lmn->add_option("--k", mn_k, "check every binary tuple up to this length");
  lmn->add_option("--seed", seed);
  lmn->callback([&] {
    std::uint64_t checks = 0, passes = 0;
    Json failures = Json::array();
    for (std::uint32_t k = 1; k <= mn_k; ++k)
      for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << k); ++bits) {
        std::vector<bool> pattern(k);
        for (std::uint32_t i = 0; i < k; ++i) pattern[i] = bits >> i & 1;
        const auto t = term_structure(pattern);
        ++checks;
        passes += t.closed_form_consistent && t.bound_holds;
        if (!(t.closed_form_consistent && t.bound_holds)) failures.push_back(to_json(t));
      }
    result = Output{Json{{"max_k", mn_k}, {"checks", checks}, {"passes", passes},
                         {"failures", failures}},
                    checks == passes, "", seed, {}};
  });

  auto* construct_cmd = app.add_subcommand("construct", "extremal point-set generators");
  construct_cmd->require_subcommand(1);
  const auto emit_pointset = [&](const PointSet& E) {
    const std::string text = serialize_pointset(E);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path);
      if (!f) throw std::invalid_argument("cannot write file '" + out_path + "'");
      f << text;
    }
  };
  auto* caxes = construct_cmd->add_subcommand("axes", "two coordinate axes, dot-zero rich");
  caxes->add_option("--structure", structure_literal)->required();
  caxes->add_option("--d", dim);
  caxes->add_option("--out", out_path);
  caxes->callback([&] {
    emit_pointset(axes_set(AlgebraicStructure::from_literal(structure_literal), dim));
  });
  auto* cshift = construct_cmd->add_subcommand("shifted", "two shifted lines, dot-alpha rich");
  cshift->add_option("--structure", structure_literal)->required();
  cshift->add_option("--alpha", alpha_text)->required();
  cshift->add_option("--out", out_path);
  cshift->callback([&] {
    const auto S = AlgebraicStructure::from_literal(structure_literal);
    const auto alphas = detail::parse_element_list(alpha_text);
    if (alphas.size() != 1) throw std::invalid_argument("shifted takes a single alpha");
    emit_pointset(shifted_lines_set(S, alphas[0]));
  });
  auto* cfam = construct_cmd->add_subcommand("erratum-family",
                                             "three-family ring set with p^3 forced 2-chains");
  cfam->add_option("--structure", structure_literal)->required();
  cfam->add_option("--alpha", alpha_text)->required();
  cfam->add_option("--beta", beta_text)->required();
  cfam->add_option("--out", out_path);
  cfam->callback([&] {
    const auto S = AlgebraicStructure::from_literal(structure_literal);
    const auto a = detail::parse_element_list(alpha_text);
    const auto b = detail::parse_element_list(beta_text);
    if (a.size() != 1 || b.size() != 1)
      throw std::invalid_argument("erratum-family takes single alpha/beta");
    emit_pointset(erratum_family_set(S, a[0], b[0]));
  });
  auto* cline = construct_cmd->add_subcommand("line", "all y with v . y = alpha in dimension 2");
  cline->add_option("--structure", structure_literal)->required();
  cline->add_option("--v", v_text, "comma-separated coordinates of v")->required();
  cline->add_option("--alpha", alpha_text)->required();
  cline->add_option("--out", out_path);
  cline->add_option("--enum-limit", enum_limit);
  cline->callback([&] {
    const auto S = AlgebraicStructure::from_literal(structure_literal);
    const auto a = detail::parse_element_list(alpha_text);
    if (a.size() != 1) throw std::invalid_argument("line takes a single alpha");
    const auto line = line_points(S, detail::parse_element_list(v_text), a[0], enum_limit);
    emit_pointset(make_pointset(S, 2, line.points));
  });

  auto* erratum_cmd =
      app.add_subcommand("erratum-check", "reproduce the Z_9^2 line-intersection counterexample");
  erratum_cmd->add_option("--seed", seed);
  erratum_cmd->callback([&] {
    const auto rep = erratum_counterexample();
    result = Output{to_json(rep), rep.pass, "Z:3^2", seed, {}};
  });

  auto* exp_cmd = app.add_subcommand("experiment", "seeded randomized experiments");
  exp_cmd->require_subcommand(1);
  auto* sweep_cmd = exp_cmd->add_subcommand("sweep", "main-term accuracy across set sizes");
  sweep_cmd->add_option("--structure", structure_literal)->required();
  sweep_cmd->add_option("--d", dim);
  sweep_cmd->add_option("--alpha", alpha_text)->required();
  sweep_cmd->add_option("--sizes", sizes_text, "comma-separated |E| values")->required();
  sweep_cmd->add_option("--trials", trials);
  sweep_cmd->add_option("--seed", seed);
  sweep_cmd->add_option("--tolerance", tolerance_text, "mean |rel error| bound, N/D");
  sweep_cmd->add_option("--enum-limit", enum_limit);
  sweep_cmd->callback([&] {
    SweepConfig config;
    config.structure_literal = structure_literal;
    config.d = dim;
    config.alphas = detail::parse_element_list(alpha_text);
    for (Element v : detail::parse_element_list(sizes_text)) config.sizes.push_back(v);
    config.trials = trials;
    config.master_seed = seed;
    config.tolerance = detail::parse_rational(tolerance_text);
    config.enumeration_limit = enum_limit;
    const auto rep = threshold_sweep(config);
    std::ostringstream csv;
    csv << "cell,requested_size,size,near_saturation,trial,seed,rel_error,rel_error_approx\n";
    for (std::size_t ci = 0; ci < rep.cells.size(); ++ci) {
      const auto& cell = rep.cells[ci];
      for (std::size_t t = 0; t < cell.rel_errors.size(); ++t)
        csv << ci << ',' << cell.requested_size << ',' << cell.size << ','
            << cell.near_saturation << ',' << t << ',' << cell.trial_seeds[t] << ','
            << to_decimal(cell.rel_errors[t]) << ',' << approx(cell.rel_errors[t]) << '\n';
    }
    result = Output{to_json(rep), rep.all_pass, structure_literal, seed, csv.str()};
  });
  auto* small_cmd = exp_cmd->add_subcommand("smallset", "planar small-set ratio harness");
  small_cmd->add_option("--structure", structure_literal)->required();
  small_cmd->add_option("--k", k_links);
  small_cmd->add_option("--size", size, "|E| per trial")->required();
  small_cmd->add_option("--trials", trials);
  small_cmd->add_option("--seed", seed);
  small_cmd->add_option("--max-ratio", max_ratio_text, "optional regression guard, N/D");
  small_cmd->add_option("--enum-limit", enum_limit);
  small_cmd->callback([&] {
    SmallSetSweepConfig config;
    config.structure_literal = structure_literal;
    config.k = k_links;
    config.size = size;
    config.trials = trials;
    config.master_seed = seed;
    config.enumeration_limit = enum_limit;
    const auto rep = smallset_sweep(config);
    std::optional<bool> pass = true;
    Json payload = to_json(rep);
    if (!max_ratio_text.empty()) {
      const Rational guard = detail::parse_rational(max_ratio_text);
      pass = rep.max_ratio <= guard;
      payload["max_ratio_guard"] = to_decimal(guard);
    }
    std::ostringstream csv;
    csv << "trial,seed,count,ratio,ratio_approx\n";
    for (std::size_t t = 0; t < rep.ratios.size(); ++t)
      csv << t << ',' << rep.trial_seeds[t] << ',' << to_decimal(rep.counts[t]) << ','
          << to_decimal(rep.ratios[t]) << ',' << approx(rep.ratios[t]) << '\n';
    result = Output{std::move(payload), pass, structure_literal, seed, csv.str()};
  });

  // let --format given after a subcommand reach the top-level option
  const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
    cmd->fallthrough();
    for (auto* sub : cmd->get_subcommands([](CLI::App*) { return true; }))
      enable_fallthrough(sub);
  };
  enable_fallthrough(&app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (!result) return kExitOk;  // construct subcommands write the set directly

  if (format == "csv") {
    out << (result->csv.empty() ? detail::scalar_csv(result->payload) : result->csv);
  } else {
    out << make_envelope(command_echo, result->structure, result->seed, result->payload,
                         result->pass)
               .dump(2)
        << '\n';
  }
  return result->pass.value_or(true) ? kExitOk : kExitCheckFailed;
}

}  // namespace kchain::cli
