// malcev -- batch front-end for the local-group workbench.
//
// Exit codes: 0 pass/success, 1 mathematical fail (witness emitted),
// 2 resource limit or unknown, 3 input error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "malcev/contractive.hpp"
#include "malcev/globalization.hpp"
#include "malcev/io.hpp"
#include "malcev/moves.hpp"
#include "malcev/word_eval.hpp"

namespace {

using namespace malcev;

constexpr int kPass = 0, kMathFail = 1, kUnknown = 2, kInputError = 3;

Json load_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    try {
      return Json::parse(arg);
    } catch (const Json::exception& e) {
      throw input_error(std::string("cannot parse inline JSON: ") + e.what());
    }
  }
  return load_json_file(arg);
}

Label parse_label_token(const std::string& tok) {
  if (!tok.empty() && (tok[0] == '-' || (tok[0] >= '0' && tok[0] <= '9'))) {
    try {
      std::size_t used = 0;
      const std::int64_t v = std::stoll(tok, &used);
      if (used == tok.size()) return int_label(v);
    } catch (...) {
    }
  }
  return Label{tok};
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::uint32_t> parse_index_word(const FiniteLocalGroup& g, const std::string& csv) {
  std::vector<std::uint32_t> w;
  for (const auto& tok : split_csv(csv)) {
    auto idx = g.index_of(parse_label_token(tok));
    if (!idx) {
      // integer-looking tokens may still label string carriers
      idx = g.index_of(Label{tok});
      if (!idx) throw input_error("label not in carrier: " + tok);
    }
    w.push_back(*idx);
  }
  return w;
}

SymWord parse_symbol_word(const std::vector<std::string>& names, const std::string& csv) {
  SymWord w;
  for (const auto& tok : split_csv(csv)) {
    bool found = false;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == tok) {
        w.push_back(static_cast<char32_t>(i));
        found = true;
        break;
      }
    if (!found) throw input_error("unknown generator symbol: " + tok);
  }
  return w;
}

std::string set_text(const FiniteLocalGroup& g, const std::vector<std::uint32_t>& values) {
  std::string out = "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += label_text(g.label(values[i]));
  }
  return out + "}";
}

int run_check_axioms(const std::string& group_file) {
  const FiniteLocalGroup g = local_group_from_json(load_json_file(group_file));
  const AxiomReport rep = check_axioms(g);
  if (rep.pass) {
    std::cout << "axioms: pass (" << g.size() << " elements)\n";
    return kPass;
  }
  for (const auto& v : rep.violations) {
    std::cout << "violated: " << v.axiom << " witness:";
    for (auto x : v.witness) std::cout << " " << label_text(g.label(x));
    std::cout << "\n";
  }
  return kMathFail;
}

int run_assoc(const std::string& group_file, const std::string& instance_file, int max_len,
              std::size_t samples, std::uint64_t seed, const std::string& out_file,
              bool witness_mode) {
  Json artifact;
  int exit_code = kPass;
  if (!group_file.empty()) {
    const FiniteLocalGroup g = local_group_from_json(load_json_file(group_file));
    const auto verdict = check_global_assoc(g, max_len);
    artifact["mode"] = "exhaustive";
    artifact["max_len"] = max_len;
    artifact["pass"] = verdict.pass;
    if (verdict.pass) {
      std::cout << "globally associative up to length " << max_len << " (exhaustive)\n";
    } else {
      const auto& w = *verdict.witness;
      std::cout << "witness word: ";
      for (std::size_t i = 0; i < w.word.size(); ++i)
        std::cout << (i ? "," : "") << label_text(g.label(w.word[i]));
      std::cout << " values: " << set_text(g, {w.value_a, w.value_b}) << "\n";
      artifact["witness"] = Json::object();
      artifact["witness"]["word"] = Json::array();
      for (auto x : w.word) artifact["witness"]["word"].push_back(label_to_json(g.label(x)));
      artifact["witness"]["values"] = Json::array(
          {label_to_json(g.label(w.value_a)), label_to_json(g.label(w.value_b))});
      exit_code = kMathFail;
    }
    if (witness_mode && verdict.pass) {
      std::cout << "no witness up to length " << max_len << "\n";
    }
  } else {
    const Instance inst = instance_from_json(load_json_file(instance_file));
    InstanceView view{&inst};
    const auto verdict = check_global_assoc_sampled(
        view, [&inst](SplitMix64& r) { return inst.sample_one(r); }, max_len, samples, seed);
    artifact["mode"] = "sampled";
    artifact["max_len"] = max_len;
    artifact["samples"] = samples;
    artifact["seed"] = seed;
    artifact["pass"] = verdict.pass;
    if (verdict.pass) {
      std::cout << "no multi-valued word found (sampled: " << samples << " words/length, seed "
                << seed << ")\n";
    } else {
      const auto& w = *verdict.witness;
      std::cout << "witness word:";
      for (const auto& x : w.word) std::cout << " " << inst.format(x);
      std::cout << " values: " << inst.format(w.value_a) << " " << inst.format(w.value_b) << "\n";
      exit_code = kMathFail;
    }
  }
  if (!out_file.empty()) save_json_file(out_file, artifact);
  return exit_code;
}

int run_eval(const std::string& group_file, const std::string& instance_file,
             const std::string& word_arg, const std::string& mode) {
  if (!group_file.empty()) {
    const FiniteLocalGroup g = local_group_from_json(load_json_file(group_file));
    const auto w = parse_index_word(g, word_arg);
    FiniteView view{&g};
    if (mode == "all") {
      const auto v = eval_all(view, std::span<const std::uint32_t>(w));
      std::cout << (v ? label_text(g.label(*v)) : std::string("undefined")) << "\n";
      return kPass;
    }
    std::cout << set_text(g, eval_some(view, std::span<const std::uint32_t>(w))) << "\n";
    return kPass;
  }
  const Instance inst = instance_from_json(load_json_file(instance_file));
  const Json jw = word_arg.empty() ? Json::array() : Json::parse(word_arg);
  std::vector<Elem> w;
  for (const auto& e : jw) w.push_back(elem_from_json(inst, e));
  InstanceView view{&inst};
  if (mode == "all") {
    const auto v = eval_all(view, std::span<const Elem>(w));
    std::cout << (v ? inst.format(*v) : std::string("undefined")) << "\n";
    return kPass;
  }
  const auto vals = eval_some(view, std::span<const Elem>(w));
  std::cout << "{";
  for (std::size_t i = 0; i < vals.size(); ++i) std::cout << (i ? "," : "") << inst.format(vals[i]);
  std::cout << "}\n";
  return kPass;
}

int run_globalize(const std::string& group_file, std::size_t max_rules, std::size_t max_rule_len,
                  const std::string& out_file) {
  const FiniteLocalGroup g = local_group_from_json(load_json_file(group_file));
  const Presentation p = present(g);
  const CompletionResult res = complete(p, max_rules, max_rule_len);
  std::cout << "generators: " << p.symbol_names.size() << " relations: " << p.relations.size()
            << " rules: " << res.system.rules().size() << " status: "
            << (res.status == CompletionStatus::complete
                    ? "complete"
                    : res.status == CompletionStatus::rule_limit ? "rule-limit" : "length-limit")
            << "\n";
  for (const Rule& r : res.system.rules())
    std::cout << "  " << res.system.render(r.lhs) << " -> " << res.system.render(r.rhs) << "\n";
  if (!out_file.empty()) save_json_file(out_file, rewrite_system_to_json(res.system));
  return res.status == CompletionStatus::complete ? kPass : kUnknown;
}

int run_nf(const std::string& rules_file, const std::string& word_arg) {
  const RewriteSystem rs = rewrite_system_from_json(load_json_file(rules_file));
  const SymWord w = parse_symbol_word(rs.symbol_names(), word_arg);
  if (rs.complete()) {
    std::cout << rs.render(rs.normal_form(w)) << "\n";
    return kPass;
  }
  std::cout << rs.render(rs.reduce(w)) << " (reduced, no confluence certificate)\n";
  return kUnknown;
}

int run_extend(const std::string& group_file, const std::string& rules_file,
               const std::string& target_file, const std::string& images_arg,
               const std::string& word_arg) {
  const FiniteLocalGroup g = local_group_from_json(load_json_file(group_file));
  const Presentation p = present(g);
  RewriteSystem rs = rules_file.empty() ? complete(p, 512, 64).system
                                        : rewrite_system_from_json(load_json_file(rules_file));
  if (rs.symbol_names() != p.symbol_names)
    throw input_error("rules file alphabet does not match the group presentation");
  const FiniteGroup target = finite_group_from_json(load_json_file(target_file));
  const Json ji = load_json_arg(images_arg);
  std::vector<std::uint32_t> images(g.size(), 0);
  std::vector<bool> seen(g.size(), false);
  for (const auto& pair : ji.is_array() ? ji : ji.at("images")) {
    if (!pair.is_array() || pair.size() != 2) throw input_error("images are [src, dst] pairs");
    auto src = g.index_of(label_from_json(pair[0]));
    if (!src) throw input_error("unknown source label in images");
    std::optional<std::uint32_t> dst;
    for (std::uint32_t i = 0; i < target.size(); ++i)
      if (target.labels()[i] == label_from_json(pair[1])) dst = i;
    if (!dst) throw input_error("unknown target label in images");
    images[*src] = *dst;
    seen[*src] = true;
  }
  for (std::uint32_t x = 0; x < g.size(); ++x)
    if (!seen[x]) throw input_error("images missing for some carrier elements");

  FiniteGroupView tv{&target};
  const auto ext = extend_morphism(g, p, rs, tv, std::span<const std::uint32_t>(images));
  const SymWord w = parse_symbol_word(rs.symbol_names(), word_arg);
  const std::uint32_t value = ext.eval(w);
  std::cout << "image: " << label_text(target.labels()[value])
            << " kernel: " << (ext.in_kernel(w) ? "yes" : "no");
  if (rs.complete()) std::cout << " normal-form: " << rs.render(rs.normal_form(w));
  std::cout << "\n";
  return kPass;
}

int run_normalize_trace(const std::string& group_file, const std::string& trace_file,
                        const std::string& out_file) {
  const FiniteLocalGroup g = local_group_from_json(load_json_file(group_file));
  const auto trace = trace_from_json(g, load_json_file(trace_file));
  FiniteView view{&g};
  auto [special, steps] = make_special(view, trace);
  std::cout << "special: " << (is_special(special) ? "yes" : "no") << " steps: " << steps
            << " words: " << special.words.size() << "\n";
  if (!out_file.empty()) save_json_file(out_file, trace_to_json(g, special));
  return kPass;
}

int run_contract_check(const std::string& group_file, const std::string& phi_arg,
                       const std::string& instance_file, const std::string& endo_arg,
                       std::size_t samples, std::uint64_t seed, std::uint32_t levels,
                       std::size_t budget) {
  PseudoAutoReport rep;
  if (!group_file.empty()) {
    const FiniteLocalGroup g = local_group_from_json(load_json_file(group_file));
    const Json jp = load_json_arg(phi_arg);
    std::vector<std::uint32_t> phi(g.size(), 0);
    std::vector<bool> seen(g.size(), false);
    for (const auto& pair : jp.is_array() ? jp : jp.at("map")) {
      auto src = g.index_of(label_from_json(pair.at(0)));
      auto dst = g.index_of(label_from_json(pair.at(1)));
      if (!src || !dst) throw input_error("unknown label in phi map");
      phi[*src] = *dst;
      seen[*src] = true;
    }
    for (std::uint32_t x = 0; x < g.size(); ++x)
      if (!seen[x]) throw input_error("phi map missing entries");
    std::vector<std::uint32_t> u(g.size());
    for (std::uint32_t i = 0; i < g.size(); ++i) u[i] = i;
    rep = check_pseudo_automorphism(g, phi, u);
  } else {
    const Instance inst = instance_from_json(load_json_file(instance_file));
    const Endo endo = endo_from_json(load_json_arg(endo_arg));
    rep = check_pseudo_automorphism(inst, endo, Ball::carrier(inst), samples, seed, levels,
                                    budget);
  }
  auto line = [](const char* name, const PseudoAutoPart& part) {
    std::cout << name << ": " << check_status_name(part.status)
              << (part.note.empty() ? "" : " (" + part.note + ")") << "\n";
  };
  line("morphism", rep.morphism);
  line("injective", rep.injective);
  line("open", rep.open);
  line("contraction", rep.contraction);
  switch (rep.status()) {
    case CheckStatus::pass: return kPass;
    case CheckStatus::fail: return kMathFail;
    case CheckStatus::unknown: return kUnknown;
  }
  return kUnknown;
}

int run_shrink(const std::string& instance_file, const std::string& endo_arg,
               const std::string& ball_arg, int l_min, int l_max, const std::string& out_file) {
  const Instance inst = instance_from_json(load_json_file(instance_file));
  const Endo endo = endo_from_json(load_json_arg(endo_arg));
  const Ball v = ball_arg.empty() ? default_compact_ball(inst) : ball_from_json(load_json_arg(ball_arg));
  const ShrinkResult res = shrink_neighborhood(inst, endo, v, l_min, l_max);
  std::cout << "U = " << res.u.describe(inst) << "\n";
  for (const auto& [l, b] : res.levels)
    std::cout << "  V_" << l << " = " << b.describe(inst) << "\n";
  std::cout << "symmetric: " << res.report.symmetric << " nested: " << res.report.nested
            << " image-steps: " << res.report.image_steps
            << " covers-carrier: " << res.report.covers_carrier
            << " base-of-identity: " << res.report.base_of_identity << "\n";
  std::cout << "U symmetric: " << res.report.u_symmetric
            << " UxU in Omega: " << res.report.u_times_u_in_omega
            << " phi(U) in U: " << res.report.phi_u_in_u << "\n";
  if (!out_file.empty()) {
    Json j;
    j["u"] = res.u.describe(inst);
    j["pass"] = res.pass();
    save_json_file(out_file, j);
  }
  return res.pass() ? kPass : kMathFail;
}

int run_pipeline(const std::string& instance_file, const std::string& endo_arg,
                 std::size_t samples, std::uint64_t seed, int max_len) {
  const Instance inst = instance_from_json(load_json_file(instance_file));
  const Endo endo = endo_from_json(load_json_arg(endo_arg));
  const StructureReport rep = structure_pipeline(inst, endo, samples, seed, max_len);
  for (const auto& s : rep.stages)
    std::cout << s.name << ": " << check_status_name(s.status)
              << (s.note.empty() ? "" : " (" + s.note + ")") << "\n";
  for (const auto& f : rep.connected) std::cout << "L: " << f.description << "\n";
  for (const auto& f : rep.disconnected) std::cout << "P: " << f.description << "\n";
  switch (rep.status()) {
    case CheckStatus::pass: return kPass;
    case CheckStatus::fail: return kMathFail;
    case CheckStatus::unknown: return kUnknown;
  }
  return kUnknown;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"malcev: local groups, word calculus, globalization, contractive structure"};
  app.require_subcommand(1);

  std::string group_file, instance_file, word_arg, out_file, rules_file, target_file;
  std::string images_arg, phi_arg, endo_arg, ball_arg, trace_file, mode = "some";
  int max_len = 6, l_min = -4, l_max = 4;
  std::size_t samples = 200, max_rules = 512, max_rule_len = 64, budget = 512;
  std::uint64_t seed = 0;
  std::uint32_t levels = 6;
  int exit_code = kPass;

  auto* ax = app.add_subcommand("check-axioms", "validate the local group axioms");
  ax->add_option("--group", group_file)->required();
  ax->callback([&] { exit_code = run_check_axioms(group_file); });

  auto* as = app.add_subcommand("assoc", "bounded global-associativity check");
  as->add_option("--group", group_file);
  as->add_option("--instance", instance_file);
  as->add_option("--max-len", max_len);
  as->add_option("--samples", samples);
  as->add_option("--seed", seed);
  as->add_option("--out", out_file);
  as->callback([&] {
    if (group_file.empty() == instance_file.empty())
      throw malcev::input_error("need exactly one of --group / --instance");
    exit_code = run_assoc(group_file, instance_file, max_len, samples, seed, out_file, false);
  });

  auto* sw = app.add_subcommand("search-witness",
                                "hunt for a multi-valued word (assoc with witness output)");
  sw->add_option("--group", group_file)->required();
  sw->add_option("--max-len", max_len);
  sw->add_option("--out", out_file);
  sw->callback([&] {
    exit_code = run_assoc(group_file, "", max_len, samples, seed, out_file, true);
  });

  auto* ev = app.add_subcommand("eval", "evaluate a word under all bracketings");
  ev->add_option("--group", group_file);
  ev->add_option("--instance", instance_file);
  ev->add_option("--word", word_arg);
  ev->add_option("--mode", mode)->check(CLI::IsMember({"some", "all"}));
  ev->callback([&] {
    if (group_file.empty() == instance_file.empty())
      throw malcev::input_error("need exactly one of --group / --instance");
    exit_code = run_eval(group_file, instance_file, word_arg, mode);
  });

  auto* gl = app.add_subcommand("globalize", "present and complete the globalization");
  gl->add_option("--group", group_file)->required();
  gl->add_option("--max-rules", max_rules);
  gl->add_option("--max-rule-len", max_rule_len);
  gl->add_option("--out", out_file);
  gl->callback([&] { exit_code = run_globalize(group_file, max_rules, max_rule_len, out_file); });

  auto* nf = app.add_subcommand("nf", "normal form of a generator word");
  nf->add_option("--rules", rules_file)->required();
  nf->add_option("--word", word_arg);
  nf->callback([&] { exit_code = run_nf(rules_file, word_arg); });

  auto* ex = app.add_subcommand("extend", "extend a morphism to the globalization");
  ex->add_option("--group", group_file)->required();
  ex->add_option("--rules", rules_file);
  ex->add_option("--target", target_file)->required();
  ex->add_option("--images", images_arg)->required();
  ex->add_option("--word", word_arg);
  ex->callback([&] {
    exit_code = run_extend(group_file, rules_file, target_file, images_arg, word_arg);
  });

  auto* nt = app.add_subcommand("normalize-trace", "make an admissible sequence special");
  nt->add_option("--group", group_file)->required();
  nt->add_option("--trace", trace_file)->required();
  nt->add_option("--out", out_file);
  nt->callback([&] { exit_code = run_normalize_trace(group_file, trace_file, out_file); });

  auto* cc = app.add_subcommand("contract-check", "contractive pseudo-automorphism check");
  cc->add_option("--group", group_file);
  cc->add_option("--phi", phi_arg);
  cc->add_option("--instance", instance_file);
  cc->add_option("--endo", endo_arg);
  cc->add_option("--samples", samples);
  cc->add_option("--seed", seed);
  cc->add_option("--levels", levels);
  cc->add_option("--budget", budget);
  cc->callback([&] {
    if (group_file.empty() == instance_file.empty())
      throw malcev::input_error("need exactly one of --group / --instance");
    exit_code = run_contract_check(group_file, phi_arg, instance_file, endo_arg, samples, seed,
                                   levels, budget);
  });

  auto* sh = app.add_subcommand("shrink", "V_l neighborhood construction");
  sh->add_option("--instance", instance_file)->required();
  sh->add_option("--endo", endo_arg)->required();
  sh->add_option("--ball", ball_arg);
  sh->add_option("--l-min", l_min);
  sh->add_option("--l-max", l_max);
  sh->add_option("--out", out_file);
  sh->callback([&] {
    exit_code = run_shrink(instance_file, endo_arg, ball_arg, l_min, l_max, out_file);
  });

  auto* pl = app.add_subcommand("pipeline", "full structure verification pipeline");
  pl->add_option("--instance", instance_file)->required();
  pl->add_option("--endo", endo_arg)->required();
  pl->add_option("--samples", samples);
  pl->add_option("--seed", seed);
  pl->add_option("--max-len", max_len);
  pl->callback([&] { exit_code = run_pipeline(instance_file, endo_arg, samples, seed, max_len); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  } catch (const malcev::limit_error& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return kUnknown;
  } catch (const malcev::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return exit_code;
}
