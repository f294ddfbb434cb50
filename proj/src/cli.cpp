#include "gsep/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gsep/census.hpp"
#include "gsep/errors.hpp"
#include "gsep/io.hpp"
#include "gsep/synthesis.hpp"
#include "gsep/unify.hpp"
#include "gsep/verification.hpp"
#include "gsep/worked_examples.hpp"

namespace gsep {

namespace {

struct Config {
  std::string format = "json";
  std::uint64_t budget_evals = kDefaultEvalBudget;
  std::uint64_t budget_candidates = SearchOptions{}.budget;
  std::uint64_t seed = 1;
  std::size_t workers = 0;
};

// A finished command: its JSON document, a text rendering and the exit code.
struct Output {
  Json json;
  std::string text;
  int status = 0;
};

std::string matrix_text(const BitVec& v) {
  std::string s;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 3; ++c) s += v.get(r * 3 + c) ? '1' : '0';
    if (r == 0) s += '/';
  }
  return s;
}

Json matrix_json(const BitVec& v) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < 2; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < 3; ++c) row.push_back(v.get(r * 3 + c) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

Output cmd_terms(const std::string& action, std::size_t k) {
  Output o;
  std::ostringstream text;
  if (action == "count") {
    const std::uint64_t n = k == 0 ? 0 : catalan(static_cast<unsigned>(k - 1));
    o.json = {{"k", k}, {"count", n}};
    text << n << '\n';
  } else {
    const auto terms = enumerate_ordered_terms(k);
    Json list = Json::array();
    for (const auto& t : terms) {
      list.push_back(render_term(t));
      text << render_term(t) << '\n';
    }
    o.json = {{"k", k}, {"count", terms.size()}, {"terms", std::move(list)}};
  }
  o.text = text.str();
  return o;
}

Output cmd_unify(const std::string& s_text, const std::string& t_text) {
  const Term s = parse_term(s_text);
  const Term t = parse_term(t_text);
  const UnifyOutcome u = unify(s, t);
  Output o{unify_to_json(u), {}, 0};
  std::ostringstream text;
  for (const auto& step : u.trace) {
    text << rule_name(step.rule) << ": " << step.consumed.to_string();
    if (!step.produced.empty()) {
      text << " =>";
      for (const auto& p : step.produced) text << ' ' << p.to_string() << ';';
    }
    text << '\n';
  }
  if (u.unifier) {
    text << "unifier:";
    for (const auto& [v, term] : u.unifier->bindings()) {
      text << ' ' << v.name() << " = " << render_term(term) << ';';
    }
    text << '\n';
  } else {
    text << "not unifiable\n";
  }
  o.text = text.str();
  return o;
}

Output cmd_separate(const std::string& s_text, const std::string& t_text, bool emit_table,
                    bool emit_affine, const Config& cfg) {
  const Term s = parse_term(s_text);
  const Term t = parse_term(t_text);
  SearchOptions opt;
  opt.budget = cfg.budget_candidates;
  const FiniteSeparability r = decide_finite_separability(s, t, opt);
  Output o{separability_to_json(r), {}, 0};
  std::ostringstream text;
  text << verdict_name(r.verdict) << " (" << construction_name(r.construction) << ")\n";
  if (r.unifier) {
    for (const auto& [v, term] : r.unifier->bindings()) {
      text << "  " << v.name() << " = " << render_term(term) << '\n';
    }
  }
  if (r.certificate) {
    const auto& c = *r.certificate;
    text << "  operation: " << c.opsum.to_string() << '\n' << "  lambda:";
    for (Register l : c.lambda) text << ' ' << l;
    text << "\n  registers: " << c.groupoid.dim() << '\n';
    if (emit_affine) {
      const auto vars = joint_variables(s, t);
      Json forms = Json::object();
      for (const auto& [name, term] : {std::pair{"s", s}, std::pair{"t", t}}) {
        const AffineTermForm f = term_affine_form(c.groupoid, term, vars);
        Json coeff = Json::object();
        for (std::size_t i = 0; i < vars.size(); ++i) {
          coeff[vars[i].name()] = f.coeff[i].to_rows();
        }
        forms[name] = {{"coefficients", std::move(coeff)}, {"constant", f.constant.to_string()}};
        text << "  " << name << " constant: " << f.constant.to_string() << '\n';
      }
      o.json["affine_forms"] = std::move(forms);
    }
    if (emit_table) {
      const CayleyGroupoid table = to_cayley(c.groupoid);
      o.json["table_csv"] = cayley_to_csv(table);
      text << cayley_to_csv(table);
    }
  }
  o.text = text.str();
  return o;
}

Output antiassoc_report(const AntiassocBuild& b, const AntiassocCheck& check) {
  Output o;
  Json factors = Json::array();
  std::ostringstream text;
  for (const auto& f : check.factors) {
    Json entry{{"first", render_term(b.terms[f.first])},
               {"second", render_term(b.terms[f.second])},
               {"compiled_matches", f.compiled_matches},
               {"parity", f.parity_ok},
               {"lifted_parity", f.lifted_ok},
               {"affine_separated", f.affine_separated}};
    entry["exhaustive_separated"] =
        f.exhaustive_separated ? Json(*f.exhaustive_separated) : Json(nullptr);
    entry["ok"] = f.ok();
    factors.push_back(std::move(entry));
    text << (f.ok() ? "pass " : "FAIL ") << render_term(b.terms[f.first]) << " vs "
         << render_term(b.terms[f.second])
         << (f.exhaustive_separated ? " (exhaustive)" : "") << '\n';
  }
  o.json = {{"k", b.k},
            {"factor_count", check.factors.size()},
            {"registers", b.groupoid.dim()},
            {"exhaustive_checked", check.exhaustive_count()},
            {"pairs_complete", check.pairs_complete},
            {"all_pass", check.ok()},
            {"factors", std::move(factors)}};
  text << check.factors.size() << " factors, " << check.exhaustive_count()
       << " checked exhaustively: " << (check.ok() ? "all pass" : "FAILURES") << '\n';
  o.text = text.str();
  o.status = check.ok() ? 0 : 1;
  return o;
}

Output cmd_antiassoc(const std::string& action, std::size_t k, const std::string& input,
                     const std::string& output, const Config& cfg) {
  if (action == "build") {
    const AntiassocBuild b = build_k_antiassociative(k);
    Output o{antiassoc_to_json(b), {}, 0};
    std::ostringstream text;
    text << b.factors.size() << " factors, " << b.groupoid.dim() << " registers\n";
    for (const auto& f : b.factors) {
      text << render_term(b.terms[f.first]) << " vs " << render_term(b.terms[f.second]) << ": "
           << f.certificate.opsum.to_string() << " (shift " << f.shift << ")\n";
    }
    o.text = text.str();
    if (!output.empty()) {
      std::ofstream file(output);
      if (!file) throw InvalidArgument("cannot write " + output);
      file << o.json.dump(1) << '\n';
    }
    return o;
  }
  AntiassocBuild b = [&] {
    if (input.empty()) return build_k_antiassociative(k);
    std::ifstream file(input);
    if (!file) throw InvalidArgument("cannot read " + input);
    Json j;
    try {
      file >> j;
    } catch (const Json::exception& e) {
      throw InvalidArgument(input + " is not valid JSON: " + e.what());
    }
    return antiassoc_from_json(j);
  }();
  return antiassoc_report(b, verify_antiassoc_build(b, cfg.budget_evals));
}

Output cmd_census(std::size_t n, bool allow_long, const std::string& checkpoint, bool progress,
                  const Config& cfg) {
  CensusOptions opt;
  opt.workers = cfg.workers;
  opt.allow_long = allow_long;
  opt.progress = progress;
  if (!checkpoint.empty()) opt.checkpoint = checkpoint;
  const CensusReport r = census(n, opt);
  std::ostringstream text;
  text << "n=" << r.n << ": " << r.antiassociative_count << " antiassociative of "
       << r.total_tables << " tables, " << r.literally_deranged_count
       << " literally deranged, " << r.elapsed_seconds << " s on " << r.workers << " workers\n";
  return {census_to_json(r), text.str(), 0};
}

Json check_entry(const std::string& name, Json expected, Json actual) {
  const bool match = expected == actual;
  return {{"name", name}, {"expected", std::move(expected)}, {"actual", std::move(actual)},
          {"match", match}};
}

Output finish_demo(const std::string& name, Json checks, Json extra = Json::object()) {
  Output o;
  bool all = true;
  std::ostringstream text;
  for (const auto& c : checks) {
    all = all && c["match"].get<bool>();
    text << (c["match"].get<bool>() ? "ok   " : "DIFF ") << c["name"].get<std::string>()
         << ": expected " << c["expected"].dump() << ", got " << c["actual"].dump() << '\n';
  }
  o.json = {{"demo", name}, {"all_match", all}, {"checks", std::move(checks)}};
  for (auto& [key, value] : extra.items()) o.json[key] = value;
  o.text = text.str();
  o.status = all ? 0 : 1;
  return o;
}

Output demo_affine_example() {
  const MatrixAffineExample ex = matrix_affine_example();
  const BitVec ab_c = ex.alpha * (ex.beta * ex.c);
  const BitVec aab_c = ex.alpha * (ex.alpha * (ex.beta * ex.c));
  VecEnvironment zero;
  for (const auto& v : joint_variables(ex.s, ex.t)) zero.emplace(v, BitVec(6));
  const BitVec s0 = eval_term_vec(ex.groupoid, ex.s, zero);
  const BitVec t0 = eval_term_vec(ex.groupoid, ex.t, zero);
  Json checks = Json::array();
  checks.push_back(check_entry("alpha.beta(c)", matrix_json(matrix2x3({{1, 1, 0}, {1, 1, 0}})),
                               matrix_json(ab_c)));
  checks.push_back(check_entry("alpha^2.beta(c)",
                               matrix_json(matrix2x3({{1, 1, 1}, {1, 1, 1}})),
                               matrix_json(aab_c)));
  checks.push_back(
      check_entry("s(0)", matrix_json(matrix2x3({{0, 1, 1}, {1, 1, 0}})), matrix_json(s0)));
  checks.push_back(
      check_entry("t(0)", matrix_json(matrix2x3({{0, 1, 0}, {1, 1, 1}})), matrix_json(t0)));
  const AffineDecision d = affine_separation_decision(ex.groupoid, ex.s, ex.t);
  checks.push_back(check_entry("affine decision", "separated",
                               d.separated ? "separated" : "not separated"));
  return finish_demo("affine-example", std::move(checks),
                     {{"s", render_term(ex.s)}, {"t", render_term(ex.t)},
                      {"s0_text", matrix_text(s0)}, {"t0_text", matrix_text(t0)}});
}

Output demo_deranged_product(const Config& cfg) {
  const auto terms = enumerate_ordered_terms(4);
  const CayleyGroupoid z2 = left_deranged_z2();
  const CayleyGroupoid z3 = right_deranged_z3();
  const CayleyGroupoid prod = product_groupoid(z2, z3);
  // Classes of terms identified by each factor.
  const int z2_class[] = {0, 1, 1, 0, 0};
  const int z3_class[] = {0, 0, 1, 1, 2};
  Json checks = Json::array();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const std::string pair = "t" + std::to_string(i + 1) + " vs t" + std::to_string(j + 1);
      const bool e2 = z2_class[i] != z2_class[j];
      const bool e3 = z3_class[i] != z3_class[j];
      checks.push_back(check_entry(
          pair,
          {{"Z2", e2}, {"Z3", e3}, {"product", true}},
          {{"Z2", separates_exhaustive(z2, terms[i], terms[j], cfg.budget_evals).separated},
           {"Z3", separates_exhaustive(z3, terms[i], terms[j], cfg.budget_evals).separated},
           {"product",
            separates_exhaustive(prod, terms[i], terms[j], cfg.budget_evals).separated}}));
    }
  }
  Json names = Json::array();
  for (const auto& t : terms) names.push_back(render_term(t));
  return finish_demo("deranged-product", std::move(checks), {{"terms", std::move(names)}});
}

Output demo_cycle_example() {
  const Term s = cycle_example_s();
  const Term t = cycle_example_t();
  Json checks = Json::array();
  const auto w = find_cycle(s, t);
  if (!w) {
    checks.push_back(check_entry("cycle found", true, false));
    return finish_demo("figure2", std::move(checks));
  }
  Json p = Json::array();
  Json q = Json::array();
  Json f = Json::array();
  Json vars = Json::array();
  for (std::size_t i = 0; i < w->k(); ++i) {
    vars.push_back(w->entries[i].var.name());
    p.push_back(w->p[i].display());
    q.push_back(w->q[i].display());
    f.push_back(w->f[i]);
  }
  checks.push_back(check_entry("variables", {"y0", "y1", "y2"}, vars));
  checks.push_back(check_entry("p", {"ll", "lr", "rr"}, p));
  checks.push_back(check_entry("q", {"r", "^", "r"}, q));
  checks.push_back(check_entry("f", {0, 1, 1}, f));
  const Certificate c = synth_cycle(*w);
  std::vector<std::string> summands;
  for (const auto& op : c.opsum.summands()) summands.push_back(op.to_string());
  std::sort(summands.begin(), summands.end());
  std::vector<std::string> expected{"||3,ll,0||", "||4,lr,1||", "||4,rr,2||", "||4,r,3||'",
                                    "||3,r,4||"};
  std::sort(expected.begin(), expected.end());
  checks.push_back(check_entry("summands", expected, summands));
  checks.push_back(check_entry("parity certificate", true,
                               verify_parity_certificate(c.groupoid, s, t, c.lambda)));
  return finish_demo("figure2", std::move(checks),
                     {{"s", render_term(s)},
                      {"t", render_term(t)},
                      {"cycle", cycle_to_json(*w)},
                      {"opsum_text", c.opsum.to_string()}});
}

Output cmd_lemmas(std::size_t trials, const Config& cfg) {
  const LemmaReport r = lemma_harness(trials, cfg.seed);
  Output o;
  o.json = {{"trials", r.trials},
            {"exhaustive_trials", r.exhaustive_trials},
            {"assignments_checked", r.assignments_checked},
            {"path_lemma_failures", r.path_lemma_failures},
            {"tweaked_lemma_failures", r.tweaked_lemma_failures},
            {"failures", r.failures},
            {"ok", r.ok()}};
  std::ostringstream text;
  text << r.trials << " instances (" << r.exhaustive_trials << " exhaustive), "
       << r.assignments_checked << " assignments: "
       << (r.ok() ? "all hold" : "FAILURES") << '\n';
  for (const auto& f : r.failures) text << "  " << f << '\n';
  o.text = text.str();
  o.status = r.ok() ? 0 : 1;
  return o;
}

void emit_error(const Config& cfg, std::ostream& out, std::ostream& err, const std::string& kind,
                const std::string& message) {
  if (cfg.format == "text") {
    err << "error (" << kind << "): " << message << '\n';
  } else {
    out << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2) << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Separating groupoid terms with finite groupoids", "gsep"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--budget-evals", cfg.budget_evals, "Assignments per exhaustive check")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  app.add_option("--budget-candidates", cfg.budget_candidates, "Op sums tried by the search")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  app.add_option("--seed", cfg.seed, "Seed for randomized harnesses");
  app.add_option("--workers", cfg.workers, "Census worker threads (0: all cores)");

  std::string action;
  std::size_t k = 0;
  std::size_t n = 0;
  std::string s_text;
  std::string t_text;
  bool emit_table = false;
  bool emit_affine = false;
  bool allow_long = false;
  bool progress = false;
  std::string checkpoint;
  std::string input;
  std::string output;
  std::string demo;
  std::size_t trials = 1000;

  auto* terms = app.add_subcommand("terms", "Enumerate or count ordered terms");
  terms->add_option("action", action)->required()->check(CLI::IsMember({"enumerate", "count"}));
  terms->add_option("-k", k, "Number of variables")->required()->check(CLI::Range(1, 1000));

  auto* unify_cmd = app.add_subcommand("unify", "Unify two terms and show the derivation");
  unify_cmd->add_option("s", s_text)->required();
  unify_cmd->add_option("t", t_text)->required();

  auto* separate = app.add_subcommand("separate", "Decide finite separability of two terms");
  separate->add_option("s", s_text)->required();
  separate->add_option("t", t_text)->required();
  separate->add_flag("--emit-table", emit_table, "Include the Cayley table as CSV");
  separate->add_flag("--emit-affine", emit_affine, "Include the affine forms of both terms");

  auto* antiassoc = app.add_subcommand("antiassoc", "Build or verify a k-antiassociative groupoid");
  antiassoc->add_option("action", action)->required()->check(CLI::IsMember({"build", "verify"}));
  antiassoc->add_option("-k", k)->required()->check(CLI::Range(3, 1000));
  antiassoc->add_option("--input", input, "Build JSON to verify");
  antiassoc->add_option("--output", output, "Write the build JSON here");

  auto* census_cmd = app.add_subcommand("census", "Count antiassociative Cayley tables");
  census_cmd->add_option("-n", n)->required()->check(CLI::Range(2, 4));
  census_cmd->add_flag("--long", allow_long, "Allow the order-4 run");
  census_cmd->add_option("--checkpoint", checkpoint, "Checkpoint file");
  census_cmd->add_flag("--progress", progress, "Progress lines on stderr");

  auto* demo_cmd = app.add_subcommand("demo", "Reproduce a worked example");
  demo_cmd->add_option("name", demo)
      ->required()
      ->check(CLI::IsMember({"affine-example", "deranged-product", "figure2"}));

  auto* lemmas = app.add_subcommand("lemmas", "Random checks of the component-transfer lemmas");
  lemmas->add_option("--trials", trials)->check(CLI::Range(1, 100000000));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(cfg, out, err, "usage", e.what());
    return 2;
  }

  try {
    Output o;
    if (*terms) {
      o = cmd_terms(action, k);
    } else if (*unify_cmd) {
      o = cmd_unify(s_text, t_text);
    } else if (*separate) {
      o = cmd_separate(s_text, t_text, emit_table, emit_affine, cfg);
    } else if (*antiassoc) {
      o = cmd_antiassoc(action, k, input, output, cfg);
    } else if (*census_cmd) {
      o = cmd_census(n, allow_long, checkpoint, progress, cfg);
    } else if (*demo_cmd) {
      if (demo == "affine-example") o = demo_affine_example();
      else if (demo == "deranged-product") o = demo_deranged_product(cfg);
      else o = demo_cycle_example();
    } else {
      o = cmd_lemmas(trials, cfg);
    }
    if (cfg.format == "text") {
      out << o.text;
    } else {
      out << o.json.dump(2) << '\n';
    }
    return o.status;
  } catch (const Error& e) {
    emit_error(cfg, out, err, e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error(cfg, out, err, "internal", e.what());
    return 1;
  }
}

}  // namespace gsep
