#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>

#include "cantorforge/construction.hpp"
#include "cantorforge/ends.hpp"
#include "cantorforge/errors.hpp"
#include "cantorforge/io.hpp"
#include "cantorforge/verify.hpp"

namespace cantorforge::cli {

namespace {

std::size_t resolve_budget(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CANTORFORGE_BUDGET"); env && *env) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (*end != '\0' || value == 0) throw SpecValueError(std::string("CANTORFORGE_BUDGET is not a positive integer: ") + env);
    return static_cast<std::size_t>(value);
  }
  return kDefaultBudget;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path + " for writing");
  file << text;
}

std::vector<std::uint64_t> parse_labels(const std::string& text) {
  std::vector<std::uint64_t> labels;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || v == 0) throw SpecSyntaxError("labels must be positive integers: '" + tok + "'");
    labels.push_back(v);
  }
  return labels;
}

std::string join(const std::vector<std::uint32_t>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
  return s;
}

struct BuildArgs {
  std::string spec;
  std::uint32_t stages = 1;
  std::string out;
  std::optional<std::size_t> budget;
};

struct VerifyArgs {
  std::string spec = "2";
  std::uint32_t stages = 7;
  std::optional<std::size_t> corpus;
  std::uint64_t seed = 0;
  std::string fault;
  std::optional<std::size_t> budget;
};

struct EndsArgs {
  std::string spec;
  std::string labels;
  std::vector<std::string> chain_hops;
  std::uint32_t depth = 1;
  std::optional<std::size_t> budget;
};

struct ExportArgs {
  std::string spec;
  std::uint32_t stages = 1;
  std::string format = "dot";
  std::optional<std::uint64_t> highlight;
  std::string out;
  std::optional<std::size_t> budget;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
  const GenusSpec spec = parse_spec(a.spec);
  auto stages = build_stages(spec, a.stages, resolve_budget(a.budget));
  emit(io::to_json(io::make_document(spec, std::move(stages))), a.out, out);
  return kOk;
}

void print_report(const VerifyReport& report, std::ostream& out) {
  out << "spec " << report.spec << ", stages " << report.stages << "\n";
  for (const auto& c : report.checks) {
    out << "  " << std::left << std::setw(18) << c.name << (c.passed ? "pass" : "FAIL");
    if (!c.passed) out << "  " << c.detail;
    out << "\n";
  }
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.budget = resolve_budget(a.budget);
  if (a.fault == "parity") {
    options.fault.flip_parity = true;
  } else if (a.fault == "chain5") {
    options.fault.chain_length = 5;
  } else if (!a.fault.empty()) {
    throw SpecSyntaxError("unknown fault '" + a.fault + "' (expected parity or chain5)");
  }

  std::vector<GenusSpec> specs;
  if (a.corpus) {
    specs = spec_corpus(*a.corpus, a.seed);
  } else {
    specs.push_back(parse_spec(a.spec));
  }

  std::size_t failures = 0;
  for (const auto& spec : specs) {
    const VerifyReport report = verify_construction(spec, a.stages, options);
    print_report(report, out);
    if (const CheckResult* bad = report.first_failure(); bad && failures++ == 0) {
      err << "first counterexample (spec " << report.spec << ", " << bad->name << "): " << bad->detail << "\n";
    }
  }
  out << (failures ? "FAILED " : "passed ") << specs.size() - failures << "/" << specs.size() << " specs\n";
  return failures ? kInvariantFailure : kOk;
}

int cmd_ends(const EndsArgs& a, std::ostream& out) {
  const GenusSpec spec = parse_spec(a.spec);
  const Construction engine(spec, resolve_budget(a.budget));

  std::vector<std::pair<std::string, EndPolicy>> ends;
  for (auto j : parse_labels(a.labels)) ends.emplace_back("x_" + std::to_string(j), dense_point(engine, j));
  for (const auto& rule : a.chain_hops) ends.emplace_back("hop", chain_hop_end({}, ChainHopRule::parse(rule)));

  // Evaluate everything first so a shallow depth fails before any output.
  struct Row {
    std::string name, policy, profile, sup, upper, kind, exact, provenance;
  };
  std::vector<Row> rows;
  for (const auto& [name, end] : ends) {
    const GenusProfile profile = genus_profile(engine, end, a.depth);
    const ExtendedGenus upper = local_genus_upper(engine, end, a.depth);
    const EndClassification cls = classify(spec, end);
    std::string upper_text = upper.to_string();
    if (upper.is_infinite()) {
      upper_text += " (unbounded, sup " + std::to_string(profile.sup_so_far) + " at depth " + std::to_string(a.depth) + ")";
    }
    rows.push_back({name, end.describe(), join(profile.genera), std::to_string(profile.sup_so_far), upper_text,
                    cls.kind == EndClassification::Kind::kDense ? "dense(" + std::to_string(cls.label) + ")" : "non_dense",
                    cls.exact_to_string(), cls.provenance});
  }
  out << "end\tpolicy\tprofile\tsup\tlocal_genus_upper\tclass\texact\tprovenance\n";
  for (const auto& r : rows) {
    out << r.name << '\t' << r.policy << '\t' << r.profile << '\t' << r.sup << '\t' << r.upper << '\t' << r.kind << '\t'
        << r.exact << '\t' << r.provenance << '\n';
  }
  return kOk;
}

int cmd_export(const ExportArgs& a, std::ostream& out) {
  if (a.format != "dot") throw SpecSyntaxError("unsupported export format '" + a.format + "'");
  const GenusSpec spec = parse_spec(a.spec);
  const auto stages = build_stages(spec, a.stages, resolve_budget(a.budget));
  emit(io::to_dot(stages, a.highlight), a.out, out);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cantorforge: defining-sequence construction and end analysis for Cantor sets of prescribed genus"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "materialize stages 1..k as a canonical JSON document");
  build_cmd->add_option("--spec", build.spec, "genus sequence, e.g. 2,3,inf;cycle:2,4")->required();
  build_cmd->add_option("--stages", build.stages, "number of stages")->required()->check(CLI::PositiveNumber);
  build_cmd->add_option("--out", build.out, "output path (default stdout)");
  build_cmd->add_option("--budget", build.budget, "maximum materialized components");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite and the oracle diff");
  verify_cmd->add_option("--spec", verify.spec, "genus sequence");
  verify_cmd->add_option("--stages", verify.stages, "number of stages")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--corpus", verify.corpus, "verify a generated corpus of this many specs instead");
  verify_cmd->add_option("--seed", verify.seed, "corpus seed");
  verify_cmd->add_option("--inject-fault", verify.fault, "deliberate construction fault: parity or chain5");
  verify_cmd->add_option("--budget", verify.budget, "maximum materialized components");

  EndsArgs ends;
  auto* ends_cmd = app.add_subcommand("ends", "classify dense-point and chain-hop ends");
  ends_cmd->add_option("--spec", ends.spec, "genus sequence")->required();
  ends_cmd->add_option("--labels", ends.labels, "comma-separated dense-point labels");
  ends_cmd->add_option("--chain-hop", ends.chain_hops, "chain-hop rule: first, last, fixed:H.P, seed:N");
  ends_cmd->add_option("--depth", ends.depth, "profile depth in stages")->required()->check(CLI::PositiveNumber);
  ends_cmd->add_option("--budget", ends.budget, "maximum materialized components");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export", "export the component tree");
  export_cmd->add_option("--spec", exp.spec, "genus sequence")->required();
  export_cmd->add_option("--stages", exp.stages, "number of stages")->required()->check(CLI::PositiveNumber);
  export_cmd->add_option("--format", exp.format, "output format (dot)");
  export_cmd->add_option("--highlight-label", exp.highlight, "highlight the branch of this dense point");
  export_cmd->add_option("--out", exp.out, "output path (default stdout)");
  export_cmd->add_option("--budget", exp.budget, "maximum materialized components");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kSpecError;
  }

  try {
    if (*build_cmd) return cmd_build(build, out);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*ends_cmd) return cmd_ends(ends, out);
    if (*export_cmd) return cmd_export(exp, out);
  } catch (const SpecSyntaxError& e) {
    err << "spec error: " << e.what() << "\n";
    return kSpecError;
  } catch (const SpecValueError& e) {
    err << "spec error: " << e.what() << "\n";
    return kSpecError;
  } catch (const PolicyError& e) {
    err << "policy error: " << e.what() << "\n";
    return kSpecError;
  } catch (const ResourceError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const DepthTooShallowError& e) {
    err << "depth too shallow: " << e.what() << "\n";
    return kDepthTooShallow;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvariantFailure;
  }
  return kOk;
}

}  // namespace cantorforge::cli
