#include "commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "json.hpp"
#include "tcw/analysis.hpp"
#include "tcw/config.hpp"
#include "tcw/report.hpp"
#include "tcw/synthesis.hpp"
#include "tcw/textio.hpp"
#include "tcw/verify.hpp"

namespace tcw {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRefuted = 2;
constexpr int kExitUnknown = 3;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::vector<std::string> positional;
  std::string format;  // empty: take from config
  int prefix = -1;     // -1: unset
  std::string via;
  std::string suite = "all";
  std::optional<std::uint64_t> seed;
  std::string caps;
};

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(what + ": expected a non-negative integer, got '" +
                     text + "'");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(what + ": expected an integer, got '" + text + "'");
  }
  return value;
}

Options parse_options(const std::vector<std::string>& args,
                      std::size_t start) {
  Options opts;
  for (std::size_t i = start; i < args.size(); ++i) {
    std::string arg = args[i];
    if (arg.rfind("--", 0) != 0) {
      opts.positional.push_back(std::move(arg));
      continue;
    }
    std::string name = arg.substr(2);
    std::string value;
    if (const auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name = name.substr(0, eq);
    } else {
      if (i + 1 >= args.size()) {
        throw UsageError("flag --" + name + " needs a value");
      }
      value = args[++i];
    }
    if (name == "format") {
      opts.format = value;
    } else if (name == "prefix") {
      opts.prefix = parse_int(value, "--prefix");
      if (opts.prefix < 1) throw UsageError("--prefix must be >= 1");
    } else if (name == "via") {
      opts.via = value;
    } else if (name == "suite") {
      opts.suite = value;
    } else if (name == "seed") {
      opts.seed = parse_u64(value, "--seed");
    } else if (name == "caps") {
      opts.caps = value;
    } else {
      throw UsageError("unknown flag --" + name);
    }
  }
  return opts;
}

/// TCW_CONFIG defaults, then --caps overrides, then --seed / --format.
Config build_config(const Options& opts) {
  Config config = load_config_from_env();
  if (!opts.caps.empty()) {
    std::istringstream in(opts.caps);
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw UsageError("--caps entries look like key=value, got '" + item +
                         "'");
      }
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      if (key == "table_arity_cap") {
        config.table_arity_cap = parse_int(value, "--caps " + key);
      } else if (key == "witness_table_cap") {
        config.witness_table_cap = parse_int(value, "--caps " + key);
      } else if (key == "bfs_node_budget") {
        config.bfs_node_budget = parse_u64(value, "--caps " + key);
      } else if (key == "bfs_depth_cap") {
        config.bfs_depth_cap = parse_int(value, "--caps " + key);
      } else {
        throw UsageError("--caps: unknown key '" + key + "'");
      }
    }
  }
  if (opts.seed.has_value()) config.seed = *opts.seed;
  if (!opts.format.empty()) config.report_format = opts.format;
  validate(config);
  return config;
}

bool json_mode(const Config& config) { return config.report_format == "json"; }

/// Command inputs may be file paths or inline text; a path that exists wins.
std::string read_text_argument(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot read file '" + arg + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }
  return arg;
}

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string single_descriptor(const std::string& arg) {
  const std::vector<std::string> lines = content_lines(read_text_argument(arg));
  if (lines.size() != 1) {
    throw UsageError("expected exactly one descriptor in '" + arg + "', got " +
                     std::to_string(lines.size()));
  }
  return lines.front();
}

int verdict_exit_code(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Proven: return kExitOk;
    case VerdictKind::Refuted: return kExitRefuted;
    case VerdictKind::Unknown: break;
  }
  return kExitUnknown;
}

FormulaPtr applied_to_variables(const GeneratorPtr& g) {
  std::vector<FormulaPtr> vars;
  vars.reserve(static_cast<std::size_t>(g->arity()));
  for (int i = 1; i <= g->arity(); ++i) vars.push_back(Formula::var(i));
  return Formula::apply(g, std::move(vars));
}

CommandResult cmd_enumerate(const Options& opts, const Config& config) {
  if (opts.positional.size() != 1) {
    throw UsageError("enumerate takes exactly one arity argument");
  }
  const int n = parse_int(opts.positional[0], "arity");
  if (n < 1) throw UsageError("arity must be >= 1");
  CommandResult result;
  const std::vector<ExcludedLayerFunction> members = enumerate_s_minus_1(n);
  if (json_mode(config)) {
    json doc = json::array();
    for (const auto& f : members) {
      doc.push_back(function_text(GeneratorSymbol::Semantics(f)));
    }
    result.out = doc.dump(2) + "\n";
  } else {
    for (const auto& f : members) {
      result.out += function_text(GeneratorSymbol::Semantics(f)) + "\n";
    }
  }
  return result;
}

CommandResult cmd_synth(const Options& opts, const Config& config) {
  if (opts.positional.empty() || opts.positional.size() > 2) {
    throw UsageError("synth takes a target and optionally a generator");
  }
  const GeneratorSymbol::Semantics target =
      parse_function_text(single_descriptor(opts.positional[0]));

  SynthVerdict verdict;
  if (opts.positional.size() == 2) {
    if (!opts.via.empty()) {
      throw UsageError("give either a generator argument or --via, not both");
    }
    const GeneratorSymbol::Semantics generator =
        parse_function_text(single_descriptor(opts.positional[1]));
    const auto* elf_target = std::get_if<ExcludedLayerFunction>(&target);
    const auto* elf_generator = std::get_if<ExcludedLayerFunction>(&generator);
    if (elf_target == nullptr || elf_generator == nullptr) {
      throw UsageError(
          "single-generator synthesis takes one-missing-layer (sminus1) "
          "descriptors on both sides");
    }
    verdict = synth_from_generator(*elf_target, *elf_generator);
  } else {
    const std::string via = opts.via.empty() ? "sminus1" : opts.via;
    if (via != "sminus1" && via != "s") {
      throw UsageError("--via takes 'sminus1' or 's'");
    }
    if (const auto* elf = std::get_if<ExcludedLayerFunction>(&target)) {
      verdict.kind = VerdictKind::Proven;
      verdict.witness = make_verified_witness(
          target, applied_to_variables(make_generator(*elf)));
      verdict.reason = "the target is already a catalogue member";
    } else if (const auto* sym = std::get_if<SymmetricRFunction>(&target)) {
      verdict.kind = VerdictKind::Proven;
      if (via == "sminus1") {
        verdict.witness = synth_S_from_Sminus1(*sym);
      } else {
        verdict.witness = make_verified_witness(
            target, applied_to_variables(make_generator(*sym)));
        verdict.reason = "the target is already symmetric";
      }
    } else {
      const auto& table = std::get<TernaryFunction>(target);
      const Classification classes = classify(table);
      if (!classes.in_r) {
        verdict.kind = VerdictKind::Refuted;
        verdict.reason =
            "the table takes a value outside {0,1} or is nonzero at a point "
            "with a 0 component; only two-valued zero-propagating functions "
            "are realizable";
      } else {
        verdict.kind = VerdictKind::Proven;
        verdict.witness = via == "sminus1" ? synth_R_from_Sminus1(table)
                                           : synth_R_from_S(table);
      }
    }
  }

  CommandResult result;
  const GenerationReport report = to_report(verdict);
  result.out = json_mode(config) ? render_json(report) : render_text(report);
  result.exit_code = verdict_exit_code(verdict.kind);
  return result;
}

CommandResult cmd_basis(const Options& opts, const Config& config) {
  if (opts.positional.size() != 1) {
    throw UsageError("basis takes one member-set argument (file or text)");
  }
  const std::vector<std::string> lines =
      content_lines(read_text_argument(opts.positional[0]));
  if (lines.empty()) throw UsageError("the member set is empty");
  std::vector<ExcludedLayerFunction> members;
  for (const std::string& line : lines) {
    const GeneratorSymbol::Semantics sem = parse_function_text(line);
    const auto* elf = std::get_if<ExcludedLayerFunction>(&sem);
    if (elf == nullptr) {
      throw UsageError("basis members must be one-missing-layer (sminus1) "
                       "descriptors; got '" +
                       line + "'");
    }
    for (const ExcludedLayerFunction& other : members) {
      if (other.arity == elf->arity && other.e() == elf->e()) {
        throw UsageError("member " + other.name() +
                         " appears twice (congruent duplicates)");
      }
    }
    members.push_back(*elf);
  }
  const BasisResult result = find_basis(members);
  CommandResult out;
  out.out = json_mode(config) ? render_json(result) : render_text(result);
  return out;
}

FamilySpec parse_family_argument(const std::string& arg) {
  return parse_family_text(single_descriptor(arg));
}

int family_prefix(const FamilySpec& family, int requested) {
  const int known = family.known_size();
  if (requested > 0) {
    if (known >= 0 && requested > known) {
      throw UsageError("--prefix exceeds the family size (" +
                       std::to_string(known) + ")");
    }
    return requested;
  }
  return known >= 0 ? known : 5;
}

CommandResult cmd_family(const Options& opts, const Config& config) {
  if (opts.positional.empty() || opts.positional.size() > 2) {
    throw UsageError("family takes one or two family arguments");
  }
  CommandResult result;
  if (opts.positional.size() == 1) {
    const FamilySpec family = parse_family_argument(opts.positional[0]);
    if (family.kind == FamilySpec::Kind::List) {
      const MutualGenerationReport report = family_mutual_generation(
          family, family_prefix(family, opts.prefix));
      result.out =
          json_mode(config) ? render_json(report) : render_text(report);
      bool any_refuted = false;
      for (std::size_t i = 0; i < report.matrix.size(); ++i) {
        for (std::size_t j = 0; j < report.matrix[i].size(); ++j) {
          any_refuted |= i != j &&
                         report.matrix[i][j].kind == VerdictKind::Refuted;
        }
      }
      result.exit_code = report.all_off_diagonal_proven ? kExitOk
                         : any_refuted                  ? kExitRefuted
                                                        : kExitUnknown;
      return result;
    }
    const NoBasisEvidence evidence =
        no_basis_evidence(family, family_prefix(family, opts.prefix));
    result.out =
        json_mode(config) ? render_json(evidence) : render_text(evidence);
    result.exit_code = evidence.all_proven ? kExitOk : kExitUnknown;
    return result;
  }

  // Two families: pairwise generation across the union of their prefixes.
  std::vector<Layer> layers;
  for (const std::string& arg : opts.positional) {
    const FamilySpec family = parse_family_argument(arg);
    const int count = family_prefix(family, opts.prefix);
    for (int i = 0; i < count; ++i) {
      const ExcludedLayerFunction f = family.member(i);
      layers.push_back(Layer{f.e(), f.d()});
    }
  }
  const FamilySpec joint = FamilySpec::list(std::move(layers));
  const MutualGenerationReport report =
      family_mutual_generation(joint, joint.known_size());
  result.out = json_mode(config) ? render_json(report) : render_text(report);
  bool any_refuted = false;
  for (std::size_t i = 0; i < report.matrix.size(); ++i) {
    for (std::size_t j = 0; j < report.matrix[i].size(); ++j) {
      any_refuted |=
          i != j && report.matrix[i][j].kind == VerdictKind::Refuted;
    }
  }
  result.exit_code = report.all_off_diagonal_proven ? kExitOk
                     : any_refuted                  ? kExitRefuted
                                                    : kExitUnknown;
  return result;
}

CommandResult cmd_verify(const Options& opts, const Config& config) {
  if (!opts.positional.empty()) {
    throw UsageError("verify takes no positional arguments (use --suite)");
  }
  Suite suite;
  if (opts.suite == "all") {
    suite = Suite::All;
  } else if (opts.suite == "props") {
    suite = Suite::Props;
  } else if (opts.suite == "lemmas") {
    suite = Suite::Lemmas;
  } else if (opts.suite == "closure") {
    suite = Suite::Closure;
  } else {
    throw UsageError("--suite takes all, props, lemmas, or closure");
  }
  const std::vector<CriterionResult> results =
      run_acceptance_suite(suite, config);
  CommandResult out;
  if (json_mode(config)) {
    json doc = json::array();
    for (const CriterionResult& r : results) {
      doc.push_back(json{{"id", r.id},
                         {"description", r.description},
                         {"passed", r.passed},
                         {"details", r.details},
                         {"seconds", r.seconds}});
    }
    out.out = doc.dump(2) + "\n";
  } else {
    out.out = format_results(results);
  }
  out.exit_code = all_passed(results) ? kExitOk : kExitRefuted;
  return out;
}

CommandResult cmd_eval(const Options& opts, const Config& config) {
  if (opts.positional.size() != 2) {
    throw UsageError("eval takes a formula and a point");
  }
  const std::string text = read_text_argument(opts.positional[0]);
  GeneratorSet env;
  const FormulaPtr phi = parse_formula(text, env, /*auto_intern=*/true);

  std::string point_text = opts.positional[1];
  std::erase_if(point_text, [](char c) {
    return c == ' ' || c == '(' || c == ')';
  });
  std::vector<Value> components;
  std::istringstream in(point_text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.size() != 1 || token[0] < '0' || token[0] > '2') {
      throw UsageError("point components are 0, 1, or 2; got '" + token +
                       "'");
    }
    components.push_back(static_cast<Value>(token[0] - '0'));
  }
  if (components.empty()) throw UsageError("the point is empty");
  const TernaryTuple point{std::move(components)};
  if (max_var_index(phi) > point.arity()) {
    throw UsageError("the formula uses x" +
                     std::to_string(max_var_index(phi)) +
                     " but the point has only " +
                     std::to_string(point.arity()) + " components");
  }
  const Value value = eval(phi, point);
  CommandResult result;
  if (json_mode(config)) {
    result.out = json{{"value", int(value)}}.dump(2) + "\n";
  } else {
    result.out = std::to_string(int(value)) + "\n";
  }
  return result;
}

}  // namespace

std::string usage_text() {
  return R"txt(usage: tcw <command> [arguments] [flags]

commands:
  enumerate <n>               list the one-missing-layer functions of arity n
  synth <target> [generator]  realize the target over one generator, or over
                              the catalogue (--via sminus1, default) or the
                              symmetric stage (--via s)
  basis <members>             minimize a finite one-missing-layer set
  family <family> [family2]   no-finite-basis evidence for one unbounded
                              family; pairwise generation for a list family
                              or a pair of families
  verify [--suite S]          run the acceptance checks (all, props, lemmas,
                              closure)
  eval <formula> <point>      evaluate a formula, e.g. "(i2 x1 x2)" at 1,2

arguments may be file paths or inline text.

flags:
  --format text|json   report format (default from config)
  --prefix <k>         family members to examine
  --via sminus1|s      pipeline stage for synth without a generator
  --seed <n>           seed for randomized checks
  --caps k=v,...       override table_arity_cap, witness_table_cap,
                       bfs_node_budget, bfs_depth_cap
TCW_CONFIG may name a JSON config file; flags override it.

exit codes: 0 proven/ok, 1 usage or parse error, 2 refuted or failed
verification, 3 unknown.
)txt";
}

CommandResult run_command(const std::vector<std::string>& args) {
  CommandResult result;
  if (args.empty() || args[0] == "help" || args[0] == "--help") {
    result.out = usage_text();
    result.exit_code = args.empty() ? kExitUsage : kExitOk;
    return result;
  }
  try {
    const Options opts = parse_options(args, 1);
    const Config config = build_config(opts);
    const std::string& command = args[0];
    if (command == "enumerate") return cmd_enumerate(opts, config);
    if (command == "synth") return cmd_synth(opts, config);
    if (command == "basis") return cmd_basis(opts, config);
    if (command == "family") return cmd_family(opts, config);
    if (command == "verify") return cmd_verify(opts, config);
    if (command == "eval") return cmd_eval(opts, config);
    throw UsageError("unknown command '" + command + "'");
  } catch (const UsageError& e) {
    result.err = std::string("error: ") + e.what() + "\n\n" + usage_text();
    result.exit_code = kExitUsage;
  } catch (const std::exception& e) {
    result.err = std::string("error: ") + e.what() + "\n";
    result.exit_code = kExitUsage;
  }
  return result;
}

}  // namespace tcw
