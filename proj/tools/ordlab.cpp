// ordlab — orderability testing for finitely presented groups.
//
// Subcommands: ball, test, enumerate, verify-cone, check-cert.
// Exit codes: 0 success (all SAT / accepted / valid), 1 negative verdict
// (UNSAT found, certificate rejected, cone invalid), 2 input or usage error,
// 3 word problem undecided within budgets, 4 ball or search budget exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ordlab/backend.hpp"
#include "ordlab/ball.hpp"
#include "ordlab/certificate.hpp"
#include "ordlab/cones.hpp"
#include "ordlab/json_io.hpp"
#include "ordlab/presentation.hpp"
#include "ordlab/solver.hpp"
#include "ordlab/space.hpp"

namespace {

using namespace ordlab;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitBudget = 4;

struct ExitWith {
  int code;
  std::string message;
};

struct KRange {
  int lo = 0;
  int hi = 0;
};

KRange parse_k_range(const std::string& s) {
  auto bad = [&]() -> ExitWith {
    return {kExitInput, "invalid radius '" + s + "' (expected <n> or <a>..<b>)"};
  };
  std::size_t dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int k = std::stoi(s);
      if (k < 1) throw bad();
      return {k, k};
    }
    int lo = std::stoi(s.substr(0, dots));
    int hi = std::stoi(s.substr(dots + 2));
    if (lo < 1 || hi < lo) throw bad();
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw bad();
  } catch (const std::out_of_range&) {
    throw bad();
  }
}

struct CommonOptions {
  std::string presentation_path;
  std::string k_arg;
  int kb_max_rules = 2000;
  int kb_max_len = 50;
  int tc_max_cosets = 100000;
  int ball_cap = 100000;
  long long node_cap = 10'000'000;
  std::string out_path;
  std::string format = "human";
  int threads = 0;  // 0 = auto; execution is sequential either way
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool with_k) {
  cmd->add_option("--presentation", opt.presentation_path, "presentation file")->required();
  if (with_k) cmd->add_option("-k", opt.k_arg, "radius <n> or range <a>..<b>")->required();
  cmd->add_option("--kb-max-rules", opt.kb_max_rules, "Knuth-Bendix rule budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--kb-max-len", opt.kb_max_len, "Knuth-Bendix rule length budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tc-max-cosets", opt.tc_max_cosets, "Todd-Coxeter coset budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--ball-cap", opt.ball_cap, "ball element cap")->check(CLI::PositiveNumber);
  cmd->add_option("--node-cap", opt.node_cap, "solver decision node cap")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", opt.out_path, "write the JSON report to this path");
  cmd->add_option("--format", opt.format, "stdout format")
      ->check(CLI::IsMember({"human", "json"}));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExitWith{kExitInput, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ExitWith{kExitInput, "cannot write '" + path + "'"};
  out << content;
}

Presentation load_presentation(const std::string& path) {
  try {
    return parse_presentation(read_file(path));
  } catch (const ParseError& e) {
    throw ExitWith{kExitInput, path + ": " + e.what()};
  }
}

WordBackend build_backend_or_exit(const Presentation& p, const CommonOptions& opt) {
  BackendBudgets budgets;
  budgets.kb.max_rules = opt.kb_max_rules;
  budgets.kb.max_len = opt.kb_max_len;
  budgets.tc.max_cosets = opt.tc_max_cosets;
  BackendResult r = make_backend(p, budgets);
  if (!r.ok())
    throw ExitWith{kExitUndecided,
                   "word problem undecided: Knuth-Bendix and Todd-Coxeter budgets exhausted"};
  return std::move(*r.backend);
}

Ball build_ball_or_exit(const WordBackend& b, int k, const CommonOptions& opt) {
  try {
    return build_ball(b, k, {.max_elements = opt.ball_cap});
  } catch (const BallCapExceeded& e) {
    throw ExitWith{kExitBudget, e.what()};
  }
}

const char* backend_name(const WordBackend& b) {
  return b.kind() == WordBackend::Kind::rewriting ? "rewriting" : "cosets";
}

// Human output mirrors the JSON report one-to-one.
void render_human(const ojson& j, std::ostream& os, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && !value.empty() &&
                                (value[0].is_object() || value[0].is_array()))) {
        os << pad << key << ":\n";
        render_human(value, os, indent + 2);
      } else {
        os << pad << key << ": " << value.dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_object() || value.is_array()) {
        os << pad << "-\n";
        render_human(value, os, indent + 2);
      } else {
        os << pad << "- " << value.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

void emit_report(const ojson& report, const CommonOptions& opt) {
  std::string text = json_text(report);
  if (!opt.out_path.empty()) write_file(opt.out_path, text);
  if (opt.format == "json")
    std::cout << text;
  else
    render_human(report, std::cout);
}

SearchMode mode_from_name(const std::string& name) {
  return name == "bo" ? SearchMode::prebiorder : SearchMode::preorder;
}

int cmd_ball(const CommonOptions& opt) {
  KRange range = parse_k_range(opt.k_arg);
  if (range.lo != range.hi) throw ExitWith{kExitInput, "ball takes a single radius"};
  Presentation p = load_presentation(opt.presentation_path);
  WordBackend b = build_backend_or_exit(p, opt);
  Ball ball = build_ball_or_exit(b, range.lo, opt);
  ojson report;
  report["command"] = "ball";
  report["presentation"] = serialize_presentation(p);
  report["backend"] = backend_name(b);
  report["ball"] = ball_to_json(ball, p);
  emit_report(report, opt);
  return kExitOk;
}

int cmd_test(const CommonOptions& opt, const std::string& mode_name,
             const std::string& cert_out) {
  KRange range = parse_k_range(opt.k_arg);
  SearchMode mode = mode_from_name(mode_name);
  Presentation p = load_presentation(opt.presentation_path);
  WordBackend b = build_backend_or_exit(p, opt);

  ojson report;
  report["command"] = "test";
  report["mode"] = mode_name;
  report["presentation"] = serialize_presentation(p);
  report["backend"] = backend_name(b);
  report["k_min"] = range.lo;
  report["k_max"] = range.hi;
  ojson results = ojson::array();
  std::optional<int> unsat_at;
  std::string cert_text;
  for (int k = range.lo; k <= range.hi && !unsat_at; ++k) {
    Ball ball = build_ball_or_exit(b, k, opt);
    SearchOutcome o = mode == SearchMode::preorder
                          ? find_preorder(ball, {.node_cap = opt.node_cap})
                          : find_prebiorder(ball, {.node_cap = opt.node_cap});
    if (o.status == SearchOutcome::Status::undecided)
      throw ExitWith{kExitBudget, "solver node cap exhausted at k=" + std::to_string(k)};
    ojson r = outcome_to_json(o, ball, p);
    ojson entry;
    entry["k"] = k;
    for (auto& [key, value] : r.items()) entry[key] = value;
    results.push_back(std::move(entry));
    if (o.status == SearchOutcome::Status::unsat) {
      unsat_at = k;
      cert_text = json_text(certificate_to_json(*o.certificate, ball, p));
    }
  }
  report["results"] = std::move(results);
  if (unsat_at)
    report["unsat_at"] = *unsat_at;
  else
    report["unsat_at"] = nullptr;
  if (unsat_at && !cert_out.empty()) {
    write_file(cert_out, cert_text);
    report["certificate_path"] = cert_out;
  }
  emit_report(report, opt);
  return unsat_at ? kExitNegative : kExitOk;
}

int cmd_enumerate(const CommonOptions& opt, const std::string& mode_name,
                  const std::vector<std::string>& constraints, bool full,
                  long long enum_limit) {
  KRange range = parse_k_range(opt.k_arg);
  SearchMode mode = mode_from_name(mode_name);
  Presentation p = load_presentation(opt.presentation_path);
  WordBackend b = build_backend_or_exit(p, opt);

  if (!constraints.empty() && range.lo != range.hi)
    throw ExitWith{kExitInput, "--constrain requires a single radius"};

  ojson report;
  report["command"] = "enumerate";
  report["mode"] = mode == SearchMode::preorder ? "lo" : "bo";
  report["presentation"] = serialize_presentation(p);
  report["backend"] = backend_name(b);

  if (range.lo == range.hi) {
    Ball ball = build_ball_or_exit(b, range.lo, opt);
    EnumerationResult e = enumerate_orders(ball, mode, enum_limit);
    // Parse "w>1" / "w<1" constraints against this ball.
    std::vector<std::pair<Word, int>> parsed;
    ojson cj = ojson::array();
    for (const std::string& c : constraints) {
      if (c.size() < 3 || c.back() != '1' ||
          (c[c.size() - 2] != '>' && c[c.size() - 2] != '<'))
        throw ExitWith{kExitInput, "invalid constraint '" + c + "' (expected <word>>1 or <word><1)"};
      int sign = c[c.size() - 2] == '>' ? +1 : -1;
      Word w;
      try {
        w = parse_word(p, std::string_view(c).substr(0, c.size() - 2));
      } catch (const ParseError& e2) {
        throw ExitWith{kExitInput, "constraint '" + c + "': " + e2.what()};
      }
      parsed.emplace_back(std::move(w), sign);
      cj.push_back(c);
    }
    std::vector<int> matching;
    try {
      matching = filter_assignments(ball, b, e.assignments, parsed);
    } catch (const ConstraintOutsideBall& e2) {
      throw ExitWith{kExitInput, e2.what()};
    }
    report["k"] = range.lo;
    report["level_count"] = e.assignments.size();
    report["truncated"] = e.truncated;
    report["constraints"] = std::move(cj);
    report["count"] = matching.size();
    if (full) {
      ojson as = ojson::array();
      for (int idx : matching) as.push_back(assignment_to_json(e.assignments[idx], ball, p));
      report["assignments"] = std::move(as);
    }
  } else {
    LevelDiagram d;
    try {
      d = build_diagram(b, range.hi, mode, enum_limit, {.max_elements = opt.ball_cap});
    } catch (const BallCapExceeded& e) {
      throw ExitWith{kExitBudget, e.what()};
    }
    // Only levels within the requested range are reported.
    ojson dj = diagram_to_json(d, p, full);
    if (range.lo > 1) {
      ojson levels = ojson::array();
      for (const auto& lj : dj["levels"])
        if (lj["k"].get<int>() >= range.lo) levels.push_back(lj);
      dj["levels"] = std::move(levels);
    }
    report["k_min"] = range.lo;
    report["k_max"] = range.hi;
    report["diagram"] = std::move(dj);
  }
  emit_report(report, opt);
  return kExitOk;
}

int cmd_verify_cone(const CommonOptions& opt, const std::string& cone_name,
                    const std::string& mode_flag) {
  KRange range = parse_k_range(opt.k_arg);
  Presentation p = load_presentation(opt.presentation_path);
  auto cone = cone_by_name(cone_name);
  if (!cone) throw ExitWith{kExitInput, "unknown cone '" + cone_name + "'"};
  bool check_biorder = mode_flag.empty() ? cone->claims_biorder() : mode_flag == "bo";
  WordBackend b = build_backend_or_exit(p, opt);

  ojson report;
  report["command"] = "verify-cone";
  report["cone"] = cone->name();
  report["mode"] = check_biorder ? "bo" : "lo";
  report["presentation"] = serialize_presentation(p);
  report["backend"] = backend_name(b);
  ojson results = ojson::array();
  bool all_valid = true;
  for (int k = range.lo; k <= range.hi; ++k) {
    Ball ball = build_ball_or_exit(b, k, opt);
    SignAssignment a;
    try {
      a = restrict_to_ball(*cone, p, ball);
    } catch (const ConeMismatch& e) {
      throw ExitWith{kExitInput, e.what()};
    }
    bool pre = verify_assignment(ball, a, SearchMode::preorder);
    ojson entry;
    entry["k"] = k;
    entry["preorder_valid"] = pre;
    bool ok = pre;
    if (check_biorder) {
      bool bi = verify_assignment(ball, a, SearchMode::prebiorder);
      entry["prebiorder_valid"] = bi;
      ok = pre && bi;
    }
    all_valid = all_valid && ok;
    results.push_back(std::move(entry));
  }
  report["results"] = std::move(results);
  report["all_valid"] = all_valid;
  emit_report(report, opt);
  return all_valid ? kExitOk : kExitNegative;
}

int cmd_check_cert(const CommonOptions& opt, const std::string& cert_path,
                   const std::string& presentation_override) {
  std::string text = read_file(cert_path);
  ParsedCertificate parsed;
  try {
    parsed = parse_certificate_json(text);
  } catch (const CertificateFormatError& e) {
    throw ExitWith{kExitInput, cert_path + ": " + e.what()};
  }
  Presentation p;
  try {
    p = presentation_override.empty() ? parse_presentation(parsed.group_text)
                                      : load_presentation(presentation_override);
  } catch (const ParseError& e) {
    throw ExitWith{kExitInput, std::string("embedded group text: ") + e.what()};
  }
  WordBackend b = build_backend_or_exit(p, opt);
  Ball ball = build_ball_or_exit(b, parsed.radius, opt);
  bool accepted = false;
  auto resolved = resolve_certificate(parsed, p, ball);
  if (resolved) accepted = check_certificate(b, ball, *resolved);

  ojson report;
  report["command"] = "check-cert";
  report["certificate"] = cert_path;
  report["kind"] = cert_kind_name(parsed.kind);
  report["radius"] = parsed.radius;
  report["presentation"] = serialize_presentation(p);
  report["accepted"] = accepted;
  emit_report(report, opt);
  return accepted ? kExitOk : kExitNegative;
}

int read_threads_env() {
  const char* env = std::getenv("ORDLAB_THREADS");
  if (!env) return 0;
  try {
    int n = std::stoi(env);
    return n < 0 ? 0 : n;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordlab: left- and bi-orderability testing for finitely presented groups"};
  app.require_subcommand(1);

  CommonOptions opt;
  opt.threads = read_threads_env();

  auto* ball_cmd = app.add_subcommand("ball", "build a Cayley ball and dump it");
  add_common_flags(ball_cmd, opt, true);

  auto* test_cmd = app.add_subcommand("test", "search for preorders over a radius range");
  std::string test_mode = "lo";
  std::string cert_out;
  test_cmd->add_option("mode", test_mode, "lo (left-orderability) or bo (bi-orderability)")
      ->required()
      ->check(CLI::IsMember({"lo", "bo"}));
  test_cmd->add_option("--cert-out", cert_out, "write the refutation certificate here");
  add_common_flags(test_cmd, opt, true);

  auto* enum_cmd = app.add_subcommand("enumerate", "enumerate all orders per radius");
  std::string enum_mode = "lo";
  std::vector<std::string> constraints;
  bool full = false;
  long long enum_limit = 1'000'000;
  enum_cmd->add_option("--mode", enum_mode, "lo or bo")->check(CLI::IsMember({"lo", "bo"}));
  enum_cmd->add_option("--constrain", constraints, "inequality <word>>1 or <word><1")
      ->take_all();
  enum_cmd->add_flag("--full", full, "include full assignments in the output");
  enum_cmd->add_option("--enum-limit", enum_limit, "max assignments per level")
      ->check(CLI::PositiveNumber);
  add_common_flags(enum_cmd, opt, true);

  auto* cone_cmd = app.add_subcommand("verify-cone", "restrict a known cone and verify it");
  std::string cone_name;
  std::string cone_mode;
  cone_cmd->add_option("cone", cone_name, "lex:<n>, slope, or klein")->required();
  cone_cmd->add_option("--mode", cone_mode, "lo or bo (default: the cone's claim)")
      ->check(CLI::IsMember({"lo", "bo"}));
  add_common_flags(cone_cmd, opt, true);

  auto* check_cmd = app.add_subcommand("check-cert", "verify a refutation certificate");
  std::string cert_path;
  std::string pres_override;
  check_cmd->add_option("certificate", cert_path, "certificate JSON path")->required();
  check_cmd->add_option("--presentation", pres_override,
                        "check against this presentation instead of the embedded one");
  check_cmd->add_option("--kb-max-rules", opt.kb_max_rules, "Knuth-Bendix rule budget");
  check_cmd->add_option("--kb-max-len", opt.kb_max_len, "Knuth-Bendix rule length budget");
  check_cmd->add_option("--tc-max-cosets", opt.tc_max_cosets, "Todd-Coxeter coset budget");
  check_cmd->add_option("--ball-cap", opt.ball_cap, "ball element cap");
  check_cmd->add_option("--out", opt.out_path, "write the JSON report to this path");
  check_cmd->add_option("--format", opt.format, "stdout format")
      ->check(CLI::IsMember({"human", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (app.got_subcommand(ball_cmd)) return cmd_ball(opt);
    if (app.got_subcommand(test_cmd)) return cmd_test(opt, test_mode, cert_out);
    if (app.got_subcommand(enum_cmd))
      return cmd_enumerate(opt, enum_mode, constraints, full, enum_limit);
    if (app.got_subcommand(cone_cmd)) return cmd_verify_cone(opt, cone_name, cone_mode);
    if (app.got_subcommand(check_cmd)) return cmd_check_cert(opt, cert_path, pres_override);
  } catch (const ExitWith& e) {
    std::cerr << "ordlab: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "ordlab: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
