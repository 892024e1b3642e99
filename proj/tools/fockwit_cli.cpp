// Copyright 2026 The fockwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Exit codes: 0 ok, 2 input error, 3 truncation unsafe.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fockwit/fockwit.hpp"
#include "fockwit/io.hpp"
#include "fockwit/sweep.hpp"

namespace {

using fockwit::Error;
using fockwit::ErrorKind;
using fockwit::io::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitTruncation = 3;

struct GlobalOptions {
  double tol = 1e-9;
  double guard_eps = fockwit::kDefaultGuardEpsilon;
  std::string format = "json";
  std::uint64_t seed = 0;
  int phi_grid = 16;
  int mn_max = 3;

  fockwit::CriteriaConfig config() const {
    fockwit::CriteriaConfig c;
    c.tolerance = tol;
    c.guard_epsilon = guard_eps;
    c.phi_grid_size = phi_grid;
    c.mn_max = mn_max;
    return c;
  }
};

struct GeneratorFlags {
  std::optional<double> s;
  std::optional<double> x;
  std::vector<std::string> alphas;
  std::optional<int> cutoff;
  double tail_tol = fockwit::kDefaultTailTolerance;

  void attach(CLI::App* cmd) {
    cmd->add_option("--s", s, "mixing weight for mixed-s, in [0, 1]");
    cmd->add_option("--x", x, "parameter for tmsv and alt-even, in [0, 1)");
    cmd->add_option("--alpha", alphas, "coherent amplitude re,im; repeat once per mode");
    cmd->add_option("--cutoff", cutoff, "per-mode cutoff (default: smallest safe cutoff)");
    cmd->add_option("--tail-tol", tail_tol, "largest probability weight truncation may drop")->check(CLI::PositiveNumber);
  }

  fockwit::GeneratorOptions options() const {
    fockwit::GeneratorOptions opt;
    if (s) opt.s = *s;
    if (x) opt.x = *x;
    if (!alphas.empty()) {
      opt.alphas.clear();
      for (const auto& text : alphas) opt.alphas.push_back(parse_complex(text));
    }
    opt.cutoff = cutoff;
    opt.tail_tolerance = tail_tol;
    return opt;
  }

  static fockwit::Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
      std::size_t used = 0;
      const double re = std::stod(text.substr(0, comma), &used);
      if (used != text.substr(0, comma).size()) throw std::invalid_argument(text);
      double im = 0.0;
      if (comma != std::string::npos) {
        const auto rest = text.substr(comma + 1);
        im = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(text);
      }
      return {re, im};
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "--alpha expects re,im but got \"" + text + "\"");
    }
  }
};

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidParameter, "cannot open " + path + " for writing");
  out << text;
}

// ---------------------------------------------------------------------------

int run_generate(const GlobalOptions&, const std::string& name, const GeneratorFlags& flags, const std::string& out) {
  const auto state = fockwit::generate_named(name, flags.options());
  const auto text = fockwit::io::state_to_json(state).dump(1) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
  return kExitOk;
}

struct Evaluation {
  std::vector<fockwit::CriterionResult> results;
  std::optional<ErrorKind> error;
};

Evaluation evaluate_file(const std::string& path, const std::string& criteria, const fockwit::CriteriaConfig& config) {
  const auto state = fockwit::io::read_state_file(path);
  const auto specs = fockwit::parse_criteria_list(criteria, state.mode_count(), config);
  Evaluation e;
  e.results = fockwit::evaluate_list(state, specs, config, &e.error);
  return e;
}

int exit_code_for(ErrorKind kind) { return kind == ErrorKind::TruncationUnsafe ? kExitTruncation : kExitInput; }

int run_evaluate(const GlobalOptions& g, const std::vector<std::string>& paths, const std::string& criteria,
                 bool strict_guard) {
  auto config = g.config();
  config.strict_guard = strict_guard;
  // Reject unknown ids before touching any file.
  fockwit::parse_criteria_list(criteria, 2, config);

  std::vector<std::future<Evaluation>> jobs;
  for (const auto& path : paths) jobs.push_back(std::async(std::launch::async, evaluate_file, path, criteria, config));
  std::vector<Evaluation> done;
  std::optional<Error> failure;
  for (auto& job : jobs) {
    try {
      done.push_back(job.get());
    } catch (const Error& e) {
      if (!failure) failure = e;
      done.push_back({});
    }
  }
  if (failure) throw *failure;

  int code = kExitOk;
  for (const auto& e : done) {
    if (e.error) code = std::max(code, exit_code_for(*e.error));
  }

  if (g.format == "text") {
    for (std::size_t i = 0; i < done.size(); ++i) {
      if (paths.size() > 1) std::cout << (i ? "\n" : "") << "# " << paths[i] << '\n';
      std::cout << fockwit::io::format_report_text(done[i].results);
    }
  } else if (paths.size() == 1) {
    emit(fockwit::io::report_to_json(done[0].results));
  } else {
    json out = json::array();
    for (std::size_t i = 0; i < done.size(); ++i) {
      out.push_back({{"state", paths[i]}, {"results", fockwit::io::report_to_json(done[i].results)}});
    }
    emit(out);
  }
  for (const auto& e : done) {
    for (const auto& r : e.results) {
      if (r.error) std::cerr << "fockwit: " << r.criterion << ": " << *r.error << '\n';
    }
  }
  return code;
}

int run_sweep(const GlobalOptions& g, const std::string& generator, double from, double to, double step,
              const std::string& criterion, const GeneratorFlags& flags) {
  const auto config = g.config();
  const auto spec = fockwit::parse_criterion_id(criterion);
  const auto result = fockwit::run_sweep(generator, fockwit::param_range(from, to, step), spec, flags.options(), config);
  using fockwit::io::format_number;
  if (g.format == "text") {
    std::cout << result.parameter << ",lhs,rhs,margin,detected\n";
    for (const auto& row : result.rows) {
      std::cout << format_number(row.param) << ',' << format_number(row.result.lhs) << ','
                << format_number(row.result.rhs) << ',' << format_number(row.result.margin) << ','
                << (row.result.detected ? "true" : "false") << '\n';
    }
    for (double t : result.thresholds) std::cout << "# threshold " << format_number(t) << '\n';
    return kExitOk;
  }
  json rows = json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"param", fockwit::io::report_number(row.param)},
                    {"lhs", fockwit::io::report_number(row.result.lhs)},
                    {"rhs", fockwit::io::report_number(row.result.rhs)},
                    {"margin", fockwit::io::report_number(row.result.margin)},
                    {"detected", row.result.detected}});
  }
  json thresholds = json::array();
  for (double t : result.thresholds) thresholds.push_back(fockwit::io::report_number(t));
  emit({{"generator", result.generator},
        {"parameter", result.parameter},
        {"criterion", result.criterion},
        {"rows", rows},
        {"thresholds", thresholds}});
  return kExitOk;
}

int run_sample(const GlobalOptions& g, int count, int modes, int cutoff, int components, const std::string& out_dir,
               const std::string& draw_name) {
  if (count < 1) throw Error(ErrorKind::InvalidParameter, "--count must be at least 1");
  if (modes < 1) throw Error(ErrorKind::InvalidParameter, "--modes must be at least 1");
  const auto draw = draw_name == "basis" ? fockwit::ProductDraw::basis : fockwit::ProductDraw::haar;
  const std::vector<int> cutoffs(static_cast<std::size_t>(modes), cutoff);
  std::filesystem::create_directories(out_dir);
  json samples = json::array();
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
    const auto ensemble =
        fockwit::sample_separable_mixture(seed, components, static_cast<std::size_t>(modes), cutoffs, draw);
    const std::string file = "sample_" + std::to_string(i) + ".json";
    fockwit::io::write_state_file((std::filesystem::path(out_dir) / file).string(), ensemble.to_state());
    json weights = json::array();
    for (const auto& c : ensemble.components) weights.push_back(c.probability);
    samples.push_back({{"seed", seed}, {"file", file}, {"weights", weights}});
  }
  const json manifest = {{"rng", "splitmix64-counter"},
                         {"base_seed", g.seed},
                         {"count", count},
                         {"modes", modes},
                         {"cutoff", cutoff},
                         {"components", components},
                         {"draw", draw_name},
                         {"samples", samples}};
  write_text_file((std::filesystem::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
  emit(manifest);
  return kExitOk;
}

std::vector<std::size_t> parse_mode_set(const std::string& text) {
  std::vector<std::size_t> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    // A run of letters such as "bc" names several modes.
    if (std::all_of(token.begin(), token.end(), [](char c) { return c >= 'a' && c <= 'z'; })) {
      for (char c : token) out.push_back(static_cast<std::size_t>(c - 'a'));
    } else if (std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      out.push_back(std::stoul(token));
    } else {
      throw Error(ErrorKind::InvalidModeSet, "bad mode \"" + token + "\"; use letters a, b, ... or indices");
    }
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  if (out.empty()) throw Error(ErrorKind::InvalidModeSet, "no modes given");
  return out;
}

int run_verify(const GlobalOptions& g, const std::string& state_path, const std::string& ppt_modes, bool f_grid) {
  json out = json::object();
  if (!ppt_modes.empty()) {
    if (state_path.empty()) throw Error(ErrorKind::InvalidParameter, "--ppt needs --state");
    const auto state = fockwit::io::read_state_file(state_path);
    out["ppt"] = fockwit::io::ppt_to_json(fockwit::ppt_check(state, parse_mode_set(ppt_modes)));
  }
  if (f_grid) out["f_grid"] = fockwit::io::fgrid_to_json(fockwit::verify_F_bound());
  if (out.empty()) throw Error(ErrorKind::InvalidParameter, "verify needs --ppt or --f-grid");
  if (g.format == "text") {
    using fockwit::io::format_number;
    if (out.contains("ppt")) {
      std::cout << "ppt min_eigenvalue " << out["ppt"]["min_eigenvalue"].dump() << " negativity "
                << out["ppt"]["negativity"].dump() << '\n';
    }
    if (out.contains("f_grid")) {
      std::cout << "f_grid min_F " << out["f_grid"]["min_F"].dump() << " argmin " << out["f_grid"]["argmin"].dump()
                << " evaluated " << out["f_grid"]["evaluated"].dump() << '\n';
    }
    return kExitOk;
  }
  emit(out.size() == 1 ? out.begin().value() : out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment-based entanglement criteria on truncated Fock spaces", "fockwit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--tol", g.tol, "relative detection tolerance")->check(CLI::PositiveNumber);
  app.add_option("--guard-eps", g.guard_eps, "guard-band leakage limit")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", g.seed, "base seed for sampling");
  app.add_option("--phi-grid", g.phi_grid, "phase grid size for k criteria")->check(CLI::PositiveNumber);
  app.add_option("--mn-max", g.mn_max, "largest m, n expanded by \"all\"")->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("generate", "write a named example state");
  std::string gen_name;
  std::string gen_out;
  GeneratorFlags gen_flags;
  gen->add_option("name", gen_name, std::string("generator: ") + std::string(fockwit::kGeneratorNames))->required();
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");
  gen_flags.attach(gen);

  auto* eval = app.add_subcommand("evaluate", "evaluate criteria on state files");
  std::vector<std::string> eval_states;
  std::string eval_criteria = "all";
  bool strict_guard = false;
  eval->add_option("--state", eval_states, "state file; repeat for a batch")->required();
  eval->add_option("--criteria", eval_criteria, std::string("comma-separated ids: ") +
                                                    std::string(fockwit::kCriterionIdHelp));
  eval->add_flag("--strict-guard", strict_guard, "refuse states with weight in the guard band");

  auto* sweep = app.add_subcommand("sweep", "evaluate one criterion along a generator parameter");
  std::string sweep_gen;
  std::string sweep_criterion;
  double from = 0.0;
  double to = 1.0;
  double step = 0.01;
  GeneratorFlags sweep_flags;
  sweep->add_option("--generator", sweep_gen, "mixed-s, tmsv, alt-even or coherent")->required();
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--step", step)->required();
  sweep->add_option("--criterion", sweep_criterion, "criterion id")->required();
  sweep_flags.attach(sweep);

  auto* sample = app.add_subcommand("sample-separable", "write random separable states and a manifest");
  int count = 1;
  int modes = 2;
  int cutoff = 3;
  int components = 1;
  std::string out_dir = ".";
  std::string draw = "haar";
  sample->add_option("--count", count)->required();
  sample->add_option("--modes", modes);
  sample->add_option("--cutoff", cutoff)->check(CLI::Range(2, 64));
  sample->add_option("--components", components);
  sample->add_option("--out-dir", out_dir);
  sample->add_option("--draw", draw)->check(CLI::IsMember({"haar", "basis"}));

  auto* verify = app.add_subcommand("verify", "partial-transpose check and bound-function grid");
  std::string verify_state;
  std::string verify_ppt;
  bool f_grid = false;
  verify->add_option("--state", verify_state, "state file");
  verify->add_option("--ppt", verify_ppt, "modes to transpose, e.g. b or 1,2");
  verify->add_flag("--f-grid", f_grid, "minimize the bound function on the default grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*gen) return run_generate(g, gen_name, gen_flags, gen_out);
    if (*eval) return run_evaluate(g, eval_states, eval_criteria, strict_guard);
    if (*sweep) return run_sweep(g, sweep_gen, from, to, step, sweep_criterion, sweep_flags);
    if (*sample) return run_sample(g, count, modes, cutoff, components, out_dir, draw);
    if (*verify) return run_verify(g, verify_state, verify_ppt, f_grid);
  } catch (const Error& e) {
    std::cerr << "fockwit: " << e.what() << '\n';
    if (*gen) return kExitInput;
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "fockwit: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
