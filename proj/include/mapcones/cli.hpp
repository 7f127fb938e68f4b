// Copyright 2026 The mapcones Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file    cli.hpp
 * @brief   Command-line front end (classify, scan, fuzz).
 *
 * Exit codes: 0 ok, 2 parse / usage error, 3 invariant failure, 4 fuzz failure.
 */

#ifndef MAPCONES_CLI_HPP
#define MAPCONES_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mapcones/certify.hpp"
#include "mapcones/fuzz.hpp"
#include "mapcones/serialize.hpp"
#include "mapcones/witness.hpp"

namespace mapcones::cli {

enum ExitCode : int { kOk = 0, kParse = 2, kInvariant = 3, kFuzzFailed = 4 };

struct CliConfig {
  SeesawOpts seesaw;
  double tol = 1e-9;
  std::string out;
};

/// Reads {"restarts", "max_iters", "eps_conv", "eps_neg", "seed", "tol"}.
inline void apply_config_json(const json& j, CliConfig& cfg) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "config must be a JSON object");
  auto positive = [](const json& v, const char* key) {
    if (!v.is_number() || !(v.get<double>() > 0))
      throw Error(ErrorCode::Parse, std::string("config \"") + key + "\" must be a positive number");
    return v.get<double>();
  };
  if (j.contains("restarts")) cfg.seesaw.restarts = static_cast<int>(positive(j["restarts"], "restarts"));
  if (j.contains("max_iters")) cfg.seesaw.max_iters = static_cast<int>(positive(j["max_iters"], "max_iters"));
  if (j.contains("eps_conv")) cfg.seesaw.eps_conv = positive(j["eps_conv"], "eps_conv");
  if (j.contains("eps_neg")) cfg.seesaw.eps_neg = positive(j["eps_neg"], "eps_neg");
  if (j.contains("tol")) cfg.tol = positive(j["tol"], "tol");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw Error(ErrorCode::Parse, "config \"seed\" must be an integer");
    cfg.seesaw.seed = j["seed"].get<std::uint64_t>();
  }
}

/// "lo:hi:steps" -> steps evenly spaced points, endpoints included.
inline std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw Error(ErrorCode::Parse, "grid must be lo:hi:steps");
  double lo = 0, hi = 0;
  int steps = 0;
  try {
    lo = std::stod(parts[0]);
    hi = std::stod(parts[1]);
    std::size_t used = 0;
    steps = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::Parse, "grid must be lo:hi:steps");
  }
  if (steps < 1 || hi < lo) throw Error(ErrorCode::Parse, "grid needs steps >= 1 and lo <= hi");
  std::vector<double> grid;
  for (int i = 0; i < steps; ++i)
    grid.push_back(steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (steps - 1));
  return grid;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::Parse, "cannot write " + path);
  f << text;
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::BadFamily:
    case ErrorCode::BadParam:
    case ErrorCode::BadK:
    case ErrorCode::DimMismatch:
      return kParse;
    default:
      return kInvariant;
  }
}

inline int exit_code_for(const FuzzSummary& sum) { return sum.failed == 0 ? kOk : kFuzzFailed; }

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cone-membership certificates for linear maps on matrix algebras", "mapcones"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<double> tol;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config with restarts/max_iters/eps_conv/eps_neg/seed/tol");
    sub->add_option("--seed", seed, "Base seed (default 42)");
    sub->add_option("--restarts", restarts, "See-saw restarts (default 20)");
    sub->add_option("--tol", tol, "Eigenvalue tolerance (default 1e-9)");
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify a map or Choi operator from a JSON file");
  std::string input;
  std::vector<std::string> km_specs;
  classify_cmd->add_option("input", input, "Map or operator JSON")->required();
  classify_cmd->add_option("--km", km_specs, "(k,m) pairs as k,m");
  add_common(classify_cmd);

  auto* scan_cmd = app.add_subcommand("scan", "Scan a state or map family to CSV");
  std::string family_spec, grid_spec;
  int k = 1;
  scan_cmd->add_option("--family", family_spec, "reduction:<d> | isotropic:<d> | werner")->required();
  scan_cmd->add_option("--k", k, "Cone level");
  scan_cmd->add_option("--grid", grid_spec, "lo:hi:steps")->required();
  add_common(scan_cmd);

  auto* fuzz_cmd = app.add_subcommand("fuzz", "Run a seeded invariant battery");
  std::string suite;
  int n = 100;
  FuzzConfig fuzz_cfg;
  fuzz_cmd->add_option("suite", suite, "duality | composition | bijection | adjoint")->required();
  fuzz_cmd->add_option("--n", n, "Number of instances");
  fuzz_cmd->add_option("--d", fuzz_cfg.d, "Dimension");
  fuzz_cmd->add_option("--k", fuzz_cfg.k, "Cone level");
  add_common(fuzz_cmd);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kParse;
  }

  try {
    if (!config_path.empty()) apply_config_json(read_json_file(config_path), cfg);
    if (seed) cfg.seesaw.seed = *seed;
    if (restarts) cfg.seesaw.restarts = *restarts;
    if (tol) cfg.tol = *tol;
    if (cfg.seesaw.restarts < 1 || !(cfg.tol > 0)) throw Error(ErrorCode::Parse, "restarts and tol must be positive");

    if (classify_cmd->parsed()) {
      ClassifyOpts opts;
      opts.seesaw = cfg.seesaw;
      opts.tol = cfg.tol;
      for (const auto& s : km_specs) {
        const auto comma = s.find(',');
        if (comma == std::string::npos) throw Error(ErrorCode::Parse, "--km expects k,m");
        try {
          opts.km_pairs.emplace_back(std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1)));
        } catch (const std::logic_error&) {
          throw Error(ErrorCode::Parse, "--km expects k,m");
        }
      }
      const MapRep phi = map_from_json(read_json_file(input));
      emit(to_json(classify(phi, opts)).dump(2) + "\n", cfg.out, out);
      return kOk;
    }
    if (scan_cmd->parsed()) {
      const auto rows = threshold_scan(parse_family(family_spec), k, parse_grid(grid_spec), cfg.tol, cfg.seesaw);
      emit(scan_to_csv(rows), cfg.out, out);
      return kOk;
    }
    fuzz_cfg.seed = cfg.seesaw.seed;
    const FuzzSummary sum = run_fuzz(suite, n, fuzz_cfg);
    emit(to_json(sum).dump(2) + "\n", cfg.out, out);
    return exit_code_for(sum);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << e.what() << "\n";
    return kParse;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace mapcones::cli

#endif  // MAPCONES_CLI_HPP
