// Copyright 2026 The causaldistill Authors
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

// causaldistill: command-line front end.
//
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdist/bell.hpp"
#include "cdist/oracle.hpp"
#include "cdist/plan.hpp"
#include "cdist/search.hpp"
#include "cdist/telswitch.hpp"
#include "cdist/verify.hpp"

namespace {

using namespace cdist;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string precision = "short";
  unsigned jobs = 0;
  std::uint64_t seed = 7;

  NumberFormat format() const { return {precision == "full"}; }
  double round(double v) const { return std::stod(format()(v)); }
};

// Writes to the named file, or stdout for "" / "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<double> split_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw UsageError("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

FidelityVec parse_fvec(const std::string& text) {
  const auto v = split_numbers(text, ',');
  if (v.size() != 4) throw UsageError("expected four comma-separated fidelities");
  return {v[0], v[1], v[2], v[3]};
}

InputSet parse_bell_set(const std::string& text) {
  std::stringstream ss(text);
  std::string part;
  std::vector<BellVector> xs;
  while (std::getline(ss, part, ';')) {
    const auto v = split_numbers(part, ',');
    if (v.size() != 4) throw UsageError("each Bell vector needs four weights");
    BellVector x(v[0], v[1], v[2], v[3]);
    if (!is_normalized(x, 1e-9)) {
      throw UsageError("Bell vector '" + part + "' is not a normalized nonnegative vector");
    }
    xs.push_back(x);
  }
  if (xs.size() != kNumInputs) throw UsageError("expected four ';'-separated Bell vectors");
  return {xs[0], xs[1], xs[2], xs[3]};
}

json bell_json(const BellVector& x, const Common& c) {
  return json::array({c.round(x(0)), c.round(x(1)), c.round(x(2)), c.round(x(3))});
}

json best_json(const BestPlan& b, const Common& c) {
  return {{"plan", b.plan.encode()},
          {"state", bell_json(b.outcome.state, c)},
          {"fidelity", c.round(b.outcome.fidelity())},
          {"prob", c.round(b.outcome.prob)}};
}

// ---------------------------------------------------------------------------

struct CompareArgs {
  std::string werner, bell, output, oracle_dump;
};

int cmd_compare(const CompareArgs& a, const Common& c) {
  if (a.werner.empty() == a.bell.empty()) {
    throw UsageError("compare: give exactly one of --werner or --bell");
  }
  InputSet in;
  if (!a.werner.empty()) {
    const FidelityVec f = parse_fvec(a.werner);
    for (double v : f) {
      if (!(v > 0.25 && v <= 1.0)) throw UsageError("Werner fidelities must lie in (0.25, 1]");
    }
    in = werner_inputs(f);
  } else {
    in = parse_bell_set(a.bell);
  }
  const SetComparison cmp = compare_sets(in);
  json inputs = json::array();
  for (const auto& x : in) inputs.push_back(bell_json(x, c));
  const json report{{"inputs", inputs},
                    {"G", best_json(cmp.g, c)},
                    {"J", best_json(cmp.j, c)},
                    {"S", best_json(cmp.s, c)},
                    {"margin", c.round(cmp.margin())},
                    {"advantage", cmp.margin() < kMembershipThreshold}};
  Output out(a.output);
  out.stream() << report.dump(2) << '\n';

  if (!a.oracle_dump.empty()) {
    // Replays the winning switch assignment gate by gate, one JSON line per stage.
    Output dump(a.oracle_dump);
    const auto& r = cmp.s.plan.switch_roles();
    simulate_switch(in[r[0]], in[r[1]], in[r[2]], in[r[3]],
                    [&](std::string_view stage, const DensityMatrix& rho) {
                      dump.stream() << "{\"stage\":\"" << stage
                                    << "\",\"rho\":" << to_json(rho) << "}\n";
                    });
  }
  return kExitOk;
}

struct ScanArgs {
  double f3 = 0.539;
  int grid = 41;
  bool advantage_only = false;
  std::string output;
};

int cmd_scan(const ScanArgs& a, const Common& c) {
  const RegionScan scan = region_scan_3d(a.f3, a.grid, c.jobs);
  Output out(a.output);
  write_scan_csv(out.stream(), scan, c.format(), a.advantage_only);
  std::cerr << "scan: " << scan.members().size() << " of " << scan.points.size()
            << " grid points in the advantage region\n";
  return kExitOk;
}

struct MapArgs {
  double f2 = 0.5888, f3 = 0.539;
  int grid = 201;
  int cell_px = 3;
  std::string output, svg;
};

int cmd_map(const MapArgs& a, const Common& c) {
  const ProtocolMap map = protocol_map_2d(a.f2, a.f3, a.grid, c.jobs);
  Output out(a.output);
  write_map_csv(out.stream(), map, c.format());
  if (!a.svg.empty()) {
    Output svg(a.svg);
    write_map_svg(svg.stream(), map, a.cell_px);
  }
  return kExitOk;
}

struct BiasArgs {
  std::string axis = "Z";
  std::string fvec = "0.539,0.6332,0.6332,0.5888";
  int steps = 51;
  std::string output;
};

int cmd_bias(const BiasArgs& a, const Common& c) {
  const FidelityVec f = parse_fvec(a.fvec);
  const auto rows = bias_sweep(f, parse_axis(a.axis), unit_steps(a.steps), c.jobs);
  Output out(a.output);
  write_bias_csv(out.stream(), rows, c.format());
  return kExitOk;
}

struct SearchArgs {
  int starts = 8;
  int hops = 200;
  std::string output;
};

int cmd_search(const SearchArgs& a, const Common& c) {
  if (a.starts < 1 || a.hops < 0) throw UsageError("search: need at least one start");
  BasinHopOptions opt;
  opt.hops = a.hops;
  const SearchDomain domain;
  const Objective margin = [](const Eigen::VectorXd& x) {
    return advantage_margin({x(0), x(1), x(2), x(3)}).margin;
  };
  std::vector<SearchResult> results(a.starts);
  parallel_for(results.size(), c.jobs, [&](std::size_t i) {
    results[i] = basin_hop(margin, domain, c.seed + i, opt);
  });
  json runs = json::array();
  std::size_t best = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const AdvantagePoint p = advantage_margin({r.x(0), r.x(1), r.x(2), r.x(3)});
    runs.push_back({{"seed", c.seed + i},
                    {"fvec", {c.round(p.fvec[0]), c.round(p.fvec[1]), c.round(p.fvec[2]),
                              c.round(p.fvec[3])}},
                    {"margin", c.round(p.margin)},
                    {"FS", c.round(p.fs)},
                    {"FG", c.round(p.fg)},
                    {"FJ", c.round(p.fj)},
                    {"evaluations", r.evaluations}});
    if (r.value < results[best].value) best = i;
  }
  Output out(a.output);
  out.stream() << json{{"runs", runs}, {"best", runs[best]}}.dump(2) << '\n';
  return kExitOk;
}

struct VerifyArgs {
  std::string level = "quick";
  bool corrupt_tensor = false;
  std::string output;
};

int cmd_verify(const VerifyArgs& a, const Common& c) {
  VerifyOptions opt;
  opt.level = parse_verify_level(a.level);
  opt.seed = c.seed;
  ThreePairTensor corrupted;
  if (a.corrupt_tensor) {
    corrupted = ThreePairTensor::cached();
    corrupted.at(1, 2, 3) += BellVector(0.01, 0, 0, 0);
    opt.tensor = &corrupted;
  }
  const VerifyReport rep = run_verification(opt);
  Output out(a.output);
  out.stream() << rep.to_json() << '\n';
  return rep.passed() ? kExitOk : kExitVerification;
}

struct TeleportArgs {
  int trials = 100;
  std::string output;
};

int cmd_teleport(const TeleportArgs& a, const Common& c) {
  if (a.trials < 1) throw UsageError("teleport-check: need at least one trial");
  const NoAdvantageReport rep = verify_no_advantage(a.trials, c.seed);
  json j = json::parse(rep.to_json());
  j["passed"] = rep.passed();
  if (c.precision != "full") {
    for (auto& t : j["trials"]) {
      for (auto& [k, v] : t.items()) v = c.round(v.get<double>());
    }
  }
  Output out(a.output);
  out.stream() << j.dump(2) << '\n';
  return rep.passed() ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement distillation with a coherently controlled order of DEJMPS steps"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; flags override it");

  Common common;
  app.add_option("--precision", common.precision, "Number format: short (6 digits) or full")
      ->check(CLI::IsMember({"short", "full"}));
  app.add_option("--jobs", common.jobs, "Worker threads (0 = all cores)");
  app.add_option("--seed", common.seed, "Random seed");

  CompareArgs compare;
  auto* c_cmd = app.add_subcommand("compare", "Best plan of each protocol set on four inputs");
  c_cmd->add_option("--werner", compare.werner, "Four Werner fidelities, comma separated");
  c_cmd->add_option("--bell", compare.bell, "Four Bell vectors 'a,b,c,d;...'");
  c_cmd->add_option("-o,--output", compare.output, "JSON report path (default stdout)");
  c_cmd->add_option("--oracle-dump", compare.oracle_dump,
                    "Write the gate-level density matrices of the best switch plan");

  ScanArgs scan;
  auto* s_cmd = app.add_subcommand("scan", "Advantage region on an (F0, F1, F2) grid");
  s_cmd->add_option("--f3", scan.f3, "Fixed F3");
  s_cmd->add_option("--grid", scan.grid, "Points per axis")->check(CLI::Range(1, 400));
  s_cmd->add_flag("--advantage-only", scan.advantage_only, "Only rows inside the region");
  s_cmd->add_option("-o,--output", scan.output, "CSV path (default stdout)");

  MapArgs map;
  auto* m_cmd = app.add_subcommand("map", "Best plans per (F0, F1) cell at fixed F2, F3");
  m_cmd->add_option("--f2", map.f2, "Fixed F2");
  m_cmd->add_option("--f3", map.f3, "Fixed F3");
  m_cmd->add_option("--grid", map.grid, "Cells per axis")->check(CLI::Range(1, 2000));
  m_cmd->add_option("-o,--output", map.output, "CSV path (default stdout)");
  m_cmd->add_option("--svg", map.svg, "SVG heat map path");
  m_cmd->add_option("--cell-px", map.cell_px, "SVG pixels per cell")->check(CLI::Range(1, 50));

  BiasArgs bias;
  auto* b_cmd = app.add_subcommand("bias", "Sweep the noise-bias degree on one Pauli axis");
  b_cmd->add_option("--axis", bias.axis, "X, Y or Z");
  b_cmd->add_option("--fvec", bias.fvec, "Four base fidelities");
  b_cmd->add_option("--steps", bias.steps, "Number of r values in [0, 1]")
      ->check(CLI::Range(2, 100000));
  b_cmd->add_option("-o,--output", bias.output, "CSV path (default stdout)");

  SearchArgs search;
  auto* h_cmd = app.add_subcommand("search", "Basin-hopping search for the most negative margin");
  h_cmd->add_option("--starts", search.starts, "Independent runs (seeds seed, seed+1, ...)");
  h_cmd->add_option("--hops", search.hops, "Hops per run");
  h_cmd->add_option("-o,--output", search.output, "JSON path (default stdout)");

  VerifyArgs verify;
  auto* v_cmd = app.add_subcommand("verify", "Cross-check closed forms against the oracle");
  v_cmd->add_option("--level", verify.level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  v_cmd->add_flag("--corrupt-tensor", verify.corrupt_tensor,
                  "Perturb the three-pair tensor (negative control)")
      ->group("");
  v_cmd->add_option("-o,--output", verify.output, "JSON path (default stdout)");

  TeleportArgs tel;
  auto* t_cmd = app.add_subcommand("teleport-check",
                                   "Switched vs sequential teleportation with identical pairs");
  t_cmd->add_option("--trials", tel.trials, "Random target states");
  t_cmd->add_option("-o,--output", tel.output, "JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_cmd) return cmd_compare(compare, common);
    if (*s_cmd) return cmd_scan(scan, common);
    if (*m_cmd) return cmd_map(map, common);
    if (*b_cmd) return cmd_bias(bias, common);
    if (*h_cmd) return cmd_search(search, common);
    if (*v_cmd) return cmd_verify(verify, common);
    if (*t_cmd) return cmd_teleport(tel, common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerification;
  }
  return kExitUsage;
}
