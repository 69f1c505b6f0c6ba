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

#include "cdist/verify.hpp"

#include <cmath>
#include <initializer_list>

#include <json.hpp>

#include "cdist/oracle.hpp"
#include "cdist/telswitch.hpp"

namespace cdist {

namespace {

constexpr double kOracleTolerance = 1e-10;
constexpr double kOrderingTolerance = 1e-9;
constexpr double kSwitchIdentityTolerance = 1e-12;
// [Q2, Q1] must be visibly nonzero for the controlled order to matter.
constexpr double kMinCommutator = 0.1;

nlohmann::json case_json(std::initializer_list<BellVector> xs) {
  nlohmann::json j = nlohmann::json::array();
  for (const BellVector& x : xs) j.push_back({x(0), x(1), x(2), x(3)});
  return j;
}

double gap(const BellVector& a, const BellVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Worst of the component and probability deviations between two outcomes.
double outcome_gap(const OracleOutcome& oracle, const DistillOutcome& closed) {
  const DistillOutcome o = oracle.outcome();
  return std::max({gap(o.state, closed.state), std::abs(o.prob - closed.prob), oracle.residual});
}

void record(SuiteResult& s, double residual, const nlohmann::json& inputs) {
  ++s.cases;
  if (residual > s.max_residual || s.worst_case.empty()) {
    s.max_residual = std::max(s.max_residual, residual);
    s.worst_case = inputs.dump();
  }
}

KrausSet dephasing(double p) {
  CMatrix z(2, 2);
  z << 1, 0, 0, -1;
  return {std::sqrt(p) * CMatrix::Identity(2, 2), std::sqrt(1 - p) * z};
}

KrausSet depolarizing(double p) {
  const auto& s = paulis();
  KrausSet k{std::sqrt(1 - 3 * p / 4) * CMatrix(s[0])};
  for (int i = 1; i < 4; ++i) k.push_back(std::sqrt(p / 4) * CMatrix(s[i]));
  return k;
}

DensityMatrix random_qubit_density(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = {g(rng), g(rng)};
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityMatrix(1, rho);
}

}  // namespace

BellVector random_bell_vector(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  BellVector x(e(rng), e(rng), e(rng), e(rng));
  return x / x.sum();
}

VerifyLevel parse_verify_level(const std::string& s) {
  if (s == "quick") return VerifyLevel::Quick;
  if (s == "full") return VerifyLevel::Full;
  throw DomainError("unknown verification level '" + s + "' (expected quick or full)");
}

int trials_for(VerifyLevel level) { return level == VerifyLevel::Full ? 100 : 20; }

SuiteResult verify_dejmps_suite(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult s{"dejmps_oracle", 0, 0, kOracleTolerance, {}};
  for (int t = 0; t < trials; ++t) {
    const BellVector x = random_bell_vector(rng), y = random_bell_vector(rng);
    const double r =
        std::max({outcome_gap(simulate_dejmps(x, y), dejmps(x, y)),
                  gap(simulate_dejmps(x, y, ParityBranch::Only00).unnormalized,
                      simulate_dejmps(x, y, ParityBranch::Only11).unnormalized)});
    record(s, r, case_json({x, y}));
  }
  return s;
}

SuiteResult verify_three_pair_suite(int trials, std::uint64_t seed,
                                    const ThreePairTensor& tensor) {
  std::mt19937_64 rng(seed);
  SuiteResult s{"three_pair_oracle", 0, 0, kOracleTolerance, {}};
  for (int t = 0; t < trials; ++t) {
    const BellVector a = random_bell_vector(rng), b = random_bell_vector(rng),
                     c = random_bell_vector(rng);
    record(s, outcome_gap(simulate_three_pair(a, b, c), three_pair(a, b, c, tensor)),
           case_json({a, b, c}));
  }
  return s;
}

SuiteResult verify_switch_suite(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult s{"switch_oracle", 0, 0, kOracleTolerance, {}};
  for (int t = 0; t < trials; ++t) {
    BellVector x[4];
    for (auto& v : x) v = random_bell_vector(rng);
    const SwitchBranches sim = simulate_switch(x[0], x[1], x[2], x[3]);
    double r = outcome_gap(sim.even, switch_protocol(x[0], x[1], x[2], x[3]));
    // The odd branch is the same mixture with the coherent terms negated.
    const BellVector odd =
        kSwitchBranchWeight * switch_assemble(x[0], switch_components(x[1], x[2], x[3]), false);
    r = std::max({r, gap(sim.odd.unnormalized, odd), sim.odd.residual,
                  std::abs(sim.even.prob() + sim.odd.prob() - sim.checks_passed)});
    record(s, r, case_json({x[0], x[1], x[2], x[3]}));
  }
  return s;
}

SuiteResult verify_ordering_suite(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult s{"kraus_ordering", 0, 0, kOrderingTolerance, {}};
  for (int t = 0; t < trials; ++t) {
    const BellVector a = random_bell_vector(rng), b = random_bell_vector(rng),
                     c = random_bell_vector(rng);
    const OrderingReport rep = verify_kraus_ordering(a, b, c);
    double r = rep.max_residual();
    // A vanishing commutator would make the check vacuous; count it as a failure.
    if (rep.commutator_max_entry <= kMinCommutator) r = std::max(r, 1.0);
    record(s, r, case_json({a, b, c}));
  }
  return s;
}

SuiteResult verify_quantum_switch_suite(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SuiteResult s{"quantum_switch", 0, 0, kSwitchIdentityTolerance, {}};
  CMatrix plus = CMatrix::Constant(2, 2, 0.5);
  for (int t = 0; t < trials; ++t) {
    const DensityMatrix target = random_qubit_density(rng);
    const double p1 = unit(rng), p2 = unit(rng);
    nlohmann::json inputs{{"p1", p1}, {"p2", p2}};

    // Commuting channels: the |-> branch must vanish.
    const KrausSet m = dephasing(p1), n = dephasing(p2);
    const DensityMatrix joint = quantum_switch(m, n, plus, target);
    const FourierBranches br = fourier_branches(joint);
    double r = std::abs(br.minus.trace());
    r = std::max(r, (br.plus.matrix() + br.minus.matrix() -
                     joint.partial_trace({1}).matrix()).cwiseAbs().maxCoeff());

    // Non-commuting channels: the branches follow the (anti)commutator sums.
    const KrausSet a = depolarizing(p1), b = dephasing(p2);
    const FourierBranches nb = fourier_branches(quantum_switch(a, b, plus, target));
    r = std::max(r, (nb.plus.matrix() - switch_branch_formula(a, b, target, 1).matrix())
                        .cwiseAbs()
                        .maxCoeff());
    r = std::max(r, (nb.minus.matrix() - switch_branch_formula(a, b, target, -1).matrix())
                        .cwiseAbs()
                        .maxCoeff());
    record(s, r, inputs);
  }
  return s;
}

SuiteResult verify_teleport_suite(int trials, std::uint64_t seed) {
  SuiteResult s{"teleport_no_advantage", 0, 0, kOracleTolerance, {}};
  const NoAdvantageReport rep = verify_no_advantage(trials, seed);
  s.cases = trials;
  s.max_residual = std::max(rep.max_residual(), pauli_phase_identity_residual());
  s.worst_case = nlohmann::json{{"seed", seed}, {"trials", trials}}.dump();
  return s;
}

bool VerifyReport::passed() const {
  for (const auto& s : suites)
    if (!s.passed()) return false;
  return true;
}

std::string VerifyReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  double worst = 0;
  for (const auto& s : suites) {
    nlohmann::json j{{"name", s.name},
                     {"cases", s.cases},
                     {"max_residual", s.max_residual},
                     {"tolerance", s.tolerance},
                     {"passed", s.passed()}};
    if (!s.passed()) j["failing_case"] = nlohmann::json::parse(s.worst_case);
    arr.push_back(std::move(j));
    worst = std::max(worst, s.max_residual);
  }
  return nlohmann::json{{"passed", passed()}, {"max_residual", worst}, {"suites", std::move(arr)}}
      .dump(2);
}

VerifyReport run_verification(const VerifyOptions& options) {
  const int n = trials_for(options.level);
  const ThreePairTensor& tensor =
      options.tensor ? *options.tensor : ThreePairTensor::cached();
  VerifyReport rep;
  rep.suites.push_back(verify_dejmps_suite(n, options.seed));
  rep.suites.push_back(verify_three_pair_suite(n, options.seed + 1, tensor));
  rep.suites.push_back(verify_switch_suite(n, options.seed + 2));
  rep.suites.push_back(verify_ordering_suite(n, options.seed + 3));
  rep.suites.push_back(verify_quantum_switch_suite(n, options.seed + 4));
  rep.suites.push_back(verify_teleport_suite(n, options.seed + 5));
  return rep;
}

}  // namespace cdist
