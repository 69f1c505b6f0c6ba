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

// Parameter-space exploration: where does the controlled-order protocol beat
// every definite-order arrangement?

#ifndef CDIST_SEARCH_HPP_
#define CDIST_SEARCH_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cdist/plan.hpp"

namespace cdist {

using FidelityVec = std::array<double, 4>;

/// A grid point is in the advantage region when its margin is below this.
inline constexpr double kMembershipThreshold = -1e-9;

/// Best plan of each set on one input configuration.
struct SetComparison {
  BestPlan g, j, s;
  double margin() const {
    return std::max(g.outcome.fidelity(), j.outcome.fidelity()) - s.outcome.fidelity();
  }
};

SetComparison compare_sets(const InputSet& inputs);

struct AdvantagePoint {
  FidelityVec fvec{};
  double fs = 0, fg = 0, fj = 0;
  double ps = 0, pg = 0, pj = 0;
  double margin = 0;  // max(fg - fs, fj - fs)

  bool advantageous() const { return margin < kMembershipThreshold; }
};

AdvantagePoint make_point(const FidelityVec& fvec, const SetComparison& c);

/// Werner inputs; every fidelity must lie in the open interval (0.25, 1).
AdvantagePoint advantage_margin(const FidelityVec& fvec);

// ---------------------------------------------------------------------------

struct SearchDomain {
  Eigen::VectorXd lower = Eigen::VectorXd::Constant(4, 0.25);
  Eigen::VectorXd upper = Eigen::VectorXd::Constant(4, 1.0);

  Eigen::Index dim() const { return lower.size(); }
  bool contains(const Eigen::VectorXd& x) const;
  /// Mirror x back into [lower + shrink, upper - shrink].
  Eigen::VectorXd reflect(Eigen::VectorXd x, double shrink) const;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct BasinHopOptions {
  int hops = 200;
  double step = 0.05;          // uniform perturbation radius per coordinate
  double temperature = 0.01;   // Metropolis acceptance on the objective
  double shrink = 1e-6;        // keeps points strictly inside the open domain
  int local_iterations = 300;  // Nelder-Mead budget per local refinement
  double local_tolerance = 1e-10;
  double initial_simplex = 0.02;
};

struct SearchResult {
  Eigen::VectorXd x;
  double value = 0;
  long evaluations = 0;
};

/// Derivative-free simplex descent, confined to the domain by reflection.
SearchResult nelder_mead(const Objective& f, const SearchDomain& domain, Eigen::VectorXd start,
                         const BasinHopOptions& options);

/// Deterministic for a fixed seed and options.
SearchResult basin_hop(const Objective& f, const SearchDomain& domain, std::uint64_t seed,
                       const BasinHopOptions& options = {});

// ---------------------------------------------------------------------------

/// Cell-centred grid coordinate k of n over (0.25, 1).
double grid_value(int k, int n);

/// Runs body(i) for i in [0, count) on up to `jobs` threads (0 = all cores).
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

struct RegionScan {
  double f3 = 0;
  int grid = 0;
  std::vector<AdvantagePoint> points;  // every grid point, index (i0 * n + i1) * n + i2

  std::vector<AdvantagePoint> members() const;
};

RegionScan region_scan_3d(double f3, int grid, unsigned jobs = 0);

struct MapCell {
  double f0 = 0, f1 = 0;
  std::string best_g, best_s, best_j;
  int s_control = 0;
  AdvantagePoint point;
};

struct ProtocolMap {
  double f2 = 0, f3 = 0;
  int grid = 0;
  std::vector<MapCell> cells;  // index i0 * n + i1
};

ProtocolMap protocol_map_2d(double f2, double f3, int grid, unsigned jobs = 0);

struct BiasSweepRow {
  PauliAxis axis = PauliAxis::Z;
  double r = 0;
  double fs = 0, fg = 0, fj = 0;
};

std::vector<BiasSweepRow> bias_sweep(const FidelityVec& fvec, PauliAxis axis,
                                     const std::vector<double>& r_grid, unsigned jobs = 0);

/// n evenly spaced values from 0 to 1 inclusive.
std::vector<double> unit_steps(int n);

// ---------------------------------------------------------------------------
// Output. Numbers use 6 significant digits unless full precision is asked for.

struct NumberFormat {
  bool full = false;
  std::string operator()(double v) const;
};

void write_scan_csv(std::ostream& os, const RegionScan& scan, const NumberFormat& fmt,
                    bool advantage_only = false);
void write_map_csv(std::ostream& os, const ProtocolMap& map, const NumberFormat& fmt);
void write_map_svg(std::ostream& os, const ProtocolMap& map, int cell_px = 3);
void write_bias_csv(std::ostream& os, const std::vector<BiasSweepRow>& rows,
                    const NumberFormat& fmt);

}  // namespace cdist

#endif  // CDIST_SEARCH_HPP_
