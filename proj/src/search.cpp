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

#include "cdist/search.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace cdist {

SetComparison compare_sets(const InputSet& inputs) {
  return {best_of(plans_G(), inputs), best_of(plans_J(), inputs), best_of(plans_S(), inputs)};
}

AdvantagePoint make_point(const FidelityVec& fvec, const SetComparison& c) {
  AdvantagePoint p;
  p.fvec = fvec;
  p.fs = c.s.outcome.fidelity();
  p.fg = c.g.outcome.fidelity();
  p.fj = c.j.outcome.fidelity();
  p.ps = c.s.outcome.prob;
  p.pg = c.g.outcome.prob;
  p.pj = c.j.outcome.prob;
  p.margin = c.margin();
  return p;
}

AdvantagePoint advantage_margin(const FidelityVec& fvec) {
  for (double f : fvec) {
    if (!(f > 0.25 && f < 1.0)) {
      throw DomainError("advantage_margin: fidelities must lie in (0.25, 1)");
    }
  }
  return make_point(fvec, compare_sets(werner_inputs(fvec)));
}

// ---------------------------------------------------------------------------

bool SearchDomain::contains(const Eigen::VectorXd& x) const {
  return x.size() == dim() && (x.array() > lower.array()).all() &&
         (x.array() < upper.array()).all();
}

Eigen::VectorXd SearchDomain::reflect(Eigen::VectorXd x, double shrink) const {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double lo = lower(i) + shrink, hi = upper(i) - shrink;
    const double width = hi - lo;
    // Unfold onto a period-2w sawtooth.
    double t = std::fmod(x(i) - lo, 2 * width);
    if (t < 0) t += 2 * width;
    x(i) = lo + (t <= width ? t : 2 * width - t);
  }
  return x;
}

SearchResult nelder_mead(const Objective& f, const SearchDomain& domain, Eigen::VectorXd start,
                         const BasinHopOptions& options) {
  const Eigen::Index n = domain.dim();
  SearchResult res;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++res.evaluations;
    return f(x);
  };
  auto inside = [&](Eigen::VectorXd x) { return domain.reflect(std::move(x), options.shrink); };

  std::vector<Eigen::VectorXd> simplex(n + 1, inside(std::move(start)));
  std::vector<double> values(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    simplex[i + 1](i) += options.initial_simplex;
    simplex[i + 1] = inside(simplex[i + 1]);
  }
  for (Eigen::Index i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  for (int it = 0; it < options.local_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (values[worst] - values[best] <= options.local_tolerance) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += simplex[order[i]];
    centroid /= double(n);

    const Eigen::VectorXd xr = inside(centroid + (centroid - simplex[worst]));
    const double fr = eval(xr);
    if (fr < values[best]) {
      const Eigen::VectorXd xe = inside(centroid + 2.0 * (centroid - simplex[worst]));
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = xr;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const Eigen::VectorXd xc = outside ? inside(centroid + 0.5 * (xr - centroid))
                                       : inside(centroid + 0.5 * (simplex[worst] - centroid));
    const double fc = eval(xc);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = xc;
      values[worst] = fc;
      continue;
    }
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (std::size_t(i) == best) continue;
      simplex[i] = inside(simplex[best] + 0.5 * (simplex[i] - simplex[best]));
      values[i] = eval(simplex[i]);
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  res.x = simplex[it - values.begin()];
  res.value = *it;
  return res;
}

SearchResult basin_hop(const Objective& f, const SearchDomain& domain, std::uint64_t seed,
                       const BasinHopOptions& options) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::Index n = domain.dim();

  Eigen::VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    start(i) = domain.lower(i) + unit(rng) * (domain.upper(i) - domain.lower(i));
  }
  SearchResult current = nelder_mead(f, domain, start, options);
  SearchResult best = current;
  long evaluations = current.evaluations;

  for (int hop = 0; hop < options.hops; ++hop) {
    Eigen::VectorXd trial = current.x;
    for (Eigen::Index i = 0; i < n; ++i) trial(i) += options.step * (2.0 * unit(rng) - 1.0);
    SearchResult local = nelder_mead(f, domain, domain.reflect(trial, options.shrink), options);
    evaluations += local.evaluations;
    const double u = unit(rng);
    const bool accept = local.value <= current.value ||
                        u < std::exp(-(local.value - current.value) / options.temperature);
    if (accept) current = local;
    if (local.value < best.value) best = local;
  }
  best.evaluations = evaluations;
  return best;
}

// ---------------------------------------------------------------------------

double grid_value(int k, int n) { return 0.25 + 0.75 * (k + 0.5) / n; }

void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& body) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<AdvantagePoint> RegionScan::members() const {
  std::vector<AdvantagePoint> out;
  for (const auto& p : points)
    if (p.advantageous()) out.push_back(p);
  return out;
}

RegionScan region_scan_3d(double f3, int grid, unsigned jobs) {
  if (!(f3 > 0.25 && f3 < 1.0)) throw DomainError("region_scan_3d: f3 must lie in (0.25, 1)");
  if (grid < 1) throw DomainError("region_scan_3d: grid must be positive");
  RegionScan scan{f3, grid, {}};
  const std::size_t n = grid;
  scan.points.resize(n * n * n);
  parallel_for(scan.points.size(), jobs, [&](std::size_t idx) {
    const int i0 = int(idx / (n * n)), i1 = int(idx / n % n), i2 = int(idx % n);
    scan.points[idx] =
        advantage_margin({grid_value(i0, grid), grid_value(i1, grid), grid_value(i2, grid), f3});
  });
  return scan;
}

ProtocolMap protocol_map_2d(double f2, double f3, int grid, unsigned jobs) {
  for (double f : {f2, f3}) {
    if (!(f > 0.25 && f < 1.0)) throw DomainError("protocol_map_2d: f2, f3 must lie in (0.25, 1)");
  }
  if (grid < 1) throw DomainError("protocol_map_2d: grid must be positive");
  ProtocolMap map{f2, f3, grid, {}};
  const std::size_t n = grid;
  map.cells.resize(n * n);
  parallel_for(map.cells.size(), jobs, [&](std::size_t idx) {
    const FidelityVec fvec{grid_value(int(idx / n), grid), grid_value(int(idx % n), grid), f2, f3};
    const SetComparison c = compare_sets(werner_inputs(fvec));
    MapCell& cell = map.cells[idx];
    cell.f0 = fvec[0];
    cell.f1 = fvec[1];
    cell.best_g = c.g.plan.encode();
    cell.best_s = c.s.plan.encode();
    cell.best_j = c.j.plan.encode();
    cell.s_control = c.s.plan.switch_roles()[0];
    cell.point = make_point(fvec, c);
  });
  return map;
}

std::vector<BiasSweepRow> bias_sweep(const FidelityVec& fvec, PauliAxis axis,
                                     const std::vector<double>& r_grid, unsigned jobs) {
  std::vector<BiasSweepRow> rows(r_grid.size());
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    InputSet in;
    for (int k = 0; k < kNumInputs; ++k) in[k] = biased_state(fvec[k], axis, r_grid[i]);
    const SetComparison c = compare_sets(in);
    rows[i] = {axis, r_grid[i], c.s.outcome.fidelity(), c.g.outcome.fidelity(),
               c.j.outcome.fidelity()};
  });
  return rows;
}

std::vector<double> unit_steps(int n) {
  if (n < 2) throw DomainError("unit_steps: need at least two steps");
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) r[i] = double(i) / (n - 1);
  return r;
}

}  // namespace cdist
