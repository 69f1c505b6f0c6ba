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

#include "cdist/plan.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace cdist {

namespace {

void check_leaf(int i) {
  if (i < 0 || i >= kNumInputs) throw DomainError("plan: input index out of range");
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ProtocolPlan top() {
    skip();
    ProtocolPlan p = peek() == 'S' ? switch_plan() : node(true);
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("cannot parse plan '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  int digit() {
    skip();
    const char c = peek();
    if (c < '0' || c > '3') fail("expected an input index 0-3");
    ++pos_;
    return c - '0';
  }

  ProtocolPlan item() {
    skip();
    return peek() == '(' ? node(false) : ProtocolPlan::keep(digit());
  }

  ProtocolPlan node(bool top) {
    expect('(');
    std::vector<ProtocolPlan> items;
    items.push_back(item());
    skip();
    while (peek() == ',') {
      ++pos_;
      items.push_back(item());
      skip();
    }
    expect(')');
    switch (items.size()) {
      case 1:
        if (!top || items[0].kind() != PlanKind::Keep) fail("single-element group");
        return items[0];
      case 2: return ProtocolPlan::dejmps(items[0], items[1]);
      case 3: return ProtocolPlan::three_pair(items[0], items[1], items[2]);
      default: fail("groups hold one, two or three elements");
    }
  }

  ProtocolPlan switch_plan() {
    expect('S');
    expect('[');
    const int c = digit();
    expect('|');
    const int a = digit();
    const int b = digit();
    expect('|');
    const int t = digit();
    expect(']');
    return ProtocolPlan::switched(c, a, b, t);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ProtocolPlan ProtocolPlan::keep(int leaf) {
  check_leaf(leaf);
  ProtocolPlan p;
  p.kind_ = PlanKind::Keep;
  p.leaf_ = leaf;
  return p;
}

ProtocolPlan ProtocolPlan::dejmps(ProtocolPlan a, ProtocolPlan b) {
  ProtocolPlan p;
  p.kind_ = PlanKind::Dejmps;
  if (b.min_leaf() < a.min_leaf()) std::swap(a, b);
  p.children_ = {std::move(a), std::move(b)};
  p.validate();
  return p;
}

ProtocolPlan ProtocolPlan::three_pair(ProtocolPlan a, ProtocolPlan b, ProtocolPlan c) {
  ProtocolPlan p;
  p.kind_ = PlanKind::ThreePair;
  p.children_ = {std::move(a), std::move(b), std::move(c)};
  p.validate();
  return p;
}

ProtocolPlan ProtocolPlan::switched(int control, int swap_a, int swap_b, int target) {
  ProtocolPlan p;
  p.kind_ = PlanKind::Switch;
  if (swap_b < swap_a) std::swap(swap_a, swap_b);
  p.roles_ = {control, swap_a, swap_b, target};
  p.validate();
  return p;
}

ProtocolPlan ProtocolPlan::parse(std::string_view text) { return Parser(text).top(); }

void ProtocolPlan::validate() const {
  std::vector<int> l = leaves();
  for (int i : l) check_leaf(i);
  std::sort(l.begin(), l.end());
  if (std::adjacent_find(l.begin(), l.end()) != l.end()) {
    throw DomainError("plan: an input pair is used more than once");
  }
  if (kind_ == PlanKind::Switch && l.size() != kNumInputs) {
    throw DomainError("plan: the switch protocol uses all four pairs");
  }
}

std::vector<int> ProtocolPlan::leaves() const {
  switch (kind_) {
    case PlanKind::Keep: return {leaf_};
    case PlanKind::Switch: return {roles_.begin(), roles_.end()};
    default: break;
  }
  std::vector<int> out;
  for (const ProtocolPlan& c : children_) {
    const auto l = c.leaves();
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

int ProtocolPlan::min_leaf() const {
  const auto l = leaves();
  return *std::min_element(l.begin(), l.end());
}

std::string ProtocolPlan::encode() const {
  std::string out;
  encode_into(out, true);
  return out;
}

void ProtocolPlan::encode_into(std::string& out, bool top) const {
  switch (kind_) {
    case PlanKind::Keep:
      if (top) out += '(';
      out += char('0' + leaf_);
      if (top) out += ')';
      return;
    case PlanKind::Switch:
      out += "S[";
      out += char('0' + roles_[0]);
      out += '|';
      out += char('0' + roles_[1]);
      out += char('0' + roles_[2]);
      out += '|';
      out += char('0' + roles_[3]);
      out += ']';
      return;
    default:
      out += '(';
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += ',';
        children_[i].encode_into(out, false);
      }
      out += ')';
  }
}

namespace {

struct Partial {
  BellVector state;
  double prob;
};

Partial run(const ProtocolPlan& plan, const InputSet& in) {
  const auto& ch = plan.children();
  switch (plan.kind()) {
    case PlanKind::Keep: return {in[plan.leaf()], 1.0};
    case PlanKind::Dejmps: {
      const Partial a = run(ch[0], in), b = run(ch[1], in);
      const DistillOutcome o = dejmps(a.state, b.state);
      return {o.state, a.prob * b.prob * o.prob};
    }
    case PlanKind::ThreePair: {
      const Partial a = run(ch[0], in), b = run(ch[1], in), c = run(ch[2], in);
      const DistillOutcome o = three_pair(a.state, b.state, c.state);
      return {o.state, a.prob * b.prob * c.prob * o.prob};
    }
    case PlanKind::Switch: {
      const auto& r = plan.switch_roles();
      const DistillOutcome o = switch_protocol(in[r[0]], in[r[1]], in[r[2]], in[r[3]]);
      return {o.state, o.prob};
    }
  }
  throw ContractViolation("evaluate: unknown plan kind");
}

std::vector<std::array<int, 3>> ordered_triples_without(int skip) {
  std::vector<int> rest;
  for (int i = 0; i < kNumInputs; ++i)
    if (i != skip) rest.push_back(i);
  std::vector<std::array<int, 3>> out;
  do {
    out.push_back({rest[0], rest[1], rest[2]});
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

using K = ProtocolPlan;

}  // namespace

DistillOutcome evaluate(const ProtocolPlan& plan, const InputSet& inputs) {
  const Partial p = run(plan, inputs);
  return {p.state, p.prob};
}

std::vector<ProtocolPlan> enumerate_G() {
  std::vector<ProtocolPlan> g;
  for (int i = 0; i < kNumInputs; ++i) g.push_back(K::keep(i));
  for (int a = 0; a < kNumInputs; ++a)
    for (int b = a + 1; b < kNumInputs; ++b) g.push_back(K::dejmps(K::keep(a), K::keep(b)));
  // ((a,b),c) over three of the four pairs.
  for (int skip = 0; skip < kNumInputs; ++skip)
    for (int c = 0; c < kNumInputs; ++c) {
      if (c == skip) continue;
      std::vector<int> ab;
      for (int i = 0; i < kNumInputs; ++i)
        if (i != skip && i != c) ab.push_back(i);
      g.push_back(K::dejmps(K::dejmps(K::keep(ab[0]), K::keep(ab[1])), K::keep(c)));
    }
  // Recurrence: ((a,b),(c,d)).
  for (int partner = 1; partner < kNumInputs; ++partner) {
    std::vector<int> cd;
    for (int i = 1; i < kNumInputs; ++i)
      if (i != partner) cd.push_back(i);
    g.push_back(K::dejmps(K::dejmps(K::keep(0), K::keep(partner)),
                          K::dejmps(K::keep(cd[0]), K::keep(cd[1]))));
  }
  // Pumping: (((a,b),c),d).
  for (int d = 0; d < kNumInputs; ++d)
    for (int c = 0; c < kNumInputs; ++c) {
      if (c == d) continue;
      std::vector<int> ab;
      for (int i = 0; i < kNumInputs; ++i)
        if (i != c && i != d) ab.push_back(i);
      g.push_back(K::dejmps(
          K::dejmps(K::dejmps(K::keep(ab[0]), K::keep(ab[1])), K::keep(c)), K::keep(d)));
    }
  return g;
}

std::vector<ProtocolPlan> enumerate_J() {
  std::vector<ProtocolPlan> j;
  for (int skip = 0; skip < kNumInputs; ++skip)
    for (const auto& t : ordered_triples_without(skip))
      j.push_back(K::three_pair(K::keep(t[0]), K::keep(t[1]), K::keep(t[2])));
  for (int last = 0; last < kNumInputs; ++last)
    for (const auto& t : ordered_triples_without(last))
      j.push_back(K::dejmps(K::three_pair(K::keep(t[0]), K::keep(t[1]), K::keep(t[2])),
                            K::keep(last)));
  for (int a = 0; a < kNumInputs; ++a)
    for (int b = a + 1; b < kNumInputs; ++b) {
      std::vector<int> rest;
      for (int i = 0; i < kNumInputs; ++i)
        if (i != a && i != b) rest.push_back(i);
      const ProtocolPlan prod = K::dejmps(K::keep(a), K::keep(b));
      for (int order = 0; order < 2; ++order) {
        const ProtocolPlan x = K::keep(rest[order]), y = K::keep(rest[1 - order]);
        j.push_back(K::three_pair(prod, x, y));
        j.push_back(K::three_pair(x, prod, y));
        j.push_back(K::three_pair(x, y, prod));
      }
    }
  return j;
}

std::vector<ProtocolPlan> enumerate_S() {
  std::vector<ProtocolPlan> s;
  for (int control = 0; control < kNumInputs; ++control)
    for (int target = 0; target < kNumInputs; ++target) {
      if (target == control) continue;
      std::vector<int> sw;
      for (int i = 0; i < kNumInputs; ++i)
        if (i != control && i != target) sw.push_back(i);
      s.push_back(K::switched(control, sw[0], sw[1], target));
    }
  return s;
}

const std::vector<ProtocolPlan>& plans_G() {
  static const std::vector<ProtocolPlan> g = enumerate_G();
  return g;
}

const std::vector<ProtocolPlan>& plans_J() {
  static const std::vector<ProtocolPlan> j = enumerate_J();
  return j;
}

const std::vector<ProtocolPlan>& plans_S() {
  static const std::vector<ProtocolPlan> s = enumerate_S();
  return s;
}

BestPlan best_of(std::span<const ProtocolPlan> plans, const InputSet& inputs) {
  if (plans.empty()) throw DomainError("best_of: no plans given");
  std::optional<BestPlan> best;
  std::string best_code;
  for (const ProtocolPlan& plan : plans) {
    DistillOutcome o;
    try {
      o = evaluate(plan, inputs);
    } catch (const DegenerateOutcome&) {
      continue;
    }
    const double f = o.fidelity();
    bool better = !best;
    if (best) {
      const double bf = best->outcome.fidelity();
      if (f != bf) {
        better = f > bf;
      } else if (o.prob != best->outcome.prob) {
        better = o.prob > best->outcome.prob;
      } else {
        better = plan.encode() < best_code;
      }
    }
    if (better) {
      best = BestPlan{plan, o};
      best_code = plan.encode();
    }
  }
  if (!best) throw DegenerateOutcome("best_of: every plan has success probability 0");
  return *best;
}

InputSet werner_inputs(const std::array<double, 4>& fidelities) {
  InputSet in;
  for (int i = 0; i < kNumInputs; ++i) in[i] = werner(fidelities[i]);
  return in;
}

}  // namespace cdist
