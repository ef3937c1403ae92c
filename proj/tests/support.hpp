#pragma once

// Independent oracles used by the tests: a direct recursive evaluator for
// mu-recursive expressions and a dense, every-timestep simulator for plain
// neuron/synapse circuits.

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "neurorec/engine.hpp"
#include "neurorec/murec.hpp"

namespace testsupport {

using neurorec::murec::Natural;

/// Textbook semantics by direct recursion; `budget` bounds the total number
/// of minimization candidates tried.
inline std::optional<Natural> naive_eval(const neurorec::murec::RecExpr& e,
                                         const std::vector<Natural>& x, int& budget) {
  namespace mr = neurorec::murec;
  if (const auto* c = std::get_if<mr::Const>(&e.node)) return c->k;
  if (std::holds_alternative<mr::Succ>(e.node)) return x.at(0) + 1;
  if (const auto* p = std::get_if<mr::Proj>(&e.node)) return x.at(p->i - 1);
  if (const auto* c = std::get_if<mr::Compose>(&e.node)) {
    std::vector<Natural> inner;
    for (const auto& g : c->gs) {
      auto v = naive_eval(*g, x, budget);
      if (!v) return std::nullopt;
      inner.push_back(*v);
    }
    return naive_eval(*c->h, inner, budget);
  }
  if (const auto* p = std::get_if<mr::PrimRec>(&e.node)) {
    const std::vector<Natural> rest(x.begin() + 1, x.end());
    if (x.at(0) == 0) return naive_eval(*p->g, rest, budget);
    std::vector<Natural> prev = x;
    prev[0] -= 1;
    auto acc = naive_eval(e, prev, budget);
    if (!acc) return std::nullopt;
    std::vector<Natural> hargs{prev[0], *acc};
    hargs.insert(hargs.end(), rest.begin(), rest.end());
    return naive_eval(*p->h, hargs, budget);
  }
  const auto& m = std::get<mr::Mu>(e.node);
  for (Natural z = 1; budget-- > 0; ++z) {
    std::vector<Natural> fargs{z};
    fargs.insert(fargs.end(), x.begin(), x.end());
    auto v = naive_eval(*m.f, fargs, budget);
    if (!v) return std::nullopt;
    if (*v == 0) return z;
  }
  return std::nullopt;
}

/// Walks every timestep from 0 to `horizon` keeping explicit per-neuron
/// state. Circuits with native gadgets are not supported.
inline std::vector<neurorec::SpikeEvent> dense_simulate(
    const neurorec::Circuit& c, const std::vector<neurorec::Injection>& extra,
    neurorec::Time horizon) {
  using namespace neurorec;
  const auto n = c.neurons.size();
  std::map<Time, std::vector<std::pair<NeuronId, Value>>> arrivals;
  for (const auto& i : c.injections) arrivals[i.time].push_back({i.neuron, i.value});
  for (const auto& i : extra) arrivals[i.time].push_back({i.neuron, i.value});
  std::vector<Value> v(n, 0);
  std::vector<Time> idle(n, 0);  // steps since last integration
  std::vector<SpikeEvent> spikes;
  for (Time t = 0; t <= horizon; ++t) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto leak = c.neurons[k].leak;
      if (!leak.is_infinite() && idle[k] > leak.steps()) v[k] = 0;
    }
    std::vector<Value> sum(n, 0);
    std::vector<bool> hit(n, false);
    if (auto it = arrivals.find(t); it != arrivals.end())
      for (const auto& [target, value] : it->second) {
        sum[target] += value;
        hit[target] = true;
      }
    for (std::size_t k = 0; k < n; ++k) {
      ++idle[k];
      if (!hit[k]) continue;
      v[k] += sum[k];
      idle[k] = 1;
      if (v[k] >= c.neurons[k].threshold) {
        spikes.push_back({t, static_cast<NeuronId>(k), v[k]});
        for (const auto& s : c.synapses)
          if (s.pre == k) arrivals[t + s.delay + 1].push_back({s.post, s.weight * v[k]});
        v[k] = 0;
      }
    }
  }
  return spikes;
}

}  // namespace testsupport
