// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "neurorec/compiler.hpp"
#include "neurorec/diff.hpp"
#include "neurorec/gadgets.hpp"
#include "neurorec/raster_io.hpp"

using namespace neurorec;
namespace mr = neurorec::murec;

namespace {

constexpr Value kBigM = 1'000'000'000;

// Faults of any kind seen by the suites running at kBigM.
std::size_t g_faults = 0;

struct Check {
  bool ok = true;
  std::string first_failure;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

RunOutcome run(const Circuit& c, const std::vector<Injection>& inj, Time max_steps = 1'000'000,
               bool trace = false) {
  SimConfig cfg;
  cfg.max_steps = max_steps;
  cfg.big_m = kBigM;
  cfg.record_trace = trace;
  auto out = simulate(c, inj, cfg);
  if (out.fault) ++g_faults;
  return out;
}

std::string csv(const Raster& r) {
  std::ostringstream ss;
  write_raster(ss, r, RasterFormat::Csv);
  return ss.str();
}

// ---- 1 ----------------------------------------------------------------------

Check engine_semantics() {
  Check c;
  for (Time delay : {0, 1, 3, 10}) {
    CircuitBuilder b;
    const auto a = b.add_neuron(0, kRelayLeak);
    const auto z = b.add_neuron(0, kRelayLeak);
    b.add_synapse(a, z, 2, delay);
    b.inject(a, 3, 0);
    const auto out = run(std::move(b).build(), {});
    const auto s = out.raster.spikes_of(z);
    c.expect(s.size() == 1 && s[0].time == delay + 1 && s[0].value == 6,
             "transit law, delay " + std::to_string(delay));
  }
  {
    CircuitBuilder b;
    const auto idle = b.add_neuron(0, kInfiniteLeak);
    const auto clock = b.add_neuron(0, kRelayLeak);
    b.inject(clock, 1, 0);
    b.inject(clock, 1, 10'000);
    const auto out = run(std::move(b).build(), {});
    c.expect(out.raster.spikes_of(idle).empty() && out.final_clock == 10'000,
             "no spontaneous spikes");
  }
  {
    CircuitBuilder b;
    const auto n = b.add_neuron(5, kInfiniteLeak);
    b.inject(n, 3, 0);
    b.inject(n, 3, 1);
    b.inject(n, 3, 2);
    const auto s = run(std::move(b).build(), {}).raster.spikes_of(n);
    c.expect(s.size() == 1 && s[0].time == 1 && s[0].value == 6, "reset law");
  }
  for (bool infinite : {false, true}) {
    CircuitBuilder b;
    const auto n = b.add_neuron(5, infinite ? kInfiniteLeak : Leak(0));
    b.inject(n, 3, 0);
    b.inject(n, 3, 5);
    const auto s = run(std::move(b).build(), {}).raster.spikes_of(n);
    c.expect(infinite ? (s.size() == 1 && s[0].value == 6) : s.empty(),
             infinite ? "infinite leak keeps state" : "zero leak forgets state");
  }
  {
    const auto prog = lower(*mr::programs::mul());
    const auto inj = bind_arguments(prog, {4, 5});
    c.expect(csv(run(prog.circuit, inj).raster) == csv(run(prog.circuit, inj).raster),
             "determinism");
  }
  return c;
}

// ---- 2 ----------------------------------------------------------------------

Check primitive_circuits() {
  Check c;
  for (Value k : {0, 1, 5, 100})
    for (auto form : {ConstantForm::Primitive, ConstantForm::Native}) {
      const auto box = build_constant(k, form);
      for (Value x = 0; x <= 20; ++x) {
        const auto out = run(box.circuit, bind_inputs(box, {x}));
        const auto y = out.raster.outputs_of("y");
        c.expect(y.size() == 1 && y[0].value == k && y[0].time == box.latency.steps(),
                 "constant " + std::to_string(k) + " at x = " + std::to_string(x));
      }
    }
  const auto succ = build_successor();
  for (Value x = 0; x <= 100; ++x) {
    const auto y = run(succ.circuit, bind_inputs(succ, {x})).raster.outputs_of("y");
    c.expect(y.size() == 1 && y[0].value == x + 1 && y[0].time == succ.latency.steps(),
             "successor at x = " + std::to_string(x));
  }
  return c;
}

// ---- 3 ----------------------------------------------------------------------

Check projection() {
  Check c;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<Value> arg(0, 100);
  for (std::uint32_t n = 1; n <= 6; ++n) {
    const auto box = build_projection(n, kBigM);
    for (std::uint32_t i = 1; i <= n; ++i)
      for (int sample = 0; sample < 50; ++sample) {
        std::vector<Value> values{static_cast<Value>(i)};
        for (std::uint32_t m = 0; m < n; ++m) values.push_back(arg(rng));
        const auto out = run(box.circuit, bind_inputs(box, values));
        const auto y = out.raster.outputs_of("y");
        const std::string where = "N = " + std::to_string(n) + ", i = " + std::to_string(i);
        c.expect(y.size() == 1 && y[0].value == values[i] && y[0].time == kProjectionLatency,
                 "projection value, " + where);
        for (std::uint32_t m = 1; m <= n; ++m) {
          const auto id = box.labels.at("coincide" + std::to_string(m));
          c.expect(id == 2 * n + m, "coincidence layer numbering");
          c.expect(out.raster.spikes_of(id).size() == (m <= i ? 1u : 0u),
                   "coincidence pattern, " + where + ", m = " + std::to_string(m));
        }
      }
  }
  return c;
}

// ---- 4 ----------------------------------------------------------------------

Check trigger_cell() {
  Check c;
  const auto cell = build_trigger_cell(kBigM);
  SimConfig cfg;
  cfg.big_m = kBigM;
  auto outputs = [&](const std::vector<TriggerInput>& in) {
    const auto out = run_trigger_cell(cell, in, cfg);
    if (out.fault) ++g_faults;
    std::vector<std::pair<Time, Value>> ys;
    for (const auto& y : out.raster.outputs_of("y")) ys.emplace_back(y.time, y.value);
    return ys;
  };
  using P = std::vector<std::pair<Time, Value>>;
  c.expect(outputs({{TriggerPin::Store, 42, 1}, {TriggerPin::Trigger, kBigM, 3}}) == P{{4, 42}},
           "store then trigger");
  c.expect(outputs({{TriggerPin::Store, 42, 1},
                    {TriggerPin::Erase, -42, 2},
                    {TriggerPin::Trigger, kBigM, 3}}) == P{{4, 0}},
           "store, erase, trigger");
  std::vector<TriggerInput> cycles;
  P expected;
  Time t = 1;
  for (Value v : {7, 0, 19}) {
    cycles.push_back({TriggerPin::Store, v, t});
    cycles.push_back({TriggerPin::Trigger, kBigM, t + 1});
    expected.emplace_back(t + 2, v);
    t += 1 + kTriggerReuseGap;
  }
  c.expect(outputs(cycles) == expected, "three reuse cycles");
  bool rejected = false;
  try {
    outputs({{TriggerPin::Store, 5, 3}, {TriggerPin::Trigger, kBigM, 3}});
  } catch (const PreconditionViolation&) {
    rejected = true;
  }
  c.expect(rejected, "simultaneous store and trigger rejected");
  return c;
}

// ---- 5 ----------------------------------------------------------------------

Check composition() {
  Check c;
  RandomOptions r;
  r.count = 1000;
  r.depth = 3;
  r.samples = 5;
  r.seed = 20240601;
  DiffOptions opts;
  opts.big_m = kBigM;
  const auto report = diff_random(r, opts);
  g_faults += report.faults;
  c.expect(report.cases == 5000, "5000 cases");
  c.expect(report.ok(), report.ok() ? "" : describe(report.mismatches.front()));
  return c;
}

// ---- 6 and 7 ----------------------------------------------------------------

std::vector<Time> deliveries(const RunOutcome& o, NeuronId target, NeuronId from) {
  std::vector<Time> out;
  for (const auto& d : o.trace)
    if (d.target == target && d.source == DeliverySource::Synapse && d.source_id == from)
      out.push_back(d.time);
  return out;
}

// Every return delivery at a result cell lands strictly before the next
// erase delivery there. Checked for each prec and mu instance in `p`.
bool race_order_holds(const CompiledProgram& p, const RunOutcome& o) {
  struct Site {
    const char* store;
    const char* returner;
    const char* eraser;
  };
  for (const auto& [prefix, site] :
       {std::pair{std::string("prec"), Site{".c15.store", ".n24", ".c16.output"}},
        std::pair{std::string("mu"), Site{".c10.store", ".n6", ".c9.output"}}}) {
    for (int k = 0;; ++k) {
      const auto scope = prefix + std::to_string(k);
      if (!p.labels.contains(scope + site.store)) break;
      const auto returns =
          deliveries(o, p.labels.at(scope + site.store), p.labels.at(scope + site.returner));
      const auto erases =
          deliveries(o, p.labels.at(scope + site.store), p.labels.at(scope + site.eraser));
      for (Time r : returns) {
        const auto it = std::lower_bound(erases.begin(), erases.end(), r);
        if (it != erases.end() && *it == r) return false;
      }
    }
  }
  return true;
}

std::optional<Value> single_output(const RunOutcome& o) {
  const auto y = o.raster.outputs_of("y");
  if (o.status != RunStatus::Quiescent || y.size() != 1) return std::nullopt;
  return y[0].value;
}

Check primitive_recursion() {
  Check c;
  const auto add = lower(*mr::programs::add());
  const auto mul = lower(*mr::programs::mul());
  const auto pred = lower(*mr::programs::pred());
  auto exercise = [&](const CompiledProgram& p, std::vector<mr::Natural> args, Value want,
                      const std::string& name) {
    const auto out = run(p.circuit, bind_arguments(p, args), 1'000'000, true);
    c.expect(single_output(out) == want, name + " value");
    c.expect(race_order_holds(p, out), name + " race order");
    return out;
  };
  for (mr::Natural i = 0; i <= 10; ++i)
    for (mr::Natural x = 0; x <= 10; ++x) {
      const auto out = exercise(add, {i, x}, i + x, "add");
      c.expect(out.raster.spikes_of(add.labels.at("prec0.n14")).size() ==
                   static_cast<std::size_t>(i),
               "add iteration count");
    }
  for (mr::Natural i = 0; i <= 8; ++i)
    for (mr::Natural x = 0; x <= 8; ++x) {
      const auto out = exercise(mul, {i, x}, i * x, "mul");
      c.expect(out.raster.spikes_of(mul.labels.at("prec0.n14")).size() ==
                   static_cast<std::size_t>(i),
               "mul iteration count");
    }
  for (mr::Natural i = 0; i <= 20; ++i) {
    const auto out = exercise(pred, {i, 0}, i == 0 ? 0 : i - 1, "pred");
    c.expect(out.raster.spikes_of(pred.labels.at("prec0.n14")).size() ==
                 static_cast<std::size_t>(i),
             "pred iteration count");
  }
  return c;
}

Check minimization() {
  Check c;
  const auto ref = mr::programs::mu_monus();
  const auto prog = lower(*ref);
  for (mr::Natural x = 0; x <= 12; ++x) {
    const auto oracle = mr::eval_oracle(*ref, {x}, 1'000'000);
    c.expect(oracle.ok(), "oracle terminates");
    const auto out = run(prog.circuit, bind_arguments(prog, {x}), 1'000'000, true);
    c.expect(single_output(out) == oracle.value, "mu at x = " + std::to_string(x));
    c.expect(race_order_holds(prog, out), "mu race order");
  }
  const auto never = lower(*mr::programs::always_positive_mu());
  for (mr::Natural x = 0; x <= 3; ++x) {
    const auto out = run(never.circuit, bind_arguments(never, {x}), 10'000);
    c.expect(out.status == RunStatus::Timeout && out.raster.outputs_of("y").empty(),
             "always-positive mu times out silently");
  }
  return c;
}

// ---- 8 ----------------------------------------------------------------------

void constructions(const mr::RecExpr& e, std::set<std::size_t>& seen) {
  seen.insert(e.node.index());
  if (const auto* c = std::get_if<mr::Compose>(&e.node)) {
    constructions(*c->h, seen);
    for (const auto& g : c->gs) constructions(*g, seen);
  } else if (const auto* p = std::get_if<mr::PrimRec>(&e.node)) {
    constructions(*p->g, seen);
    constructions(*p->h, seen);
  } else if (const auto* m = std::get_if<mr::Mu>(&e.node)) {
    constructions(*m->f, seen);
  }
}

Check end_to_end() {
  Check c;
  struct Entry {
    mr::ExprPtr expr;
    const char* ranges;
  };
  const std::vector<Entry> family{
      {mr::programs::add(), "0..10,0..10"},
      {mr::programs::mul(), "0..8,0..8"},
      {mr::programs::pred(), "0..20,0..2"},
      {mr::programs::monus(), "0..10,0..10"},
      {mr::programs::mu_monus(), "0..12"},
      // max(x, 1) + 2 mixes all six constructions in one circuit.
      {mr::make_compose(mr::programs::add(), {mr::programs::mu_monus(), mr::make_const(2, 1)}),
       "0..8"},
  };
  std::set<std::size_t> seen;
  DiffOptions opts;
  opts.big_m = kBigM;
  for (const auto& [expr, ranges] : family) {
    constructions(*expr, seen);
    const auto report = diff_program(expr, lower(*expr), parse_ranges(ranges), opts);
    g_faults += report.faults;
    c.expect(report.cases > 0 && report.ok(),
             report.ok() ? "no cases" : describe(report.mismatches.front()));
  }
  c.expect(seen.size() == std::variant_size_v<decltype(mr::RecExpr::node)>,
           "family covers every construction");
  return c;
}

// ---- 9 ----------------------------------------------------------------------

Check big_m_separation() {
  Check c;
  c.expect(g_faults == 0, std::to_string(g_faults) + " faults at big_m = 1e9");
  const auto box = build_projection(2, 8);
  SimConfig cfg;
  cfg.big_m = 8;
  const auto out = simulate(box.circuit, bind_inputs(box, {1, 100, 100}), cfg);
  c.expect(out.status == RunStatus::Faulted && out.fault &&
               out.fault->kind == FaultKind::MagnitudeBreach,
           "undersized big_m raises MagnitudeBreach");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Check()> body;
  };
  const std::vector<Criterion> criteria{
      {1, "engine semantics", 1, engine_semantics},
      {2, "primitive circuits", 1, primitive_circuits},
      {3, "projection", 10, projection},
      {4, "trigger cell", 1, trigger_cell},
      {5, "composition", 60, composition},
      {6, "primitive recursion", 120, primitive_recursion},
      {7, "minimization", 60, minimization},
      {8, "end-to-end family", 0, end_to_end},
      {9, "big-M separation", 0, big_m_separation},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.body();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit_s > 0) c.expect(secs < cr.limit_s, "over the time limit");
    std::printf("criterion %d %-22s %s  %.3fs%s%s\n", cr.id, cr.name, c.ok ? "PASS" : "FAIL",
                secs, c.ok ? "" : "  ", c.first_failure.c_str());
    if (!c.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
