#include <doctest.h>

#include <random>
#include <sstream>

#include "neurorec/engine.hpp"
#include "neurorec/gadgets.hpp"
#include "neurorec/raster_io.hpp"
#include "support.hpp"

using namespace neurorec;

namespace {

Circuit chain(Time delay) {
  CircuitBuilder b;
  b.add_neuron(0, Leak(0));
  b.add_neuron(0, Leak(0));
  b.add_synapse(0, 1, 1, delay);
  return std::move(b).build();
}

std::string raster_text(const Raster& r) {
  std::ostringstream ss;
  write_raster(ss, r, RasterFormat::Csv);
  return ss.str();
}

}  // namespace

TEST_CASE("hand trace of the constant circuit") {
  const auto box = build_constant(5);
  const auto out = simulate(box.circuit, {{1, 3, 0}}, {});
  CHECK(out.status == RunStatus::Quiescent);
  const std::vector<SpikeEvent> expected{{0, 0, 1}, {0, 1, 3}, {1, 2, 5}};
  CHECK(out.raster.events == expected);
  REQUIRE(out.raster.outputs.size() == 1);
  CHECK(out.raster.outputs[0] == OutputSpike{1, 2, 5, "y"});
  CHECK(out.final_clock == 1);
}

TEST_CASE("a spike crosses a synapse in delay + 1 steps") {
  for (Time d : {0, 1, 3, 10}) {
    const auto out = simulate(chain(d), {{0, 4, 2}}, {});
    REQUIRE(out.raster.events.size() == 2);
    CHECK(out.raster.events[1].time - out.raster.events[0].time == d + 1);
  }
  CHECK(simulate(chain(3), {{0, 1, 0}}, {}).raster.events[1].time == 4);
}

TEST_CASE("no injections means an immediate quiescent empty run") {
  const auto out = simulate(build_projection(2, 100).circuit, {}, {});
  // The projection's own injection plan still fires the preload neuron.
  CHECK(out.status == RunStatus::Quiescent);
  const auto bare = simulate(chain(0), {}, {});
  CHECK(bare.status == RunStatus::Quiescent);
  CHECK(bare.final_clock == 0);
  CHECK(bare.raster.events.empty());
}

TEST_CASE("step advances one event time and exposes pending work") {
  const auto box = build_constant(5);
  auto s = make_state(box.circuit, {{1, 3, 0}}, SimConfig{.record_trace = true});
  step(s, box.circuit);
  CHECK(s.clock() == 0);
  CHECK(s.raster().events.size() == 2);
  CHECK(s.next_time() == 1);
  step(s, box.circuit);
  std::size_t at_one = 0;
  for (const auto& d : s.trace()) at_one += d.time == 1;
  CHECK(at_one == 2);
  CHECK(s.idle());
  CHECK_THROWS_AS(step(s, box.circuit), PreconditionViolation);
}

TEST_CASE("negative delivery to a threshold-0 neuron is retained without a spike") {
  CircuitBuilder b;
  b.add_neuron(0, kInfiniteLeak);
  const auto c = std::move(b).build();
  auto s = make_state(c, {{0, -4, 0}}, {});
  step(s, c);
  CHECK(s.raster().events.empty());
  CHECK(inspect(s, 0) == -4);
  CHECK_THROWS_AS(inspect(s, 3), ModelError);
}

TEST_CASE("inspect follows the step-function leak") {
  CircuitBuilder b;
  b.add_neuron(100, Leak(2));
  b.add_neuron(100, Leak(0));
  const auto c = std::move(b).build();
  auto s = make_state(c, {{0, 7, 0}, {1, 1, 2}, {1, 1, 3}}, {});
  CHECK(inspect(s, 0) == 0);
  step(s, c);
  CHECK(inspect(s, 0) == 7);
  step(s, c);
  CHECK(s.clock() == 2);
  CHECK(inspect(s, 0) == 7);
  step(s, c);
  CHECK(s.clock() == 3);
  CHECK(inspect(s, 0) == 0);
}

TEST_CASE("projection holds carry the arguments before the trigger") {
  const Value m = 1000;
  const auto box = build_projection(3, m);
  const std::vector<Value> x{7, 9, 4};
  auto s = make_state(box.circuit, bind_inputs(box, {2, 7, 9, 4}), {});
  step(s, box.circuit);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(inspect(s, box.labels.at("hold" + std::to_string(k + 1))) == x[k]);
}

TEST_CASE("leak extremes") {
  for (bool infinite : {false, true}) {
    CircuitBuilder b;
    b.add_neuron(5, infinite ? kInfiniteLeak : Leak(0));
    const auto c = std::move(b).build();
    const auto out = simulate(c, {{0, 3, 0}, {0, 3, 5}}, {});
    if (infinite) {
      REQUIRE(out.raster.events.size() == 1);
      CHECK(out.raster.events[0] == SpikeEvent{5, 0, 6});
    } else {
      CHECK(out.raster.events.empty());
    }
  }
}

TEST_CASE("an idle threshold-0 neuron never fires on its own") {
  CircuitBuilder b;
  b.add_neuron(0, kInfiniteLeak);
  b.add_neuron(0, Leak(0));
  const auto c = std::move(b).build();
  const auto out = simulate(c, {{0, -1, 0}, {1, 1, 10'000}}, {});
  CHECK(out.raster.spikes_of(0).empty());
  CHECK(out.raster.spikes_of(1).size() == 1);
}

TEST_CASE("reset: one spike per neuron per step, carrying the integrated value") {
  CircuitBuilder b;
  b.add_neuron(2, Leak(0));
  b.add_neuron(0, Leak(0));
  b.add_synapse(1, 0, 3, 0);
  const auto c = std::move(b).build();
  const auto out = simulate(c, {{0, 1, 1}, {0, 2, 1}, {1, 4, 0}}, {});
  const auto spikes = out.raster.spikes_of(0);
  REQUIRE(spikes.size() == 1);
  CHECK(spikes[0].value == 15);
}

TEST_CASE("runs are deterministic") {
  const auto box = build_projection(4, 1000);
  const auto inj = bind_inputs(box, {3, 1, 2, 3, 4});
  CHECK(raster_text(simulate(box.circuit, inj, {}).raster) ==
        raster_text(simulate(box.circuit, inj, {}).raster));
}

TEST_CASE("simulate equals iterated step") {
  const auto box = build_projection(3, 1000);
  const auto inj = bind_inputs(box, {1, 5, 6, 7});
  auto s = make_state(box.circuit, inj, {});
  while (!s.idle()) step(s, box.circuit);
  CHECK(s.raster().events == simulate(box.circuit, inj, {}).raster.events);
}

TEST_CASE("event-driven engine agrees with a dense timestep simulator") {
  std::mt19937_64 rng(11);
  auto u = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    CircuitBuilder b;
    const int n = u(1, 7);
    for (int k = 0; k < n; ++k) {
      const int l = u(0, 3);
      b.add_neuron(u(-3, 8), l == 3 ? kInfiniteLeak : Leak(l));
    }
    for (int e = u(0, n * 2); e > 0; --e) {
      const auto pre = static_cast<NeuronId>(u(0, n - 1));
      const auto post = static_cast<NeuronId>(u(0, n - 1));
      if (!b.has_synapse(pre, post)) b.add_synapse(pre, post, u(-1, 2), u(0, 3));
    }
    std::vector<Injection> inj;
    for (int k = u(1, 5); k > 0; --k)
      inj.push_back({static_cast<NeuronId>(u(0, n - 1)), u(-4, 9), u(0, 10)});
    const auto c = std::move(b).build();
    const Time horizon = 40;
    SimConfig cfg;
    cfg.max_steps = horizon;
    cfg.big_m = Value{1} << 60;
    const auto out = simulate(c, inj, cfg);
    if (out.status == RunStatus::Faulted) continue;
    CHECK(out.raster.events == testsupport::dense_simulate(c, inj, horizon));
    ++compared;
  }
  CHECK(compared > 250);
}

TEST_CASE("acyclic circuits go quiet within the longest path") {
  std::mt19937_64 rng(3);
  auto u = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int trial = 0; trial < 100; ++trial) {
    CircuitBuilder b;
    const int n = u(2, 8);
    for (int k = 0; k < n; ++k) b.add_neuron(u(-2, 3), Leak(u(0, 2)));
    std::vector<Time> longest(n, 0);
    for (int post = 1; post < n; ++post)
      for (int pre = 0; pre < post; ++pre)
        if (u(0, 1)) {
          const Time d = u(0, 4);
          b.add_synapse(pre, post, u(-2, 2), d);
          longest[post] = std::max(longest[post], longest[pre] + d + 1);
        }
    Time latest = 0;
    std::vector<Injection> inj;
    for (int k = u(1, 4); k > 0; --k) {
      inj.push_back({static_cast<NeuronId>(u(0, n - 1)), u(0, 5), u(0, 6)});
      latest = std::max(latest, inj.back().time);
    }
    const auto out = simulate(std::move(b).build(), inj, {});
    CHECK(out.status == RunStatus::Quiescent);
    CHECK(out.final_clock <= *std::max_element(longest.begin(), longest.end()) + latest);
  }
}

TEST_CASE("timeout when activity outlives the horizon") {
  CircuitBuilder b;
  b.add_neuron(0, Leak(0));
  b.add_synapse(0, 0, 1, 0);
  const auto c = std::move(b).build();
  SimConfig cfg;
  cfg.max_steps = 50;
  const auto out = simulate(c, {{0, 1, 0}}, cfg);
  CHECK(out.status == RunStatus::Timeout);
  CHECK(out.raster.events.size() == 51);
  CHECK(out.final_clock == 50);
}

TEST_CASE("faults") {
  SUBCASE("overflow") {
    CircuitBuilder b;
    b.add_neuron(0, Leak(0));
    b.add_neuron(0, Leak(0));
    b.add_synapse(0, 1, Value{1} << 62, 0);
    SimConfig cfg;
    cfg.big_m = Value{1} << 61;
    const auto out = simulate(std::move(b).build(), {{0, 4, 0}}, cfg);
    REQUIRE(out.status == RunStatus::Faulted);
    CHECK(out.fault->kind == FaultKind::Overflow);
  }
  SUBCASE("magnitude breach") {
    SimConfig cfg;
    cfg.big_m = 10;
    const auto near = simulate(chain(0), {{0, 19, 0}}, cfg);
    CHECK(near.status == RunStatus::Quiescent);
    const auto out = simulate(chain(0), {{0, 20, 0}}, cfg);
    REQUIRE(out.status == RunStatus::Faulted);
    CHECK(out.fault->kind == FaultKind::MagnitudeBreach);
    const auto low = simulate(chain(0), {{0, -20, 0}}, cfg);
    CHECK(low.status == RunStatus::Faulted);
  }
  SUBCASE("join line refilled before the join fired") {
    const auto box = build_join(2);
    const auto in1 = *box.circuit.port_neuron("in1");
    const auto out = simulate(box.circuit, {{in1, 1, 0}, {in1, 2, 3}}, {});
    REQUIRE(out.status == RunStatus::Faulted);
    CHECK(out.fault->kind == FaultKind::JoinOverrun);
  }
  SUBCASE("a faulted state refuses to step") {
    SimConfig cfg;
    cfg.big_m = 10;
    const auto c = chain(0);
    auto s = make_state(c, {{0, 30, 0}, {0, 1, 5}}, cfg);
    step(s, c);
    REQUIRE(s.fault());
    CHECK_THROWS_AS(step(s, c), PreconditionViolation);
  }
}

TEST_CASE("constant emitter fires two steps after the upstream spike for any value") {
  for (Value v : {Value{-1'000'000'000}, Value{-1}, Value{0}, Value{1}, Value{17}}) {
    const auto box = build_constant(5, ConstantForm::Native);
    SimConfig cfg;
    cfg.record_trace = true;
    const auto out = simulate(box.circuit, {{*box.circuit.port_neuron("x"), v, 4}}, cfg);
    REQUIRE(out.gadget_events.size() == 1);
    CHECK(out.gadget_events[0].time == 6);
    CHECK(out.gadget_events[0].values == std::vector<Value>{5});
    REQUIRE(out.raster.outputs.size() == 1);
    CHECK(out.raster.outputs[0].value == 5);
    CHECK(out.raster.outputs[0].time == 7);
  }
}

TEST_CASE("join releases all lines one step after the last arrives, then resets") {
  const auto box = build_join(2);
  const auto in1 = *box.circuit.port_neuron("in1");
  const auto in2 = *box.circuit.port_neuron("in2");
  SimConfig cfg;
  cfg.record_trace = true;
  // Spikes at 2 and 8 reach the lines at 3 and 9; emission at 10.
  const auto out = simulate(box.circuit, {{in1, 11, 2}, {in2, 22, 8}, {in2, 5, 20}, {in1, 6, 20}}, cfg);
  REQUIRE(out.status == RunStatus::Quiescent);
  REQUIRE(out.gadget_events.size() == 2);
  CHECK(out.gadget_events[0].time == 10);
  CHECK(out.gadget_events[0].values == std::vector<Value>{11, 22});
  CHECK(out.gadget_events[1].time == 22);
  CHECK(out.gadget_events[1].values == std::vector<Value>{6, 5});
  const auto o1 = out.raster.outputs_of("out1");
  const auto o2 = out.raster.outputs_of("out2");
  REQUIRE(o1.size() == 2);
  CHECK(o1[0].time == 11);
  CHECK(o2[0].time == 11);
  CHECK(o2[0].value == 22);
}
