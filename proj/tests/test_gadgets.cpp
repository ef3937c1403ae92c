#include <doctest.h>

#include <random>

#include "neurorec/gadgets.hpp"

using namespace neurorec;

namespace {

constexpr Value kBigM = 1'000'000'000;

std::vector<OutputSpike> run_box(const GadgetBox& box, const std::vector<Value>& in,
                                 RunStatus* status = nullptr) {
  const auto out = simulate(box.circuit, bind_inputs(box, in), SimConfig{.big_m = kBigM});
  if (status) *status = out.status;
  return out.raster.outputs_of(box.output);
}

bool spiked(const RunOutcome& out, NeuronId n) { return !out.raster.spikes_of(n).empty(); }

}  // namespace

TEST_CASE("constant box") {
  for (Value k : {0, 1, 5, 100})
    for (Value x = 0; x <= 20; ++x) {
      RunStatus st;
      const auto outs = run_box(build_constant(k), {x}, &st);
      REQUIRE(outs.size() == 1);
      CHECK(outs[0].value == k);
      CHECK(outs[0].time == 1);
      CHECK(st == RunStatus::Quiescent);
    }
  const auto native = build_constant(9, ConstantForm::Native);
  CHECK(native.latency == Latency::fixed(3));
  const auto outs = run_box(native, {4});
  REQUIRE(outs.size() == 1);
  CHECK(outs[0].value == 9);
  CHECK(outs[0].time == 3);
}

TEST_CASE("successor box") {
  const auto box = build_successor();
  CHECK(box.latency == Latency::fixed(1));
  for (Value x = 0; x <= 100; ++x) {
    const auto outs = run_box(box, {x});
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].value == x + 1);
  }
  CHECK(run_box(box, {41})[0].value == 42);
}

TEST_CASE("projection outputs x_i with the documented firing pattern") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Value> val(0, 100);
  for (std::uint32_t n = 1; n <= 6; ++n) {
    const auto box = build_projection(n, kBigM);
    CHECK(box.circuit.neurons.size() == 6 * n + 3);
    for (std::uint32_t i = 1; i <= n; ++i)
      for (int sample = 0; sample < 10; ++sample) {
        std::vector<Value> in{static_cast<Value>(i)};
        for (std::uint32_t m = 0; m < n; ++m) in.push_back(val(rng));
        const auto out = simulate(box.circuit, bind_inputs(box, in), SimConfig{.big_m = kBigM});
        CHECK(out.status == RunStatus::Quiescent);
        const auto outs = out.raster.outputs_of("y");
        REQUIRE(outs.size() == 1);
        CHECK(outs[0].value == in[i]);
        CHECK(outs[0].time == kProjectionLatency);
        for (std::uint32_t m = 1; m <= n; ++m) {
          CHECK(spiked(out, box.labels.at("coincide" + std::to_string(m))) == (m <= i));
          CHECK(spiked(out, box.labels.at("isolate" + std::to_string(m))) == (m == i));
        }
      }
  }
}

TEST_CASE("projection hand trace for i = 4 of four") {
  const auto box = build_projection(4, kBigM);
  const auto out = simulate(box.circuit, bind_inputs(box, {4, 5, 5, 5, 8}), {});
  CHECK(out.raster.outputs_of("y").at(0).value == 8);
  for (NeuronId m = 1; m <= 4; ++m) CHECK(spiked(out, m));
  const auto neg = out.raster.spikes_of(4 + 4);
  REQUIRE(neg.size() == 1);
  CHECK(neg[0].value == -4);
  const auto coincide = out.raster.spikes_of(2 * 4 + 4);
  REQUIRE(coincide.size() == 1);
  CHECK(coincide[0].value == 0);
  CHECK(run_box(build_projection(1, kBigM), {1, 0}).at(0).value == 0);
  CHECK(run_box(build_projection(3, kBigM), {2, 7, 9, 4}).at(0).value == 9);
  CHECK_THROWS_AS(build_projection(0, kBigM), std::invalid_argument);
}

TEST_CASE("trigger cell contract") {
  const Value m = 1000;
  const auto cell = build_trigger_cell(m);
  const auto y = [&](const std::vector<TriggerInput>& in) {
    const auto out = run_trigger_cell(cell, in, SimConfig{.big_m = m});
    REQUIRE(out.status == RunStatus::Quiescent);
    return out.raster.outputs_of("y");
  };

  SUBCASE("store then trigger") {
    const auto outs = y({{TriggerPin::Store, 7, 0}, {TriggerPin::Trigger, m, 5}});
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].value == 7);
    CHECK(outs[0].time == 6);
  }
  SUBCASE("store, erase, trigger") {
    const auto outs = y({{TriggerPin::Store, 7, 0},
                         {TriggerPin::Erase, -7, 2},
                         {TriggerPin::Trigger, m, 5}});
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].value == 0);
    CHECK(outs[0].time == 6);
  }
  SUBCASE("stores accumulate") {
    const auto outs = y({{TriggerPin::Store, 7, 0},
                         {TriggerPin::Store, 3, 1},
                         {TriggerPin::Trigger, m, 2}});
    CHECK(outs.at(0).value == 10);
  }
  SUBCASE("reuse cycles spaced by the reuse gap") {
    std::vector<TriggerInput> in;
    const std::vector<Value> values{4, 0, 250};
    Time t = 1;
    for (auto v : values) {
      in.push_back({TriggerPin::Store, v, t});
      in.push_back({TriggerPin::Trigger, m, t + 1});
      t += 1 + cell.min_reuse_gap;
    }
    const auto outs = y(in);
    REQUIRE(outs.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(outs[k].value == values[k]);
  }
  SUBCASE("simultaneous store and trigger is rejected") {
    CHECK_THROWS_AS(run_trigger_cell(cell,
                                     {{TriggerPin::Store, 7, 3}, {TriggerPin::Trigger, m, 3}},
                                     SimConfig{.big_m = m}),
                    PreconditionViolation);
  }
}

TEST_CASE("trigger cell handles triggers exactly the reuse gap apart") {
  const Value m = 1000;
  const auto cell = build_trigger_cell(m);
  CHECK(cell.min_reuse_gap == kTriggerReuseGap);
  // The refill of the output stage lands together with the second trigger.
  const auto tight = run_trigger_cell(
      cell, {{TriggerPin::Store, 5, 1}, {TriggerPin::Trigger, m, 2}, {TriggerPin::Store, 6, 3},
             {TriggerPin::Trigger, m, 4}},
      SimConfig{.big_m = m});
  const auto outs = tight.raster.outputs_of("y");
  REQUIRE(outs.size() == 2);
  CHECK(outs[1].value == 6);
}
