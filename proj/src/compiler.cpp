#include "neurorec/compiler.hpp"

#include <algorithm>

#include "neurorec/circuit_io.hpp"

namespace neurorec {

using json = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Hold leak for projections that may run more than once.
constexpr Leak kReusableHoldLeak = Leak(7);
// Lane-to-emitter-output lag: spike at t, line at t+1, fire at t+2, land t+3.
constexpr Time kEmitterLag = 3;

struct Box {
  std::vector<NeuronId> lanes;
  NeuronId out = 0;
  Latency latency = Latency::dynamic();
};

// Absolute arrival time of a box's lanes when known at compile time.
struct Mode {
  std::optional<Time> at;
  static Mode dynamic() { return {}; }
  bool is_static() const { return at.has_value(); }
};

class Lowerer {
 public:
  explicit Lowerer(Value big_m) : big_m_(big_m) {}

  CircuitBuilder b;
  std::map<std::string, NeuronId> labels;
  std::size_t trigger_cells = 0;

  Box lower(const murec::RecExpr& e, Mode mode) {
    return std::visit(
        overloaded{
            [&](const murec::Const& c) { return lower_const(c, mode); },
            [&](const murec::Succ&) { return lower_succ(mode); },
            [&](const murec::Proj& p) { return lower_proj(p, mode); },
            [&](const murec::Compose& c) { return lower_compose(c, e, mode); },
            [&](const murec::PrimRec& p) { return lower_primrec(p, mode); },
            [&](const murec::Mu& m) { return lower_mu(m, mode); },
        },
        e.node);
  }

 private:
  Value big_m_;
  std::optional<NeuronId> aux_;
  std::map<std::string, int> counters_;

  std::string scope(const std::string& kind) {
    return kind + std::to_string(counters_[kind]++);
  }
  NeuronId relay() { return b.add_neuron(kRelayThreshold, kRelayLeak); }
  NeuronId named(const std::string& label, NeuronId n) {
    labels[label] = n;
    return n;
  }
  std::vector<NeuronId> relays(std::size_t n) {
    std::vector<NeuronId> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(relay());
    return out;
  }

  NeuronId aux_one() {
    if (!aux_) {
      aux_ = relay();
      b.inject(*aux_, 1, 0);
      labels["aux_one"] = *aux_;
    }
    return *aux_;
  }

  void constant_at(NeuronId target, Value v, Time at) {
    if (at == 0)
      b.inject(target, v, 0);
    else
      b.add_synapse(aux_one(), target, v, at - 1);
  }

  // `target` receives v exactly kEmitterLag steps after `source` spikes.
  void emit_after(NeuronId source, Value v, NeuronId target) {
    const auto g = b.add_constant_emitter(v, {source});
    b.add_gadget_output(g, 0, target, 1, 0);
  }

  TriggerCell cell(const std::string& label) {
    ++trigger_cells;
    const auto c = emit_trigger_cell(b, aux_one(), big_m_);
    labels[label + ".store"] = c.store;
    labels[label + ".output"] = c.output;
    return c;
  }

  Box lower_const(const murec::Const& c, Mode mode) {
    const auto s = scope("const");
    Box box;
    box.lanes = relays(std::max<std::uint32_t>(c.arity, 1));
    box.out = named(s + ".out", relay());
    if (mode.is_static()) {
      const auto aux = named(s + ".aux", relay());
      constant_at(aux, 1, *mode.at);
      b.add_synapse(box.lanes[0], box.out, 0, 0);
      b.add_synapse(aux, box.out, c.k, 0);
      box.latency = Latency::fixed(1);
    } else {
      emit_after(box.lanes[0], c.k, box.out);
      box.latency = Latency::fixed(kEmitterLag);
    }
    return box;
  }

  Box lower_succ(Mode mode) {
    const auto s = scope("succ");
    Box box;
    box.lanes = relays(1);
    box.out = named(s + ".out", relay());
    if (mode.is_static()) {
      const auto aux = named(s + ".aux", relay());
      constant_at(aux, 1, *mode.at);
      b.add_synapse(box.lanes[0], box.out, 1, 0);
      b.add_synapse(aux, box.out, 1, 0);
      box.latency = Latency::fixed(1);
    } else {
      b.add_synapse(box.lanes[0], box.out, 1, kEmitterLag - 1);
      emit_after(box.lanes[0], 1, box.out);
      box.latency = Latency::fixed(kEmitterLag);
    }
    return box;
  }

  Box lower_proj(const murec::Proj& p, Mode mode) {
    const auto s = scope("proj");
    Box box;
    if (mode.is_static()) {
      const auto h = emit_projection(b, p.n, big_m_, kInfiniteLeak);
      box.lanes = h.holds;
      constant_at(h.selector, p.i, *mode.at);
      constant_at(h.preload, 1, *mode.at);
      box.out = h.subtract;
      box.latency = Latency::fixed(kProjectionLatency);
      labels[s + ".selector"] = h.selector;
    } else {
      box.lanes = relays(p.n);
      const auto h = emit_projection(b, p.n, big_m_, kReusableHoldLeak);
      for (std::uint32_t m = 0; m < p.n; ++m)
        b.add_synapse(box.lanes[m], h.holds[m], 1, kEmitterLag - 1);
      emit_after(box.lanes[0], p.i, h.selector);
      emit_after(box.lanes[0], 1, h.preload);
      box.out = h.subtract;
      box.latency = Latency::fixed(kEmitterLag + kProjectionLatency);
      labels[s + ".selector"] = h.selector;
    }
    labels[s + ".out"] = box.out;
    return box;
  }

  Box lower_compose(const murec::Compose& c, const murec::RecExpr& e, Mode mode) {
    const auto s = scope("compose");
    Box box;
    box.lanes = relays(std::max<std::uint32_t>(murec::arity_check(e), 1));
    const Mode gmode = mode.is_static() ? Mode{*mode.at + 1} : Mode::dynamic();
    std::vector<Box> gs;
    for (const auto& g : c.gs) {
      gs.push_back(lower(*g, gmode));
      for (std::size_t j = 0; j < box.lanes.size(); ++j)
        b.add_synapse(box.lanes[j], gs.back().lanes[j], 1, 0);
    }
    const bool all_static = std::all_of(gs.begin(), gs.end(), [](const Box& g) {
      return g.latency.is_static();
    });

    if (all_static) {
      Time max_l = 0;
      for (const auto& g : gs) max_l = std::max(max_l, g.latency.steps());
      const Mode hmode = mode.is_static() ? Mode{*mode.at + 2 + max_l} : Mode::dynamic();
      const Box h = lower(*c.h, hmode);
      for (std::size_t m = 0; m < gs.size(); ++m) {
        b.add_synapse(gs[m].out, h.lanes[m], 1, max_l - gs[m].latency.steps());
        labels[s + ".h" + std::to_string(m + 1)] = h.lanes[m];
      }
      box.out = h.out;
      box.latency = h.latency.is_static() ? Latency::fixed(2 + max_l + h.latency.steps())
                                          : Latency::dynamic();
    } else {
      const Box h = lower(*c.h, Mode::dynamic());
      for (std::size_t m = 0; m < gs.size(); ++m)
        labels[s + ".h" + std::to_string(m + 1)] = h.lanes[m];
      if (gs.size() == 1) {
        b.add_synapse(gs[0].out, h.lanes[0], 1, 0);
      } else {
        std::vector<NeuronId> outs;
        for (const auto& g : gs) outs.push_back(g.out);
        const auto j = b.add_join(static_cast<std::uint32_t>(gs.size()), outs);
        for (std::uint32_t m = 0; m < gs.size(); ++m)
          b.add_gadget_output(j, m, h.lanes[m], 1, 0);
      }
      box.out = h.out;
      box.latency = Latency::dynamic();
    }
    for (std::size_t m = 0; m < gs.size(); ++m)
      labels[s + ".g" + std::to_string(m + 1)] = gs[m].out;
    labels[s + ".out"] = box.out;
    return box;
  }

  // Cells: c1 i, c3 j, c6 the constant 1, c9 i for the first zero test, c12
  // the base value, c15 the running h value, c16 its copy used as the next
  // accumulator and as eraser of c15, c19 the countdown i - j - 1, cx the
  // extra arguments.
  //
  // A decision fires at D (c9 output at start, relay 20 after each h). It
  // triggers the cells at D+4, their outputs reach the entry relays at D+6.
  // To stop, kill neurons cancel the entries at D+6 and the result reaches
  // neuron 25 at D+7.
  Box lower_primrec(const murec::PrimRec& p, Mode mode) {
    const auto s = scope("prec");
    const std::uint32_t n = murec::arity_check(*p.g);
    const Value big_m = big_m_;
    auto lbl = [&s](const std::string& what) { return s + "." + what; };

    Box box;
    box.lanes = relays(n + 1);
    NeuronId start_i;
    std::vector<NeuronId> start_x;
    const auto zero = named(lbl("n2"), relay());
    const auto one = named(lbl("n5"), relay());
    if (mode.is_static()) {
      start_i = box.lanes[0];
      start_x.assign(box.lanes.begin() + 1, box.lanes.end());
      constant_at(zero, 0, *mode.at);
      constant_at(one, 1, *mode.at);
    } else {
      start_i = relay();
      start_x = relays(n);
      b.add_synapse(box.lanes[0], start_i, 1, kEmitterLag - 1);
      for (std::uint32_t k = 0; k < n; ++k)
        b.add_synapse(box.lanes[k + 1], start_x[k], 1, kEmitterLag - 1);
      emit_after(box.lanes[0], 0, zero);
      emit_after(box.lanes[0], 1, one);
    }

    const auto c1 = cell(lbl("c1"));
    const auto c3 = cell(lbl("c3"));
    const auto c6 = cell(lbl("c6"));
    const auto c9 = cell(lbl("c9"));
    const auto c12 = cell(lbl("c12"));
    const auto c15 = cell(lbl("c15"));
    const auto c16 = cell(lbl("c16"));
    const auto c19 = cell(lbl("c19"));
    std::vector<TriggerCell> cx;
    for (std::uint32_t k = 0; k < n; ++k) cx.push_back(cell(lbl("cx" + std::to_string(k + 1))));

    // Start: store i, j = 0, 1 and x, and evaluate g.
    b.add_synapse(start_i, c1.store, 1, 0);
    b.add_synapse(start_i, c9.store, 1, 0);
    b.add_synapse(zero, c3.store, 1, 0);
    b.add_synapse(one, c6.store, 1, 0);
    const Box g = lower(*p.g, Mode::dynamic());
    if (n == 0) b.add_synapse(zero, g.lanes[0], 1, 0);
    for (std::uint32_t k = 0; k < n; ++k) {
      b.add_synapse(start_x[k], cx[k].store, 1, 0);
      b.add_synapse(start_x[k], g.lanes[k], 1, 0);
    }
    b.add_synapse(g.out, c12.store, 1, 0);
    emit_after(g.out, big_m, c9.store);

    // Decision relays and kill lines.
    const auto test_i = named(lbl("n10"), relay());  // spikes iff i = 0
    const auto pos_i = named(lbl("gate_i"), b.add_neuron(1, kRelayLeak));
    b.add_synapse(c9.output, test_i, -1, 0);
    b.add_synapse(c9.output, pos_i, 1, 0);
    const auto relay20 = named(lbl("n20"), relay());
    const auto test_u = named(lbl("n21"), relay());  // spikes iff j + 1 = i
    b.add_synapse(c19.output, relay20, 1, 0);
    b.add_synapse(relay20, test_u, -1, 0);

    const auto fire_all = named(lbl("n23"), relay());
    const auto e22 = b.add_constant_emitter(big_m, {c9.output, relay20});
    b.add_gadget_output(e22, 0, fire_all, 1, 0);
    const auto fire_base = named(lbl("n11"), relay());
    emit_after(c9.output, big_m, fire_base);
    const auto kill_base = named(lbl("kill_a"), relay());
    emit_after(test_i, big_m, kill_base);
    const auto keep_base = named(lbl("kill_c"), relay());
    emit_after(pos_i, big_m, keep_base);
    const auto done = named(lbl("n24"), relay());
    emit_after(test_u, big_m, done);

    for (const auto* c : {&c1, &c3, &c6, &c16}) b.add_synapse(fire_all, c->store, 1, 0);
    for (const auto& c : cx) b.add_synapse(fire_all, c.store, 1, 0);
    b.add_synapse(fire_base, c12.store, 1, 0);

    // Entries.
    const auto ie = named(lbl("IE"), relay());
    const auto je = named(lbl("JE"), relay());
    const auto oe = named(lbl("OE"), relay());
    const auto ae = named(lbl("AE"), relay());
    std::vector<NeuronId> xe;
    for (std::uint32_t k = 0; k < n; ++k) xe.push_back(named(lbl("XE" + std::to_string(k + 1)), relay()));
    const auto r12 = named(lbl("R12"), relay());
    const auto out = named(lbl("n25"), relay());

    b.add_synapse(c1.output, ie, 1, 0);
    b.add_synapse(c3.output, je, 1, 0);
    b.add_synapse(c6.output, oe, 1, 0);
    for (std::uint32_t k = 0; k < n; ++k) b.add_synapse(cx[k].output, xe[k], 1, 0);
    b.add_synapse(c16.output, ae, 1, 0);
    b.add_synapse(c12.output, ae, 1, 0);
    b.add_synapse(c12.output, r12, 1, 0);
    b.add_synapse(c16.output, c15.store, -1, 1);

    std::vector<NeuronId> entries{ie, je, oe, ae};
    entries.insert(entries.end(), xe.begin(), xe.end());
    for (auto e : entries) {
      b.add_synapse(kill_base, e, -1, 1);
      b.add_synapse(done, e, -1, 1);
    }
    b.add_synapse(keep_base, r12, -1, 1);
    b.add_synapse(r12, out, 1, 0);

    // Iteration body.
    b.add_synapse(ie, c1.store, 1, 0);
    b.add_synapse(oe, c6.store, 1, 0);
    for (std::uint32_t k = 0; k < n; ++k) b.add_synapse(xe[k], cx[k].store, 1, 0);
    const auto countdown = named(lbl("n18"), relay());
    b.add_synapse(ie, countdown, 1, 0);
    b.add_synapse(je, countdown, -1, 0);
    b.add_synapse(oe, countdown, -1, 0);
    b.add_synapse(countdown, c19.store, 1, 0);
    const Box next_j = lower_succ(Mode::dynamic());
    b.add_synapse(je, next_j.lanes[0], 1, 0);
    b.add_synapse(next_j.out, c3.store, 1, 0);

    const Box h = lower(*p.h, Mode::dynamic());
    b.add_synapse(je, h.lanes[0], 1, 0);
    b.add_synapse(ae, h.lanes[1], 1, 0);
    for (std::uint32_t k = 0; k < n; ++k) b.add_synapse(xe[k], h.lanes[k + 2], 1, 0);
    const auto result = named(lbl("n14"), relay());
    b.add_synapse(h.out, result, 1, 0);
    b.add_synapse(result, c15.store, 1, 0);
    b.add_synapse(result, c16.store, 1, 0);
    emit_after(result, big_m, c19.store);

    // Return after the last h: trigger c15 at D+5, its erase at D+7 is
    // cancelled by the fed-back output.
    b.add_synapse(done, c15.store, 1, 0);
    b.add_synapse(c15.output, out, 1, 0);
    b.add_synapse(c15.output, c15.store, 1, 0);

    box.out = out;
    box.latency = Latency::dynamic();
    return box;
  }

  // Cells: c1 the next candidate, c9 a copy of the current candidate that
  // erases c10, c10 the current candidate, cx the extra arguments. f's output
  // decides at D; the entries ZE and XE refire at D+6 unless killed.
  Box lower_mu(const murec::Mu& m, Mode mode) {
    const auto s = scope("mu");
    const std::uint32_t n = murec::arity_check(*m.f) - 1;
    const Value big_m = big_m_;
    auto lbl = [&s](const std::string& what) { return s + "." + what; };

    Box box;
    box.lanes = relays(std::max<std::uint32_t>(n, 1));
    const auto ze = named(lbl("ZE"), relay());
    std::vector<NeuronId> xe;
    if (mode.is_static()) {
      xe.assign(box.lanes.begin(), box.lanes.begin() + n);
      constant_at(ze, 1, *mode.at);
    } else {
      xe = relays(n);
      for (std::uint32_t k = 0; k < n; ++k)
        b.add_synapse(box.lanes[k], xe[k], 1, kEmitterLag - 1);
      emit_after(box.lanes[0], 1, ze);
    }
    for (std::uint32_t k = 0; k < n; ++k) labels[lbl("XE" + std::to_string(k + 1))] = xe[k];

    const auto c1 = cell(lbl("c1"));
    const auto c9 = cell(lbl("c9"));
    const auto c10 = cell(lbl("c10"));
    std::vector<TriggerCell> cx;
    for (std::uint32_t k = 0; k < n; ++k) cx.push_back(cell(lbl("cx" + std::to_string(k + 1))));

    const Box f = lower(*m.f, Mode::dynamic());
    b.add_synapse(ze, f.lanes[0], 1, 0);
    for (std::uint32_t k = 0; k < n; ++k) b.add_synapse(xe[k], f.lanes[k + 1], 1, 0);

    b.add_synapse(ze, c10.store, 1, 0);
    b.add_synapse(ze, c9.store, 1, 0);
    const Box next_z = lower_succ(Mode::dynamic());
    b.add_synapse(ze, next_z.lanes[0], 1, 0);
    b.add_synapse(next_z.out, c1.store, 1, 0);
    for (std::uint32_t k = 0; k < n; ++k) b.add_synapse(xe[k], cx[k].store, 1, 0);

    const auto decide = named(lbl("n4"), relay());
    const auto test = named(lbl("n5"), relay());  // spikes iff f = 0
    b.add_synapse(f.out, decide, 1, 0);
    b.add_synapse(decide, test, -1, 0);
    const auto fire_all = named(lbl("n8"), relay());
    emit_after(decide, big_m, fire_all);
    b.add_synapse(fire_all, c9.store, 1, 0);
    b.add_synapse(fire_all, c1.store, 1, 0);
    for (const auto& c : cx) b.add_synapse(fire_all, c.store, 1, 0);

    b.add_synapse(c1.output, ze, 1, 0);
    for (std::uint32_t k = 0; k < n; ++k) b.add_synapse(cx[k].output, xe[k], 1, 0);
    b.add_synapse(c9.output, c10.store, -1, 2);

    const auto done = named(lbl("n6"), relay());
    emit_after(test, big_m, done);
    b.add_synapse(done, c10.store, 1, 0);
    b.add_synapse(done, ze, -1, 1);
    for (auto x : xe) b.add_synapse(done, x, -1, 1);

    const auto out = named(lbl("y"), relay());
    b.add_synapse(c10.output, out, 1, 0);
    b.add_synapse(c10.output, c10.store, 1, 1);

    box.out = out;
    box.latency = Latency::dynamic();
    return box;
  }
};

Value default_max_arg(Value big_m) { return big_m / 2 - 1; }

void check_config(const LoweringConfig& config) {
  if (config.big_m < 4) throw ConfigError("big_m must be at least 4");
  const Value max_arg = config.max_arg.value_or(default_max_arg(config.big_m));
  if (max_arg < 0) throw ConfigError("max_arg must be >= 0");
  if (max_arg > default_max_arg(config.big_m))
    throw ConfigError("big_m = " + std::to_string(config.big_m) +
                      " must exceed 2 * max_arg = 2 * " + std::to_string(max_arg));
}

json latency_json(const Latency& l) {
  if (l.is_static()) return l.steps();
  return "dynamic";
}

}  // namespace

CompiledProgram lower(const murec::RecExpr& program, const LoweringConfig& config) {
  const auto arity = murec::arity_check(program);
  check_config(config);
  if (config.strict_primitive && murec::has_recursion(program))
    throw StrictModeViolation("strict primitive mode: program uses prec or mu");

  Lowerer lw(config.big_m);
  const Box root = lw.lower(program, Mode{0});
  if (config.strict_primitive && !root.latency.is_static())
    throw StrictModeViolation("strict primitive mode: composition needs a join");

  CompiledProgram p;
  p.arity = arity;
  const bool recursive_root = std::holds_alternative<murec::PrimRec>(program.node);
  for (std::uint32_t k = 0; k < arity; ++k) {
    std::string name = recursive_root ? (k == 0 ? "i" : "x" + std::to_string(k))
                                      : "x" + std::to_string(k + 1);
    lw.b.mark_port(root.lanes[k], PortRole::Input, name);
    p.inputs.push_back(std::move(name));
  }
  if (arity == 0) lw.b.inject(root.lanes[0], 0, 0);
  lw.b.mark_port(root.out, PortRole::Output, p.output);

  p.labels = std::move(lw.labels);
  const auto trigger_cells = lw.trigger_cells;
  p.circuit = std::move(lw.b).build();
  p.latency = root.latency;
  p.big_m = config.big_m;
  p.stats = stats(p);
  p.stats.trigger_cells = trigger_cells;
  return p;
}

Latency latency(const CompiledProgram& p) { return p.latency; }

ProgramStats stats(const CompiledProgram& p) {
  ProgramStats s;
  s.neurons = p.circuit.neurons.size();
  s.synapses = p.circuit.synapses.size();
  s.native_gadgets = p.circuit.gadgets.size();
  s.trigger_cells = p.stats.trigger_cells;
  if (p.latency.is_static()) s.static_latency = p.latency.steps();
  return s;
}

json program_to_json(const CompiledProgram& p) {
  json doc = circuit_to_json(p.circuit);
  json meta;
  meta["arity"] = p.arity;
  meta["inputs"] = p.inputs;
  meta["output"] = p.output;
  meta["latency"] = latency_json(p.latency);
  meta["big_m"] = p.big_m;
  json st;
  st["neurons"] = p.stats.neurons;
  st["synapses"] = p.stats.synapses;
  st["native_gadgets"] = p.stats.native_gadgets;
  st["trigger_cells"] = p.stats.trigger_cells;
  st["static_latency"] = latency_json(p.latency);
  meta["stats"] = std::move(st);
  json labels = json::object();
  for (const auto& [name, id] : p.labels) labels[name] = id;
  meta["labels"] = std::move(labels);
  meta["relay"] = {{"threshold", kRelayThreshold}, {"leak", kRelayLeak.steps()}};
  doc["meta"] = std::move(meta);
  return doc;
}

std::string serialize_program(const CompiledProgram& p) {
  return program_to_json(p).dump(2) + "\n";
}

CompiledProgram deserialize_program(std::string_view text) {
  const json doc = parse_json_document(text);
  CompiledProgram p;
  p.circuit = circuit_from_json(doc);
  if (const auto bad = validate(p.circuit); !bad.empty())
    throw ModelError(bad.front().kind, bad.front().detail);
  p.big_m = SimConfig{}.big_m;

  if (doc.contains("meta")) {
    const auto& meta = doc["meta"];
    try {
      p.arity = meta.at("arity").get<std::uint32_t>();
      p.inputs = meta.at("inputs").get<std::vector<std::string>>();
      p.output = meta.at("output").get<std::string>();
      p.big_m = meta.at("big_m").get<Value>();
      const auto& lat = meta.at("latency");
      p.latency = lat.is_number_integer() ? Latency::fixed(lat.get<Time>()) : Latency::dynamic();
      p.stats.trigger_cells = meta.at("stats").at("trigger_cells").get<std::size_t>();
      for (const auto& [name, id] : meta.at("labels").items())
        p.labels[name] = id.get<NeuronId>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("program meta: ") + e.what(), 0, 0);
    }
    for (const auto& name : p.inputs)
      if (!p.circuit.port_neuron(name))
        throw ParseError("program meta names unknown port '" + name + "'", 0, 0);
  } else {
    for (const auto& port : p.circuit.ports)
      if (port.role == PortRole::Input) p.inputs.push_back(port.name);
    p.arity = static_cast<std::uint32_t>(p.inputs.size());
    const auto outs = p.circuit.ports_with_role(PortRole::Output);
    if (outs.empty()) throw ParseError("circuit has no output port", 0, 0);
    p.output = outs.front()->name;
  }
  p.stats = stats(p);
  return p;
}

std::vector<Injection> bind_arguments(const CompiledProgram& p,
                                      const std::vector<murec::Natural>& args) {
  if (args.size() != p.arity)
    throw murec::ArityError("expected " + std::to_string(p.arity) + " arguments, got " +
                            std::to_string(args.size()));
  std::vector<Injection> out;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] < 0 || args[k] > p.big_m / 2 - 1)
      throw ConfigError("argument " + std::to_string(args[k]) + " outside [0, big_m / 2)");
    out.push_back({*p.circuit.port_neuron(p.inputs[k]), args[k], 0});
  }
  return out;
}

ProgramRun run_program(const CompiledProgram& p, const std::vector<murec::Natural>& args,
                       const SimConfig& config) {
  SimConfig cfg = config;
  cfg.big_m = p.big_m;
  ProgramRun run;
  run.outcome = simulate(p.circuit, bind_arguments(p, args), cfg);
  const auto outs = run.outcome.raster.outputs_of(p.output);
  if (!outs.empty()) {
    run.value = outs.front().value;
    run.time = outs.front().time;
  }
  return run;
}

Time step_budget(std::uint64_t fuel_used) {
  return 200 * static_cast<Time>(fuel_used) + 1000;
}

}  // namespace neurorec
