// neurorec: compile mu-recursive programs to spiking circuits, run circuits,
// evaluate programs with the reference interpreter and diff the two.
//
// Exit codes: 0 ok, 1 parse or arity error, 2 configuration error,
// 3 timeout or fuel exhausted, 4 fault, 5 diff mismatches, 64 usage error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "neurorec/circuit_io.hpp"
#include "neurorec/compiler.hpp"
#include "neurorec/diff.hpp"
#include "neurorec/raster_io.hpp"

namespace {

using namespace neurorec;
namespace mr = neurorec::murec;

enum Exit : int {
  kOk = 0,
  kParse = 1,
  kConfig = 2,
  kTimeout = 3,
  kFault = 4,
  kMismatch = 5,
  kUsage = 64,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

bool is_program_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".rec") == 0;
}

Value default_big_m() {
  const char* env = std::getenv("MUREC_BIG_M");
  if (!env || !*env) return 1'000'000'000;
  try {
    std::size_t used = 0;
    const Value v = std::stoll(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("MUREC_BIG_M is not an integer: ") + env);
  }
}

mr::ExprPtr load_program(const std::string& path) {
  auto e = mr::parse_program(read_file(path));
  mr::arity_check(*e);
  return e;
}

CompiledProgram load_circuit(const std::string& path, Value big_m) {
  if (is_program_path(path)) {
    LoweringConfig lc;
    lc.big_m = big_m;
    return lower(*load_program(path), lc);
  }
  return deserialize_program(read_file(path));
}

void print_stats(std::ostream& out, const CompiledProgram& p) {
  out << "neurons: " << p.stats.neurons << '\n'
      << "synapses: " << p.stats.synapses << '\n'
      << "native_gadgets: " << p.stats.native_gadgets << '\n'
      << "trigger_cells: " << p.stats.trigger_cells << '\n'
      << "latency: " << p.latency.describe() << '\n'
      << "inputs:";
  for (const auto& name : p.inputs) out << ' ' << name;
  out << "\noutput: " << p.output << '\n';
}

struct CompileArgs {
  std::string program;
  std::string output;
  std::optional<Value> big_m;
  bool strict = false;
};

int cmd_compile(const CompileArgs& a) {
  LoweringConfig lc;
  lc.big_m = a.big_m.value_or(default_big_m());
  lc.strict_primitive = a.strict;
  const auto compiled = lower(*load_program(a.program), lc);
  const auto text = serialize_program(compiled);
  if (a.output.empty() || a.output == "-") {
    std::cout << text;
    print_stats(std::cerr, compiled);
  } else {
    write_file(a.output, text);
    print_stats(std::cout, compiled);
  }
  return kOk;
}

struct RunArgs {
  std::string circuit;
  std::vector<std::string> inputs;
  Time max_steps = 1'000'000;
  std::string format = "csv";
  std::string raster;
  std::string trace;
  std::optional<Value> big_m;
};

int cmd_run(const RunArgs& a) {
  const auto program = load_circuit(a.circuit, a.big_m.value_or(default_big_m()));
  std::map<std::string, mr::Natural> bound;
  for (const auto& item : a.inputs) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--in expects name=value, got " + item);
    const auto name = item.substr(0, eq);
    if (std::find(program.inputs.begin(), program.inputs.end(), name) == program.inputs.end())
      throw UsageError("no input port named " + name);
    try {
      std::size_t used = 0;
      const auto value = std::stoll(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
      if (!bound.emplace(name, value).second) throw UsageError("port bound twice: " + name);
    } catch (const std::logic_error&) {
      throw UsageError("bad value in --in " + item);
    }
  }
  std::vector<mr::Natural> args;
  for (const auto& name : program.inputs) {
    const auto it = bound.find(name);
    if (it == bound.end()) throw UsageError("input port " + name + " is not bound");
    args.push_back(it->second);
  }
  const auto format = a.format == "jsonl" ? RasterFormat::Jsonl : RasterFormat::Csv;

  SimConfig config;
  config.max_steps = a.max_steps;
  config.record_trace = !a.trace.empty();
  const auto run = run_program(program, args, config);
  const auto& outcome = run.outcome;

  auto emit = [format](const std::string& path, auto&& writer) {
    if (path.empty()) return;
    std::ostringstream ss;
    writer(ss, format);
    if (path == "-")
      std::cout << ss.str();
    else
      write_file(path, ss.str());
  };
  emit(a.raster, [&](std::ostream& out, RasterFormat f) { write_raster(out, outcome.raster, f); });
  emit(a.trace, [&](std::ostream& out, RasterFormat f) { write_trace(out, outcome.trace, f); });

  for (const auto& port : program.circuit.ports_with_role(PortRole::Output)) {
    const auto outs = outcome.raster.outputs_of(port->name);
    std::cout << port->name << '=';
    if (!outs.empty()) std::cout << outs.front().value;
    std::cout << '\n';
  }
  std::cout << "status=" << to_string(outcome.status) << '\n';
  std::cout << "time=" << outcome.final_clock << '\n';
  if (outcome.fault) {
    std::cerr << "fault: " << to_string(outcome.fault->kind) << ": " << outcome.fault->detail
              << '\n';
    return kFault;
  }
  return outcome.status == RunStatus::Timeout ? kTimeout : kOk;
}

struct EvalArgs {
  std::string program;
  std::vector<mr::Natural> args;
  std::uint64_t fuel = 100'000;
};

int cmd_eval(const EvalArgs& a) {
  const auto e = load_program(a.program);
  const auto r = mr::eval_oracle(*e, a.args, a.fuel);
  switch (r.status) {
    case mr::EvalStatus::Value:
      std::cout << r.value << '\n';
      return kOk;
    case mr::EvalStatus::FuelExhausted:
      std::cout << "FuelExhausted\n";
      return kTimeout;
    case mr::EvalStatus::Overflow:
      std::cout << "Overflow\n";
      return kFault;
  }
  return kOk;
}

struct DiffArgs {
  std::string program;
  std::string ranges;
  std::string circuit;
  std::size_t random = 0;
  int depth = 3;
  std::uint64_t seed = 0;
  std::size_t samples = 5;
  mr::Natural max_arg = 50;
  bool recursion = false;
  bool serial = false;
  std::uint64_t fuel = 100'000;
  std::optional<Time> max_steps;
  std::optional<Value> big_m;
};

int cmd_diff(const DiffArgs& a) {
  DiffOptions options;
  options.fuel = a.fuel;
  options.max_steps = a.max_steps;
  options.big_m = a.big_m.value_or(default_big_m());
  options.parallel = !a.serial;

  DiffReport report;
  if (a.random > 0) {
    if (!a.program.empty()) throw UsageError("--random does not take a program");
    RandomOptions ro;
    ro.count = a.random;
    ro.depth = a.depth;
    ro.seed = a.seed;
    ro.samples = a.samples;
    ro.max_arg = a.max_arg;
    ro.recursion = a.recursion;
    report = diff_random(ro, options);
  } else {
    if (a.program.empty()) throw UsageError("diff needs a program or --random");
    const auto e = load_program(a.program);
    const auto arity = mr::arity_check(*e);
    auto ranges = a.ranges.empty() ? std::vector<ArgRange>(arity, ArgRange{0, 5})
                                   : parse_ranges(a.ranges);
    if (ranges.size() != arity)
      throw UsageError("--args gives " + std::to_string(ranges.size()) +
                       " ranges, program takes " + std::to_string(arity));
    CompiledProgram compiled;
    if (a.circuit.empty()) {
      LoweringConfig lc;
      lc.big_m = options.big_m;
      compiled = lower(*e, lc);
    } else {
      compiled = deserialize_program(read_file(a.circuit));
      if (compiled.arity != arity)
        throw UsageError("circuit takes " + std::to_string(compiled.arity) +
                         " arguments, program takes " + std::to_string(arity));
    }
    report = diff_program(e, compiled, ranges, options);
    report.seed = a.seed;
  }

  for (const auto& m : report.mismatches) std::cout << "mismatch: " << describe(m) << '\n';
  std::cout << "cases=" << report.cases << " mismatches=" << report.mismatches.size()
            << " timeouts=" << report.timeouts << " faults=" << report.faults
            << " seed=" << report.seed << '\n';
  return report.ok() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spiking-circuit compiler and simulator for mu-recursive programs"};
  app.require_subcommand(1);

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "Lower a .rec program to a circuit");
  compile->add_option("program", ca.program, "Program file")->required();
  compile->add_option("-o,--output", ca.output, "Output circuit file (default stdout)");
  compile->add_option("--big-m", ca.big_m, "Big-M constant (default $MUREC_BIG_M or 1e9)");
  compile->add_flag("--strict-primitive", ca.strict,
                    "Reject programs that need data-dependent timing");

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Simulate a circuit (or a .rec program)");
  run->add_option("circuit", ra.circuit, "Circuit JSON or .rec program")->required();
  run->add_option("--in", ra.inputs, "Input binding name=value")->take_all();
  run->add_option("--max-steps", ra.max_steps, "Simulation horizon");
  run->add_option("--format", ra.format, "Raster format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  run->add_option("--raster", ra.raster, "Write the spike raster here ('-' for stdout)");
  run->add_option("--trace", ra.trace, "Write every delivery here ('-' for stdout)");
  run->add_option("--big-m", ra.big_m, "Big-M used when compiling a .rec program");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate a program with the reference interpreter");
  eval->add_option("program", ea.program, "Program file")->required();
  eval->add_option("args", ea.args, "Natural-number arguments");
  eval->add_option("--fuel", ea.fuel, "Operator applications allowed");

  DiffArgs da;
  auto* diff = app.add_subcommand("diff", "Compare compiled circuits against the interpreter");
  diff->add_option("program", da.program, "Program file");
  diff->add_option("--args", da.ranges, "Argument ranges, e.g. 0..10,0..10");
  diff->add_option("--circuit", da.circuit, "Check this circuit instead of compiling");
  diff->add_option("--random", da.random, "Number of random programs");
  diff->add_option("--depth", da.depth, "Maximum depth of random programs");
  diff->add_option("--seed", da.seed, "Random seed");
  diff->add_option("--samples", da.samples, "Argument samples per random program");
  diff->add_option("--max-arg", da.max_arg, "Largest random argument");
  diff->add_flag("--recursion", da.recursion, "Mix in terminating recursion templates");
  diff->add_flag("--serial", da.serial, "Run cases on one thread");
  diff->add_option("--fuel", da.fuel, "Interpreter fuel per case");
  diff->add_option("--max-steps", da.max_steps, "Simulation horizon per case");
  diff->add_option("--big-m", da.big_m, "Big-M constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*compile) return cmd_compile(ca);
    if (*run) return cmd_run(ra);
    if (*eval) return cmd_eval(ea);
    if (*diff) return cmd_diff(da);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const mr::ProgramParseError& e) {
    std::cerr << "ParseError: " << e.what() << '\n';
    return kParse;
  } catch (const mr::ArityError& e) {
    std::cerr << "ArityError: " << e.what() << '\n';
    return kParse;
  } catch (const ParseError& e) {
    std::cerr << "ParseError: " << e.what();
    if (e.line()) std::cerr << " (line " << e.line() << ", column " << e.column() << ")";
    std::cerr << '\n';
    return kParse;
  } catch (const ModelError& e) {
    std::cerr << "ModelError: " << e.what() << '\n';
    return kParse;
  } catch (const StrictModeViolation& e) {
    std::cerr << "StrictModeViolation: " << e.what() << '\n';
    return kConfig;
  } catch (const ConfigError& e) {
    std::cerr << "ConfigError: " << e.what() << '\n';
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
