#include "neurorec/diff.hpp"

#include <charconv>
#include <stdexcept>

#include "neurorec/batch.hpp"

namespace neurorec {

using murec::ExprPtr;
using murec::Natural;

namespace {

std::string classify(const ProgramRun& run, const std::string& port) {
  const auto& o = run.outcome;
  if (o.status == RunStatus::Faulted)
    return std::string("Fault(") + to_string(o.fault->kind) + ")";
  const auto outs = o.raster.outputs_of(port);
  if (outs.size() > 1) return std::to_string(outs.size()) + " output spikes";
  if (o.status == RunStatus::Timeout) return outs.empty() ? "Timeout" : "Timeout after output";
  if (outs.empty()) return "no output";
  return std::to_string(outs.front().value);
}

}  // namespace

DiffReport run_diff(const std::vector<DiffSubject>& subjects,
                    const std::vector<DiffCase>& cases, const DiffOptions& options) {
  std::vector<murec::EvalResult> expected;
  std::vector<BatchJob> jobs;
  for (const auto& c : cases) {
    const auto& s = subjects.at(c.subject);
    expected.push_back(murec::eval_oracle(*s.reference, c.args, options.fuel));
    BatchJob job;
    job.program = &s.compiled;
    job.args = c.args;
    job.config.big_m = s.compiled.big_m;
    job.config.max_steps = options.max_steps.value_or(step_budget(expected.back().fuel_used));
    jobs.push_back(std::move(job));
  }
  const auto runs = options.parallel ? run_batch(jobs) : run_batch_serial(jobs);

  DiffReport report;
  report.cases = cases.size();
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& s = subjects[cases[k].subject];
    const auto& run = runs[k];
    if (run.outcome.status == RunStatus::Timeout) ++report.timeouts;
    if (run.outcome.status == RunStatus::Faulted) ++report.faults;
    const std::string got = classify(run, s.compiled.output);
    const bool pass = expected[k].ok() ? got == std::to_string(expected[k].value)
                                       : got == "Timeout" || got == "no output";
    if (pass) continue;
    Mismatch m;
    m.expr = murec::to_string(*s.reference);
    m.args = cases[k].args;
    if (expected[k].ok()) m.oracle = expected[k].value;
    m.circuit = got;
    report.mismatches.push_back(std::move(m));
  }
  return report;
}

std::vector<ArgRange> parse_ranges(std::string_view text) {
  auto number = [](std::string_view s) {
    Natural v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || v < 0)
      throw std::invalid_argument("bad argument bound '" + std::string(s) + "'");
    return v;
  };
  std::vector<ArgRange> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.npos
                                                                         : comma - start);
    const auto dots = item.find("..");
    ArgRange r;
    if (dots == std::string_view::npos) {
      r.first = r.second = number(item);
    } else {
      r.first = number(item.substr(0, dots));
      r.second = number(item.substr(dots + 2));
    }
    if (r.first > r.second)
      throw std::invalid_argument("empty argument range '" + std::string(item) + "'");
    out.push_back(r);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::vector<Natural>> enumerate_args(const std::vector<ArgRange>& ranges) {
  std::vector<std::vector<Natural>> out{{}};
  for (const auto& [lo, hi] : ranges) {
    std::vector<std::vector<Natural>> next;
    for (const auto& prefix : out)
      for (Natural v = lo; v <= hi; ++v) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

DiffReport diff_program(const ExprPtr& reference, const CompiledProgram& compiled,
                        const std::vector<ArgRange>& ranges, const DiffOptions& options) {
  std::vector<DiffSubject> subjects{{reference, compiled}};
  std::vector<DiffCase> cases;
  for (auto& args : enumerate_args(ranges)) cases.push_back({0, std::move(args)});
  return run_diff(subjects, cases, options);
}

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

ExprPtr leaf(std::mt19937_64& rng, std::uint32_t arity) {
  std::vector<int> kinds{0};
  if (arity == 1) kinds.push_back(1);
  if (arity >= 1) kinds.push_back(2);
  switch (kinds[pick(rng, 0, static_cast<int>(kinds.size()) - 1)]) {
    case 1: return murec::make_succ();
    case 2: return murec::make_proj(pick(rng, 1, static_cast<int>(arity)), arity);
    default: return murec::make_const(pick(rng, 0, 9), arity);
  }
}

// Arguments (z, x1..xn) -> g(x1..xn).
ExprPtr drop_first(ExprPtr g, std::uint32_t n) {
  if (n == 0) return murec::make_const(0, 1);
  std::vector<ExprPtr> ps;
  for (std::uint32_t k = 2; k <= n + 1; ++k) ps.push_back(murec::make_proj(k, n + 1));
  return murec::make_compose(std::move(g), std::move(ps));
}

}  // namespace

ExprPtr random_expr(std::mt19937_64& rng, int depth, std::uint32_t arity) {
  if (depth <= 1 || pick(rng, 0, 2) == 0) return leaf(rng, arity);
  const auto m = static_cast<std::uint32_t>(pick(rng, 1, 3));
  auto h = random_expr(rng, depth - 1, m);
  std::vector<ExprPtr> gs;
  for (std::uint32_t k = 0; k < m; ++k) gs.push_back(random_expr(rng, depth - 1, arity));
  return murec::make_compose(std::move(h), std::move(gs));
}

ExprPtr random_recursive_expr(std::mt19937_64& rng, int depth) {
  namespace P = murec::programs;
  const int inner = std::max(depth - 1, 1);
  switch (pick(rng, 0, 3)) {
    case 0: {
      const auto n = static_cast<std::uint32_t>(pick(rng, 0, 2));
      return murec::make_primrec(random_expr(rng, inner, n), random_expr(rng, inner, n + 2));
    }
    case 1: {
      // mu z >= 1 . g(x) - z = 0, which stops at max(g(x), 1).
      const auto n = static_cast<std::uint32_t>(pick(rng, 0, 2));
      auto bound = n == 0 ? murec::make_const(pick(rng, 0, 4), 1)
                          : drop_first(random_expr(rng, inner, n), n);
      return murec::make_mu(murec::make_compose(
          P::monus(), {murec::make_proj(1, n + 1), std::move(bound)}));
    }
    case 2: {
      const ExprPtr base[] = {P::add(), P::mul(), P::pred(), P::monus()};
      const auto a = static_cast<std::uint32_t>(pick(rng, 1, 2));
      return murec::make_compose(base[pick(rng, 0, 3)],
                                 {random_expr(rng, inner, a), random_expr(rng, inner, a)});
    }
    default: {
      const ExprPtr whole[] = {P::add(), P::mul(), P::pred(), P::monus(), P::mu_monus()};
      return whole[pick(rng, 0, 4)];
    }
  }
}

DiffReport diff_random(const RandomOptions& random, const DiffOptions& options) {
  std::mt19937_64 rng(random.seed);
  LoweringConfig lc;
  lc.big_m = options.big_m;
  std::vector<DiffSubject> subjects;
  std::vector<DiffCase> cases;
  for (std::size_t k = 0; k < random.count; ++k) {
    const bool recursive = random.recursion && pick(rng, 0, 1) == 1;
    ExprPtr e = recursive
                    ? random_recursive_expr(rng, random.depth)
                    : random_expr(rng, random.depth,
                                  static_cast<std::uint32_t>(
                                      pick(rng, 0, static_cast<int>(random.max_arity))));
    const auto arity = murec::arity_check(*e);
    const Natural hi = recursive ? random.recursion_max_arg : random.max_arg;
    subjects.push_back({e, lower(*e, lc)});
    for (std::size_t s = 0; s < random.samples; ++s) {
      DiffCase c{subjects.size() - 1, {}};
      for (std::uint32_t a = 0; a < arity; ++a)
        c.args.push_back(std::uniform_int_distribution<Natural>(0, hi)(rng));
      cases.push_back(std::move(c));
    }
  }
  auto report = run_diff(subjects, cases, options);
  report.seed = random.seed;
  return report;
}

std::string describe(const Mismatch& m) {
  std::string s = m.expr + " (";
  for (std::size_t k = 0; k < m.args.size(); ++k) {
    if (k) s += ", ";
    s += std::to_string(m.args[k]);
  }
  s += "): oracle ";
  s += m.oracle ? std::to_string(*m.oracle) : "diverges";
  return s + ", circuit " + m.circuit;
}

}  // namespace neurorec
