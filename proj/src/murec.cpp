#include "neurorec/murec.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace neurorec::murec {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ExprPtr make_const(Natural k, std::uint32_t arity) {
  return std::make_shared<const RecExpr>(RecExpr{Const{k, arity}});
}
ExprPtr make_succ() { return std::make_shared<const RecExpr>(RecExpr{Succ{}}); }
ExprPtr make_proj(std::uint32_t i, std::uint32_t n) {
  return std::make_shared<const RecExpr>(RecExpr{Proj{i, n}});
}
ExprPtr make_compose(ExprPtr h, std::vector<ExprPtr> gs) {
  return std::make_shared<const RecExpr>(RecExpr{Compose{std::move(h), std::move(gs)}});
}
ExprPtr make_primrec(ExprPtr g, ExprPtr h) {
  return std::make_shared<const RecExpr>(RecExpr{PrimRec{std::move(g), std::move(h)}});
}
ExprPtr make_mu(ExprPtr f) { return std::make_shared<const RecExpr>(RecExpr{Mu{std::move(f)}}); }

std::string to_string(const RecExpr& e) {
  return std::visit(
      overloaded{
          [](const Const& c) {
            return "(const " + std::to_string(c.k) + " " + std::to_string(c.arity) + ")";
          },
          [](const Succ&) { return std::string("(succ)"); },
          [](const Proj& p) {
            return "(proj " + std::to_string(p.i) + " " + std::to_string(p.n) + ")";
          },
          [](const Compose& c) {
            std::string s = "(compose " + to_string(*c.h) + " (";
            for (std::size_t k = 0; k < c.gs.size(); ++k) {
              if (k) s += ' ';
              s += to_string(*c.gs[k]);
            }
            return s + "))";
          },
          [](const PrimRec& p) {
            return "(prec " + to_string(*p.g) + " " + to_string(*p.h) + ")";
          },
          [](const Mu& m) { return "(mu " + to_string(*m.f) + ")"; },
      },
      e.node);
}

bool structurally_equal(const RecExpr& a, const RecExpr& b) {
  return to_string(a) == to_string(b);
}

bool has_recursion(const RecExpr& e) {
  return std::visit(overloaded{
                        [](const Compose& c) {
                          if (has_recursion(*c.h)) return true;
                          for (const auto& g : c.gs)
                            if (has_recursion(*g)) return true;
                          return false;
                        },
                        [](const PrimRec&) { return true; },
                        [](const Mu&) { return true; },
                        [](const auto&) { return false; },
                    },
                    e.node);
}

// ---- parser ---------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr program() {
    auto e = expr();
    skip();
    if (pos_ < text_.size()) fail("end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < pos_ && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'"
                                            : std::string("end of input");
    throw ProgramParseError("parse error at " + std::to_string(line) + ":" +
                                std::to_string(col) + ": expected " + expected +
                                ", found " + found,
                            line, col);
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("'") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("keyword (const, succ, proj, compose, prec, mu)");
    return std::string(text_.substr(start, pos_ - start));
  }

  Natural nat() {
    skip();
    const auto start = pos_;
    Natural v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const Natural d = text_[pos_] - '0';
      if (v > (std::numeric_limits<Natural>::max() - d) / 10) fail("a smaller number");
      v = v * 10 + d;
      ++pos_;
    }
    if (start == pos_) fail("natural number");
    return v;
  }

  std::uint32_t small_nat() {
    const auto v = nat();
    if (v > std::numeric_limits<std::uint32_t>::max()) fail("a 32-bit index");
    return static_cast<std::uint32_t>(v);
  }

  ExprPtr expr() {
    expect('(');
    const auto save = pos_;
    const std::string kw = word();
    ExprPtr e;
    if (kw == "const") {
      const auto k = nat();
      e = make_const(k, small_nat());
    } else if (kw == "succ") {
      e = make_succ();
    } else if (kw == "proj") {
      const auto i = small_nat();
      e = make_proj(i, small_nat());
    } else if (kw == "compose") {
      auto h = expr();
      expect('(');
      std::vector<ExprPtr> gs;
      gs.push_back(expr());
      while (!peek(')')) gs.push_back(expr());
      expect(')');
      e = make_compose(std::move(h), std::move(gs));
    } else if (kw == "prec") {
      auto g = expr();
      e = make_primrec(std::move(g), expr());
    } else if (kw == "mu") {
      e = make_mu(expr());
    } else {
      pos_ = save;
      fail("keyword (const, succ, proj, compose, prec, mu)");
    }
    expect(')');
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_program(std::string_view text) { return Parser(text).program(); }

// ---- arity ----------------------------------------------------------------

std::uint32_t arity_check(const RecExpr& e) {
  auto err = [&e](const std::string& why) -> ArityError {
    return ArityError("ArityError in " + to_string(e) + ": " + why);
  };
  return std::visit(
      overloaded{
          [](const Const& c) { return c.arity; },
          [](const Succ&) { return std::uint32_t{1}; },
          [&](const Proj& p) {
            if (p.i < 1 || p.i > p.n) throw err("projection index must satisfy 1 <= i <= N");
            return p.n;
          },
          [&](const Compose& c) {
            if (c.gs.empty()) throw err("composition needs at least one operand");
            const auto ha = arity_check(*c.h);
            if (ha != c.gs.size())
              throw err("h takes " + std::to_string(ha) + " arguments but " +
                        std::to_string(c.gs.size()) + " operands given");
            const auto ga = arity_check(*c.gs.front());
            for (const auto& g : c.gs)
              if (arity_check(*g) != ga) throw err("operands disagree on arity");
            return ga;
          },
          [&](const PrimRec& p) {
            const auto ga = arity_check(*p.g);
            const auto ha = arity_check(*p.h);
            if (ha != ga + 2)
              throw err("h must take arity(g) + 2 = " + std::to_string(ga + 2) +
                        " arguments, has " + std::to_string(ha));
            return ga + 1;
          },
          [&](const Mu& m) {
            const auto fa = arity_check(*m.f);
            if (fa < 1) throw err("minimized function needs at least one argument");
            return fa - 1;
          },
      },
      e.node);
}

// ---- oracle ---------------------------------------------------------------

namespace {

struct Evaluator {
  std::uint64_t fuel;
  std::uint64_t used = 0;
  EvalStatus status = EvalStatus::Value;

  bool spend() {
    if (used >= fuel) {
      status = EvalStatus::FuelExhausted;
      return false;
    }
    ++used;
    return true;
  }

  // Returns false once evaluation must stop; `out` is valid otherwise.
  bool eval(const RecExpr& e, const std::vector<Natural>& args, Natural& out) {
    if (!spend()) return false;
    return std::visit(
        overloaded{
            [&](const Const& c) {
              out = c.k;
              return true;
            },
            [&](const Succ&) {
              if (args[0] == std::numeric_limits<Natural>::max()) {
                status = EvalStatus::Overflow;
                return false;
              }
              out = args[0] + 1;
              return true;
            },
            [&](const Proj& p) {
              out = args[p.i - 1];
              return true;
            },
            [&](const Compose& c) {
              std::vector<Natural> inner(c.gs.size());
              for (std::size_t k = 0; k < c.gs.size(); ++k)
                if (!eval(*c.gs[k], args, inner[k])) return false;
              return eval(*c.h, inner, out);
            },
            [&](const PrimRec& p) {
              const Natural i = args[0];
              std::vector<Natural> rest(args.begin() + 1, args.end());
              Natural acc;
              if (!eval(*p.g, rest, acc)) return false;
              std::vector<Natural> hargs(rest.size() + 2);
              std::copy(rest.begin(), rest.end(), hargs.begin() + 2);
              for (Natural j = 0; j < i; ++j) {
                hargs[0] = j;
                hargs[1] = acc;
                if (!eval(*p.h, hargs, acc)) return false;
              }
              out = acc;
              return true;
            },
            [&](const Mu& m) {
              std::vector<Natural> fargs(args.size() + 1);
              std::copy(args.begin(), args.end(), fargs.begin() + 1);
              for (Natural z = 1;; ++z) {
                fargs[0] = z;
                Natural v;
                if (!eval(*m.f, fargs, v)) return false;
                if (v == 0) {
                  out = z;
                  return true;
                }
              }
            },
        },
        e.node);
  }
};

}  // namespace

EvalResult eval_oracle(const RecExpr& e, const std::vector<Natural>& args,
                       std::uint64_t fuel) {
  const auto a = arity_check(e);
  if (args.size() != a)
    throw ArityError("expected " + std::to_string(a) + " arguments, got " +
                     std::to_string(args.size()));
  for (auto v : args)
    if (v < 0) throw ArityError("arguments must be natural numbers");
  Evaluator ev{fuel};
  EvalResult r;
  Natural out = 0;
  if (ev.eval(e, args, out)) {
    r.status = EvalStatus::Value;
    r.value = out;
  } else {
    r.status = ev.status;
  }
  r.fuel_used = ev.used;
  return r;
}

namespace programs {

ExprPtr add() {
  return make_primrec(make_proj(1, 1), make_compose(make_succ(), {make_proj(2, 3)}));
}

ExprPtr mul() {
  return make_primrec(make_const(0, 1),
                      make_compose(add(), {make_proj(2, 3), make_proj(3, 3)}));
}

ExprPtr pred() { return make_primrec(make_const(0, 1), make_proj(1, 3)); }

ExprPtr monus() {
  return make_primrec(make_proj(1, 1),
                      make_compose(pred(), {make_proj(2, 3), make_proj(2, 3)}));
}

ExprPtr mu_monus() { return make_mu(monus()); }

ExprPtr always_positive_mu() {
  return make_mu(make_compose(make_succ(), {make_proj(1, 2)}));
}

}  // namespace programs

}  // namespace neurorec::murec
