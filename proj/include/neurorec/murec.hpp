#pragma once

// mu-recursive expressions: AST, s-expression parser, arity checker and a
// fuelled reference interpreter.
//
// Grammar:
//   expr := "(" "const" nat nat ")" | "(" "succ" ")" | "(" "proj" nat nat ")"
//         | "(" "compose" expr "(" expr+ ")" ")" | "(" "prec" expr expr ")"
//         | "(" "mu" expr ")"
// `;` starts a comment running to end of line.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace neurorec::murec {

using Natural = std::int64_t;

struct RecExpr;
using ExprPtr = std::shared_ptr<const RecExpr>;

struct Const {
  Natural k = 0;
  std::uint32_t arity = 1;
};
struct Succ {};
struct Proj {
  std::uint32_t i = 1;
  std::uint32_t n = 1;
};
struct Compose {
  ExprPtr h;
  std::vector<ExprPtr> gs;
};
struct PrimRec {
  ExprPtr g;
  ExprPtr h;
};
struct Mu {
  ExprPtr f;
};

struct RecExpr {
  std::variant<Const, Succ, Proj, Compose, PrimRec, Mu> node;
};

ExprPtr make_const(Natural k, std::uint32_t arity);
ExprPtr make_succ();
ExprPtr make_proj(std::uint32_t i, std::uint32_t n);
ExprPtr make_compose(ExprPtr h, std::vector<ExprPtr> gs);
ExprPtr make_primrec(ExprPtr g, ExprPtr h);
ExprPtr make_mu(ExprPtr f);

/// Canonical s-expression text; parse_program(to_string(e)) rebuilds e.
std::string to_string(const RecExpr& e);
bool structurally_equal(const RecExpr& a, const RecExpr& b);
/// True if the tree contains primitive recursion or minimization.
bool has_recursion(const RecExpr& e);

class ProgramParseError : public std::runtime_error {
 public:
  ProgramParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ArityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExprPtr parse_program(std::string_view text);

/// Arity of a well-formed expression; throws ArityError naming the offending
/// subexpression otherwise.
std::uint32_t arity_check(const RecExpr& e);

enum class EvalStatus { Value, FuelExhausted, Overflow };

struct EvalResult {
  EvalStatus status = EvalStatus::Value;
  Natural value = 0;
  std::uint64_t fuel_used = 0;

  bool ok() const { return status == EvalStatus::Value; }
};

/// Big-step evaluation where every operator application costs one unit of
/// fuel. Minimization searches z = 1, 2, ... Throws ArityError if the
/// argument count does not match.
EvalResult eval_oracle(const RecExpr& e, const std::vector<Natural>& args,
                       std::uint64_t fuel);

// Reference programs used throughout tests and the CLI.
namespace programs {
ExprPtr add();         // add(i, x) = i + x
ExprPtr mul();         // mul(i, x) = i * x
ExprPtr pred();        // pred(i, d) = i - 1 (0 at 0), d is ignored
ExprPtr monus();       // monus(z, x) = x - z truncated at 0
ExprPtr mu_monus();    // mu z >= 1 . x - z = 0
ExprPtr always_positive_mu();  // mu over f(z, x) = z + 1, never 0
}  // namespace programs

}  // namespace neurorec::murec
