#include <doctest.h>

#include <random>

#include "neurorec/diff.hpp"
#include "neurorec/murec.hpp"
#include "support.hpp"

using namespace neurorec::murec;

TEST_CASE("parser builds the expected trees") {
  CHECK(std::holds_alternative<Succ>(parse_program("(succ)")->node));
  const auto add = parse_program("(prec (proj 1 1) (compose (succ) ((proj 2 3))))");
  CHECK(structurally_equal(*add, *programs::add()));
  const auto spaced = parse_program(" ( prec\n(proj 1 1) ; base\n (compose (succ) ( (proj 2 3) )) ) ");
  CHECK(structurally_equal(*spaced, *add));
  CHECK(to_string(*add) == "(prec (proj 1 1) (compose (succ) ((proj 2 3))))");
  CHECK(to_string(*parse_program("(const 7 0)")) == "(const 7 0)");
}

TEST_CASE("parse errors carry a position and the expected token") {
  try {
    parse_program("(succ)\n  (proj 1");
    FAIL("accepted");
  } catch (const ProgramParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
    CHECK(std::string(e.what()).find("expected end of input") != std::string::npos);
  }
  try {
    parse_program("(proj 1");
    FAIL("accepted");
  } catch (const ProgramParseError& e) {
    CHECK(std::string(e.what()).find("expected natural number") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_program("(frobnicate)"), ProgramParseError);
  CHECK_THROWS_AS(parse_program("(compose (succ) ())"), ProgramParseError);
  CHECK_THROWS_AS(parse_program(""), ProgramParseError);
}

TEST_CASE("arity rules") {
  CHECK(arity_check(*make_compose(make_succ(), {make_proj(1, 2)})) == 2);
  CHECK(arity_check(*make_primrec(make_proj(1, 1), make_proj(2, 3))) == 2);
  CHECK(arity_check(*make_const(4, 0)) == 0);
  CHECK(arity_check(*programs::mu_monus()) == 1);
  CHECK_THROWS_AS(arity_check(*parse_program("(proj 0 2)")), ArityError);
  CHECK_THROWS_AS(arity_check(*parse_program("(proj 3 2)")), ArityError);
  CHECK_THROWS_AS(arity_check(*make_compose(make_succ(), {make_proj(1, 2), make_proj(2, 2)})),
                  ArityError);
  CHECK_THROWS_AS(arity_check(*make_compose(make_proj(1, 2), {make_proj(1, 2), make_proj(1, 3)})),
                  ArityError);
  CHECK_THROWS_AS(arity_check(*make_primrec(make_proj(1, 1), make_proj(1, 2))), ArityError);
  CHECK_THROWS_AS(arity_check(*make_mu(make_const(1, 0))), ArityError);
  try {
    arity_check(*make_compose(make_succ(), {make_proj(4, 2)}));
  } catch (const ArityError& e) {
    CHECK(std::string(e.what()).find("(proj 4 2)") != std::string::npos);
  }
}

TEST_CASE("oracle examples") {
  CHECK(eval_oracle(*programs::add(), {2, 3}, 1000).value == 5);
  CHECK(eval_oracle(*make_proj(2, 3), {7, 9, 4}, 10).value == 9);
  const auto never = eval_oracle(*programs::always_positive_mu(), {5}, 1000);
  CHECK(never.status == EvalStatus::FuelExhausted);
  CHECK(eval_oracle(*programs::mu_monus(), {4}, 100000).value == 4);
  CHECK(eval_oracle(*programs::mu_monus(), {0}, 100000).value == 1);
  CHECK(eval_oracle(*programs::pred(), {6, 9}, 1000).value == 5);
  CHECK(eval_oracle(*programs::pred(), {0, 9}, 1000).value == 0);
  CHECK_THROWS_AS(eval_oracle(*programs::add(), {1}, 10), ArityError);
  CHECK_THROWS_AS(eval_oracle(*programs::add(), {1, -2}, 10), ArityError);
}

TEST_CASE("oracle charges one unit per application") {
  CHECK(eval_oracle(*make_succ(), {1}, 1).fuel_used == 1);
  CHECK(eval_oracle(*make_succ(), {1}, 1).ok());
  // compose, proj, succ.
  CHECK(eval_oracle(*make_compose(make_succ(), {make_proj(1, 1)}), {1}, 3).ok());
  CHECK_FALSE(eval_oracle(*make_compose(make_succ(), {make_proj(1, 1)}), {1}, 2).ok());
  // add(i, x): prec + g, then i rounds of (compose, succ, proj).
  for (Natural i = 0; i < 6; ++i)
    CHECK(eval_oracle(*programs::add(), {i, 4}, 1000).fuel_used ==
          static_cast<std::uint64_t>(2 + 3 * i));
}

TEST_CASE("addition and multiplication laws") {
  for (Natural x = 0; x <= 20; ++x)
    for (Natural y = 0; y <= 20; ++y) {
      CHECK(eval_oracle(*programs::add(), {x, y}, 100000).value == x + y);
      CHECK(eval_oracle(*programs::mul(), {x, y}, 100000).value == x * y);
    }
  for (Natural z = 0; z <= 10; ++z)
    for (Natural x = 0; x <= 10; ++x)
      CHECK(eval_oracle(*programs::monus(), {z, x}, 100000).value == std::max<Natural>(x - z, 0));
}

TEST_CASE("fuel is monotone and results are natural") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 300; ++k) {
    const auto e = k % 2 ? neurorec::random_recursive_expr(rng, 3)
                         : neurorec::random_expr(rng, 3, static_cast<std::uint32_t>(k % 4));
    std::vector<Natural> args;
    for (std::uint32_t a = 0; a < arity_check(*e); ++a)
      args.push_back(std::uniform_int_distribution<Natural>(0, 4)(rng));
    const auto full = eval_oracle(*e, args, 1'000'000);
    REQUIRE(full.ok());
    CHECK(full.value >= 0);
    for (std::uint64_t f : {full.fuel_used, full.fuel_used + 1, full.fuel_used * 3}) {
      const auto again = eval_oracle(*e, args, f);
      CHECK(again.ok());
      CHECK(again.value == full.value);
    }
    if (full.fuel_used > 1) {
      CHECK(eval_oracle(*e, args, full.fuel_used - 1).status == EvalStatus::FuelExhausted);
    }
  }
}

TEST_CASE("oracle agrees with direct recursive evaluation") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 400; ++k) {
    const auto e = k % 3 == 0 ? neurorec::random_recursive_expr(rng, 3)
                              : neurorec::random_expr(rng, 3, static_cast<std::uint32_t>(k % 4));
    std::vector<Natural> args;
    for (std::uint32_t a = 0; a < arity_check(*e); ++a)
      args.push_back(std::uniform_int_distribution<Natural>(0, 5)(rng));
    int budget = 100000;
    const auto expected = testsupport::naive_eval(*e, args, budget);
    REQUIRE(expected.has_value());
    const auto got = eval_oracle(*e, args, 10'000'000);
    CHECK(got.ok());
    CHECK(got.value == *expected);
  }
}

TEST_CASE("minimization returns the least root starting from 1") {
  for (Natural x = 0; x <= 12; ++x) {
    const auto r = eval_oracle(*programs::mu_monus(), {x}, 1'000'000);
    REQUIRE(r.ok());
    CHECK(r.value == std::max<Natural>(x, 1));
    CHECK(eval_oracle(*programs::monus(), {r.value, x}, 100000).value == 0);
    for (Natural i = 1; i < r.value; ++i)
      CHECK(eval_oracle(*programs::monus(), {i, x}, 100000).value > 0);
  }
}

TEST_CASE("printing and parsing are inverse") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200; ++k) {
    const auto e = k % 2 ? neurorec::random_recursive_expr(rng, 3)
                         : neurorec::random_expr(rng, 3, static_cast<std::uint32_t>(k % 4));
    CHECK(structurally_equal(*parse_program(to_string(*e)), *e));
  }
}
