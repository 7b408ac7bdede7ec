#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bonsai/oracle.hh"
#include "testutil.hh"

using namespace bonsai;

TEST_CASE("the looping Büchi automaton is losing at every k") {
  automaton a = test::make_loop_aut();
  CHECK_FALSE(oracle_solve(a, 1));
  CHECK_FALSE(oracle_solve(a, 2));
  CHECK_FALSE(oracle_solve(a, 3));
}

TEST_CASE("the two-self-loop automaton without Büchi states is winning") {
  automaton a = test::make_real_aut();
  CHECK(oracle_solve(a, 1));
  CHECK(oracle_solve(a, 3));
}

TEST_CASE("no Büchi set means no decrements, hence winning") {
  auto eng = std::make_shared<bool_engine>();
  var_id i = eng->declare("i", var_kind::input);
  automaton a(eng, 1, 0, {{0, 0, eng->tt()}}, {}, {i}, {});
  CHECK(oracle_solve(a, 1));
  CHECK(oracle_solve(a, 2));
}

TEST_CASE("size guard") {
  auto eng = std::make_shared<bool_engine>();
  std::vector<transition> trans;
  automaton a(eng, 12, 0, std::move(trans), {}, {}, {});
  CHECK_THROWS_AS(oracle_solve(a, 7), limit_error);
}

TEST_CASE("pure io-actions of the loop automaton collapse to one set") {
  automaton a = test::make_loop_aut();
  auto fam = oracle_pure_ioacts(a);
  REQUIRE(fam.size() == 1);
  CHECK(fam.begin()->size() == 1);
}

TEST_CASE("automaton with no edges has the empty action") {
  auto eng = std::make_shared<bool_engine>();
  var_id i = eng->declare("i", var_kind::input);
  automaton a(eng, 1, 0, {}, {0}, {i}, {});
  auto fam = oracle_pure_ioacts(a);
  REQUIRE(fam.size() == 1);
  CHECK(fam.begin()->empty());
}
