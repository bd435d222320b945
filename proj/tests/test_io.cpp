#include "doctest.h"
#include "support.hpp"

#include <sstream>

#include "hexfold/io.hpp"
#include "hexfold/oracles.hpp"

using namespace hexfold;
using namespace testing;

TEST_CASE("disk round trip") {
  const auto disks = gen_random_disks(200, dec("3.5"), Rational(40), 6);
  std::stringstream buf;
  write_disks_jsonl(buf, disks, {{"seed", "6"}, {"sigma", "3.5"}});
  const std::string text = buf.str();
  CHECK(text.rfind("{\"meta\":", 0) == 0);
  const auto back = read_disks_jsonl(buf);
  REQUIRE(back.size() == disks.size());
  for (std::size_t i = 0; i < disks.size(); ++i) {
    CHECK(back[i].center == disks[i].center);
    CHECK(back[i].diameter == disks[i].diameter);
  }
  std::stringstream again;
  write_disks_jsonl(again, back, {{"seed", "6"}, {"sigma", "3.5"}});
  CHECK(again.str() == text);
}

TEST_CASE("disk reader") {
  std::istringstream in("\n{\"center\":[\"-1.25\",\"0\"],\"diameter\":\"1\"}\n\n{\"diameter\":\"2\",\"center\":[\"3\",\"4.5\"]}\n");
  const auto disks = read_disks_jsonl(in);
  REQUIRE(disks.size() == 2);
  CHECK(disks[0].center == pt(dec("-1.25"), 0));
  CHECK(disks[1].diameter == ExactScalar(2));

  for (const char* bad : {"{\"center\":[\"1\"],\"diameter\":\"1\"}", "{\"center\":[\"1\",\"x\"],\"diameter\":\"1\"}",
                          "not json", "{\"center\":[\"1\",\"2\"]}", "{\"center\":[\"1\",\"2\"],\"diameter\":\"-1\"}"}) {
    std::istringstream e(std::string("{\"center\":[\"0\",\"0\"],\"diameter\":\"1\"}\n") + bad + "\n");
    try {
      read_disks_jsonl(e);
      FAIL("accepted " << std::string(bad));
    } catch (const std::runtime_error& err) {
      CHECK(std::string(err.what()).rfind("line 2: ", 0) == 0);
    }
  }
}

TEST_CASE("shape round trip") {
  const auto shapes = gen_random_shapes(50, dec("2"), Rational(20), 13);
  std::stringstream buf;
  write_shapes_jsonl(buf, shapes);
  const auto back = read_shapes_jsonl(buf);
  REQUIRE(back.size() == shapes.size());
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    CHECK(back[i].center == shapes[i].center);
    CHECK(back[i].vertices == shapes[i].vertices);
  }
}

TEST_CASE("shape reader validates") {
  std::istringstream cw("{\"center\":[\"0\",\"0\"],\"vertices\":[[\"1\",\"1\"],[\"1\",\"-1\"],[\"-1\",\"-1\"],[\"-1\",\"1\"]]}\n");
  CHECK_THROWS_AS(read_shapes_jsonl(cw), std::runtime_error);
  std::istringstream ok("{\"center\":[\"0\",\"0\"],\"vertices\":[[\"-1\",\"-1\"],[\"1\",\"-1\"],[\"1\",\"1\"],[\"-1\",\"1\"]]}\n");
  CHECK(read_shapes_jsonl(ok).size() == 1);
}

TEST_CASE("decimal strings") {
  CHECK(decimal_string(ExactScalar(dec("-0.125"))) == "-0.125");
  CHECK(decimal_string(ExactScalar(7)) == "7");
  CHECK_THROWS_AS(decimal_string(ExactScalar(Rational(1, 3))), std::invalid_argument);
  CHECK_THROWS_AS(decimal_string(root3(Rational(1))), std::invalid_argument);
}
