#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "orderflow/perm.hpp"

using orderflow::Error;
using orderflow::ErrorKind;
using orderflow::Perm;
using orderflow::Side;

namespace {
  Perm P(char const* s) {
    return Perm::parse(s);
  }
}  // namespace

TEST_CASE("order_pattern ranks values") {
  CHECK(orderflow::order_pattern(std::vector<double>{0.3, 0.1, 0.9}) == P("213"));
  CHECK(orderflow::order_pattern(std::vector<double>{0.1, 0.2, 0.3}) == P("123"));
  CHECK(orderflow::order_pattern(std::vector<int>{2, 4, 1}) == P("231"));
}

TEST_CASE("order_pattern rejects ties") {
  try {
    orderflow::order_pattern(std::vector<int>{1, 5, 1});
    FAIL("expected DuplicateValue");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::duplicate_value);
  }
}

TEST_CASE("order_pattern is idempotent on permutations up to n = 7") {
  for (int n = 1; n <= 7; ++n) {
    for (auto const& sigma : orderflow::all_perms(n)) {
      std::vector<int> w;
      for (int i = 0; i < n; ++i) {
        w.push_back(sigma[i]);
      }
      REQUIRE(orderflow::order_pattern(w) == sigma);
    }
  }
}

TEST_CASE("restrict drops the last or first position") {
  CHECK(restrict(P("2413"), Side::head) == P("231"));
  CHECK(restrict(P("2413"), Side::tail) == P("312"));
  CHECK(restrict(P("4231"), Side::head) == P("312"));
  CHECK(restrict(P("4231"), Side::tail) == P("231"));
  CHECK(restrict(P("132"), Side::head) == P("12"));
  CHECK(restrict(P("132"), Side::tail) == P("21"));
  CHECK_THROWS_AS(restrict(Perm(), Side::head), Error);
}

TEST_CASE("each permutation has n+1 preimages under either restriction") {
  for (int n = 1; n <= 6; ++n) {
    for (Side side : {Side::head, Side::tail}) {
      std::map<Perm, int> count;
      for (auto const& sigma : orderflow::all_perms(n + 1)) {
        ++count[restrict(sigma, side)];
      }
      REQUIRE(count.size() == orderflow::factorial(n));
      for (auto const& [p, c] : count) {
        REQUIRE(c == n + 1);
      }
    }
  }
}

TEST_CASE("index and from_index are inverse and lexicographic") {
  for (int n = 1; n <= 6; ++n) {
    auto perms = orderflow::all_perms(n);
    for (std::uint64_t i = 0; i < perms.size(); ++i) {
      REQUIRE(perms[i].index() == i);
      REQUIRE(Perm::from_index(n, i) == perms[i]);
      if (i > 0) {
        REQUIRE(perms[i - 1] < perms[i]);
      }
    }
  }
}

TEST_CASE("text form uses commas beyond nine") {
  CHECK(P("2413").to_string() == "2413");
  CHECK(P("2,4,1,3") == P("2413"));
  Perm ten = Perm::from_word({10, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(ten.to_string() == "10,1,2,3,4,5,6,7,8,9");
  CHECK(Perm::parse(ten.to_string()) == ten);
  CHECK_THROWS_AS(P("1223"), Error);
  CHECK_THROWS_AS(P("12a"), Error);
  CHECK_THROWS_AS(P(""), Error);
}

TEST_CASE("window and inverse") {
  Perm s = P("25314");
  CHECK(s.window(0, 3) == P("132"));
  CHECK(s.window(1, 3) == P("321"));
  CHECK(s.window(2, 3) == P("213"));
  CHECK(s.inverse().inverse() == s);
  CHECK(s.position_of(5) == 1);
}

TEST_CASE("length cap is enforced") {
  auto saved = orderflow::caps();
  auto c     = saved;
  c.perm_length = 4;
  orderflow::set_caps(c);
  CHECK_THROWS_AS(Perm::identity(5), Error);
  orderflow::set_caps(saved);
  CHECK(Perm::identity(5).size() == 5);
}
