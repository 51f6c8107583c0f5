#include <sstream>

#include "doctest.h"
#include "orderflow/io.hpp"
#include "test_support.hpp"

using namespace orderflow;
using namespace testing_support;
using io::Json;

namespace {
  bool mentions(io::Validation const& v, std::string const& needle) {
    for (auto const& d : v.diagnostics) {
      if (d.find(needle) != std::string::npos) {
        return true;
      }
    }
    return false;
  }
}  // namespace

TEST_CASE("subgraph and path round trips") {
  auto h = sub(2, {"132", "321", "213"});
  CHECK(io::subgraph_from_json(io::to_json(h)) == h);
  auto p = g4_loop();
  CHECK(io::path_from_json(io::to_json(p)) == p);
  CHECK(io::to_json(path({"132", "321"})).dump() == R"({"n":2,"edges":["132","321"]})");
}

TEST_CASE("flow round trip accepts numbers and fractions") {
  Flow mu(ExactDistribution::uniform(3));
  CHECK(io::flow_from_json(io::to_json(mu)) == mu);
  auto j = Json::parse(R"({"n":2,"weights":{"12":0.25,"21":"3/4"}})");
  auto f = io::flow_from_json(j);
  CHECK(f.weight(P("12")) == parse_rational("1/4"));
  CHECK(f.weight(P("21")) == parse_rational("3/4"));
}

TEST_CASE("map round trip keeps tails") {
  for (auto const& f : {builtin("doubling"), builtin("tent"), builtin("rotation", "sqrt2-1"),
                        permutation_map(cyclic_lift(g4_loop()))}) {
    auto g = io::map_from_json(io::to_json(f));
    CHECK(g.pieces().size() == f.pieces().size());
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
      CHECK(g.pieces()[i].lo == f.pieces()[i].lo);
      CHECK(g.pieces()[i].a == f.pieces()[i].a);
      CHECK(g.pieces()[i].b == f.pieces()[i].b);
      CHECK(g.pieces()[i].tail == f.pieces()[i].tail);
    }
    CHECK(g.aperiodic() == f.aperiodic());
  }
  CHECK_THROWS_AS(io::to_json(IntervalMap::logistic(4)), Error);
}

TEST_CASE("drift reports") {
  auto r = io::to_json(subgraph_drifts(sub(2, {"123"})));
  CHECK(r["verdict"] == "drifts");
  CHECK(r["witness"]["index"].get<int>() >= 1);
  CHECK(io::to_json(subgraph_drifts(Subgraph::full(2)))["verdict"] == "driftless");
  auto l = io::loop_report(partial_loop());
  CHECK(l["class"] == "partially_driftless");
  CHECK(l["matrix"].size() == 3);
}

TEST_CASE("validation names the offending element") {
  auto neg = io::validate_text(R"({"n":2,"weights":{"12":"-1/2","21":"3/2"}})",
                               io::Format::automatic);
  CHECK(neg.format == io::Format::flow);
  CHECK_FALSE(neg.ok());
  CHECK(mentions(neg, "/weights/12"));
  CHECK(mentions(neg, "negative"));

  auto unbalanced = io::validate_text(R"({"n":3,"weights":{"132":"1/2","123":"1/2"}})",
                                      io::Format::flow);
  CHECK(mentions(unbalanced, "not conserved"));

  auto broken = io::validate_text(R"({"n":2,"edges":["132","123"]})", io::Format::path);
  CHECK_FALSE(broken.ok());
  CHECK(mentions(broken, "/edges/0 -> /edges/1"));
  CHECK(io::validate_text(R"({"n":2,"edges":["132","321"]})", io::Format::path).ok());

  auto bad_perm = io::validate_text(R"({"n":2,"edges":["1323","12"]})", io::Format::subgraph);
  CHECK(bad_perm.diagnostics.size() == 2);

  auto map = io::validate_text(R"({"pieces":[{"lo":0,"hi":"1/2","a":2,"b":0}]})",
                               io::Format::automatic);
  CHECK(map.format == io::Format::map);
  CHECK_FALSE(map.ok());
  CHECK(io::validate_json(io::to_json(builtin("tent")), io::Format::automatic).ok());

  CHECK_FALSE(io::validate_text("{not json", io::Format::automatic).ok());
  CHECK(io::validate_text("pattern,mass\n12,1/2\n21,1/2\n", io::Format::automatic).format
        == io::Format::distribution);
}

TEST_CASE("imports fail with parse errors on malformed input") {
  try {
    io::flow_from_json(Json::parse(R"({"n":2,"weights":{"12":"x"}})"));
    FAIL("expected a throw");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::parse_error);
  }
  try {
    io::flow_from_json(Json::parse(R"({"n":3,"weights":{"132":"1/2","123":"1/2"}})"));
    FAIL("expected a throw");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::not_a_flow);
  }
  CHECK_THROWS_AS(io::path_from_json(Json::parse(R"({"n":2,"edges":[]})")), Error);
  CHECK_THROWS_AS(io::parse_format("yaml"), Error);
}
