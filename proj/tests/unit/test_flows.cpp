#include <chrono>
#include <random>

#include "doctest.h"
#include "orderflow/drift.hpp"
#include "orderflow/flows.hpp"
#include "orderflow/kernels.hpp"
#include "test_support.hpp"

using namespace orderflow;
using namespace testing_support;

namespace {
  Rational Q(char const* s) {
    return parse_rational(s);
  }
  ExactDistribution third(char const* a, char const* b, char const* c) {
    return ExactDistribution(3, {{P(a), Q("1/3")}, {P(b), Q("1/3")}, {P(c), Q("1/3")}});
  }
}  // namespace

TEST_CASE("flow residual") {
  CHECK(flow_residual(ExactDistribution::uniform(3)) == 0);
  CHECK(flow_residual(ExactDistribution::point_mass(P("123"))) == 0);
  ExactDistribution mu(3, {{P("132"), Q("1/2")}, {P("123"), Q("1/2")}});
  CHECK(flow_residual(mu) == Q("1/2"));
  CHECK_THROWS_AS(Flow{mu}, Error);
  CHECK(flow_residual(FloatDistribution::uniform(3)) < 1e-15);
}

TEST_CASE("support faces") {
  auto f = support_face(Flow(third("132", "321", "213")));
  CHECK(f == sub(2, {"132", "321", "213"}));
  CHECK(face_dimension(f) == 1);
  CHECK(face_dimension(support_face(Flow(ExactDistribution::uniform(3)))) == 4);
  CHECK(face_dimension(support_face(Flow(ExactDistribution::point_mass(P("123"))))) == 0);
}

TEST_CASE("face realizability") {
  CHECK(face_realizable(Subgraph::full(2)));
  CHECK_FALSE(face_realizable(sub(2, {"123"})));
  CHECK(face_realizable(support(g4_loop())));
  CHECK_THROWS_AS(face_realizable(sub(2, {"132"})), Error);
}

TEST_CASE("census of P_3") {
  auto start = std::chrono::steady_clock::now();
  auto rows  = census(3);
  auto secs  = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  REQUIRE(rows.size() == 5);
  std::vector<std::tuple<int, std::size_t, std::size_t>> got;
  for (auto const& r : rows) {
    got.emplace_back(r.dimension, r.total, r.realizable);
  }
  std::vector<std::tuple<int, std::size_t, std::size_t>> want{
      {4, 1, 1}, {3, 6, 6}, {2, 13, 9}, {1, 13, 2}, {0, 6, 0}};
  CHECK(got == want);
  CHECK(secs < 60);
}

TEST_CASE("serial and parallel census kernels agree") {
  auto a = kernels::census_subsets(3, Execution::serial);
  auto b = kernels::census_subsets(3, Execution::parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].total == b[i].total);
    CHECK(a[i].realizable == b[i].realizable);
  }
}

TEST_CASE("restricted census by loop unions matches the exhaustive one for n = 3") {
  auto full = census(3);
  auto low  = census(3, 2);
  REQUIRE(low.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(low[i].dimension == full[i + 2].dimension);
    CHECK(low[i].total == full[i + 2].total);
    CHECK(low[i].realizable == full[i + 2].realizable);
  }
}

TEST_CASE("vertices of P_4 are the embedded loops of G_3") {
  auto rows = census(4, 0);
  REQUIRE(rows.size() == 1);
  auto loops = embedded_loops(Subgraph::full(3));
  CHECK(rows[0].total == loops.size());
  // A single embedded loop is a realizable vertex exactly when it is
  // driftless on its own (its only loops are its powers).
  std::size_t driftless = 0;
  for (auto const& l : loops) {
    auto c = classify(loop_drift_poset(l));
    driftless += c == LoopClass::driftless || c == LoopClass::totally_driftless;
  }
  CHECK(rows[0].realizable == driftless);
  CHECK(driftless > 0);
}

TEST_CASE("cycle decomposition re-sums exactly") {
  for (auto const& mu : {ExactDistribution::uniform(3), ExactDistribution::point_mass(P("123")),
                         third("132", "321", "213"), ExactDistribution::uniform(4)}) {
    Flow f(mu);
    auto parts = cycle_decompose(f);
    CHECK(parts.size() <= mu.masses().size());
    CHECK(resum(parts) == f);
  }
  auto pm = cycle_decompose(Flow(ExactDistribution::point_mass(P("123"))));
  REQUIRE(pm.size() == 1);
  CHECK(pm[0].first == path({"123"}));
  CHECK(pm[0].second == 1);
}

TEST_CASE("random loop combinations give flows whose supports are faces") {
  std::mt19937_64 rng(21);
  auto            loops = embedded_loops(Subgraph::full(3));
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<DiPath, Rational>> parts;
    int                                      k     = 1 + static_cast<int>(rng() % 4);
    Rational                                 total = 0;
    for (int i = 0; i < k; ++i) {
      Rational w(static_cast<long>(1 + rng() % 5));
      parts.emplace_back(loops[rng() % loops.size()], w);
      total += w;
    }
    for (auto& [l, w] : parts) {
      w /= total;
    }
    Flow f = resum(parts);
    REQUIRE(is_face_subgraph(support_face(f)));
    REQUIRE(resum(cycle_decompose(f)) == f);
  }
}

TEST_CASE("interior flows") {
  auto full = interior_flow(Subgraph::full(2));
  CHECK(support_face(full) == Subgraph::full(2));
  CHECK(interior_flow(sub(2, {"123"})).weight(P("123")) == 1);
  auto two = interior_flow(sub(2, {"132", "213"}));
  CHECK(two.weight(P("132")) == Q("1/2"));
  CHECK(two.weight(P("213")) == Q("1/2"));
  CHECK(support_face(interior_flow(support(g4_loop()))) == support(g4_loop()));
}

TEST_CASE("polytope dimension") {
  CHECK(polytope_dimension(2) == 1);
  CHECK(polytope_dimension(3) == 4);
  CHECK(polytope_dimension(4) == 18);
  for (int n = 2; n <= 5; ++n) {
    CHECK(polytope_dimension(n)
          == static_cast<int>(factorial(n) - factorial(n - 1)));
  }
}

TEST_CASE("joins of vertex-disjoint faces add dimensions plus one") {
  auto a = sub(2, {"123"});
  auto b = sub(2, {"321"});
  CHECK(face_dimension(unite(a, b)) == face_dimension(a) + face_dimension(b) + 1);
  auto loops = embedded_loops(Subgraph::full(3));
  int  tried = 0;
  for (std::size_t i = 0; i < loops.size() && tried < 200; ++i) {
    for (std::size_t j = i + 1; j < loops.size() && tried < 200; ++j) {
      auto vi = loops[i].vertices();
      auto vj = loops[j].vertices();
      std::set<Perm> si(vi.begin(), vi.end());
      bool           disjoint = true;
      for (auto const& v : vj) {
        disjoint = disjoint && !si.count(v);
      }
      if (!disjoint) {
        continue;
      }
      auto h = support(loops[i]), k = support(loops[j]);
      REQUIRE(face_dimension(unite(h, k)) == face_dimension(h) + face_dimension(k) + 1);
      ++tried;
    }
  }
  CHECK(tried > 0);
}

TEST_CASE("realizability agrees with synthesis on connected faces of G_2") {
  auto edges = PermDigraph::build(2).edges();
  for (unsigned mask = 1; mask < 64; ++mask) {
    Subgraph h(2);
    for (unsigned i = 0; i < 6; ++i) {
      if (mask & (1u << i)) {
        h.insert(edges[i]);
      }
    }
    if (!is_face_subgraph(h) || !is_strongly_connected(h)) {
      continue;
    }
    bool synthesized = true;
    try {
      synthesize_totally_driftless_loop(h);
    } catch (Error const& e) {
      REQUIRE(e.kind() == ErrorKind::drift_obstruction);
      synthesized = false;
    }
    REQUIRE(face_realizable(h) == synthesized);
  }
}

TEST_CASE("snapping floating flows") {
  FloatDistribution mu(3, {{P("132"), 1.0 / 3}, {P("321"), 1.0 / 3}, {P("213"), 1.0 / 3}});
  auto              s = snap_flow(mu);
  CHECK(s.flow.weight(P("132")) == Q("1/3"));
  CHECK(s.max_adjustment < 1e-15);
  FloatDistribution bad(3, {{P("132"), 0.5}, {P("123"), 0.5}});
  CHECK_THROWS_AS(snap_flow(bad), Error);
}
