#include <set>

#include "doctest.h"
#include "orderflow/digraph.hpp"

using namespace orderflow;

namespace {
  Perm P(char const* s) {
    return Perm::parse(s);
  }
  Subgraph S(int n, std::initializer_list<char const*> e) {
    Subgraph h(n);
    for (auto s : e) {
      h.insert(P(s));
    }
    return h;
  }
}  // namespace

TEST_CASE("sizes of G_n") {
  for (int n = 2; n <= 4; ++n) {
    auto g = PermDigraph::build(n);
    CHECK(g.vertices().size() == factorial(n));
    CHECK(g.edges().size() == factorial(n + 1));
  }
}

TEST_CASE("edges between 231 and 312 in G_3") {
  auto              g = PermDigraph::build(3);
  std::set<Perm>    forward, backward;
  for (auto const& e : g.edges()) {
    if (g.head(e) == P("231") && g.tail(e) == P("312")) {
      forward.insert(e);
    }
    if (g.head(e) == P("312") && g.tail(e) == P("231")) {
      backward.insert(e);
    }
  }
  CHECK(forward == std::set<Perm>{P("2413"), P("3412")});
  CHECK(backward.count(P("4231")) == 1);
}

TEST_CASE("degrees are n+1 everywhere up to n = 5") {
  for (int n = 1; n <= 5; ++n) {
    auto g = PermDigraph::build(n);
    for (auto const& v : g.vertices()) {
      auto out = g.out_edges(v);
      auto in  = g.in_edges(v);
      REQUIRE(out.size() == static_cast<std::size_t>(n + 1));
      REQUIRE(in.size() == static_cast<std::size_t>(n + 1));
      for (auto const& e : out) {
        REQUIRE(g.head(e) == v);
      }
      for (auto const& e : in) {
        REQUIRE(g.tail(e) == v);
      }
    }
  }
}

TEST_CASE("face subgraphs") {
  CHECK(is_face_subgraph(S(2, {"132", "213"})));
  CHECK_FALSE(is_face_subgraph(S(2, {"132"})));
  CHECK(is_face_subgraph(Subgraph::full(2)));
}

TEST_CASE("strongly connected components") {
  auto c = strongly_connected_components(S(2, {"123", "321"}));
  REQUIRE(c.size() == 2);
  CHECK(c[0].edges.edge_count() == 1);
  CHECK(c[1].edges.edge_count() == 1);

  c = strongly_connected_components(S(2, {"132", "213", "231", "312"}));
  REQUIRE(c.size() == 1);
  CHECK(c[0].vertices.size() == 2);

  c = strongly_connected_components(S(2, {"132"}));
  REQUIRE(c.size() == 2);
  CHECK(c[0].edges.empty());
  CHECK(c[1].edges.empty());
}

TEST_CASE("embedded loops of G_2") {
  auto loops = embedded_loops(Subgraph::full(2));
  REQUIRE(loops.size() == 6);
  std::set<std::vector<Perm>> words;
  std::set<std::set<Perm>>    supports;
  for (auto const& l : loops) {
    words.insert(l.edges());
    supports.insert(support(l).edges());
  }
  CHECK(words.count({P("123")}) == 1);
  CHECK(words.count({P("321")}) == 1);
  CHECK(words.count({P("132"), P("213")}) == 1);
  CHECK(words.count({P("132"), P("312")}) == 1);
  CHECK(words.count({P("213"), P("231")}) == 1);
  CHECK(words.count({P("231"), P("312")}) == 1);
  CHECK(supports.size() == 6);
  CHECK(embedded_loops(S(2, {"132", "213"})).size() == 1);
  CHECK(embedded_loops(S(2, {"123"})).size() == 1);
}

TEST_CASE("face iff union of embedded loop supports, all 64 subsets of G_2") {
  auto edges = PermDigraph::build(2).edges();
  for (unsigned mask = 0; mask < 64; ++mask) {
    Subgraph h(2);
    for (unsigned i = 0; i < 6; ++i) {
      if (mask & (1u << i)) {
        h.insert(edges[i]);
      }
    }
    Subgraph u(2);
    for (auto const& l : embedded_loops(h)) {
      u = unite(u, support(l));
    }
    REQUIRE(is_face_subgraph(h) == (u == h));
  }
}

TEST_CASE("face dimensions") {
  CHECK(face_dimension(Subgraph::full(2)) == 4);
  CHECK(face_dimension(Subgraph::full(3)) == 18);
  CHECK(face_dimension(S(2, {"123"})) == 0);
  CHECK(face_dimension(S(2, {"123", "321"})) == 1);
  CHECK_THROWS_AS(face_dimension(S(2, {"132"})), Error);
}

TEST_CASE("DOT export") {
  auto dot = export_dot(PermDigraph::build(2));
  CHECK(dot.find("\"12\" -> \"21\" [label=\"132\"]") != std::string::npos);
  std::size_t arcs = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) {
    ++arcs;
  }
  CHECK(arcs == 6);
  CHECK(export_dot(Subgraph(2)) == "digraph G2 {\n}\n");
}
