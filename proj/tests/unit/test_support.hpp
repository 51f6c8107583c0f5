#ifndef ORDERFLOW_TESTS_UNIT_TEST_SUPPORT_HPP_
#define ORDERFLOW_TESTS_UNIT_TEST_SUPPORT_HPP_

#include <functional>
#include <initializer_list>
#include <random>
#include <vector>

#include "orderflow/digraph.hpp"
#include "orderflow/path.hpp"
#include "orderflow/perm.hpp"

namespace testing_support {

  inline orderflow::Perm P(char const* s) {
    return orderflow::Perm::parse(s);
  }

  inline orderflow::DiPath path(std::initializer_list<char const*> e) {
    std::vector<orderflow::Perm> v;
    for (auto s : e) {
      v.push_back(P(s));
    }
    return orderflow::DiPath(v);
  }

  inline orderflow::Subgraph sub(int n, std::initializer_list<char const*> e) {
    orderflow::Subgraph h(n);
    for (auto s : e) {
      h.insert(P(s));
    }
    return h;
  }

  // The partially driftless loop in G_3 used throughout the tests.
  inline orderflow::DiPath partial_loop() {
    return path({"2134", "1342", "2314", "3241", "2314"});
  }

  inline orderflow::DiPath g4_loop() {
    return path({"23451", "34512", "45132", "41325", "13254", "31542", "15423", "54123", "51234"});
  }

  // Every path of the given length in G_n.
  inline void for_each_path(int n, std::size_t length,
                            std::function<void(orderflow::DiPath const&)> const& fn) {
    auto g = orderflow::PermDigraph::build(n);
    if (length == 0) {
      for (auto const& v : g.vertices()) {
        fn(orderflow::DiPath::at_vertex(v));
      }
      return;
    }
    std::vector<orderflow::Perm> edges;
    std::function<void(orderflow::Perm const&)> extend = [&](orderflow::Perm const& v) {
      if (edges.size() == length) {
        fn(orderflow::DiPath(edges));
        return;
      }
      for (auto const& e : g.out_edges(v)) {
        edges.push_back(e);
        extend(orderflow::PermDigraph::tail(e));
        edges.pop_back();
      }
    };
    for (auto const& v : g.vertices()) {
      extend(v);
    }
  }

  // A uniformly random walk of the given length in the subgraph h (which must
  // have an out-edge at every vertex it visits) or in G_n when h is empty.
  inline orderflow::DiPath random_walk(int n, std::size_t length, std::mt19937_64& rng,
                                       orderflow::Perm const* start = nullptr) {
    auto                         g = orderflow::PermDigraph::build(n);
    auto                         vs = g.vertices();
    orderflow::Perm              v  = start ? *start : vs[rng() % vs.size()];
    std::vector<orderflow::Perm> edges;
    for (std::size_t i = 0; i < length; ++i) {
      auto out = g.out_edges(v);
      auto e   = out[rng() % out.size()];
      edges.push_back(e);
      v = orderflow::PermDigraph::tail(e);
    }
    if (edges.empty()) {
      return orderflow::DiPath::at_vertex(v);
    }
    return orderflow::DiPath(edges);
  }

}  // namespace testing_support

#endif  // ORDERFLOW_TESTS_UNIT_TEST_SUPPORT_HPP_
