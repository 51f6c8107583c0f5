#ifndef ORDERFLOW_DIGRAPH_HPP_
#define ORDERFLOW_DIGRAPH_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "orderflow/path.hpp"
#include "orderflow/perm.hpp"

namespace orderflow {

  class Subgraph;

  // G_n: vertices S_n, edges S_{n+1}, head = ρ, tail = ρ'.  Nothing is stored;
  // all structure is derived from restrict.
  class PermDigraph {
   public:
    // Throws CapExceeded when S_{n+1} exceeds the permutation cap.
    static PermDigraph build(int n);

    int n() const noexcept {
      return n_;
    }
    std::uint64_t vertex_count() const {
      return factorial(n_);
    }
    std::uint64_t edge_count() const {
      return factorial(n_ + 1);
    }

    static Perm head(Perm const& e) {
      return restrict(e, Side::head);
    }
    static Perm tail(Perm const& e) {
      return restrict(e, Side::tail);
    }

    std::vector<Perm> vertices() const;
    std::vector<Perm> edges() const;
    // The n + 1 edges leaving (entering) v.
    std::vector<Perm> out_edges(Perm const& v) const;
    std::vector<Perm> in_edges(Perm const& v) const;

    Subgraph as_subgraph() const;

   private:
    explicit PermDigraph(int n) : n_(n) {}
    int n_;
  };

  // A set of edges of G_n.  The vertex set is whatever the edges touch.
  class Subgraph {
   public:
    explicit Subgraph(int n) : n_(n) {}
    Subgraph(int n, std::vector<Perm> const& edges);
    static Subgraph full(int n) {
      return PermDigraph::build(n).as_subgraph();
    }

    int n() const noexcept {
      return n_;
    }
    std::set<Perm> const& edges() const noexcept {
      return edges_;
    }
    std::size_t edge_count() const noexcept {
      return edges_.size();
    }
    bool empty() const noexcept {
      return edges_.empty();
    }
    bool contains(Perm const& e) const {
      return edges_.count(e) != 0;
    }
    void insert(Perm const& e);
    std::vector<Perm> vertices() const;

    bool includes(Subgraph const& other) const;
    friend Subgraph unite(Subgraph const& a, Subgraph const& b);
    friend bool     operator==(Subgraph const&, Subgraph const&) = default;

    std::string to_string() const;

   private:
    int            n_;
    std::set<Perm> edges_;
  };

  Subgraph support(DiPath const& p);

  struct Component {
    std::vector<Perm> vertices;
    // Edges with both ends in the component.
    Subgraph edges;
  };

  // Tarjan; components are listed in order of their least vertex.
  std::vector<Component> strongly_connected_components(Subgraph const& h);
  // Undirected components, as edge sets (isolated vertices cannot occur).
  std::vector<Subgraph> weak_components(Subgraph const& h);

  bool is_face_subgraph(Subgraph const& h);
  bool is_strongly_connected(Subgraph const& h);

  // All embedded loops, each as its lexicographically least rotation, sorted.
  std::vector<DiPath> embedded_loops(Subgraph const& h);
  DiPath              canonical_rotation(DiPath const& loop);

  // |E| - |V| + #components - 1; throws NotFaceSubgraph.
  int face_dimension(Subgraph const& h);

  std::string export_dot(Subgraph const& h);
  std::string export_dot(PermDigraph const& g);

}  // namespace orderflow

#endif  // ORDERFLOW_DIGRAPH_HPP_
