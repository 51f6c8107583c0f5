#ifndef ORDERFLOW_PATH_HPP_
#define ORDERFLOW_PATH_HPP_

#include <string>
#include <vector>

#include "orderflow/perm.hpp"

namespace orderflow {

  // A path in G_n: the edge sequence e_1..e_l (each in S_{n+1}) together with
  // its start vertex, so that the empty path still knows where it sits.
  class DiPath {
   public:
    // Checks restrict(e_i, tail) == restrict(e_{i+1}, head); throws
    // EndpointMismatch naming the offending pair otherwise.
    explicit DiPath(std::vector<Perm> edges);
    static DiPath at_vertex(Perm const& v);

    int n() const noexcept {
      return n_;
    }
    std::size_t length() const noexcept {
      return edges_.size();
    }
    bool empty() const noexcept {
      return edges_.empty();
    }
    std::vector<Perm> const& edges() const noexcept {
      return edges_;
    }
    Perm const& edge(std::size_t i) const {
      return edges_.at(i);
    }
    Perm const& start() const noexcept {
      return start_;
    }
    Perm const& finish() const noexcept {
      return finish_;
    }
    bool is_loop() const noexcept {
      return !edges_.empty() && start_ == finish_;
    }
    // v_0 .. v_l
    std::vector<Perm> vertices() const;
    // Number of poset elements l + n.
    int element_count() const noexcept {
      return static_cast<int>(edges_.size()) + n_;
    }
    // The k-th power of a loop.
    DiPath power(std::size_t k) const;
    // Rotation of a loop so that it starts with edge i.
    DiPath rotated(std::size_t i) const;
    std::string to_string() const;

    friend bool operator==(DiPath const&, DiPath const&) = default;

   private:
    DiPath() = default;

    int               n_ = 1;
    Perm              start_;
    Perm              finish_;
    std::vector<Perm> edges_;
  };

  DiPath concat(DiPath const& p, DiPath const& q);

  // Projection of a path on G_m to G_n (n <= m).  A length-l path becomes a
  // length l + m - n path; a permutation of length m + 1 is a single edge.
  DiPath project(DiPath const& p, int n);
  DiPath project(Perm const& sigma, int n);

  // Throws NotALoop unless p is a loop.
  void require_loop(DiPath const& p);

}  // namespace orderflow

#endif  // ORDERFLOW_PATH_HPP_
