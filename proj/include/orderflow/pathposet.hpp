#ifndef ORDERFLOW_PATHPOSET_HPP_
#define ORDERFLOW_PATHPOSET_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "orderflow/execution.hpp"
#include "orderflow/path.hpp"
#include "orderflow/perm.hpp"
#include "orderflow/rational.hpp"

namespace orderflow {

  enum class Comparability { equal, less, greater, incomparable };

  char const* to_string(Comparability c);

  // A finite poset on elements 0..m-1 stored as a reflexive, transitively
  // closed reachability matrix (one bit row per element).
  class PathPoset {
   public:
    // Closure of the given relations a <= b.  Throws InvalidArgument if the
    // closure is not antisymmetric.
    static PathPoset from_relations(int m, std::vector<std::pair<int, int>> const& leq);

    int size() const noexcept {
      return m_;
    }
    bool leq(int i, int j) const noexcept {
      auto const& row = rows_[static_cast<std::size_t>(i)];
      return (row[static_cast<std::size_t>(j) >> 6] >> (j & 63)) & 1u;
    }
    Comparability compare(int i, int j) const noexcept;

    // Hasse diagram, as (lower, upper) pairs sorted lexicographically.
    std::vector<std::pair<int, int>> covering_pairs() const;
    bool                             is_chain_on(int first, int count) const;

    friend bool operator==(PathPoset const&, PathPoset const&) = default;

   private:
    PathPoset(int m);
    void set(int i, int j) noexcept {
      rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) >> 6] |= std::uint64_t(1)
                                                                             << (j & 63);
    }
    void close();
    bool antisymmetric() const noexcept;

    int                                     m_;
    std::size_t                             words_;
    std::vector<std::vector<std::uint64_t>> rows_;

    friend PathPoset build_poset(DiPath const& p);
  };

  // Q_p on the l + n elements x_0..x_{l+n-1} (0-based).
  PathPoset build_poset(DiPath const& p);

  // Decided through Q_p.
  Comparability common_comparability(DiPath const& p, int i, int j);
  // The same decision by intersecting the orders of all lifts (brute force).
  Comparability common_comparability_oracle(DiPath const& p, int i, int j);

  // Exact count by dynamic programming over downsets; m <= caps().extension_count.
  BigInt count_linear_extensions(PathPoset const& poset);
  // Each extension as the Perm assigning ranks to elements, sorted;
  // m <= caps().lift_enumeration.
  std::vector<Perm> linear_extensions(PathPoset const& poset);

  // All sigma in S_{l+n} whose projection to G_n is p, by scanning S_{l+n}.
  std::vector<Perm> lifts(DiPath const& p, Execution exec = Execution::parallel);
  // True iff project(sigma, p.n()) == p, without building the projection.
  bool is_lift(Perm const& sigma, DiPath const& p);

}  // namespace orderflow

#endif  // ORDERFLOW_PATHPOSET_HPP_
