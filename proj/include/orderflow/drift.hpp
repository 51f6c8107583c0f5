#ifndef ORDERFLOW_DRIFT_HPP_
#define ORDERFLOW_DRIFT_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orderflow/digraph.hpp"
#include "orderflow/execution.hpp"
#include "orderflow/path.hpp"
#include "orderflow/perm.hpp"

namespace orderflow {

  // Extended indices: 0..n-1 are positions, the two sentinels are ±∞.
  inline constexpr int kPlusInfinity  = 127;
  inline constexpr int kMinusInfinity = -127;

  std::string ext_index_to_string(int value, bool one_based = true);

  // (Max, Min) of a path p.  Max(i) is the position j whose y_j is least in
  // the final vertex order among those with x_i <= y_j (kPlusInfinity if
  // there is none); Min(i) is the greatest y_j with y_j <= x_i.
  class DriftProfile {
   public:
    DriftProfile() = default;
    static DriftProfile identity(int n);
    static DriftProfile from_maps(std::vector<int> const& max, std::vector<int> const& min);

    int n() const noexcept {
      return n_;
    }
    int max(int i) const noexcept {
      return max_[static_cast<std::size_t>(i)];
    }
    int min(int i) const noexcept {
      return min_[static_cast<std::size_t>(i)];
    }
    bool totally_free() const noexcept;

    friend bool operator==(DriftProfile const&, DriftProfile const&) = default;
    std::size_t hash() const noexcept;
    std::string to_string() const;

   private:
    friend DriftProfile edge_profile(Perm const& e);
    friend DriftProfile compose(DriftProfile const& a, DriftProfile const& b);
    friend DriftProfile profile_from_poset(DiPath const& p);

    std::int8_t                               n_ = 0;
    std::array<std::int8_t, kMaxPermLength> max_{};
    std::array<std::int8_t, kMaxPermLength> min_{};
  };

  struct DriftProfileHash {
    std::size_t operator()(DriftProfile const& p) const noexcept {
      return p.hash();
    }
  };

  DriftProfile edge_profile(Perm const& e);
  // Profile of p followed by q: Max = Max_q ∘ Max_p, ±∞ fixed.
  DriftProfile compose(DriftProfile const& a, DriftProfile const& b);
  // Fold of edge profiles along p (the identity for an empty path).
  DriftProfile path_profile(DiPath const& p);
  // Direct reading of Max and Min off Q_p.
  DriftProfile profile_from_poset(DiPath const& p);

  // i -> Max(i) and i -> Min(i) are nondecreasing from the start vertex
  // order to the finish vertex order.
  bool is_order_preserving(DriftProfile const& prof, Perm const& start, Perm const& finish);

  enum class Sign : std::int8_t { minus = -1, zero = 0, plus = 1 };
  char to_char(Sign s);

  class DriftMatrix {
   public:
    explicit DriftMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n * n), Sign::zero) {}
    int n() const noexcept {
      return n_;
    }
    Sign operator()(int i, int j) const noexcept {
      return entries_[static_cast<std::size_t>(i * n_ + j)];
    }
    Sign& at(int i, int j) noexcept {
      return entries_[static_cast<std::size_t>(i * n_ + j)];
    }
    Sign diagonal(int i) const noexcept {
      return (*this)(i, i);
    }
    std::string diagonal_string() const;
    friend bool operator==(DriftMatrix const&, DriftMatrix const&) = default;

   private:
    int               n_;
    std::vector<Sign> entries_;
  };

  // Drift(i, j) of a loop from its profile and base vertex.
  DriftMatrix drift_matrix(DriftProfile const& prof, Perm const& base);
  Sign        diagonal_drift(DriftProfile const& prof, Perm const& base, int j);
  DriftMatrix loop_drift(DiPath const& loop);
  // The same matrix read directly from Q_loop.
  DriftMatrix loop_drift_poset(DiPath const& loop);

  enum class LoopClass { drifts, partially_driftless, driftless, totally_driftless };
  char const* to_string(LoopClass c);
  LoopClass   classify(DriftMatrix const& d);
  LoopClass   classify_loop(DiPath const& loop);

  struct DriftWitness {
    Perm vertex;
    int  index;  // 0-based position
    Sign sign;
  };

  struct SubgraphDriftReport {
    bool                        drifts = false;
    std::optional<DriftWitness> witness;
  };

  // Every component with edges is saturated; H drifts iff some component
  // drifts.  Throws SaturationCapExceeded.
  SubgraphDriftReport subgraph_drifts(Subgraph const& h, Execution exec = Execution::parallel);

  // A loop with support exactly h (strongly connected), classified totally
  // driftless.  Throws DriftObstruction when h drifts.
  DiPath synthesize_totally_driftless_loop(Subgraph const& h,
                                           Execution       exec = Execution::parallel);

  // A loop in h whose profile at its base satisfies pred, shortest first per
  // base vertex (bases in increasing order).  Nothing if none exists.
  std::optional<DiPath> find_loop(
      Subgraph const&                                                 h,
      std::function<bool(DriftProfile const&, Perm const& base)> const& pred,
      Execution                                                       exec = Execution::parallel);

}  // namespace orderflow

template <>
struct std::hash<orderflow::DriftProfile> {
  std::size_t operator()(orderflow::DriftProfile const& p) const noexcept {
    return p.hash();
  }
};

#endif  // ORDERFLOW_DRIFT_HPP_
