#ifndef ORDERFLOW_KERNELS_HPP_
#define ORDERFLOW_KERNELS_HPP_

// Hot loops with a serial reference and an OpenMP version each.  The two
// must return identical results; tests and the benchmark compare them.

#include <cstdint>
#include <functional>
#include <vector>

#include <map>

#include "orderflow/digraph.hpp"
#include "orderflow/drift.hpp"
#include "orderflow/intervalmap.hpp"
#include "orderflow/path.hpp"
#include "orderflow/pathposet.hpp"
#include "orderflow/perm.hpp"

namespace orderflow::kernels {

  // Indices (lexicographic ranks) of the sigma in S_m accepted by pred,
  // in increasing order.
  std::vector<std::uint64_t> scan_permutations(int                                    m,
                                               std::function<bool(Perm const&)> const& pred,
                                               Execution                               exec);

  std::vector<Perm> scan_lifts(DiPath const& p, Execution exec);

  // Breadth-first closure of path profiles from one base vertex of a
  // strongly connected subgraph.  State k records the profile of some path
  // base -> vertex; parent pointers recover a shortest such path.
  struct SaturationState {
    int          vertex;
    DriftProfile profile;
    int          parent;
    Perm         edge;
  };

  struct Saturation {
    Perm                         base;
    std::vector<Perm>            vertices;
    std::vector<SaturationState> states;
    // States whose vertex is the base, in discovery (shortest first) order.
    std::vector<int> loops;

    DiPath path_to(int state) const;
  };

  // One saturation per vertex of the component, in increasing vertex order.
  // Throws SaturationCapExceeded when a vertex pair exceeds
  // caps().saturation_profiles distinct profiles.
  std::vector<Saturation> saturate(Subgraph const& component, Execution exec);

  struct FaceTally {
    int         dimension;
    std::size_t total;
    std::size_t realizable;
  };

  // Every edge subset of G_{n-1} is tested; face subgraphs are tallied by
  // dimension (index = dimension).
  std::vector<FaceTally> census_subsets(int n, Execution exec);

  // Uniform point of [0, 1) determined by (seed, i) alone, so that any
  // partition of the sample range draws the same points.
  double sample_point(std::uint64_t seed, std::uint64_t i) noexcept;

  struct PatternCounts {
    // Keyed by the lexicographic index of the pattern in S_n.
    std::map<std::uint64_t, std::uint64_t> counts;
    // Orbits with two equal points (ties or exact repeats).
    std::uint64_t discarded = 0;
  };

  PatternCounts sample_patterns(IntervalMap const& f, int n, std::uint64_t samples,
                                std::uint64_t seed, Execution exec);

}  // namespace orderflow::kernels

#endif  // ORDERFLOW_KERNELS_HPP_
