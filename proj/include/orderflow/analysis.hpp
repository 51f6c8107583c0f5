#ifndef ORDERFLOW_ANALYSIS_HPP_
#define ORDERFLOW_ANALYSIS_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "orderflow/digraph.hpp"
#include "orderflow/execution.hpp"
#include "orderflow/intervalmap.hpp"
#include "orderflow/patterns.hpp"

namespace orderflow {

  struct PatternReport {
    int n = 1;
    // Present in exact mode.
    std::optional<ExactDistribution> exact;
    FloatDistribution                distribution;
    std::set<Perm>                   realized;
    // Zero in exact mode.
    std::uint64_t samples   = 0;
    std::uint64_t discarded = 0;

    bool is_exact() const noexcept {
      return exact.has_value();
    }
  };

  // Subdivides [0, 1) at pullbacks of the affine pieces and at crossings
  // f^j(x) = f^k(x).  Throws NotPiecewiseAffine, CapExceeded,
  // DegenerateOrbit (two iterates agree on an interval) and IrrationalTail
  // (some mass is not rational).
  PatternReport exact_distribution(IntervalMap const& f, int n);

  // Histogram of the orbit patterns of `samples` pseudo-random points;
  // deterministic in seed, identical for both execution modes.
  PatternReport empirical_distribution(IntervalMap const& f, int n, std::uint64_t samples,
                                       std::uint64_t seed,
                                       Execution     exec = Execution::parallel);

  // How a statistic of f is obtained: exactly, or empirically with the
  // given sample count and seed.
  struct Mode {
    bool          exact   = true;
    std::uint64_t samples = 0;
    std::uint64_t seed    = 0;
    Execution     exec    = Execution::parallel;

    static Mode exact_mode() {
      return {};
    }
    static Mode empirical(std::uint64_t samples, std::uint64_t seed,
                          Execution exec = Execution::parallel) {
      return {false, samples, seed, exec};
    }
  };

  PatternReport distribution_of(IntervalMap const& f, int n, Mode const& mode);

  // H_n(f): the subgraph of G_n whose edges are the realized (n+1)-patterns.
  Subgraph pattern_graph(IntervalMap const& f, int n, Mode const& mode = Mode::exact_mode());

  // A loop in h with some zero diagonal drift entry, if any.
  std::optional<DiPath> partially_driftless_in(Subgraph const& h,
                                               Execution exec = Execution::parallel);

  struct EntropyRow {
    int           n;
    std::uint64_t count;
    double        estimate;  // log(count) / (n - 1)
  };
  // Rows for n = 2..n_max (n_max <= 10).
  std::vector<EntropyRow> entropy_estimate(IntervalMap const& f, int n_max,
                                           Mode const& mode = Mode::exact_mode());

  struct ForbiddenReport {
    int            n;
    std::set<Perm> forbidden;
    // Forbidden patterns none of whose shorter consecutive windows is forbidden.
    std::set<Perm> basic;
  };
  ForbiddenReport forbidden_patterns(IntervalMap const& f, int n,
                                     Mode const& mode = Mode::exact_mode());

  struct ExclusionVerdict {
    int            m;
    bool           equal;
    // In the lift preimage of paths of H but never realized.
    std::set<Perm> missing;
    // Realized but not a lift of any path of H.
    std::set<Perm> extra;
  };
  // H = pattern_graph(f, n) exactly; compares sigma_m(f) with the patterns
  // all of whose (n+1)-windows are edges of H, for n < m <= m_max <= 8.
  std::vector<ExclusionVerdict> exclusion_type_test(IntervalMap const& f, int n, int m_max,
                                                    Execution exec = Execution::parallel);

  struct GrowthRow {
    int    k;
    int    m;  // elements of the poset of loop^k
    BigInt lifts;
    BigInt k_factorial;
    bool   holds;
  };
  // Lift counts of loop^k against k!.  The loop must have a zero diagonal
  // drift entry (at index j if given).  Brute force up to m = 9, downset
  // counting beyond.
  std::vector<GrowthRow> growth_check(DiPath const& loop, int k_max,
                                      std::optional<int> j    = std::nullopt,
                                      Execution          exec = Execution::parallel);

  struct Balayage {
    std::uint64_t samples;
    std::uint64_t above;  // f(x) > x
    std::uint64_t below;  // f(x) < x
  };
  Balayage balayage(IntervalMap const& f, std::uint64_t samples, std::uint64_t seed);

}  // namespace orderflow

#endif  // ORDERFLOW_ANALYSIS_HPP_
