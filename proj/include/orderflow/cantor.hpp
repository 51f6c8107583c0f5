#ifndef ORDERFLOW_CANTOR_HPP_
#define ORDERFLOW_CANTOR_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orderflow/intervalmap.hpp"
#include "orderflow/patterns.hpp"

namespace orderflow {

  // Endpoints of an interval; whether they belong to it is fixed by the
  // owning structure.
  struct Span {
    Rational lo, hi;
    Rational length() const {
      return hi - lo;
    }
    friend bool operator==(Span const&, Span const&) = default;
  };

  // I_sigma = (lo, hi] inside (1/4, 3/4], |I_sigma| = mu_n(sigma) / 2, the
  // children of I_tau laid out left to right in lexicographic order.
  // Patterns of mass zero have no interval.
  class IntervalTree {
   public:
    // targets[k] has length k + 1 (a missing length-1 entry is implied).
    // Throws IncompatibleSequence.
    static IntervalTree build(std::vector<ExactDistribution> const& targets);

    int depth() const noexcept {
      return depth_;
    }
    std::map<Perm, Span> const& intervals() const noexcept {
      return intervals_;
    }
    std::vector<ExactDistribution> const& targets() const noexcept {
      return targets_;
    }
    // Violations of disjointness, nesting, measure and covering (empty when
    // all hold).
    std::vector<std::string> check_invariants() const;

   private:
    int                            depth_ = 1;
    std::map<Perm, Span>           intervals_;
    std::vector<ExactDistribution> targets_;
  };

  // Disjoint open intervals J_sigma inside [1/8, 7/8] (J_(1) = [1/4, 3/4])
  // such that picking one point from each interval along a chain
  // sigma_1, ..., sigma_n reproduces sigma_n.  J_sigma is the open middle
  // third of the largest free gap inside the gap its chain prescribes.
  class SeparatorTree {
   public:
    // Throws CapExceeded beyond caps().separator_depth.
    static SeparatorTree build(int depth);

    int depth() const noexcept {
      return depth_;
    }
    std::map<Perm, Span> const& intervals() const noexcept {
      return intervals_;
    }
    // Midpoint representatives along every chain, plus disjointness and gap
    // checks.
    std::vector<std::string> check_order_property() const;

   private:
    int                  depth_ = 1;
    std::map<Perm, Span> intervals_;
  };

  struct CantorMap {
    IntervalMap map;
    int         depth;        // N
    int         scale_depth;  // M
    // Common slope of the affine maps I_sigma -> B_sigma inside J_sigma.
    Rational slope;
    // Measure of the points outside every scaled copy, 2^-M.
    Rational uncovered;
    // Part of the scaled copies painted over by earlier steps.
    Rational collision;
    // Points with at most this coordinate, or above 1 - it, are uncovered.
    Rational uncovered_end;

    bool excluded(double x) const;
  };

  // Throws DepthMismatch (tree depths differ) and CapExceeded
  // (M > caps().cantor_scale_depth).
  CantorMap assemble_truncated_map(IntervalTree const& t, SeparatorTree const& s, int scale_depth);

  struct CantorVerification {
    struct Level {
      int    n;
      double deviation;
      double bound;
      bool   pass;
    };
    std::vector<Level> levels;
    std::uint64_t      samples;
    std::uint64_t      excluded;
    bool               pass;
  };

  inline constexpr double kCantorConfidence = 1e-3;

  // Empirical mu_n of the map against the targets for n <= N; level n passes
  // iff its deviation is at most 2^-M+1 + 4 sqrt(ln(2 n! N / delta) / samples).
  CantorVerification verify_construction(CantorMap const&                      m,
                                         std::vector<ExactDistribution> const& targets,
                                         std::uint64_t samples, std::uint64_t seed);

  // Targets 1..depth from uniform distributions.
  std::vector<ExactDistribution> uniform_targets(int depth);

}  // namespace orderflow

#endif  // ORDERFLOW_CANTOR_HPP_
