#ifndef ORDERFLOW_FLOWS_HPP_
#define ORDERFLOW_FLOWS_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "orderflow/digraph.hpp"
#include "orderflow/execution.hpp"
#include "orderflow/path.hpp"
#include "orderflow/patterns.hpp"

namespace orderflow {

  // max over vertices v of G_{n-1} of |inflow(v) - outflow(v)|.
  template <class Scalar>
  Scalar flow_residual(Distribution<Scalar> const& mu) {
    if (mu.n() < 2) {
      throw Error(ErrorKind::length_too_small, "flows live on G_{n-1} with n >= 2");
    }
    std::map<Perm, Scalar> balance;
    for (auto const& [e, w] : mu.masses()) {
      balance[restrict(e, Side::head)] -= w;
      balance[restrict(e, Side::tail)] += w;
    }
    Scalar worst(0);
    for (auto& [v, b] : balance) {
      Scalar a = b < 0 ? Scalar(-b) : b;
      if (a > worst) {
        worst = a;
      }
    }
    return worst;
  }

  // A point of P_n: an exact distribution on S_n with zero residual.
  class Flow {
   public:
    // Throws NotAFlow if the residual is nonzero.
    explicit Flow(ExactDistribution mu);
    static Flow counting_measure(DiPath const& loop);

    int n() const noexcept {
      return mu_.n();
    }
    ExactDistribution const& distribution() const noexcept {
      return mu_;
    }
    Rational weight(Perm const& e) const {
      return mu_.mass(e);
    }

    friend bool operator==(Flow const&, Flow const&) = default;

   private:
    ExactDistribution mu_;
  };

  struct SnappedFlow {
    Flow   flow;
    double max_adjustment;
  };

  inline constexpr double kDefaultSnapTolerance = 1e-9;

  // Rounds each weight to the simplest rational within tol; throws NotAFlow
  // if the result is not an exact flow.
  SnappedFlow snap_flow(FloatDistribution const& mu, double tol = kDefaultSnapTolerance);

  Subgraph support_face(Flow const& mu);
  // Throws NotFaceSubgraph.
  bool face_realizable(Subgraph const& h, Execution exec = Execution::parallel);

  struct CensusRow {
    int         dimension;
    std::size_t total;
    std::size_t realizable;
  };

  // Face subgraphs of G_{n-1} grouped by dimension, highest first.  n = 3
  // is exhaustive over edge subsets; n = 4 needs max_dimension.
  std::vector<CensusRow> census(int                n,
                                std::optional<int> max_dimension = std::nullopt,
                                Execution          exec          = Execution::parallel);
  void write_census_csv(std::ostream& out, std::vector<CensusRow> const& rows);

  // Weighted embedded loops re-summing exactly to mu.
  std::vector<std::pair<DiPath, Rational>> cycle_decompose(Flow const& mu);
  Flow resum(std::vector<std::pair<DiPath, Rational>> const& parts);

  // Normalised sum over the edges e of H of the counting measure of a
  // shortest loop through e; its support is exactly H.
  Flow interior_flow(Subgraph const& h);

  // n! - rank of the conservation rows together with the all-ones row.
  int polytope_dimension(int n);

}  // namespace orderflow

#endif  // ORDERFLOW_FLOWS_HPP_
