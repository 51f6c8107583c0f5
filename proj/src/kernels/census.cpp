#include <exception>

#include "orderflow/error.hpp"
#include "orderflow/flows.hpp"
#include "orderflow/kernels.hpp"

namespace orderflow::kernels {

  namespace {
    struct Tally {
      std::vector<std::size_t> total, realizable;
      explicit Tally(std::size_t dims) : total(dims, 0), realizable(dims, 0) {}
    };

    void tally_mask(std::vector<Perm> const& edges, int g, std::uint64_t mask, Tally& t) {
      Subgraph h(g);
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (mask & (std::uint64_t(1) << i)) {
          h.insert(edges[i]);
        }
      }
      if (!is_face_subgraph(h)) {
        return;
      }
      auto d = static_cast<std::size_t>(face_dimension(h));
      ++t.total[d];
      if (face_realizable(h, Execution::serial)) {
        ++t.realizable[d];
      }
    }
  }  // namespace

  std::vector<FaceTally> census_subsets(int n, Execution exec) {
    auto g     = PermDigraph::build(n - 1);
    auto edges = g.edges();
    if (edges.size() > 24) {
      throw Error(ErrorKind::cap_exceeded, "exhaustive census over more than 2^24 edge subsets");
    }
    std::uint64_t const masks = std::uint64_t(1) << edges.size();
    std::size_t const   dims  = edges.size() + 1;
    Tally               all(dims);
    if (exec == Execution::serial) {
      for (std::uint64_t mask = 1; mask < masks; ++mask) {
        tally_mask(edges, n - 1, mask, all);
      }
    } else {
      std::exception_ptr failure;
#pragma omp parallel
      {
        Tally local(dims);
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t mask = 1; mask < static_cast<std::int64_t>(masks); ++mask) {
          try {
            tally_mask(edges, n - 1, static_cast<std::uint64_t>(mask), local);
          } catch (...) {
#pragma omp critical(orderflow_census_failure)
            if (!failure) {
              failure = std::current_exception();
            }
          }
        }
#pragma omp critical(orderflow_census_merge)
        for (std::size_t d = 0; d < dims; ++d) {
          all.total[d] += local.total[d];
          all.realizable[d] += local.realizable[d];
        }
      }
      if (failure) {
        std::rethrow_exception(failure);
      }
    }
    std::vector<FaceTally> out;
    for (std::size_t d = 0; d < dims; ++d) {
      if (all.total[d] != 0) {
        out.push_back({static_cast<int>(d), all.total[d], all.realizable[d]});
      }
    }
    return out;
  }

}  // namespace orderflow::kernels
