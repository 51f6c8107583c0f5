#include <algorithm>
#include <numeric>

#include "orderflow/error.hpp"
#include "orderflow/kernels.hpp"

namespace orderflow::kernels {

  namespace {
    constexpr std::uint64_t kChunk = 2048;

    void scan_chunk(int                                     m,
                    std::uint64_t                           begin,
                    std::uint64_t                           end,
                    std::function<bool(Perm const&)> const& pred,
                    std::vector<std::uint64_t>&             out) {
      Perm             first = Perm::from_index(m, begin);
      std::vector<int> w(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        w[static_cast<std::size_t>(i)] = first[i];
      }
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        if (pred(pattern_of_ranks(w))) {
          out.push_back(idx);
        }
        std::next_permutation(w.begin(), w.end());
      }
    }
  }  // namespace

  std::vector<std::uint64_t> scan_permutations(int                                     m,
                                               std::function<bool(Perm const&)> const& pred,
                                               Execution                               exec) {
    std::uint64_t total = factorial(m);
    (void) Perm::identity(m);  // cap check
    std::vector<std::uint64_t> result;
    if (exec == Execution::serial) {
      scan_chunk(m, 0, total, pred, result);
      return result;
    }
    auto const                              chunks = static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
    std::vector<std::vector<std::uint64_t>> found(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t c = 0; c < chunks; ++c) {
      std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
      std::uint64_t end   = std::min(total, begin + kChunk);
      scan_chunk(m, begin, end, pred, found[static_cast<std::size_t>(c)]);
    }
    for (auto& f : found) {
      result.insert(result.end(), f.begin(), f.end());
    }
    return result;
  }

  std::vector<Perm> scan_lifts(DiPath const& p, Execution exec) {
    int m = p.element_count();
    if (m > caps().lift_enumeration) {
      throw Error(ErrorKind::cap_exceeded,
                  "lift enumeration over S_" + std::to_string(m) + " exceeds the cap of "
                      + std::to_string(caps().lift_enumeration));
    }
    auto idx = scan_permutations(
        m, [&p](Perm const& sigma) { return is_lift(sigma, p); }, exec);
    std::vector<Perm> out;
    out.reserve(idx.size());
    for (auto i : idx) {
      out.push_back(Perm::from_index(m, i));
    }
    return out;
  }

}  // namespace orderflow::kernels
