#include "orderflow/pathposet.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "orderflow/caps.hpp"
#include "orderflow/error.hpp"
#include "orderflow/kernels.hpp"

namespace orderflow {

  char const* to_string(Comparability c) {
    switch (c) {
      case Comparability::equal:
        return "equal";
      case Comparability::less:
        return "<=";
      case Comparability::greater:
        return ">=";
      case Comparability::incomparable:
        return "incomparable";
    }
    return "?";
  }

  PathPoset::PathPoset(int m)
      : m_(m),
        words_((static_cast<std::size_t>(m) + 63) / 64),
        rows_(static_cast<std::size_t>(m), std::vector<std::uint64_t>(words_, 0)) {
    for (int i = 0; i < m; ++i) {
      set(i, i);
    }
  }

  void PathPoset::close() {
    // Warshall on bit rows.
    for (int k = 0; k < m_; ++k) {
      auto const& rk = rows_[static_cast<std::size_t>(k)];
      for (int i = 0; i < m_; ++i) {
        if (i != k && leq(i, k)) {
          auto& ri = rows_[static_cast<std::size_t>(i)];
          for (std::size_t w = 0; w < words_; ++w) {
            ri[w] |= rk[w];
          }
        }
      }
    }
  }

  bool PathPoset::antisymmetric() const noexcept {
    for (int i = 0; i < m_; ++i) {
      for (int j = i + 1; j < m_; ++j) {
        if (leq(i, j) && leq(j, i)) {
          return false;
        }
      }
    }
    return true;
  }

  PathPoset PathPoset::from_relations(int m, std::vector<std::pair<int, int>> const& leq) {
    if (m < 0) {
      throw Error(ErrorKind::invalid_argument, "negative poset size");
    }
    PathPoset p(m);
    for (auto [a, b] : leq) {
      if (a < 0 || b < 0 || a >= m || b >= m) {
        throw Error(ErrorKind::invalid_argument, "relation index out of range");
      }
      p.set(a, b);
    }
    p.close();
    if (!p.antisymmetric()) {
      throw Error(ErrorKind::invalid_argument, "relations contain a cycle");
    }
    return p;
  }

  Comparability PathPoset::compare(int i, int j) const noexcept {
    if (i == j) {
      return Comparability::equal;
    }
    if (leq(i, j)) {
      return Comparability::less;
    }
    if (leq(j, i)) {
      return Comparability::greater;
    }
    return Comparability::incomparable;
  }

  std::vector<std::pair<int, int>> PathPoset::covering_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < m_; ++j) {
        if (i == j || !leq(i, j)) {
          continue;
        }
        bool cover = true;
        for (int k = 0; k < m_ && cover; ++k) {
          if (k != i && k != j && leq(i, k) && leq(k, j)) {
            cover = false;
          }
        }
        if (cover) {
          out.emplace_back(i, j);
        }
      }
    }
    return out;
  }

  bool PathPoset::is_chain_on(int first, int count) const {
    for (int a = first; a < first + count; ++a) {
      for (int b = a + 1; b < first + count; ++b) {
        if (compare(a, b) == Comparability::incomparable) {
          return false;
        }
      }
    }
    return true;
  }

  PathPoset build_poset(DiPath const& p) {
    PathPoset q(p.element_count());
    auto      add_window = [&](Perm const& w, int base) {
      int len = w.size();
      for (int c = 0; c < len; ++c) {
        for (int d = 0; d < len; ++d) {
          if (w[c] < w[d]) {
            q.set(base + c, base + d);
          }
        }
      }
    };
    if (p.empty()) {
      add_window(p.start(), 0);
    } else {
      for (std::size_t b = 0; b < p.length(); ++b) {
        add_window(p.edge(b), static_cast<int>(b));
      }
    }
    q.close();
    if (!q.antisymmetric()) {
      throw Error(ErrorKind::invalid_argument, "path poset is not antisymmetric");
    }
    return q;
  }

  Comparability common_comparability(DiPath const& p, int i, int j) {
    int m = p.element_count();
    if (i < 0 || j < 0 || i >= m || j >= m) {
      throw Error(ErrorKind::invalid_argument, "element index out of range");
    }
    return build_poset(p).compare(i, j);
  }

  Comparability common_comparability_oracle(DiPath const& p, int i, int j) {
    int m = p.element_count();
    if (i < 0 || j < 0 || i >= m || j >= m) {
      throw Error(ErrorKind::invalid_argument, "element index out of range");
    }
    if (i == j) {
      return Comparability::equal;
    }
    bool always_less = true, always_greater = true;
    for (auto const& sigma : lifts(p)) {
      if (sigma[i] < sigma[j]) {
        always_greater = false;
      } else {
        always_less = false;
      }
    }
    if (always_less) {
      return Comparability::less;
    }
    if (always_greater) {
      return Comparability::greater;
    }
    return Comparability::incomparable;
  }

  namespace {
    std::vector<std::uint64_t> strict_predecessors(PathPoset const& poset) {
      int                        m = poset.size();
      std::vector<std::uint64_t> pred(static_cast<std::size_t>(m), 0);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          if (i != j && poset.leq(j, i)) {
            pred[static_cast<std::size_t>(i)] |= std::uint64_t(1) << j;
          }
        }
      }
      return pred;
    }
  }  // namespace

  BigInt count_linear_extensions(PathPoset const& poset) {
    int m = poset.size();
    if (m > caps().extension_count || m > 63) {
      throw Error(ErrorKind::cap_exceeded,
                  "extension counting on " + std::to_string(m) + " elements exceeds the cap of "
                      + std::to_string(caps().extension_count));
    }
    auto const    pred = strict_predecessors(poset);
    std::uint64_t full = m == 0 ? 0 : (~std::uint64_t(0) >> (64 - m));
    // Number of ways to finish from each downset; filled by increasing
    // popcount from the top down (memoised recursion).
    std::unordered_map<std::uint64_t, BigInt> memo;
    std::function<BigInt(std::uint64_t)>      count = [&](std::uint64_t down) -> BigInt {
      if (down == full) {
        return 1;
      }
      auto it = memo.find(down);
      if (it != memo.end()) {
        return it->second;
      }
      BigInt total = 0;
      for (int x = 0; x < m; ++x) {
        std::uint64_t bit = std::uint64_t(1) << x;
        if (!(down & bit) && (pred[static_cast<std::size_t>(x)] & ~down) == 0) {
          total += count(down | bit);
        }
      }
      memo.emplace(down, total);
      return total;
    };
    return count(0);
  }

  std::vector<Perm> linear_extensions(PathPoset const& poset) {
    int m = poset.size();
    if (m > caps().lift_enumeration) {
      throw Error(ErrorKind::cap_exceeded,
                  "enumerating extensions of " + std::to_string(m) + " elements exceeds the cap of "
                      + std::to_string(caps().lift_enumeration));
    }
    auto const          pred = strict_predecessors(poset);
    std::vector<int>    rank(static_cast<std::size_t>(m), 0);
    std::vector<Perm>   out;
    std::function<void(std::uint64_t, int)> place = [&](std::uint64_t down, int next) {
      if (next > m) {
        out.push_back(Perm::from_word(rank));
        return;
      }
      for (int x = 0; x < m; ++x) {
        std::uint64_t bit = std::uint64_t(1) << x;
        if (!(down & bit) && (pred[static_cast<std::size_t>(x)] & ~down) == 0) {
          rank[static_cast<std::size_t>(x)] = next;
          place(down | bit, next + 1);
        }
      }
    };
    place(0, 1);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_lift(Perm const& sigma, DiPath const& p) {
    if (sigma.size() != p.element_count()) {
      return false;
    }
    if (p.empty()) {
      return sigma == p.start();
    }
    int w = p.n() + 1;
    for (std::size_t b = 0; b < p.length(); ++b) {
      if (sigma.window(static_cast<int>(b), w) != p.edge(b)) {
        return false;
      }
    }
    return true;
  }

  std::vector<Perm> lifts(DiPath const& p, Execution exec) {
    return kernels::scan_lifts(p, exec);
  }

}  // namespace orderflow
