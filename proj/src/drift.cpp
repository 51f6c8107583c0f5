#include "orderflow/drift.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "orderflow/caps.hpp"
#include "orderflow/error.hpp"
#include "orderflow/kernels.hpp"
#include "orderflow/pathposet.hpp"

namespace orderflow {

  std::string ext_index_to_string(int value, bool one_based) {
    if (value == kPlusInfinity) {
      return "+inf";
    }
    if (value == kMinusInfinity) {
      return "-inf";
    }
    return std::to_string(one_based ? value + 1 : value);
  }

  DriftProfile DriftProfile::identity(int n) {
    DriftProfile p;
    p.n_ = static_cast<std::int8_t>(n);
    for (int i = 0; i < n; ++i) {
      p.max_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(i);
      p.min_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(i);
    }
    return p;
  }

  DriftProfile DriftProfile::from_maps(std::vector<int> const& max, std::vector<int> const& min) {
    if (max.size() != min.size() || max.empty() || max.size() > kMaxPermLength) {
      throw Error(ErrorKind::dimension_mismatch, "profile maps must have equal length");
    }
    DriftProfile p;
    p.n_ = static_cast<std::int8_t>(max.size());
    for (std::size_t i = 0; i < max.size(); ++i) {
      p.max_[i] = static_cast<std::int8_t>(max[i]);
      p.min_[i] = static_cast<std::int8_t>(min[i]);
    }
    return p;
  }

  bool DriftProfile::totally_free() const noexcept {
    for (int i = 0; i < n_; ++i) {
      if (max(i) != kPlusInfinity || min(i) != kMinusInfinity) {
        return false;
      }
    }
    return true;
  }

  std::size_t DriftProfile::hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(n_);
    for (int i = 0; i < n_; ++i) {
      h = (h ^ static_cast<std::uint8_t>(max_[static_cast<std::size_t>(i)])) * 1099511628211ULL;
      h = (h ^ static_cast<std::uint8_t>(min_[static_cast<std::size_t>(i)])) * 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

  std::string DriftProfile::to_string() const {
    std::string out = "Max=(";
    for (int i = 0; i < n_; ++i) {
      out += (i ? "," : "") + ext_index_to_string(max(i));
    }
    out += ") Min=(";
    for (int i = 0; i < n_; ++i) {
      out += (i ? "," : "") + ext_index_to_string(min(i));
    }
    return out + ")";
  }

  DriftProfile edge_profile(Perm const& e) {
    int          n = e.size() - 1;
    DriftProfile p;
    p.n_ = static_cast<std::int8_t>(n);
    for (int i = 0; i < n; ++i) {
      int best_max = kPlusInfinity, best_min = kMinusInfinity;
      for (int j = 0; j < n; ++j) {
        int y = e[j + 1];
        if (y >= e[i] && (best_max == kPlusInfinity || y < e[best_max + 1])) {
          best_max = j;
        }
        if (y <= e[i] && (best_min == kMinusInfinity || y > e[best_min + 1])) {
          best_min = j;
        }
      }
      p.max_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(best_max);
      p.min_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(best_min);
    }
    return p;
  }

  DriftProfile compose(DriftProfile const& a, DriftProfile const& b) {
    if (a.n_ != b.n_) {
      throw Error(ErrorKind::dimension_mismatch, "profiles of different lengths");
    }
    DriftProfile c;
    c.n_ = a.n_;
    for (int i = 0; i < a.n_; ++i) {
      int x = a.max(i);
      int y = a.min(i);
      c.max_[static_cast<std::size_t>(i)]
          = static_cast<std::int8_t>(x == kPlusInfinity ? kPlusInfinity : b.max(x));
      c.min_[static_cast<std::size_t>(i)]
          = static_cast<std::int8_t>(y == kMinusInfinity ? kMinusInfinity : b.min(y));
    }
    return c;
  }

  DriftProfile path_profile(DiPath const& p) {
    DriftProfile prof = DriftProfile::identity(p.n());
    for (auto const& e : p.edges()) {
      prof = compose(prof, edge_profile(e));
    }
    return prof;
  }

  DriftProfile profile_from_poset(DiPath const& p) {
    int          n = p.n();
    auto         l = static_cast<int>(p.length());
    auto         q = build_poset(p);
    Perm const&  v = p.finish();
    DriftProfile prof;
    prof.n_ = static_cast<std::int8_t>(n);
    for (int i = 0; i < n; ++i) {
      int best_max = kPlusInfinity, best_min = kMinusInfinity;
      for (int j = 0; j < n; ++j) {
        if (q.leq(i, l + j) && (best_max == kPlusInfinity || v[j] < v[best_max])) {
          best_max = j;
        }
        if (q.leq(l + j, i) && (best_min == kMinusInfinity || v[j] > v[best_min])) {
          best_min = j;
        }
      }
      prof.max_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(best_max);
      prof.min_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(best_min);
    }
    return prof;
  }

  bool is_order_preserving(DriftProfile const& prof, Perm const& start, Perm const& finish) {
    auto key = [&finish](int j) {
      if (j == kPlusInfinity) {
        return finish.size() + 1;
      }
      return j == kMinusInfinity ? 0 : finish[j];
    };
    int n = prof.n();
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (start[a] < start[b]) {
          if (key(prof.max(a)) > key(prof.max(b)) || key(prof.min(a)) > key(prof.min(b))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  char to_char(Sign s) {
    return s == Sign::plus ? '+' : (s == Sign::minus ? '-' : '0');
  }

  std::string DriftMatrix::diagonal_string() const {
    std::string out = "(";
    for (int i = 0; i < n_; ++i) {
      if (i) {
        out += ",";
      }
      out += to_char(diagonal(i));
    }
    return out + ")";
  }

  Sign diagonal_drift(DriftProfile const& prof, Perm const& base, int j) {
    int mx = prof.max(j);
    if (mx != kPlusInfinity && base[mx] <= base[j]) {
      return Sign::plus;
    }
    int mn = prof.min(j);
    if (mn != kMinusInfinity && base[mn] >= base[j]) {
      return Sign::minus;
    }
    return Sign::zero;
  }

  DriftMatrix drift_matrix(DriftProfile const& prof, Perm const& base) {
    int         n = prof.n();
    DriftMatrix d(n);
    for (int i = 0; i < n; ++i) {
      int mx = prof.max(i), mn = prof.min(i);
      for (int j = 0; j < n; ++j) {
        if (mx != kPlusInfinity && base[mx] <= base[j]) {
          d.at(i, j) = Sign::plus;
        } else if (mn != kMinusInfinity && base[mn] >= base[j]) {
          d.at(i, j) = Sign::minus;
        }
      }
    }
    return d;
  }

  DriftMatrix loop_drift(DiPath const& loop) {
    require_loop(loop);
    return drift_matrix(path_profile(loop), loop.start());
  }

  DriftMatrix loop_drift_poset(DiPath const& loop) {
    require_loop(loop);
    int         n = loop.n();
    auto        l = static_cast<int>(loop.length());
    auto        q = build_poset(loop);
    DriftMatrix d(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (q.leq(i, l + j)) {
          d.at(i, j) = Sign::plus;
        } else if (q.leq(l + j, i)) {
          d.at(i, j) = Sign::minus;
        }
      }
    }
    return d;
  }

  char const* to_string(LoopClass c) {
    switch (c) {
      case LoopClass::drifts:
        return "drifts";
      case LoopClass::partially_driftless:
        return "partially_driftless";
      case LoopClass::driftless:
        return "driftless";
      case LoopClass::totally_driftless:
        return "totally_driftless";
    }
    return "?";
  }

  LoopClass classify(DriftMatrix const& d) {
    int  n          = d.n();
    bool all_zero   = true;
    bool diag_zero  = true;
    bool some_zero  = false;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d(i, j) != Sign::zero) {
          all_zero = false;
        }
      }
      if (d.diagonal(i) == Sign::zero) {
        some_zero = true;
      } else {
        diag_zero = false;
      }
    }
    if (all_zero) {
      return LoopClass::totally_driftless;
    }
    if (diag_zero) {
      return LoopClass::driftless;
    }
    return some_zero ? LoopClass::partially_driftless : LoopClass::drifts;
  }

  LoopClass classify_loop(DiPath const& loop) {
    return classify(loop_drift(loop));
  }

  namespace {
    // Components that carry loops, i.e. strongly connected pieces with edges.
    std::vector<Subgraph> loop_components(Subgraph const& h) {
      std::vector<Subgraph> out;
      for (auto& c : strongly_connected_components(h)) {
        if (!c.edges.empty()) {
          out.push_back(std::move(c.edges));
        }
      }
      return out;
    }

    std::optional<DriftWitness> drift_witness(kernels::Saturation const& sat) {
      int n = sat.base.size();
      for (int j = 0; j < n; ++j) {
        for (Sign eps : {Sign::plus, Sign::minus}) {
          bool all = !sat.loops.empty();
          for (int id : sat.loops) {
            if (diagonal_drift(sat.states[static_cast<std::size_t>(id)].profile, sat.base, j)
                != eps) {
              all = false;
              break;
            }
          }
          if (all) {
            return DriftWitness{sat.base, j, eps};
          }
        }
      }
      return std::nullopt;
    }

    // Shortest loop at the base whose diagonal entry at j differs from eps.
    std::optional<int> loop_avoiding(kernels::Saturation const& sat, int j, Sign eps) {
      for (int id : sat.loops) {
        if (diagonal_drift(sat.states[static_cast<std::size_t>(id)].profile, sat.base, j) != eps) {
          return id;
        }
      }
      return std::nullopt;
    }

    std::vector<Perm> shortest_path(Subgraph const& h, Perm const& from, Perm const& to) {
      if (from == to) {
        return {};
      }
      std::map<Perm, Perm> via;  // vertex -> edge used to reach it
      std::deque<Perm>     queue{from};
      std::map<Perm, bool> reached{{from, true}};
      while (!queue.empty()) {
        Perm v = queue.front();
        queue.pop_front();
        for (auto const& e : h.edges()) {
          if (PermDigraph::head(e) != v) {
            continue;
          }
          Perm w = PermDigraph::tail(e);
          if (reached.count(w)) {
            continue;
          }
          reached[w] = true;
          via.emplace(w, e);
          if (w == to) {
            std::vector<Perm> out;
            for (Perm x = to; x != from; x = PermDigraph::head(via.at(x))) {
              out.push_back(via.at(x));
            }
            std::reverse(out.begin(), out.end());
            return out;
          }
          queue.push_back(w);
        }
      }
      throw Error(ErrorKind::invalid_argument, "subgraph is not strongly connected");
    }

    // Closed walk at base using every edge of h at least once.
    std::vector<Perm> covering_walk(Subgraph const& h, Perm const& base) {
      std::vector<Perm> walk;
      Perm              at = base;
      std::set<Perm>    covered;
      for (auto const& e : h.edges()) {
        if (covered.count(e)) {
          continue;
        }
        for (auto const& f : shortest_path(h, at, PermDigraph::head(e))) {
          walk.push_back(f);
          covered.insert(f);
        }
        walk.push_back(e);
        covered.insert(e);
        at = PermDigraph::tail(e);
      }
      for (auto const& f : shortest_path(h, at, base)) {
        walk.push_back(f);
      }
      return walk;
    }
  }  // namespace

  SubgraphDriftReport subgraph_drifts(Subgraph const& h, Execution exec) {
    SubgraphDriftReport report;
    for (auto const& comp : loop_components(h)) {
      for (auto const& sat : kernels::saturate(comp, exec)) {
        if (auto w = drift_witness(sat)) {
          report.drifts  = true;
          report.witness = w;
          return report;
        }
      }
    }
    return report;
  }

  DiPath synthesize_totally_driftless_loop(Subgraph const& h, Execution exec) {
    if (!is_strongly_connected(h)) {
      throw Error(ErrorKind::invalid_argument,
                  "synthesis needs a strongly connected subgraph with edges");
    }
    auto sats = kernels::saturate(h, exec);
    for (auto const& sat : sats) {
      if (auto w = drift_witness(sat)) {
        throw Error(ErrorKind::drift_obstruction,
                    h.to_string() + " drifts at vertex " + w->vertex.to_string() + ", index "
                        + std::to_string(w->index + 1) + ", sign " + to_char(w->sign));
      }
    }
    auto const&       sat   = sats.front();
    Perm const&       base  = sat.base;
    int const         n     = base.size();
    int const         i_min = base.position_of(1);
    int const         j_max = base.position_of(n);
    std::vector<Perm> edges = covering_walk(h, base);
    DriftProfile      prof  = path_profile(DiPath(edges));
    std::size_t const cap   = caps().synthesized_loop_length;

    auto append = [&](int state) {
      DiPath piece = sat.path_to(state);
      edges.insert(edges.end(), piece.edges().begin(), piece.edges().end());
      prof = compose(prof, sat.states[static_cast<std::size_t>(state)].profile);
      if (edges.size() > cap) {
        throw Error(ErrorKind::cap_exceeded, "synthesized loop exceeds the length cap");
      }
    };
    // Each appended loop strictly raises Max(i_min) in the base order.
    while (prof.max(i_min) != kPlusInfinity) {
      int k = prof.max(i_min);
      append(*loop_avoiding(sat, k, Sign::plus));
    }
    while (prof.min(j_max) != kMinusInfinity) {
      int k = prof.min(j_max);
      append(*loop_avoiding(sat, k, Sign::minus));
    }
    DiPath loop(std::move(edges));
    if (classify_loop(loop) != LoopClass::totally_driftless || support(loop) != h) {
      throw Error(ErrorKind::invalid_argument, "synthesis produced an invalid loop");
    }
    return loop;
  }

  std::optional<DiPath> find_loop(
      Subgraph const&                                                   h,
      std::function<bool(DriftProfile const&, Perm const& base)> const& pred,
      Execution                                                         exec) {
    std::optional<DiPath> best;
    for (auto const& comp : loop_components(h)) {
      for (auto const& sat : kernels::saturate(comp, exec)) {
        for (int id : sat.loops) {
          if (pred(sat.states[static_cast<std::size_t>(id)].profile, sat.base)) {
            return sat.path_to(id);
          }
        }
      }
    }
    return best;
  }

}  // namespace orderflow
