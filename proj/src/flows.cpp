#include "orderflow/flows.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>

#include "orderflow/drift.hpp"
#include "orderflow/kernels.hpp"

namespace orderflow {

  Flow::Flow(ExactDistribution mu) : mu_(std::move(mu)) {
    if (mu_.n() < 2) {
      throw Error(ErrorKind::not_a_flow, "a flow needs pattern length >= 2");
    }
    Rational r = flow_residual(mu_);
    if (sgn(r) != 0) {
      throw Error(ErrorKind::not_a_flow, "flow residual is " + to_string(r));
    }
  }

  Flow Flow::counting_measure(DiPath const& loop) {
    require_loop(loop);
    std::map<Perm, Rational> w;
    Rational                 each(1, static_cast<unsigned long>(loop.length()));
    for (auto const& e : loop.edges()) {
      w[e] += each;
    }
    return Flow(ExactDistribution(loop.n() + 1, std::move(w)));
  }

  SnappedFlow snap_flow(FloatDistribution const& mu, double tol) {
    std::map<Perm, Rational> w;
    double                   worst = 0;
    for (auto const& [e, x] : mu.masses()) {
      Rational q = snap_to_rational(x, tol);
      worst      = std::max(worst, std::abs(q.get_d() - x));
      w.emplace(e, q);
    }
    try {
      return {Flow(ExactDistribution(mu.n(), std::move(w))), worst};
    } catch (Error const& e) {
      throw Error(ErrorKind::not_a_flow,
                  std::string("snapped weights do not form a flow: ") + e.what());
    }
  }

  Subgraph support_face(Flow const& mu) {
    Subgraph h(mu.n() - 1);
    for (auto const& [e, w] : mu.distribution().masses()) {
      h.insert(e);
    }
    return h;
  }

  bool face_realizable(Subgraph const& h, Execution exec) {
    if (h.empty() || !is_face_subgraph(h)) {
      throw Error(ErrorKind::not_face_subgraph, h.to_string() + " is not a face subgraph");
    }
    return !subgraph_drifts(h, exec).drifts;
  }

  namespace {
    using EdgeMask = std::pair<std::uint64_t, std::uint64_t>;

    EdgeMask mask_of(Subgraph const& h) {
      EdgeMask m{0, 0};
      for (auto const& e : h.edges()) {
        auto i = e.index();
        if (i < 64) {
          m.first |= std::uint64_t(1) << i;
        } else {
          m.second |= std::uint64_t(1) << (i - 64);
        }
      }
      return m;
    }

    // Faces of dimension <= max_dim as unions of embedded loop supports.
    // The cycle rank never drops when edges are added, so every such face is
    // reached through faces of no larger dimension.
    std::vector<CensusRow> census_by_loops(int n, int max_dim, Execution exec) {
      auto g = PermDigraph::build(n - 1);
      if (g.edge_count() > 128) {
        throw Error(ErrorKind::cap_exceeded, "restricted census supports at most 128 edges");
      }
      std::vector<Subgraph> loops;
      for (auto const& l : embedded_loops(g.as_subgraph())) {
        loops.push_back(support(l));
      }
      std::set<EdgeMask>    seen;
      std::deque<Subgraph>  frontier;
      std::vector<Subgraph> faces;
      for (auto const& l : loops) {
        if (seen.insert(mask_of(l)).second) {
          frontier.push_back(l);
        }
      }
      constexpr std::size_t kMaxFaces = 2000000;
      while (!frontier.empty()) {
        Subgraph f = std::move(frontier.front());
        frontier.pop_front();
        faces.push_back(f);
        if (faces.size() > kMaxFaces) {
          throw Error(ErrorKind::cap_exceeded, "restricted census found too many faces");
        }
        if (face_dimension(f) >= max_dim) {
          continue;
        }
        for (auto const& l : loops) {
          Subgraph u = unite(f, l);
          if (u == f || face_dimension(u) > max_dim) {
            continue;
          }
          if (seen.insert(mask_of(u)).second) {
            frontier.push_back(std::move(u));
          }
        }
      }
      std::map<int, CensusRow> rows;
      for (auto const& f : faces) {
        int   d   = face_dimension(f);
        auto& row = rows.try_emplace(d, CensusRow{d, 0, 0}).first->second;
        ++row.total;
        if (face_realizable(f, exec)) {
          ++row.realizable;
        }
      }
      std::vector<CensusRow> out;
      for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        out.push_back(it->second);
      }
      return out;
    }
  }  // namespace

  std::vector<CensusRow> census(int n, std::optional<int> max_dimension, Execution exec) {
    if (n < 2) {
      throw Error(ErrorKind::invalid_argument, "census needs n >= 2");
    }
    if (n <= 3 && !max_dimension) {
      std::vector<CensusRow> out;
      for (auto const& t : kernels::census_subsets(n, exec)) {
        out.push_back({t.dimension, t.total, t.realizable});
      }
      std::reverse(out.begin(), out.end());
      return out;
    }
    if (!max_dimension) {
      throw Error(ErrorKind::cap_exceeded,
                  "census for n = " + std::to_string(n) + " needs a maximum dimension");
    }
    if (n > 4) {
      throw Error(ErrorKind::cap_exceeded, "census supports n <= 4");
    }
    return census_by_loops(n, *max_dimension, exec);
  }

  void write_census_csv(std::ostream& out, std::vector<CensusRow> const& rows) {
    out << "dimension,total,realizable\n";
    for (auto const& r : rows) {
      out << r.dimension << ',' << r.total << ',' << r.realizable << '\n';
    }
  }

  std::vector<std::pair<DiPath, Rational>> cycle_decompose(Flow const& mu) {
    std::map<Perm, Rational>                 rest = mu.distribution().masses();
    std::vector<std::pair<DiPath, Rational>> out;
    while (!rest.empty()) {
      // Walk along positive edges until a vertex repeats.
      Perm                v = PermDigraph::head(rest.begin()->first);
      std::vector<Perm>   walk;
      std::map<Perm, std::size_t> first_visit{{v, 0}};
      while (true) {
        Perm const* next = nullptr;
        for (auto const& [e, w] : rest) {
          if (PermDigraph::head(e) == v) {
            next = &e;
            break;
          }
        }
        if (next == nullptr) {
          throw Error(ErrorKind::not_a_flow, "flow is not conserved at " + v.to_string());
        }
        walk.push_back(*next);
        v = PermDigraph::tail(*next);
        auto it = first_visit.find(v);
        if (it != first_visit.end()) {
          std::vector<Perm> cyc(walk.begin() + static_cast<std::ptrdiff_t>(it->second), walk.end());
          DiPath            loop = canonical_rotation(DiPath(cyc));
          Rational          m    = rest.at(cyc.front());
          for (auto const& e : cyc) {
            m = std::min(m, rest.at(e));
          }
          for (auto const& e : cyc) {
            rest.at(e) -= m;
            if (sgn(rest.at(e)) == 0) {
              rest.erase(e);
            }
          }
          // The loop carries weight m on each of its edges.
          out.emplace_back(loop, m * static_cast<unsigned long>(cyc.size()));
          break;
        }
        first_visit.emplace(v, walk.size());
      }
    }
    return out;
  }

  Flow resum(std::vector<std::pair<DiPath, Rational>> const& parts) {
    if (parts.empty()) {
      throw Error(ErrorKind::invalid_argument, "nothing to sum");
    }
    std::map<Perm, Rational> w;
    for (auto const& [loop, weight] : parts) {
      Rational each = weight / static_cast<unsigned long>(loop.length());
      for (auto const& e : loop.edges()) {
        w[e] += each;
      }
    }
    return Flow(ExactDistribution(parts.front().first.n() + 1, std::move(w)));
  }

  namespace {
    std::vector<Perm> bfs_path(Subgraph const& h, Perm const& from, Perm const& to) {
      if (from == to) {
        return {};
      }
      std::map<Perm, Perm> via;
      std::deque<Perm>     queue{from};
      std::set<Perm>       reached{from};
      while (!queue.empty()) {
        Perm v = queue.front();
        queue.pop_front();
        for (auto const& e : h.edges()) {
          if (PermDigraph::head(e) != v || reached.count(PermDigraph::tail(e))) {
            continue;
          }
          Perm w = PermDigraph::tail(e);
          reached.insert(w);
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
      throw Error(ErrorKind::not_face_subgraph, "edge lies on no loop");
    }
  }  // namespace

  Flow interior_flow(Subgraph const& h) {
    if (h.empty() || !is_face_subgraph(h)) {
      throw Error(ErrorKind::not_face_subgraph, h.to_string() + " is not a face subgraph");
    }
    std::map<Perm, Rational> count;
    Rational                 total(0);
    for (auto const& e : h.edges()) {
      auto back = bfs_path(h, PermDigraph::tail(e), PermDigraph::head(e));
      count[e] += 1;
      total += 1;
      for (auto const& f : back) {
        count[f] += 1;
        total += 1;
      }
    }
    for (auto& [e, c] : count) {
      c /= total;
    }
    return Flow(ExactDistribution(h.n() + 1, std::move(count)));
  }

  namespace {
    int rank(std::vector<std::vector<Rational>> m) {
      int rows = static_cast<int>(m.size());
      int cols = rows == 0 ? 0 : static_cast<int>(m.front().size());
      int r    = 0;
      for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i) {
          if (sgn(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]) != 0) {
            pivot = i;
            break;
          }
        }
        if (pivot < 0) {
          continue;
        }
        std::swap(m[static_cast<std::size_t>(pivot)], m[static_cast<std::size_t>(r)]);
        auto const& pr = m[static_cast<std::size_t>(r)];
        for (int i = r + 1; i < rows; ++i) {
          auto& row = m[static_cast<std::size_t>(i)];
          if (sgn(row[static_cast<std::size_t>(c)]) == 0) {
            continue;
          }
          Rational f = row[static_cast<std::size_t>(c)] / pr[static_cast<std::size_t>(c)];
          for (int k = c; k < cols; ++k) {
            if (sgn(pr[static_cast<std::size_t>(k)]) != 0) {
              row[static_cast<std::size_t>(k)] -= f * pr[static_cast<std::size_t>(k)];
            }
          }
        }
        ++r;
      }
      return r;
    }
  }  // namespace

  int polytope_dimension(int n) {
    if (n < 2) {
      throw Error(ErrorKind::invalid_argument, "P_n needs n >= 2");
    }
    if (n > 6) {
      throw Error(ErrorKind::cap_exceeded, "polytope_dimension supports n <= 6");
    }
    auto edges    = all_perms(n);
    auto vertices = all_perms(n - 1);
    std::map<Perm, std::size_t>        row_of;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      row_of.emplace(vertices[i], i);
    }
    std::vector<std::vector<Rational>> m(vertices.size() + 1,
                                         std::vector<Rational>(edges.size(), Rational(0)));
    for (std::size_t c = 0; c < edges.size(); ++c) {
      m[row_of.at(restrict(edges[c], Side::head))][c] += 1;
      m[row_of.at(restrict(edges[c], Side::tail))][c] -= 1;
      m[vertices.size()][c] = 1;
    }
    return static_cast<int>(edges.size()) - rank(std::move(m));
  }

}  // namespace orderflow
