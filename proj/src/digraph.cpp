#include "orderflow/digraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "orderflow/caps.hpp"
#include "orderflow/error.hpp"

namespace orderflow {

  PermDigraph PermDigraph::build(int n) {
    if (n < 1) {
      throw Error(ErrorKind::invalid_argument, "G_n needs n >= 1");
    }
    if (n + 1 > std::min(kMaxPermLength, caps().perm_length)) {
      throw Error(ErrorKind::cap_exceeded,
                  "G_" + std::to_string(n) + " has edges longer than the permutation cap");
    }
    return PermDigraph(n);
  }

  std::vector<Perm> PermDigraph::vertices() const {
    return all_perms(n_);
  }

  std::vector<Perm> PermDigraph::edges() const {
    return all_perms(n_ + 1);
  }

  namespace {
    // Extend v by a new value of rank r placed at the end (or the front).
    Perm extend(Perm const& v, int r, bool at_end) {
      std::vector<int> w;
      w.reserve(static_cast<std::size_t>(v.size()) + 1);
      if (!at_end) {
        w.push_back(r);
      }
      for (int i = 0; i < v.size(); ++i) {
        w.push_back(v[i] >= r ? v[i] + 1 : v[i]);
      }
      if (at_end) {
        w.push_back(r);
      }
      return Perm::from_word(w);
    }
  }  // namespace

  std::vector<Perm> PermDigraph::out_edges(Perm const& v) const {
    std::vector<Perm> out;
    for (int r = 1; r <= n_ + 1; ++r) {
      out.push_back(extend(v, r, true));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Perm> PermDigraph::in_edges(Perm const& v) const {
    std::vector<Perm> out;
    for (int r = 1; r <= n_ + 1; ++r) {
      out.push_back(extend(v, r, false));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Subgraph PermDigraph::as_subgraph() const {
    return Subgraph(n_, edges());
  }

  Subgraph::Subgraph(int n, std::vector<Perm> const& edges) : n_(n) {
    for (auto const& e : edges) {
      insert(e);
    }
  }

  void Subgraph::insert(Perm const& e) {
    if (e.size() != n_ + 1) {
      throw Error(ErrorKind::length_mismatch,
                  "edge " + e.to_string() + " does not belong to G_" + std::to_string(n_));
    }
    edges_.insert(e);
  }

  std::vector<Perm> Subgraph::vertices() const {
    std::set<Perm> v;
    for (auto const& e : edges_) {
      v.insert(PermDigraph::head(e));
      v.insert(PermDigraph::tail(e));
    }
    return {v.begin(), v.end()};
  }

  bool Subgraph::includes(Subgraph const& other) const {
    return n_ == other.n_
           && std::includes(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end());
  }

  Subgraph unite(Subgraph const& a, Subgraph const& b) {
    if (a.n_ != b.n_) {
      throw Error(ErrorKind::dimension_mismatch, "subgraphs of different digraphs");
    }
    Subgraph u = a;
    u.edges_.insert(b.edges_.begin(), b.edges_.end());
    return u;
  }

  std::string Subgraph::to_string() const {
    std::string out = "{";
    bool        first = true;
    for (auto const& e : edges_) {
      if (!first) {
        out += ",";
      }
      first = false;
      out += e.to_string();
    }
    return out + "}";
  }

  Subgraph support(DiPath const& p) {
    return Subgraph(p.n(), p.edges());
  }

  namespace {
    struct Indexed {
      std::vector<Perm>                         vertex;
      std::map<Perm, int>                       index;
      std::vector<std::vector<std::pair<int, Perm>>> out;  // (target, edge)
    };

    Indexed index_graph(Subgraph const& h) {
      Indexed g;
      g.vertex = h.vertices();
      for (int i = 0; i < static_cast<int>(g.vertex.size()); ++i) {
        g.index.emplace(g.vertex[static_cast<std::size_t>(i)], i);
      }
      g.out.resize(g.vertex.size());
      for (auto const& e : h.edges()) {
        int a = g.index.at(PermDigraph::head(e));
        int b = g.index.at(PermDigraph::tail(e));
        g.out[static_cast<std::size_t>(a)].emplace_back(b, e);
      }
      return g;
    }

    // Iterative Tarjan; returns the component id of each vertex.
    std::vector<int> tarjan(Indexed const& g, int& count) {
      int              nv = static_cast<int>(g.vertex.size());
      std::vector<int> idx(static_cast<std::size_t>(nv), -1), low(idx), comp(idx);
      std::vector<bool> on_stack(static_cast<std::size_t>(nv), false);
      std::vector<int>  stack;
      int               counter = 0;
      count                     = 0;
      struct Frame {
        int         v;
        std::size_t next;
      };
      for (int s = 0; s < nv; ++s) {
        if (idx[static_cast<std::size_t>(s)] != -1) {
          continue;
        }
        std::vector<Frame> call{{s, 0}};
        idx[static_cast<std::size_t>(s)] = low[static_cast<std::size_t>(s)] = counter++;
        stack.push_back(s);
        on_stack[static_cast<std::size_t>(s)] = true;
        while (!call.empty()) {
          auto& f  = call.back();
          auto  vs = static_cast<std::size_t>(f.v);
          if (f.next < g.out[vs].size()) {
            int  w  = g.out[vs][f.next++].first;
            auto ws = static_cast<std::size_t>(w);
            if (idx[ws] == -1) {
              idx[ws] = low[ws] = counter++;
              stack.push_back(w);
              on_stack[ws] = true;
              call.push_back({w, 0});
            } else if (on_stack[ws]) {
              low[vs] = std::min(low[vs], idx[ws]);
            }
            continue;
          }
          if (low[vs] == idx[vs]) {
            int w;
            do {
              w = stack.back();
              stack.pop_back();
              on_stack[static_cast<std::size_t>(w)] = false;
              comp[static_cast<std::size_t>(w)]     = count;
            } while (w != f.v);
            ++count;
          }
          int v = f.v;
          call.pop_back();
          if (!call.empty()) {
            auto ps = static_cast<std::size_t>(call.back().v);
            low[ps] = std::min(low[ps], low[static_cast<std::size_t>(v)]);
          }
        }
      }
      return comp;
    }
  }  // namespace

  std::vector<Component> strongly_connected_components(Subgraph const& h) {
    Indexed          g = index_graph(h);
    int              count;
    std::vector<int> comp = tarjan(g, count);
    // Renumber by least vertex so the output order is canonical.
    std::vector<int> order(static_cast<std::size_t>(count), -1);
    int              next = 0;
    for (std::size_t v = 0; v < g.vertex.size(); ++v) {
      if (order[static_cast<std::size_t>(comp[v])] == -1) {
        order[static_cast<std::size_t>(comp[v])] = next++;
      }
    }
    std::vector<Component> out(static_cast<std::size_t>(count), Component{{}, Subgraph(h.n())});
    for (std::size_t v = 0; v < g.vertex.size(); ++v) {
      out[static_cast<std::size_t>(order[static_cast<std::size_t>(comp[v])])].vertices.push_back(
          g.vertex[v]);
    }
    for (auto const& e : h.edges()) {
      int a = comp[static_cast<std::size_t>(g.index.at(PermDigraph::head(e)))];
      int b = comp[static_cast<std::size_t>(g.index.at(PermDigraph::tail(e)))];
      if (a == b) {
        out[static_cast<std::size_t>(order[static_cast<std::size_t>(a)])].edges.insert(e);
      }
    }
    return out;
  }

  std::vector<Subgraph> weak_components(Subgraph const& h) {
    Indexed          g = index_graph(h);
    std::vector<int> parent(g.vertex.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)]
            = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    for (std::size_t v = 0; v < g.out.size(); ++v) {
      for (auto const& [w, e] : g.out[v]) {
        int a = find(static_cast<int>(v));
        int b = find(w);
        if (a != b) {
          parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
      }
    }
    std::map<int, Subgraph> by_root;
    for (auto const& e : h.edges()) {
      int r = find(g.index.at(PermDigraph::head(e)));
      by_root.try_emplace(r, h.n()).first->second.insert(e);
    }
    std::vector<Subgraph> out;
    for (auto& [r, s] : by_root) {
      out.push_back(std::move(s));
    }
    return out;
  }

  bool is_face_subgraph(Subgraph const& h) {
    std::size_t inside = 0;
    for (auto const& c : strongly_connected_components(h)) {
      inside += c.edges.edge_count();
    }
    return inside == h.edge_count();
  }

  bool is_strongly_connected(Subgraph const& h) {
    return !h.empty() && strongly_connected_components(h).size() == 1;
  }

  DiPath canonical_rotation(DiPath const& loop) {
    require_loop(loop);
    std::size_t best = 0;
    auto const& e    = loop.edges();
    std::size_t l    = e.size();
    for (std::size_t r = 1; r < l; ++r) {
      for (std::size_t k = 0; k < l; ++k) {
        auto const& a = e[(r + k) % l];
        auto const& b = e[(best + k) % l];
        if (a != b) {
          if (a < b) {
            best = r;
          }
          break;
        }
      }
    }
    return loop.rotated(best);
  }

  std::vector<DiPath> embedded_loops(Subgraph const& h) {
    Indexed g = index_graph(h);
    if (static_cast<int>(g.vertex.size()) > caps().loop_vertices) {
      throw Error(ErrorKind::cap_exceeded,
                  "embedded_loops: " + std::to_string(g.vertex.size())
                      + " vertices exceed the cap of " + std::to_string(caps().loop_vertices));
    }
    constexpr std::size_t kMaxLoops = 2000000;
    std::vector<DiPath>   loops;
    std::vector<Perm>     path_edges;
    std::vector<bool>     on_path(g.vertex.size(), false);
    int                   s = 0;
    // Each simple cycle is found once, from its least vertex s, visiting only
    // vertices above s.
    std::function<void(int)> dfs = [&](int v) {
      for (auto const& [w, e] : g.out[static_cast<std::size_t>(v)]) {
        if (w == s) {
          path_edges.push_back(e);
          loops.push_back(canonical_rotation(DiPath(path_edges)));
          path_edges.pop_back();
          if (loops.size() > kMaxLoops) {
            throw Error(ErrorKind::cap_exceeded, "too many embedded loops");
          }
        } else if (w > s && !on_path[static_cast<std::size_t>(w)]) {
          on_path[static_cast<std::size_t>(w)] = true;
          path_edges.push_back(e);
          dfs(w);
          path_edges.pop_back();
          on_path[static_cast<std::size_t>(w)] = false;
        }
      }
    };
    for (s = 0; s < static_cast<int>(g.vertex.size()); ++s) {
      on_path[static_cast<std::size_t>(s)] = true;
      dfs(s);
      on_path[static_cast<std::size_t>(s)] = false;
    }
    std::sort(loops.begin(), loops.end(), [](DiPath const& a, DiPath const& b) {
      return a.edges() < b.edges();
    });
    return loops;
  }

  int face_dimension(Subgraph const& h) {
    if (!is_face_subgraph(h)) {
      throw Error(ErrorKind::not_face_subgraph,
                  h.to_string() + " has an edge on no loop");
    }
    if (h.empty()) {
      throw Error(ErrorKind::not_face_subgraph, "the empty subgraph has no face");
    }
    return static_cast<int>(h.edge_count()) - static_cast<int>(h.vertices().size())
           + static_cast<int>(weak_components(h).size()) - 1;
  }

  std::string export_dot(Subgraph const& h) {
    std::ostringstream out;
    out << "digraph G" << h.n() << " {\n";
    for (auto const& v : h.vertices()) {
      out << "  \"" << v.to_string() << "\";\n";
    }
    for (auto const& e : h.edges()) {
      out << "  \"" << PermDigraph::head(e).to_string() << "\" -> \""
          << PermDigraph::tail(e).to_string() << "\" [label=\"" << e.to_string() << "\"];\n";
    }
    out << "}\n";
    return out.str();
  }

  std::string export_dot(PermDigraph const& g) {
    return export_dot(g.as_subgraph());
  }

}  // namespace orderflow
