#include <deque>
#include <exception>
#include <map>
#include <unordered_set>

#include "orderflow/error.hpp"
#include "orderflow/kernels.hpp"

namespace orderflow::kernels {

  DiPath Saturation::path_to(int state) const {
    std::vector<Perm> edges;
    for (int s = state; s != -1; s = states[static_cast<std::size_t>(s)].parent) {
      edges.push_back(states[static_cast<std::size_t>(s)].edge);
    }
    std::reverse(edges.begin(), edges.end());
    return DiPath(std::move(edges));
  }

  namespace {
    struct Arc {
      Perm         edge;
      int          target;
      DriftProfile profile;
    };

    struct Adjacency {
      std::vector<Perm>             vertices;
      std::vector<std::vector<Arc>> out;
    };

    Adjacency adjacency(Subgraph const& h) {
      Adjacency           a;
      a.vertices = h.vertices();
      std::map<Perm, int> index;
      for (std::size_t i = 0; i < a.vertices.size(); ++i) {
        index.emplace(a.vertices[i], static_cast<int>(i));
      }
      a.out.resize(a.vertices.size());
      for (auto const& e : h.edges()) {
        a.out[static_cast<std::size_t>(index.at(PermDigraph::head(e)))].push_back(
            Arc{e, index.at(PermDigraph::tail(e)), edge_profile(e)});
      }
      return a;
    }

    Saturation saturate_from(Adjacency const& a, int base) {
      Saturation sat;
      sat.base     = a.vertices[static_cast<std::size_t>(base)];
      sat.vertices = a.vertices;
      std::size_t const cap = caps().saturation_profiles;
      std::vector<std::unordered_set<DriftProfile, DriftProfileHash>> seen(a.vertices.size());
      std::deque<int> queue;
      auto            visit = [&](int vertex, DriftProfile const& prof, int parent, Perm const& e) {
        auto& s = seen[static_cast<std::size_t>(vertex)];
        if (!s.insert(prof).second) {
          return;
        }
        if (s.size() > cap) {
          throw Error(ErrorKind::saturation_cap_exceeded,
                      "more than " + std::to_string(cap) + " profiles for paths "
                          + sat.base.to_string() + " -> "
                          + a.vertices[static_cast<std::size_t>(vertex)].to_string());
        }
        int id = static_cast<int>(sat.states.size());
        sat.states.push_back({vertex, prof, parent, e});
        if (vertex == base) {
          sat.loops.push_back(id);
        }
        queue.push_back(id);
      };
      for (auto const& arc : a.out[static_cast<std::size_t>(base)]) {
        visit(arc.target, arc.profile, -1, arc.edge);
      }
      while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        // Copy: visit() may reallocate the state vector.
        SaturationState s = sat.states[static_cast<std::size_t>(id)];
        for (auto const& arc : a.out[static_cast<std::size_t>(s.vertex)]) {
          visit(arc.target, compose(s.profile, arc.profile), id, arc.edge);
        }
      }
      return sat;
    }
  }  // namespace

  std::vector<Saturation> saturate(Subgraph const& component, Execution exec) {
    Adjacency const         a = adjacency(component);
    auto const              count = static_cast<std::int64_t>(a.vertices.size());
    std::vector<Saturation> out(static_cast<std::size_t>(count));
    if (exec == Execution::serial) {
      for (std::int64_t v = 0; v < count; ++v) {
        out[static_cast<std::size_t>(v)] = saturate_from(a, static_cast<int>(v));
      }
      return out;
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t v = 0; v < count; ++v) {
      try {
        out[static_cast<std::size_t>(v)] = saturate_from(a, static_cast<int>(v));
      } catch (...) {
#pragma omp critical(orderflow_saturation_failure)
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
    return out;
  }

}  // namespace orderflow::kernels
