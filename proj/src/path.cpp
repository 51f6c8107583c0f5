#include "orderflow/path.hpp"

#include "orderflow/error.hpp"

namespace orderflow {

  DiPath::DiPath(std::vector<Perm> edges) : edges_(std::move(edges)) {
    if (edges_.empty()) {
      throw Error(ErrorKind::invalid_argument, "use DiPath::at_vertex for an empty path");
    }
    int len = edges_.front().size();
    if (len < 2) {
      throw Error(ErrorKind::length_too_small, "path edges need length >= 2");
    }
    n_ = len - 1;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i].size() != len) {
        throw Error(ErrorKind::length_mismatch,
                    "edge " + edges_[i].to_string() + " has the wrong length");
      }
      if (i > 0 && restrict(edges_[i - 1], Side::tail) != restrict(edges_[i], Side::head)) {
        throw Error(ErrorKind::endpoint_mismatch,
                    "edges " + edges_[i - 1].to_string() + " and " + edges_[i].to_string()
                        + " do not share a vertex");
      }
    }
    start_  = restrict(edges_.front(), Side::head);
    finish_ = restrict(edges_.back(), Side::tail);
  }

  DiPath DiPath::at_vertex(Perm const& v) {
    DiPath p;
    p.n_      = v.size();
    p.start_  = v;
    p.finish_ = v;
    return p;
  }

  std::vector<Perm> DiPath::vertices() const {
    std::vector<Perm> out{start_};
    for (auto const& e : edges_) {
      out.push_back(restrict(e, Side::tail));
    }
    return out;
  }

  DiPath DiPath::power(std::size_t k) const {
    require_loop(*this);
    if (k == 0) {
      return at_vertex(start_);
    }
    DiPath p = *this;
    p.edges_.reserve(edges_.size() * k);
    for (std::size_t i = 1; i < k; ++i) {
      p.edges_.insert(p.edges_.end(), edges_.begin(), edges_.end());
    }
    return p;
  }

  DiPath DiPath::rotated(std::size_t i) const {
    require_loop(*this);
    std::vector<Perm> e;
    e.reserve(edges_.size());
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      e.push_back(edges_[(i + k) % edges_.size()]);
    }
    return DiPath(std::move(e));
  }

  std::string DiPath::to_string() const {
    if (edges_.empty()) {
      return "(" + start_.to_string() + ")";
    }
    std::string out;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (i > 0) {
        out += "·";
      }
      out += edges_[i].to_string();
    }
    return out;
  }

  DiPath concat(DiPath const& p, DiPath const& q) {
    if (p.n() != q.n()) {
      throw Error(ErrorKind::dimension_mismatch, "paths live in different digraphs");
    }
    if (p.finish() != q.start()) {
      throw Error(ErrorKind::endpoint_mismatch,
                  "path ends at " + p.finish().to_string() + " but the next starts at "
                      + q.start().to_string());
    }
    if (p.empty()) {
      return q;
    }
    if (q.empty()) {
      return p;
    }
    std::vector<Perm> e = p.edges();
    e.insert(e.end(), q.edges().begin(), q.edges().end());
    return DiPath(std::move(e));
  }

  namespace {
    // One projection step G_m -> G_{m-1}: the vertices of the old path are
    // exactly the edges of the new one.
    DiPath project_once(DiPath const& p) {
      if (p.n() < 2) {
        throw Error(ErrorKind::length_too_small, "cannot project below G_1");
      }
      return DiPath(p.vertices());
    }
  }  // namespace

  DiPath project(DiPath const& p, int n) {
    if (n < 1 || n > p.n()) {
      throw Error(ErrorKind::invalid_argument, "projection target out of range");
    }
    DiPath q = p;
    while (q.n() > n) {
      q = project_once(q);
    }
    return q;
  }

  DiPath project(Perm const& sigma, int n) {
    if (n < 1 || n >= sigma.size()) {
      throw Error(ErrorKind::invalid_argument, "projection target out of range");
    }
    return project(DiPath({sigma}), n);
  }

  void require_loop(DiPath const& p) {
    if (!p.is_loop()) {
      throw Error(ErrorKind::not_a_loop, "path " + p.to_string() + " is not a loop");
    }
  }

}  // namespace orderflow
