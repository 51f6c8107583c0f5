#include "orderflow/intervalmap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

#include "orderflow/caps.hpp"
#include "orderflow/drift.hpp"

namespace orderflow {

  char const* to_string(MeasureStatus s) {
    switch (s) {
      case MeasureStatus::verified:
        return "verified";
      case MeasureStatus::asserted:
        return "asserted";
      case MeasureStatus::not_preserving:
        return "not_preserving";
    }
    return "?";
  }

  namespace {
    [[noreturn]] void bad_map(std::string const& what) {
      throw Error(ErrorKind::invalid_argument, "interval map: " + what);
    }

    Surd const& tail_of_permutation_map() {
      static Surd const theta = Surd(Rational(-1), Rational(1));
      return theta;
    }
  }  // namespace

  IntervalMap::IntervalMap(std::string name, std::vector<Piece> pieces)
      : name_(std::move(name)), pieces_(std::move(pieces)) {
    if (pieces_.empty()) {
      bad_map("no pieces");
    }
    if (pieces_.front().lo != 0 || pieces_.back().hi != 1) {
      bad_map("pieces must cover [0, 1)");
    }
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      Piece const& p = pieces_[i];
      if (!(p.lo < p.hi)) {
        bad_map("empty piece at index " + std::to_string(i));
      }
      if (i > 0 && pieces_[i - 1].hi != p.lo) {
        bad_map("pieces " + std::to_string(i - 1) + " and " + std::to_string(i)
                + " are not contiguous");
      }
      if (sgn(p.a) == 0) {
        bad_map("slope zero on piece " + std::to_string(i));
      }
      if (p.image_lo() < 0 || p.image_hi() > 1) {
        bad_map("piece " + std::to_string(i) + " maps outside [0, 1]");
      }
      if (p.tail) {
        if (sgn(p.a) < 0) {
          bad_map("a tail needs an increasing piece");
        }
        if (p.tail->sign() <= 0 || *p.tail >= Surd(1)) {
          bad_map("tail offset must lie in (0, 1)");
        }
      }
      Rational c = p.image_lo();
      float_pieces_.push_back({p.lo.get_d(), p.a.get_d(), p.b.get_d(), c.get_d(),
                               Rational(p.image_hi() - c).get_d(),
                               p.tail ? p.tail->to_double() : 0.0});
    }
    check_measure();
  }

  IntervalMap IntervalMap::logistic(double r) {
    IntervalMap f;
    f.name_     = "logistic(" + std::to_string(static_cast<int>(r)) + ")";
    f.logistic_ = r;
    f.measure_  = MeasureStatus::not_preserving;
    return f;
  }

  void IntervalMap::check_measure() {
    // Sweep over image endpoints: the density 1/|a| of the pushforward must
    // be exactly 1 everywhere on [0, 1).
    std::vector<std::pair<Rational, Rational>> events;
    events.reserve(2 * pieces_.size());
    for (auto const& p : pieces_) {
      Rational density = 1 / abs(p.a);
      events.emplace_back(p.image_lo(), density);
      events.emplace_back(p.image_hi(), Rational(-density));
    }
    std::sort(events.begin(), events.end(),
              [](auto const& x, auto const& y) { return x.first < y.first; });
    Rational level(0);
    Rational at(0);
    bool     ok = events.front().first == 0;
    for (std::size_t i = 0; ok && i < events.size();) {
      Rational pos = events[i].first;
      if (pos > at && at < 1 && level != 1) {
        ok = false;
        break;
      }
      while (i < events.size() && events[i].first == pos) {
        level += events[i].second;
        ++i;
      }
      at = pos;
    }
    ok = ok && at == 1;
    measure_ = ok ? MeasureStatus::verified : MeasureStatus::not_preserving;
  }

  bool IntervalMap::has_tail() const noexcept {
    return std::any_of(pieces_.begin(), pieces_.end(),
                       [](Piece const& p) { return p.tail.has_value(); });
  }

  std::size_t IntervalMap::piece_index(Surd const& x) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](Surd const& v, Piece const& p) { return v < Surd(p.lo); });
    return it == pieces_.begin() ? 0 : static_cast<std::size_t>(it - pieces_.begin()) - 1;
  }

  std::size_t IntervalMap::piece_index(double x) const {
    auto it = std::upper_bound(float_pieces_.begin(), float_pieces_.end(), x,
                               [](double v, FloatPiece const& p) { return v < p.lo; });
    return it == float_pieces_.begin() ? 0
                                       : static_cast<std::size_t>(it - float_pieces_.begin()) - 1;
  }

  Surd IntervalMap::operator()(Surd const& x) const {
    if (logistic_) {
      throw Error(ErrorKind::not_piecewise_affine, name_ + " has no exact evaluation");
    }
    Piece const& p = pieces_[piece_index(x)];
    Surd         y = p.a * x + Surd(p.b);
    if (!p.tail) {
      return y;
    }
    Rational c = p.image_lo();
    Rational w = p.image_hi() - c;
    Surd     z = y - Surd(c) + *p.tail * w;
    if (z >= Surd(w)) {
      z -= Surd(w);
    }
    return Surd(c) + z;
  }

  double IntervalMap::operator()(double x) const {
    if (logistic_) {
      return *logistic_ * x * (1.0 - x);
    }
    FloatPiece const& p = float_pieces_[piece_index(x)];
    double            y = p.a * x + p.b;
    if (p.tail == 0.0) {
      return y;
    }
    double z = y - p.c + p.tail * p.w;
    if (z >= p.w) {
      z -= p.w;
    }
    return p.c + z;
  }

  std::vector<IntervalMap::SurdPiece> IntervalMap::surd_pieces() const {
    if (logistic_) {
      throw Error(ErrorKind::not_piecewise_affine, name_ + " is not piecewise affine");
    }
    std::vector<SurdPiece> out;
    out.reserve(pieces_.size() + 4);
    for (auto const& p : pieces_) {
      if (!p.tail) {
        out.push_back({Surd(p.lo), Surd(p.hi), p.a, Surd(p.b)});
        continue;
      }
      Rational c     = p.image_lo();
      Rational w     = p.image_hi() - c;
      Surd     shift = *p.tail * w;
      Surd     pivot = (Surd(p.image_hi()) - shift - Surd(p.b)) / p.a;
      out.push_back({Surd(p.lo), pivot, p.a, Surd(p.b) + shift});
      out.push_back({pivot, Surd(p.hi), p.a, Surd(p.b) + shift - Surd(w)});
    }
    return out;
  }

  IntervalMap builtin(std::string const& name, std::string const& param) {
    if (name == "rotation") {
      if (param.empty()) {
        throw Error(ErrorKind::invalid_argument, "rotation needs an offset");
      }
      Surd alpha = parse_surd(param);
      if (alpha.sign() <= 0 || alpha >= Surd(1)) {
        throw Error(ErrorKind::invalid_argument, "rotation offset must lie in (0, 1)");
      }
      std::string label = "rotation(" + to_string(alpha) + ")";
      if (!alpha.is_rational()) {
        return IntervalMap(label, {Piece{0, 1, 1, 0, alpha}});
      }
      Rational    a = alpha.rational_part();
      IntervalMap f(label, {Piece{0, Rational(1 - a), 1, a, std::nullopt},
                            Piece{Rational(1 - a), 1, 1, Rational(a - 1), std::nullopt}});
      // Every orbit is periodic.
      f.set_aperiodic(false);
      return f;
    }
    if (!param.empty() && name != "logistic") {
      throw Error(ErrorKind::invalid_argument, name + " takes no parameter");
    }
    if (name == "doubling") {
      return IntervalMap("doubling", {Piece{0, Rational(1, 2), 2, 0, std::nullopt},
                                      Piece{Rational(1, 2), 1, 2, -1, std::nullopt}});
    }
    if (name == "tent") {
      return IntervalMap("tent", {Piece{0, Rational(1, 2), 2, 0, std::nullopt},
                                  Piece{Rational(1, 2), 1, -2, 2, std::nullopt}});
    }
    if (name == "logistic") {
      if (!param.empty() && parse_rational(param) != 4) {
        throw Error(ErrorKind::invalid_argument, "only the logistic parameter 4 is supported");
      }
      return IntervalMap::logistic(4.0);
    }
    throw Error(ErrorKind::unknown_builtin, "unknown built-in map '" + name + "'");
  }

  IntervalMap block_sum(IntervalMap const& f, IntervalMap const& g, Rational const& t) {
    if (!(t > 0 && t < 1)) {
      throw Error(ErrorKind::invalid_argument, "block_sum weight must lie in (0, 1)");
    }
    if (!f.piecewise_affine() || !g.piecewise_affine()) {
      throw Error(ErrorKind::not_piecewise_affine, "block_sum needs piecewise-affine maps");
    }
    std::vector<Piece> pieces;
    pieces.reserve(f.pieces().size() + g.pieces().size());
    for (auto const& p : f.pieces()) {
      pieces.push_back({t * p.lo, t * p.hi, p.a, t * p.b, p.tail});
    }
    Rational s = 1 - t;
    for (auto const& p : g.pieces()) {
      pieces.push_back({t + s * p.lo, t + s * p.hi, p.a, t - p.a * t + s * p.b, p.tail});
    }
    IntervalMap h("block_sum(" + f.name() + "," + g.name() + "," + to_string(t) + ")",
                  std::move(pieces));
    h.set_aperiodic(f.aperiodic() && g.aperiodic());
    return h;
  }

  Perm CyclicRanking::cyclic_window(std::size_t i) const {
    std::vector<int> vals(static_cast<std::size_t>(window));
    for (int c = 0; c < window; ++c) {
      vals[static_cast<std::size_t>(c)] = rank[(i + static_cast<std::size_t>(c)) % rank.size()];
    }
    return pattern_of_ranks(vals);
  }

  CyclicRanking cyclic_lift(DiPath const& loop) {
    require_loop(loop);
    std::size_t len = loop.length();
    if (len > static_cast<std::size_t>(caps().cyclic_lift_length)) {
      throw Error(ErrorKind::cap_exceeded,
                  "loop length " + std::to_string(len) + " exceeds the cyclic-lift cap "
                      + std::to_string(caps().cyclic_lift_length));
    }
    LoopClass cls = classify_loop(loop);
    if (cls != LoopClass::driftless && cls != LoopClass::totally_driftless) {
      throw Error(ErrorKind::drift_obstruction,
                  std::string("cyclic lift needs a driftless loop, this one is ") + to_string(cls));
    }
    int w = loop.n() + 1;
    if (len < static_cast<std::size_t>(w)) {
      throw Error(ErrorKind::cyclic_obstruction, "loop is shorter than its windows");
    }
    // Every window imposes a total order on its positions; a ranking is a
    // topological order of the union of these constraints.
    std::vector<std::vector<std::uint32_t>> succ(len);
    std::vector<std::uint32_t>              indegree(len, 0);
    for (std::size_t b = 0; b < len; ++b) {
      Perm const& e = loop.edge(b);
      for (int c = 0; c < w; ++c) {
        for (int d = c + 1; d < w; ++d) {
          auto p = static_cast<std::uint32_t>((b + static_cast<std::size_t>(c)) % len);
          auto q = static_cast<std::uint32_t>((b + static_cast<std::size_t>(d)) % len);
          if (e[c] > e[d]) {
            std::swap(p, q);
          }
          succ[p].push_back(q);
          ++indegree[q];
        }
      }
    }
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
    for (std::uint32_t i = 0; i < len; ++i) {
      if (indegree[i] == 0) {
        ready.push(i);
      }
    }
    CyclicRanking r{w, std::vector<int>(len, 0)};
    int           next = 1;
    while (!ready.empty()) {
      std::uint32_t p = ready.top();
      ready.pop();
      r.rank[p] = next++;
      for (std::uint32_t q : succ[p]) {
        if (--indegree[q] == 0) {
          ready.push(q);
        }
      }
    }
    if (static_cast<std::size_t>(next - 1) != len) {
      throw Error(ErrorKind::cyclic_obstruction,
                  "the cyclic window constraints of " + std::to_string(len)
                      + " positions contain a cycle");
    }
    for (std::size_t b = 0; b < len; ++b) {
      if (r.cyclic_window(b) != loop.edge(b)) {
        throw std::logic_error("cyclic lift produced a wrong window");
      }
    }
    return r;
  }

  IntervalMap permutation_map(CyclicRanking const& r) {
    std::size_t len = r.length();
    if (len == 0) {
      throw Error(ErrorKind::invalid_argument, "empty ranking");
    }
    std::vector<std::size_t> position_of_rank(len + 1, len);
    for (std::size_t i = 0; i < len; ++i) {
      int k = r.rank[i];
      if (k < 1 || static_cast<std::size_t>(k) > len || position_of_rank[k] != len) {
        throw Error(ErrorKind::invalid_argument, "ranking is not a bijection");
      }
      position_of_rank[static_cast<std::size_t>(k)] = i;
    }
    Rational           width(1, static_cast<unsigned long>(len));
    std::vector<Piece> pieces;
    pieces.reserve(len);
    for (std::size_t k = 1; k <= len; ++k) {
      std::size_t i    = position_of_rank[k];
      std::size_t next = (i + 1) % len;
      int         to   = r.rank[next];
      Piece       p{width * static_cast<long>(k - 1), width * static_cast<long>(k), 1,
              width * (to - static_cast<long>(k)), std::nullopt};
      if (i == len - 1) {
        p.tail = tail_of_permutation_map();
      }
      pieces.push_back(std::move(p));
    }
    return IntervalMap("permutation_map(l=" + std::to_string(len) + ")", std::move(pieces));
  }

  namespace {
    // Closed walk from start using edge e exactly count[e] times.
    DiPath eulerian_circuit(std::map<Perm, BigInt> const& count, Perm const& start) {
      std::map<Perm, std::vector<Perm>> out;
      for (auto const& [e, c] : count) {
        auto& list = out[restrict(e, Side::head)];
        for (BigInt k = 0; k < c; ++k) {
          list.push_back(e);
        }
      }
      struct Frame {
        Perm                vertex;
        std::optional<Perm> via;
      };
      std::vector<Frame> stack{{start, std::nullopt}};
      std::vector<Perm>  circuit;
      while (!stack.empty()) {
        auto& list = out[stack.back().vertex];
        if (!list.empty()) {
          Perm e = list.back();
          list.pop_back();
          stack.push_back({restrict(e, Side::tail), e});
        } else {
          if (stack.back().via) {
            circuit.push_back(*stack.back().via);
          }
          stack.pop_back();
        }
      }
      std::reverse(circuit.begin(), circuit.end());
      return DiPath(std::move(circuit));
    }
  }  // namespace

  Realization realize_flow(Flow const& mu, double tol, Execution exec) {
    if (!(tol > 0) || !std::isfinite(tol)) {
      throw Error(ErrorKind::invalid_argument, "tolerance must be positive");
    }
    Subgraph face = support_face(mu);
    if (!face_realizable(face, exec)) {
      throw Error(ErrorKind::not_realizable,
                  "the support of the flow drifts, so no map realizes it");
    }
    Rational                           tol_q(tol);
    std::vector<IntervalMap>           maps;
    std::vector<Realization::Component> parts;
    std::map<Perm, Rational>           achieved;
    std::size_t                        cap = static_cast<std::size_t>(caps().cyclic_lift_length);

    for (Subgraph const& comp : weak_components(face)) {
      Rational mass(0);
      for (auto const& e : comp.edges()) {
        mass += mu.weight(e);
      }
      // Integer multiplicities proportional to the weights.
      BigInt denom_lcm = 1;
      for (auto const& e : comp.edges()) {
        Rational q = mu.weight(e) / mass;
        mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), q.get_den_mpz_t());
      }
      std::map<Perm, BigInt> count;
      BigInt                 total = 0;
      for (auto const& e : comp.edges()) {
        Rational q = mu.weight(e) / mass * denom_lcm;
        count[e]   = q.get_num();
        total += count[e];
      }
      if (total > BigInt(static_cast<unsigned long>(cap))) {
        throw Error(ErrorKind::cap_exceeded,
                    "integer flow of weight " + total.get_str() + " exceeds the cyclic-lift cap");
      }
      DiPath      delta = synthesize_totally_driftless_loop(comp, exec);
      DiPath      beta  = eulerian_circuit(count, delta.start());
      std::size_t ld    = delta.length();
      std::size_t big_w = beta.length();
      // Smallest N with l_delta / (N W + l_delta) <= tol.
      Rational need = Rational(static_cast<unsigned long>(ld)) * (1 - tol_q)
                      / (tol_q * static_cast<unsigned long>(big_w));
      BigInt n_rep;
      mpz_cdiv_q(n_rep.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
      if (n_rep < 1) {
        n_rep = 1;
      }
      BigInt loop_len = n_rep * static_cast<unsigned long>(big_w) + static_cast<unsigned long>(ld);
      if (loop_len > BigInt(static_cast<unsigned long>(cap))) {
        throw Error(ErrorKind::cap_exceeded,
                    "reaching tolerance needs a loop of length " + loop_len.get_str()
                        + ", above the cyclic-lift cap " + std::to_string(cap));
      }
      std::size_t reps   = n_rep.get_ui();
      DiPath      lambda = concat(beta.power(reps), delta);
      maps.push_back(permutation_map(cyclic_lift(lambda)));

      std::map<Perm, long> edges_used;
      for (auto const& e : lambda.edges()) {
        ++edges_used[e];
      }
      for (auto const& [e, c] : edges_used) {
        achieved[e] +=
            mass * Rational(c, static_cast<unsigned long>(lambda.length()));
      }
      parts.push_back({comp, mass, big_w, ld, reps, lambda.length()});
    }

    // Block-sum from the right so every component keeps its mass.
    IntervalMap result = maps.back();
    Rational    rest   = parts.back().mass;
    for (std::size_t k = maps.size() - 1; k-- > 0;) {
      rest += parts[k].mass;
      result = block_sum(maps[k], result, parts[k].mass / rest);
    }
    Rational dev = sup_distance_exact(ExactDistribution(mu.n(), achieved), mu.distribution());
    return Realization{std::move(result), std::move(parts), dev};
  }

  std::vector<Surd> iterate(IntervalMap const& f, Surd const& x, std::size_t k) {
    if (x.sign() < 0 || x >= Surd(1)) {
      throw Error(ErrorKind::invalid_argument, "starting point must lie in [0, 1)");
    }
    std::vector<Surd> orbit{x};
    orbit.reserve(k + 1);
    for (std::size_t i = 0; i < k; ++i) {
      orbit.push_back(f(orbit.back()));
    }
    return orbit;
  }

  std::vector<double> iterate(IntervalMap const& f, double x, std::size_t k) {
    if (!(x >= 0 && x < 1)) {
      throw Error(ErrorKind::invalid_argument, "starting point must lie in [0, 1)");
    }
    std::vector<double> orbit{x};
    orbit.reserve(k + 1);
    for (std::size_t i = 0; i < k; ++i) {
      orbit.push_back(f(orbit.back()));
    }
    return orbit;
  }

}  // namespace orderflow
