#ifndef ORDERFLOW_INTERVALMAP_HPP_
#define ORDERFLOW_INTERVALMAP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "orderflow/execution.hpp"
#include "orderflow/flows.hpp"
#include "orderflow/path.hpp"
#include "orderflow/rational.hpp"

namespace orderflow {

  // x -> a x + b on [lo, hi).  With a tail θ (0 < θ < 1, only for a > 0) the
  // image [c, d) is additionally rotated by θ (d - c):
  //   f(x) = c + ((a x + b - c) + θ (d - c)) mod (d - c).
  struct Piece {
    Rational            lo, hi;
    Rational            a, b;
    std::optional<Surd> tail;

    Rational image_lo() const {
      return a > 0 ? Rational(a * lo + b) : Rational(a * hi + b);
    }
    Rational image_hi() const {
      return a > 0 ? Rational(a * hi + b) : Rational(a * lo + b);
    }
    friend bool operator==(Piece const&, Piece const&) = default;
  };

  enum class MeasureStatus { verified, asserted, not_preserving };
  char const* to_string(MeasureStatus s);

  class IntervalMap {
   public:
    // Validates that the pieces partition [0, 1) and map into [0, 1], then
    // checks measure preservation exactly.
    IntervalMap(std::string name, std::vector<Piece> pieces);
    // The logistic map r x (1 - x); floating evaluation only.
    static IntervalMap logistic(double r);

    std::string const& name() const noexcept {
      return name_;
    }
    std::vector<Piece> const& pieces() const noexcept {
      return pieces_;
    }
    bool piecewise_affine() const noexcept {
      return !logistic_;
    }
    bool has_tail() const noexcept;
    MeasureStatus measure() const noexcept {
      return measure_;
    }
    bool measure_preserving() const noexcept {
      return measure_ != MeasureStatus::not_preserving;
    }
    // False for maps known to be periodic everywhere (rational rotations).
    bool aperiodic() const noexcept {
      return aperiodic_;
    }
    void set_aperiodic(bool a) noexcept {
      aperiodic_ = a;
    }

    std::size_t piece_index(Surd const& x) const;
    std::size_t piece_index(double x) const;

    Surd   operator()(Surd const& x) const;
    double operator()(double x) const;

    // The same map with every tail piece split in two plain affine pieces
    // whose endpoints and offsets lie in Q(√2).
    struct SurdPiece {
      Surd     lo, hi;
      Rational a;
      Surd     b;
    };
    std::vector<SurdPiece> surd_pieces() const;

    friend bool operator==(IntervalMap const& f, IntervalMap const& g) {
      return f.pieces_ == g.pieces_ && f.logistic_ == g.logistic_;
    }

   private:
    IntervalMap() = default;
    void check_measure();

    std::string           name_;
    std::vector<Piece>    pieces_;
    struct FloatPiece {
      double lo, a, b, c, w, tail;  // tail 0 when absent
    };
    std::vector<FloatPiece> float_pieces_;
    std::optional<double> logistic_;
    MeasureStatus         measure_   = MeasureStatus::verified;
    bool                  aperiodic_ = true;
  };

  // rotation (param α, rational or "a+b*sqrt2"), doubling, tent, logistic
  // (param 4 only).  Throws UnknownBuiltin.
  IntervalMap builtin(std::string const& name, std::string const& param = "");

  // f on [0, t) scaled by t, g on [t, 1) scaled by 1 - t.
  IntervalMap block_sum(IntervalMap const& f, IntervalMap const& g, Rational const& t);

  // rank[i] is the rank (1-based) of position i.
  struct CyclicRanking {
    int              window;  // pattern length n (edges of G_{n-1})
    std::vector<int> rank;

    std::size_t length() const noexcept {
      return rank.size();
    }
    // Order pattern of positions i .. i + window - 1 taken cyclically.
    Perm cyclic_window(std::size_t i) const;
  };

  // A ranking of positions 0..l-1 whose every cyclic window reproduces the
  // corresponding edge of the loop.  Throws DriftObstruction when the loop is
  // not driftless, CyclicObstruction when no ranking exists, CapExceeded.
  CyclicRanking cyclic_lift(DiPath const& loop);

  // l equal pieces; the piece of rank r(i) translates onto the piece of rank
  // r(i+1), and the transition from position l-1 to 0 carries the tail √2-1.
  IntervalMap permutation_map(CyclicRanking const& r);

  struct Realization {
    IntervalMap map;
    // Per component: loop length and multiplier N.
    struct Component {
      Subgraph    face;
      Rational    mass;
      std::size_t walk_length;
      std::size_t driftless_length;
      std::size_t repetitions;
      std::size_t loop_length;
    };
    std::vector<Component> components;
    // Sup-norm distance between the counting measures used and mu.
    Rational deviation;
  };

  // Throws NotRealizable when the support face drifts.
  Realization realize_flow(Flow const& mu, double tol, Execution exec = Execution::parallel);

  std::vector<Surd>   iterate(IntervalMap const& f, Surd const& x, std::size_t k);
  std::vector<double> iterate(IntervalMap const& f, double x, std::size_t k);

}  // namespace orderflow

#endif  // ORDERFLOW_INTERVALMAP_HPP_
