#include "orderflow/cantor.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "orderflow/caps.hpp"
#include "orderflow/kernels.hpp"

namespace orderflow {

  namespace {
    Rational const kQuarter(1, 4);
    Rational const kThreeQuarters(3, 4);
    Rational const kWallLo(1, 8);
    Rational const kWallHi(7, 8);

    Rational power_of_half(int k) {
      BigInt d;
      mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(k));
      return Rational(BigInt(1), d);
    }

    std::vector<ExactDistribution> normalise_targets(std::vector<ExactDistribution> targets) {
      if (targets.empty()) {
        throw Error(ErrorKind::incompatible_sequence, "no target distributions");
      }
      if (targets.front().n() != 1) {
        targets.insert(targets.begin(), ExactDistribution::point_mass(Perm()));
      }
      for (std::size_t k = 0; k < targets.size(); ++k) {
        if (targets[k].n() != static_cast<int>(k) + 1) {
          throw Error(ErrorKind::incompatible_sequence,
                      "target " + std::to_string(k + 1) + " has length "
                          + std::to_string(targets[k].n()) + ", expected "
                          + std::to_string(k + 1));
        }
        if (k > 0 && !is_compatible(targets[k - 1], targets[k])) {
          throw Error(ErrorKind::incompatible_sequence,
                      "targets of lengths " + std::to_string(k) + " and "
                          + std::to_string(k + 1) + " are not compatible");
        }
      }
      return targets;
    }

    std::string span_text(Perm const& p, Span const& s) {
      return p.to_string() + " [" + to_string(s.lo) + ", " + to_string(s.hi) + "]";
    }

    // Affine pieces on [lo, hi) before they are assembled into a map.
    struct Affine {
      Rational lo, hi, a, b;
    };

    // (a2, b2) after (a1, b1).
    std::pair<Rational, Rational> then(Rational const& a1, Rational const& b1,
                                       Rational const& a2, Rational const& b2) {
      return {a2 * a1, a2 * b1 + b2};
    }

    // Regions already assigned, as disjoint [lo, hi) keyed by lo.
    class Paint {
     public:
      // The parts of [lo, hi) not yet painted; they are painted on return.
      std::vector<std::pair<Rational, Rational>> claim(Rational const& lo, Rational const& hi) {
        std::vector<std::pair<Rational, Rational>> free;
        Rational cursor = lo;
        auto     it     = painted_.upper_bound(lo);
        if (it != painted_.begin()) {
          auto prev = std::prev(it);
          if (prev->second > cursor) {
            cursor = prev->second;
          }
        }
        for (; it != painted_.end() && it->first < hi && cursor < hi; ++it) {
          if (it->first > cursor) {
            free.emplace_back(cursor, it->first);
          }
          if (it->second > cursor) {
            cursor = it->second;
          }
        }
        if (cursor < hi) {
          free.emplace_back(cursor, hi);
        }
        for (auto const& [a, b] : free) {
          painted_.emplace(a, b);
        }
        return free;
      }

     private:
      std::map<Rational, Rational> painted_;
    };
  }  // namespace

  IntervalTree IntervalTree::build(std::vector<ExactDistribution> const& targets) {
    IntervalTree t;
    t.targets_ = normalise_targets(targets);
    t.depth_   = static_cast<int>(t.targets_.size());
    t.intervals_.emplace(Perm(), Span{kQuarter, kThreeQuarters});
    for (int n = 2; n <= t.depth_; ++n) {
      std::map<Perm, Rational> cursor;
      for (auto const& sigma : all_perms(n)) {
        Rational m = t.targets_[static_cast<std::size_t>(n - 1)].mass(sigma);
        if (sgn(m) == 0) {
          continue;
        }
        Perm parent = restrict(sigma, Side::head);
        auto [it, fresh] = cursor.try_emplace(parent, Rational(0));
        if (fresh) {
          it->second = t.intervals_.at(parent).lo;
        }
        Rational lo = it->second;
        it->second += m / 2;
        t.intervals_.emplace(sigma, Span{lo, it->second});
      }
    }
    return t;
  }

  std::vector<std::string> IntervalTree::check_invariants() const {
    std::vector<std::string> bad;
    for (int n = 1; n <= depth_; ++n) {
      std::vector<std::pair<Span, Perm>> level;
      for (auto const& [p, s] : intervals_) {
        if (p.size() == n) {
          level.emplace_back(s, p);
        }
      }
      std::sort(level.begin(), level.end(),
                [](auto const& x, auto const& y) { return x.first.lo < y.first.lo; });
      Rational cursor = kQuarter;
      for (auto const& [s, p] : level) {
        if (s.lo < cursor) {
          bad.push_back("overlap at " + span_text(p, s));
        } else if (s.lo > cursor) {
          bad.push_back("gap before " + span_text(p, s));
        }
        cursor = s.hi;
        if (n > 1) {
          Span const& parent = intervals_.at(restrict(p, Side::head));
          if (s.lo < parent.lo || s.hi > parent.hi) {
            bad.push_back("not nested in its parent: " + span_text(p, s));
          }
        }
      }
      if (cursor != kThreeQuarters) {
        bad.push_back("level " + std::to_string(n) + " does not reach 3/4");
      }
      for (auto const& [p, m] : targets_[static_cast<std::size_t>(n - 1)].masses()) {
        auto it = intervals_.find(p);
        if (it == intervals_.end() || it->second.length() != m / 2) {
          bad.push_back("length of I_" + p.to_string() + " is not half its mass");
        }
      }
    }
    return bad;
  }

  SeparatorTree SeparatorTree::build(int depth) {
    if (depth < 1) {
      throw Error(ErrorKind::invalid_argument, "separator depth must be >= 1");
    }
    if (depth > caps().separator_depth) {
      throw Error(ErrorKind::cap_exceeded, "separator depth " + std::to_string(depth)
                                               + " exceeds cap "
                                               + std::to_string(caps().separator_depth));
    }
    SeparatorTree s;
    s.depth_ = depth;
    s.intervals_.emplace(Perm(), Span{kQuarter, kThreeQuarters});
    std::map<Rational, Rational> placed{{kQuarter, kThreeQuarters}};
    for (int n = 2; n <= depth; ++n) {
      for (auto const& sigma : all_perms(n)) {
        int      r     = sigma[n - 1];
        Rational lower = kWallLo;
        Rational upper = kWallHi;
        for (int i = 1; i < n; ++i) {
          Span const& anc = s.intervals_.at(sigma.window(0, i));
          if (sigma[i - 1] == r - 1) {
            lower = anc.hi;
          } else if (sigma[i - 1] == r + 1) {
            upper = anc.lo;
          }
        }
        // Largest free gap between lower and upper (leftmost on ties).
        Rational best_lo = lower, best_len = -1, cursor = lower;
        for (auto it = placed.lower_bound(lower); it != placed.end() && it->first < upper; ++it) {
          if (it->first - cursor > best_len) {
            best_len = it->first - cursor;
            best_lo  = cursor;
          }
          cursor = it->second;
        }
        if (upper - cursor > best_len) {
          best_len = upper - cursor;
          best_lo  = cursor;
        }
        Span j{best_lo + best_len / 3, best_lo + 2 * best_len / 3};
        placed.emplace(j.lo, j.hi);
        s.intervals_.emplace(sigma, j);
      }
    }
    return s;
  }

  std::vector<std::string> SeparatorTree::check_order_property() const {
    std::vector<std::string> bad;
    std::vector<std::pair<Span, Perm>> all;
    for (auto const& [p, j] : intervals_) {
      all.emplace_back(j, p);
    }
    std::sort(all.begin(), all.end(),
              [](auto const& x, auto const& y) { return x.first.lo < y.first.lo; });
    Rational cursor = kWallLo;
    for (auto const& [j, p] : all) {
      if (!(j.lo > cursor) || !(j.lo < j.hi)) {
        bad.push_back("no positive gap before " + span_text(p, j));
      }
      cursor = j.hi;
    }
    if (!(cursor < kWallHi)) {
      bad.push_back("no positive gap below 7/8");
    }
    for (auto const& [p, j] : intervals_) {
      std::vector<Rational> reps;
      for (int i = 1; i <= p.size(); ++i) {
        Span const& a = intervals_.at(p.window(0, i));
        reps.push_back((a.lo + a.hi) / 2);
      }
      if (order_pattern(reps) != p) {
        bad.push_back("chain representatives of " + p.to_string() + " are out of order");
      }
    }
    return bad;
  }

  bool CantorMap::excluded(double x) const {
    double e = uncovered_end.get_d();
    return x <= e || x > 1.0 - e;
  }

  CantorMap assemble_truncated_map(IntervalTree const& t, SeparatorTree const& s,
                                   int scale_depth) {
    if (t.depth() != s.depth()) {
      throw Error(ErrorKind::depth_mismatch, "interval tree depth " + std::to_string(t.depth())
                                                 + " differs from separator depth "
                                                 + std::to_string(s.depth()));
    }
    if (scale_depth < 1) {
      throw Error(ErrorKind::invalid_argument, "scale depth must be >= 1");
    }
    if (scale_depth > caps().cantor_scale_depth) {
      throw Error(ErrorKind::cap_exceeded, "scale depth " + std::to_string(scale_depth)
                                               + " exceeds cap "
                                               + std::to_string(caps().cantor_scale_depth));
    }
    int const   depth = t.depth();
    auto const& I     = t.intervals();
    auto const& J     = s.intervals();

    // One slope for every I_sigma -> B_sigma keeps the later steps
    // translations, and makes all B_sigma together small enough that the
    // copies they overwrite lose at most 2^-M.
    Rational slope = power_of_half(scale_depth) / depth;
    for (auto const& [p, span] : I) {
      if (p.size() >= 2) {
        Rational fit = J.at(p).length() / (2 * span.length());
        slope        = std::min(slope, fit);
      }
    }
    std::map<Perm, Rational> b_lo;
    for (auto const& [p, span] : I) {
      if (p.size() >= 2) {
        Span const& j = J.at(p);
        b_lo.emplace(p, (j.lo + j.hi) / 2 - slope * span.length() / 2);
      }
    }
    auto psi_offset = [&](Perm const& p) -> Rational { return b_lo.at(p) - slope * I.at(p).lo; };

    // First step: I_tau -> B_tau for tau in S_2, then B_tau -> B_sigma along
    // the tree.  The deepest B_sigma need no definition.
    std::vector<Affine> base;
    Rational const      half(1, 2);
    for (auto const& [p, span] : I) {
      if (p.size() != 2) {
        continue;
      }
      Rational b = psi_offset(p);
      if (span.lo < half && half < span.hi) {
        base.push_back({span.lo, half, slope, b});
        base.push_back({half, span.hi, slope, b});
      } else {
        base.push_back({span.lo, span.hi, slope, b});
      }
    }
    for (auto const& [p, span] : I) {
      if (p.size() < 2 || p.size() >= depth) {
        continue;
      }
      Perm const& tau = p;
      for (auto const& [q, child] : I) {
        if (q.size() != tau.size() + 1 || restrict(q, Side::head) != tau) {
          continue;
        }
        base.push_back({slope * child.lo + psi_offset(tau), slope * child.hi + psi_offset(tau),
                        Rational(1), psi_offset(q) - psi_offset(tau)});
      }
    }

    Paint               paint;
    std::vector<Affine> pieces;
    Rational            collision(0);
    for (int m = 1; m <= scale_depth; ++m) {
      Rational k = m == 1 ? Rational(1) : 1 / power_of_half(m - 1);  // 2^(m-1)
      for (auto const& piece : base) {
        Rational lo = piece.lo, hi = piece.hi, a = piece.a, b = piece.b;
        if (m > 1) {
          // g_m^{-1} o piece o g_m, with the side of each end fixed by 1/2.
          bool     dom_right = piece.lo >= half;
          Rational img_mid   = a * (lo + hi) / 2 + b;
          bool     img_right = img_mid > half;
          Rational g_b       = dom_right ? Rational(1 - k) : Rational(0);
          Rational gi_b      = img_right ? Rational(1 - 1 / k) : Rational(0);
          auto [a1, b1]      = then(k, g_b, a, b);
          auto [a2, b2]      = then(a1, b1, 1 / k, gi_b);
          a  = a2;
          b  = b2;
          lo = (lo - g_b) / k;
          hi = (hi - g_b) / k;
        }
        Rational kept(0);
        for (auto& [flo, fhi] : paint.claim(lo, hi)) {
          kept += fhi - flo;
          pieces.push_back({flo, fhi, a, b});
        }
        collision += (hi - lo) - kept;
      }
    }

    std::sort(pieces.begin(), pieces.end(),
              [](Affine const& x, Affine const& y) { return x.lo < y.lo; });
    // Unassigned points only occur near 0 and 1.  They are pushed further
    // out rather than fixed, so no two iterates agree on an interval.
    std::vector<Piece> out;
    out.reserve(2 * pieces.size() + 1);
    auto placeholder = [&](Rational const& lo, Rational const& hi) {
      if (lo < half && half < hi) {
        out.push_back({lo, half, half, 0, std::nullopt});
        out.push_back({half, hi, half, half, std::nullopt});
      } else if (hi <= half) {
        out.push_back({lo, hi, half, 0, std::nullopt});
      } else {
        out.push_back({lo, hi, half, half, std::nullopt});
      }
    };
    Rational cursor(0);
    for (auto const& p : pieces) {
      if (p.lo > cursor) {
        placeholder(cursor, p.lo);
      }
      out.push_back({p.lo, p.hi, p.a, p.b, std::nullopt});
      cursor = p.hi;
    }
    if (cursor < 1) {
      placeholder(cursor, 1);
    }
    IntervalMap map("cantor(N=" + std::to_string(depth) + ",M=" + std::to_string(scale_depth)
                        + ")",
                    std::move(out));
    return CantorMap{std::move(map),
                     depth,
                     scale_depth,
                     slope,
                     power_of_half(scale_depth),
                     collision,
                     power_of_half(scale_depth + 1)};
  }

  CantorVerification verify_construction(CantorMap const&                      m,
                                         std::vector<ExactDistribution> const& targets,
                                         std::uint64_t samples, std::uint64_t seed) {
    auto tgt = normalise_targets(targets);
    if (static_cast<int>(tgt.size()) != m.depth) {
      throw Error(ErrorKind::depth_mismatch, "targets do not match the construction depth");
    }
    if (samples < 1) {
      throw Error(ErrorKind::invalid_argument, "need at least one sample");
    }
    int const                               depth = m.depth;
    std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(depth) + 1);
    for (int n = 1; n <= depth; ++n) {
      counts[static_cast<std::size_t>(n)].assign(factorial(n), 0);
    }
    std::uint64_t excluded = 0, ties = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      double x = kernels::sample_point(seed, i);
      if (m.excluded(x)) {
        ++excluded;
        continue;
      }
      std::array<double, kMaxPermLength> orbit{};
      orbit[0] = x;
      for (int k = 1; k < depth; ++k) {
        orbit[static_cast<std::size_t>(k)] = m.map(orbit[static_cast<std::size_t>(k - 1)]);
      }
      try {
        for (int n = 1; n <= depth; ++n) {
          auto p = order_pattern(
              std::span<double const>(orbit.data(), static_cast<std::size_t>(n)));
          ++counts[static_cast<std::size_t>(n)][p.index()];
        }
      } catch (Error const&) {
        ++ties;
      }
    }
    std::uint64_t      kept = samples - excluded - ties;
    CantorVerification v{{}, samples, excluded + ties, true};
    double const       trunc = 2 * power_of_half(m.scale_depth).get_d();
    for (int n = 1; n <= depth; ++n) {
      double dev = 0;
      for (auto const& p : all_perms(n)) {
        double emp = kept == 0 ? 0.0
                               : static_cast<double>(counts[static_cast<std::size_t>(n)][p.index()])
                                     / static_cast<double>(kept);
        dev = std::max(dev, std::abs(emp - tgt[static_cast<std::size_t>(n - 1)].mass(p).get_d()));
      }
      double bound = trunc
                     + 4 * std::sqrt(std::log(2.0 * static_cast<double>(factorial(n)) * depth
                                              / kCantorConfidence)
                                     / static_cast<double>(std::max<std::uint64_t>(kept, 1)));
      bool pass = dev <= bound;
      v.levels.push_back({n, dev, bound, pass});
      v.pass = v.pass && pass;
    }
    return v;
  }

  std::vector<ExactDistribution> uniform_targets(int depth) {
    std::vector<ExactDistribution> out;
    for (int n = 1; n <= depth; ++n) {
      out.push_back(ExactDistribution::uniform(n));
    }
    return out;
  }

}  // namespace orderflow
