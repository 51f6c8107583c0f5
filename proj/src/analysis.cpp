#include "orderflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "orderflow/caps.hpp"
#include "orderflow/drift.hpp"
#include "orderflow/kernels.hpp"
#include "orderflow/pathposet.hpp"

namespace orderflow {

  namespace {
    struct Cell {
      Surd                  lo, hi;
      std::vector<Rational> a;  // f^j(x) = a[j] x + b[j] on the cell
      std::vector<Surd>     b;
    };

    void check_cell_cap(std::size_t count) {
      if (count > static_cast<std::size_t>(caps().subdivision_intervals)) {
        throw Error(ErrorKind::cap_exceeded,
                    "exact subdivision exceeds " + std::to_string(caps().subdivision_intervals)
                        + " intervals");
      }
    }

    std::vector<Cell> pull_back(std::vector<Cell> const&                   cells,
                                std::vector<IntervalMap::SurdPiece> const& pieces) {
      std::vector<Cell> out;
      out.reserve(cells.size() * 2);
      for (Cell const& c : cells) {
        Rational const& a  = c.a.back();
        Surd const&     b  = c.b.back();
        Surd            y0 = a * c.lo + b;
        Surd            y1 = a * c.hi + b;
        if (sgn(a) < 0) {
          std::swap(y0, y1);
        }
        auto first = std::upper_bound(pieces.begin(), pieces.end(), y0,
                                      [](Surd const& y, auto const& p) { return y < p.hi; });
        for (auto it = first; it != pieces.end() && it->lo < y1; ++it) {
          Surd x0 = (it->lo - b) / a;
          Surd x1 = (it->hi - b) / a;
          if (sgn(a) < 0) {
            std::swap(x0, x1);
          }
          Surd lo = std::max(x0, c.lo);
          Surd hi = std::min(x1, c.hi);
          if (!(lo < hi)) {
            continue;
          }
          Cell next{std::move(lo), std::move(hi), c.a, c.b};
          next.a.push_back(it->a * a);
          next.b.push_back(it->a * b + it->b);
          out.push_back(std::move(next));
        }
        check_cell_cap(out.size());
      }
      return out;
    }

    PatternReport finish_exact(int n, std::map<Perm, Surd> const& mass) {
      std::map<Perm, Rational> exact;
      for (auto const& [p, m] : mass) {
        if (!m.is_rational()) {
          throw Error(ErrorKind::irrational_tail,
                      "pattern " + p.to_string() + " has irrational mass " + to_string(m));
        }
        exact.emplace(p, m.rational_part());
      }
      PatternReport r;
      r.n            = n;
      r.exact        = ExactDistribution(n, std::move(exact));
      r.distribution = to_float(*r.exact);
      for (auto const& [p, m] : r.exact->masses()) {
        r.realized.insert(p);
      }
      return r;
    }

    PatternReport point_report(IntervalMap const& f, Mode const& mode) {
      PatternReport r;
      r.n = 1;
      if (mode.exact) {
        r.exact = ExactDistribution::point_mass(Perm());
      }
      r.distribution = FloatDistribution::point_mass(Perm());
      r.realized     = {Perm()};
      r.samples      = mode.exact ? 0 : mode.samples;
      (void) f;
      return r;
    }

    // The realized sets at lengths 1..report.n, by repeated head restriction.
    std::vector<std::set<Perm>> realized_chain(PatternReport const& report) {
      std::vector<std::set<Perm>> chain(static_cast<std::size_t>(report.n) + 1);
      chain[static_cast<std::size_t>(report.n)] = report.realized;
      for (int k = report.n; k > 1; --k) {
        for (auto const& p : chain[static_cast<std::size_t>(k)]) {
          chain[static_cast<std::size_t>(k - 1)].insert(restrict(p, Side::head));
        }
      }
      return chain;
    }
  }  // namespace

  PatternReport exact_distribution(IntervalMap const& f, int n) {
    if (n < 1) {
      throw Error(ErrorKind::length_too_small, "pattern length must be >= 1");
    }
    auto pieces = f.surd_pieces();
    if (n == 1) {
      return point_report(f, Mode::exact_mode());
    }
    std::vector<Cell> cells{Cell{Surd(0), Surd(1), {Rational(1)}, {Surd(0)}}};
    for (int j = 1; j < n; ++j) {
      cells = pull_back(cells, pieces);
    }
    std::map<Perm, Surd> mass;
    std::vector<Surd>    cuts;
    std::vector<Surd>    values(static_cast<std::size_t>(n));
    for (Cell const& c : cells) {
      cuts.assign({c.lo, c.hi});
      for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          auto const& aj = c.a[static_cast<std::size_t>(j)];
          auto const& ak = c.a[static_cast<std::size_t>(k)];
          auto const& bj = c.b[static_cast<std::size_t>(j)];
          auto const& bk = c.b[static_cast<std::size_t>(k)];
          if (aj == ak) {
            if (bj == bk) {
              throw Error(ErrorKind::degenerate_orbit,
                          "iterates " + std::to_string(j) + " and " + std::to_string(k)
                              + " agree on [" + to_string(c.lo) + ", " + to_string(c.hi) + ")");
            }
            continue;
          }
          Surd x = (bk - bj) / Rational(aj - ak);
          if (c.lo < x && x < c.hi) {
            cuts.push_back(std::move(x));
          }
        }
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        Surd mid = (cuts[s] + cuts[s + 1]) / Rational(2);
        for (int j = 0; j < n; ++j) {
          values[static_cast<std::size_t>(j)]
              = c.a[static_cast<std::size_t>(j)] * mid + c.b[static_cast<std::size_t>(j)];
        }
        mass[order_pattern(values)] += cuts[s + 1] - cuts[s];
      }
    }
    return finish_exact(n, mass);
  }

  PatternReport empirical_distribution(IntervalMap const& f, int n, std::uint64_t samples,
                                       std::uint64_t seed, Execution exec) {
    if (samples < 1) {
      throw Error(ErrorKind::invalid_argument, "need at least one sample");
    }
    if (n < 1) {
      throw Error(ErrorKind::length_too_small, "pattern length must be >= 1");
    }
    if (n == 1) {
      return point_report(f, Mode::empirical(samples, seed, exec));
    }
    auto counts = kernels::sample_patterns(f, n, samples, seed, exec);
    PatternReport r;
    r.n         = n;
    r.samples   = samples;
    r.discarded = counts.discarded;
    std::uint64_t kept = samples - counts.discarded;
    if (kept == 0) {
      throw Error(ErrorKind::degenerate_orbit, "every sampled orbit had a tie");
    }
    std::map<Perm, double> mass;
    for (auto const& [idx, c] : counts.counts) {
      Perm p = Perm::from_index(n, idx);
      mass.emplace(p, static_cast<double>(c) / static_cast<double>(kept));
      r.realized.insert(p);
    }
    r.distribution = FloatDistribution::unchecked(n, std::move(mass));
    return r;
  }

  PatternReport distribution_of(IntervalMap const& f, int n, Mode const& mode) {
    return mode.exact ? exact_distribution(f, n)
                      : empirical_distribution(f, n, mode.samples, mode.seed, mode.exec);
  }

  Subgraph pattern_graph(IntervalMap const& f, int n, Mode const& mode) {
    auto report = distribution_of(f, n + 1, mode);
    return Subgraph(n, std::vector<Perm>(report.realized.begin(), report.realized.end()));
  }

  std::optional<DiPath> partially_driftless_in(Subgraph const& h, Execution exec) {
    return find_loop(
        h,
        [](DriftProfile const& prof, Perm const& base) {
          for (int j = 0; j < base.size(); ++j) {
            if (diagonal_drift(prof, base, j) == Sign::zero) {
              return true;
            }
          }
          return false;
        },
        exec);
  }

  std::vector<EntropyRow> entropy_estimate(IntervalMap const& f, int n_max, Mode const& mode) {
    if (n_max < 2 || n_max > 10) {
      throw Error(ErrorKind::invalid_argument, "entropy needs 2 <= n_max <= 10");
    }
    auto chain = realized_chain(distribution_of(f, n_max, mode));
    std::vector<EntropyRow> rows;
    for (int n = 2; n <= n_max; ++n) {
      auto count = static_cast<std::uint64_t>(chain[static_cast<std::size_t>(n)].size());
      rows.push_back({n, count, std::log(static_cast<double>(count)) / (n - 1)});
    }
    return rows;
  }

  ForbiddenReport forbidden_patterns(IntervalMap const& f, int n, Mode const& mode) {
    auto            chain = realized_chain(distribution_of(f, n, mode));
    ForbiddenReport r{n, {}, {}};
    for (auto const& p : all_perms(n)) {
      if (chain[static_cast<std::size_t>(n)].count(p) == 0) {
        r.forbidden.insert(p);
      }
    }
    for (auto const& p : r.forbidden) {
      bool basic = true;
      for (int k = 2; basic && k < n; ++k) {
        for (int s = 0; basic && s + k <= n; ++s) {
          if (chain[static_cast<std::size_t>(k)].count(p.window(s, k)) == 0) {
            basic = false;
          }
        }
      }
      if (basic) {
        r.basic.insert(p);
      }
    }
    return r;
  }

  std::vector<ExclusionVerdict> exclusion_type_test(IntervalMap const& f, int n, int m_max,
                                                    Execution exec) {
    if (n < 1 || m_max <= n) {
      throw Error(ErrorKind::invalid_argument, "exclusion test needs 1 <= n < m_max");
    }
    if (m_max > 8) {
      throw Error(ErrorKind::cap_exceeded, "exclusion test brute force is limited to m <= 8");
    }
    auto                          chain = realized_chain(exact_distribution(f, m_max));
    std::set<Perm> const&         edges = chain[static_cast<std::size_t>(n + 1)];
    std::vector<ExclusionVerdict> out;
    for (int m = n + 1; m <= m_max; ++m) {
      auto preimage = kernels::scan_permutations(
          m,
          [&](Perm const& sigma) {
            for (int s = 0; s + n + 1 <= m; ++s) {
              if (edges.count(sigma.window(s, n + 1)) == 0) {
                return false;
              }
            }
            return true;
          },
          exec);
      std::set<Perm> lifted;
      for (auto idx : preimage) {
        lifted.insert(Perm::from_index(m, idx));
      }
      auto const&      real = chain[static_cast<std::size_t>(m)];
      ExclusionVerdict v{m, false, {}, {}};
      std::set_difference(lifted.begin(), lifted.end(), real.begin(), real.end(),
                          std::inserter(v.missing, v.missing.end()));
      std::set_difference(real.begin(), real.end(), lifted.begin(), lifted.end(),
                          std::inserter(v.extra, v.extra.end()));
      v.equal = v.missing.empty() && v.extra.empty();
      out.push_back(std::move(v));
    }
    return out;
  }

  std::vector<GrowthRow> growth_check(DiPath const& loop, int k_max, std::optional<int> j,
                                      Execution exec) {
    require_loop(loop);
    if (k_max < 1) {
      throw Error(ErrorKind::invalid_argument, "k_max must be >= 1");
    }
    DriftMatrix d = loop_drift(loop);
    if (j) {
      if (*j < 0 || *j >= d.n()) {
        throw Error(ErrorKind::invalid_argument, "drift index out of range");
      }
      if (d.diagonal(*j) != Sign::zero) {
        throw Error(ErrorKind::invalid_argument,
                    "Drift(" + std::to_string(*j + 1) + ") of the loop is not zero");
      }
    } else {
      bool any = false;
      for (int i = 0; i < d.n(); ++i) {
        any = any || d.diagonal(i) == Sign::zero;
      }
      if (!any) {
        throw Error(ErrorKind::invalid_argument, "the loop has no zero diagonal drift entry");
      }
    }
    std::vector<GrowthRow> rows;
    BigInt                 kf = 1;
    for (int k = 1; k <= k_max; ++k) {
      kf *= k;
      DiPath p = loop.power(static_cast<std::size_t>(k));
      int    m = p.element_count();
      BigInt count;
      if (m <= 9) {
        count = static_cast<unsigned long>(lifts(p, exec).size());
      } else {
        count = count_linear_extensions(build_poset(p));
      }
      rows.push_back({k, m, count, kf, count >= kf});
    }
    return rows;
  }

  Balayage balayage(IntervalMap const& f, std::uint64_t samples, std::uint64_t seed) {
    Balayage b{samples, 0, 0};
    for (std::uint64_t i = 0; i < samples; ++i) {
      double x = kernels::sample_point(seed, i);
      double y = f(x);
      b.above += y > x;
      b.below += y < x;
    }
    return b;
  }

}  // namespace orderflow
