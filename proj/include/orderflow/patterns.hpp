#ifndef ORDERFLOW_PATTERNS_HPP_
#define ORDERFLOW_PATTERNS_HPP_

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "orderflow/error.hpp"
#include "orderflow/perm.hpp"
#include "orderflow/rational.hpp"

namespace orderflow {

  namespace detail {
    template <class Scalar>
    inline bool is_zero(Scalar const& x) {
      if constexpr (std::is_same_v<Scalar, Rational>) {
        return sgn(x) == 0;
      } else {
        return x == 0.0;
      }
    }
    template <class Scalar>
    inline bool is_negative(Scalar const& x) {
      if constexpr (std::is_same_v<Scalar, Rational>) {
        return sgn(x) < 0;
      } else {
        return x < 0.0;
      }
    }
    inline double to_double(Rational const& x) {
      return x.get_d();
    }
    inline double to_double(double x) {
      return x;
    }
  }  // namespace detail

  // A probability distribution on S_n.  Only permutations with nonzero mass
  // are stored.  Scalar is Rational (exact) or double (floating).
  template <class Scalar>
  class Distribution {
   public:
    using scalar_type = Scalar;
    static constexpr bool is_exact = std::is_same_v<Scalar, Rational>;
    static constexpr double kFloatTotalTolerance = 1e-12;

    Distribution() = default;

    // Validates lengths, signs and total.
    Distribution(int n, std::map<Perm, Scalar> mass) : n_(n) {
      if (n < 1) {
        throw Error(ErrorKind::length_too_small, "distribution length must be >= 1");
      }
      Scalar total(0);
      for (auto& [perm, m] : mass) {
        if (perm.size() != n) {
          throw Error(ErrorKind::length_mismatch,
                      "permutation " + perm.to_string() + " has length "
                          + std::to_string(perm.size()) + ", expected " + std::to_string(n));
        }
        if (detail::is_negative(m)) {
          throw Error(ErrorKind::invalid_argument, "negative mass on " + perm.to_string());
        }
        total += m;
      }
      check_total(total);
      for (auto& [perm, m] : mass) {
        if (!detail::is_zero(m)) {
          mass_.emplace(perm, m);
        }
      }
    }

    static Distribution point_mass(Perm const& sigma) {
      return Distribution(sigma.size(), {{sigma, Scalar(1)}});
    }

    static Distribution uniform(int n) {
      std::map<Perm, Scalar> m;
      auto                   perms = all_perms(n);
      Scalar                 each;
      if constexpr (is_exact) {
        each = Rational(1, static_cast<unsigned long>(perms.size()));
      } else {
        each = 1.0 / static_cast<double>(perms.size());
      }
      for (auto const& p : perms) {
        m.emplace(p, each);
      }
      return Distribution(n, std::move(m));
    }

    // Skips the total-mass check (used by samplers that normalise counts).
    static Distribution unchecked(int n, std::map<Perm, Scalar> mass) {
      Distribution d;
      d.n_ = n;
      for (auto& [perm, m] : mass) {
        if (!detail::is_zero(m)) {
          d.mass_.emplace(perm, std::move(m));
        }
      }
      return d;
    }

    int n() const noexcept {
      return n_;
    }

    Scalar mass(Perm const& sigma) const {
      auto it = mass_.find(sigma);
      return it == mass_.end() ? Scalar(0) : it->second;
    }

    std::map<Perm, Scalar> const& masses() const noexcept {
      return mass_;
    }

    std::vector<Perm> support() const {
      std::vector<Perm> out;
      out.reserve(mass_.size());
      for (auto const& [perm, m] : mass_) {
        out.push_back(perm);
      }
      return out;
    }

    Scalar total() const {
      Scalar t(0);
      for (auto const& [perm, m] : mass_) {
        t += m;
      }
      return t;
    }

    friend bool operator==(Distribution const& a, Distribution const& b) {
      return a.n_ == b.n_ && a.mass_ == b.mass_;
    }

   private:
    void check_total(Scalar const& total) const {
      if constexpr (is_exact) {
        if (total != 1) {
          throw Error(ErrorKind::invalid_argument,
                      "total mass is " + to_string(total) + ", expected 1");
        }
      } else {
        if (!(std::abs(total - 1.0) <= kFloatTotalTolerance)) {
          throw Error(ErrorKind::invalid_argument,
                      "total mass is " + std::to_string(total) + ", expected 1");
        }
      }
    }

    int                    n_ = 1;
    std::map<Perm, Scalar> mass_;
  };

  using ExactDistribution = Distribution<Rational>;
  using FloatDistribution = Distribution<double>;

  FloatDistribution to_float(ExactDistribution const& mu);

  template <class Scalar>
  Distribution<Scalar> pushforward(Distribution<Scalar> const& mu, Side side) {
    if (mu.n() < 2) {
      throw Error(ErrorKind::length_too_small, "pushforward needs length >= 2");
    }
    std::map<Perm, Scalar> out;
    for (auto const& [perm, m] : mu.masses()) {
      out[restrict(perm, side)] += m;
    }
    return Distribution<Scalar>::unchecked(mu.n() - 1, std::move(out));
  }

  // Sup-norm distance between two distributions of equal length.
  template <class A, class B>
  double sup_distance(Distribution<A> const& mu, Distribution<B> const& nu) {
    if (mu.n() != nu.n()) {
      throw Error(ErrorKind::length_mismatch, "distributions have different lengths");
    }
    double d = 0;
    for (auto const& [perm, m] : mu.masses()) {
      d = std::max(d, std::abs(detail::to_double(m) - detail::to_double(nu.mass(perm))));
    }
    for (auto const& [perm, m] : nu.masses()) {
      d = std::max(d, std::abs(detail::to_double(m) - detail::to_double(mu.mass(perm))));
    }
    return d;
  }

  inline Rational sup_distance_exact(ExactDistribution const& mu, ExactDistribution const& nu) {
    if (mu.n() != nu.n()) {
      throw Error(ErrorKind::length_mismatch, "distributions have different lengths");
    }
    Rational d(0);
    for (auto const& [perm, m] : mu.masses()) {
      Rational e = abs(m - nu.mass(perm));
      d          = e > d ? e : d;
    }
    for (auto const& [perm, m] : nu.masses()) {
      Rational e = abs(m - mu.mass(perm));
      d          = e > d ? e : d;
    }
    return d;
  }

  inline constexpr double kFloatCompatibilityTolerance = 1e-9;

  // mu has length n, mu_next has length n + 1.
  template <class Scalar>
  bool is_compatible(Distribution<Scalar> const& mu, Distribution<Scalar> const& mu_next) {
    if (mu_next.n() != mu.n() + 1) {
      throw Error(ErrorKind::length_mismatch, "is_compatible needs lengths n and n+1");
    }
    auto head = pushforward(mu_next, Side::head);
    if constexpr (std::is_same_v<Scalar, Rational>) {
      return head == mu;
    } else {
      return sup_distance(head, mu) <= kFloatCompatibilityTolerance;
    }
  }

  // CSV with header "perm,mass".  Masses may be p/q or decimals; both are
  // read exactly.
  ExactDistribution read_distribution_csv(std::istream& in);
  ExactDistribution read_distribution_csv_file(std::string const& path);
  void write_distribution_csv(std::ostream& out, ExactDistribution const& mu);
  void write_distribution_csv(std::ostream& out, FloatDistribution const& mu);

}  // namespace orderflow

#endif  // ORDERFLOW_PATTERNS_HPP_
