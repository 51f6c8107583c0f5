#ifndef ORDERFLOW_RATIONAL_HPP_
#define ORDERFLOW_RATIONAL_HPP_

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace orderflow {

  using Rational = mpq_class;
  using BigInt   = mpz_class;

  // Accepts "p/q", integers, and plain decimals ("0.125", "-3.5e-2").  The
  // decimal forms are converted exactly, never through a double.
  Rational    parse_rational(std::string_view text);
  std::string to_string(Rational const& q);

  // Best rational approximation within tol (continued-fraction convergents).
  Rational snap_to_rational(double x, double tol);

  // Exact element a + b*sqrt(2) of Q(sqrt 2).  Used for points of [0,1]
  // touched by the irrational rotation tails of interval maps.
  class Surd {
   public:
    Surd() = default;
    Surd(Rational a) : a_(std::move(a)) {}  // NOLINT(runtime/explicit)
    Surd(long a) : a_(a) {}                 // NOLINT(runtime/explicit)
    Surd(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static Surd sqrt2() {
      return Surd(Rational(0), Rational(1));
    }

    Rational const& rational_part() const noexcept {
      return a_;
    }
    Rational const& sqrt2_part() const noexcept {
      return b_;
    }
    bool is_rational() const noexcept {
      return sgn(b_) == 0;
    }

    int    sign() const;
    double to_double() const;

    Surd& operator+=(Surd const& o) {
      a_ += o.a_;
      b_ += o.b_;
      return *this;
    }
    Surd& operator-=(Surd const& o) {
      a_ -= o.a_;
      b_ -= o.b_;
      return *this;
    }
    Surd& operator*=(Rational const& q) {
      a_ *= q;
      b_ *= q;
      return *this;
    }
    Surd& operator/=(Rational const& q) {
      a_ /= q;
      b_ /= q;
      return *this;
    }

    friend Surd operator+(Surd x, Surd const& y) {
      return x += y;
    }
    friend Surd operator-(Surd x, Surd const& y) {
      return x -= y;
    }
    friend Surd operator-(Surd x) {
      x.a_ = -x.a_;
      x.b_ = -x.b_;
      return x;
    }
    friend Surd operator*(Surd x, Rational const& q) {
      return x *= q;
    }
    friend Surd operator*(Rational const& q, Surd x) {
      return x *= q;
    }
    friend Surd operator*(Surd const& x, Surd const& y);
    friend Surd operator/(Surd x, Rational const& q) {
      return x /= q;
    }

    friend bool operator==(Surd const& x, Surd const& y) {
      return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend std::strong_ordering operator<=>(Surd const& x, Surd const& y) {
      int s = (x - y).sign();
      return s < 0 ? std::strong_ordering::less
                   : (s > 0 ? std::strong_ordering::greater
                            : std::strong_ordering::equal);
    }

   private:
    Rational a_;
    Rational b_;
  };

  // Text form "a", "b*sqrt2" or "a+b*sqrt2" (a, b rationals); "sqrt2-1" and
  // similar orderings are accepted on input.
  Surd        parse_surd(std::string_view text);
  std::string to_string(Surd const& x);

}  // namespace orderflow

#endif  // ORDERFLOW_RATIONAL_HPP_
