#include "orderflow/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "orderflow/error.hpp"

namespace orderflow {

  namespace {
    [[noreturn]] void bad(std::string_view text, std::string_view why) {
      throw Error(ErrorKind::parse_error,
                  "cannot parse number '" + std::string(text) + "': "
                      + std::string(why));
    }

    std::string_view trim(std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
      }
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
      }
      return s;
    }

    bool all_digits(std::string_view s) {
      if (s.empty()) {
        return false;
      }
      for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          return false;
        }
      }
      return true;
    }

    Rational parse_decimal(std::string_view text) {
      std::string_view s   = text;
      bool             neg = false;
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
      }
      long exponent = 0;
      auto epos     = s.find_first_of("eE");
      if (epos != std::string_view::npos) {
        std::string_view e = s.substr(epos + 1);
        bool             eneg = false;
        if (!e.empty() && (e.front() == '-' || e.front() == '+')) {
          eneg = e.front() == '-';
          e.remove_prefix(1);
        }
        if (!all_digits(e) || e.size() > 6) {
          bad(text, "bad exponent");
        }
        exponent = std::stol(std::string(e));
        if (eneg) {
          exponent = -exponent;
        }
        s = s.substr(0, epos);
      }
      std::string      digits;
      auto             dot = s.find('.');
      std::string_view ip  = s.substr(0, dot);
      std::string_view fp
          = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
      if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip))
          || (!fp.empty() && !all_digits(fp))) {
        bad(text, "not a decimal");
      }
      digits.append(ip);
      digits.append(fp);
      exponent -= static_cast<long>(fp.size());
      BigInt num(digits.empty() ? std::string("0") : digits, 10);
      BigInt scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
      Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
      q.canonicalize();
      return neg ? Rational(-q) : q;
    }
  }  // namespace

  Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) {
      bad(text, "empty");
    }
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
      return parse_decimal(s);
    }
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+')) {
      num_digits.remove_prefix(1);
    }
    if (!all_digits(num_digits) || !all_digits(den)) {
      bad(text, "expected p/q with integer p and q");
    }
    BigInt n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
    BigInt d(std::string(den), 10);
    if (d == 0) {
      bad(text, "zero denominator");
    }
    Rational q(n, d);
    q.canonicalize();
    return q;
  }

  std::string to_string(Rational const& q) {
    return q.get_str();
  }

  Rational snap_to_rational(double x, double tol) {
    if (!std::isfinite(x) || !(tol > 0)) {
      throw Error(ErrorKind::invalid_argument, "cannot snap a non-finite value");
    }
    // Continued-fraction convergents of the exact binary value of x; the first
    // one within tol is the simplest such fraction up to semiconvergents.
    Rational exact(x);
    Rational target = exact;
    BigInt   p_prev = 0, q_prev = 1, p = 1, q = 0;
    Rational rest = target;
    for (int iter = 0; iter < 200; ++iter) {
      BigInt a;
      mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
      BigInt p_next = a * p + p_prev;
      BigInt q_next = a * q + q_prev;
      p_prev = p;
      q_prev = q;
      p      = p_next;
      q      = q_next;
      Rational approx(p, q);
      approx.canonicalize();
      Rational err = abs(approx - target);
      if (err.get_d() <= tol || approx == target) {
        return approx;
      }
      rest -= a;
      if (sgn(rest) == 0) {
        return approx;
      }
      rest = 1 / rest;
    }
    return exact;
  }

  int Surd::sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) {
      return sa;
    }
    if (sa == 0 || sa == sb) {
      return sb;
    }
    // Opposite signs: compare a^2 with 2 b^2.
    Rational lhs = a_ * a_;
    Rational rhs = 2 * b_ * b_;
    int      c   = cmp(lhs, rhs);
    return c > 0 ? sa : sb;
  }

  double Surd::to_double() const {
    return a_.get_d() + b_.get_d() * 1.41421356237309504880;
  }

  Surd operator*(Surd const& x, Surd const& y) {
    return Surd(x.a_ * y.a_ + 2 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
  }

  Surd parse_surd(std::string_view text) {
    std::string s;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        s.push_back(c);
      }
    }
    if (s.empty()) {
      bad(text, "empty");
    }
    // Split into signed terms at +/- that are not leading and not exponents.
    std::vector<std::string> terms;
    std::size_t              start = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E'
          && s[i - 1] != '/') {
        terms.push_back(s.substr(start, i - start));
        start = i;
      }
    }
    terms.push_back(s.substr(start));
    Surd result;
    for (std::string term : terms) {
      bool neg = false;
      if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
        neg = term[0] == '-';
        term.erase(0, 1);
      }
      auto pos = term.find("sqrt2");
      Surd t;
      if (pos == std::string::npos) {
        t = Surd(parse_rational(term));
      } else {
        if (pos + 5 != term.size()) {
          bad(text, "sqrt2 must end its term");
        }
        std::string coeff = term.substr(0, pos);
        Rational    b(1);
        if (!coeff.empty()) {
          if (coeff.back() != '*') {
            bad(text, "expected '*' before sqrt2");
          }
          coeff.pop_back();
          b = parse_rational(coeff);
        }
        t = Surd(Rational(0), b);
      }
      result += neg ? -t : t;
    }
    return result;
  }

  std::string to_string(Surd const& x) {
    if (x.is_rational()) {
      return to_string(x.rational_part());
    }
    std::string b = to_string(x.sqrt2_part());
    if (sgn(x.rational_part()) == 0) {
      return b + "*sqrt2";
    }
    std::string out = to_string(x.rational_part());
    if (sgn(x.sqrt2_part()) > 0) {
      out += "+";
    }
    return out + b + "*sqrt2";
  }

}  // namespace orderflow
