#include "orderflow/patterns.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace orderflow {

  FloatDistribution to_float(ExactDistribution const& mu) {
    std::map<Perm, double> m;
    for (auto const& [perm, q] : mu.masses()) {
      m.emplace(perm, q.get_d());
    }
    return FloatDistribution::unchecked(mu.n(), std::move(m));
  }

  namespace {
    std::string strip(std::string s) {
      while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
        s.pop_back();
      }
      std::size_t i = 0;
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
        ++i;
      }
      return s.substr(i);
    }
  }  // namespace

  ExactDistribution read_distribution_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip(line) != "perm,mass") {
      throw Error(ErrorKind::parse_error, "distribution CSV must start with header 'perm,mass'");
    }
    std::map<Perm, Rational> mass;
    int                      n      = 0;
    int                      lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      line = strip(line);
      if (line.empty()) {
        continue;
      }
      // The permutation itself may contain commas (n >= 10); the mass is
      // always the final field.
      auto comma = line.rfind(',');
      if (comma == std::string::npos) {
        throw Error(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": expected perm,mass");
      }
      Perm     p = Perm::parse(strip(line.substr(0, comma)));
      Rational q = parse_rational(line.substr(comma + 1));
      if (n == 0) {
        n = p.size();
      } else if (p.size() != n) {
        throw Error(ErrorKind::length_mismatch,
                    "line " + std::to_string(lineno) + ": permutation length differs");
      }
      if (mass.count(p) != 0) {
        throw Error(ErrorKind::parse_error,
                    "line " + std::to_string(lineno) + ": repeated permutation " + p.to_string());
      }
      mass.emplace(p, q);
    }
    if (n == 0) {
      throw Error(ErrorKind::parse_error, "distribution CSV has no rows");
    }
    return ExactDistribution(n, std::move(mass));
  }

  ExactDistribution read_distribution_csv_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error(ErrorKind::invalid_argument, "cannot open " + path);
    }
    return read_distribution_csv(in);
  }

  void write_distribution_csv(std::ostream& out, ExactDistribution const& mu) {
    out << "perm,mass\n";
    for (auto const& [perm, q] : mu.masses()) {
      out << perm.to_string() << ',' << to_string(q) << '\n';
    }
  }

  void write_distribution_csv(std::ostream& out, FloatDistribution const& mu) {
    out << "perm,mass\n";
    for (auto const& [perm, x] : mu.masses()) {
      std::ostringstream ss;
      ss.precision(12);
      ss << x;
      out << perm.to_string() << ',' << ss.str() << '\n';
    }
  }

}  // namespace orderflow
