#include "orderflow/perm.hpp"

#include <algorithm>
#include <numeric>

namespace orderflow {

  void Perm::check_length(int n) {
    if (n < 1) {
      throw Error(ErrorKind::length_too_small, "permutation length must be at least 1");
    }
    if (n > kMaxPermLength || n > caps().perm_length) {
      throw Error(ErrorKind::cap_exceeded,
                  "permutation length " + std::to_string(n) + " exceeds cap "
                      + std::to_string(std::min(kMaxPermLength, caps().perm_length)));
    }
  }

  Perm Perm::from_word(std::span<int const> word) {
    int n = static_cast<int>(word.size());
    check_length(n);
    std::array<bool, kMaxPermLength + 1> seen{};
    Perm                                 p;
    p.n_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) {
      int r = word[static_cast<std::size_t>(i)];
      if (r < 1 || r > n || seen[static_cast<std::size_t>(r)]) {
        throw Error(ErrorKind::invalid_argument,
                    "word is not a permutation of [" + std::to_string(n) + "]");
      }
      seen[static_cast<std::size_t>(r)] = true;
      p.word_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(r);
    }
    return p;
  }

  Perm Perm::identity(int n) {
    check_length(n);
    Perm p;
    p.n_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) {
      p.word_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i + 1);
    }
    return p;
  }

  Perm Perm::decreasing(int n) {
    check_length(n);
    Perm p;
    p.n_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) {
      p.word_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(n - i);
    }
    return p;
  }

  Perm Perm::from_index(int n, std::uint64_t index) {
    check_length(n);
    if (index >= factorial(n)) {
      throw Error(ErrorKind::invalid_argument, "permutation index out of range");
    }
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);
    Perm p;
    p.n_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) {
      std::uint64_t f = factorial(n - 1 - i);
      auto          k = static_cast<std::size_t>(index / f);
      index %= f;
      p.word_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(pool[k]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return p;
  }

  Perm Perm::parse(std::string_view text) {
    std::vector<int> word;
    if (text.find(',') != std::string_view::npos) {
      std::size_t start = 0;
      while (start <= text.size()) {
        auto        comma = text.find(',', start);
        auto        token = text.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start);
        std::string t(token);
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
          throw Error(ErrorKind::parse_error, "bad permutation '" + std::string(text) + "'");
        }
        word.push_back(std::stoi(t));
        if (comma == std::string_view::npos) {
          break;
        }
        start = comma + 1;
      }
    } else {
      for (char c : text) {
        if (c < '1' || c > '9') {
          throw Error(ErrorKind::parse_error, "bad permutation '" + std::string(text) + "'");
        }
        word.push_back(c - '0');
      }
    }
    if (word.empty()) {
      throw Error(ErrorKind::parse_error, "empty permutation");
    }
    try {
      return from_word(word);
    } catch (Error const& e) {
      if (e.kind() == ErrorKind::invalid_argument) {
        throw Error(ErrorKind::parse_error, "'" + std::string(text) + "' is not a permutation");
      }
      throw;
    }
  }

  int Perm::position_of(int rank) const noexcept {
    for (int i = 0; i < n_; ++i) {
      if (word_[static_cast<std::size_t>(i)] == rank) {
        return i;
      }
    }
    return -1;
  }

  std::uint64_t Perm::index() const noexcept {
    std::uint64_t idx = 0;
    for (int i = 0; i < n_; ++i) {
      int smaller = 0;
      for (int j = i + 1; j < n_; ++j) {
        smaller += word_[static_cast<std::size_t>(j)] < word_[static_cast<std::size_t>(i)];
      }
      idx += static_cast<std::uint64_t>(smaller) * factorial(n_ - 1 - i);
    }
    return idx;
  }

  std::string Perm::to_string() const {
    std::string out;
    for (int i = 0; i < n_; ++i) {
      if (n_ > 9 && i > 0) {
        out.push_back(',');
      }
      out += std::to_string(word_[static_cast<std::size_t>(i)]);
    }
    return out;
  }

  Perm Perm::inverse() const {
    Perm p = *this;
    for (int i = 0; i < n_; ++i) {
      p.word_[static_cast<std::size_t>(word_[static_cast<std::size_t>(i)] - 1)]
          = static_cast<std::uint8_t>(i + 1);
    }
    return p;
  }

  Perm Perm::window(int start, int length) const {
    if (start < 0 || length < 1 || start + length > n_) {
      throw Error(ErrorKind::invalid_argument, "window out of range");
    }
    std::array<int, kMaxPermLength> vals{};
    for (int i = 0; i < length; ++i) {
      vals[static_cast<std::size_t>(i)] = word_[static_cast<std::size_t>(start + i)];
    }
    return pattern_of_ranks(std::span<int const>(vals.data(), static_cast<std::size_t>(length)));
  }

  std::size_t Perm::hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^ n_;
    for (int i = 0; i < n_; ++i) {
      h = (h ^ word_[static_cast<std::size_t>(i)]) * 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

  Perm pattern_of_ranks(std::span<int const> values) {
    int n = static_cast<int>(values.size());
    if (n < 1 || n > kMaxPermLength) {
      throw Error(ErrorKind::invalid_argument, "pattern length out of range");
    }
    Perm p;
    p.n_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) {
      int r = 1;
      for (int j = 0; j < n; ++j) {
        r += values[static_cast<std::size_t>(j)] < values[static_cast<std::size_t>(i)];
      }
      p.word_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(r);
    }
    return p;
  }

  Perm restrict(Perm const& sigma, Side side) {
    int n = sigma.size();
    if (n < 2) {
      throw Error(ErrorKind::length_too_small, "restrict needs a permutation of length >= 2");
    }
    return side == Side::head ? sigma.window(0, n - 1) : sigma.window(1, n - 1);
  }

  std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) {
      f *= static_cast<std::uint64_t>(i);
    }
    return f;
  }

  namespace {
    void check_length_for_enumeration(int n) {
      (void) Perm::identity(n);
    }
  }  // namespace

  std::vector<Perm> all_perms(int n) {
    check_length_for_enumeration(n);
    std::vector<int>  w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    std::vector<Perm> out;
    out.reserve(factorial(n));
    do {
      out.push_back(pattern_of_ranks(w));
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
  }

}  // namespace orderflow
