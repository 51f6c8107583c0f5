#ifndef ORDERFLOW_PERM_HPP_
#define ORDERFLOW_PERM_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orderflow/caps.hpp"
#include "orderflow/error.hpp"

namespace orderflow {

  // A permutation of [n] in one-line notation: word[i] is the rank (1-based)
  // of the i-th position.  Positions are 0-based throughout the library.
  class Perm {
   public:
    // The unique element of S_1.
    Perm() : n_(1) {
      word_[0] = 1;
    }

    static Perm from_word(std::span<int const> word);
    static Perm from_word(std::initializer_list<int> word) {
      return from_word(std::span<int const>(word.begin(), word.size()));
    }
    static Perm identity(int n);
    static Perm decreasing(int n);
    // Lexicographic rank among S_n, 0-based.
    static Perm from_index(int n, std::uint64_t index);
    // "2413" for n <= 9, "10,1,2,..." otherwise (commas also accepted for n <= 9).
    static Perm parse(std::string_view text);

    int size() const noexcept {
      return n_;
    }
    int operator[](int position) const noexcept {
      return word_[static_cast<std::size_t>(position)];
    }
    int position_of(int rank) const noexcept;

    std::uint64_t index() const noexcept;
    std::string   to_string() const;
    Perm          inverse() const;
    // Order pattern of the consecutive positions [start, start + length).
    Perm window(int start, int length) const;

    friend bool operator==(Perm const&, Perm const&) = default;
    friend std::strong_ordering operator<=>(Perm const& a, Perm const& b) {
      if (a.n_ != b.n_) {
        return a.n_ <=> b.n_;
      }
      return a.word_ <=> b.word_;
    }

    std::size_t hash() const noexcept;

   private:
    static void check_length(int n);

    std::array<std::uint8_t, kMaxPermLength> word_{};
    std::uint8_t                             n_ = 0;

    friend Perm pattern_of_ranks(std::span<int const> values);
  };

  struct PermHash {
    std::size_t operator()(Perm const& p) const noexcept {
      return p.hash();
    }
  };

  // Order pattern of ranks that are already pairwise distinct ints.
  Perm pattern_of_ranks(std::span<int const> values);

  // σ with σ(i) = rank of values[i]; throws DuplicateValue on ties.
  template <class T, class Less = std::less<>>
  Perm order_pattern(std::span<T const> values, Less less = {}) {
    int n = static_cast<int>(values.size());
    if (n < 1) {
      throw Error(ErrorKind::length_too_small, "order_pattern needs at least one value");
    }
    if (n > kMaxPermLength) {
      throw Error(ErrorKind::cap_exceeded, "order_pattern length exceeds the representation limit");
    }
    std::array<int, kMaxPermLength> ranks{};
    for (int i = 0; i < n; ++i) {
      int r = 1;
      for (int j = 0; j < n; ++j) {
        if (j == i) {
          continue;
        }
        bool lt = less(values[j], values[i]);
        if (!lt && !less(values[i], values[j])) {
          throw Error(ErrorKind::duplicate_value,
                      "values at positions " + std::to_string(i) + " and "
                          + std::to_string(j) + " compare equal");
        }
        r += lt ? 1 : 0;
      }
      ranks[i] = r;
    }
    return pattern_of_ranks(std::span<int const>(ranks.data(), static_cast<std::size_t>(n)));
  }

  template <class T, class Less = std::less<>>
  Perm order_pattern(std::vector<T> const& values, Less less = {}) {
    return order_pattern(std::span<T const>(values), less);
  }

  enum class Side { head, tail };

  // head: drop the last position (ρ); tail: drop the first (ρ').  Re-ranked.
  Perm restrict(Perm const& sigma, Side side);

  std::uint64_t     factorial(int n);
  std::vector<Perm> all_perms(int n);

}  // namespace orderflow

template <>
struct std::hash<orderflow::Perm> {
  std::size_t operator()(orderflow::Perm const& p) const noexcept {
    return p.hash();
  }
};

#endif  // ORDERFLOW_PERM_HPP_
