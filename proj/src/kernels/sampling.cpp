#include <array>
#include <unordered_map>

#include "orderflow/kernels.hpp"

namespace orderflow::kernels {

  namespace {
    std::uint64_t splitmix64(std::uint64_t z) noexcept {
      z += 0x9E3779B97F4A7C15ULL;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      return z ^ (z >> 31);
    }

    using Histogram = std::unordered_map<std::uint64_t, std::uint64_t>;

    // Lehmer index of the orbit pattern, or nothing on a tie.
    bool orbit_index(IntervalMap const& f, int n, double x, std::uint64_t& index) {
      std::array<double, kMaxPermLength> orbit{};
      orbit[0] = x;
      for (int i = 1; i < n; ++i) {
        orbit[static_cast<std::size_t>(i)] = f(orbit[static_cast<std::size_t>(i - 1)]);
      }
      std::uint64_t idx = 0;
      for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j) {
          double a = orbit[static_cast<std::size_t>(i)];
          double b = orbit[static_cast<std::size_t>(j)];
          if (a == b) {
            return false;
          }
          smaller += b < a;
        }
        idx = idx * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(smaller);
      }
      index = idx;
      return true;
    }

    void merge(PatternCounts& out, Histogram const& h, std::uint64_t discarded) {
      for (auto const& [k, c] : h) {
        out.counts[k] += c;
      }
      out.discarded += discarded;
    }
  }  // namespace

  double sample_point(std::uint64_t seed, std::uint64_t i) noexcept {
    std::uint64_t h = splitmix64(splitmix64(seed) ^ (i * 0xD1B54A32D192ED03ULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }

  PatternCounts sample_patterns(IntervalMap const& f, int n, std::uint64_t samples,
                                std::uint64_t seed, Execution exec) {
    if (n < 1 || n > kMaxPermLength) {
      throw Error(ErrorKind::invalid_argument, "pattern length out of range");
    }
    PatternCounts out;
    if (exec == Execution::serial) {
      Histogram     h;
      std::uint64_t discarded = 0;
      for (std::uint64_t i = 0; i < samples; ++i) {
        std::uint64_t idx;
        if (orbit_index(f, n, sample_point(seed, i), idx)) {
          ++h[idx];
        } else {
          ++discarded;
        }
      }
      merge(out, h, discarded);
      return out;
    }
#pragma omp parallel
    {
      Histogram     h;
      std::uint64_t discarded = 0;
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i) {
        std::uint64_t idx;
        if (orbit_index(f, n, sample_point(seed, static_cast<std::uint64_t>(i)), idx)) {
          ++h[idx];
        } else {
          ++discarded;
        }
      }
#pragma omp critical(orderflow_sampling_merge)
      merge(out, h, discarded);
    }
    return out;
  }

}  // namespace orderflow::kernels
