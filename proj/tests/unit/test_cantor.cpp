#include "doctest.h"
#include "orderflow/analysis.hpp"
#include "orderflow/cantor.hpp"
#include "test_support.hpp"

using namespace orderflow;
using namespace testing_support;

namespace {
  Rational Q(char const* s) {
    return parse_rational(s);
  }

  ErrorKind kind_of(std::function<void()> const& fn) {
    try {
      fn();
    } catch (Error const& e) {
      return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::invalid_argument;
  }

  // A compatible sequence from the doubling map, far from uniform.
  std::vector<ExactDistribution> doubling_targets(int depth) {
    std::vector<ExactDistribution> out;
    for (int n = 1; n <= depth; ++n) {
      out.push_back(*exact_distribution(builtin("doubling"), n).exact);
    }
    return out;
  }
}  // namespace

TEST_CASE("interval tree examples") {
  auto t = IntervalTree::build({ExactDistribution(2, {{P("12"), Q("3/5")}, {P("21"), Q("2/5")}})});
  CHECK(t.depth() == 2);
  CHECK(t.intervals().at(P("12")) == Span{Q("1/4"), Q("11/20")});
  CHECK(t.intervals().at(P("21")) == Span{Q("11/20"), Q("3/4")});
  CHECK(t.check_invariants().empty());

  auto u = IntervalTree::build(uniform_targets(3));
  int  level3 = 0;
  for (auto const& [p, s] : u.intervals()) {
    if (p.size() == 3) {
      ++level3;
      CHECK(s.length() == Q("1/12"));
    }
  }
  CHECK(level3 == 6);
  CHECK(u.check_invariants().empty());

  std::vector<ExactDistribution> id;
  for (int n = 1; n <= 4; ++n) {
    id.push_back(ExactDistribution::point_mass(Perm::identity(n)));
  }
  auto c = IntervalTree::build(id);
  CHECK(c.intervals().size() == 4);
  for (auto const& [p, s] : c.intervals()) {
    CHECK(s == Span{Q("1/4"), Q("3/4")});
  }
}

TEST_CASE("interval tree invariants on a skewed target") {
  auto t = IntervalTree::build(doubling_targets(5));
  CHECK(t.check_invariants().empty());
}

TEST_CASE("interval tree rejects incompatible sequences") {
  std::vector<ExactDistribution> bad{ExactDistribution::point_mass(P("12")),
                                     ExactDistribution::point_mass(P("213"))};
  CHECK(kind_of([&] { IntervalTree::build(bad); }) == ErrorKind::incompatible_sequence);
  std::vector<ExactDistribution> skip{ExactDistribution::uniform(2), ExactDistribution::uniform(4)};
  CHECK(kind_of([&] { IntervalTree::build(skip); }) == ErrorKind::incompatible_sequence);
  CHECK(kind_of([] { IntervalTree::build({}); }) == ErrorKind::incompatible_sequence);
}

TEST_CASE("separator tree placement") {
  auto one = SeparatorTree::build(1);
  CHECK(one.intervals().size() == 1);
  CHECK(one.intervals().at(Perm()) == Span{Q("1/4"), Q("3/4")});

  auto two = SeparatorTree::build(2);
  CHECK(two.intervals().at(P("12")) == Span{Q("19/24"), Q("5/6")});
  CHECK(two.intervals().at(P("21")) == Span{Q("1/6"), Q("5/24")});

  for (int n = 1; n <= 6; ++n) {
    auto s = SeparatorTree::build(n);
    std::size_t total = 0;
    for (int k = 1; k <= n; ++k) {
      total += factorial(k);
    }
    CHECK(s.intervals().size() == total);
    CHECK(s.check_order_property().empty());
  }
  CHECK(kind_of([] { SeparatorTree::build(7); }) == ErrorKind::cap_exceeded);
}

TEST_CASE("separator order holds for arbitrary points of the intervals") {
  auto s = SeparatorTree::build(4);
  for (auto const& [p, j] : s.intervals()) {
    // The left third of every interval along the chain, except the last at
    // its right third: positions inside the intervals do not matter.
    std::vector<Rational> reps;
    for (int i = 1; i <= p.size(); ++i) {
      Span const& a = s.intervals().at(p.window(0, i));
      reps.push_back(i % 2 ? Rational(a.lo + a.length() / 3) : Rational(a.hi - a.length() / 5));
    }
    CHECK(order_pattern(reps) == p);
  }
}

TEST_CASE("assembled map realizes the patterns of the tree") {
  auto targets = uniform_targets(3);
  auto t       = IntervalTree::build(targets);
  auto s       = SeparatorTree::build(3);
  auto m       = assemble_truncated_map(t, s, 16);
  CHECK(m.uncovered == Q("1/65536"));
  CHECK(1 - m.uncovered >= 1 - Q("1/32768"));
  CHECK(m.collision <= m.uncovered);

  // Exact orbits from I_sigma and from its scaled copies.
  for (auto const& [p, span] : t.intervals()) {
    Rational x = (span.lo + 2 * span.hi) / 3;
    for (int copy = 1; copy <= 4; ++copy) {
      Rational k = 1;
      for (int c = 1; c < copy; ++c) {
        k *= 2;
      }
      Rational start = x <= Q("1/2") ? Rational(x / k) : Rational(1 - (1 - x) / k);
      auto orbit = iterate(m.map, Surd(start), static_cast<std::size_t>(p.size() - 1));
      CHECK(order_pattern(orbit) == p);
    }
  }

  // The map is piecewise affine, so its pattern distribution is exact; the
  // error is confined to the uncovered and overwritten parts.
  for (int n = 1; n <= 3; ++n) {
    auto mu = *exact_distribution(m.map, n).exact;
    CHECK(sup_distance_exact(mu, targets[static_cast<std::size_t>(n - 1)])
          <= m.uncovered + m.collision);
  }
}

TEST_CASE("truncation error halves with each scale level") {
  auto t    = IntervalTree::build(uniform_targets(3));
  auto s    = SeparatorTree::build(3);
  auto prev = assemble_truncated_map(t, s, 4);
  for (int M = 5; M <= 10; ++M) {
    auto m = assemble_truncated_map(t, s, M);
    CHECK(m.uncovered * 2 == prev.uncovered);
    CHECK(m.collision <= m.uncovered);
    auto d  = sup_distance_exact(*exact_distribution(m.map, 3).exact, uniform_targets(3)[2]);
    CHECK(d <= m.uncovered + m.collision);
    prev = m;
  }
}

TEST_CASE("verification of the construction") {
  auto targets = uniform_targets(3);
  auto m = assemble_truncated_map(IntervalTree::build(targets), SeparatorTree::build(3), 16);
  auto v = verify_construction(m, targets, 100000, 17);
  CHECK(v.pass);
  REQUIRE(v.levels.size() == 3);
  for (auto const& l : v.levels) {
    CHECK(l.deviation <= 0.01);
  }

  // Point mass on 12 is not a flow, and still realizable here.
  std::vector<ExactDistribution> up{ExactDistribution::point_mass(P("12"))};
  auto mu = assemble_truncated_map(IntervalTree::build(up), SeparatorTree::build(2), 12);
  CHECK(verify_construction(mu, up, 20000, 3).pass);

  std::vector<ExactDistribution> trivial{ExactDistribution::point_mass(Perm())};
  auto m1 = assemble_truncated_map(IntervalTree::build(trivial), SeparatorTree::build(1), 8);
  CHECK(verify_construction(m1, trivial, 1000, 1).pass);

  auto skew = doubling_targets(4);
  auto ms   = assemble_truncated_map(IntervalTree::build(skew), SeparatorTree::build(4), 14);
  CHECK(verify_construction(ms, skew, 100000, 5).pass);
}

TEST_CASE("assembly errors") {
  auto t = IntervalTree::build(uniform_targets(3));
  CHECK(kind_of([&] { assemble_truncated_map(t, SeparatorTree::build(2), 8); })
        == ErrorKind::depth_mismatch);
  CHECK(kind_of([&] { assemble_truncated_map(t, SeparatorTree::build(3), 25); })
        == ErrorKind::cap_exceeded);
  auto m = assemble_truncated_map(t, SeparatorTree::build(3), 8);
  CHECK(kind_of([&] { verify_construction(m, uniform_targets(2), 10, 1); })
        == ErrorKind::depth_mismatch);
}
