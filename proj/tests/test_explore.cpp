#include "doctest.h"

#include <set>
#include <utility>
#include <vector>

#include "etaparity/congruence.hpp"
#include "etaparity/eta_quotient.hpp"
#include "etaparity/explore.hpp"

using namespace etaparity;

namespace {

using Pairs = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

Pairs as_pairs(const std::vector<EvenCandidate>& found) {
  Pairs out;
  for (const auto& c : found) out.emplace_back(c.progression.modulus, c.progression.residue);
  return out;
}

EtaSum sum(const char* text) { return parse_eta_sum(text); }

}  // namespace

TEST_CASE("odd density examples") {
  const auto f1 = odd_density(sum("f1"), Progression(1, 0), 1000000, 10);
  CHECK(f1.overall < 0.002);
  CHECK(f1.length == 1000000);
  CHECK(f1.windows.size() == 10);

  const auto p = odd_density(sum("1 / f1"), Progression(1, 0), 1000000, 10);
  CHECK(p.overall > 0.49);
  CHECK(p.overall < 0.51);

  const auto b10 = odd_density(sum("f10 / f1"), Progression(7, 3), 1000000, 10);
  CHECK(b10.overall >= 0.45);
  CHECK(b10.overall <= 0.55);
  CHECK(b10.length == (1000000 - 3 + 6) / 7);
}

TEST_CASE("density windows are consistent") {
  const auto r = odd_density(sum("f5 / f1"), Progression(3, 1), 10000, 7);
  std::size_t total = 0;
  std::size_t prev_end = 0;
  for (const auto& w : r.windows) {
    CHECK(w.start == prev_end);
    CHECK(w.odd_count <= w.end - w.start);
    CHECK(w.density >= 0.0);
    CHECK(w.density <= 1.0);
    total += w.odd_count;
    prev_end = w.end;
  }
  CHECK(prev_end == r.length);
  CHECK(total == r.odd_total);

  const auto series = build(sum("f5 / f1"), 10000);
  const auto stream = extract_progression(series, Progression(3, 1));
  CHECK(r.odd_total == stream.odd_count_prefix(stream.truncation()));

  CHECK_THROWS_AS(odd_density(sum("f1"), Progression(1, 0), 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(odd_density(sum("f1"), Progression(1, 0), 5, 6), std::invalid_argument);
  CHECK_THROWS_AS(odd_density_windows(sum("f1"), Progression(1, 0), 100, {0, 200}),
                  std::invalid_argument);
}

TEST_CASE("csv output") {
  const auto r = odd_density_windows(sum("f1"), Progression(1, 0), 10, {0, 5, 10});
  CHECK(to_csv(r) ==
        "window_start,window_end,odd_count,density\n"
        "0,5,3,0.600000\n"
        "5,10,2,0.400000\n");
}

TEST_CASE("b40 density windows do not grow") {
  const auto r = odd_density(sum("f40 / f1"), Progression(1, 0), 1000000, 10);
  REQUIRE(r.windows.size() == 10);
  for (const auto& w : r.windows) CHECK(w.density <= r.windows.front().density + 0.005);
}

TEST_CASE("search rediscovers the known even progressions") {
  const auto b40 = search_even_progressions(sum("f40 / f1"), 25, 100000);
  CHECK(as_pairs(b40) == Pairs{{25, 9}, {25, 19}});

  const auto b11 = search_even_progressions(sum("f11 / f1"), 22, 100000);
  CHECK(as_pairs(b11) == Pairs{{22, 2}, {22, 8}, {22, 12}, {22, 14}, {22, 16}});

  CHECK(search_even_progressions(sum("1 / f1"), 20, 100000).empty());
  CHECK_THROWS_AS(search_even_progressions(sum("f1"), 1, 100), std::invalid_argument);
}

TEST_CASE("search output is independent of the thread count") {
  const auto series = build(sum("f11 / f1"), 100000);
  const auto one = search_even_progressions(series, 60, 200, 1);
  const auto four = search_even_progressions(series, 60, 200, 4);
  CHECK(as_pairs(one) == as_pairs(four));
}

TEST_CASE("search skips nested progressions and honours min_hits") {
  const auto series = build(sum("f40 / f1"), 100000);
  const auto found = search_even_progressions(series, 50, 200);
  for (const auto& c : found) {
    for (const auto& d : found) {
      if (&c != &d) CHECK_FALSE(c.progression.contains(d.progression));
    }
  }
  // (50, B) with B = 9 or 19 mod 25 are nested, so never reported.
  for (const auto& c : found) {
    if (c.progression.modulus == 50) {
      CHECK(c.progression.residue % 25 != 9);
      CHECK(c.progression.residue % 25 != 19);
    }
  }

  // Nothing passes a min_hits above the addressable count.
  CHECK(search_even_progressions(series, 25, 100000 / 25 + 1).empty());
}

TEST_CASE("search results re-verify as EVEN claims") {
  for (const char* spec : {"f40 / f1", "f11 / f1", "f8 / f1"}) {
    const auto target = sum(spec);
    for (const auto& c : search_even_progressions(target, 30, 100000)) {
      CongruenceClaim claim;
      claim.name = spec;
      claim.lhs = {target, c.progression};
      claim.relation = Relation::Even;
      const auto r = verify(claim, 100000);
      CHECK(r.passed());
      CHECK(r.checked == c.checked);
    }
  }
}

TEST_CASE("no even progressions when 2^j < m0 <= 13") {
  // m even: j >= 1.
  for (std::uint64_t m0 : {3, 5, 7, 9, 11, 13}) {
    for (std::uint64_t pw = 2; pw < m0; pw *= 2) {
      const auto m = pw * m0;
      const auto found = search_even_progressions(regular_partition_series(m, 100000), 30);
      CHECK_MESSAGE(found.empty(), "m = " << m);
    }
  }
}

TEST_CASE("solve_gf2") {
  // x0 + x1 = 1, x1 = 1  ->  x0 = 0, x1 = 1
  const auto x = solve_gf2({{0b11}, {0b10}}, {true, true}, 2);
  REQUIRE(x);
  CHECK(*x == std::vector<bool>{false, true});
  // Inconsistent: x0 = 0 and x0 = 1.
  CHECK_FALSE(solve_gf2({{0b1}, {0b1}}, {false, true}, 1));
  // Free variable set to zero.
  const auto free = solve_gf2({{0b01}}, {true}, 2);
  REQUIRE(free);
  CHECK(*free == std::vector<bool>{true, false});
}

TEST_CASE("fit_epsilons examples") {
  const auto f5 = fit_epsilons(5, 1, 100000);
  REQUIRE(f5);
  CHECK(f5->assignments == EpsilonMap{{{1, 0}, true}, {{5, 0}, true}});

  const auto f25 = fit_epsilons(25, 1, 100000);
  REQUIRE(f25);
  CHECK(f25->active_terms() == Pairs{{1, 0}, {1, 1}, {5, 0}});
  CHECK(f25->assignments.at({25, 0}) == false);

  const auto f29 = fit_epsilons(29, 1, 100000);
  REQUIRE(f29);
  CHECK(f29->active_terms() == Pairs{{1, 0}, {1, 1}, {29, 0}});

  for (const auto& [key, on] : f25->assignments) {
    CHECK(f25->params.term_exponent(key.first, key.second) >= 0);
  }
  CHECK_THROWS_AS(fit_epsilons(9, 1, 1000), std::invalid_argument);
}

TEST_CASE("fitted patterns survive doubling the truncation") {
  for (std::uint64_t a : {5, 7, 11, 13, 17, 19, 23, 25, 29}) {
    const auto fit = fit_epsilons(a, 1, 50000);
    REQUIRE_MESSAGE(fit, "a = " << a);
    CHECK(fit->assignments.at({1, 0}));
    CHECK_MESSAGE(verify_rk(a, 1, fit->assignments, 100000).passed(), "a = " << a);
  }
}
