#include "etaparity/congruence.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <charconv>
#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"

namespace etaparity {

namespace {

using SeriesSource =
    std::function<std::shared_ptr<const Gf2Series>(const EtaSum&, std::size_t)>;

// Coefficients of `s` at step*n + start for n < count.
Gf2Series addressed_stream(const Gf2Series& s, std::uint64_t step,
                           std::uint64_t start, std::size_t count) {
  std::vector<std::uint64_t> support;
  for (std::size_t n = 0; n < count; ++n) {
    if (s.coeff(step * n + start)) support.push_back(n);
  }
  return Gf2Series::from_support(support, count);
}

std::uint64_t start_index(const Progression& p, std::int64_t offset) {
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(p.residue) + offset);
}

VerificationReport verify_with(const CongruenceClaim& claim,
                               std::size_t truncation,
                               const SeriesSource& source) {
  claim.validate();
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t n = addressable_count(claim.lhs.progression, claim.offset, truncation);
  if (claim.relation == Relation::Equal) {
    n = std::min(n, addressable_count(claim.rhs->progression, 0, truncation));
  }
  if (n == 0) {
    throw std::invalid_argument("truncation " + std::to_string(truncation) +
                                " is too small to check any index of " +
                                claim.name);
  }

  const auto lhs_start = start_index(claim.lhs.progression, claim.offset);
  const auto lhs_len = claim.lhs.progression.modulus * (n - 1) + lhs_start + 1;
  const auto lhs_series = source(claim.lhs.series, lhs_len);
  auto diff = addressed_stream(*lhs_series, claim.lhs.progression.modulus,
                               lhs_start, n);
  if (claim.relation == Relation::Equal) {
    const auto& rhs = *claim.rhs;
    const auto rhs_len = rhs.progression.modulus * (n - 1) + rhs.progression.residue + 1;
    const auto rhs_series = source(rhs.series, rhs_len);
    diff = add(diff, addressed_stream(*rhs_series, rhs.progression.modulus,
                                      rhs.progression.residue, n));
  }

  VerificationReport report;
  report.name = claim.name;
  report.checked = n;
  report.truncation = truncation;
  report.mismatches = diff.support();
  report.millis = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return report;
}

std::uint64_t inverse_mod(std::uint64_t x, std::uint64_t m) {
  std::int64_t r0 = static_cast<std::int64_t>(m);
  std::int64_t r1 = static_cast<std::int64_t>(x % m);
  std::int64_t s0 = 0;
  std::int64_t s1 = 1;
  while (r1 != 0) {
    const auto q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) {
    throw std::invalid_argument(std::to_string(x) + " is not invertible mod " +
                                std::to_string(m));
  }
  const auto sm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((s0 % sm) + sm) % sm);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto bar = line.find('|', start);
    out.push_back(trim(line.substr(start, bar == std::string_view::npos
                                              ? std::string_view::npos
                                              : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

}  // namespace

void CongruenceClaim::validate() const {
  if (static_cast<std::int64_t>(lhs.progression.residue) + offset < 0) {
    throw std::invalid_argument("claim " + name +
                                " addresses a negative index at n = 0");
  }
  if (relation == Relation::Equal && !rhs) {
    throw std::invalid_argument("EQUAL claim " + name + " has no rhs");
  }
  if (relation == Relation::Even && rhs) {
    throw std::invalid_argument("EVEN claim " + name + " must not have an rhs");
  }
}

std::shared_ptr<const Gf2Series> SeriesCache::get(const EtaSum& sum) {
  const auto key = to_string(sum);
  std::promise<std::shared_ptr<const Gf2Series>> promise;
  Entry entry;
  bool owner = false;
  {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      entry = promise.get_future().share();
      entries_.emplace(key, entry);
      owner = true;
    } else {
      entry = it->second;
    }
  }
  if (owner) {
    try {
      promise.set_value(std::make_shared<const Gf2Series>(build(sum, capacity_)));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return entry.get();
}

std::size_t addressable_count(const Progression& p, std::int64_t offset,
                              std::size_t truncation) {
  const auto start = static_cast<std::int64_t>(p.residue) + offset;
  if (start < 0) throw std::invalid_argument("negative start index");
  const auto s = static_cast<std::uint64_t>(start);
  if (s >= truncation) return 0;
  return (truncation - 1 - s) / p.modulus + 1;
}

VerificationReport verify(const CongruenceClaim& claim, std::size_t truncation) {
  return verify_with(claim, truncation, [](const EtaSum& sum, std::size_t len) {
    return std::make_shared<const Gf2Series>(build(sum, len));
  });
}

VerificationReport verify(const CongruenceClaim& claim, std::size_t truncation,
                          SeriesCache& cache) {
  if (cache.capacity() < truncation) {
    throw std::invalid_argument("series cache capacity below truncation");
  }
  return verify_with(claim, truncation, [&cache](const EtaSum& sum, std::size_t) {
    return cache.get(sum);
  });
}

std::vector<VerificationReport> verify_all(
    const std::vector<CongruenceClaim>& claims, std::size_t truncation,
    unsigned threads) {
  SeriesCache cache(truncation);
  std::vector<VerificationReport> reports(claims.size());
  std::vector<std::exception_ptr> errors(claims.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < claims.size(); i = next++) {
      try {
        reports[i] = verify(claims[i], truncation, cache);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = std::max<std::size_t>(
      1, std::min<std::size_t>(threads, claims.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

std::vector<std::uint64_t> mismatch_positions(const Gf2Series& a,
                                              const Gf2Series& b) {
  return add(a, b).support();
}

std::vector<std::uint64_t> mismatch_positions(const CongruenceClaim& claim,
                                              std::size_t truncation) {
  if (claim.relation != Relation::Equal) {
    throw std::invalid_argument("mismatch_positions needs an EQUAL claim");
  }
  return verify(claim, truncation).mismatches;
}

std::int64_t RkParameters::term_exponent(std::uint64_t d, std::uint64_t j) const {
  return static_cast<std::int64_t>(a * t / d) - 24 * static_cast<std::int64_t>(j);
}

EtaQuotientSpec RkParameters::term(std::uint64_t d, std::uint64_t j) const {
  const auto e = term_exponent(d, j);
  if (e < 0) {
    throw std::invalid_argument("term (" + std::to_string(d) + ", " +
                                std::to_string(j) + ") has negative exponent");
  }
  EtaQuotientSpec spec;
  spec.shift = d * j;
  if (e > 0) spec.denominator.push_back({d, static_cast<std::uint64_t>(e)});
  return spec;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>>
RkParameters::candidate_terms() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t d = 1; d <= a; ++d) {
    if (a % d != 0) continue;
    for (std::uint64_t j = 0; j <= k / d; ++j) {
      if (term_exponent(d, j) >= 0) out.emplace_back(d, j);
    }
  }
  return out;
}

EtaQuotientSpec RkParameters::lhs_spec() const {
  EtaQuotientSpec spec = multipartition_spec(t);
  spec.shift = a * k - b;
  return spec;
}

RkParameters rk_parameters(std::uint64_t a, std::uint64_t t) {
  if (a == 0 || t == 0 || a % 2 == 0 || t % 2 == 0) {
    throw std::invalid_argument("a and t must be positive odd integers");
  }
  if (a % 3 == 0 && t % 3 != 0) {
    throw std::invalid_argument("3 | a requires 3 | t");
  }
  RkParameters p{a, t, 0, 0};
  if (a > 1) {
    p.b = t % 3 == 0 ? (t / 3 % a) * inverse_mod(8, a) % a
                     : (t % a) * inverse_mod(24, a) % a;
  }
  const auto num = t * (a * a - 1);
  const auto den = 24 * a;
  p.k = (num + den - 1) / den;
  return p;
}

CongruenceClaim rk_claim(std::uint64_t a, std::uint64_t t,
                         const EpsilonMap& eps) {
  const auto p = rk_parameters(a, t);
  EtaSum rhs;
  for (const auto& [key, on] : eps) {
    const auto [d, j] = key;
    if (d == 0 || a % d != 0) {
      throw std::invalid_argument("epsilon key d = " + std::to_string(d) +
                                  " does not divide a = " + std::to_string(a));
    }
    if (p.term_exponent(d, j) < 0) {
      throw std::invalid_argument("epsilon key (" + std::to_string(d) + ", " +
                                  std::to_string(j) +
                                  ") gives a negative power of f_" +
                                  std::to_string(d));
    }
    if (j > p.k / d) {
      throw std::invalid_argument("epsilon key (" + std::to_string(d) + ", " +
                                  std::to_string(j) + ") exceeds j <= k/d");
    }
    if (on) rhs.push_back(p.term(d, j));
  }
  CongruenceClaim claim;
  claim.name = "rk/a" + std::to_string(a) + "/t" + std::to_string(t);
  claim.lhs = {{p.lhs_spec()}, Progression(a, 0)};
  // An empty right side is the zero series.
  if (rhs.empty()) {
    claim.relation = Relation::Even;
  } else {
    claim.relation = Relation::Equal;
    claim.rhs = ClaimSide{rhs, Progression(1, 0)};
  }
  claim.source = "Ramanujan-Kolberg form, a=" + std::to_string(a) +
                 " t=" + std::to_string(t);
  return claim;
}

VerificationReport verify_rk(std::uint64_t a, std::uint64_t t,
                             const EpsilonMap& eps, std::size_t truncation) {
  return verify(rk_claim(a, t, eps), truncation);
}

CongruenceClaim b200_p17_claim(std::uint64_t r) {
  if (r != 2 && r != 4) throw std::invalid_argument("residue must be 2 or 4");
  CongruenceClaim c;
  c.name = "almost/b200/5n+" + std::to_string(r);
  c.lhs = {{regular_partition_spec(200)}, Progression(125, 25 * r - 26)};
  c.relation = Relation::Equal;
  c.rhs = ClaimSide{{multipartition_spec(17)}, Progression(5, r)};
  c.source = "b200 vs p17, matches outside a density-zero set";
  return c;
}

Progression parse_progression(std::string_view text) {
  const auto s = trim(text);
  auto fail = [&](std::size_t pos, const std::string& what) -> Progression {
    throw ParseError("progression '" + s + "': " + what + " at position " +
                         std::to_string(pos),
                     pos);
  };
  std::size_t pos = 0;
  std::uint64_t a = 1;
  if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), a);
    if (ec != std::errc()) return fail(0, "bad modulus");
    pos = static_cast<std::size_t>(ptr - s.data());
  }
  while (pos < s.size() && s[pos] == ' ') ++pos;
  if (pos >= s.size() || s[pos] != 'n') return fail(pos, "expected 'n'");
  ++pos;
  while (pos < s.size() && s[pos] == ' ') ++pos;
  std::uint64_t b = 0;
  if (pos < s.size()) {
    if (s[pos] != '+') return fail(pos, "expected '+'");
    ++pos;
    while (pos < s.size() && s[pos] == ' ') ++pos;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), b);
    if (ec != std::errc()) return fail(pos, "bad residue");
    pos = static_cast<std::size_t>(ptr - s.data());
    if (pos != s.size()) return fail(pos, "unexpected trailing input");
  }
  try {
    return Progression(a, b);
  } catch (const std::invalid_argument& e) {
    return fail(0, e.what());
  }
}

std::string to_string(const Progression& p) {
  return std::to_string(p.modulus) + "n+" + std::to_string(p.residue);
}

std::vector<CongruenceClaim> parse_catalog(std::string_view text) {
  std::vector<CongruenceClaim> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto line = text.substr(start, nl == std::string_view::npos
                                             ? std::string_view::npos
                                             : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    auto where = [&](const std::string& what) {
      return "catalog line " + std::to_string(line_no) + ": " + what;
    };
    const auto f = split_fields(stripped);
    if (f.size() != 8) {
      throw std::invalid_argument(where("expected 8 fields, found " +
                                        std::to_string(f.size())));
    }
    try {
      CongruenceClaim c;
      c.name = f[0];
      c.lhs = {parse_eta_sum(f[1]), parse_progression(f[2])};
      auto [ptr, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), c.offset);
      if (ec != std::errc() || ptr != f[3].data() + f[3].size()) {
        throw std::invalid_argument("bad offset '" + f[3] + "'");
      }
      if (f[4] == "EVEN") {
        c.relation = Relation::Even;
        if (f[5] != "-" || f[6] != "-") {
          throw std::invalid_argument("EVEN claims take '-' for the rhs fields");
        }
      } else if (f[4] == "EQUAL") {
        c.relation = Relation::Equal;
        c.rhs = ClaimSide{parse_eta_sum(f[5]), parse_progression(f[6])};
      } else {
        throw std::invalid_argument("unknown relation '" + f[4] + "'");
      }
      c.source = f[7];
      c.validate();
      out.push_back(std::move(c));
    } catch (const std::exception& e) {
      throw std::invalid_argument(where(e.what()));
    }
  }
  return out;
}

std::string format_claim(const CongruenceClaim& c) {
  std::string s = c.name + " | " + to_string(c.lhs.series) + " | " +
                  to_string(c.lhs.progression) + " | " + std::to_string(c.offset) +
                  " | ";
  if (c.relation == Relation::Even) {
    s += "EVEN | - | -";
  } else {
    s += "EQUAL | " + to_string(c.rhs->series) + " | " +
         to_string(c.rhs->progression);
  }
  return s + " | " + c.source;
}

const std::vector<CongruenceClaim>& catalog() {
  static const std::vector<CongruenceClaim> claims = parse_catalog(catalog_text());
  return claims;
}

std::vector<CongruenceClaim> filter_claims(
    const std::vector<CongruenceClaim>& claims, const std::string& pattern) {
  std::vector<CongruenceClaim> out;
  for (const auto& c : claims) {
    if (fnmatch(pattern.c_str(), c.name.c_str(), 0) == 0) out.push_back(c);
  }
  return out;
}

std::string to_record(const VerificationReport& report, bool with_timing) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["checked"] = report.checked;
  j["truncation"] = report.truncation;
  j["passed"] = report.passed();
  j["mismatches"] = report.mismatches;
  if (with_timing) j["millis"] = report.millis;
  return j.dump();
}

}  // namespace etaparity
