#include "etaparity/explore.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace etaparity {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

bool test_bit(const std::vector<std::uint64_t>& row, std::size_t i) {
  return (row[i / 64] >> (i % 64)) & 1U;
}

}  // namespace

DensityReport odd_density_windows(const Gf2Series& series, std::string target,
                                  const Progression& p,
                                  const std::vector<std::size_t>& bounds) {
  const auto stream = extract_progression(series, p);
  DensityReport r;
  r.target = std::move(target);
  r.progression = p;
  r.truncation = series.truncation();
  r.length = stream.truncation();
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const auto lo = bounds[i];
    const auto hi = bounds[i + 1];
    if (lo > hi || hi > r.length) {
      throw std::invalid_argument("density window [" + std::to_string(lo) +
                                  ", " + std::to_string(hi) +
                                  ") is outside the stream of length " +
                                  std::to_string(r.length));
    }
    const auto odd = stream.odd_count(lo, hi);
    r.windows.push_back({lo, hi, odd, ratio(odd, hi - lo)});
  }
  r.odd_total = stream.odd_count_prefix(r.length);
  r.overall = ratio(r.odd_total, r.length);
  return r;
}

DensityReport odd_density_windows(const EtaSum& target, const Progression& p,
                                  std::size_t truncation,
                                  const std::vector<std::size_t>& bounds) {
  return odd_density_windows(build(target, truncation), to_string(target), p,
                             bounds);
}

DensityReport odd_density(const EtaSum& target, const Progression& p,
                          std::size_t truncation, std::size_t window_count) {
  if (window_count == 0 || truncation < window_count) {
    throw std::invalid_argument("need N >= window_count >= 1");
  }
  const auto series = build(target, truncation);
  const auto length = (truncation - p.residue + p.modulus - 1) / p.modulus;
  if (p.residue >= truncation || length < window_count) {
    throw std::invalid_argument("progression stream shorter than window count");
  }
  std::vector<std::size_t> bounds;
  for (std::size_t i = 0; i <= window_count; ++i) {
    bounds.push_back(i * length / window_count);
  }
  return odd_density_windows(series, to_string(target), p, bounds);
}

std::string to_csv(const DensityReport& report) {
  std::string s = "window_start,window_end,odd_count,density\n";
  char buf[128];
  for (const auto& w : report.windows) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%.6f\n", w.start, w.end,
                  w.odd_count, w.density);
    s += buf;
  }
  return s;
}

std::vector<EvenCandidate> search_even_progressions(const Gf2Series& series,
                                                    std::uint64_t a_max,
                                                    std::size_t min_hits,
                                                    unsigned threads) {
  if (a_max < 2) throw std::invalid_argument("A_max must be at least 2");
  const std::size_t n = series.truncation();
  const std::uint64_t top = std::min<std::uint64_t>(a_max, n);
  const auto odd = series.support();

  // hit[A][B]: some A*k + B below N has an odd coefficient.
  std::vector<std::vector<char>> hit(top + 1);
  auto scan = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t a = first; a <= top; a += stride) {
      auto& row = hit[a];
      row.assign(a, 0);
      for (auto e : odd) row[e % a] = 1;
    }
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(top)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(scan, 1 + w, workers);
    scan(1, workers);
  }

  std::vector<EvenCandidate> found;
  for (std::uint64_t a = 1; a <= top; ++a) {
    for (std::uint64_t b = 0; b < a; ++b) {
      if (hit[a][b]) continue;
      const std::size_t checked = (n - 1 - b) / a + 1;
      if (checked < min_hits) continue;
      const Progression p(a, b);
      const bool nested = std::any_of(found.begin(), found.end(), [&](const auto& c) {
        return c.progression.contains(p);
      });
      if (!nested) found.push_back({p, checked});
    }
  }
  return found;
}

std::vector<EvenCandidate> search_even_progressions(const EtaSum& target,
                                                    std::uint64_t a_max,
                                                    std::size_t truncation,
                                                    std::size_t min_hits,
                                                    unsigned threads) {
  return search_even_progressions(build(target, truncation), a_max, min_hits,
                                  threads);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>>
EpsilonPattern::active_terms() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& [key, on] : assignments) {
    if (on) out.push_back(key);
  }
  return out;
}

std::optional<std::vector<bool>> solve_gf2(
    std::vector<std::vector<std::uint64_t>> rows, std::vector<bool> rhs,
    std::size_t columns) {
  if (rows.size() != rhs.size()) {
    throw std::invalid_argument("row and right-hand side counts differ");
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < columns && rank < rows.size(); ++c) {
    std::size_t sel = rank;
    while (sel < rows.size() && !test_bit(rows[sel], c)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    std::swap(rhs[sel], rhs[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && test_bit(rows[r], c)) {
        for (std::size_t w = 0; w < rows[r].size(); ++w) rows[r][w] ^= rows[rank][w];
        rhs[r] = rhs[r] != rhs[rank];
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (rhs[r]) return std::nullopt;
  }
  std::vector<bool> x(columns, false);
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = rhs[r];
  return x;
}

std::optional<EpsilonPattern> fit_epsilons(std::uint64_t a, std::uint64_t t,
                                           std::size_t truncation) {
  const auto params = rk_parameters(a, t);
  const auto terms = params.candidate_terms();
  const std::pair<std::uint64_t, std::uint64_t> lead{1, 0};

  const std::size_t available = (truncation - 1) / a + 1;
  const std::size_t equations = std::min(available, terms.size() + 64);

  const auto lhs = u_operator(build(params.lhs_spec(), a * (equations - 1) + 1), a);
  auto target = lhs.truncated(equations);
  std::vector<Gf2Series> columns;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> unknowns;
  for (const auto& key : terms) {
    const auto col = build(params.term(key.first, key.second), equations);
    if (key == lead) {
      target = add(target, col);
    } else {
      columns.push_back(col);
      unknowns.push_back(key);
    }
  }

  const std::size_t words = (unknowns.size() + 63) / 64 + 1;
  std::vector<std::vector<std::uint64_t>> rows(equations,
                                               std::vector<std::uint64_t>(words, 0));
  std::vector<bool> rhs(equations);
  for (std::size_t i = 0; i < equations; ++i) {
    for (std::size_t c = 0; c < unknowns.size(); ++c) {
      if (columns[c].coeff(i)) rows[i][c / 64] |= std::uint64_t{1} << (c % 64);
    }
    rhs[i] = target.coeff(i);
  }
  const auto solution = solve_gf2(std::move(rows), std::move(rhs), unknowns.size());
  if (!solution) return std::nullopt;

  EpsilonPattern pattern{params, {}};
  pattern.assignments[lead] = true;
  for (std::size_t c = 0; c < unknowns.size(); ++c) {
    pattern.assignments[unknowns[c]] = (*solution)[c];
  }
  if (!verify_rk(a, t, pattern.assignments, truncation).passed()) {
    return std::nullopt;
  }
  return pattern;
}

}  // namespace etaparity
