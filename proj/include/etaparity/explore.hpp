#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etaparity/congruence.hpp"
#include "etaparity/eta_quotient.hpp"
#include "etaparity/series_gf2.hpp"

namespace etaparity {

/// Odd counts of a progression-indexed coefficient stream. Every report is
/// empirical evidence at a finite truncation.
struct DensityReport {
  struct Window {
    std::size_t start;
    std::size_t end;
    std::size_t odd_count;
    double density;
  };

  std::string target;
  Progression progression;
  std::size_t truncation = 0;  // of the underlying series
  std::size_t length = 0;      // of the addressed stream
  std::vector<Window> windows;
  std::size_t odd_total = 0;
  double overall = 0.0;
};

/// `window_count` equal-width windows over the stream c(A n + B), A n + B < N.
DensityReport odd_density(const EtaSum& target, const Progression& p,
                          std::size_t truncation, std::size_t window_count);

/// Explicit windows [bounds[i], bounds[i+1]) in stream coordinates.
DensityReport odd_density_windows(const EtaSum& target, const Progression& p,
                                  std::size_t truncation,
                                  const std::vector<std::size_t>& bounds);

/// Same, over an already built series.
DensityReport odd_density_windows(const Gf2Series& series, std::string target,
                                  const Progression& p,
                                  const std::vector<std::size_t>& bounds);

/// Columns window_start,window_end,odd_count,density.
std::string to_csv(const DensityReport& report);

struct EvenCandidate {
  Progression progression;
  std::size_t checked;
};

/// Every A*n + B (A <= a_max) whose addressed coefficients below N are all
/// even and number at least `min_hits`, skipping progressions nested in an
/// already reported coarser one. Sorted by (A, B).
std::vector<EvenCandidate> search_even_progressions(const Gf2Series& series,
                                                    std::uint64_t a_max,
                                                    std::size_t min_hits = 200,
                                                    unsigned threads = 1);
std::vector<EvenCandidate> search_even_progressions(const EtaSum& target,
                                                    std::uint64_t a_max,
                                                    std::size_t truncation,
                                                    std::size_t min_hits = 200,
                                                    unsigned threads = 1);

/// Bit assignment for the Ramanujan-Kolberg form; holds an entry for every
/// candidate term, with the leading (1, 0) term set.
struct EpsilonPattern {
  RkParameters params;
  EpsilonMap assignments;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> active_terms() const;
};

/// Solves for the epsilons over GF(2) from the first (terms + 64)
/// coefficients, then checks the solution against every coefficient the
/// budget N can address. std::nullopt when no assignment fits.
std::optional<EpsilonPattern> fit_epsilons(std::uint64_t a, std::uint64_t t,
                                           std::size_t truncation);

/// Solves M x = rhs over GF(2). Rows are packed bit vectors over the
/// columns; free variables are set to zero.
std::optional<std::vector<bool>> solve_gf2(
    std::vector<std::vector<std::uint64_t>> rows, std::vector<bool> rhs,
    std::size_t columns);

}  // namespace etaparity
