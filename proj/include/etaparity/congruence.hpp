#pragma once

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "etaparity/eta_quotient.hpp"
#include "etaparity/series_gf2.hpp"

namespace etaparity {

enum class Relation { Even, Equal };

/// A coefficient stream: the coefficients of `series` at A*n + B.
struct ClaimSide {
  EtaSum series;
  Progression progression;
};

/// Parity assertion on the lhs stream at A*n + B + offset (n >= 0):
/// either every coefficient is even, or it matches the rhs stream termwise.
struct CongruenceClaim {
  std::string name;
  ClaimSide lhs;
  std::int64_t offset = 0;
  Relation relation = Relation::Even;
  std::optional<ClaimSide> rhs;
  std::string source;

  /// Throws std::invalid_argument if an index can be negative or an
  /// EQUAL claim lacks its rhs.
  void validate() const;
};

struct VerificationReport {
  std::string name;
  std::size_t checked = 0;
  std::size_t truncation = 0;
  std::vector<std::uint64_t> mismatches;
  double millis = 0.0;

  bool passed() const { return mismatches.empty(); }
};

/// Shares built series between claims. Every series is built once at the
/// cache capacity; later lookups are read-only.
class SeriesCache {
 public:
  explicit SeriesCache(std::size_t capacity) : capacity_(capacity) {}

  std::size_t capacity() const { return capacity_; }
  std::shared_ptr<const Gf2Series> get(const EtaSum& sum);

 private:
  using Entry = std::shared_future<std::shared_ptr<const Gf2Series>>;
  std::size_t capacity_;
  std::mutex mutex_;
  std::map<std::string, Entry> entries_;
};

/// Number of n >= 0 whose index A*n + start is below `truncation`.
std::size_t addressable_count(const Progression& p, std::int64_t offset,
                              std::size_t truncation);

/// Checks the claim on every index both sides can address below N, and
/// reports all mismatching n. Throws std::invalid_argument if N is too small
/// to check a single index.
VerificationReport verify(const CongruenceClaim& claim, std::size_t truncation);
VerificationReport verify(const CongruenceClaim& claim, std::size_t truncation,
                          SeriesCache& cache);

/// Verifies claims on `threads` workers; reports come back in input order.
std::vector<VerificationReport> verify_all(
    const std::vector<CongruenceClaim>& claims, std::size_t truncation,
    unsigned threads);

/// Positions n < common truncation where the two series differ.
std::vector<std::uint64_t> mismatch_positions(const Gf2Series& a,
                                              const Gf2Series& b);
/// Mismatching n of an EQUAL claim at budget N.
std::vector<std::uint64_t> mismatch_positions(const CongruenceClaim& claim,
                                              std::size_t truncation);

/// Shape of the identity q^k sum p_t(a n + b) q^n = sum eps q^{dj} / f_d^e.
struct RkParameters {
  std::uint64_t a;
  std::uint64_t t;
  std::uint64_t b;  // residue of the progression on p_t
  std::uint64_t k;  // power of q on the left

  /// Exponent a*t/d - 24*j of the (d, j) term; negative when not allowed.
  std::int64_t term_exponent(std::uint64_t d, std::uint64_t j) const;
  /// q^{dj} / f_d^{at/d - 24j}.
  EtaQuotientSpec term(std::uint64_t d, std::uint64_t j) const;
  /// Every (d, j) with d | a, 0 <= j <= k/d and nonnegative exponent,
  /// ordered by d then j.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> candidate_terms() const;
  /// The left side as a series whose U(a) image is the identity's lhs:
  /// q^{a k - b} / f_1^t.
  EtaQuotientSpec lhs_spec() const;
};

/// a, t odd and positive; 3 | t whenever 3 | a.
RkParameters rk_parameters(std::uint64_t a, std::uint64_t t);

using EpsilonMap = std::map<std::pair<std::uint64_t, std::uint64_t>, bool>;

/// The identity as an EQUAL claim. Throws std::invalid_argument for a set
/// entry whose exponent is negative or that is not a candidate term.
CongruenceClaim rk_claim(std::uint64_t a, std::uint64_t t,
                         const EpsilonMap& eps);

VerificationReport verify_rk(std::uint64_t a, std::uint64_t t,
                             const EpsilonMap& eps, std::size_t truncation);

/// b_200(25(5n + r) - 26) against p_17(5n + r), r in {2, 4}.
CongruenceClaim b200_p17_claim(std::uint64_t r);

/// Parsing and printing of `An+B` progressions.
Progression parse_progression(std::string_view text);
std::string to_string(const Progression& p);

/// One claim per line:
/// name | lhs | progression | offset | EVEN/EQUAL | rhs | rhs-progression | citation
/// with `-` for the rhs fields of EVEN claims. '#' starts a comment line.
std::vector<CongruenceClaim> parse_catalog(std::string_view text);
std::string format_claim(const CongruenceClaim& claim);

/// The built-in claim catalog, parsed from the embedded data file.
const std::vector<CongruenceClaim>& catalog();
std::string_view catalog_text();

/// Claims whose name matches the shell-style glob `pattern`.
std::vector<CongruenceClaim> filter_claims(
    const std::vector<CongruenceClaim>& claims, const std::string& pattern);

/// One JSON object per line with fields in a fixed order:
/// name, checked, truncation, passed, mismatches[, millis].
std::string to_record(const VerificationReport& report, bool with_timing);

}  // namespace etaparity
