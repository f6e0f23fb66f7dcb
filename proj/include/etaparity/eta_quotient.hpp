#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "etaparity/series_gf2.hpp"

namespace etaparity {

/// f_index^exponent, where f_j = prod_{i >= 1} (1 - q^{j i}).
struct EtaFactor {
  std::uint64_t index;
  std::uint64_t exponent;
  bool operator==(const EtaFactor&) const = default;
};

/// q^shift * prod f_a^r / prod f_g^s.
///
/// Indices are distinct within each side and every exponent is positive;
/// validate() enforces both.
struct EtaQuotientSpec {
  std::vector<EtaFactor> numerator;
  std::vector<EtaFactor> denominator;
  std::uint64_t shift = 0;

  void validate() const;
  bool operator==(const EtaQuotientSpec&) const = default;
};

/// A sum of eta-quotients, used for the right-hand side of identities such
/// as 1/f1^25 + q/f1 + 1/f5^5.
using EtaSum = std::vector<EtaQuotientSpec>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses `q^k * f{a}^{r} * ... / f{g}^{s} * ...`; `^1`, `q^0` and the
/// numerator `1` may be omitted or written out. Throws ParseError.
EtaQuotientSpec parse_eta_quotient(std::string_view text);

/// Parses terms joined by `+`.
EtaSum parse_eta_sum(std::string_view text);

/// Canonical text form, e.g. "q^2 * f28 / f1" or "1 / f1^5".
std::string to_string(const EtaQuotientSpec& spec);
std::string to_string(const EtaSum& sum);

/// Mod 2 normal form: every factor has exponent one, using f_j^2 = f_{2j}
/// and cancelling factors common to both sides.
struct ReducedQuotient {
  std::vector<std::uint64_t> numerator;
  std::vector<std::uint64_t> denominator;
  std::uint64_t shift = 0;
  bool operator==(const ReducedQuotient&) const = default;
};

ReducedQuotient reduce_mod2(const EtaQuotientSpec& spec);

/// Sorted exponents j*g, g generalized pentagonal, below `truncation`.
std::vector<std::uint64_t> euler_support(std::uint64_t j, std::size_t truncation);

/// f_j mod 2 to `truncation` terms.
Gf2Series euler_f(std::uint64_t j, std::size_t truncation);

/// Expansion of the quotient mod 2 to `truncation` terms.
Gf2Series build(const EtaQuotientSpec& spec, std::size_t truncation);
Gf2Series build(const EtaSum& sum, std::size_t truncation);

/// b_m(n) mod 2: f_m / f_1.
Gf2Series regular_partition_series(std::uint64_t m, std::size_t truncation);
/// p_t(n) mod 2: 1 / f_1^t.
Gf2Series multipartition_series(std::uint64_t t, std::size_t truncation);

EtaQuotientSpec regular_partition_spec(std::uint64_t m);
EtaQuotientSpec multipartition_spec(std::uint64_t t);

/// Sufficient lacunarity condition sum r_i / a_i >= sum s_j g_j, evaluated
/// exactly on the spec as written (not on its mod 2 reduction).
bool cmsz_lacunary_mod2(const EtaQuotientSpec& spec);

}  // namespace etaparity
