#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace etaparity {

/// Arithmetic progression A*n + B with 0 <= B < A.
struct Progression {
  std::uint64_t modulus = 1;
  std::uint64_t residue = 0;

  Progression() = default;
  Progression(std::uint64_t a, std::uint64_t b);

  std::uint64_t at(std::uint64_t n) const { return modulus * n + residue; }
  /// True if every term of `inner` is also a term of this progression.
  bool contains(const Progression& inner) const;
  bool operator==(const Progression&) const = default;
};

/// Truncated power series over GF(2), stored as packed 64-bit words.
///
/// Only the coefficients of q^0 .. q^(truncation-1) are known. Reading past
/// the truncation throws std::out_of_range instead of returning zero, so an
/// unknown coefficient can never be mistaken for an even one. Bits at or
/// above the truncation inside the last word are always zero.
class Gf2Series {
 public:
  static Gf2Series zero(std::size_t truncation);
  static Gf2Series identity(std::size_t truncation);
  static Gf2Series from_support(std::span<const std::uint64_t> exponents,
                                std::size_t truncation);
  /// Builds from raw words; bits at or above `truncation` are cleared.
  static Gf2Series from_words(std::vector<std::uint64_t> words,
                              std::size_t truncation);

  std::size_t truncation() const { return truncation_; }
  bool coeff(std::size_t n) const;
  /// Number of odd coefficients among q^0 .. q^(x-1).
  std::size_t odd_count_prefix(std::size_t x) const;
  /// Number of odd coefficients in [begin, end).
  std::size_t odd_count(std::size_t begin, std::size_t end) const;
  std::vector<std::uint64_t> support() const;
  bool is_zero() const;

  /// Same coefficients, truncation lowered to min(n, truncation()).
  Gf2Series truncated(std::size_t n) const;

  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const Gf2Series&) const = default;

 private:
  Gf2Series(std::vector<std::uint64_t> words, std::size_t truncation);
  void clear_tail();

  std::vector<std::uint64_t> words_;
  std::size_t truncation_ = 0;
};

Gf2Series add(const Gf2Series& a, const Gf2Series& b);

/// Truncated product. Uses the sparse kernel when either factor has at most
/// 4*sqrt(N) odd coefficients, word-level carry-less schoolbook otherwise.
Gf2Series mul(const Gf2Series& a, const Gf2Series& b);

/// a * (sum of q^e for e in support), truncated to min(a, support_truncation).
Gf2Series mul_sparse(const Gf2Series& a,
                     std::span<const std::uint64_t> support,
                     std::size_t support_truncation);

/// a / d where d = sum of q^e over `support` and 0 is in the support.
/// Linear recurrence against the support, resolved 64 coefficients at a time.
Gf2Series div_sparse(const Gf2Series& a,
                     std::span<const std::uint64_t> support,
                     std::size_t support_truncation);

/// Throws std::domain_error when the constant term is 0.
Gf2Series inverse(const Gf2Series& a);

/// a^e via Frobenius: a^(2^i) = dilate(a, 2^i), one multiply per set bit.
Gf2Series pow(const Gf2Series& a, std::uint64_t e);

/// q -> q^d. Result truncation is d*truncation, capped at `cap` when given.
Gf2Series dilate(const Gf2Series& a, std::uint64_t d,
                 std::size_t cap = static_cast<std::size_t>(-1));

/// Multiplies by q^k; truncation grows by k.
Gf2Series shift(const Gf2Series& a, std::size_t k);

/// sum a(d*n) q^n; truncation ceil(N / d).
Gf2Series u_operator(const Gf2Series& a, std::uint64_t d);

/// sum a(A*n + B) q^n over every A*n + B below the truncation.
Gf2Series extract_progression(const Gf2Series& a, const Progression& p);

}  // namespace etaparity
