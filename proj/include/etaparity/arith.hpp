#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace etaparity {

/// Generalized pentagonal numbers k(3k-1)/2, k in Z, below `limit`, sorted.
std::vector<std::uint64_t> generalized_pentagonal(std::uint64_t limit);

/// Triangular numbers n(n+1)/2, n >= 0, below `limit`, sorted.
std::vector<std::uint64_t> triangular(std::uint64_t limit);

/// Subset of {0, ..., modulus-1}.
class ResidueSet {
 public:
  explicit ResidueSet(std::uint64_t modulus);
  ResidueSet(std::uint64_t modulus, std::span<const std::uint64_t> members);

  std::uint64_t modulus() const { return modulus_; }
  bool contains(std::uint64_t r) const { return present_.at(r); }
  void insert(std::uint64_t r);
  std::vector<std::uint64_t> members() const;
  ResidueSet complement() const;
  std::size_t size() const;

  bool operator==(const ResidueSet&) const = default;

 private:
  std::uint64_t modulus_;
  std::vector<bool> present_;
};

/// { c*g mod m : g generalized pentagonal }.
ResidueSet scaled_pentagonal_residues(std::uint64_t c, std::uint64_t m);

enum class Shape { Pentagonal, Triangular, Square };

struct FormTerm {
  std::int64_t coefficient;
  Shape shape;
};

/// Residues mod m of offset + sum c_i * S_i, each S_i ranging over its shape.
/// At most three terms.
ResidueSet form_residues(std::int64_t offset, std::span<const FormTerm> terms,
                         std::uint64_t m);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

/// Prime factorization with strictly increasing primes.
using Factorization = std::vector<PrimePower>;

/// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Throws std::invalid_argument for n = 0. factorize(1) is empty.
Factorization factorize(std::uint64_t n);

std::uint64_t reconstruct(const Factorization& f);

/// "5 * 59", "7^2", "1".
std::string format_factorization(const Factorization& f);

/// Number of integer pairs (x, y) with x^2 + 3y^2 = s.
std::uint64_t r3_brute(std::uint64_t s);

/// Closed form for s = 1 (mod 6): 0 if a prime = 2 (mod 3) has odd exponent,
/// else 2 * prod (a_i + 1) over primes p_i = 1 (mod 3).
/// Throws std::domain_error outside s = 1 (mod 6).
std::uint64_t r3_formula(std::uint64_t s);

/// Parity of b_8(n) from the factorization of 24n + 7: odd iff exactly one
/// prime has odd exponent and that exponent is 1 mod 4.
struct B8Certificate {
  std::uint64_t n;
  std::uint64_t value;  // 24n + 7
  Factorization factors;
  bool odd;
};

B8Certificate b8_certificate(std::uint64_t n);
bool b8_parity_oracle(std::uint64_t n);

}  // namespace etaparity
