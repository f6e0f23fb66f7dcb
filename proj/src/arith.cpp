#include "etaparity/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace etaparity {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    constexpr std::uint64_t kBatch = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const auto d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

std::vector<std::uint64_t> shape_values(Shape shape, std::uint64_t m) {
  std::vector<std::uint64_t> out;
  switch (shape) {
    case Shape::Pentagonal:
      // k(3k-1)/2 mod m depends on k mod 2m; k ranges over all of Z.
      out.push_back(0);
      for (std::uint64_t k = 1; k < 2 * m; ++k) {
        out.push_back(static_cast<std::uint64_t>(
            static_cast<u128>(k) * (3 * k - 1) / 2 % m));
      }
      break;
    case Shape::Triangular:
      for (std::uint64_t k = 0; k < 2 * m; ++k) {
        out.push_back(static_cast<std::uint64_t>(
            static_cast<u128>(k) * (k + 1) / 2 % m));
      }
      break;
    case Shape::Square:
      for (std::uint64_t k = 0; k < m; ++k) out.push_back(mulmod(k, k, m));
      break;
  }
  return out;
}

std::uint64_t reduce_mod(std::int64_t v, std::uint64_t m) {
  const auto sm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((v % sm) + sm) % sm);
}

}  // namespace

std::vector<std::uint64_t> generalized_pentagonal(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit > 0) out.push_back(0);
  for (std::uint64_t k = 1; k * (3 * k - 1) / 2 < limit; ++k) {
    out.push_back(k * (3 * k - 1) / 2);
    if (k * (3 * k + 1) / 2 < limit) out.push_back(k * (3 * k + 1) / 2);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint64_t> triangular(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n * (n + 1) / 2 < limit; ++n) {
    out.push_back(n * (n + 1) / 2);
  }
  return out;
}

ResidueSet::ResidueSet(std::uint64_t modulus)
    : modulus_(modulus), present_(modulus, false) {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
}

ResidueSet::ResidueSet(std::uint64_t modulus,
                       std::span<const std::uint64_t> members)
    : ResidueSet(modulus) {
  for (auto r : members) insert(r);
}

void ResidueSet::insert(std::uint64_t r) {
  if (r >= modulus_) {
    throw std::out_of_range("residue " + std::to_string(r) +
                            " not below modulus " + std::to_string(modulus_));
  }
  present_[r] = true;
}

std::vector<std::uint64_t> ResidueSet::members() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < modulus_; ++r) {
    if (present_[r]) out.push_back(r);
  }
  return out;
}

ResidueSet ResidueSet::complement() const {
  ResidueSet c(modulus_);
  for (std::uint64_t r = 0; r < modulus_; ++r) c.present_[r] = !present_[r];
  return c;
}

std::size_t ResidueSet::size() const {
  return static_cast<std::size_t>(
      std::count(present_.begin(), present_.end(), true));
}

ResidueSet scaled_pentagonal_residues(std::uint64_t c, std::uint64_t m) {
  const FormTerm term{static_cast<std::int64_t>(c % m), Shape::Pentagonal};
  return form_residues(0, std::span(&term, 1), m);
}

ResidueSet form_residues(std::int64_t offset, std::span<const FormTerm> terms,
                         std::uint64_t m) {
  if (terms.size() > 3) {
    throw std::invalid_argument("form_residues supports at most three terms");
  }
  ResidueSet acc(m);
  acc.insert(reduce_mod(offset, m));
  for (const auto& term : terms) {
    const auto c = reduce_mod(term.coefficient, m);
    ResidueSet values(m);
    for (auto v : shape_values(term.shape, m)) values.insert(mulmod(c, v, m));
    const auto vs = values.members();
    ResidueSet next(m);
    for (auto a : acc.members()) {
      for (auto v : vs) next.insert((a + v) % m);
    }
    acc = std::move(next);
  }
  return acc;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  // These bases are a proven deterministic set below 3.3 * 10^24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!strong_probable_prime(n, a)) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("cannot factorize 0");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  Factorization out;
  for (auto p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

std::uint64_t reconstruct(const Factorization& f) {
  std::uint64_t v = 1;
  for (const auto& [p, a] : f) {
    for (unsigned i = 0; i < a; ++i) v *= p;
  }
  return v;
}

std::string format_factorization(const Factorization& f) {
  if (f.empty()) return "1";
  std::string s;
  for (const auto& [p, a] : f) {
    if (!s.empty()) s += " * ";
    s += std::to_string(p);
    if (a > 1) s += "^" + std::to_string(a);
  }
  return s;
}

std::uint64_t r3_brute(std::uint64_t s) {
  std::uint64_t count = 0;
  for (std::uint64_t y = 0; 3 * y * y <= s; ++y) {
    const std::uint64_t rest = s - 3 * y * y;
    auto x = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(rest)));
    while (x * x > rest) --x;
    while ((x + 1) * (x + 1) <= rest) ++x;
    if (x * x != rest) continue;
    const std::uint64_t xs = x == 0 ? 1 : 2;
    const std::uint64_t ys = y == 0 ? 1 : 2;
    count += xs * ys;
  }
  return count;
}

std::uint64_t r3_formula(std::uint64_t s) {
  if (s % 6 != 1) {
    throw std::domain_error("r3_formula requires s = 1 (mod 6), got " +
                            std::to_string(s));
  }
  std::uint64_t r = 2;
  for (const auto& [p, a] : factorize(s)) {
    if (p % 3 == 2) {
      if (a % 2 == 1) return 0;
    } else {
      r *= a + 1;
    }
  }
  return r;
}

B8Certificate b8_certificate(std::uint64_t n) {
  B8Certificate c{n, 24 * n + 7, {}, false};
  c.factors = factorize(c.value);
  int odd_exponents = 0;
  bool one_mod_four = false;
  for (const auto& pp : c.factors) {
    if (pp.exponent % 2 == 1) {
      ++odd_exponents;
      one_mod_four = pp.exponent % 4 == 1;
    }
  }
  c.odd = odd_exponents == 1 && one_mod_four;
  return c;
}

bool b8_parity_oracle(std::uint64_t n) { return b8_certificate(n).odd; }

}  // namespace etaparity
