#include "etaparity/series_gf2.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define ETAPARITY_HAVE_X86 1
#endif

namespace etaparity {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > static_cast<std::size_t>(-1) / a) {
    return static_cast<std::size_t>(-1);
  }
  return a * b;
}

// Bits [pos, pos + 64) of `w`; positions outside the array read as zero.
inline std::uint64_t window64(std::span<const std::uint64_t> w,
                              std::int64_t pos) {
  if (pos <= -64) return 0;
  if (pos < 0) return w.empty() ? 0 : w[0] << static_cast<unsigned>(-pos);
  const auto s = static_cast<std::size_t>(pos) / kWordBits;
  const auto r = static_cast<unsigned>(pos % 64);
  if (s >= w.size()) return 0;
  std::uint64_t v = w[s] >> r;
  if (r != 0 && s + 1 < w.size()) v |= w[s + 1] << (64 - r);
  return v;
}

// Low 64 bits of the carry-less product.
inline std::uint64_t clmul_lo(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b != 0) {
    r ^= a << std::countr_zero(b);
    b &= b - 1;
  }
  return r;
}

struct Clmul128 {
  std::uint64_t lo;
  std::uint64_t hi;
};

Clmul128 clmul_portable(std::uint64_t a, std::uint64_t b) {
  Clmul128 r{0, 0};
  while (b != 0) {
    const int i = std::countr_zero(b);
    r.lo ^= a << i;
    if (i != 0) r.hi ^= a >> (64 - i);
    b &= b - 1;
  }
  return r;
}

#ifdef ETAPARITY_HAVE_X86
__attribute__((target("pclmul,sse2"))) Clmul128 clmul_hw(std::uint64_t a,
                                                        std::uint64_t b) {
  const __m128i x = _mm_set_epi64x(0, static_cast<long long>(a));
  const __m128i y = _mm_set_epi64x(0, static_cast<long long>(b));
  const __m128i p = _mm_clmulepi64_si128(x, y, 0x00);
  return {static_cast<std::uint64_t>(_mm_cvtsi128_si64(p)),
          static_cast<std::uint64_t>(
              _mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)))};
}

bool has_pclmul() {
  static const bool ok = __builtin_cpu_supports("pclmul");
  return ok;
}
#endif

Clmul128 clmul(std::uint64_t a, std::uint64_t b) {
#ifdef ETAPARITY_HAVE_X86
  if (has_pclmul()) return clmul_hw(a, b);
#endif
  return clmul_portable(a, b);
}

std::size_t sparse_threshold(std::size_t truncation) {
  return static_cast<std::size_t>(
      4.0 * std::sqrt(static_cast<double>(truncation)));
}

std::size_t popcount_words(std::span<const std::uint64_t> w) {
  std::size_t c = 0;
  for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

Gf2Series mul_dense(const Gf2Series& a, const Gf2Series& b,
                    std::size_t truncation) {
  const std::size_t n = word_count(truncation);
  auto aw = a.words();
  auto bw = b.words();
  std::vector<std::uint64_t> out(n, 0);
  for (std::size_t i = 0; i < n && i < aw.size(); ++i) {
    if (aw[i] == 0) continue;
    for (std::size_t j = 0; i + j < n && j < bw.size(); ++j) {
      if (bw[j] == 0) continue;
      const auto p = clmul(aw[i], bw[j]);
      out[i + j] ^= p.lo;
      if (i + j + 1 < n) out[i + j + 1] ^= p.hi;
    }
  }
  return Gf2Series::from_words(std::move(out), truncation);
}

void require_positive(std::size_t truncation) {
  if (truncation == 0) {
    throw std::invalid_argument("series truncation must be positive");
  }
}

}  // namespace

Progression::Progression(std::uint64_t a, std::uint64_t b)
    : modulus(a), residue(b) {
  if (a == 0) throw std::invalid_argument("progression modulus must be >= 1");
  if (b >= a) {
    throw std::invalid_argument("progression residue " + std::to_string(b) +
                                " must be below modulus " + std::to_string(a));
  }
}

bool Progression::contains(const Progression& inner) const {
  return inner.modulus % modulus == 0 && inner.residue % modulus == residue;
}

Gf2Series::Gf2Series(std::vector<std::uint64_t> words, std::size_t truncation)
    : words_(std::move(words)), truncation_(truncation) {
  require_positive(truncation);
  words_.resize(word_count(truncation), 0);
  clear_tail();
}

void Gf2Series::clear_tail() {
  const auto r = truncation_ % kWordBits;
  if (r != 0) words_.back() &= (std::uint64_t{1} << r) - 1;
}

Gf2Series Gf2Series::zero(std::size_t truncation) {
  return Gf2Series({}, truncation);
}

Gf2Series Gf2Series::identity(std::size_t truncation) {
  Gf2Series s({}, truncation);
  s.words_[0] = 1;
  return s;
}

Gf2Series Gf2Series::from_support(std::span<const std::uint64_t> exponents,
                                  std::size_t truncation) {
  Gf2Series s({}, truncation);
  for (auto e : exponents) {
    if (e >= truncation) {
      throw std::out_of_range("exponent " + std::to_string(e) +
                              " is not below truncation " +
                              std::to_string(truncation));
    }
    s.words_[e / kWordBits] |= std::uint64_t{1} << (e % kWordBits);
  }
  return s;
}

Gf2Series Gf2Series::from_words(std::vector<std::uint64_t> words,
                                std::size_t truncation) {
  return Gf2Series(std::move(words), truncation);
}

bool Gf2Series::coeff(std::size_t n) const {
  if (n >= truncation_) {
    throw std::out_of_range("coefficient " + std::to_string(n) +
                            " requested beyond truncation " +
                            std::to_string(truncation_));
  }
  return (words_[n / kWordBits] >> (n % kWordBits)) & 1U;
}

std::size_t Gf2Series::odd_count(std::size_t begin, std::size_t end) const {
  if (end > truncation_ || begin > end) {
    throw std::out_of_range("odd_count range [" + std::to_string(begin) +
                            ", " + std::to_string(end) +
                            ") exceeds truncation " +
                            std::to_string(truncation_));
  }
  if (begin == end) return 0;
  const std::size_t first = begin / kWordBits;
  const std::size_t last = (end - 1) / kWordBits;
  const std::uint64_t lo_mask = ~std::uint64_t{0} << (begin % kWordBits);
  const std::uint64_t hi_mask =
      end % kWordBits == 0 ? ~std::uint64_t{0}
                           : (std::uint64_t{1} << (end % kWordBits)) - 1;
  if (first == last) {
    return static_cast<std::size_t>(
        std::popcount(words_[first] & lo_mask & hi_mask));
  }
  std::size_t c = static_cast<std::size_t>(std::popcount(words_[first] & lo_mask));
  for (std::size_t i = first + 1; i < last; ++i) {
    c += static_cast<std::size_t>(std::popcount(words_[i]));
  }
  c += static_cast<std::size_t>(std::popcount(words_[last] & hi_mask));
  return c;
}

std::size_t Gf2Series::odd_count_prefix(std::size_t x) const {
  return odd_count(0, x);
}

std::vector<std::uint64_t> Gf2Series::support() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (std::uint64_t w = words_[i]; w != 0; w &= w - 1) {
      out.push_back(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
    }
  }
  return out;
}

bool Gf2Series::is_zero() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

Gf2Series Gf2Series::truncated(std::size_t n) const {
  const auto t = std::min(n, truncation_);
  std::vector<std::uint64_t> w(words_.begin(),
                               words_.begin() + static_cast<std::ptrdiff_t>(word_count(t)));
  return Gf2Series(std::move(w), t);
}

Gf2Series add(const Gf2Series& a, const Gf2Series& b) {
  const auto t = std::min(a.truncation(), b.truncation());
  const auto n = word_count(t);
  std::vector<std::uint64_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = a.words()[i] ^ b.words()[i];
  return Gf2Series::from_words(std::move(w), t);
}

Gf2Series mul_sparse(const Gf2Series& a,
                     std::span<const std::uint64_t> support,
                     std::size_t support_truncation) {
  const auto t = std::min(a.truncation(), support_truncation);
  const auto n = word_count(t);
  auto aw = a.words().first(n);
  std::vector<std::uint64_t> out(n, 0);
  for (auto g : support) {
    if (g >= t) continue;
    const std::size_t s = g / kWordBits;
    const unsigned r = static_cast<unsigned>(g % kWordBits);
    if (r == 0) {
      for (std::size_t i = 0; i + s < n; ++i) out[i + s] ^= aw[i];
    } else {
      out[s] ^= aw[0] << r;
      for (std::size_t i = 1; i + s < n; ++i) {
        out[i + s] ^= (aw[i] << r) | (aw[i - 1] >> (64 - r));
      }
    }
  }
  return Gf2Series::from_words(std::move(out), t);
}

Gf2Series div_sparse(const Gf2Series& a,
                     std::span<const std::uint64_t> support,
                     std::size_t support_truncation) {
  if (!std::is_sorted(support.begin(), support.end()) || support.empty() ||
      support.front() != 0) {
    throw std::domain_error("divisor must have constant term 1");
  }
  const auto t = std::min(a.truncation(), support_truncation);
  const auto n = word_count(t);

  // Inverse of the divisor's low 64 coefficients, mod q^64.
  std::uint64_t low = 0;
  for (auto g : support) {
    if (g >= kWordBits) break;
    low |= std::uint64_t{1} << g;
  }
  std::uint64_t low_inv = 1;
  for (unsigned i = 1; i < 64; ++i) {
    std::uint64_t bit = 0;
    for (unsigned g = 1; g <= i; ++g) {
      if ((low >> g) & 1U) bit ^= (low_inv >> (i - g)) & 1U;
    }
    low_inv |= bit << i;
  }

  const auto tail = support.subspan(1);
  std::vector<std::uint64_t> out(n, 0);
  std::span<const std::uint64_t> view(out);
  for (std::size_t w = 0; w < n; ++w) {
    const auto base = static_cast<std::int64_t>(w * kWordBits);
    std::uint64_t acc = a.words()[w];
    for (auto g : tail) {
      if (g >= (w + 1) * kWordBits) break;
      acc ^= window64(view, base - static_cast<std::int64_t>(g));
    }
    out[w] = clmul_lo(acc, low_inv);
  }
  return Gf2Series::from_words(std::move(out), t);
}

Gf2Series mul(const Gf2Series& a, const Gf2Series& b) {
  const auto t = std::min(a.truncation(), b.truncation());
  const auto limit = sparse_threshold(t);
  const auto n = word_count(t);
  if (popcount_words(b.words().first(n)) <= limit) {
    auto s = b.truncated(t).support();
    return mul_sparse(a, s, t);
  }
  if (popcount_words(a.words().first(n)) <= limit) {
    auto s = a.truncated(t).support();
    return mul_sparse(b, s, t);
  }
  return mul_dense(a, b, t);
}

Gf2Series inverse(const Gf2Series& a) {
  if (!a.coeff(0)) {
    throw std::domain_error("series with zero constant term is not invertible");
  }
  const auto s = a.support();
  return div_sparse(Gf2Series::identity(a.truncation()), s, a.truncation());
}

Gf2Series pow(const Gf2Series& a, std::uint64_t e) {
  const auto t = a.truncation();
  Gf2Series result = Gf2Series::identity(t);
  for (int i = 0; e != 0; ++i, e >>= 1) {
    if ((e & 1U) == 0) continue;
    const std::uint64_t d = std::uint64_t{1} << i;
    result = mul(result, dilate(a, d, t));
  }
  return result;
}

Gf2Series dilate(const Gf2Series& a, std::uint64_t d, std::size_t cap) {
  if (d == 0) throw std::invalid_argument("dilation factor must be positive");
  const auto t = std::min(saturating_mul(a.truncation(), d), cap);
  require_positive(t);
  std::vector<std::uint64_t> w(word_count(t), 0);
  for (auto e : a.support()) {
    if (e > (t - 1) / d) break;
    const auto pos = e * d;
    w[pos / kWordBits] |= std::uint64_t{1} << (pos % kWordBits);
  }
  return Gf2Series::from_words(std::move(w), t);
}

Gf2Series shift(const Gf2Series& a, std::size_t k) {
  const auto t = a.truncation() + k;
  const auto n = word_count(t);
  const std::size_t s = k / kWordBits;
  const unsigned r = static_cast<unsigned>(k % kWordBits);
  auto aw = a.words();
  std::vector<std::uint64_t> w(n, 0);
  for (std::size_t i = 0; i < aw.size() && i + s < n; ++i) {
    w[i + s] ^= aw[i] << r;
    if (r != 0 && i + s + 1 < n) w[i + s + 1] ^= aw[i] >> (64 - r);
  }
  return Gf2Series::from_words(std::move(w), t);
}

Gf2Series u_operator(const Gf2Series& a, std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("U operator index must be positive");
  if (d == 1) return a;
  const std::size_t t = (a.truncation() + d - 1) / d;
  std::vector<std::uint64_t> w(word_count(t), 0);
  auto aw = a.words();
  for (std::size_t n = 0; n < t; ++n) {
    const auto pos = n * d;
    if ((aw[pos / kWordBits] >> (pos % kWordBits)) & 1U) {
      w[n / kWordBits] |= std::uint64_t{1} << (n % kWordBits);
    }
  }
  return Gf2Series::from_words(std::move(w), t);
}

Gf2Series extract_progression(const Gf2Series& a, const Progression& p) {
  if (p.residue >= p.modulus) {
    throw std::invalid_argument("progression residue must be below modulus");
  }
  if (p.modulus > a.truncation()) {
    throw std::invalid_argument("progression modulus " +
                                std::to_string(p.modulus) +
                                " exceeds truncation " +
                                std::to_string(a.truncation()));
  }
  const std::size_t t = (a.truncation() - p.residue + p.modulus - 1) / p.modulus;
  std::vector<std::uint64_t> w(word_count(t), 0);
  auto aw = a.words();
  for (std::size_t n = 0; n < t; ++n) {
    const auto pos = p.at(n);
    if ((aw[pos / kWordBits] >> (pos % kWordBits)) & 1U) {
      w[n / kWordBits] |= std::uint64_t{1} << (n % kWordBits);
    }
  }
  return Gf2Series::from_words(std::move(w), t);
}

}  // namespace etaparity
