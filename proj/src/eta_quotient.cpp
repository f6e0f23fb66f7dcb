#include "etaparity/eta_quotient.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <set>

#include "etaparity/arith.hpp"

namespace etaparity {

namespace {

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::uint64_t number() {
    skip_space();
    std::uint64_t v = 0;
    const auto* first = text_.data() + pos_;
    const auto* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range) fail("number out of range");
    if (ec != std::errc() || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const auto at = base_ + pos_;
    throw ParseError(what + " at position " + std::to_string(at), at);
  }

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

std::uint64_t optional_power(Lexer& lx) {
  if (!lx.accept('^')) return 1;
  const bool braced = lx.accept('{');
  const auto e = lx.number();
  if (braced) lx.expect('}');
  return e;
}

std::uint64_t eta_index(Lexer& lx) {
  const bool braced = lx.accept('{');
  const auto j = lx.number();
  if (braced) lx.expect('}');
  return j;
}

void add_factor(std::vector<EtaFactor>& side, std::uint64_t index,
                std::uint64_t exponent, Lexer& lx) {
  if (index == 0) lx.fail("eta index must be positive");
  if (exponent == 0) lx.fail("exponent must be positive");
  for (const auto& f : side) {
    if (f.index == index) lx.fail("repeated factor f" + std::to_string(index));
  }
  side.push_back({index, exponent});
}

EtaQuotientSpec parse_quotient(std::string_view text, std::size_t base) {
  Lexer lx(text, base);
  EtaQuotientSpec spec;
  bool saw_shift = false;
  bool any = false;
  // numerator: factors joined by '*'
  do {
    const char c = lx.peek();
    if (c == 'q') {
      lx.accept('q');
      if (saw_shift) lx.fail("repeated q factor");
      saw_shift = true;
      spec.shift = optional_power(lx);
      if (lx.peek() == '^') lx.fail("unexpected '^'");
    } else if (c == 'f') {
      lx.accept('f');
      const auto j = eta_index(lx);
      add_factor(spec.numerator, j, optional_power(lx), lx);
    } else if (c >= '0' && c <= '9') {
      if (lx.number() != 1) lx.fail("only the constant 1 is allowed");
    } else {
      lx.fail("expected 'q', 'f<index>' or '1'");
    }
    any = true;
  } while (lx.accept('*'));
  if (!any) lx.fail("empty quotient");
  if (lx.accept('/')) {
    do {
      if (lx.peek() == 'q') lx.fail("q may not appear in the denominator");
      if (!lx.accept('f')) lx.fail("expected 'f<index>' in denominator");
      const auto j = eta_index(lx);
      add_factor(spec.denominator, j, optional_power(lx), lx);
    } while (lx.accept('*'));
  }
  if (!lx.at_end()) lx.fail("unexpected trailing input");
  return spec;
}

std::string format_side(const std::vector<EtaFactor>& side) {
  std::string s;
  for (const auto& f : side) {
    if (!s.empty()) s += " * ";
    s += "f" + std::to_string(f.index);
    if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
  }
  return s;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message), position_(position) {}

void EtaQuotientSpec::validate() const {
  for (const auto* side : {&numerator, &denominator}) {
    std::set<std::uint64_t> seen;
    for (const auto& f : *side) {
      if (f.index == 0) throw std::invalid_argument("eta index must be positive");
      if (f.exponent == 0) throw std::invalid_argument("exponent must be positive");
      if (!seen.insert(f.index).second) {
        throw std::invalid_argument("repeated factor f" + std::to_string(f.index));
      }
    }
  }
}

EtaQuotientSpec parse_eta_quotient(std::string_view text) {
  return parse_quotient(text, 0);
}

EtaSum parse_eta_sum(std::string_view text) {
  EtaSum sum;
  std::size_t start = 0;
  while (true) {
    const auto plus = text.find('+', start);
    const auto piece = text.substr(start, plus == std::string_view::npos
                                              ? std::string_view::npos
                                              : plus - start);
    sum.push_back(parse_quotient(piece, start));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return sum;
}

std::string to_string(const EtaQuotientSpec& spec) {
  std::string num;
  if (spec.shift != 0) {
    num = spec.shift == 1 ? "q" : "q^" + std::to_string(spec.shift);
  }
  if (!spec.numerator.empty()) {
    if (!num.empty()) num += " * ";
    num += format_side(spec.numerator);
  }
  if (num.empty()) num = "1";
  if (spec.denominator.empty()) return num;
  return num + " / " + format_side(spec.denominator);
}

std::string to_string(const EtaSum& sum) {
  std::string s;
  for (const auto& term : sum) {
    if (!s.empty()) s += " + ";
    s += to_string(term);
  }
  return s;
}

ReducedQuotient reduce_mod2(const EtaQuotientSpec& spec) {
  spec.validate();
  // Signed multiplicity per index; carries move toward larger indices.
  std::map<std::uint64_t, std::int64_t> mult;
  for (const auto& f : spec.numerator) mult[f.index] += static_cast<std::int64_t>(f.exponent);
  for (const auto& f : spec.denominator) mult[f.index] -= static_cast<std::int64_t>(f.exponent);

  ReducedQuotient out;
  out.shift = spec.shift;
  while (!mult.empty()) {
    auto it = mult.begin();
    const auto [index, e] = *it;
    mult.erase(it);
    if (e == 0) continue;
    const std::int64_t sign = e > 0 ? 1 : -1;
    const std::int64_t mag = e * sign;
    if (mag % 2 == 1) {
      (sign > 0 ? out.numerator : out.denominator).push_back(index);
    }
    if (mag / 2 != 0) mult[2 * index] += sign * (mag / 2);
  }
  return out;
}

std::vector<std::uint64_t> euler_support(std::uint64_t j, std::size_t truncation) {
  if (j == 0) throw std::invalid_argument("eta index must be positive");
  auto g = generalized_pentagonal((truncation + j - 1) / j);
  for (auto& v : g) v *= j;
  return g;
}

Gf2Series euler_f(std::uint64_t j, std::size_t truncation) {
  return Gf2Series::from_support(euler_support(j, truncation), truncation);
}

Gf2Series build(const EtaQuotientSpec& spec, std::size_t truncation) {
  const auto reduced = reduce_mod2(spec);
  if (reduced.shift >= truncation) return Gf2Series::zero(truncation);
  Gf2Series acc = Gf2Series::identity(truncation);
  for (auto j : reduced.numerator) {
    acc = mul_sparse(acc, euler_support(j, truncation), truncation);
  }
  for (auto j : reduced.denominator) {
    acc = div_sparse(acc, euler_support(j, truncation), truncation);
  }
  return shift(acc, reduced.shift).truncated(truncation);
}

Gf2Series build(const EtaSum& sum, std::size_t truncation) {
  Gf2Series acc = Gf2Series::zero(truncation);
  for (const auto& term : sum) acc = add(acc, build(term, truncation));
  return acc;
}

EtaQuotientSpec regular_partition_spec(std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("regular partitions need m >= 2");
  return {{{m, 1}}, {{1, 1}}, 0};
}

EtaQuotientSpec multipartition_spec(std::uint64_t t) {
  if (t == 0) throw std::invalid_argument("multipartitions need t >= 1");
  return {{}, {{1, t}}, 0};
}

Gf2Series regular_partition_series(std::uint64_t m, std::size_t truncation) {
  return build(regular_partition_spec(m), truncation);
}

Gf2Series multipartition_series(std::uint64_t t, std::size_t truncation) {
  return build(multipartition_spec(t), truncation);
}

bool cmsz_lacunary_mod2(const EtaQuotientSpec& spec) {
  spec.validate();
  using i128 = __int128;
  // sum r/a as an exact fraction num/den.
  i128 num = 0;
  i128 den = 1;
  for (const auto& f : spec.numerator) {
    num = num * f.index + static_cast<i128>(f.exponent) * den;
    den *= f.index;
    const auto g = std::gcd(static_cast<std::uint64_t>(num),
                            static_cast<std::uint64_t>(den));
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  i128 rhs = 0;
  for (const auto& f : spec.denominator) {
    rhs += static_cast<i128>(f.exponent) * f.index;
  }
  return num >= rhs * den;
}

}  // namespace etaparity
