#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kchain {

/// Scalars are canonical residues packed into one integer in [0, q).
/// Extension-field elements pack their coefficient vector little-endian
/// base p: repr = c0 + c1*p + ... + c_{m-1}*p^{m-1}.
using Element = std::uint32_t;

enum class StructureKind { PrimeField, ExtensionField, IntegerRing };

/// Default cardinality cap. Everything here is exhaustive-friendly on purpose;
/// callers may raise the cap explicitly.
inline constexpr std::uint64_t kDefaultMaxCardinality = 10'000;

namespace detail {

inline bool is_odd_prime(std::uint64_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::uint64_t f = 3; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

inline constexpr std::uint32_t kMaxExtensionDegree = 24;

/// Does the monic polynomial with non-leading coefficients g_tail divide the
/// monic polynomial f (full coefficient vector, f.back() == 1) over F_p?
inline bool monic_divides(const std::vector<std::uint32_t>& g_tail, std::vector<std::uint32_t> f,
                          std::uint32_t p) {
  const auto gdeg = static_cast<std::uint32_t>(g_tail.size());
  const auto fdeg = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t i = fdeg; i >= gdeg; --i) {
    const std::uint64_t c = f[i];
    if (c == 0) continue;
    f[i] = 0;
    for (std::uint32_t j = 0; j < gdeg; ++j) {
      const std::uint64_t sub = c * g_tail[j] % p;
      auto& slot = f[i - gdeg + j];
      slot = static_cast<std::uint32_t>((slot + p - sub) % p);
    }
  }
  for (std::uint32_t j = 0; j < gdeg; ++j)
    if (f[j] != 0) return false;
  return true;
}

/// Exhaustive factor check: no monic polynomial of degree 1..deg/2 divides.
inline bool is_irreducible(const std::vector<std::uint32_t>& tail, std::uint32_t p) {
  const auto deg = static_cast<std::uint32_t>(tail.size());
  std::vector<std::uint32_t> full(tail);
  full.push_back(1);
  for (std::uint32_t fdeg = 1; 2 * fdeg <= deg; ++fdeg) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < fdeg; ++i) count *= p;
    for (std::uint64_t t = 0; t < count; ++t) {
      std::vector<std::uint32_t> g_tail(fdeg);
      std::uint64_t v = t;
      for (std::uint32_t i = 0; i < fdeg; ++i) {
        g_tail[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      if (monic_divides(g_tail, full, p)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// F_p, F_{p^m}, or Z_{p^l} for an odd prime p. Immutable after construction;
/// all operations are pure, so instances are freely shared across threads.
/// Default-constructs as F_3.
class AlgebraicStructure {
 public:
  AlgebraicStructure() = default;

  static AlgebraicStructure make(StructureKind kind, std::uint32_t p, std::uint32_t e,
                                 std::uint64_t max_q = kDefaultMaxCardinality) {
    if (p % 2 == 0) throw std::invalid_argument("characteristic must be odd, got p = " + std::to_string(p));
    if (!detail::is_odd_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (e < 1) throw std::invalid_argument("degree/exponent must be >= 1");
    if (kind == StructureKind::PrimeField && e != 1)
      throw std::invalid_argument("prime field takes e = 1; use F:" + std::to_string(p) + "^" +
                                  std::to_string(e) + " or Z:" + std::to_string(p) + "^" +
                                  std::to_string(e));
    if (kind == StructureKind::ExtensionField && e > detail::kMaxExtensionDegree)
      throw std::invalid_argument("extension degree too large");

    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      q *= p;
      if (q > max_q)
        throw std::invalid_argument("cardinality p^e exceeds the cap " + std::to_string(max_q));
    }

    AlgebraicStructure s;
    s.kind_ = kind;
    s.p_ = p;
    s.e_ = e;
    s.q_ = static_cast<std::uint32_t>(q);
    if (kind == StructureKind::ExtensionField) s.modulus_ = find_modulus(p, e);
    return s;
  }

  static AlgebraicStructure prime_field(std::uint32_t p, std::uint64_t max_q = kDefaultMaxCardinality) {
    return make(StructureKind::PrimeField, p, 1, max_q);
  }
  static AlgebraicStructure extension_field(std::uint32_t p, std::uint32_t m,
                                            std::uint64_t max_q = kDefaultMaxCardinality) {
    return make(StructureKind::ExtensionField, p, m, max_q);
  }
  static AlgebraicStructure integer_ring(std::uint32_t p, std::uint32_t l,
                                         std::uint64_t max_q = kDefaultMaxCardinality) {
    return make(StructureKind::IntegerRing, p, l, max_q);
  }

  /// Accepts `Fp:<p>`, `F:<p>^<m>`, and `Z:<p>^<l>`.
  static AlgebraicStructure from_literal(const std::string& text,
                                         std::uint64_t max_q = kDefaultMaxCardinality) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("bad structure literal '" + text + "' (expected Fp:<p>, F:<p>^<m>, or Z:<p>^<l>)");
    const std::string tag = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    const auto caret = rest.find('^');
    const auto parse_u32 = [&text](const std::string& tok) {
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad number in structure literal '" + text + "'");
      unsigned long v = std::stoul(tok);
      if (v > 0xFFFFFFFFul) throw std::invalid_argument("number too large in structure literal '" + text + "'");
      return static_cast<std::uint32_t>(v);
    };
    if (tag == "Fp") {
      if (caret != std::string::npos)
        throw std::invalid_argument("Fp literal takes no exponent: '" + text + "'");
      return prime_field(parse_u32(rest), max_q);
    }
    if (caret == std::string::npos)
      throw std::invalid_argument("literal '" + text + "' needs the form " + tag + ":<p>^<e>");
    const std::uint32_t p = parse_u32(rest.substr(0, caret));
    const std::uint32_t e = parse_u32(rest.substr(caret + 1));
    if (tag == "F") return extension_field(p, e, max_q);
    if (tag == "Z") return integer_ring(p, e, max_q);
    throw std::invalid_argument("unknown structure tag '" + tag + "'");
  }

  StructureKind kind() const { return kind_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  bool is_field() const { return kind_ != StructureKind::IntegerRing; }

  /// Non-leading coefficients c0..c_{m-1} of the monic modulus (extension fields).
  const std::vector<std::uint32_t>& modulus_poly() const {
    if (kind_ != StructureKind::ExtensionField)
      throw std::logic_error("modulus_poly: not an extension field");
    return modulus_;
  }

  bool valid(Element a) const { return a < q_; }
  void check(Element a) const {
    if (a >= q_)
      throw std::invalid_argument("element " + std::to_string(a) + " out of range [0, " +
                                  std::to_string(q_) + ")");
  }

  Element add(Element a, Element b) const {
    check(a);
    check(b);
    if (kind_ != StructureKind::ExtensionField)
      return static_cast<Element>((std::uint64_t(a) + b) % q_);
    Digits da = unpack(a), db = unpack(b);
    for (std::uint32_t i = 0; i < e_; ++i) da[i] = (da[i] + db[i]) % p_;
    return pack(da);
  }

  Element neg(Element a) const {
    check(a);
    if (kind_ != StructureKind::ExtensionField) return a == 0 ? 0 : q_ - a;
    Digits da = unpack(a);
    for (std::uint32_t i = 0; i < e_; ++i) da[i] = (p_ - da[i]) % p_;
    return pack(da);
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    check(a);
    check(b);
    if (kind_ != StructureKind::ExtensionField)
      return static_cast<Element>(std::uint64_t(a) * b % q_);
    const Digits da = unpack(a), db = unpack(b);
    std::array<std::uint64_t, 2 * detail::kMaxExtensionDegree> prod{};
    for (std::uint32_t i = 0; i < e_; ++i) {
      if (da[i] == 0) continue;
      for (std::uint32_t j = 0; j < e_; ++j) prod[i + j] += std::uint64_t(da[i]) * db[j];
    }
    // fold x^i = -tail(x) * x^{i-m} down to degree < m
    for (int i = 2 * static_cast<int>(e_) - 2; i >= static_cast<int>(e_); --i) {
      const std::uint64_t c = prod[i] % p_;
      prod[i] = 0;
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < e_; ++j) prod[i - e_ + j] += c * (p_ - modulus_[j]);
    }
    Digits out{};
    for (std::uint32_t i = 0; i < e_; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p_);
    return pack(out);
  }

  Element pow(Element a, std::uint64_t n) const {
    check(a);
    Element r = one(), base = a;
    while (n) {
      if (n & 1) r = mul(r, base);
      base = mul(base, base);
      n >>= 1;
    }
    return r;
  }

  bool is_unit(Element a) const {
    check(a);
    return kind_ == StructureKind::IntegerRing ? a % p_ != 0 : a != 0;
  }

  Element inverse(Element a) const {
    check(a);
    if (!is_unit(a))
      throw std::domain_error("element " + std::to_string(a) + " is not a unit in " + literal());
    if (kind_ == StructureKind::ExtensionField) return pow(a, std::uint64_t(q_) - 2);
    // extended Euclid mod q (prime field and ring alike)
    std::int64_t r0 = q_, r1 = a, x0 = 0, x1 = 1;
    while (r1 != 0) {
      const std::int64_t quot = r0 / r1;
      std::int64_t tmp = r0 - quot * r1;
      r0 = r1;
      r1 = tmp;
      tmp = x0 - quot * x1;
      x0 = x1;
      x1 = tmp;
    }
    std::int64_t inv = x0 % q_;
    if (inv < 0) inv += q_;
    return static_cast<Element>(inv);
  }

  Element zero() const { return 0; }
  Element one() const { return 1; }

  /// Standard bilinear dot product; callers guarantee coordinates are valid.
  Element dot(const std::vector<Element>& x, const std::vector<Element>& y) const {
    if (x.size() != y.size()) throw std::invalid_argument("dot: dimension mismatch");
    if (kind_ != StructureKind::ExtensionField) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < x.size(); ++i) acc += std::uint64_t(x[i]) * y[i] % q_;
      return static_cast<Element>(acc % q_);
    }
    Element acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc = add(acc, mul(x[i], y[i]));
    return acc;
  }

  /// Sum of Frobenius powers a + a^p + ... + a^{p^{m-1}}; lands in the prime
  /// subfield, so the returned repr is < p.
  Element trace(Element a) const {
    if (kind_ != StructureKind::ExtensionField)
      throw std::logic_error("trace: not an extension field");
    check(a);
    Element acc = a, t = a;
    for (std::uint32_t i = 1; i < e_; ++i) {
      t = pow(t, p_);
      acc = add(acc, t);
    }
    return acc;
  }

  /// Exponent index t with chi(a) = exp(2*pi*i*t/Q): the residue itself over
  /// Z_{p^l} (Q = q), the trace over F_{p^m} (Q = p).
  std::uint32_t character_index(Element a) const {
    check(a);
    if (kind_ == StructureKind::ExtensionField) return trace(a);
    return a;
  }

  std::uint32_t character_modulus() const {
    return kind_ == StructureKind::IntegerRing ? q_ : p_;
  }

  std::vector<Element> units() const {
    std::vector<Element> out;
    for (Element a = 0; a < q_; ++a)
      if (is_unit(a)) out.push_back(a);
    return out;
  }

  std::string literal() const {
    switch (kind_) {
      case StructureKind::PrimeField: return "Fp:" + std::to_string(p_);
      case StructureKind::ExtensionField: return "F:" + std::to_string(p_) + "^" + std::to_string(e_);
      case StructureKind::IntegerRing: return "Z:" + std::to_string(p_) + "^" + std::to_string(e_);
    }
    return "?";
  }

  friend bool operator==(const AlgebraicStructure& a, const AlgebraicStructure& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.e_ == b.e_;
  }
  friend bool operator!=(const AlgebraicStructure& a, const AlgebraicStructure& b) {
    return !(a == b);
  }

 private:
  using Digits = std::array<std::uint32_t, detail::kMaxExtensionDegree>;

  Digits unpack(Element a) const {
    Digits d{};
    for (std::uint32_t i = 0; i < e_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  Element pack(const Digits& d) const {
    std::uint64_t r = 0;
    for (std::uint32_t i = e_; i-- > 0;) r = r * p_ + d[i];
    return static_cast<Element>(r);
  }

  /// The irreducible monic modulus whose packed non-leading coefficient
  /// vector (little-endian base p) is smallest. Deterministic, so every
  /// implementation agrees on the arithmetic of F_{p^m}.
  static std::vector<std::uint32_t> find_modulus(std::uint32_t p, std::uint32_t m) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i) count *= p;
    for (std::uint64_t t = 0; t < count; ++t) {
      std::vector<std::uint32_t> tail(m);
      std::uint64_t v = t;
      for (std::uint32_t i = 0; i < m; ++i) {
        tail[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      if (detail::is_irreducible(tail, p)) return tail;
    }
    throw std::logic_error("internal error: no irreducible polynomial found");
  }

  StructureKind kind_ = StructureKind::PrimeField;
  std::uint32_t p_ = 3, e_ = 1, q_ = 3;
  std::vector<std::uint32_t> modulus_;
};

inline std::string to_string(StructureKind k) {
  switch (k) {
    case StructureKind::PrimeField: return "prime-field";
    case StructureKind::ExtensionField: return "extension-field";
    case StructureKind::IntegerRing: return "integer-ring";
  }
  return "?";
}

}  // namespace kchain
