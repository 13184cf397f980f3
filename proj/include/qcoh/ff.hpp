#ifndef QCOH_FF_HPP
#define QCOH_FF_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace qcoh {

/// Largest supported extension degree. Dense coefficient storage is sized to this.
inline constexpr unsigned kMaxDegree = 16;

class FieldElem;

/**
 * Description of F_{p^k} = F_p[x]/(f) for a monic irreducible f of degree k.
 *
 * Contexts are interned: make_extension(p, k) always returns the same object
 * for the same (p, k), so elements may hold a plain pointer to their context.
 */
class FieldCtx {
 public:
  std::uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  /// Number of elements p^k.
  std::uint64_t order() const { return q_; }
  /// Defining polynomial, constant term first, leading 1 included.
  const std::vector<std::uint32_t>& poly() const { return poly_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_coeffs(const std::vector<std::int64_t>& c) const;
  /// Element whose coefficients are the base-p digits of idx (c0 least significant).
  FieldElem element(std::uint64_t idx) const;
  /// The generator x of the extension (equals 0 when k = 1).
  FieldElem gen() const;

  nlohmann::json to_json() const;
  std::string describe() const;

 private:
  friend std::shared_ptr<const FieldCtx> make_extension(std::uint32_t p, unsigned k);
  friend class FieldElem;
  FieldCtx(std::uint32_t p, unsigned k, std::vector<std::uint32_t> poly);

  std::uint32_t p_;
  unsigned k_;
  std::uint64_t q_;
  std::vector<std::uint32_t> poly_;
};

using Field = std::shared_ptr<const FieldCtx>;

/// Exact element of a finite field of odd characteristic.
class FieldElem {
 public:
  FieldElem() = default;
  explicit FieldElem(const FieldCtx& ctx) : ctx_(&ctx) {}

  const FieldCtx& ctx() const { return *ctx_; }
  const FieldCtx* ctx_ptr() const { return ctx_; }
  std::uint32_t coeff(unsigned i) const { return c_[i]; }
  std::vector<std::uint32_t> coeffs() const;

  bool is_zero() const;
  bool is_one() const;
  bool in_prime_field() const;
  /// Representative in [0, p) of a prime-field element; throws otherwise.
  std::uint32_t to_uint() const;
  /// Base-p digit index, the inverse of FieldCtx::element.
  std::uint64_t index() const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o) { return *this *= o.inverse(); }
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  /// this += a * b, the elimination kernel.
  void add_mul(const FieldElem& a, const FieldElem& b);

  FieldElem pow(std::uint64_t e) const;
  FieldElem inverse() const;
  FieldElem frobenius() const { return pow(ctx_->p()); }

  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.c_ == b.c_; }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
  /// Lexicographic on the coefficient vector, constant term first.
  friend bool operator<(const FieldElem& a, const FieldElem& b) { return a.c_ < b.c_; }

  /// "3" for prime-field elements, "[c0,c1,...]" otherwise.
  std::string str() const;
  nlohmann::json to_json() const;

 private:
  friend class FieldCtx;
  const FieldCtx* ctx_ = nullptr;
  std::array<std::uint16_t, kMaxDegree> c_{};
};

/// Canonical context for F_{p^k}; the defining polynomial is the lex-least
/// monic irreducible (coefficients compared constant term first).
Field make_extension(std::uint32_t p, unsigned k);

bool is_prime(std::uint64_t n);

/// All x with x^p - x = c. Size 0 or p, sorted.
std::vector<FieldElem> artin_schreier_roots(const FieldElem& c);

/// {-r, r} (sorted) for a nonzero square, {0} for 0, empty otherwise.
std::vector<FieldElem> square_roots(const FieldElem& s);

bool is_square(const FieldElem& s);

namespace poly {

// Dense polynomials over F_p, constant term first, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

Poly trim(Poly a);
Poly sub(const Poly& a, const Poly& b, std::uint32_t p);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p);
Poly rem(Poly a, const Poly& f, std::uint32_t p);
Poly gcd(Poly a, Poly b, std::uint32_t p);
/// x^(p^e) mod f.
Poly x_pow_p_pow(unsigned e, const Poly& f, std::uint32_t p);
/// Rabin irreducibility test for a monic f of degree >= 1.
bool is_irreducible(const Poly& f, std::uint32_t p);

}  // namespace poly

}  // namespace qcoh

#endif  // QCOH_FF_HPP
