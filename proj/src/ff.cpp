#include "qcoh/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qcoh {

namespace poly {

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = static_cast<std::uint32_t>((x + p - y) % p);
  }
  return trim(std::move(r));
}

static std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

Poly rem(Poly a, const Poly& f, std::uint32_t p) {
  a = trim(std::move(a));
  const Poly g = trim(f);
  if (g.empty()) throw std::invalid_argument("poly::rem: division by zero polynomial");
  const std::uint64_t lead_inv = inv_mod(g.back(), p);
  while (a.size() >= g.size()) {
    const std::size_t shift = a.size() - g.size();
    const std::uint64_t c = a.back() * lead_inv % p;
    for (std::size_t i = 0; i < g.size(); ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * g[i] % p) % p);
    }
    a = trim(std::move(a));
  }
  return a;
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
  }
  return rem(std::move(r), f, p);
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t li = inv_mod(a.back(), p);
    for (auto& c : a) c = static_cast<std::uint32_t>(c * li % p);
  }
  return a;
}

static Poly pow_mod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  base = rem(std::move(base), f, p);
  while (e) {
    if (e & 1) r = mul_mod(r, base, f, p);
    base = mul_mod(base, base, f, p);
    e >>= 1;
  }
  return rem(std::move(r), f, p);
}

Poly x_pow_p_pow(unsigned e, const Poly& f, std::uint32_t p) {
  Poly r = rem(Poly{0, 1}, f, p);
  for (unsigned i = 0; i < e; ++i) r = pow_mod(r, p, f, p);
  return r;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const Poly g = trim(f);
  if (g.size() < 2) return false;
  const unsigned k = static_cast<unsigned>(g.size() - 1);
  if (k == 1) return true;
  const Poly x{0, 1};
  // x^(p^k) = x mod f, and gcd(x^(p^(k/r)) - x, f) = 1 for each prime r | k.
  if (sub(x_pow_p_pow(k, g, p), rem(x, g, p), p) != Poly{}) return false;
  for (unsigned r = 2; r <= k; ++r) {
    if (k % r != 0 || !is_prime(r)) continue;
    const Poly d = gcd(sub(x_pow_p_pow(k / r, g, p), x, p), g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

}  // namespace poly

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned k, std::vector<std::uint32_t> poly)
    : p_(p), k_(k), q_(1), poly_(std::move(poly)) {
  for (unsigned i = 0; i < k; ++i) q_ *= p;
}

Field make_extension(std::uint32_t p, unsigned k) {
  if (p < 3) throw std::invalid_argument("make_extension: p must be an odd prime >= 3");
  if (!is_prime(p)) throw std::invalid_argument("make_extension: p = " + std::to_string(p) + " is not prime");
  if (p > 0xFFFF) throw std::invalid_argument("make_extension: p must be below 2^16");
  if (k < 1) throw std::invalid_argument("make_extension: degree k must be >= 1");
  if (k > kMaxDegree) {
    throw std::invalid_argument("make_extension: degree " + std::to_string(k) + " exceeds the supported maximum " +
                                std::to_string(kMaxDegree));
  }
  {
    long double q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    if (q > 4.0e18L) throw std::invalid_argument("make_extension: field order exceeds 64-bit range");
  }

  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, unsigned>, Field> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, k});
  if (it != cache.end()) return it->second;

  std::vector<std::uint32_t> f;
  if (k == 1) {
    f = {0, 1};
  } else {
    // Lex order on (c0, c1, ..., c_{k-1}) with c0 most significant.
    // c0 = 0 gives the root 0, so the scan starts at c0 = 1.
    std::vector<std::uint32_t> c(k, 0);
    c[0] = 1;
    for (;;) {
      std::vector<std::uint32_t> cand(c);
      cand.push_back(1);
      if (poly::is_irreducible(cand, p)) {
        f = std::move(cand);
        break;
      }
      int pos = static_cast<int>(k) - 1;
      while (pos >= 0 && ++c[pos] == p) c[pos--] = 0;
      if (pos < 0) throw std::logic_error("make_extension: no irreducible polynomial found");
    }
  }
  Field ctx(new FieldCtx(p, k, std::move(f)));
  cache.emplace(std::make_pair(p, k), ctx);
  return ctx;
}

FieldElem FieldCtx::zero() const { return FieldElem(*this); }

FieldElem FieldCtx::one() const { return from_int(1); }

FieldElem FieldCtx::from_int(std::int64_t v) const {
  FieldElem r(*this);
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  r.c_[0] = static_cast<std::uint16_t>(m);
  return r;
}

FieldElem FieldCtx::from_coeffs(const std::vector<std::int64_t>& c) const {
  if (c.size() > k_) throw std::invalid_argument("from_coeffs: more coefficients than the extension degree");
  FieldElem r(*this);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::int64_t m = c[i] % static_cast<std::int64_t>(p_);
    if (m < 0) m += p_;
    r.c_[i] = static_cast<std::uint16_t>(m);
  }
  return r;
}

FieldElem FieldCtx::element(std::uint64_t idx) const {
  FieldElem r(*this);
  for (unsigned i = 0; i < k_; ++i) {
    r.c_[i] = static_cast<std::uint16_t>(idx % p_);
    idx /= p_;
  }
  return r;
}

FieldElem FieldCtx::gen() const {
  if (k_ == 1) return zero();
  FieldElem r(*this);
  r.c_[1] = 1;
  return r;
}

nlohmann::json FieldCtx::to_json() const {
  return nlohmann::json{{"p", p_}, {"k", k_}, {"poly", poly_}};
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "F_" << p_;
  if (k_ > 1) os << "^" << k_;
  return os.str();
}

std::vector<std::uint32_t> FieldElem::coeffs() const {
  return std::vector<std::uint32_t>(c_.begin(), c_.begin() + ctx_->k());
}

bool FieldElem::is_zero() const {
  for (auto c : c_) {
    if (c) return false;
  }
  return true;
}

bool FieldElem::is_one() const {
  if (c_[0] != 1) return false;
  for (unsigned i = 1; i < kMaxDegree; ++i) {
    if (c_[i]) return false;
  }
  return true;
}

bool FieldElem::in_prime_field() const {
  for (unsigned i = 1; i < kMaxDegree; ++i) {
    if (c_[i]) return false;
  }
  return true;
}

std::uint32_t FieldElem::to_uint() const {
  if (!in_prime_field()) throw std::domain_error("to_uint: element " + str() + " is not in the prime field");
  return c_[0];
}

std::uint64_t FieldElem::index() const {
  std::uint64_t r = 0;
  for (int i = static_cast<int>(ctx_->k()) - 1; i >= 0; --i) r = r * ctx_->p() + c_[i];
  return r;
}

FieldElem FieldElem::operator-() const {
  FieldElem r(*ctx_);
  const std::uint32_t p = ctx_->p();
  for (unsigned i = 0; i < ctx_->k(); ++i) r.c_[i] = static_cast<std::uint16_t>(c_[i] ? p - c_[i] : 0);
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  if (!ctx_) ctx_ = o.ctx_;
  const std::uint32_t p = ctx_->p();
  for (unsigned i = 0; i < ctx_->k(); ++i) {
    std::uint32_t s = std::uint32_t(c_[i]) + o.c_[i];
    if (s >= p) s -= p;
    c_[i] = static_cast<std::uint16_t>(s);
  }
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  if (!ctx_) ctx_ = o.ctx_;
  const std::uint32_t p = ctx_->p();
  for (unsigned i = 0; i < ctx_->k(); ++i) {
    std::uint32_t s = std::uint32_t(c_[i]) + p - o.c_[i];
    if (s >= p) s -= p;
    c_[i] = static_cast<std::uint16_t>(s);
  }
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  if (!ctx_) ctx_ = o.ctx_;
  const unsigned k = ctx_->k();
  const std::uint64_t p = ctx_->p();
  if (k == 1) {
    c_[0] = static_cast<std::uint16_t>(std::uint64_t(c_[0]) * o.c_[0] % p);
    return *this;
  }
  std::array<std::uint64_t, 2 * kMaxDegree> t{};
  for (unsigned i = 0; i < k; ++i) {
    if (!c_[i]) continue;
    for (unsigned j = 0; j < k; ++j) t[i + j] += std::uint64_t(c_[i]) * o.c_[j];
  }
  const auto& f = ctx_->poly();
  for (int d = 2 * static_cast<int>(k) - 2; d >= static_cast<int>(k); --d) {
    const std::uint64_t c = t[d] % p;
    if (!c) continue;
    // x^d = x^(d-k) * x^k and x^k = -sum f_i x^i.
    for (unsigned i = 0; i < k; ++i) t[d - k + i] += (p - f[i]) % p * c;
  }
  for (unsigned i = 0; i < k; ++i) c_[i] = static_cast<std::uint16_t>(t[i] % p);
  return *this;
}

void FieldElem::add_mul(const FieldElem& a, const FieldElem& b) {
  if (ctx_ && ctx_->k() == 1) {
    const std::uint64_t p = ctx_->p();
    c_[0] = static_cast<std::uint16_t>((c_[0] + std::uint64_t(a.c_[0]) * b.c_[0]) % p);
    return;
  }
  *this += a * b;
}

FieldElem FieldElem::pow(std::uint64_t e) const {
  FieldElem r = ctx_->one();
  FieldElem b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return pow(ctx_->order() - 2);
}

std::string FieldElem::str() const {
  if (in_prime_field()) return std::to_string(c_[0]);
  std::ostringstream os;
  os << "[";
  for (unsigned i = 0; i < ctx_->k(); ++i) os << (i ? "," : "") << c_[i];
  os << "]";
  return os.str();
}

nlohmann::json FieldElem::to_json() const { return coeffs(); }

namespace {

// Solves A y = b over F_p; returns false if inconsistent. A is n x n row-major.
bool solve_mod_p(std::vector<std::vector<std::uint64_t>> a, std::vector<std::uint64_t> b, std::uint64_t p,
                 std::vector<std::uint64_t>& y) {
  const std::size_t n = a.size();
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[row]);
    std::swap(b[piv], b[row]);
    const std::uint64_t inv = poly::inv_mod(a[row][col], p);
    for (auto& v : a[row]) v = v * inv % p;
    b[row] = b[row] * inv % p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const std::uint64_t m = a[r][col];
      for (std::size_t c = 0; c < n; ++c) a[r][c] = (a[r][c] + (p - m) * a[row][c]) % p;
      b[r] = (b[r] + (p - m) * b[row]) % p;
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  for (std::size_t r = row; r < n; ++r) {
    if (b[r] != 0) return false;
  }
  y.assign(n, 0);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) y[pivot_col[r]] = b[r];
  return true;
}

}  // namespace

std::vector<FieldElem> artin_schreier_roots(const FieldElem& c) {
  const FieldCtx& F = c.ctx();
  const unsigned k = F.k();
  const std::uint64_t p = F.p();
  // Column i holds the coordinates of (x^i)^p - x^i.
  std::vector<std::vector<std::uint64_t>> a(k, std::vector<std::uint64_t>(k, 0));
  FieldElem basis = F.one();
  for (unsigned i = 0; i < k; ++i) {
    const FieldElem img = basis.frobenius() - basis;
    for (unsigned r = 0; r < k; ++r) a[r][i] = img.coeff(r);
    basis *= F.gen();
  }
  std::vector<std::uint64_t> b(k), y;
  for (unsigned r = 0; r < k; ++r) b[r] = c.coeff(r);
  if (!solve_mod_p(a, b, p, y)) return {};

  std::vector<std::int64_t> yc(y.begin(), y.end());
  const FieldElem x0 = F.from_coeffs(yc);
  std::vector<FieldElem> roots;
  roots.reserve(p);
  for (std::uint64_t t = 0; t < p; ++t) {
    FieldElem x = x0 + F.from_int(static_cast<std::int64_t>(t));
    if (x.frobenius() - x != c) throw std::logic_error("artin_schreier_roots: root check failed");
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool is_square(const FieldElem& s) {
  if (s.is_zero()) return true;
  return s.pow((s.ctx().order() - 1) / 2).is_one();
}

std::vector<FieldElem> square_roots(const FieldElem& s) {
  const FieldCtx& F = s.ctx();
  if (s.is_zero()) return {F.zero()};
  if (!is_square(s)) return {};
  const std::uint64_t q = F.order();
  FieldElem r(F);
  if (q % 4 == 3) {
    r = s.pow((q + 1) / 4);
  } else {
    // Tonelli-Shanks with q - 1 = 2^e * t, t odd.
    std::uint64_t t = q - 1;
    unsigned e = 0;
    while (t % 2 == 0) {
      t /= 2;
      ++e;
    }
    FieldElem z(F);
    for (std::uint64_t idx = 2;; ++idx) {
      z = F.element(idx);
      if (!is_square(z)) break;
    }
    FieldElem c = z.pow(t);
    FieldElem x = s.pow((t + 1) / 2);
    FieldElem b = s.pow(t);
    unsigned m = e;
    while (!b.is_one()) {
      unsigned i = 0;
      FieldElem b2 = b;
      while (!b2.is_one()) {
        b2 *= b2;
        ++i;
      }
      FieldElem g = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) g *= g;
      x *= g;
      c = g * g;
      b *= c;
      m = i;
    }
    r = x;
  }
  if (r * r != s) throw std::logic_error("square_roots: verification failed");
  std::vector<FieldElem> out{r, -r};
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qcoh
