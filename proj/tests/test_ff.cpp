#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "qcoh/ff.hpp"

using namespace qcoh;

namespace qcoh {
void PrintTo(const FieldElem& x, std::ostream* os) { *os << x.str(); }
}  // namespace qcoh

namespace {

std::vector<FieldElem> all_elements(const FieldCtx& F) {
  std::vector<FieldElem> out;
  for (std::uint64_t i = 0; i < F.order(); ++i) out.push_back(F.element(i));
  return out;
}

FieldElem random_elem(const FieldCtx& F, std::mt19937_64& rng) {
  return F.element(std::uniform_int_distribution<std::uint64_t>(0, F.order() - 1)(rng));
}

}  // namespace

TEST(Ff, PrimeFieldIsModularArithmetic) {
  Field F = make_extension(3, 1);
  EXPECT_EQ(F->order(), 3u);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      EXPECT_EQ((F->from_int(a) + F->from_int(b)).to_uint(), static_cast<std::uint32_t>((a + b) % 3));
      EXPECT_EQ((F->from_int(a) * F->from_int(b)).to_uint(), static_cast<std::uint32_t>((a * b) % 3));
    }
  }
  EXPECT_EQ(F->from_int(-1).to_uint(), 2u);
}

TEST(Ff, QuadraticOverF3IsLexLeastIrreducible) {
  // Brute force: first x^2 + c1 x + c0 in lex order (c1, c0) without a root in F_3.
  std::vector<std::uint32_t> expected;
  for (std::uint32_t c1 = 0; c1 < 3 && expected.empty(); ++c1) {
    for (std::uint32_t c0 = 0; c0 < 3 && expected.empty(); ++c0) {
      bool root = false;
      for (std::uint32_t x = 0; x < 3; ++x) root = root || (x * x + c1 * x + c0) % 3 == 0;
      if (!root) expected = {c0, c1, 1};
    }
  }
  Field F = make_extension(3, 2);
  EXPECT_EQ(F->poly(), expected);
  EXPECT_EQ(F->order(), 9u);
}

TEST(Ff, ContextsAreInterned) { EXPECT_EQ(make_extension(5, 2).get(), make_extension(5, 2).get()); }

TEST(Ff, DegreeTenOverF5IsIrreducible) {
  Field F = make_extension(5, 10);
  const poly::Poly f(F->poly().begin(), F->poly().end());
  ASSERT_EQ(f.size(), 11u);
  // gcd(x^(5^d) - x, f) = 1 for the maximal proper divisors d of 10, and f | x^(5^10) - x.
  for (unsigned d : {1u, 2u, 5u}) {
    const auto g = poly::gcd(poly::sub(poly::x_pow_p_pow(d, f, 5), {0, 1}, 5), f, 5);
    EXPECT_EQ(poly::trim(g).size(), 1u) << "d = " << d;
  }
  EXPECT_EQ(poly::trim(poly::sub(poly::x_pow_p_pow(10, f, 5), {0, 1}, 5)).size(), 0u);
  // x^(5^10) = x holds elementwise as well.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    const auto x = random_elem(*F, rng);
    EXPECT_EQ(x.pow(F->order()), x);
  }
}

TEST(Ff, RejectsInvalidParameters) {
  EXPECT_THROW(make_extension(4, 1), std::invalid_argument);
  EXPECT_THROW(make_extension(3, 0), std::invalid_argument);
  EXPECT_THROW(make_extension(3, kMaxDegree + 1), std::invalid_argument);
}

TEST(Ff, FieldAxiomsOnRandomSamples) {
  std::mt19937_64 rng(42);
  for (auto [p, k] : {std::pair{3u, 3u}, {5u, 2u}, {7u, 2u}, {3u, 6u}, {7u, 14u}}) {
    Field F = make_extension(p, k);
    for (int i = 0; i < 200; ++i) {
      const auto a = random_elem(*F, rng), b = random_elem(*F, rng), c = random_elem(*F, rng);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a - a, F->zero());
      if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
      EXPECT_EQ((a + b).frobenius(), a.frobenius() + b.frobenius());
    }
  }
}

TEST(Ff, ElementEnumerationIsABijection) {
  Field F = make_extension(3, 2);
  std::set<std::uint64_t> seen;
  for (const auto& x : all_elements(*F)) seen.insert(x.index());
  EXPECT_EQ(seen.size(), 9u);
  EXPECT_EQ(F->element(0), F->zero());
}

TEST(Ff, FrobeniusFixesExactlyThePrimeField) {
  Field F = make_extension(5, 2);
  std::size_t fixed = 0;
  for (const auto& x : all_elements(*F)) {
    const bool f = x.frobenius() == x;
    EXPECT_EQ(f, x.in_prime_field());
    fixed += f;
  }
  EXPECT_EQ(fixed, 5u);
}

TEST(Ff, ArtinSchreierRoots) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    Field F = make_extension(p, 1);
    EXPECT_EQ(artin_schreier_roots(F->zero()).size(), p);
  }
  EXPECT_TRUE(artin_schreier_roots(make_extension(3, 1)->one()).empty());

  Field F27 = make_extension(3, 3);
  const auto roots = artin_schreier_roots(F27->one());
  std::vector<FieldElem> brute;
  for (const auto& x : all_elements(*F27)) {
    if (x * x * x - x - F27->one() == F27->zero()) brute.push_back(x);
  }
  ASSERT_EQ(roots.size(), 3u);
  auto sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  std::sort(brute.begin(), brute.end());
  EXPECT_EQ(sorted, brute);
  for (const auto& r : roots) {
    for (const auto& s : roots) EXPECT_TRUE((r - s).in_prime_field());
  }
}

TEST(Ff, ArtinSchreierAgreesWithBruteForce) {
  for (auto [p, k] : {std::pair{3u, 2u}, {5u, 2u}, {3u, 3u}, {5u, 5u}}) {
    Field F = make_extension(p, k);
    const auto elems = all_elements(*F);
    for (std::size_t i = 0; i < elems.size(); i += std::max<std::size_t>(1, elems.size() / 40)) {
      const auto& c = elems[i];
      std::vector<FieldElem> brute;
      for (const auto& x : elems) {
        if (x.pow(p) - x == c) brute.push_back(x);
      }
      auto got = artin_schreier_roots(c);
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, brute) << "p=" << p << " k=" << k << " c=" << c.str();
    }
  }
}

TEST(Ff, SquareRoots) {
  Field F3 = make_extension(3, 1), F9 = make_extension(3, 2), F7 = make_extension(7, 1);
  EXPECT_EQ(square_roots(F3->zero()).size(), 1u);
  EXPECT_TRUE(square_roots(F3->from_int(-1)).empty());
  const auto r9 = square_roots(F9->from_int(-1));
  ASSERT_EQ(r9.size(), 2u);
  for (const auto& r : r9) EXPECT_EQ(r * r, F9->from_int(-1));
  auto r7 = square_roots(F7->from_int(4));
  std::vector<std::uint32_t> vals;
  for (const auto& r : r7) vals.push_back(r.to_uint());
  std::sort(vals.begin(), vals.end());
  EXPECT_EQ(vals, (std::vector<std::uint32_t>{2, 5}));
}

TEST(Ff, SquareRootsAgreeWithBruteForce) {
  // Includes q = 1 mod 4 (Tonelli-Shanks) and q = 3 mod 4.
  for (auto [p, k] : {std::pair{3u, 2u}, {5u, 2u}, {7u, 2u}, {3u, 3u}, {13u, 1u}, {17u, 1u}}) {
    Field F = make_extension(p, k);
    const auto elems = all_elements(*F);
    for (const auto& s : elems) {
      std::vector<FieldElem> brute;
      for (const auto& x : elems) {
        if (x * x == s) brute.push_back(x);
      }
      auto got = square_roots(s);
      std::sort(got.begin(), got.end());
      std::sort(brute.begin(), brute.end());
      EXPECT_EQ(got, brute) << "p=" << p << " k=" << k << " s=" << s.str();
      EXPECT_EQ(is_square(s), !brute.empty());
    }
  }
}
