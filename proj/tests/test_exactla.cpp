#include <gtest/gtest.h>

#include <random>

#include "qcoh/exactla.hpp"

using namespace qcoh;

namespace {

Vec ints(const FieldCtx& F, std::initializer_list<std::int64_t> xs) {
  Vec v;
  for (auto x : xs) v.push_back(F.from_int(x));
  return v;
}

// All vectors of F^n for a small field, in index order.
std::vector<Vec> all_vectors(const FieldCtx& F, std::size_t n) {
  std::vector<Vec> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= F.order();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Vec v;
    std::uint64_t r = idx;
    for (std::size_t i = 0; i < n; ++i) {
      v.push_back(F.element(r % F.order()));
      r /= F.order();
    }
    out.push_back(v);
  }
  return out;
}

Matrix random_matrix(const FieldCtx& F, std::size_t r, std::size_t c, std::mt19937_64& rng, int zero_bias = 0) {
  Matrix m(F, r, c);
  std::uniform_int_distribution<std::uint64_t> d(0, F.order() - 1 + zero_bias);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const auto x = d(rng);
      m(i, j) = x >= F.order() ? F.zero() : F.element(x);
    }
  }
  return m;
}

}  // namespace

TEST(Exactla, RrefExamples) {
  Field F5 = make_extension(5, 1);
  const auto id = Matrix::identity(*F5, 3);
  EXPECT_EQ(rref(id).form, id);
  EXPECT_EQ(rref(id).rank, 3u);
  EXPECT_EQ(rank(Matrix(*F5, 2, 4)), 0u);
  const auto m = Matrix::from_ints(*F5, {{1, 2}, {2, 4}});
  const auto r = rref(m);
  EXPECT_EQ(r.rank, 1u);
  ASSERT_EQ(r.form.rows(), 1u);
  EXPECT_EQ(r.form.row_vec(0), ints(*F5, {1, 2}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(Exactla, KernelMatchesBruteForce) {
  Field F3 = make_extension(3, 1);
  const auto m = Matrix::from_ints(*F3, {{1, 1, 0}, {0, 0, 1}});
  const Subspace K = kernel_basis(m);
  ASSERT_EQ(K.dim(), 1u);
  std::size_t brute = 0;
  for (const auto& v : all_vectors(*F3, 3)) {
    const bool in_kernel = is_zero_vec(m * v);
    EXPECT_EQ(in_kernel, K.contains(v));
    brute += in_kernel;
  }
  EXPECT_EQ(brute, 3u);
  EXPECT_TRUE(K.contains(ints(*F3, {1, 2, 0})));

  EXPECT_EQ(kernel_basis(Matrix::identity(*F3, 4)).dim(), 0u);
  EXPECT_EQ(kernel_basis(Matrix(*F3, 2, 4)).dim(), 4u);
}

TEST(Exactla, RankNullityOnRandomMatrices) {
  std::mt19937_64 rng(1);
  for (auto [p, k] : {std::pair{3u, 1u}, {5u, 2u}, {7u, 1u}}) {
    Field F = make_extension(p, k);
    for (int t = 0; t < 30; ++t) {
      const auto m = random_matrix(*F, 1 + rng() % 6, 1 + rng() % 7, rng, static_cast<int>(F->order()));
      const Subspace K = kernel_basis(m);
      EXPECT_EQ(rank(m) + K.dim(), m.cols());
      for (std::size_t i = 0; i < K.dim(); ++i) EXPECT_TRUE(is_zero_vec(m * K.vector(i)));
      EXPECT_EQ(image(m).dim(), rank(m));
      EXPECT_EQ(rank(m.transpose()), rank(m));
    }
  }
}

TEST(Exactla, IntersectionMatchesEnumeration) {
  Field F3 = make_extension(3, 1);
  std::mt19937_64 rng(3);
  const auto vecs = all_vectors(*F3, 3);
  for (int t = 0; t < 40; ++t) {
    const auto A = Subspace::span(*F3, 3, {vecs[rng() % 27], vecs[rng() % 27]});
    const auto B = Subspace::span(*F3, 3, {vecs[rng() % 27], vecs[rng() % 27]});
    const auto I = intersect(A, B);
    std::size_t count = 0;
    for (const auto& v : vecs) {
      const bool both = A.contains(v) && B.contains(v);
      EXPECT_EQ(both, I.contains(v));
      count += both;
    }
    std::size_t expected = 1;
    for (std::size_t i = 0; i < I.dim(); ++i) expected *= 3;
    EXPECT_EQ(count, expected);
  }
}

TEST(Exactla, DimensionFormulaOnRandomSubspaces) {
  std::mt19937_64 rng(100);
  for (int t = 0; t < 100; ++t) {
    Field F = make_extension(t % 2 ? 5 : 3, 1 + t % 3);
    const std::size_t n = 2 + rng() % 6;
    const auto a = random_matrix(*F, rng() % (n + 1), n, rng, static_cast<int>(F->order()));
    const auto b = random_matrix(*F, rng() % (n + 1), n, rng, static_cast<int>(F->order()));
    std::vector<Vec> ra, rb;
    for (std::size_t i = 0; i < a.rows(); ++i) ra.push_back(a.row_vec(i));
    for (std::size_t i = 0; i < b.rows(); ++i) rb.push_back(b.row_vec(i));
    const auto A = Subspace::span(*F, n, ra), B = Subspace::span(*F, n, rb);
    const auto S = sum(A, B), I = intersect(A, B);
    EXPECT_EQ(S.dim() + I.dim(), A.dim() + B.dim());
    EXPECT_TRUE(S.contains(A) && S.contains(B));
    EXPECT_TRUE(A.contains(I) && B.contains(I));
    EXPECT_EQ(quotient_dim(S, A), S.dim() - A.dim());
  }
}

TEST(Exactla, SubspacesAreCanonical) {
  Field F5 = make_extension(5, 1);
  const auto A = Subspace::span(*F5, 3, {ints(*F5, {1, 2, 3}), ints(*F5, {0, 1, 1})});
  const auto B = Subspace::span(*F5, 3, {ints(*F5, {1, 3, 4}), ints(*F5, {2, 4, 1}), ints(*F5, {1, 2, 3})});
  EXPECT_EQ(A, B);
  EXPECT_EQ(A.to_json(), B.to_json());
  EXPECT_FALSE(A == Subspace::full(*F5, 3));
}

TEST(Exactla, EchelonBuilderTracksSpan) {
  Field F3 = make_extension(3, 2);
  std::mt19937_64 rng(5);
  EchelonBuilder eb(*F3, 5);
  std::vector<Vec> added;
  for (int t = 0; t < 12; ++t) {
    const auto m = random_matrix(*F3, 1, 5, rng, 9);
    const Vec v = m.row_vec(0);
    const bool was_in = eb.contains(v);
    EXPECT_EQ(eb.add(v), !was_in);
    added.push_back(v);
    EXPECT_EQ(eb.subspace(), Subspace::span(*F3, 5, added));
    EXPECT_EQ(eb.dim(), eb.subspace().dim());
  }
}

TEST(Exactla, QuotientMapKillsSubspaceAndIsSurjective) {
  Field F5 = make_extension(5, 1);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng() % 5;
    const auto g = random_matrix(*F5, rng() % n, n, rng);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < g.rows(); ++i) rows.push_back(g.row_vec(i));
    const auto S = Subspace::span(*F5, n, rows);
    const QuotientMap q(S);
    EXPECT_EQ(q.dim(), n - S.dim());
    for (std::size_t i = 0; i < S.dim(); ++i) EXPECT_TRUE(is_zero_vec(q.project(S.vector(i))));
    // Kept coordinates project to the standard basis of the quotient.
    for (std::size_t c = 0; c < q.kept().size(); ++c) {
      Vec e = zero_vec(*F5, n);
      e[q.kept()[c]] = F5->one();
      Vec expected = zero_vec(*F5, q.dim());
      expected[c] = F5->one();
      EXPECT_EQ(q.project(e), expected);
    }
    // Linearity: project(u + v) = project(u) + project(v).
    const auto uv = random_matrix(*F5, 2, n, rng);
    Vec s(n, F5->zero());
    for (std::size_t i = 0; i < n; ++i) s[i] = uv(0, i) + uv(1, i);
    const Vec pu = q.project(uv.row_vec(0)), pv = q.project(uv.row_vec(1)), ps = q.project(s);
    for (std::size_t i = 0; i < q.dim(); ++i) EXPECT_EQ(ps[i], pu[i] + pv[i]);
  }
}

TEST(Exactla, MatrixPowerAndProduct) {
  Field F7 = make_extension(7, 1);
  const auto n = Matrix::from_ints(*F7, {{0, 1}, {0, 0}});
  EXPECT_TRUE(n.pow(2).is_zero());
  const auto d = Matrix::from_ints(*F7, {{3, 0}, {0, 2}});
  EXPECT_EQ(d.pow(7), d);  // Fermat entrywise on a diagonal matrix
  EXPECT_EQ(d.pow(0), Matrix::identity(*F7, 2));
  EXPECT_EQ(d * Matrix::identity(*F7, 2), d);
}
