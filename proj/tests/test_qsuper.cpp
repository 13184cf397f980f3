#include <gtest/gtest.h>

#include "qcoh/qsuper.hpp"

using namespace qcoh;
namespace b = qcoh::q2;

namespace {

Vec combo(const SuperAlgebra& g, std::initializer_list<std::pair<std::size_t, std::int64_t>> terms) {
  Vec v = zero_vec(g.ctx(), g.dim());
  for (auto [i, c] : terms) v[i] += g.ctx().from_int(c);
  return v;
}

}  // namespace

TEST(Qsuper, BasisOrderAndParities) {
  const auto g = build_q2(make_extension(3, 1));
  EXPECT_EQ(g.names(), (std::vector<std::string>{"h1", "h2", "e", "f", "H1", "H2", "E", "F"}));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(g.parity(i), i >= 4 ? 1 : 0);
  EXPECT_EQ(g.weight(b::e), (IntWeight{1, -1}));
  EXPECT_EQ(g.weight(b::F), (IntWeight{-1, 1}));
  EXPECT_EQ(g.weight(b::H2), (IntWeight{0, 0}));
}

TEST(Qsuper, NamedBrackets) {
  const auto g = build_q2(make_extension(5, 1));
  EXPECT_EQ(g.bracket_basis(b::e, b::f), combo(g, {{b::h1, 1}, {b::h2, -1}}));
  EXPECT_EQ(g.bracket_basis(b::E, b::F), combo(g, {{b::h1, 1}, {b::h2, 1}}));
  EXPECT_EQ(g.bracket_basis(b::H1, b::H1), combo(g, {{b::h1, 2}}));
  EXPECT_EQ(g.bracket_basis(b::H2, b::H2), combo(g, {{b::h2, 2}}));
  EXPECT_EQ(g.bracket_basis(b::h1, b::h2), zero_vec(g.ctx(), 8));
  EXPECT_EQ(g.bracket_basis(b::f, b::E), combo(g, {{b::H2, 1}, {b::H1, -1}}));
  EXPECT_EQ(g.bracket_basis(b::h1, b::e), combo(g, {{b::e, 1}}));
}

TEST(Qsuper, StructureConstantsMatchMatrixSupercommutators) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto g = build_q2(make_extension(p, 1));
    ASSERT_TRUE(g.has_realization());
    for (std::size_t x = 0; x < 8; ++x) {
      for (std::size_t y = 0; y < 8; ++y) {
        const Matrix& X = g.realization(x);
        const Matrix& Y = g.realization(y);
        const Matrix sc = g.parity(x) && g.parity(y) ? X * Y + Y * X : X * Y - Y * X;
        EXPECT_EQ(g.realize(g.bracket_basis(x, y)), sc) << g.name(x) << "," << g.name(y);
      }
    }
  }
}

TEST(Qsuper, JacobiSkewWeights) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto g = build_q2(make_extension(p, 1));
    EXPECT_TRUE(validate_super_jacobi(g).ok);
    EXPECT_TRUE(validate_super_skew(g));
    EXPECT_TRUE(validate_weights(g));
    EXPECT_TRUE(validate_restrictedness(g));
  }
}

TEST(Qsuper, MutationBreaksJacobi) {
  auto g = build_q2(make_extension(3, 1));
  g.c_mut(b::e, b::f, b::h1) += g.ctx().one();
  EXPECT_FALSE(validate_super_jacobi(g).ok);
}

TEST(Qsuper, Abelianization) {
  const auto g = build_q2(make_extension(3, 1));
  EXPECT_EQ(abelianization_sdim(g), (Sdim{0, 1}));
  EXPECT_EQ(abelianization_sdim(g.restrict_to({b::h1, b::h2, b::e, b::f})), (Sdim{1, 0}));

  Field F = make_extension(3, 1);
  const SuperAlgebra toy(F, {"a", "b"}, {0, 0}, {{0, 0}, {0, 0}}, std::vector<FieldElem>(8, F->zero()));
  EXPECT_EQ(abelianization_sdim(toy), (Sdim{2, 0}));
  EXPECT_TRUE(validate_super_jacobi(toy).ok);
}

TEST(Qsuper, PMap) {
  for (std::uint32_t p : {3u, 5u}) {
    const auto g = build_q2(make_extension(p, 1));
    EXPECT_EQ(g.p_map(g.unit(b::h1)), g.unit(b::h1));
    EXPECT_EQ(g.p_map(g.unit(b::h2)), g.unit(b::h2));
    EXPECT_EQ(g.p_map(g.unit(b::e)), zero_vec(g.ctx(), 8));
    EXPECT_EQ(g.p_map(g.unit(b::f)), zero_vec(g.ctx(), 8));
    // x^[p] = x^p in the matrix realization.
    const Vec x = combo(g, {{b::h1, 2}, {b::e, 1}, {b::f, 1}});
    EXPECT_EQ(g.realize(g.p_map(x)), g.realize(x).pow(p));
  }
}

TEST(Qsuper, JsonDumpHasBasisAndConstants) {
  const auto j = build_q2(make_extension(3, 1)).to_json();
  EXPECT_EQ(j["basis"].size(), 8u);
  EXPECT_TRUE(j.contains("brackets"));
}
