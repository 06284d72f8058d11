#include <gtest/gtest.h>

#include "orthoscalar/error.hpp"
#include "orthoscalar/morphisms.hpp"
#include "orthoscalar/synthesis.hpp"
#include "support.hpp"

using namespace orthoscalar;

namespace {

Representation synthesized(std::size_t n, DimensionVector dims, Character chi, std::uint64_t seed) {
  SynthesisOptions opts;
  opts.seed = seed;
  const SynthesisResult r = synthesize(star_quiver(n), dims, chi, opts);
  EXPECT_TRUE(r.converged);
  return r.representation;
}

}  // namespace

TEST(Hom, LoopEndomorphisms) {
  const Representation t = oracle::loop_t();
  const HomSpace plain = hom_space(t, t, Category::plain);
  const HomSpace star = hom_space(t, t, Category::star);
  EXPECT_EQ(plain.dimension(), 2u);
  EXPECT_EQ(star.dimension(), 1u);
  for (const Morphism& c : plain.basis) EXPECT_LT(hom_residual(c, t, t, Category::plain), 1e-12);
}

TEST(Hom, MatchesElementaryOracleOnRandomPairs) {
  Rng rng(17);
  const std::vector<DimensionVector> shapes = {{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}, {0, 1}};
  for (const auto& ds : shapes) {
    for (const auto& dt : shapes) {
      const Representation s = random_representation(a2_quiver(), ds, rng());
      const Representation t = random_representation(a2_quiver(), dt, rng());
      for (Category c : {Category::plain, Category::star}) {
        EXPECT_EQ(hom_space(s, t, c).dimension(), oracle::hom_dimension(s, t, c == Category::star))
            << ds[0] << ds[1] << " -> " << dt[0] << dt[1] << " " << to_string(c);
      }
    }
  }
}

TEST(Hom, MatchesOracleOnStarSums) {
  const Representation a = oracle::equiangular_star();
  const Representation b = synthesized(3, {2, 1, 1, 1}, {1.0, 2.0 / 3, 2.0 / 3, 2.0 / 3}, 4);
  const Representation s = direct_sum(a, b);
  for (Category c : {Category::plain, Category::star}) {
    const bool star = c == Category::star;
    EXPECT_EQ(hom_space(s, s, c).dimension(), oracle::hom_dimension(s, s, star));
    EXPECT_EQ(hom_space(a, s, c).dimension(), oracle::hom_dimension(a, s, star));
  }
}

TEST(Hom, IdentityAndAdjoint) {
  const Representation t = oracle::equiangular_star();
  EXPECT_LT(hom_residual(identity_morphism(t), t, t, Category::star), 1e-15);
  const Representation s = direct_sum(t, t);
  const HomSpace end = hom_space(s, s, Category::star);
  Rng rng(1);
  const Morphism c = random_element(end, rng);
  const Morphism d = adjoint(c, s, s);
  EXPECT_LT(hom_residual(d, s, s, Category::star), 1e-10);
  EXPECT_LT(hom_residual(c + scaled(d, Complex(0.0, 2.0)), s, s, Category::star), 1e-10);
}

TEST(Hom, AdjointOfPlainMorphismCanFail) {
  const Representation t = oracle::loop_t();
  Morphism a;
  a.maps.push_back((Matrix(2, 2) << 3.0, 1.0, 0.0, 1.0).finished());
  EXPECT_LT(hom_residual(a, t, t, Category::plain), 1e-15);
  EXPECT_THROW(adjoint(a, t, t), Error);
}

TEST(Schur, DirectSumOfCopiesHasFourEndomorphisms) {
  const Representation t = oracle::equiangular_star();
  EXPECT_TRUE(is_schur(t, Category::plain));
  EXPECT_TRUE(is_indecomposable_star(t));
  const Representation s = direct_sum(t, t);
  EXPECT_EQ(hom_space(s, s, Category::star).dimension(), 4u);
  EXPECT_FALSE(is_schur(s, Category::star));
}

TEST(Schur, LoopIsStarIndecomposableButNotPlainSchur) {
  const Representation t = oracle::loop_t();
  EXPECT_TRUE(is_indecomposable_star(t));
  EXPECT_FALSE(is_schur(t, Category::plain));
}

TEST(Decompose, RecoversSummands) {
  const Representation a = oracle::equiangular_star();
  const Representation b = synthesized(3, {1, 1, 1, 0}, {1.0, 0.5, 0.5, std::nullopt}, 2);
  Rng rng(6);
  const Representation s = direct_sum(std::vector<Representation>{a, b, a});
  const Representation mixed = conjugate(s, random_vertex_unitaries(s.dims(), rng));
  const DecompositionResult d = decompose(mixed, 3);
  ASSERT_EQ(d.summands.size(), 3u);
  EXPECT_LT(d.orthogonality_residual, 1e-10);
  EXPECT_LT(d.reassembly_residual, 1e-10);
  std::size_t equiangular = 0;
  for (const Representation& part : d.summands) {
    EXPECT_TRUE(is_indecomposable_star(part));
    if (part.dims() == a.dims()) {
      ++equiangular;
      EXPECT_EQ(are_equivalent_star(part, a, 1).status, EquivalenceStatus::equivalent);
    }
  }
  EXPECT_EQ(equiangular, 2u);
}

TEST(Decompose, IndecomposableIsItself) {
  const DecompositionResult d = decompose(oracle::loop_t(), 0);
  ASSERT_EQ(d.summands.size(), 1u);
  EXPECT_LT(d.reassembly_residual, 1e-12);
}

TEST(Equivalence, ConjugateHasWitness) {
  const Representation a = synthesized(4, {2, 1, 1, 1, 1}, {1.0, 0.5, 0.5, 0.5, 0.5}, 9);
  Rng rng(10);
  const auto u = random_vertex_unitaries(a.dims(), rng);
  const Representation b = conjugate(a, u);
  const EquivalenceResult e = are_equivalent_star(a, b, 5);
  ASSERT_EQ(e.status, EquivalenceStatus::equivalent);
  ASSERT_TRUE(e.witness);
  EXPECT_LE(e.witness_residual, 1e-8);
  EXPECT_LE(unitary_equivalence_residual(a, b, *e.witness), 1e-8);
}

TEST(Equivalence, TightFrameOfThreeLinesIsUnique) {
  const Representation a = synthesized(3, {2, 1, 1, 1}, {1.0, 2.0 / 3, 2.0 / 3, 2.0 / 3}, 1);
  const EquivalenceResult e = are_equivalent_star(a, oracle::equiangular_star(), 0);
  EXPECT_EQ(e.status, EquivalenceStatus::equivalent);
  EXPECT_LE(e.witness_residual, 1e-8);
}

TEST(Equivalence, DifferentDimensionsOrCharacters) {
  const Representation a = synthesized(3, {2, 1, 1, 1}, {1.0, 2.0 / 3, 2.0 / 3, 2.0 / 3}, 1);
  const Representation c = synthesized(3, {1, 1, 1, 0}, {1.0, 0.5, 0.5, std::nullopt}, 1);
  EXPECT_EQ(are_equivalent_star(a, c, 0).status, EquivalenceStatus::not_equivalent);
  Matrix half(1, 1), one(1, 1);
  half << 0.5;
  one << 1.0;
  const Representation x(a2_quiver(), {1, 1}, {half});
  const Representation y(a2_quiver(), {1, 1}, {one});
  EXPECT_EQ(are_equivalent_star(x, y, 0).status, EquivalenceStatus::not_equivalent);
}

namespace {

Representation a2(Complex c) {
  Matrix m(1, 1);
  m << c;
  return Representation(a2_quiver(), {1, 1}, {m});
}

}  // namespace

TEST(ReferenceCases, A2HomDimensions) {
  EXPECT_EQ(hom_space(a2(1.0), a2(1.0), Category::plain).dimension(), 1u);
  EXPECT_EQ(hom_space(a2(0.0), a2(0.0), Category::plain).dimension(), 2u);
  EXPECT_TRUE(is_schur(a2(1.0), Category::plain));
  EXPECT_TRUE(is_schur(a2(1.0), Category::star));
  const Representation s = direct_sum(a2(1.0), a2(1.0));
  EXPECT_EQ(hom_space(s, s, Category::plain).dimension(), 4u);
  EXPECT_FALSE(is_schur(s, Category::plain));
}

TEST(ReferenceCases, Indecomposability) {
  Matrix e1(2, 1), e2(2, 1);
  e1 << 1.0, 0.0;
  e2 << 0.0, 1.0;
  EXPECT_FALSE(is_indecomposable_star(Representation(star_quiver(2), {2, 1, 1}, {e1, e2})));
  EXPECT_TRUE(is_indecomposable_star(Representation::zero(star_quiver(1), {1, 0})));
}

TEST(ReferenceCases, AdjointOfScalars) {
  const Representation t = oracle::equiangular_star();
  const Morphism id = identity_morphism(t);
  const Morphism back = adjoint(id, t, t);
  for (std::size_t v = 0; v < 4; ++v) EXPECT_EQ(back.maps[v], id.maps[v]);
  const Complex c(2.0, -3.0);
  const Morphism s = adjoint(scaled(id, c), t, t);
  for (std::size_t v = 0; v < 4; ++v) EXPECT_LT((s.maps[v] - std::conj(c) * id.maps[v]).norm(), 1e-15);
}

TEST(ReferenceCases, DecomposeInequivalentLines) {
  const DecompositionResult d = decompose(direct_sum(a2(1.0), a2(2.0)), 0);
  ASSERT_EQ(d.summands.size(), 2u);
  std::vector<double> moduli;
  for (const Representation& s : d.summands) moduli.push_back(std::abs(s.block(0)(0, 0)));
  std::sort(moduli.begin(), moduli.end());
  EXPECT_NEAR(moduli[0], 1.0, 1e-10);
  EXPECT_NEAR(moduli[1], 2.0, 1e-10);
}

TEST(ReferenceCases, SelfEquivalenceWitnessIsScalarUnitary) {
  const Representation t = oracle::equiangular_star();
  const EquivalenceResult e = are_equivalent_star(t, t, 4);
  ASSERT_TRUE(e.witness);
  // End is scalar, so the witness is a common phase times the identity
  const Complex phase = (*e.witness)[0](0, 0);
  for (std::size_t v = 0; v < 4; ++v) {
    EXPECT_LT(((*e.witness)[v] - phase * Matrix::Identity(t.dim(v), t.dim(v))).norm(), 1e-10);
  }
}
