#include <gtest/gtest.h>

#include "dualseq/dualnum.hpp"
#include "dualseq/errors.hpp"
#include "dualseq/hom.hpp"
#include "support/eps_support.hpp"

using namespace dualseq;
using namespace dualseq::testing;

namespace {

const Field F2 = Field::prime(2);
const Field F5 = Field::prime(5);

Matrix M(const Field& f, std::initializer_list<std::initializer_list<long long>> rows) {
  return Matrix::from_rows(f, rows);
}

std::size_t hom_hat_dim(const Seq& v, const Seq& w) {
  HomSpace h = hom_complex(v, w);
  return h.cycles_dim() + h.quotient_dim();
}

}  // namespace

TEST(Validate, Examples) {
  EpsComplex zero_maps(F2, 0, {1, 1}, {Matrix(F2, 1, 1)}, {Matrix(F2, 1, 1)});
  EXPECT_TRUE(validate(zero_maps).ok);
  EpsComplex single(F2, 0, {1, 1}, {M(F2, {{1}})}, {Matrix(F2, 1, 1)});
  EXPECT_TRUE(validate(single).ok);
  EpsComplex bad(F2, 0, {1, 1, 1}, {M(F2, {{1}}), M(F2, {{1}})}, {Matrix(F2, 1, 1), Matrix(F2, 1, 1)});
  ValidationReport r = validate(bad);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.degree, 0);
  EXPECT_THROW(minimize(bad), ValidationError);
}

TEST(Validate, DiffepViolation) {
  // d1 d1 = 0 holds but d1^1 deps^0 + deps^1 d1^0 = [1].
  EpsComplex c(F5, 0, {1, 1, 1}, {M(F5, {{1}}), Matrix(F5, 1, 1)}, {Matrix(F5, 1, 1), M(F5, {{1}})});
  ValidationReport r = validate(c);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.degree, 0);
}

TEST(Validate, IsoTailNeedsZeroD1AtBoundary) {
  EpsComplex c(F5, 0, {1, 1}, {M(F5, {{1}})}, {Matrix(F5, 1, 1)}, Tail::Iso, Tail::Zero);
  EXPECT_FALSE(validate(c).ok);
}

TEST(Validate, ShapeErrors) {
  EXPECT_THROW(EpsComplex(F2, 0, {1, 2}, {Matrix(F2, 1, 1)}, {Matrix(F2, 2, 1)}), ShapeMismatch);
  EXPECT_THROW(EpsComplex(F2, 0, {1, 2}, {}, {}), ShapeMismatch);
}

TEST(Minimize, AlreadyMinimal) {
  EpsComplex c(F5, 0, {1, 2}, {Matrix(F5, 2, 1)}, {M(F5, {{1}, {3}})});
  MinimalModel mm = minimize(c);
  EXPECT_EQ(mm.complex, c);
  for (int i = -1; i <= 2; ++i) {
    EXPECT_EQ(mm.equivalence.f_at(c, mm.complex, i), EpsMap::identity(F5, c.rank(i)));
    EXPECT_EQ(mm.equivalence.g_at(c, mm.complex, i), EpsMap::identity(F5, c.rank(i)));
    EXPECT_TRUE(mm.equivalence.k_at(c, i).is_zero());
  }
  EXPECT_TRUE(verify(c, mm.complex, mm.equivalence));
}

TEST(Minimize, Contractible) {
  EpsComplex c(F2, 0, {1, 1}, {M(F2, {{1}})}, {Matrix(F2, 1, 1)});
  MinimalModel mm = minimize(c);
  EXPECT_EQ(mm.complex.rank(0), 0u);
  EXPECT_EQ(mm.complex.rank(1), 0u);
  EXPECT_TRUE(to_seq(mm.complex).is_zero());
  EXPECT_TRUE(verify(c, mm.complex, mm.equivalence));
  EXPECT_TRUE(naive_verify(c, mm.complex, mm.equivalence));
}

TEST(Minimize, RanksOneTwoOne) {
  // d1^0 = [1,0]^T, d1^1 = [0,1]; deps from the solution space.
  Matrix d0 = M(F5, {{1}, {0}}), d1 = M(F5, {{0, 1}});
  Rng rng(401);
  for (int t = 0; t < 20; ++t) {
    // (diffep): d1^1 e^0 + e^1 d1^0 = 0 forces e^0 = [x; y], e^1 = [-y, z].
    long long x = rng.uniform(0, 4), y = rng.uniform(0, 4), z = rng.uniform(0, 4);
    Matrix e0 = Matrix::from_ints(F5, 2, 1, {x, y}), e1 = Matrix::from_ints(F5, 1, 2, {-y, z});
    EpsComplex c(F5, 0, {1, 2, 1}, {d0, d1}, {e0, e1});
    ASSERT_TRUE(validate(c).ok);
    MinimalModel mm = minimize(c);
    EXPECT_TRUE(mm.complex.is_minimal());
    for (int i = -1; i <= 3; ++i) EXPECT_EQ(mm.complex.rank(i), 0u);
    EXPECT_TRUE(verify(c, mm.complex, mm.equivalence));
    EXPECT_TRUE(naive_verify(c, mm.complex, mm.equivalence));
  }
}

TEST(Minimize, RandomCertificates) {
  Rng rng(402);
  for (int t = 0; t < 300; ++t) {
    const Field& f = t % 2 ? F5 : F2;
    EpsComplex c = random_eps_complex(rng, f, {6, 4, t < 200 ? 0.0 : 0.5});
    ASSERT_TRUE(validate(c).ok) << c.to_string();
    MinimalModel mm = minimize(c);
    EXPECT_TRUE(mm.complex.is_minimal());
    EXPECT_TRUE(validate(mm.complex).ok);
    EXPECT_TRUE(verify(c, mm.complex, mm.equivalence)) << c.to_string();
    EXPECT_TRUE(naive_verify(c, mm.complex, mm.equivalence)) << c.to_string();
    auto h = cohomology(c);
    EXPECT_EQ(h, cohomology(mm.complex));
    EXPECT_EQ(h, cohomology(to_seq(mm.complex)));
  }
}

TEST(Minimize, RankCountsD1Homology) {
  Rng rng(403);
  for (int t = 0; t < 100; ++t) {
    EpsComplex c = random_eps_complex(rng, F5);
    MinimalModel mm = minimize(c);
    for (int i = c.lo() - 1; i <= c.hi() + 1; ++i) {
      std::size_t h = c.rank(i) - rank(c.d1(i)) - rank(c.d1(i - 1));
      EXPECT_EQ(mm.complex.rank(i), h);
    }
  }
}

TEST(Dictionary, Examples) {
  EpsComplex single(F2, 0, {1}, {}, {});
  EXPECT_EQ(to_seq(single), Seq::interval(F2, 0, 0));
  EpsComplex pair(F5, 0, {1, 1}, {Matrix(F5, 1, 1)}, {M(F5, {{1}})});
  Seq v = to_seq(pair);
  EXPECT_EQ(v.window_dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(v.map(0), M(F5, {{1}}));
  EXPECT_EQ(v, Seq::interval(F5, 0, 1));
  EXPECT_THROW(to_seq(EpsComplex(F2, 0, {1, 1}, {M(F2, {{1}})}, {Matrix(F2, 1, 1)})), ValidationError);
}

TEST(Dictionary, RoundTrips) {
  Rng rng(404);
  for (int t = 0; t < 100; ++t) {
    Seq v = random_seq(rng, t % 2 ? F5 : F2);
    EXPECT_EQ(to_seq(from_seq(v)), v);
    EpsComplex n = minimize(random_eps_complex(rng, F5, {6, 4, 0.3})).complex;
    EXPECT_EQ(from_seq(to_seq(n)), n) << n.to_string();
  }
}

TEST(Dictionary, HomDimensionsAgree) {
  Rng rng(405);
  for (int t = 0; t < 60; ++t) {
    SeqShape shape{-2, 2, 2, 0.0};
    Seq v = random_seq(rng, F5, shape), w = random_seq(rng, F5, shape);
    EXPECT_EQ(homotopy_hom_dim(from_seq(v), from_seq(w)), hom_hat_dim(v, w))
        << v.to_string() << " -> " << w.to_string();
  }
  for (int t = 0; t < 40; ++t) {
    EpsComplex c = random_eps_complex(rng, F2, {4, 3, 0.0}), d = random_eps_complex(rng, F2, {4, 3, 0.0});
    Seq v = to_seq(minimize(c).complex), w = to_seq(minimize(d).complex);
    EXPECT_EQ(homotopy_hom_dim(c, d), hom_hat_dim(v, w)) << c.to_string() << " -> " << d.to_string();
  }
}

TEST(Dictionary, EndOfPointIsDualNumbers) {
  for (const Field& f : {F2, F5}) {
    Seq s = Seq::interval(f, 0, 0);
    EXPECT_EQ(hom_hat_dim(s, s), 2u);
    EXPECT_EQ(homotopy_hom_dim(from_seq(s), from_seq(s)), 2u);
    HomSpace e = eps_space(s, s);
    ASSERT_EQ(e.quotient_basis().size(), 1u);
    HatMorphism eps = HatMorphism::type_eps(e.quotient_basis()[0]);
    EXPECT_FALSE(eps.is_zero());
    EXPECT_TRUE(compose_hat(eps, eps).is_zero());
    HatMorphism id = HatMorphism::identity(s);
    EXPECT_EQ(compose_hat(id, eps), eps);
  }
}

TEST(Calculus, CompositionMatchesKLinearProduct) {
  Rng rng(406);
  for (int t = 0; t < 200; ++t) {
    std::size_t a = rng.uniform(0, 3), b = rng.uniform(0, 3), c = rng.uniform(0, 3);
    EpsMap f{random_matrix(rng, F5, b, a), random_matrix(rng, F5, b, a)};
    EpsMap g{random_matrix(rng, F5, c, b), random_matrix(rng, F5, c, b)};
    EpsMap gf = compose(g, f);
    EXPECT_EQ(gf.one, g.one * f.one);
    EXPECT_EQ(gf.eps, g.one * f.eps + g.eps * f.one);
    EXPECT_EQ(k_linear(gf), shaped_mul(k_linear(g), k_linear(f), 2 * c, 2 * b, 2 * a, 5));
  }
}

TEST(Cohomology, Examples) {
  EXPECT_EQ(cohomology(Seq::interval(F5, 0, 1)), (std::map<int, std::size_t>{{0, 1}, {1, 1}}));
  EXPECT_EQ(cohomology_to_string(cohomology(Seq::interval(F5, 0, 1))), "H^0: 1, H^1: 1");
  EXPECT_TRUE(cohomology(Seq::interval(F5, kNegInf, kPosInf)).empty());
  EXPECT_TRUE(cohomology(Seq(F5)).empty());
  EXPECT_EQ(cohomology_to_string({}), "0");
  // k[eps] -eps-> k[eps] directly.
  EpsComplex c(F5, 0, {1, 1}, {Matrix(F5, 1, 1)}, {M(F5, {{1}})});
  EXPECT_EQ(cohomology(c), (std::map<int, std::size_t>{{0, 1}, {1, 1}}));
}

TEST(Cohomology, FormulaMatchesKLinearComplex) {
  Rng rng(407);
  for (int t = 0; t < 100; ++t) {
    Seq v = random_seq(rng, F5, {-3, 3, 3, 0.4});
    EXPECT_EQ(cohomology(v), cohomology(from_seq(v))) << v.to_string();
  }
}
