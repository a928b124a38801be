#include <gtest/gtest.h>

#include <cmath>

#include "dualseq/barcode.hpp"
#include "dualseq/dualnum.hpp"
#include "dualseq/errors.hpp"
#include "dualseq/linalg.hpp"
#include "dualseq/triang.hpp"
#include "support/generators.hpp"

using namespace dualseq;
using namespace dualseq::testing;

namespace {

const Field F2 = Field::prime(2);
const Field F5 = Field::prime(5);

Barcode bars(const Seq& v) { return barcode_by_ranks(v); }

// Hom in the enlarged category as (cycle coordinates, quotient coordinates).
struct HatHom {
  HomSpace space;
  explicit HatHom(const Seq& t, const Seq& x) : space(hom_complex(t, x)) {}

  std::size_t dim() const { return space.cycles_dim() + space.quotient_dim(); }
  std::vector<HatMorphism> basis() const {
    std::vector<HatMorphism> out;
    for (const auto& c : space.cycles()) out.push_back(HatMorphism::type_one(c));
    for (const auto& q : space.quotient_basis()) out.push_back(HatMorphism::type_eps(q));
    return out;
  }
  Matrix coords(const HatMorphism& m) const {
    return vstack(space.cycle_coordinates(m.one()), space.quotient_coordinates(m.eps()));
  }
};

// Matrix of x -> m o x from Hom(t, src) to Hom(t, dst).
Matrix post_composition(const Seq& t, const HatMorphism& m) {
  HatHom from(t, m.source()), to(t, m.target());
  Matrix out(t.field(), to.dim(), from.dim());
  auto b = from.basis();
  for (std::size_t k = 0; k < b.size(); ++k) out.set_block(0, k, to.coords(compose_hat(m, b[k])));
  return out;
}

// Hom(t, -) exact at the middle of x -u-> y -v-> z.
::testing::AssertionResult hom_exact(const Seq& t, const HatMorphism& u, const HatMorphism& v) {
  Matrix mu = post_composition(t, u), mv = post_composition(t, v);
  if (!(mv * mu).is_zero()) return ::testing::AssertionFailure() << "composite nonzero";
  std::size_t mid = mu.rows();
  if (rank(mu) + rank(mv) != mid)
    return ::testing::AssertionFailure() << "rank " << rank(mu) << " + " << rank(mv) << " != " << mid;
  return ::testing::AssertionSuccess();
}

long long euler(const Seq& v) {
  long long s = 0;
  for (auto [i, h] : cohomology(v)) s += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(h);
  return s;
}

::testing::AssertionResult cohomology_bounds(const Triangle& t) {
  if (euler(t.a) - euler(t.b) + euler(t.c) != 0) return ::testing::AssertionFailure() << "Euler sum";
  auto ha = cohomology(t.a), hb = cohomology(t.b), hc = cohomology(t.c);
  auto get = [](const std::map<int, std::size_t>& h, int i) {
    auto it = h.find(i);
    return it == h.end() ? std::size_t{0} : it->second;
  };
  for (auto [i, d] : hb)
    if (d > get(ha, i) + get(hc, i)) return ::testing::AssertionFailure() << "H^" << i << " too large";
  for (auto [i, d] : hc)
    if (d > get(hb, i) + get(ha, i + 1)) return ::testing::AssertionFailure() << "H^" << i << "(C) too large";
  return ::testing::AssertionSuccess();
}

// Section oracle: E splits iff some sequence morphism s: X -> C has p s = id.
bool has_section(const ExtensionClass& e) {
  HomSpace hs = hom_complex(e.x, e.middle);
  HomSpace end(e.x, e.x, 0);
  Matrix lhs(e.x.field(), end.coordinate_dim(), hs.cycles_dim());
  for (std::size_t k = 0; k < hs.cycles_dim(); ++k)
    lhs.set_block(0, k, end.coordinates(compose(e.projection.one(), hs.cycles()[k])));
  return solve(lhs, end.coordinates(GradedHomElement::identity(e.x))).has_value();
}

HatMorphism inclusion_s11_s01(const Field& f) {
  Seq a = Seq::interval(f, 1, 1), b = Seq::interval(f, 0, 1);
  return HatMorphism::type_one(GradedHomElement::from_function(a, b, 0, -1, 2, [&](int i) {
    return i == 1 ? Matrix::identity(f, 1) : Matrix(f, b.dim(i), a.dim(i));
  }));
}

HatMorphism projection_s01_s00(const Field& f) {
  Seq b = Seq::interval(f, 0, 1), c = Seq::interval(f, 0, 0);
  return HatMorphism::type_one(GradedHomElement::from_function(b, c, 0, -1, 2, [&](int i) {
    return i == 0 ? Matrix::identity(f, 1) : Matrix(f, c.dim(i), b.dim(i));
  }));
}

}  // namespace

TEST(Cone, OfIdentityIsZero) {
  for (const Field& f : {F2, F5}) {
    EXPECT_TRUE(cone(HatMorphism::identity(Seq::interval(f, 0, 0))).u.is_zero());
    EXPECT_TRUE(cone(HatMorphism::identity(Seq::interval(f, kNegInf, 2))).u.is_zero());
  }
}

TEST(Cone, OfEpsIdentityOnPoint) {
  Seq s = Seq::interval(F5, 0, 0);
  Cone c = cone(HatMorphism::eps_identity(s));
  EXPECT_EQ(c.u.lo(), 0);
  EXPECT_EQ(c.u.window_dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(c.u.map(0), Matrix::from_rows(F5, {{-1}}));
  EXPECT_EQ(bars(c.u).to_string(), "[0,1] x1");
  EXPECT_TRUE(c.f.is_type_eps() == false && c.f.eps().is_zero());
  EXPECT_TRUE(c.g.eps().is_zero());
}

TEST(Cone, OfZeroIsSumWithShift) {
  Rng rng(501);
  for (int t = 0; t < 50; ++t) {
    const Field& f = t % 2 ? F5 : F2;
    Seq v = random_seq(rng, f), w = random_seq(rng, f);
    Cone c = cone(HatMorphism::zero(v, w));
    EXPECT_EQ(bars(c.u), bars(direct_sum(v, shift(w, -1)))) << v.to_string() << " -> " << w.to_string();
  }
}

TEST(Cone, RandomIdentityAndTriangleLaws) {
  Rng rng(502);
  for (int t = 0; t < 60; ++t) {
    const Field& f = t % 2 ? F5 : F2;
    SeqShape shape{-2, 2, 2, 0.3};
    Seq v = random_seq(rng, f, shape), w = random_seq(rng, f, shape);
    EXPECT_TRUE(cone(HatMorphism::identity(v)).u.is_zero()) << v.to_string();
    HatMorphism h = random_hat(rng, v, w);
    Triangle tr = cone_triangle(h);
    EXPECT_TRUE(compose_hat(tr.v, tr.u).is_zero()) << h.one().to_string();
    EXPECT_TRUE(compose_hat(tr.w, tr.v).is_zero()) << h.one().to_string();
    Seq probe = random_seq(rng, f, shape);
    EXPECT_TRUE(hom_exact(probe, tr.u, tr.v)) << v.to_string() << " -> " << w.to_string();
    EXPECT_TRUE(hom_exact(probe, tr.v, tr.w)) << v.to_string() << " -> " << w.to_string();
    EXPECT_TRUE(cohomology_bounds(tr));
  }
}

TEST(Cone, EpsTypeGivesExactSequenceWithSameClass) {
  Rng rng(503);
  for (int t = 0; t < 100; ++t) {
    const Field& f = t % 2 ? F5 : F2;
    Seq v = random_seq(rng, f), w = random_seq(rng, f);
    HatMorphism h = random_hat(rng, v, w, false, true);
    Cone c = cone(h);
    ASSERT_TRUE(c.f.eps().is_zero());
    ASSERT_TRUE(c.g.eps().is_zero());
    Triangle back = triangle_from_ses(c.f, c.g);
    EXPECT_EQ(back.w, h) << h.eps().to_string();
    EXPECT_EQ(c.u, extension_from_eps(h.eps()).middle);
  }
}

TEST(Extension, Examples) {
  Seq s11 = Seq::interval(F5, 1, 1);
  ExtensionClass zero = extension_from_eps(GradedHomElement(s11, s11, 0));
  auto h0 = splits(zero);
  ASSERT_TRUE(h0.has_value());
  EXPECT_TRUE(h0->is_zero());
  EXPECT_EQ(bars(zero.middle), bars(direct_sum(s11, shift(s11, -1))));

  ExtensionClass id = extension_from_eps(GradedHomElement::identity(s11));
  EXPECT_EQ(id.middle, Seq::interval(F5, 1, 2));
  EXPECT_FALSE(splits(id).has_value());
  EXPECT_FALSE(has_section(id));
  EXPECT_TRUE(has_section(zero));
}

TEST(Extension, BoundariesSplit) {
  Rng rng(504);
  for (int t = 0; t < 60; ++t) {
    const Field& f = t % 2 ? F5 : F2;
    Seq x = random_seq(rng, f), y = random_seq(rng, f);
    GradedHomElement f0 = differential(random_graded(rng, x, y, -1));
    ExtensionClass e = extension_from_eps(f0);
    EXPECT_TRUE(e.f.has_zero_tails());
    auto h = splits(e);
    ASSERT_TRUE(h.has_value()) << x.to_string() << " -> " << y.to_string();
    EXPECT_EQ(differential(*h), -e.f);
    EXPECT_TRUE(has_section(e));
  }
}

TEST(Extension, SolverMatchesDifferentialWithTails) {
  Rng rng(505);
  for (int t = 0; t < 60; ++t) {
    const Field& f = t % 2 ? F5 : F2;
    Seq x = random_seq(rng, f), y = random_seq(rng, f);
    int n = rng.uniform(-1, 1);
    GradedHomElement g = differential(random_graded(rng, x, y, n - 1, 2));
    auto h = solve_differential(g);
    ASSERT_TRUE(h.has_value());
    EXPECT_EQ(differential(*h), g);
  }
}

TEST(Extension, BijectionWithHomEps) {
  Rng rng(506);
  for (int t = 0; t < 100; ++t) {
    const Field& f = t % 2 ? F5 : F2;
    Seq x = random_seq(rng, f, {-2, 2, 2, 0.3}), y = random_seq(rng, f, {-2, 2, 2, 0.3});
    HomSpace q = eps_space(x, y);
    const std::size_t d = q.quotient_dim();
    // Every nonzero class gives a non-split extension; over F_2 all of them.
    std::size_t split_count = 0, samples = 0;
    const bool exhaustive = f.characteristic() == 2 && d <= 6;
    const std::size_t total = exhaustive ? (std::size_t{1} << d) : 24;
    for (std::size_t s = 0; s < total; ++s) {
      Matrix c(f, d, 1);
      if (exhaustive) {
        for (std::size_t j = 0; j < d; ++j) c.set(j, 0, static_cast<long long>((s >> j) & 1));
      } else if (s > 0) {
        c = random_column(rng, f, d);
      }
      GradedHomElement fe = q.from_quotient_coordinates(c) + differential(random_graded(rng, x, y, -1));
      ExtensionClass e = extension_from_eps(fe);
      bool coset_zero = q.in_boundaries(fe);
      EXPECT_EQ(coset_zero, c.is_zero());
      EXPECT_EQ(splits(e).has_value(), coset_zero);
      EXPECT_EQ(has_section(e), coset_zero) << x.to_string() << " -> " << y.to_string();
      split_count += has_section(e) ? 1 : 0;
      ++samples;
    }
    if (exhaustive) EXPECT_EQ(split_count, 1u);
  }
}

TEST(Ses, Examples) {
  for (const Field& f : {F2, F5}) {
    Triangle t = triangle_from_ses(inclusion_s11_s01(f), projection_s01_s00(f));
    EXPECT_FALSE(t.w.is_zero());
    EXPECT_TRUE(t.w.is_type_eps());
    EXPECT_TRUE(cohomology_bounds(t));

    Seq a = Seq::interval(f, 1, 1), c = Seq::interval(f, 0, 0);
    Biproduct bp = biproduct(a, c);
    Triangle s = triangle_from_ses(bp.in1, bp.pr2);
    EXPECT_TRUE(s.w.is_zero());
  }
}

TEST(Ses, NotExactAndTypeErrors) {
  Seq a = Seq::interval(F5, 1, 1), b = Seq::interval(F5, 0, 1), c = Seq::interval(F5, 0, 0);
  EXPECT_THROW(triangle_from_ses(HatMorphism::zero(a, b), projection_s01_s00(F5)), NotExact);
  EXPECT_THROW(triangle_from_ses(inclusion_s11_s01(F5), HatMorphism::zero(b, c)), NotExact);
  HatMorphism bad(inclusion_s11_s01(F5).one(), GradedHomElement(a, b, 0));
  EXPECT_NO_THROW(triangle_from_ses(bad, projection_s01_s00(F5)));
  Seq p = Seq::interval(F5, 0, 0);
  EXPECT_THROW(triangle_from_ses(HatMorphism::identity(p), HatMorphism::eps_identity(p)), ValidationError);
}

TEST(Ses, RandomSplitSequencesHaveZeroClass) {
  Rng rng(507);
  for (int t = 0; t < 40; ++t) {
    const Field& f = t % 2 ? F5 : F2;
    Seq a = random_seq(rng, f), c = random_seq(rng, f);
    Biproduct bp = biproduct(a, c);
    Triangle tr = triangle_from_ses(bp.in1, bp.pr2);
    EXPECT_TRUE(tr.w.is_zero());
    EXPECT_TRUE(cohomology_bounds(tr));
  }
}

TEST(Truncation, Examples) {
  Triangle t = truncation_triangle(Seq::interval(F5, kNegInf, 0), 0);
  EXPECT_EQ(t.a, Seq::interval(F5, 0, 0));
  EXPECT_EQ(t.c, Seq::interval(F5, kNegInf, -1));

  Seq v = Seq::interval(F5, -1, 2);
  Triangle id = truncation_triangle(v, -1);
  EXPECT_EQ(id.u, HatMorphism::identity(v));
  EXPECT_TRUE(id.c.is_zero());
  EXPECT_TRUE(id.w.is_zero());

  Triangle s = truncation_triangle(Seq::interval(F5, 0, 1), 1);
  EXPECT_EQ(s.a, Seq::interval(F5, 1, 1));
  EXPECT_EQ(s.c, Seq::interval(F5, 0, 0));
  EXPECT_FALSE(s.w.is_zero());
  EXPECT_TRUE(truncate_above(Seq::interval(F5, 0, 1), 5).is_zero());
  EXPECT_EQ(truncate_above(Seq::interval(F5, 0, kPosInf), 5), Seq::interval(F5, 5, kPosInf));
}

TEST(Truncation, ClipsBarcodes) {
  Rng rng(508);
  std::vector<Seq> objects = indecomposable_grid(F5);
  for (int t = 0; t < 40; ++t) objects.push_back(random_seq(rng, F5));
  for (const Seq& v : objects) {
    Barcode full = decompose(v);
    for (int n = -4; n <= 4; ++n) {
      Triangle tr = truncation_triangle(v, n);
      std::map<Interval, std::size_t> clipped;
      for (auto [j, m] : full.bars)
        if (std::max(j.a, n) <= j.b) clipped[Interval(std::max(j.a, n), j.b)] += m;
      EXPECT_EQ(decompose(tr.a).bars, clipped) << v.to_string() << " n=" << n;
      EXPECT_TRUE(tr.a.left() == Tail::Zero);
      EXPECT_TRUE(compose_hat(tr.v, tr.u).is_zero());
      EXPECT_TRUE(compose_hat(tr.w, tr.v).is_zero());
      EXPECT_TRUE(cohomology_bounds(tr));
    }
  }
}

TEST(Truncation, TrianglesAreHomExact) {
  Rng rng(509);
  for (int t = 0; t < 30; ++t) {
    Seq v = random_seq(rng, F2, {-2, 2, 2, 0.4});
    int n = rng.uniform(-3, 3);
    Triangle tr = truncation_triangle(v, n);
    Seq probe = random_seq(rng, F2, {-2, 2, 2, 0.4});
    EXPECT_TRUE(hom_exact(probe, tr.u, tr.v)) << v.to_string() << " n=" << n;
    EXPECT_TRUE(hom_exact(probe, tr.v, tr.w)) << v.to_string() << " n=" << n;
  }
}
