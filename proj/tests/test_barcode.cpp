#include <gtest/gtest.h>

#include "dualseq/barcode.hpp"
#include "dualseq/errors.hpp"
#include "dualseq/linalg.hpp"
#include "support/generators.hpp"
#include "support/naive.hpp"
#include "support/summand_search.hpp"

using namespace dualseq;
using namespace dualseq::testing;

namespace {

const Field F2 = Field::prime(2);
const Field F5 = Field::prime(5);
const Field Q = Field::rationals();

Seq S(int a, int b, const Field& f = F2) { return Seq::interval(f, a, b); }

std::map<Interval, std::size_t> bars(std::initializer_list<std::pair<const Interval, std::size_t>> l) { return l; }

IntMatrix to_int(const Matrix& m) {
  IntMatrix out = naive_zero(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.at(r, c).as_residue();
  return out;
}

void expect_certificate(const Seq& v, const Barcode& b) {
  ASSERT_TRUE(b.certificate.has_value());
  EXPECT_EQ(b.certificate->source(), assemble(v.field(), b.bars));
  EXPECT_EQ(b.certificate->target(), v);
  EXPECT_TRUE(is_isomorphism(*b.certificate));
}

std::map<Interval, std::size_t> random_bars(Rng& rng) {
  std::map<Interval, std::size_t> out;
  int n = rng.uniform(0, 8);
  for (int k = 0; k < n; ++k) {
    int a = rng.coin(0.2) ? kNegInf : rng.uniform(-4, 4);
    int b = rng.coin(0.2) ? kPosInf : rng.uniform(a == kNegInf ? -4 : a, 4);
    ++out[Interval(a, b)];
  }
  return out;
}

// Ext^1 of the simple at degree j into V restricted to [L, U], for the
// linear quiver L -> ... -> U: cokernel of (h^i) |-> d h^i - h^{i+1} d.
// Only Hom(X^j, V^j) -> Hom(X^j, V^{j+1}) is nonzero for a simple X.
std::size_t ext1_simple(const Seq& v, int j, int U, std::int64_t p) {
  if (j == U) return 0;
  std::size_t a = v.dim(j), b = v.dim(j + 1);
  if (b == 0) return 0;
  if (a == 0) return b;
  return b - naive_rank(to_int(v.map(j)), p);
}

bool injective_by_ext(const Seq& v, std::int64_t p) {
  int L = v.lo() - 2, U = v.hi() + 2;
  for (int j = L; j <= U; ++j)
    if (ext1_simple(v, j, U, p) != 0) return false;
  return true;
}

}  // namespace

TEST(Interval, Validation) {
  EXPECT_THROW(Interval(1, 0), ValidationError);
  EXPECT_THROW(Interval(kPosInf, kPosInf), ValidationError);
  EXPECT_THROW(Interval(kNegInf, kNegInf), ValidationError);
  EXPECT_NO_THROW(Interval(kNegInf, kPosInf));
  EXPECT_EQ(Interval(kNegInf, 2).to_string(), "[-inf,2]");
  EXPECT_EQ(Interval(0, kPosInf).to_string(), "[0,inf]");
}

TEST(RankPairing, Examples) {
  EXPECT_EQ(rank_pairing(S(0, 1), 0, 1), 1u);
  EXPECT_EQ(rank_pairing(direct_sum(S(0, 0), S(1, 1)), 0, 1), 0u);
  EXPECT_EQ(rank_pairing(S(kNegInf, 0), kNegInf, 0), 1u);
  EXPECT_EQ(rank_pairing(S(kNegInf, 0), kNegInf, kPosInf), 0u);
  EXPECT_EQ(rank_pairing(S(kNegInf, kPosInf), kNegInf, kPosInf), 1u);
  EXPECT_EQ(rank_pairing(S(3, kPosInf), 3, kPosInf), 1u);
}

TEST(Decompose, Examples) {
  Seq a(F2, 0, {1, 1}, {Matrix::from_ints(F2, 1, 1, {1})});
  Barcode ba = decompose(a);
  EXPECT_EQ(ba.bars, bars({{Interval(0, 1), 1}}));
  expect_certificate(a, ba);

  Seq b(F2, 0, {1, 1}, {Matrix::from_ints(F2, 1, 1, {0})});
  Barcode bb = decompose(b);
  EXPECT_EQ(bb.bars, bars({{Interval(0, 0), 1}, {Interval(1, 1), 1}}));
  expect_certificate(b, bb);

  Seq c(F2, 0, {2, 1}, {Matrix::from_ints(F2, 1, 2, {1, 0})});
  Barcode bc = decompose(c);
  EXPECT_EQ(bc.bars, bars({{Interval(0, 1), 1}, {Interval(0, 0), 1}}));
  expect_certificate(c, bc);
  EXPECT_EQ(bc.to_string(), "[0,0] x1, [0,1] x1");
}

TEST(Decompose, ZeroObject) {
  Barcode b = decompose(Seq(F5));
  EXPECT_TRUE(b.bars.empty());
  expect_certificate(Seq(F5), b);
}

TEST(Assemble, Examples) {
  EXPECT_TRUE(assemble(F2, {}).is_zero());
  Seq two = assemble(F2, bars({{Interval(0, 0), 2}}));
  EXPECT_EQ(two.lo(), 0);
  EXPECT_EQ(two.hi(), 0);
  EXPECT_EQ(two.window_dims(), std::vector<std::size_t>{2});
  EXPECT_EQ(two.left(), Tail::Zero);
  Seq mixed = assemble(F5, bars({{Interval(kNegInf, 0), 1}, {Interval(0, kPosInf), 1}}));
  EXPECT_EQ(mixed.dim(0), 2u);
  EXPECT_EQ(mixed.left(), Tail::Iso);
  EXPECT_EQ(mixed.right(), Tail::Iso);
  EXPECT_EQ(mixed.left_dim(), 1u);
  EXPECT_EQ(mixed.right_dim(), 1u);
  // An Iso tail needs dims[lo] equal to the stable dimension, so degrees -1
  // and 1 stay inside the window.
  EXPECT_EQ(mixed.lo(), -1);
  EXPECT_EQ(mixed.hi(), 1);
  EXPECT_EQ(decompose(mixed).bars, bars({{Interval(kNegInf, 0), 1}, {Interval(0, kPosInf), 1}}));
}

TEST(Decompose, AgreesWithSummandSearchExhaustively) {
  auto all = all_tiny_sequences();
  EXPECT_EQ(all.size(), 499u);
  for (const TinySeq& t : all) {
    std::vector<Matrix> maps;
    for (std::size_t k = 0; k < t.maps.size(); ++k) {
      Matrix m(F2, t.dims[k + 1], t.dims[k]);
      for (std::size_t r = 0; r < t.dims[k + 1]; ++r)
        for (std::size_t c = 0; c < t.dims[k]; ++c) m.set(r, c, Scalar::from_int(F2, t.maps[k][r][c]));
      maps.push_back(m);
    }
    Seq v(F2, 0, t.dims, maps);
    auto oracle = summand_search(t);
    ASSERT_TRUE(oracle.has_value()) << v.to_string();
    std::map<Interval, std::size_t> expected;
    for (const auto& [j, m] : *oracle) expected[Interval(j.first, j.second)] = m;
    EXPECT_EQ(barcode_by_ranks(v).bars, expected) << v.to_string();
    Barcode b = decompose(v);
    EXPECT_EQ(b.bars, expected) << v.to_string();
    expect_certificate(v, b);
  }
}

TEST(Decompose, RoundTripConjugated) {
  Rng rng(301);
  for (int t = 0; t < 300; ++t) {
    const Field& f = t % 3 == 0 ? Q : (t % 3 == 1 ? F2 : F5);
    auto b = random_bars(rng);
    Seq v = random_conjugate(rng, assemble(f, b));
    Barcode got = decompose(v);
    EXPECT_EQ(got.bars, b) << v.to_string();
    expect_certificate(v, got);
    EXPECT_EQ(barcode_by_ranks(v).bars, b);
  }
}

TEST(Decompose, RandomSequencesMatchRanks) {
  Rng rng(302);
  for (int t = 0; t < 200; ++t) {
    const Field& f = t % 2 ? F5 : Q;
    Seq v = random_seq(rng, f, {-3, 3, 3, 0.4});
    Barcode b = decompose(v);
    EXPECT_EQ(b.bars, barcode_by_ranks(v).bars) << v.to_string();
    expect_certificate(v, b);
    for (const auto& [j, m] : b.bars) EXPECT_GT(m, 0u);
  }
}

TEST(Classify, Examples) {
  Classification full = classify(S(kNegInf, kPosInf));
  EXPECT_TRUE(full.injective);
  EXPECT_TRUE(full.acyclic);
  EXPECT_FALSE(full.h_projective);

  Classification point = classify(S(0, 0));
  EXPECT_FALSE(point.injective);
  EXPECT_FALSE(point.acyclic);
  EXPECT_TRUE(point.h_projective);
  EXPECT_TRUE(point.indecomposable);
  EXPECT_EQ(point.bounded_class, BoundedClass::sb);

  Classification left = classify(S(kNegInf, 0));
  EXPECT_TRUE(left.injective);
  EXPECT_FALSE(left.acyclic);
  EXPECT_TRUE(left.h_projective);
  EXPECT_EQ(left.bounded_class, BoundedClass::b);
  EXPECT_FALSE(left.compact);

  EXPECT_FALSE(classify(direct_sum(S(0, 0), S(2, 3))).indecomposable);
  EXPECT_EQ(classify(S(0, kPosInf)).bounded_class, BoundedClass::plus);
}

TEST(Classify, GridPredicates) {
  for (const Field& f : {F2, F5, Q})
    for (const Seq& s : indecomposable_grid(f)) {
      Barcode b = decompose(s);
      ASSERT_EQ(b.bars.size(), 1u);
      const Interval j = b.bars.begin()->first;
      Classification c = classify(s);
      EXPECT_EQ(c.h_projective, j.b != kPosInf) << s.to_string();
      EXPECT_EQ(c.injective, j.a == kNegInf) << s.to_string();
      EXPECT_EQ(c.acyclic, j.a == kNegInf && j.b == kPosInf) << s.to_string();
      EXPECT_EQ(c.compact, j.a != kNegInf && j.b != kPosInf) << s.to_string();
      EXPECT_TRUE(c.indecomposable);
      EXPECT_TRUE(c.finitely_generated_degreewise);
    }
}

TEST(Classify, InjectiveMatchesExtOracle) {
  Rng rng(303);
  for (const Seq& s : indecomposable_grid(F5)) EXPECT_EQ(classify(s).injective, injective_by_ext(s, 5)) << s.to_string();
  for (int t = 0; t < 300; ++t) {
    Seq v = random_seq(rng, t % 2 ? F2 : F5, {-3, 3, 2, 0.5});
    const std::int64_t p = static_cast<std::int64_t>(v.field().characteristic());
    Classification c = classify(v);
    EXPECT_EQ(c.injective, injective_by_ext(v, p)) << v.to_string();
    if (c.acyclic) EXPECT_TRUE(c.injective);
  }
}

TEST(Classify, AcyclicMeansAllMapsInvertible) {
  Rng rng(304);
  for (int t = 0; t < 200; ++t) {
    Seq v = random_seq(rng, F5, {-2, 2, 2, 0.7});
    bool iso = true;
    for (int i = v.lo() - 3; i <= v.hi() + 3; ++i) {
      Matrix d = v.map(i);
      if (d.rows() != d.cols() || naive_rank(to_int(d), 5) != d.rows()) iso = false;
    }
    EXPECT_EQ(classify(v).acyclic, iso) << v.to_string();
  }
}

TEST(Classify, Semiorthogonality) {
  Rng rng(305);
  std::vector<Seq> acyclic;
  for (const Seq& s : indecomposable_grid(F5))
    if (classify(s).acyclic) acyclic.push_back(s);
  for (int k = 0; k < 5; ++k) {
    std::map<Interval, std::size_t> b{{Interval(kNegInf, kPosInf), static_cast<std::size_t>(rng.uniform(1, 3))}};
    acyclic.push_back(random_conjugate(rng, assemble(F5, b)));
  }
  for (const Seq& p : indecomposable_grid(F5)) {
    if (!classify(p).h_projective) continue;
    for (const Seq& a : acyclic) {
      HomSpace h = hom_complex(p, a);
      EXPECT_EQ(h.cycles_dim() + h.quotient_dim(), 0u) << p.to_string() << " -> " << a.to_string();
    }
  }
}

TEST(MaxInjective, Examples) {
  Subobject z = max_injective_subobject(S(0, 2, F5));
  EXPECT_TRUE(z.object.is_zero());

  Seq full = S(kNegInf, kPosInf, F5);
  Subobject all = max_injective_subobject(full);
  EXPECT_EQ(all.object, full);

  Seq v = direct_sum(S(kNegInf, 0, F5), S(0, 1, F5));
  Subobject sub = max_injective_subobject(v);
  EXPECT_EQ(decompose(sub.object).bars, bars({{Interval(kNegInf, 0), 1}}));
  EXPECT_FALSE(sub.inclusion.is_type_eps());
}

TEST(MaxInjective, IsInjectiveSummandOfLeftInfiniteBars) {
  Rng rng(306);
  for (int t = 0; t < 150; ++t) {
    const Field& f = t % 2 ? F5 : Q;
    auto b = random_bars(rng);
    Seq v = random_conjugate(rng, assemble(f, b));
    Subobject sub = max_injective_subobject(v);
    std::map<Interval, std::size_t> expected;
    for (const auto& [j, m] : b)
      if (j.a == kNegInf) expected[j] = m;
    EXPECT_EQ(decompose(sub.object).bars, expected) << v.to_string();
    EXPECT_TRUE(classify(sub.object).injective);
    const GradedHomElement& incl = sub.inclusion.one();
    EXPECT_TRUE(differential(incl).is_zero());
    for (int i = std::min(v.lo(), sub.object.lo()) - 2; i <= std::max(v.hi(), sub.object.hi()) + 2; ++i)
      EXPECT_EQ(rank(incl.at(i)), sub.object.dim(i));
  }
}
