#pragma once

#include <optional>

#include "dualseq/graded.hpp"
#include "dualseq/hom.hpp"
#include "dualseq/seq.hpp"

namespace dualseq {

/// A -u-> B -v-> C -w-> A[1] in the enlarged category.
struct Triangle {
  Seq a;
  Seq b;
  Seq c;
  HatMorphism u;
  HatMorphism v;
  HatMorphism w;
};

/// W[-1] -f-> U -g-> V completing h: V -> W.
struct Cone {
  Seq u;
  HatMorphism f;
  HatMorphism g;
};

/// U^i = ker h1^i (+) cok h1^{i-1} with d = [[alpha, 0], [-gamma, -beta]].
Cone cone(const HatMorphism& h);
/// The triangle W[-1] -> U -> V -> W of cone(h).
Triangle cone_triangle(const HatMorphism& h);

/// 0 -> Y[-1] -> C -> X -> 0 with C^i = X^i (+) Y^{i-1} and
/// d = [[d_X, 0], [-f, -d_Y^{i-1}]].
struct ExtensionClass {
  Seq x;
  Seq y;
  /// Degree-0 element X -> Y with zero tails.
  GradedHomElement f;
  Seq middle;
  HatMorphism inclusion;   // Y[-1] -> C
  HatMorphism projection;  // C -> X
};

/// E_f. An f with nonzero tails is first replaced by its canonical
/// representative.
ExtensionClass extension_from_eps(const GradedHomElement& f);

/// h of degree -1 with -f = d_Y h + h d_X when [f] = 0 in Hom^eps, else nullopt.
std::optional<GradedHomElement> splits(const ExtensionClass& e);

/// 0 -> A -a-> B -b-> C -> 0 of type-1 morphisms, completed by the type-eps
/// class of the sequence. Throws NotExact unless exact in every degree and
/// ValidationError if a or b has an eps part.
Triangle triangle_from_ses(const HatMorphism& a, const HatMorphism& b);

/// V^{>=n}: V^i for i >= n, zero below.
Seq truncate_above(const Seq& v, int n);
/// V^{<n}: V^i for i < n, zero from n on.
Seq truncate_below(const Seq& v, int n);
/// V^{>=n} -beta-> V -delta-> V^{<n} -eps-> V^{>=n}[1].
Triangle truncation_triangle(const Seq& v, int n);

}  // namespace dualseq
