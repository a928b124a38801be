#include "dualseq/hom.hpp"

#include <algorithm>
#include <cstdlib>

#include "dualseq/errors.hpp"

namespace dualseq {

namespace {

std::vector<std::size_t> block_offsets(const Seq& v, const Seq& w, int n, int lo, int hi) {
  std::vector<std::size_t> off{0};
  for (int i = lo; i <= hi; ++i) off.push_back(off.back() + w.dim(n + i) * v.dim(i));
  return off;
}

// d^n from Hom^n on [lo, hi] to Hom^{n+1} on [lo, hi-1], row-major vec of
// each component.
Matrix build_differential(const Seq& v, const Seq& w, int n, int lo, int hi) {
  const Field& f = v.field();
  auto dom = block_offsets(v, w, n, lo, hi);
  auto cod = block_offsets(v, w, n + 1, lo, hi - 1);
  Matrix d(f, cod.back(), dom.back());
  const long long sign = (n % 2 == 0) ? 1 : -1;
  for (int i = lo; i < hi; ++i) {
    const std::size_t r = cod[i - lo], c0 = dom[i - lo], c1 = dom[i + 1 - lo];
    // d_W^{n+i} f^i
    d.set_block(r, c0, kron(w.map(n + i), Matrix::identity(f, v.dim(i))));
    // -(-1)^n f^{i+1} d_V^i
    d.set_block(r, c1, kron(Matrix::identity(f, w.dim(n + i + 1)), v.map(i).transpose()).scaled(-sign));
  }
  return d;
}

struct WindowRange {
  int lo, hi;
};

WindowRange window_at(const Seq& v, const Seq& w, int n, int margin) {
  return {admissible_lo(v, w, n) - margin, admissible_hi(v, w, n) + margin};
}

}  // namespace

int default_depth(const Seq& v, const Seq& w, int degree) {
  int span = admissible_hi(v, w, degree) - admissible_lo(v, w, degree);
  return 3 * span + std::abs(degree) + 4;
}

HomSpace::HomSpace(const Seq& v, const Seq& w, int degree, int margin) : v_(v), w_(w), n_(degree) {
  if (!(v.field() == w.field())) throw ShapeMismatch("HomSpace: field mismatch");
  if (margin < 1) throw ValidationError("HomSpace: margin must be at least 1");
  auto [lo, hi] = window_at(v, w, degree, margin);
  lo_ = lo;
  hi_ = hi;
  offsets_ = block_offsets(v, w, n_, lo_, hi_);
  d_ = build_differential(v, w, n_, lo_, hi_);
  boundary_ = build_differential(v, w, n_ - 1, lo_, hi_ + 1);

  cycle_basis_ = kernel(d_);
  for (std::size_t k = 0; k < cycle_basis_.cols(); ++k) {
    GradedHomElement e = element(cycle_basis_.column(k));
    // Cycles are constant on the tails.
    Matrix l = e.at(lo_), r = e.at(hi_);
    std::vector<Matrix> comps;
    for (int i = lo_; i <= hi_; ++i) comps.push_back(e.at(i));
    cycles_.emplace_back(v_, w_, n_, lo_, std::move(comps), TailPattern{l, l}, TailPattern{r, r});
  }

  reducer_ = SubspaceReducer(boundary_);
  for (std::size_t j : reducer_.free_coordinates()) {
    Matrix e(v.field(), coordinate_dim(), 1);
    e.set(j, 0, 1);
    quotient_.push_back(element(e));
  }
}

void HomSpace::check_element(const GradedHomElement& g) const {
  if (g.degree() != n_ || !(g.source() == v_) || !(g.target() == w_))
    throw ShapeMismatch("element does not belong to this Hom space");
}

Matrix HomSpace::coordinates(const GradedHomElement& g) const {
  check_element(g);
  Matrix c(v_.field(), coordinate_dim(), 1);
  for (int i = lo_; i <= hi_; ++i) c.set_block(offsets_[i - lo_], 0, g.at(i).flattened());
  return c;
}

GradedHomElement HomSpace::element(const Matrix& coords) const {
  if (coords.rows() != coordinate_dim() || coords.cols() != 1)
    throw ShapeMismatch("HomSpace::element: wrong coordinate length");
  std::vector<Matrix> comps;
  for (int i = lo_; i <= hi_; ++i) {
    std::size_t r = w_.dim(n_ + i), c = v_.dim(i);
    comps.push_back(Matrix::unflatten(coords.block(offsets_[i - lo_], 0, r * c, 1), r, c));
  }
  return GradedHomElement::supported(v_, w_, n_, lo_, std::move(comps));
}

GradedHomElement HomSpace::canonical(const GradedHomElement& g) const {
  return element(reducer_.reduce(coordinates(g)));
}

Matrix HomSpace::quotient_coordinates(const GradedHomElement& g) const {
  return reducer_.quotient_coordinates(coordinates(g));
}

GradedHomElement HomSpace::from_quotient_coordinates(const Matrix& c) const {
  if (c.rows() != quotient_dim() || c.cols() != 1) throw ShapeMismatch("quotient coordinates: wrong length");
  Matrix x(v_.field(), coordinate_dim(), 1);
  const auto& free = reducer_.free_coordinates();
  for (std::size_t k = 0; k < free.size(); ++k) x.set(free[k], 0, c.at(k, 0));
  return element(x);
}

bool HomSpace::in_boundaries(const GradedHomElement& g) const { return reducer_.contains(coordinates(g)); }

bool HomSpace::is_cycle(const GradedHomElement& g) const {
  check_element(g);
  return differential(g).is_zero();
}

Matrix HomSpace::cycle_coordinates(const GradedHomElement& g) const {
  if (!is_cycle(g)) throw ValidationError("cycle_coordinates: element is not a cycle");
  auto x = solve(cycle_basis_, coordinates(g));
  if (!x) throw ValidationError("cycle_coordinates: element outside the cycle space");
  return *x;
}

std::pair<std::size_t, std::size_t> hom_dims_at_margin(const Seq& v, const Seq& w, int degree, int margin) {
  auto [lo, hi] = window_at(v, w, degree, margin);
  Matrix d = build_differential(v, w, degree, lo, hi);
  Matrix b = build_differential(v, w, degree - 1, lo, hi + 1);
  return {d.cols() - rank(d), b.rows() - rank(b)};
}

HomSpace hom_complex(const Seq& v, const Seq& w, int degree, const HomOptions& options) {
  if (!options.certify) return HomSpace(v, w, degree);
  StabilizationCertificate cert;
  cert.depth = options.depth.value_or(default_depth(v, w, degree));
  for (int m0 = 0;; ++m0) {
    if (m0 + 2 > cert.depth)
      throw StabilizationDepthExceeded("Hom dimensions did not stabilize within depth " +
                                       std::to_string(cert.depth));
    while (static_cast<int>(cert.dims.size()) < m0 + 3)
      cert.dims.push_back(hom_dims_at_margin(v, w, degree, static_cast<int>(cert.dims.size())));
    if (cert.dims[m0] == cert.dims[m0 + 1] && cert.dims[m0 + 1] == cert.dims[m0 + 2]) {
      cert.margin = m0;
      break;
    }
  }
  HomSpace h(v, w, degree, std::max(HomSpace::kCanonicalMargin, cert.margin));
  h.certificate_ = std::move(cert);
  return h;
}

HomSpace eps_space(const Seq& v, const Seq& w) { return HomSpace(v, w, 0); }

HatMorphism::HatMorphism(GradedHomElement one, GradedHomElement eps) : HatMorphism(std::move(one), std::move(eps), false) {}

HatMorphism::HatMorphism(GradedHomElement one, GradedHomElement eps, bool reduced)
    : one_(std::move(one)), eps_(std::move(eps)) {
  if (one_.degree() != 0 || eps_.degree() != 0) throw ValidationError("HatMorphism: parts must have degree 0");
  if (!(one_.source() == eps_.source()) || !(one_.target() == eps_.target()))
    throw ShapeMismatch("HatMorphism: parts have different source or target");
  if (!differential(one_).is_zero())
    throw ValidationError("HatMorphism: type-1 part does not commute with the differentials");
  if (!reduced) eps_ = eps_space(source(), target()).canonical(eps_);
}

HatMorphism HatMorphism::type_one(GradedHomElement one) {
  GradedHomElement z(one.source(), one.target(), 0);
  return HatMorphism(std::move(one), std::move(z));
}

HatMorphism HatMorphism::type_eps(GradedHomElement eps) {
  GradedHomElement z(eps.source(), eps.target(), 0);
  return HatMorphism(std::move(z), std::move(eps));
}

HatMorphism HatMorphism::zero(const Seq& v, const Seq& w) {
  GradedHomElement z(v, w, 0);
  HomSpace h = eps_space(v, w);
  return HatMorphism(z, h.element(Matrix(v.field(), h.coordinate_dim(), 1)), true);
}

HatMorphism HatMorphism::identity(const Seq& v) { return type_one(GradedHomElement::identity(v)); }

HatMorphism HatMorphism::eps_identity(const Seq& v) { return type_eps(GradedHomElement::identity(v)); }

HatMorphism HatMorphism::operator+(const HatMorphism& o) const { return HatMorphism(one_ + o.one_, eps_ + o.eps_); }

HatMorphism HatMorphism::operator-(const HatMorphism& o) const { return HatMorphism(one_ - o.one_, eps_ - o.eps_); }

HatMorphism HatMorphism::scaled(const Scalar& c) const { return HatMorphism(one_.scaled(c), eps_.scaled(c)); }

HatMorphism HatMorphism::scaled(long long c) const { return HatMorphism(one_.scaled(c), eps_.scaled(c)); }

bool operator==(const HatMorphism& a, const HatMorphism& b) { return a.one_ == b.one_ && a.eps_ == b.eps_; }

HatMorphism compose_hat(const HatMorphism& g, const HatMorphism& f) {
  if (!(g.source() == f.target())) throw ShapeMismatch("compose_hat: source of g is not the target of f");
  return HatMorphism(compose(g.one(), f.one()), compose(g.one(), f.eps()) + compose(g.eps(), f.one()));
}

Biproduct biproduct(const Seq& v, const Seq& w) {
  Biproduct b;
  b.sum = direct_sum(v, w);
  const Field& f = v.field();
  int lo = b.sum.lo(), hi = b.sum.hi();
  auto inj = [&](bool first) {
    return [&, first](int i) {
      std::size_t a = v.dim(i), c = w.dim(i);
      Matrix m(f, a + c, first ? a : c);
      m.set_block(first ? 0 : a, 0, Matrix::identity(f, first ? a : c));
      return m;
    };
  };
  auto pr = [&](bool first) {
    return [&, first](int i) { return inj(first)(i).transpose(); };
  };
  auto lo_for = [&](const Seq& x, const Seq& y) { return std::min({lo, x.lo(), y.lo()}); };
  auto hi_for = [&](const Seq& x, const Seq& y) { return std::max({hi, x.hi(), y.hi()}); };
  b.in1 = HatMorphism::type_one(
      GradedHomElement::from_function(v, b.sum, 0, lo_for(v, b.sum), hi_for(v, b.sum), inj(true)));
  b.in2 = HatMorphism::type_one(
      GradedHomElement::from_function(w, b.sum, 0, lo_for(w, b.sum), hi_for(w, b.sum), inj(false)));
  b.pr1 = HatMorphism::type_one(
      GradedHomElement::from_function(b.sum, v, 0, lo_for(v, b.sum), hi_for(v, b.sum), pr(true)));
  b.pr2 = HatMorphism::type_one(
      GradedHomElement::from_function(b.sum, w, 0, lo_for(w, b.sum), hi_for(w, b.sum), pr(false)));
  return b;
}

}  // namespace dualseq

namespace dualseq {

std::optional<GradedHomElement> solve_differential(const GradedHomElement& g) {
  const Seq& v = g.source();
  const Seq& w = g.target();
  const Field& fld = v.field();
  const int m = g.degree() - 1;
  const int a = std::min(admissible_lo(v, w, m), g.lo()) - 1;
  const int b = std::max(admissible_hi(v, w, m), g.hi()) + 1;
  const std::size_t nwin = static_cast<std::size_t>(b - a + 1);
  // Slots: window components, then left even/odd and right even/odd patterns.
  auto parity = [](int i) { return i % 2 == 0 ? 0 : 1; };
  auto slot = [&](int j) -> std::size_t {
    if (j < a) return nwin + static_cast<std::size_t>(parity(j));
    if (j > b) return nwin + 2 + static_cast<std::size_t>(parity(j));
    return static_cast<std::size_t>(j - a);
  };
  std::vector<int> rep(nwin + 4);
  for (int j = a; j <= b; ++j) rep[slot(j)] = j;
  for (int j : {a - 1, a - 2, b + 1, b + 2}) rep[slot(j)] = j;
  std::vector<std::size_t> col_off{0};
  for (int j : rep) col_off.push_back(col_off.back() + w.dim(m + j) * v.dim(j));

  const int elo = a - 3, ehi = b + 3;
  std::vector<std::size_t> row_off{0};
  for (int i = elo; i <= ehi; ++i) row_off.push_back(row_off.back() + w.dim(m + 1 + i) * v.dim(i));

  Matrix sys(fld, row_off.back(), col_off.back());
  Matrix rhs(fld, row_off.back(), 1);
  const long long sign = (m % 2 == 0) ? 1 : -1;
  auto add = [&](std::size_t r, std::size_t c, const Matrix& x) {
    sys.set_block(r, c, sys.block(r, c, x.rows(), x.cols()) + x);
  };
  for (int i = elo; i <= ehi; ++i) {
    const std::size_t r = row_off[static_cast<std::size_t>(i - elo)];
    add(r, col_off[slot(i)], kron(w.map(m + i), Matrix::identity(fld, v.dim(i))));
    add(r, col_off[slot(i + 1)], kron(Matrix::identity(fld, w.dim(m + i + 1)), v.map(i).transpose()).scaled(-sign));
    rhs.set_block(r, 0, g.at(i).flattened());
  }
  auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  auto comp = [&](std::size_t s) {
    const int j = rep[s];
    const std::size_t rows = w.dim(m + j), cols = v.dim(j);
    return Matrix::unflatten(x->block(col_off[s], 0, rows * cols, 1), rows, cols);
  };
  std::vector<Matrix> comps;
  for (std::size_t s = 0; s < nwin; ++s) comps.push_back(comp(s));
  TailPattern left{comp(nwin), comp(nwin + 1)}, right{comp(nwin + 2), comp(nwin + 3)};
  return GradedHomElement(v, w, m, a, std::move(comps), std::move(left), std::move(right));
}

}  // namespace dualseq
