#include "dualseq/triang.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "dualseq/errors.hpp"
#include "dualseq/linalg.hpp"

namespace dualseq {

namespace {

// Cocone V^i (+) W^{i-1} of h with d1 = [[0, 0], [-h1, 0]] and
// deps = [[d_V, 0], [-heps, -d_W]], split as P^i = [B | H | C] where
// C = (S; 0) completes ker h1^i, B = d1 C^{i-1} and H = (ker h1^i; 0) + (0; R)
// with R completing im h1^{i-1}.
class CoconeSplitting {
 public:
  struct Split {
    Matrix p, pinv;
    std::size_t nb = 0, nh = 0, nc = 0;
  };

  explicit CoconeSplitting(const HatMorphism& h) : h_(h), v_(h.source()), w_(h.target()) {}

  const Split& at(int i) {
    auto it = cache_.find(i);
    if (it != cache_.end()) return it->second;
    const Field& fld = v_.field();
    const std::size_t dv = v_.dim(i), dw = w_.dim(i - 1);
    Matrix k = kernel(h_.one().at(i));
    Matrix s = complement(k, dv);
    Matrix himg = h_.one().at(i - 1) * complement(kernel(h_.one().at(i - 1)), v_.dim(i - 1));
    Matrix r = complement(himg, dw);
    Matrix b = vstack(Matrix(fld, dv, himg.cols()), -himg);
    Matrix hk = vstack(k, Matrix(fld, dw, k.cols()));
    Matrix hr = vstack(Matrix(fld, dv, r.cols()), r);
    Matrix c = vstack(s, Matrix(fld, dw, s.cols()));
    Split sp;
    sp.p = hstack(hstack(b, hstack(hk, hr)), c);
    sp.pinv = inverse(sp.p);
    sp.nb = b.cols();
    sp.nh = k.cols() + r.cols();
    sp.nc = s.cols();
    return cache_.emplace(i, std::move(sp)).first->second;
  }

  Matrix deps(int i) const {
    const Field& fld = v_.field();
    return block2x2(v_.map(i), Matrix(fld, v_.dim(i + 1), w_.dim(i - 1)), -h_.eps().at(i), -w_.map(i - 1));
  }

  // Block (row, col) of Pinv^{i+1} deps^i P^i; 0: B, 1: H, 2: C.
  Matrix block(int i, int row, int col) {
    const Split& s = at(i);
    const Split& t = at(i + 1);
    Matrix d = t.pinv * deps(i) * s.p;
    auto off = [](const Split& x, int k) { return k == 0 ? 0 : k == 1 ? x.nb : x.nb + x.nh; };
    auto len = [](const Split& x, int k) { return k == 0 ? x.nb : k == 1 ? x.nh : x.nc; };
    return d.block(off(t, row), off(s, col), len(t, row), len(s, col));
  }

 private:
  const HatMorphism& h_;
  const Seq& v_;
  const Seq& w_;
  std::map<int, Split> cache_;
};

Tail tail_for(std::size_t dim) { return dim > 0 ? Tail::Iso : Tail::Zero; }

void check_tail_map(const Matrix& d, int i) {
  if (!(d == signed_identity(d.field(), d.rows(), i)) || d.rows() != d.cols())
    throw std::logic_error("tail map is not a signed identity in degree " + std::to_string(i));
}

}  // namespace

Cone cone(const HatMorphism& h) {
  const Seq& v = h.source();
  const Seq& w = h.target();
  const Field& fld = v.field();
  const int lo = std::min({v.lo(), w.lo() + 1, h.one().lo(), h.eps().lo()}) - 2;
  const int hi = std::max({v.hi(), w.hi() + 1, h.one().hi(), h.eps().hi()}) + 2;
  CoconeSplitting sp(h);

  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
  for (int i = lo; i <= hi; ++i) dims.push_back(sp.at(i).nh);
  for (int i = lo; i < hi; ++i) maps.push_back(sp.block(i, 1, 1));
  if (dims.front() > 0) check_tail_map(sp.block(lo - 1, 1, 1), lo - 1);
  if (dims.back() > 0) check_tail_map(sp.block(hi, 1, 1), hi);
  Seq u(fld, lo, dims, maps, tail_for(dims.front()), tail_for(dims.back()));
  Seq wm = shift(w, -1);

  auto f1 = [&](int i) {
    const auto& s = sp.at(i);
    return s.pinv.block(s.nb, v.dim(i), s.nh, w.dim(i - 1));
  };
  auto fe = [&](int i) {
    const auto& s = sp.at(i);
    return -(sp.block(i - 1, 1, 2) * s.pinv.block(0, v.dim(i), s.nb, w.dim(i - 1)));
  };
  auto g1 = [&](int i) {
    const auto& s = sp.at(i);
    return s.p.block(0, s.nb, v.dim(i), s.nh);
  };
  auto ge = [&](int i) {
    const auto& s = sp.at(i);
    return -(s.p.block(0, s.nb + s.nh, v.dim(i), s.nc) * sp.block(i, 0, 1));
  };
  HatMorphism f(GradedHomElement::from_function(wm, u, 0, lo, hi, f1),
                GradedHomElement::from_function(wm, u, 0, lo, hi, fe));
  HatMorphism g(GradedHomElement::from_function(u, v, 0, lo, hi, g1),
                GradedHomElement::from_function(u, v, 0, lo, hi, ge));
  return {u, f, g};
}

Triangle cone_triangle(const HatMorphism& h) {
  Cone c = cone(h);
  return {shift(h.target(), -1), c.u, h.source(), c.f, c.g, h};
}

ExtensionClass extension_from_eps(const GradedHomElement& f_in) {
  if (f_in.degree() != 0) throw ShapeMismatch("extension_from_eps: f must have degree 0");
  const Seq& x = f_in.source();
  const Seq& y = f_in.target();
  const Field& fld = x.field();
  GradedHomElement f = f_in.has_zero_tails() ? f_in : eps_space(x, y).canonical(f_in);
  const int lo = std::min({x.lo(), y.lo() + 1, f.lo()}) - 1;
  const int hi = std::max({x.hi(), y.hi() + 1, f.hi()}) + 1;
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
  for (int i = lo; i <= hi; ++i) dims.push_back(x.dim(i) + y.dim(i - 1));
  for (int i = lo; i < hi; ++i)
    maps.push_back(block2x2(x.map(i), Matrix(fld, x.dim(i + 1), y.dim(i - 1)), -f.at(i), -y.map(i - 1)));
  Seq c(fld, lo, dims, maps, tail_for(dims.front()), tail_for(dims.back()));
  Seq ym = shift(y, -1);
  auto incl = [&](int i) { return vstack(Matrix(fld, x.dim(i), y.dim(i - 1)), Matrix::identity(fld, y.dim(i - 1))); };
  auto proj = [&](int i) { return hstack(Matrix::identity(fld, x.dim(i)), Matrix(fld, x.dim(i), y.dim(i - 1))); };
  return {x,
          y,
          f,
          c,
          HatMorphism::type_one(GradedHomElement::from_function(ym, c, 0, lo, hi, incl)),
          HatMorphism::type_one(GradedHomElement::from_function(c, x, 0, lo, hi, proj))};
}

std::optional<GradedHomElement> splits(const ExtensionClass& e) {
  if (!eps_space(e.x, e.y).in_boundaries(e.f)) return std::nullopt;
  auto h = solve_differential(-e.f);
  if (!h) throw std::logic_error("splits: boundary without a preimage");
  return h;
}

Triangle triangle_from_ses(const HatMorphism& a, const HatMorphism& b) {
  if (!a.eps().is_zero() || !b.eps().is_zero()) throw ValidationError("triangle_from_ses: morphisms must be of type 1");
  if (!(a.target() == b.source())) throw ShapeMismatch("triangle_from_ses: a and b are not composable");
  const Seq& sa = a.source();
  const Seq& sb = a.target();
  const Seq& sc = b.target();
  const Field& fld = sa.field();
  const int lo = std::min({sa.lo(), sb.lo(), sc.lo(), a.one().lo(), b.one().lo()}) - 2;
  const int hi = std::max({sa.hi(), sb.hi(), sc.hi(), a.one().hi(), b.one().hi()}) + 2;
  for (int i = lo; i <= hi; ++i) {
    Matrix ai = a.one().at(i), bi = b.one().at(i);
    std::size_t ra = rank(ai), rb = rank(bi);
    if (ra != sa.dim(i) || rb != sc.dim(i) || ra + rb != sb.dim(i) || !(bi * ai).is_zero())
      throw NotExact("triangle_from_ses: not exact in degree " + std::to_string(i));
  }
  // Section s of b and retraction r of a with r s = 0.
  auto section = [&](int i) { return *solve(b.one().at(i), Matrix::identity(fld, sc.dim(i))); };
  auto retraction = [&](int i) {
    return inverse(hstack(a.one().at(i), section(i))).block(0, 0, sa.dim(i), sb.dim(i));
  };
  auto conn = [&](int i) { return -(retraction(i + 1) * sb.map(i) * section(i)); };
  HatMorphism w = HatMorphism::type_eps(GradedHomElement::from_function(sc, shift(sa, 1), 0, lo, hi, conn));
  return {sa, sb, sc, a, b, w};
}

Seq truncate_above(const Seq& v, int n) {
  const int hi = std::max(v.hi(), n);
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
  for (int i = n; i <= hi; ++i) dims.push_back(v.dim(i));
  for (int i = n; i < hi; ++i) maps.push_back(v.map(i));
  return Seq(v.field(), n, dims, maps, Tail::Zero, v.right());
}

Seq truncate_below(const Seq& v, int n) {
  const int lo = std::min(v.lo(), n - 1);
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
  for (int i = lo; i < n; ++i) dims.push_back(v.dim(i));
  for (int i = lo; i < n - 1; ++i) maps.push_back(v.map(i));
  return Seq(v.field(), lo, dims, maps, v.left(), Tail::Zero);
}

Triangle truncation_triangle(const Seq& v, int n) {
  const Field& fld = v.field();
  Seq ge = truncate_above(v, n), lt = truncate_below(v, n);
  const int lo = std::min(v.lo(), n - 1) - 2, hi = std::max(v.hi(), n) + 2;
  auto beta = [&](int i) { return i >= n ? Matrix::identity(fld, v.dim(i)) : Matrix(fld, v.dim(i), 0); };
  auto delta = [&](int i) { return i < n ? Matrix::identity(fld, v.dim(i)) : Matrix(fld, 0, v.dim(i)); };
  HatMorphism b = HatMorphism::type_one(GradedHomElement::from_function(ge, v, 0, lo, hi, beta));
  HatMorphism d = HatMorphism::type_one(GradedHomElement::from_function(v, lt, 0, lo, hi, delta));
  return triangle_from_ses(b, d);
}

}  // namespace dualseq
