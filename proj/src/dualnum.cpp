#include "dualseq/dualnum.hpp"

#include <algorithm>
#include <sstream>

#include "dualseq/errors.hpp"
#include "dualseq/linalg.hpp"

namespace dualseq {

EpsMap EpsMap::zero(const Field& f, std::size_t rows, std::size_t cols) {
  return {Matrix(f, rows, cols), Matrix(f, rows, cols)};
}

EpsMap EpsMap::identity(const Field& f, std::size_t n) { return {Matrix::identity(f, n), Matrix(f, n, n)}; }

EpsMap compose(const EpsMap& g, const EpsMap& f) { return {g.one * f.one, g.one * f.eps + g.eps * f.one}; }

EpsComplex::EpsComplex(const Field& field) : field_(field), ranks_{0} {}

EpsComplex::EpsComplex(const Field& field, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> d1,
                       std::vector<Matrix> deps, Tail left, Tail right)
    : field_(field), lo_(lo), ranks_(std::move(ranks)), d1_(std::move(d1)), deps_(std::move(deps)), left_(left),
      right_(right) {
  if (ranks_.empty()) throw ShapeMismatch("EpsComplex: window must contain at least one degree");
  hi_ = lo_ + static_cast<int>(ranks_.size()) - 1;
  if (d1_.size() != ranks_.size() - 1 || deps_.size() != ranks_.size() - 1)
    throw ShapeMismatch("EpsComplex: expected " + std::to_string(ranks_.size() - 1) + " maps per part");
  for (std::size_t k = 0; k < d1_.size(); ++k)
    for (const Matrix* m : {&d1_[k], &deps_[k]})
      if (m->rows() != ranks_[k + 1] || m->cols() != ranks_[k] || !(m->field() == field_))
        throw ShapeMismatch("EpsComplex: map out of degree " + std::to_string(lo_ + static_cast<int>(k)) +
                            " has shape " + std::to_string(m->rows()) + "x" + std::to_string(m->cols()));
  if (ranks_.front() == 0) left_ = Tail::Zero;
  if (ranks_.back() == 0) right_ = Tail::Zero;
}

std::size_t EpsComplex::rank(int i) const {
  if (i < lo_) return left_ == Tail::Iso ? ranks_.front() : 0;
  if (i > hi_) return right_ == Tail::Iso ? ranks_.back() : 0;
  return ranks_[static_cast<std::size_t>(i - lo_)];
}

Matrix EpsComplex::d1(int i) const {
  if (i >= lo_ && i < hi_) return d1_[static_cast<std::size_t>(i - lo_)];
  return Matrix(field_, rank(i + 1), rank(i));
}

Matrix EpsComplex::deps(int i) const {
  if (i >= lo_ && i < hi_) return deps_[static_cast<std::size_t>(i - lo_)];
  if (i < lo_ && left_ == Tail::Iso) return signed_identity(field_, ranks_.front(), i);
  if (i >= hi_ && right_ == Tail::Iso) return signed_identity(field_, ranks_.back(), i);
  return Matrix(field_, rank(i + 1), rank(i));
}

bool EpsComplex::is_minimal() const {
  return std::all_of(d1_.begin(), d1_.end(), [](const Matrix& m) { return m.is_zero(); });
}

std::string EpsComplex::to_string() const {
  std::ostringstream os;
  os << "lo " << lo_ << " ranks [";
  for (std::size_t k = 0; k < ranks_.size(); ++k) os << (k ? " " : "") << ranks_[k];
  os << "]";
  for (std::size_t k = 0; k < d1_.size(); ++k) {
    int i = lo_ + static_cast<int>(k);
    os << " d1_" << i << "=" << d1_[k].to_string() << " deps_" << i << "=" << deps_[k].to_string();
  }
  os << " left " << dualseq::to_string(left_) << " right " << dualseq::to_string(right_);
  return os.str();
}

bool operator==(const EpsComplex& a, const EpsComplex& b) {
  if (!(a.field_ == b.field_) || a.left_ != b.left_ || a.right_ != b.right_) return false;
  int lo = std::min(a.lo_, b.lo_) - 1, hi = std::max(a.hi_, b.hi_) + 1;
  for (int i = lo; i <= hi; ++i)
    if (a.rank(i) != b.rank(i)) return false;
  for (int i = lo; i < hi; ++i)
    if (!(a.d1(i) == b.d1(i)) || !(a.deps(i) == b.deps(i))) return false;
  return true;
}

ValidationReport validate(const EpsComplex& c) {
  for (int i = c.lo() - 2; i <= c.hi() + 1; ++i) {
    if (!(c.d1(i + 1) * c.d1(i)).is_zero())
      return {false, i, "d1^" + std::to_string(i + 1) + " d1^" + std::to_string(i) + " != 0"};
    if (!(c.d1(i + 1) * c.deps(i) + c.deps(i + 1) * c.d1(i)).is_zero())
      return {false, i, "d1 deps + deps d1 != 0 at degree " + std::to_string(i)};
  }
  return {};
}

namespace {

EpsMap tail_map(const EpsComplex& m, const EpsComplex& n, int i) {
  if (m.rank(i) == n.rank(i) && ((i < m.lo() && m.left() == Tail::Iso) || (i > m.hi() && m.right() == Tail::Iso)))
    return EpsMap::identity(m.field(), m.rank(i));
  return EpsMap::zero(m.field(), n.rank(i), m.rank(i));
}

}  // namespace

EpsMap HomotopyEquivalence::f_at(const EpsComplex& m, const EpsComplex& n, int i) const {
  if (i >= lo && i <= hi) return f[static_cast<std::size_t>(i - lo)];
  return tail_map(m, n, i);
}

EpsMap HomotopyEquivalence::g_at(const EpsComplex& m, const EpsComplex& n, int i) const {
  if (i >= lo && i <= hi) return g[static_cast<std::size_t>(i - lo)];
  return tail_map(n, m, i);
}

EpsMap HomotopyEquivalence::k_at(const EpsComplex& m, int i) const {
  if (i >= lo && i <= hi) return k[static_cast<std::size_t>(i - lo)];
  return EpsMap::zero(m.field(), m.rank(i - 1), m.rank(i));
}

bool verify(const EpsComplex& m, const EpsComplex& n, const HomotopyEquivalence& he) {
  const Field& fld = m.field();
  int lo = std::min({he.lo, m.lo(), n.lo()}) - 2, hi = std::max({he.hi, m.hi(), n.hi()}) + 2;
  for (int i = lo; i <= hi; ++i) {
    EpsMap f = he.f_at(m, n, i), g = he.g_at(m, n, i);
    if (f.rows() != n.rank(i) || f.cols() != m.rank(i) || g.rows() != m.rank(i) || g.cols() != n.rank(i))
      return false;
    if (!(compose(n.d(i), f) == compose(he.f_at(m, n, i + 1), m.d(i)))) return false;
    if (!(compose(m.d(i), g) == compose(he.g_at(m, n, i + 1), n.d(i)))) return false;
    if (!(compose(f, g) == EpsMap::identity(fld, n.rank(i)))) return false;
    EpsMap lhs = compose(g, f) - EpsMap::identity(fld, m.rank(i));
    EpsMap rhs = compose(m.d(i - 1), he.k_at(m, i)) + compose(he.k_at(m, i + 1), m.d(i));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

MinimalModel minimize(const EpsComplex& c) {
  if (auto r = validate(c); !r.ok) throw ValidationError("minimize: invalid complex: " + r.message);
  const Field& fld = c.field();
  // Iso tails are pulled one degree into the window so that the basis change
  // is the identity at the boundary.
  const int lo = c.lo() - (c.left() == Tail::Iso ? 1 : 0);
  const int hi = c.hi() + (c.right() == Tail::Iso ? 1 : 0);
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  auto at = [&](int i) { return static_cast<std::size_t>(i - lo); };

  // P^i = [B | H | C]: B = d1 C^{i-1}, H completes B inside ker d1^i, C
  // completes ker d1^i.
  std::vector<Matrix> P(n), Pinv(n);
  std::vector<std::size_t> nb(n), nh(n), nc(n);
  Matrix prev_c(fld, c.rank(lo), 0);
  for (int i = lo; i <= hi; ++i) {
    const std::size_t dim = c.rank(i);
    Matrix z = kernel(c.d1(i));
    Matrix cc = complement(z, dim);
    Matrix b = i == lo ? Matrix(fld, dim, 0) : c.d1(i - 1) * prev_c;
    Matrix h = z * complement(*solve(z, b), z.cols());
    P[at(i)] = hstack(hstack(b, h), cc);
    Pinv[at(i)] = inverse(P[at(i)]);
    nb[at(i)] = b.cols();
    nh[at(i)] = h.cols();
    nc[at(i)] = cc.cols();
    prev_c = cc;
  }
  // Blocks of deps in the split bases.
  std::vector<Matrix> D(n);
  for (int i = lo; i < hi; ++i) D[at(i)] = Pinv[at(i + 1)] * c.deps(i) * P[at(i)];
  auto blk = [&](int i, int row, int col) {  // row, col in {0: B, 1: H, 2: C}
    const std::size_t s = at(i), t = at(i + 1);
    std::size_t r0 = row == 0 ? 0 : row == 1 ? nb[t] : nb[t] + nh[t];
    std::size_t c0 = col == 0 ? 0 : col == 1 ? nb[s] : nb[s] + nh[s];
    std::size_t rn = row == 0 ? nb[t] : row == 1 ? nh[t] : nc[t];
    std::size_t cn = col == 0 ? nb[s] : col == 1 ? nh[s] : nc[s];
    return D[s].block(r0, c0, rn, cn);
  };

  std::vector<std::size_t> ranks;
  std::vector<Matrix> d1, deps;
  for (int i = lo; i <= hi; ++i) ranks.push_back(nh[at(i)]);
  for (int i = lo; i < hi; ++i) {
    deps.push_back(blk(i, 1, 1));
    d1.push_back(Matrix(fld, nh[at(i + 1)], nh[at(i)]));
  }
  EpsComplex out(fld, lo, ranks, d1, deps, c.left(), c.right());

  HomotopyEquivalence he;
  he.lo = lo;
  he.hi = hi;
  for (int i = lo; i <= hi; ++i) {
    const std::size_t s = at(i), dim = c.rank(i), b = nb[s], h = nh[s], cc = nc[s];
    // c^i: B^i -> H^i and b^i: B^i -> B^i come from deps^{i-1}; a^i: H^i -> B^{i+1}.
    Matrix ci = i > lo ? blk(i - 1, 1, 2) : Matrix(fld, h, b);
    Matrix bi = i > lo ? blk(i - 1, 0, 2) : Matrix(fld, b, b);
    Matrix ai = i < hi ? blk(i, 0, 1) : Matrix(fld, cc, h);

    Matrix f1(fld, h, dim), fe(fld, h, dim);
    f1.set_block(0, b, Matrix::identity(fld, h));
    fe.set_block(0, 0, -ci);
    he.f.push_back({f1 * Pinv[s], fe * Pinv[s]});

    Matrix g1(fld, dim, h), ge(fld, dim, h);
    g1.set_block(b, 0, Matrix::identity(fld, h));
    ge.set_block(b + h, 0, -ai);
    he.g.push_back({P[s] * g1, P[s] * ge});

    if (i == lo) {
      he.k.push_back(EpsMap::zero(fld, c.rank(i - 1), dim));
      continue;
    }
    const std::size_t t = at(i - 1);
    Matrix k1(fld, c.rank(i - 1), dim), ke(fld, c.rank(i - 1), dim);
    k1.set_block(nb[t] + nh[t], 0, Matrix::identity(fld, b));
    ke.set_block(nb[t] + nh[t], 0, -bi);
    // Negated so that g f - id = d k + k d.
    he.k.push_back({-(P[t] * k1 * Pinv[s]), -(P[t] * ke * Pinv[s])});
  }
  return {out, he};
}

Seq to_seq(const EpsComplex& c) {
  if (!c.is_minimal()) throw ValidationError("to_seq: complex is not minimal");
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
  for (int i = c.lo(); i <= c.hi(); ++i) dims.push_back(c.rank(i));
  for (int i = c.lo(); i < c.hi(); ++i) maps.push_back(c.deps(i));
  return Seq(c.field(), c.lo(), dims, maps, c.left(), c.right());
}

EpsComplex from_seq(const Seq& v) {
  std::vector<Matrix> zeros;
  for (int i = v.lo(); i < v.hi(); ++i) zeros.push_back(Matrix(v.field(), v.dim(i + 1), v.dim(i)));
  return EpsComplex(v.field(), v.lo(), v.window_dims(), zeros, v.window_maps(), v.left(), v.right());
}

namespace {

// d^i on M^i = V^i + eps V^i as a k-linear map: [[d1, 0], [deps, d1]].
Matrix k_linear(const EpsComplex& c, int i) {
  Matrix a = c.d1(i), e = c.deps(i);
  return block2x2(a, Matrix(c.field(), a.rows(), a.cols()), e, a);
}

}  // namespace

std::map<int, std::size_t> cohomology(const EpsComplex& c) {
  if (auto r = validate(c); !r.ok) throw ValidationError("cohomology: invalid complex: " + r.message);
  std::map<int, std::size_t> out;
  for (int i = c.lo() - 1; i <= c.hi() + 1; ++i) {
    std::size_t h = 2 * c.rank(i) - dualseq::rank(k_linear(c, i)) - dualseq::rank(k_linear(c, i - 1));
    if (h) out[i] = h;
  }
  return out;
}

std::map<int, std::size_t> cohomology(const Seq& v) {
  std::map<int, std::size_t> out;
  for (int i = v.lo() - 1; i <= v.hi() + 1; ++i) {
    std::size_t h = v.dim(i) - rank(v.map(i)) + v.dim(i) - rank(v.map(i - 1));
    if (h) out[i] = h;
  }
  return out;
}

std::string cohomology_to_string(const std::map<int, std::size_t>& h) {
  if (h.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, d] : h) {
    os << (first ? "" : ", ") << "H^" << i << ": " << d;
    first = false;
  }
  return os.str();
}

}  // namespace dualseq
