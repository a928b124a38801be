#include "dualseq/seq.hpp"

#include <algorithm>
#include <sstream>

#include "dualseq/errors.hpp"

namespace dualseq {

const char* to_string(Tail t) { return t == Tail::Zero ? "zero" : "iso"; }

Matrix signed_identity(const Field& field, std::size_t n, long long i) {
  Matrix id = Matrix::identity(field, n);
  return (i % 2 == 0) ? id : -id;
}

Seq::Seq(const Field& field) : field_(field), dims_{0} {}

Seq::Seq(const Field& field, int lo, std::vector<std::size_t> dims, std::vector<Matrix> maps, Tail left,
         Tail right)
    : field_(field), lo_(lo), dims_(std::move(dims)), maps_(std::move(maps)), left_(left), right_(right) {
  if (dims_.empty()) throw ShapeMismatch("Seq: window must contain at least one degree");
  hi_ = lo_ + static_cast<int>(dims_.size()) - 1;
  if (maps_.size() != dims_.size() - 1)
    throw ShapeMismatch("Seq: expected " + std::to_string(dims_.size() - 1) + " maps, got " +
                        std::to_string(maps_.size()));
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    const Matrix& m = maps_[k];
    if (!(m.field() == field_)) throw ShapeMismatch("Seq: map field differs from sequence field");
    if (m.rows() != dims_[k + 1] || m.cols() != dims_[k])
      throw ShapeMismatch("Seq: d^" + std::to_string(lo_ + static_cast<int>(k)) + " has shape " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                          std::to_string(dims_[k + 1]) + "x" + std::to_string(dims_[k]));
  }
  normalize();
}

// Drops boundary degrees that the tail already describes.
void Seq::normalize() {
  auto left_redundant = [&] {
    if (dims_.size() < 2) return false;
    if (left_ == Tail::Zero) return dims_.front() == 0;
    return dims_[1] == dims_[0] && maps_.front() == signed_identity(field_, dims_[0], lo_);
  };
  auto right_redundant = [&] {
    if (dims_.size() < 2) return false;
    std::size_t n = dims_.size();
    if (right_ == Tail::Zero) return dims_.back() == 0;
    return dims_[n - 2] == dims_[n - 1] && maps_.back() == signed_identity(field_, dims_[n - 1], hi_ - 1);
  };
  if (dims_.front() == 0) left_ = Tail::Zero;
  if (dims_.back() == 0) right_ = Tail::Zero;
  while (left_redundant()) {
    dims_.erase(dims_.begin());
    maps_.erase(maps_.begin());
    ++lo_;
  }
  while (right_redundant()) {
    dims_.pop_back();
    maps_.pop_back();
    --hi_;
  }
  if (dims_.size() == 1 && dims_[0] == 0) lo_ = hi_ = 0;
}

Seq Seq::interval(const Field& field, int a, int b) {
  if (a == kPosInf || b == kNegInf || a > b) throw ValidationError("interval: need a <= b");
  if (a == kNegInf && b == kPosInf) return Seq(field, 0, {1}, {}, Tail::Iso, Tail::Iso);
  if (a == kNegInf) return Seq(field, b, {1}, {}, Tail::Iso, Tail::Zero);
  if (b == kPosInf) return Seq(field, a, {1}, {}, Tail::Zero, Tail::Iso);
  std::vector<std::size_t> dims(static_cast<std::size_t>(b - a) + 1, 1);
  std::vector<Matrix> maps;
  for (int i = a; i < b; ++i) maps.push_back(signed_identity(field, 1, i));
  return Seq(field, a, std::move(dims), std::move(maps));
}

std::size_t Seq::dim(int i) const {
  if (i < lo_) return left_dim();
  if (i > hi_) return right_dim();
  return dims_[static_cast<std::size_t>(i - lo_)];
}

Matrix Seq::map(int i) const {
  if (i >= lo_ && i < hi_) return maps_[static_cast<std::size_t>(i - lo_)];
  if (i < lo_ && left_ == Tail::Iso) return signed_identity(field_, dims_.front(), i);
  if (i >= hi_ && right_ == Tail::Iso) return signed_identity(field_, dims_.back(), i);
  return Matrix(field_, dim(i + 1), dim(i));
}

Matrix Seq::composite(int i, int j) const {
  if (j < i) throw ValidationError("composite: need i <= j");
  Matrix m = Matrix::identity(field_, dim(i));
  for (int k = i; k < j; ++k) m = map(k) * m;
  return m;
}

bool Seq::is_zero() const {
  return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 0; });
}

std::string Seq::to_string() const {
  std::ostringstream os;
  os << "lo " << lo_ << " dims [";
  for (std::size_t k = 0; k < dims_.size(); ++k) os << (k ? " " : "") << dims_[k];
  os << "]";
  for (std::size_t k = 0; k < maps_.size(); ++k) os << " d" << lo_ + static_cast<int>(k) << "=" << maps_[k].to_string();
  os << " left " << dualseq::to_string(left_) << " right " << dualseq::to_string(right_);
  return os.str();
}

bool operator==(const Seq& a, const Seq& b) {
  if (!(a.field_ == b.field_) || a.left_ != b.left_ || a.right_ != b.right_) return false;
  int lo = std::min(a.lo_, b.lo_) - 1, hi = std::max(a.hi_, b.hi_) + 1;
  for (int i = lo; i <= hi; ++i)
    if (a.dim(i) != b.dim(i)) return false;
  for (int i = lo; i < hi; ++i)
    if (!(a.map(i) == b.map(i))) return false;
  return true;
}

Window materialize(const Seq& v, int lo, int hi) {
  if (lo > hi) throw ValidationError("materialize: need lo <= hi");
  Window w;
  w.lo = lo;
  w.hi = hi;
  for (int i = lo; i <= hi; ++i) w.dims.push_back(v.dim(i));
  for (int i = lo; i < hi; ++i) w.maps.push_back(v.map(i));
  return w;
}

Seq shift(const Seq& v, int n) {
  std::vector<Matrix> maps;
  for (int i = v.lo(); i < v.hi(); ++i) maps.push_back(v.map(i).scaled(n % 2 == 0 ? 1 : -1));
  return Seq(v.field(), v.lo() - n, v.window_dims(), std::move(maps), v.left(), v.right());
}

int common_lo(const Seq& v, const Seq& w) { return std::min(v.lo(), w.lo()); }
int common_hi(const Seq& v, const Seq& w) { return std::max(v.hi(), w.hi()); }

Seq direct_sum(const Seq& v, const Seq& w) {
  if (!(v.field() == w.field())) throw ShapeMismatch("direct_sum: field mismatch");
  int lo = common_lo(v, w) - 1, hi = common_hi(v, w) + 1;
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
  for (int i = lo; i <= hi; ++i) dims.push_back(v.dim(i) + w.dim(i));
  for (int i = lo; i < hi; ++i) maps.push_back(block_diag(v.map(i), w.map(i)));
  auto tail = [](Tail a, Tail b) { return (a == Tail::Iso || b == Tail::Iso) ? Tail::Iso : Tail::Zero; };
  return Seq(v.field(), lo, std::move(dims), std::move(maps), tail(v.left(), w.left()),
             tail(v.right(), w.right()));
}

}  // namespace dualseq
