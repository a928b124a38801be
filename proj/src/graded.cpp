#include "dualseq/graded.hpp"

#include <algorithm>
#include <sstream>

#include "dualseq/errors.hpp"

namespace dualseq {

int admissible_lo(const Seq& v, const Seq& w, int n) { return std::min(v.lo(), w.lo() - n); }
int admissible_hi(const Seq& v, const Seq& w, int n) { return std::max(v.hi(), w.hi() - n); }

namespace {

Matrix zero_component(const Seq& v, const Seq& w, int n, int i) {
  return Matrix(v.field(), w.dim(n + i), v.dim(i));
}

void check_component(const Seq& v, const Seq& w, int n, int i, const Matrix& m) {
  if (!(m.field() == v.field())) throw ShapeMismatch("graded element: field mismatch");
  if (m.rows() != w.dim(n + i) || m.cols() != v.dim(i))
    throw ShapeMismatch("graded element: component " + std::to_string(i) + " has shape " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                        std::to_string(w.dim(n + i)) + "x" + std::to_string(v.dim(i)));
}

}  // namespace

GradedHomElement::GradedHomElement(Seq source, Seq target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
  if (!(source_.field() == target_.field())) throw ShapeMismatch("graded element: field mismatch");
  lo_ = admissible_lo(source_, target_, degree_);
  hi_ = admissible_hi(source_, target_, degree_);
  for (int i = lo_; i <= hi_; ++i) comps_.push_back(zero_component(source_, target_, degree_, i));
  Matrix l = zero_component(source_, target_, degree_, lo_ - 1);
  Matrix r = zero_component(source_, target_, degree_, hi_ + 1);
  left_ = {l, l};
  right_ = {r, r};
}

GradedHomElement::GradedHomElement(Seq source, Seq target, int degree, int lo, std::vector<Matrix> components,
                                   TailPattern left, TailPattern right)
    : source_(std::move(source)),
      target_(std::move(target)),
      degree_(degree),
      lo_(lo),
      hi_(lo + static_cast<int>(components.size()) - 1),
      comps_(std::move(components)),
      left_(std::move(left)),
      right_(std::move(right)) {
  if (!(source_.field() == target_.field())) throw ShapeMismatch("graded element: field mismatch");
  if (comps_.empty()) throw ShapeMismatch("graded element: empty window");
  if (lo_ > admissible_lo(source_, target_, degree_) || hi_ < admissible_hi(source_, target_, degree_))
    throw ShapeMismatch("graded element: window [" + std::to_string(lo_) + "," + std::to_string(hi_) +
                        "] does not cover the source and target windows");
  for (int i = lo_; i <= hi_; ++i) check_component(source_, target_, degree_, i, comps_[i - lo_]);
  check_component(source_, target_, degree_, lo_ - 1, left_.even);
  check_component(source_, target_, degree_, lo_ - 1, left_.odd);
  check_component(source_, target_, degree_, hi_ + 1, right_.even);
  check_component(source_, target_, degree_, hi_ + 1, right_.odd);
}

GradedHomElement GradedHomElement::from_function(const Seq& source, const Seq& target, int degree, int lo, int hi,
                                                 const std::function<Matrix(int)>& fn) {
  lo = std::min(lo, admissible_lo(source, target, degree));
  hi = std::max(hi, admissible_hi(source, target, degree));
  std::vector<Matrix> comps;
  for (int i = lo; i <= hi; ++i) comps.push_back(fn(i));
  auto pattern = [&](int a, int b) {
    // a and b have different parities
    return (a % 2 == 0) ? TailPattern{fn(a), fn(b)} : TailPattern{fn(b), fn(a)};
  };
  return GradedHomElement(source, target, degree, lo, std::move(comps), pattern(lo - 1, lo - 2),
                          pattern(hi + 1, hi + 2));
}

GradedHomElement GradedHomElement::supported(const Seq& source, const Seq& target, int degree, int lo,
                                             std::vector<Matrix> components) {
  int hi = lo + static_cast<int>(components.size()) - 1;
  Matrix l = zero_component(source, target, degree, lo - 1);
  Matrix r = zero_component(source, target, degree, hi + 1);
  return GradedHomElement(source, target, degree, lo, std::move(components), {l, l}, {r, r});
}

GradedHomElement GradedHomElement::identity(const Seq& v) {
  return from_function(v, v, 0, v.lo(), v.hi(), [&](int i) { return Matrix::identity(v.field(), v.dim(i)); });
}

Matrix GradedHomElement::at(int i) const {
  if (i < lo_) return left_.at(i);
  if (i > hi_) return right_.at(i);
  return comps_[static_cast<std::size_t>(i - lo_)];
}

bool GradedHomElement::is_zero() const {
  for (int i = lo_ - 2; i <= hi_ + 2; ++i)
    if (!at(i).is_zero()) return false;
  return true;
}

bool GradedHomElement::has_zero_tails() const {
  return left_.even.is_zero() && left_.odd.is_zero() && right_.even.is_zero() && right_.odd.is_zero();
}

namespace {

void check_same_space(const GradedHomElement& a, const GradedHomElement& b) {
  if (a.degree() != b.degree() || !(a.source() == b.source()) || !(a.target() == b.target()))
    throw ShapeMismatch("graded elements live in different Hom spaces");
}

}  // namespace

GradedHomElement GradedHomElement::operator+(const GradedHomElement& o) const {
  check_same_space(*this, o);
  return from_function(source_, target_, degree_, std::min(lo_, o.lo_), std::max(hi_, o.hi_),
                       [&](int i) { return at(i) + o.at(i); });
}

GradedHomElement GradedHomElement::operator-(const GradedHomElement& o) const {
  check_same_space(*this, o);
  return from_function(source_, target_, degree_, std::min(lo_, o.lo_), std::max(hi_, o.hi_),
                       [&](int i) { return at(i) - o.at(i); });
}

GradedHomElement GradedHomElement::operator-() const { return scaled(-1); }

GradedHomElement GradedHomElement::scaled(const Scalar& c) const {
  return from_function(source_, target_, degree_, lo_, hi_, [&](int i) { return at(i).scaled(c); });
}

GradedHomElement GradedHomElement::scaled(long long c) const { return scaled(Scalar::from_int(field(), c)); }

GradedHomElement GradedHomElement::widened(int lo, int hi) const {
  if (lo > lo_ || hi < hi_) throw ValidationError("widened: new window must contain the old one");
  return from_function(source_, target_, degree_, lo, hi, [&](int i) { return at(i); });
}

std::string GradedHomElement::to_string() const {
  std::ostringstream os;
  os << "deg " << degree_ << " [" << lo_ << "," << hi_ << "]";
  for (int i = lo_; i <= hi_; ++i) os << " f" << i << "=" << at(i).to_string();
  if (!has_zero_tails())
    os << " left " << left_.even.to_string() << "/" << left_.odd.to_string() << " right "
       << right_.even.to_string() << "/" << right_.odd.to_string();
  return os.str();
}

bool operator==(const GradedHomElement& a, const GradedHomElement& b) {
  if (a.degree_ != b.degree_ || !(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
  int lo = std::min(a.lo_, b.lo_) - 2, hi = std::max(a.hi_, b.hi_) + 2;
  for (int i = lo; i <= hi; ++i)
    if (!(a.at(i) == b.at(i))) return false;
  return true;
}

GradedHomElement compose(const GradedHomElement& g, const GradedHomElement& f) {
  if (!(g.source() == f.target())) throw ShapeMismatch("compose: source of g is not the target of f");
  const int m = f.degree();
  return GradedHomElement::from_function(f.source(), g.target(), m + g.degree(), std::min(f.lo(), g.lo() - m),
                                         std::max(f.hi(), g.hi() - m),
                                         [&](int i) { return g.at(m + i) * f.at(i); });
}

GradedHomElement differential(const GradedHomElement& f) {
  const Seq& v = f.source();
  const Seq& w = f.target();
  const int n = f.degree();
  const long long sign = (n % 2 == 0) ? 1 : -1;
  return GradedHomElement::from_function(v, w, n + 1, f.lo() - 1, f.hi(), [&](int i) {
    return w.map(n + i) * f.at(i) - (f.at(i + 1) * v.map(i)).scaled(sign);
  });
}

}  // namespace dualseq
