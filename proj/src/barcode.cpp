#include "dualseq/barcode.hpp"

#include <algorithm>
#include <sstream>

#include "dualseq/errors.hpp"
#include "dualseq/linalg.hpp"

namespace dualseq {

Interval::Interval(int a_, int b_) : a(a_), b(b_) {
  if (a == kPosInf || b == kNegInf || a > b)
    throw ValidationError("interval [" + endpoint_to_string(a) + "," + endpoint_to_string(b) + "] is empty");
}

std::string endpoint_to_string(int e) {
  if (e == kNegInf) return "-inf";
  if (e == kPosInf) return "inf";
  return std::to_string(e);
}

std::string Interval::to_string() const { return "[" + endpoint_to_string(a) + "," + endpoint_to_string(b) + "]"; }

std::size_t Barcode::total() const {
  std::size_t n = 0;
  for (const auto& [j, m] : bars) n += m;
  return n;
}

std::string Barcode::to_string() const {
  if (bars.empty()) return "(empty)";
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, m] : bars) {
    os << (first ? "" : ", ") << j.to_string() << " x" << m;
    first = false;
  }
  return os.str();
}

std::size_t rank_pairing(const Seq& v, int a, int b) {
  Interval check(a, b);
  int a_eff = a == kNegInf ? (b == kPosInf ? v.lo() - 1 : std::min(v.lo() - 1, b)) : a;
  int b_eff = b == kPosInf ? std::max(v.hi() + 1, a_eff) : b;
  return rank(v.composite(a_eff, b_eff));
}

std::size_t multiplicity(const Seq& v, const Interval& j) {
  auto r = [&](int a, int b) { return static_cast<long long>(rank_pairing(v, a, b)); };
  const bool fa = j.a != kNegInf, fb = j.b != kPosInf;
  long long m = r(j.a, j.b);
  if (fa) m -= r(j.a - 1, j.b);
  if (fb) m -= r(j.a, j.b + 1);
  if (fa && fb) m += r(j.a - 1, j.b + 1);
  if (m < 0) throw std::logic_error("negative multiplicity");
  return static_cast<std::size_t>(m);
}

Barcode barcode_by_ranks(const Seq& v) {
  Barcode out;
  std::vector<int> starts{kNegInf};
  for (int i = v.lo(); i <= v.hi(); ++i) starts.push_back(i);
  for (int a : starts) {
    std::vector<int> ends;
    for (int i = std::max(a, v.lo()); i <= v.hi(); ++i) ends.push_back(i);
    ends.push_back(kPosInf);
    for (int b : ends) {
      Interval j(a, b);
      if (std::size_t m = multiplicity(v, j)) out.bars[j] = m;
    }
  }
  return out;
}

Seq assemble(const Field& field, const std::map<Interval, std::size_t>& bars) {
  Seq out(field);
  for (const auto& [j, m] : bars)
    for (std::size_t k = 0; k < m; ++k) out = direct_sum(out, Seq::interval(field, j.a, j.b));
  return out;
}

namespace {

struct Bar {
  int birth;
  int death = kPosInf;
  int gen_degree;  // degree of the generator x
  Matrix x;
  Matrix cur;
  std::size_t id;
};

bool older(const Bar& p, const Bar& q) { return p.birth != q.birth ? p.birth < q.birth : p.id < q.id; }

Matrix unit(const Field& f, std::size_t n, std::size_t k) {
  Matrix e(f, n, 1);
  e.set(k, 0, 1);
  return e;
}

// (-1)^{i(i-1)/2}
long long certificate_sign(int i) { return ((i % 4) + 4) % 4 >= 2 ? -1 : 1; }

}  // namespace

Barcode decompose(const Seq& v) {
  const Field& f = v.field();
  std::vector<Bar> bars;
  std::vector<std::size_t> alive;
  for (std::size_t k = 0; k < v.dim(v.lo()); ++k) {
    Matrix e = unit(f, v.dim(v.lo()), k);
    bars.push_back({v.left() == Tail::Iso ? kNegInf : v.lo(), kPosInf, v.lo(), e, e, bars.size()});
    alive.push_back(bars.size() - 1);
  }
  for (int i = v.lo(); i < v.hi(); ++i) {
    std::sort(alive.begin(), alive.end(), [&](std::size_t p, std::size_t q) { return older(bars[p], bars[q]); });
    Matrix d = v.map(i);
    Matrix accepted(f, v.dim(i + 1), 0);
    std::vector<std::size_t> kept, survivors;
    std::vector<Matrix> images;
    for (std::size_t idx : alive) {
      Bar& bar = bars[idx];
      Matrix im = d * bar.cur;
      if (auto lambda = solve(accepted, im)) {
        // Younger bar dies: subtract the older chains at its birth degree.
        for (std::size_t t = 0; t < kept.size(); ++t) {
          const Bar& old = bars[kept[t]];
          Matrix y = v.composite(old.gen_degree, bar.gen_degree) * old.x;
          bar.x -= y.scaled(lambda->at(t, 0));
        }
        bar.death = i;
      } else {
        accepted = hstack(accepted, im);
        kept.push_back(idx);
        bar.cur = im;
        survivors.push_back(idx);
      }
    }
    Matrix born = complement(accepted, v.dim(i + 1));
    for (std::size_t k = 0; k < born.cols(); ++k) {
      Matrix e = born.column(k);
      bars.push_back({i + 1, kPosInf, i + 1, e, e, bars.size()});
      survivors.push_back(bars.size() - 1);
    }
    alive = std::move(survivors);
  }
  for (std::size_t idx : alive) bars[idx].death = v.right() == Tail::Iso ? kPosInf : v.hi();

  Barcode out;
  for (const Bar& bar : bars) ++out.bars[Interval(bar.birth, bar.death)];

  // Certificate: assemble(out) -> V sending the basis vector of a bar at
  // degree i to (-1)^{i(i-1)/2} d^{gen,i} x.
  std::vector<const Bar*> order;
  for (const Bar& bar : bars) order.push_back(&bar);
  std::stable_sort(order.begin(), order.end(), [](const Bar* p, const Bar* q) {
    return Interval(p->birth, p->death) < Interval(q->birth, q->death);
  });
  Seq a = assemble(f, out.bars);
  auto component = [&](int i) {
    Matrix m(f, v.dim(i), 0);
    for (const Bar* bar : order) {
      if (!Interval(bar->birth, bar->death).contains(i)) continue;
      Matrix c = i >= bar->gen_degree ? v.composite(bar->gen_degree, i) * bar->x
                                      : v.composite(i, bar->gen_degree) * bar->x;  // signed identity on the tail
      m = hstack(m, c.scaled(certificate_sign(i)));
    }
    return m;
  };
  out.certificate = GradedHomElement::from_function(a, v, 0, std::min(a.lo(), v.lo()) - 1,
                                                    std::max(a.hi(), v.hi()) + 1, component);
  return out;
}

bool is_isomorphism(const GradedHomElement& g) {
  if (g.degree() != 0 || !differential(g).is_zero()) return false;
  for (int i = g.lo() - 2; i <= g.hi() + 2; ++i) {
    Matrix m = g.at(i);
    if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
  }
  return true;
}

const char* to_string(BoundedClass c) {
  switch (c) {
    case BoundedClass::sb: return "sb";
    case BoundedClass::b: return "b";
    case BoundedClass::plus: return "plus";
    case BoundedClass::minus: return "minus";
    case BoundedClass::unbounded: return "unbounded";
  }
  return "?";
}

Classification classify(const Seq& v) {
  Classification c;
  c.injective = c.acyclic = true;
  for (int i = v.lo() - 1; i <= v.hi(); ++i) {
    Matrix d = v.map(i);
    std::size_t r = rank(d);
    if (r != d.rows()) c.injective = false;
    if (r != d.rows() || r != d.cols()) c.acyclic = false;
  }
  // K^i_inf = V^i: every vector dies eventually.
  c.h_projective = true;
  for (int i = v.lo() - 1; i <= v.hi() + 1; ++i)
    if (!v.composite(i, v.hi() + 2).is_zero()) c.h_projective = false;

  Matrix far_left = v.map(v.lo() - 2);
  bool plus = far_left.rows() == far_left.cols() && rank(far_left) == far_left.rows();
  bool minus = v.right_dim() == 0;
  bool below_zero = v.left_dim() == 0;
  if (plus && minus)
    c.bounded_class = below_zero ? BoundedClass::sb : BoundedClass::b;
  else if (plus)
    c.bounded_class = BoundedClass::plus;
  else if (minus)
    c.bounded_class = BoundedClass::minus;
  c.finitely_generated_degreewise = true;
  c.indecomposable = decompose(v).total() == 1;
  c.compact = c.h_projective && below_zero;
  return c;
}

Subobject max_injective_subobject(const Seq& v) {
  const Field& f = v.field();
  if (v.left() == Tail::Zero) return {Seq(f), HatMorphism::zero(Seq(f), v)};
  const int lo = v.lo() - 1, hi = v.hi() + 1;
  std::vector<Matrix> basis;
  for (int i = lo; i <= hi; ++i) basis.push_back(SubspaceReducer(v.composite(lo, i)).basis_rows().transpose());
  auto b = [&](int i) { return basis[static_cast<std::size_t>(std::clamp(i, lo, hi) - lo)]; };
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
  for (int i = lo; i <= hi; ++i) dims.push_back(b(i).cols());
  for (int i = lo; i < hi; ++i) maps.push_back(*solve(b(i + 1), v.map(i) * b(i)));
  Seq sub(f, lo, dims, maps, Tail::Iso, v.right());
  auto incl = GradedHomElement::from_function(sub, v, 0, std::min(lo, sub.lo()), std::max(hi, sub.hi()), b);
  return {sub, HatMorphism::type_one(incl)};
}

}  // namespace dualseq
