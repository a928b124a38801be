#include "dualseq/phantom.hpp"

#include <stdexcept>
#include <string>

#include "dualseq/barcode.hpp"
#include "dualseq/errors.hpp"
#include "dualseq/linalg.hpp"
#include "dualseq/triang.hpp"

namespace dualseq {

namespace {

GradedHomElement truncation_inclusion(const Seq& v, const Seq& ge, int n) {
  const Field& fld = v.field();
  return GradedHomElement::from_function(ge, v, 0, std::min(v.lo(), n) - 1, std::max(v.hi(), n) + 1, [&](int i) {
    return i >= n ? Matrix::identity(fld, v.dim(i)) : Matrix(fld, v.dim(i), 0);
  });
}

ScanEntry scan_one(const std::vector<Seq>& objects, std::size_t i, std::size_t j, int depth) {
  ScanEntry e;
  e.source = i;
  e.target = j;
  try {
    PhantomBasis pb = phantom_basis(objects[i], objects[j], depth);
    e.eps_dim = pb.eps_dim;
    e.phantom_dim = pb.basis.size();
    e.stable_level = pb.certificate.stable_level;
  } catch (const std::exception& x) {
    e.error = x.what();
  }
  return e;
}

const Diagram::Generator& generator(const Diagram& d, const std::string& name) {
  auto it = d.generators.find(name);
  if (it == d.generators.end()) throw ValidationError("unknown generator '" + name + "'");
  return it->second;
}

const Seq& object(const Diagram& d, const std::string& name) {
  auto it = d.objects.find(name);
  if (it == d.objects.end()) throw ValidationError("unknown object '" + name + "'");
  return it->second;
}

// Composite of path[first, last), or nullopt for an empty range.
std::optional<HatMorphism> composite(const Diagram& d, const std::vector<std::string>& path, std::size_t first,
                                     std::size_t last) {
  std::optional<HatMorphism> out;
  for (std::size_t k = last; k-- > first;) {
    const auto& g = generator(d, path[k]);
    out = out ? compose_hat(g.morphism, *out) : g.morphism;
  }
  return out;
}

HatMorphism derivation_value(const Diagram& d, const Derivation& der, const std::string& name) {
  const auto& g = generator(d, name);
  auto it = der.find(name);
  if (it == der.end()) return HatMorphism::zero(g.morphism.source(), g.morphism.target());
  return HatMorphism::type_eps(it->second);
}

bool is_identity_generator(const Diagram::Generator& g) {
  return g.source == g.target && g.morphism == HatMorphism::identity(g.morphism.source());
}

void check_derivation_shapes(const Diagram& d, const Derivation& der) {
  for (const auto& [name, value] : der) {
    const auto& g = generator(d, name);
    if (value.degree() != 0 || !(value.source() == g.morphism.source()) || !(value.target() == g.morphism.target()))
      throw ShapeMismatch("derivation value for '" + name + "' does not match the generator");
  }
}

}  // namespace

int default_phantom_depth(const Seq& v, const Seq& w) { return std::max(v.hi(), w.hi()) - std::min(v.lo(), w.lo()) + 4; }

bool vanishes_on_truncation(const HatMorphism& f, int n) {
  Seq ge = truncate_above(f.source(), n);
  return compose_hat(f, HatMorphism::type_one(truncation_inclusion(f.source(), ge, n))).is_zero();
}

PhantomBasis phantom_basis(const Seq& v, const Seq& w, int depth) {
  const Field& fld = v.field();
  HomSpace q = eps_space(v, w);
  const std::size_t d = q.quotient_dim();
  PhantomBasis out;
  out.eps_dim = d;
  out.certificate.depth = depth;
  auto& dims = out.certificate.dims;

  // Levels below both windows see only tails.
  const int floor = std::min(v.lo(), w.lo()) - 1;
  Matrix constraints(fld, 0, d);
  for (int n = v.hi();; --n) {
    if (n < floor - depth)
      throw StabilizationDepthExceeded("phantom_basis: no stable level within depth " + std::to_string(depth));
    Seq ge = truncate_above(v, n);
    GradedHomElement beta = truncation_inclusion(v, ge, n);
    HomSpace level(ge, w, 0);
    Matrix block(fld, level.quotient_dim(), d);
    for (std::size_t j = 0; j < d; ++j)
      block.set_block(0, j, level.quotient_coordinates(compose(q.quotient_basis()[j], beta)));
    constraints = vstack(constraints, block);
    dims.emplace_back(n, d - rank(constraints));
    const std::size_t k = dims.size();
    if (k >= 3 && n + 2 <= floor && dims[k - 1].second == dims[k - 2].second &&
        dims[k - 2].second == dims[k - 3].second) {
      out.certificate.stable_level = n;
      break;
    }
  }
  Matrix ker = kernel(constraints);
  for (std::size_t c = 0; c < ker.cols(); ++c) out.basis.push_back(q.from_quotient_coordinates(ker.column(c)));
  return out;
}

PhantomVerdict is_phantom(const HatMorphism& f, int depth) {
  const Seq& v = f.source();
  Classification cv = classify(v);
  if (!cv.h_projective || !classify(f.target()).h_projective)
    throw ValidationError("is_phantom: source and target must be h-projective");
  if (!f.one().is_zero()) return {false, "type-1 part is nonzero", std::nullopt};
  if (cv.compact) return {f.is_zero(), "compact source", std::nullopt};
  PhantomBasis pb = phantom_basis(v, f.target(), depth);
  HomSpace q = eps_space(v, f.target());
  Matrix span(v.field(), q.quotient_dim(), pb.basis.size());
  for (std::size_t k = 0; k < pb.basis.size(); ++k) span.set_block(0, k, q.quotient_coordinates(pb.basis[k]));
  bool member = solve(span, q.quotient_coordinates(f.eps())).has_value();
  return {member, member ? "vanishes on every truncation" : "nonzero on a truncation", pb.certificate};
}

std::vector<ScanEntry> phantom_scan(const std::vector<Seq>& objects, int depth) {
  const std::size_t n = objects.size();
  std::vector<ScanEntry> out(n * n);
  const long long total = static_cast<long long>(n * n);
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < total; ++k) {
    auto idx = static_cast<std::size_t>(k);
    out[idx] = scan_one(objects, idx / n, idx % n, depth);
  }
  return out;
}

std::vector<ScanEntry> phantom_scan_serial(const std::vector<Seq>& objects, int depth) {
  const std::size_t n = objects.size();
  std::vector<ScanEntry> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.push_back(scan_one(objects, i, j, depth));
  return out;
}

void validate(const Diagram& d) {
  for (const auto& [name, g] : d.generators) {
    if (!(object(d, g.source) == g.morphism.source()) || !(object(d, g.target) == g.morphism.target()))
      throw ShapeMismatch("generator '" + name + "' does not match its declared objects");
  }
  for (std::size_t r = 0; r < d.relations.size(); ++r) {
    const auto& rel = d.relations[r];
    if (rel.lhs.empty() || rel.rhs.empty()) throw ValidationError("relation " + std::to_string(r) + ": empty path");
    if (generator(d, rel.lhs.back()).source != generator(d, rel.rhs.back()).source ||
        generator(d, rel.lhs.front()).target != generator(d, rel.rhs.front()).target)
      throw ValidationError("relation " + std::to_string(r) + ": paths have different endpoints");
    if (!(evaluate(d, rel.lhs) == evaluate(d, rel.rhs)))
      throw ValidationError("relation " + std::to_string(r) + " does not hold");
  }
}

HatMorphism evaluate(const Diagram& d, const std::vector<std::string>& path) {
  if (path.empty()) throw ValidationError("evaluate: empty path");
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    if (generator(d, path[k]).source != generator(d, path[k + 1]).target)
      throw ValidationError("path is not composable at '" + path[k] + "'");
  return *composite(d, path, 0, path.size());
}

HatMorphism apply_derivation(const Diagram& d, const Derivation& der, const std::vector<std::string>& path) {
  HatMorphism whole = evaluate(d, path);
  HatMorphism sum = HatMorphism::zero(whole.source(), whole.target());
  for (std::size_t k = 0; k < path.size(); ++k) {
    HatMorphism term = derivation_value(d, der, path[k]);
    if (auto right = composite(d, path, k + 1, path.size())) term = compose_hat(term, *right);
    if (auto left = composite(d, path, 0, k)) term = compose_hat(*left, term);
    sum = sum + term;
  }
  return sum;
}

DerivationCheck check_derivation(const Diagram& d, const Derivation& der) {
  check_derivation_shapes(d, der);
  for (std::size_t r = 0; r < d.relations.size(); ++r) {
    const auto& rel = d.relations[r];
    if (!(apply_derivation(d, der, rel.lhs) == apply_derivation(d, der, rel.rhs)))
      return {false, r, "Leibniz fails on relation " + std::to_string(r)};
  }
  std::size_t k = 0;
  for (const auto& [name, g] : d.generators) {
    if (!is_identity_generator(g)) continue;
    if (!derivation_value(d, der, name).is_zero())
      return {false, d.relations.size() + k, "Leibniz on " + name + " o " + name + " forces D(" + name + ") = 0"};
    ++k;
  }
  return {true, 0, ""};
}

Derivation inner_derivation(const Diagram& d, const InnerData& theta) {
  auto th = [&](const std::string& obj) {
    const Seq& v = object(d, obj);
    auto it = theta.find(obj);
    return it == theta.end() ? HatMorphism::zero(v, v) : HatMorphism::type_eps(it->second);
  };
  Derivation out;
  for (const auto& [name, g] : d.generators)
    out[name] = (compose_hat(g.morphism, th(g.source)) - compose_hat(th(g.target), g.morphism)).eps();
  return out;
}

std::optional<InnerData> solve_inner(const Diagram& d, const Derivation& der) {
  if (auto c = check_derivation(d, der); !c.ok) throw ValidationError("solve_inner: " + c.message);
  const Field& fld = d.objects.empty() ? Field() : d.objects.begin()->second.field();

  std::map<std::string, HomSpace> ends;
  std::map<std::string, std::size_t> col0;
  std::size_t cols = 0;
  for (const auto& [name, v] : d.objects) {
    auto it = ends.emplace(name, eps_space(v, v)).first;
    col0[name] = cols;
    cols += it->second.quotient_dim();
  }
  std::vector<HomSpace> spaces;
  std::size_t rows = 0;
  for (const auto& [name, g] : d.generators) {
    spaces.push_back(eps_space(g.morphism.source(), g.morphism.target()));
    rows += spaces.back().quotient_dim();
  }

  Matrix sys(fld, rows, cols), rhs(fld, rows, 1);
  std::size_t r = 0, k = 0;
  for (const auto& [name, g] : d.generators) {
    const HomSpace& q = spaces[k++];
    const auto& src = ends.at(g.source);
    const auto& tgt = ends.at(g.target);
    for (std::size_t j = 0; j < src.quotient_dim(); ++j) {
      HatMorphism t = compose_hat(g.morphism, HatMorphism::type_eps(src.quotient_basis()[j]));
      sys.set_block(r, col0[g.source] + j, sys.block(r, col0[g.source] + j, q.quotient_dim(), 1) +
                                               q.quotient_coordinates(t.eps()));
    }
    for (std::size_t j = 0; j < tgt.quotient_dim(); ++j) {
      HatMorphism t = compose_hat(HatMorphism::type_eps(tgt.quotient_basis()[j]), g.morphism);
      sys.set_block(r, col0[g.target] + j, sys.block(r, col0[g.target] + j, q.quotient_dim(), 1) -
                                               q.quotient_coordinates(t.eps()));
    }
    rhs.set_block(r, 0, q.quotient_coordinates(derivation_value(d, der, name).eps()));
    r += q.quotient_dim();
  }
  auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  InnerData theta;
  for (const auto& [name, q] : ends)
    theta[name] = q.from_quotient_coordinates(x->block(col0[name], 0, q.quotient_dim(), 1));
  return theta;
}

bool same_derivation(const Diagram& d, const Derivation& a, const Derivation& b) {
  for (const auto& [name, g] : d.generators)
    if (!(derivation_value(d, a, name) == derivation_value(d, b, name))) return false;
  return true;
}

}  // namespace dualseq
