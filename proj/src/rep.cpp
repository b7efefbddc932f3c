#include "qg/rep.hpp"

#include <algorithm>
#include <cmath>

#include "qg/error.hpp"

namespace qg {

Representation::Representation(Subgroup domain, int dim, std::vector<CMatrix> matrices)
    : domain_(std::move(domain)), dim_(dim), matrices_(std::move(matrices)) {
  if (dim_ < 1) throw Error(ErrorKind::ShapeMismatch, "representation dimension must be >= 1");
  const int n = domain_.parent()->order();
  if (static_cast<int>(matrices_.size()) != n)
    throw Error(ErrorKind::ShapeMismatch, "matrix list must be indexed by parent elements");
  for (Element g : domain_.elements()) {
    if (matrices_[g].rows() != dim_ || matrices_[g].cols() != dim_)
      throw Error(ErrorKind::ShapeMismatch,
                  "matrix of element " + std::to_string(g) + " is not " +
                      std::to_string(dim_) + "x" + std::to_string(dim_));
  }
  for (int g = 0; g < n; ++g)
    if (!domain_.contains(g)) matrices_[g] = CMatrix();
}

const CMatrix& Representation::operator()(Element g) const {
  if (!domain_.contains(g))
    throw Error(ErrorKind::InvalidElement,
                "element " + std::to_string(g) + " is outside the representation's domain");
  return matrices_[g];
}

RepValidation validate_rep(const Representation& rep, double tol) {
  RepValidation out;
  const FiniteGroup& g = *rep.group();
  const auto& elems = rep.domain().elements();
  const CMatrix id = CMatrix::Identity(rep.dim(), rep.dim());
  auto note = [&](double dev, Element a, Element b) {
    if (dev > out.max_deviation) {
      out.max_deviation = dev;
      out.worst_g = a;
      out.worst_h = b;
    }
  };
  note((rep(g.identity()) - id).cwiseAbs().maxCoeff(), g.identity(), -1);
  for (Element a : elems)
    for (Element b : elems) {
      const CMatrix prod = rep(a) * rep(b);
      note((prod - rep(g.mul(a, b))).cwiseAbs().maxCoeff(), a, b);
    }
  out.ok = out.max_deviation <= tol;
  return out;
}

Character character(const Representation& rep) {
  Character ch{rep.domain(), std::vector<Complex>(rep.group()->order(), Complex(0.0))};
  for (Element g : rep.domain().elements()) ch.values[g] = rep(g).trace();
  return ch;
}

Complex char_inner_product(const Character& a, const Character& b) {
  if (!(a.domain == b.domain))
    throw Error(ErrorKind::GroupMismatch, "characters live on different groups");
  Complex sum(0.0);
  for (Element g : a.domain.elements()) sum += std::conj(a(g)) * b(g);
  return sum / static_cast<double>(a.domain.order());
}

Representation restrict(const Representation& rep, const Subgroup& h) {
  if (!h.is_subset_of(rep.domain()))
    throw Error(ErrorKind::InvalidSubgroup, "restriction target is not a subgroup of the domain");
  return Representation::from_function(h, rep.dim(), [&](Element g) { return rep(g); });
}

namespace {

std::vector<Element> transversal_in(const Subgroup& target, const Subgroup& h) {
  if (target.is_whole()) return left_transversal(h);
  const FiniteGroup& g = *target.parent();
  std::vector<char> covered(g.order(), 0);
  std::vector<Element> reps;
  auto take = [&](Element t) {
    reps.push_back(t);
    for (Element x : h.elements()) covered[g.mul(t, x)] = 1;
  };
  take(g.identity());
  for (Element t : target.elements())
    if (!covered[t]) take(t);
  return reps;
}

}  // namespace

Representation induce(const Representation& rep, const Subgroup& target) {
  const Subgroup& h = rep.domain();
  if (!h.is_subset_of(target))
    throw Error(ErrorKind::InvalidSubgroup, "induction source is not a subgroup of the target");
  const FiniteGroup& g = *target.parent();
  const std::vector<Element> t = transversal_in(target, h);
  const int m = static_cast<int>(t.size());
  const int d = rep.dim();
  return Representation::from_function(target, m * d, [&](Element x) {
    CMatrix out = CMatrix::Zero(m * d, m * d);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const Element y = g.mul(g.mul(g.inv(t[i]), x), t[j]);
        if (h.contains(y)) out.block(i * d, j * d, d, d) = rep(y);
      }
    return out;
  });
}

Representation induce(const Representation& rep) {
  return induce(rep, Subgroup::whole(rep.group()));
}

bool is_isomorphic(const Representation& a, const Representation& b, double tol) {
  if (!(a.domain() == b.domain()))
    throw Error(ErrorKind::GroupMismatch, "representations live on different groups");
  if (a.dim() != b.dim()) return false;
  const Character ca = character(a), cb = character(b);
  for (Element g : a.domain().elements())
    if (std::abs(ca(g) - cb(g)) > tol) return false;
  return true;
}

Representation change_basis(const Representation& rep, const CMatrix& c) {
  if (c.rows() != rep.dim() || c.cols() != rep.dim())
    throw Error(ErrorKind::ShapeMismatch, "basis matrix has wrong shape");
  Eigen::FullPivLU<CMatrix> lu(c);
  if (!lu.isInvertible()) throw Error(ErrorKind::InvalidArgument, "basis matrix is singular");
  const CMatrix cinv = lu.inverse();
  return Representation::from_function(rep.domain(), rep.dim(),
                                       [&](Element g) { return CMatrix(cinv * rep(g) * c); });
}

Representation trivial_rep(const Subgroup& domain, int dim) {
  return Representation::from_function(domain, dim,
                                       [&](Element) { return CMatrix::Identity(dim, dim); });
}

Representation coset_rep(const Subgroup& domain, const Subgroup& h) {
  if (!h.is_subset_of(domain))
    throw Error(ErrorKind::InvalidSubgroup, "coset subgroup not contained in domain");
  return induce(trivial_rep(h), domain);
}

Representation regular_rep(const Subgroup& domain) {
  return coset_rep(domain, Subgroup::trivial(domain.parent()));
}

Representation direct_sum(const Representation& a, const Representation& b) {
  if (!(a.domain() == b.domain()))
    throw Error(ErrorKind::GroupMismatch, "direct sum of representations on different groups");
  const int da = a.dim(), db = b.dim();
  return Representation::from_function(a.domain(), da + db, [&](Element g) {
    CMatrix m = CMatrix::Zero(da + db, da + db);
    m.topLeftCorner(da, da) = a(g);
    m.bottomRightCorner(db, db) = b(g);
    return m;
  });
}

Representation tensor_product(const Representation& a, const Representation& b) {
  if (!(a.domain() == b.domain()))
    throw Error(ErrorKind::GroupMismatch, "tensor product of representations on different groups");
  return Representation::from_function(a.domain(), a.dim() * b.dim(),
                                       [&](Element g) { return kron(a(g), b(g)); });
}

CMatrix averaging_projector(const Representation& rep, const Subgroup& h) {
  if (!h.is_subset_of(rep.domain()))
    throw Error(ErrorKind::InvalidSubgroup, "averaging subgroup not contained in domain");
  CMatrix p = CMatrix::Zero(rep.dim(), rep.dim());
  for (Element g : h.elements()) p += rep(g);
  return p / static_cast<double>(h.order());
}

AdaptedBasis adapted_basis(const Representation& rep, const Subgroup& h, double tol,
                           const std::optional<CMatrix>& reference) {
  const int d = rep.dim();
  AdaptedBasis out;
  out.projector = averaging_projector(rep, h);
  const CMatrix& p = out.projector;
  const double idem = (p * p - p).cwiseAbs().maxCoeff();
  if (idem > 1e-8 * (1.0 + p.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::InvalidRepresentation,
                "averaging projector is not idempotent (deviation " + std::to_string(idem) + ")");
  const CMatrix ref = reference.value_or(CMatrix::Identity(d, d));
  if (ref.rows() != d || ref.cols() != d)
    throw Error(ErrorKind::ShapeMismatch, "reference basis has wrong shape");
  out.fixed_dim = numerical_rank(p, tol);
  const CMatrix id = CMatrix::Identity(d, d);
  out.basis.resize(d, d);
  if (out.fixed_dim > 0) out.basis.leftCols(out.fixed_dim) = orthonormal_span(p * ref, out.fixed_dim);
  if (out.fixed_dim < d)
    out.basis.rightCols(d - out.fixed_dim) = orthonormal_span((id - p) * ref, d - out.fixed_dim);
  return out;
}

CMatrix matrix_in_bases(const Representation& rep, Element g, const CMatrix& from,
                        const CMatrix& to) {
  const int d = rep.dim();
  if (from.rows() != d || from.cols() != d || to.rows() != d || to.cols() != d)
    throw Error(ErrorKind::ShapeMismatch, "basis matrices must be dim x dim");
  Eigen::FullPivLU<CMatrix> lu(to);
  if (!lu.isInvertible() || numerical_rank(from, 1e-12) < d)
    throw Error(ErrorKind::InvalidArgument, "singular basis matrix");
  return lu.solve(rep(g) * from);
}

}  // namespace qg
