#include "covertbf/conic/standard_form.hpp"

#include <numeric>

namespace covertbf::conic {

int ConeDims::size() const {
  int s = nonneg;
  for (int n : psd) s += n * n;
  return s;
}

int ConeDims::degree() const { return nonneg + std::accumulate(psd.begin(), psd.end(), 0); }

RMatrix embed_hermitian(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  RMatrix s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = h.real();
  s.topRightCorner(n, n) = -h.imag();
  s.bottomLeftCorner(n, n) = h.imag();
  s.bottomRightCorner(n, n) = h.real();
  return s;
}

CMatrix unembed_hermitian(const RMatrix& s) {
  const Eigen::Index n = s.rows() / 2;
  const RMatrix re = 0.5 * (s.topLeftCorner(n, n) + s.bottomRightCorner(n, n));
  const RMatrix im = 0.5 * (s.bottomLeftCorner(n, n) - s.topRightCorner(n, n));
  CMatrix h(n, n);
  h.real() = re;
  h.imag() = im;
  return hermitian_part(h);
}

CMatrix hermitian_from_params(const double* x, int n) {
  CMatrix h = CMatrix::Zero(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) h(i, i) = x[k++];
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = cdouble(x[k], x[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  }
  return h;
}

RVector params_from_hermitian(const CMatrix& h) {
  const int n = static_cast<int>(h.rows());
  RVector x(hermitian_param_count(n));
  int k = 0;
  for (int i = 0; i < n; ++i) x[k++] = h(i, i).real();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const cdouble v = 0.5 * (h(i, j) + std::conj(h(j, i)));
      x[k++] = v.real();
      x[k++] = v.imag();
    }
  }
  return x;
}

namespace {

// Coefficients of Tr(M X) with respect to the parameters of X.
void trace_coefficients(const CMatrix& m, double weight, double* out) {
  const int n = static_cast<int>(m.rows());
  int k = 0;
  for (int i = 0; i < n; ++i) out[k++] += weight * m(i, i).real();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out[k++] += weight * 2.0 * m(i, j).real();
      out[k++] += weight * 2.0 * m(i, j).imag();
    }
  }
}

// Images E^H B_k E of the parameter basis under a congruence, in parameter order.
std::vector<CMatrix> congruence_images(const CMatrix& e) {
  const int n = static_cast<int>(e.rows());
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) out.push_back(e.row(i).adjoint() * e.row(i));
  const cdouble j1(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const CMatrix a = e.row(i).adjoint() * e.row(j);
      out.push_back(a + a.adjoint());
      out.push_back(j1 * a - j1 * a.adjoint());
    }
  }
  return out;
}

void put_embedded(RMatrix& g, int row, int col, const CMatrix& m, double weight) {
  const RMatrix s = embed_hermitian(m);
  g.col(col).segment(row, s.size()) += weight * Eigen::Map<const RVector>(s.data(), s.size());
}

}  // namespace

StandardForm embed_complex(const ConicProblem& problem) {
  StandardForm f;
  int n = 0;
  for (const auto& b : problem.blocks()) {
    f.block_offset.push_back(n);
    f.block_dim.push_back(b.dim);
    n += hermitian_param_count(b.dim);
  }
  for (std::size_t i = 0; i < problem.scalars().size(); ++i) f.scalar_offset.push_back(n++);

  auto row_of = [&](const LinearForm& form) {
    RVector a = RVector::Zero(n);
    for (const auto& t : form.traces) trace_coefficients(t.coeff, 1.0, a.data() + f.block_offset[t.block.index]);
    for (const auto& s : form.scalars) a[f.scalar_offset[s.scalar.index]] += s.coeff;
    return a;
  };

  int n_eq = 0;
  int n_lp = 0;
  for (const auto& s : problem.scalars()) n_lp += s.domain == ScalarDomain::kNonnegative ? 1 : 0;
  for (const auto& c : problem.affine_constraints()) (c.relation == Relation::kEqual ? n_eq : n_lp)++;
  f.cones.nonneg = n_lp;
  for (const auto& b : problem.blocks()) f.cones.psd.push_back(2 * b.dim);
  for (const auto& l : problem.lmi_constraints()) f.cones.psd.push_back(2 * l.dim);
  const int m = f.cones.size();

  f.c = row_of(problem.objective());
  f.objective_constant = problem.objective().constant;
  if (problem.sense() == Sense::kMaximize) {
    f.c = -f.c;
    f.objective_sign = -1.0;
  }
  f.A = RMatrix::Zero(n_eq, n);
  f.b = RVector::Zero(n_eq);
  f.G = RMatrix::Zero(m, n);
  f.h = RVector::Zero(m);

  int eq = 0;
  int row = 0;
  for (std::size_t i = 0; i < problem.scalars().size(); ++i) {
    if (problem.scalars()[i].domain != ScalarDomain::kNonnegative) continue;
    f.G(row++, f.scalar_offset[i]) = -1.0;
  }
  for (const auto& c : problem.affine_constraints()) {
    const RVector a = row_of(c.lhs);
    const double k = c.lhs.constant;
    switch (c.relation) {
      case Relation::kEqual:
        f.A.row(eq) = a;
        f.b[eq++] = c.rhs - k;
        break;
      case Relation::kGreaterEqual:
        f.G.row(row) = -a;
        f.h[row++] = k - c.rhs;
        break;
      case Relation::kLessEqual:
        f.G.row(row) = a;
        f.h[row++] = c.rhs - k;
        break;
    }
  }
  for (std::size_t bi = 0; bi < problem.blocks().size(); ++bi) {
    const int d = problem.blocks()[bi].dim;
    const auto images = congruence_images(CMatrix::Identity(d, d));
    for (int k = 0; k < static_cast<int>(images.size()); ++k) {
      put_embedded(f.G, row, f.block_offset[bi] + k, images[k], -1.0);
    }
    row += 4 * d * d;
  }
  for (const auto& l : problem.lmi_constraints()) {
    const RMatrix hc = embed_hermitian(l.constant);
    f.h.segment(row, hc.size()) = Eigen::Map<const RVector>(hc.data(), hc.size());
    for (const auto& t : l.blocks) {
      const auto images = congruence_images(t.map);
      for (int k = 0; k < static_cast<int>(images.size()); ++k) {
        put_embedded(f.G, row, f.block_offset[t.block.index] + k, images[k], -t.scale);
      }
    }
    for (const auto& t : l.scalars) put_embedded(f.G, row, f.scalar_offset[t.scalar.index], t.coeff, -1.0);
    row += 4 * l.dim * l.dim;
  }
  return f;
}

void back_map(const ConicProblem& problem, const StandardForm& form, const RVector& x, ConicSolution& out) {
  out.blocks.clear();
  out.scalars.clear();
  for (std::size_t i = 0; i < problem.blocks().size(); ++i) {
    out.blocks[problem.blocks()[i].name] = hermitian_from_params(x.data() + form.block_offset[i], form.block_dim[i]);
  }
  for (std::size_t i = 0; i < problem.scalars().size(); ++i) {
    out.scalars[problem.scalars()[i].name] = x[form.scalar_offset[i]];
  }
}

}  // namespace covertbf::conic
