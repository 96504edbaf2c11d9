// Homogeneous self-dual embedding solved by a primal-dual path-following
// method with Nesterov-Todd scaling, in the style of the conelp algorithm.
//
//   min c'x  s.t.  A x = b,  G x + s = h,  s in K
//
// Iterates (x, y, z, s, tau, kappa). Scaling W satisfies W z = W^{-T} s = lambda.
// LP part:  W = diag(d).
// PSD part: W(u) = r' u r,  W^T(u) = r u r',  W^{-T}(u) = r^{-1} u r^{-T}.

#include <algorithm>
#include <cmath>
#include <limits>

#include "covertbf/conic/solver.hpp"

namespace covertbf::conic {

namespace {

using CMap = Eigen::Map<const RMatrix>;
using MMap = Eigen::Map<RMatrix>;

enum class Op { kW, kWT, kWinv, kWinvT };

struct Scaling {
  RVector d;
  std::vector<RMatrix> r;
  std::vector<RMatrix> rinv;
  RVector lambda_lp;
  std::vector<RVector> lambda_psd;
};

class Cone {
 public:
  explicit Cone(const ConeDims& dims) : dims_(dims) {
    int off = dims.nonneg;
    for (int n : dims.psd) {
      offsets_.push_back(off);
      off += n * n;
    }
    size_ = off;
  }

  int size() const { return size_; }
  int degree() const { return dims_.degree(); }

  RVector identity() const {
    RVector e = RVector::Zero(size_);
    e.head(dims_.nonneg).setOnes();
    for (std::size_t k = 0; k < dims_.psd.size(); ++k) {
      MMap(e.data() + offsets_[k], dims_.psd[k], dims_.psd[k]).diagonal().setOnes();
    }
    return e;
  }

  // Smallest "eigenvalue" of u with respect to the cone.
  double min_eig(const RVector& u) const {
    double m = std::numeric_limits<double>::infinity();
    if (dims_.nonneg > 0) m = u.head(dims_.nonneg).minCoeff();
    for (std::size_t k = 0; k < dims_.psd.size(); ++k) {
      const int n = dims_.psd[k];
      const RMatrix s = sym(CMap(u.data() + offsets_[k], n, n));
      Eigen::SelfAdjointEigenSolver<RMatrix> eig(s, Eigen::EigenvaluesOnly);
      m = std::min(m, eig.eigenvalues()(0));
    }
    return m;
  }

  // Returns false when s or z is not strictly inside the cone.
  bool init_scaling(const RVector& s, const RVector& z, Scaling& w) const {
    const int l = dims_.nonneg;
    w.d.resize(l);
    w.lambda_lp.resize(l);
    for (int i = 0; i < l; ++i) {
      if (!(s[i] > 0.0) || !(z[i] > 0.0)) return false;
      w.d[i] = std::sqrt(s[i] / z[i]);
      w.lambda_lp[i] = std::sqrt(s[i] * z[i]);
    }
    w.r.assign(dims_.psd.size(), RMatrix());
    w.rinv.assign(dims_.psd.size(), RMatrix());
    w.lambda_psd.assign(dims_.psd.size(), RVector());
    for (std::size_t k = 0; k < dims_.psd.size(); ++k) {
      const int n = dims_.psd[k];
      Eigen::LLT<RMatrix> ls(sym(CMap(s.data() + offsets_[k], n, n)));
      Eigen::LLT<RMatrix> lz(sym(CMap(z.data() + offsets_[k], n, n)));
      if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
      const RMatrix Ls = ls.matrixL();
      const RMatrix Lz = lz.matrixL();
      if (!set_block(w, k, Ls, Lz)) return false;
    }
    return true;
  }

  // Updates the scaling after a step; ds, dz are scaled directions.
  bool update_scaling(Scaling& w, const RVector& ds, const RVector& dz, double alpha) const {
    const int l = dims_.nonneg;
    for (int i = 0; i < l; ++i) {
      const double si = w.lambda_lp[i] + alpha * ds[i];
      const double zi = w.lambda_lp[i] + alpha * dz[i];
      if (!(si > 0.0) || !(zi > 0.0)) return false;
      w.d[i] *= std::sqrt(si / zi);
      w.lambda_lp[i] = std::sqrt(si * zi);
    }
    for (std::size_t k = 0; k < dims_.psd.size(); ++k) {
      const int n = dims_.psd[k];
      RMatrix st = alpha * sym(CMap(ds.data() + offsets_[k], n, n));
      RMatrix zt = alpha * sym(CMap(dz.data() + offsets_[k], n, n));
      st.diagonal() += w.lambda_psd[k];
      zt.diagonal() += w.lambda_psd[k];
      Eigen::LLT<RMatrix> l1(st);
      Eigen::LLT<RMatrix> l2(zt);
      if (l1.info() != Eigen::Success || l2.info() != Eigen::Success) return false;
      const RMatrix r_old = w.r[k];
      const RMatrix rinv_old = w.rinv[k];
      const RMatrix L1 = r_old * RMatrix(l1.matrixL());
      const RMatrix L2 = rinv_old.transpose() * RMatrix(l2.matrixL());
      if (!set_block(w, k, L1, L2)) return false;
    }
    return true;
  }

  // Applies a scaling operator to a full cone vector.
  RVector apply(const Scaling& w, Op op, const RVector& u) const {
    RVector out(u.size());
    const int l = dims_.nonneg;
    switch (op) {
      case Op::kW:
      case Op::kWT:
        out.head(l) = w.d.cwiseProduct(u.head(l));
        break;
      case Op::kWinv:
      case Op::kWinvT:
        out.head(l) = u.head(l).cwiseQuotient(w.d);
        break;
    }
    for (std::size_t k = 0; k < dims_.psd.size(); ++k) {
      const int n = dims_.psd[k];
      const CMap a(u.data() + offsets_[k], n, n);
      MMap o(out.data() + offsets_[k], n, n);
      switch (op) {
        case Op::kW:
          o.noalias() = w.r[k].transpose() * a * w.r[k];
          break;
        case Op::kWT:
          o.noalias() = w.r[k] * a * w.r[k].transpose();
          break;
        case Op::kWinv:
          o.noalias() = w.rinv[k].transpose() * a * w.rinv[k];
          break;
        case Op::kWinvT:
          o.noalias() = w.rinv[k] * a * w.rinv[k].transpose();
          break;
      }
    }
    return out;
  }

  // Column-wise W^{-T} applied to a matrix whose columns are cone vectors.
  RMatrix apply_cols(const Scaling& w, const RMatrix& g) const {
    RMatrix out(g.rows(), g.cols());
    const int l = dims_.nonneg;
    out.topRows(l) = w.d.cwiseInverse().asDiagonal() * g.topRows(l);
    for (std::size_t k = 0; k < dims_.psd.size(); ++k) {
      const int n = dims_.psd[k];
      const RMatrix& ri = w.rinv[k];
      for (Eigen::Index j = 0; j < g.cols(); ++j) {
        const auto seg = g.col(j).segment(offsets_[k], n * n);
        if (seg.isZero(0.0)) {
          out.col(j).segment(offsets_[k], n * n).setZero();
          continue;
        }
        const CMap a(g.col(j).data() + offsets_[k], n, n);
        MMap o(out.col(j).data() + offsets_[k], n, n);
        o.noalias() = ri * a * ri.transpose();
      }
    }
    return out;
  }

  RVector lambda_full(const Scaling& w) const {
    RVector out = RVector::Zero(size_);
    out.head(dims_.nonneg) = w.lambda_lp;
    for (std::size_t k = 0; k < dims_.psd.size(); ++k) {
      MMap(out.data() + offsets_[k], dims_.psd[k], dims_.psd[k]).diagonal() = w.lambda_psd[k];
    }
    return out;
  }

  // Jordan product (uv + vu) / 2.
  RVector circ(const RVector& u, const RVector& v) const {
    RVector out(size_);
    const int l = dims_.nonneg;
    out.head(l) = u.head(l).cwiseProduct(v.head(l));
    for (std::size_t k = 0; k < dims_.psd.size(); ++k) {
      const int n = dims_.psd[k];
      const CMap a(u.data() + offsets_[k], n, n);
      const CMap b(v.data() + offsets_[k], n, n);
      MMap(out.data() + offsets_[k], n, n) = 0.5 * (a * b + b * a);
    }
    return out;
  }

  // Solves lambda o x = u for x.
  RVector lambda_solve(const Scaling& w, const RVector& u) const {
    RVector out(size_);
    const int l = dims_.nonneg;
    out.head(l) = u.head(l).cwiseQuotient(w.lambda_lp);
    for (std::size_t k = 0; k < dims_.psd.size(); ++k) {
      const int n = dims_.psd[k];
      const CMap a(u.data() + offsets_[k], n, n);
      MMap o(out.data() + offsets_[k], n, n);
      const RVector& lam = w.lambda_psd[k];
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) o(i, j) = 2.0 * a(i, j) / (lam[i] + lam[j]);
      }
    }
    return out;
  }

  // Largest t such that lambda + a u stays in the cone for a in [0, 1/t]; 0 if unbounded.
  double max_step_inverse(const Scaling& w, const RVector& u) const {
    double t = 0.0;
    const int l = dims_.nonneg;
    for (int i = 0; i < l; ++i) t = std::max(t, -u[i] / w.lambda_lp[i]);
    for (std::size_t k = 0; k < dims_.psd.size(); ++k) {
      const int n = dims_.psd[k];
      const CMap a(u.data() + offsets_[k], n, n);
      const RVector is = w.lambda_psd[k].cwiseSqrt().cwiseInverse();
      const RMatrix m = is.asDiagonal() * sym(a) * is.asDiagonal();
      Eigen::SelfAdjointEigenSolver<RMatrix> eig(m, Eigen::EigenvaluesOnly);
      t = std::max(t, -eig.eigenvalues()(0));
    }
    return t;
  }

  // (offset, length) of each irreducible cone component.
  std::vector<std::pair<int, int>> segments() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < dims_.nonneg; ++i) out.emplace_back(i, 1);
    for (std::size_t k = 0; k < dims_.psd.size(); ++k) out.emplace_back(offsets_[k], dims_.psd[k] * dims_.psd[k]);
    return out;
  }

 private:
  static RMatrix sym(const RMatrix& a) { return 0.5 * (a + a.transpose()); }

  // Given factors s = Ls Ls', z = Lz Lz', sets r = Ls V Lambda^{-1/2}.
  static bool set_block(Scaling& w, std::size_t k, const RMatrix& Ls, const RMatrix& Lz) {
    Eigen::JacobiSVD<RMatrix> svd(Lz.transpose() * Ls, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVector lam = svd.singularValues();
    if (!(lam.minCoeff() > 0.0) || !lam.allFinite()) return false;
    const RVector is = lam.cwiseSqrt().cwiseInverse();
    w.r[k] = Ls * svd.matrixV() * is.asDiagonal();
    // r^{-1} = Lambda^{-1/2} U' Lz'  (since Lz' Ls V = U Lambda).
    w.rinv[k] = is.asDiagonal() * svd.matrixU().transpose() * Lz.transpose();
    w.lambda_psd[k] = lam;
    return true;
  }

  ConeDims dims_;
  std::vector<int> offsets_;
  int size_ = 0;
};

// Factored reduced KKT system
//   [ 0  A'  G' ] [dx]   [r1]
//   [ A  0   0  ] [dy] = [r2]
//   [ G  0  -H  ] [dz]   [r3],   H = W'W.
class KktSolver {
 public:
  KktSolver(const StandardForm& f, const Cone& cone, const Scaling& w) : f_(f), cone_(cone), w_(w) {
    const Eigen::Index n = f.c.size();
    const Eigen::Index p = f.b.size();
    gs_ = cone.apply_cols(w, f.G);
    RMatrix k = RMatrix::Zero(n + p, n + p);
    k.topLeftCorner(n, n).noalias() = gs_.transpose() * gs_;
    const double scale = std::max(1.0, k.topLeftCorner(n, n).diagonal().maxCoeff());
    reg_ = 1e-13 * scale;
    k.topLeftCorner(n, n).diagonal().array() += reg_;
    k.topRightCorner(n, p) = f.A.transpose();
    k.bottomLeftCorner(p, n) = f.A;
    k.bottomRightCorner(p, p).diagonal().setConstant(-reg_);
    lu_.compute(k);
  }

  void solve(const RVector& r1, const RVector& r2, const RVector& r3, RVector& dx, RVector& dy, RVector& dz) const {
    raw_solve(r1, r2, r3, dx, dy, dz);
    for (int it = 0; it < 2; ++it) {
      const RVector e1 = r1 - f_.A.transpose() * dy - f_.G.transpose() * dz;
      const RVector e2 = r2 - f_.A * dx;
      const RVector hdz = cone_.apply(w_, Op::kWT, cone_.apply(w_, Op::kW, dz));
      const RVector e3 = r3 - f_.G * dx + hdz;
      RVector cx, cy, cz;
      raw_solve(e1, e2, e3, cx, cy, cz);
      dx += cx;
      dy += cy;
      dz += cz;
    }
  }

 private:
  void raw_solve(const RVector& r1, const RVector& r2, const RVector& r3, RVector& dx, RVector& dy, RVector& dz) const {
    const Eigen::Index n = f_.c.size();
    const Eigen::Index p = f_.b.size();
    const RVector t3 = cone_.apply(w_, Op::kWinvT, r3);
    RVector rhs(n + p);
    rhs.head(n) = r1 + gs_.transpose() * t3;
    rhs.tail(p) = r2;
    const RVector sol = lu_.solve(rhs);
    dx = sol.head(n);
    dy = sol.tail(p);
    dz = cone_.apply(w_, Op::kWinv, gs_ * dx - t3);
  }

  const StandardForm& f_;
  const Cone& cone_;
  const Scaling& w_;
  RMatrix gs_;
  double reg_ = 0.0;
  Eigen::PartialPivLU<RMatrix> lu_;
};

struct Metrics {
  double pcost, dcost, gap, relgap, pres, dres;
  double pinfres, dinfres;  // infinite when not applicable
};

// Row equilibration: scales equality rows and cone segments to unit norm.
struct Equilibration {
  RVector eq;    // per equality row
  RVector cone;  // per cone coordinate
};

Equilibration equilibrate(StandardForm& f, const Cone& cone) {
  Equilibration e;
  e.eq = RVector::Ones(f.A.rows());
  for (Eigen::Index i = 0; i < f.A.rows(); ++i) {
    const double nrm = f.A.row(i).norm();
    if (nrm > 0.0) e.eq[i] = 1.0 / nrm;
  }
  f.A = e.eq.asDiagonal() * f.A;
  f.b = e.eq.cwiseProduct(f.b);
  e.cone = RVector::Ones(f.G.rows());
  for (auto [off, len] : cone.segments()) {
    const double nrm = f.G.middleRows(off, len).norm();
    if (nrm > 0.0) e.cone.segment(off, len).setConstant(1.0 / nrm);
  }
  f.G = e.cone.asDiagonal() * f.G;
  f.h = e.cone.cwiseProduct(f.h);
  return e;
}

}  // namespace

StandardSolution solve_standard(const StandardForm& input, const SolverTolerances& tol) {
  StandardForm f = input;
  const Cone cone(f.cones);
  if (f.G.rows() != cone.size() || f.h.size() != cone.size() || f.G.cols() != f.c.size() || f.A.cols() != f.c.size() ||
      f.A.rows() != f.b.size()) {
    throw InvalidInput("solve_standard: inconsistent problem dimensions");
  }
  const Equilibration eqs = equilibrate(f, cone);

  const Eigen::Index n = f.c.size();
  const Eigen::Index p = f.b.size();
  const int m = cone.size();
  const double degree = cone.degree();
  const RVector e = cone.identity();

  const double resx0 = std::max(1.0, f.c.norm());
  const double resy0 = std::max(1.0, f.b.norm());
  const double resz0 = std::max(1.0, f.h.norm());

  StandardSolution out;
  auto finish = [&](SolveStatus status, const RVector& x, const RVector& y, const RVector& z, const RVector& s,
                    double div) {
    out.status = status;
    out.x = x / div;
    out.y = eqs.eq.cwiseProduct(y) / div;
    out.z = eqs.cone.cwiseProduct(z) / div;
    out.s = s.cwiseQuotient(eqs.cone) / div;
    return out;
  };

  // Starting point: least-squares primal/dual points shifted into the cone.
  RVector x, y, z, s;
  {
    Scaling w;
    w.d = RVector::Ones(f.cones.nonneg);
    w.lambda_lp = RVector::Ones(f.cones.nonneg);
    for (int k : f.cones.psd) {
      w.r.push_back(RMatrix::Identity(k, k));
      w.rinv.push_back(RMatrix::Identity(k, k));
      w.lambda_psd.push_back(RVector::Ones(k));
    }
    const KktSolver kkt(f, cone, w);
    RVector zp;
    kkt.solve(RVector::Zero(n), f.b, f.h, x, y, zp);
    s = -zp;
    RVector xd;
    kkt.solve(-f.c, RVector::Zero(p), RVector::Zero(m), xd, y, z);
    const double ts = -cone.min_eig(s);
    if (ts >= -1e-8 * std::max(s.norm(), 1.0)) s += (1.0 + ts) * e;
    const double tz = -cone.min_eig(z);
    if (tz >= -1e-8 * std::max(z.norm(), 1.0)) z += (1.0 + tz) * e;
  }
  double tau = 1.0;
  double kappa = 1.0;

  Scaling w;
  if (!cone.init_scaling(s, z, w)) {
    out.status = SolveStatus::kNumericalFailure;
    return out;
  }

  Metrics best{};
  bool have_best = false;
  RVector bx, by, bz, bs;
  double btau = 1.0;
  // Weakly feasible instances crawl without ever certifying anything; give up
  // when no residual has halved for a while.
  double best_progress = std::numeric_limits<double>::infinity();
  int since_progress = 0;

  for (int iter = 0;; ++iter) {
    out.iterations = iter;
    // Residuals.
    const RVector rx = f.A.transpose() * y + f.G.transpose() * z + tau * f.c;
    const RVector ry = f.A * x - tau * f.b;
    const RVector rz = s + f.G * x - tau * f.h;
    const double cx = f.c.dot(x);
    const double by_hz = f.b.dot(y) + f.h.dot(z);
    const double rt = kappa + cx + by_hz;
    const double sz = s.dot(z);

    Metrics mt{};
    mt.pcost = cx / tau;
    mt.dcost = -by_hz / tau;
    mt.gap = sz / (tau * tau);
    mt.relgap = std::numeric_limits<double>::infinity();
    if (mt.pcost < 0.0)
      mt.relgap = mt.gap / -mt.pcost;
    else if (mt.dcost > 0.0)
      mt.relgap = mt.gap / mt.dcost;
    mt.pres = std::max(ry.norm() / resy0, rz.norm() / resz0) / tau;
    mt.dres = rx.norm() / resx0 / tau;
    mt.pinfres = std::numeric_limits<double>::infinity();
    mt.dinfres = std::numeric_limits<double>::infinity();
    if (by_hz < 0.0) mt.pinfres = (f.A.transpose() * y + f.G.transpose() * z).norm() / resx0 / -by_hz;
    if (cx < 0.0) mt.dinfres = std::max((f.A * x).norm() / resy0, (f.G * x + s).norm() / resz0) / -cx;

    out.primal_objective = mt.pcost;
    out.dual_objective = mt.dcost;
    out.primal_residual = mt.pres;
    out.dual_residual = mt.dres;
    out.gap = mt.gap;

    const bool converged =
        mt.pres <= tol.feas && mt.dres <= tol.feas && (mt.gap <= tol.abs_gap || mt.relgap <= tol.gap);
    if (converged) return finish(SolveStatus::kOptimal, x, y, z, s, tau);
    if (mt.pinfres <= tol.feas) {
      RVector none = RVector::Zero(n);
      out.status = SolveStatus::kInfeasible;
      out.x = none;
      out.y = eqs.eq.cwiseProduct(y) / -by_hz;
      out.z = eqs.cone.cwiseProduct(z) / -by_hz;
      out.s = RVector::Zero(m);
      return out;
    }
    if (mt.dinfres <= tol.feas) {
      out.status = SolveStatus::kUnbounded;
      out.x = x / -cx;
      out.s = s.cwiseQuotient(eqs.cone) / -cx;
      out.y = RVector::Zero(p);
      out.z = RVector::Zero(m);
      return out;
    }

    // Track the best iterate in case the method stalls.
    const double merit = std::max({mt.pres, mt.dres, std::min(mt.relgap, mt.gap / tol.abs_gap * tol.gap)});
    if (!have_best ||
        merit < std::max({best.pres, best.dres, std::min(best.relgap, best.gap / tol.abs_gap * tol.gap)})) {
      best = mt;
      have_best = true;
      bx = x;
      by = y;
      bz = z;
      bs = s;
      btau = tau;
    }
    auto stalled = [&]() {
      const double relax = 100.0;
      const bool near = best.pres <= relax * tol.feas && best.dres <= relax * tol.feas &&
                        (best.gap <= relax * tol.abs_gap || best.relgap <= relax * tol.gap);
      if (near) return finish(SolveStatus::kOptimal, bx, by, bz, bs, btau);
      out.status = SolveStatus::kNumericalFailure;
      return out;
    };
    const double progress = std::min({merit, mt.pinfres, mt.dinfres});
    if (progress < 0.5 * best_progress) {
      best_progress = progress;
      since_progress = 0;
    } else if (++since_progress >= 20) {
      return stalled();
    }
    if (iter >= tol.max_iterations) {
      stalled();
      if (out.status != SolveStatus::kOptimal) out.status = SolveStatus::kMaxIterations;
      return out;
    }

    const double mu = (sz + tau * kappa) / (degree + 1.0);
    const RVector lam = cone.lambda_full(w);
    const RVector lamsq = cone.circ(lam, lam);

    KktSolver kkt(f, cone, w);
    RVector x1, y1, z1;
    kkt.solve(-f.c, f.b, f.h, x1, y1, z1);
    const double denom = f.c.dot(x1) + f.b.dot(y1) + f.h.dot(z1) - kappa / tau;

    // Solves the Newton system for a given complementarity target and residual weight.
    struct Step {
      RVector dx, dy, dz, ds;  // dz, ds in scaled coordinates
      double dtau = 0.0, dkappa = 0.0;
    };
    auto newton = [&](const RVector& rc, double rc_tau, double weight, Step& st) {
      const RVector q = cone.lambda_solve(w, rc);
      const RVector wtq = cone.apply(w, Op::kWT, q);
      RVector x2, y2, z2;
      kkt.solve(-weight * rx, -weight * ry, -weight * rz - wtq, x2, y2, z2);
      const double num = -weight * rt - rc_tau / tau - (f.c.dot(x2) + f.b.dot(y2) + f.h.dot(z2));
      st.dtau = num / denom;
      st.dx = x2 + st.dtau * x1;
      st.dy = y2 + st.dtau * y1;
      const RVector dz_raw = z2 + st.dtau * z1;
      st.dz = cone.apply(w, Op::kW, dz_raw);
      st.ds = q - st.dz;
      st.dkappa = (rc_tau - kappa * st.dtau) / tau;
      return st.dx.allFinite() && st.dz.allFinite() && std::isfinite(st.dtau);
    };
    auto step_length = [&](const Step& st) {
      double t = std::max(cone.max_step_inverse(w, st.ds), cone.max_step_inverse(w, st.dz));
      t = std::max(t, -st.dtau / tau);
      t = std::max(t, -st.dkappa / kappa);
      return t;
    };

    Step aff;
    if (!newton(-lamsq, -tau * kappa, 1.0, aff)) return stalled();
    const double t_aff = step_length(aff);
    const double a_aff = t_aff > 0.0 ? std::min(1.0, 1.0 / t_aff) : 1.0;
    const double sigma = std::pow(1.0 - a_aff, 3);

    const RVector rc = -lamsq - cone.circ(aff.ds, aff.dz) + sigma * mu * e;
    const double rc_tau = -tau * kappa - aff.dtau * aff.dkappa + sigma * mu;
    Step cmb;
    if (!newton(rc, rc_tau, 1.0 - sigma, cmb)) return stalled();
    const double t = step_length(cmb);
    const double alpha = t > 0.0 ? std::min(1.0, 0.99 / t) : 1.0;
    if (alpha < 1e-10) return stalled();

    Scaling next = w;
    if (!cone.update_scaling(next, cmb.ds, cmb.dz, alpha)) return stalled();
    w = std::move(next);
    x += alpha * cmb.dx;
    y += alpha * cmb.dy;
    tau += alpha * cmb.dtau;
    kappa += alpha * cmb.dkappa;
    const RVector lam_new = cone.lambda_full(w);
    s = cone.apply(w, Op::kWT, lam_new);
    z = cone.apply(w, Op::kWinv, lam_new);
  }
}

}  // namespace covertbf::conic
