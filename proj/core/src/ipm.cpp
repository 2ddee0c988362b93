#include "racmod/ipm.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Core>
#include <Eigen/Sparse>

#include "racmod/error.hpp"

namespace racmod {

namespace {

using Vec = Eigen::VectorXd;

struct Iterate {
  Vec x, s, y, z;
};

double max_step(const Vec& v, const Vec& dv) {
  double a = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (dv[i] < 0) a = std::min(a, -v[i] / dv[i]);
  return a;
}

}  // namespace

IpmResult solve_power_program(const PowerProgram& program, const IpmOptions& options) {
  const double p = program.p;
  if (!(p >= 1.0)) throw DomainError("exponent p must be >= 1");
  const auto n = static_cast<Eigen::Index>(program.variables);
  const auto m = static_cast<Eigen::Index>(program.rows.size());
  IpmResult out;
  if (m == 0) {
    out.x.assign(program.variables, 0.0);
    out.converged = true;
    return out;
  }

  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (program.rows[i].empty()) throw DomainError("constraint row with no variables");
    for (int j : program.rows[i]) trip.emplace_back(i, j, 1.0);
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> A(m, n);
  A.setFromTriplets(trip.begin(), trip.end());
  const Eigen::SparseMatrix<double> At = A.transpose();

  auto grad = [p](const Vec& x) {
    return p == 1.0 ? Vec(Vec::Ones(x.size())) : Vec(p * x.array().pow(p - 1.0));
  };
  auto hess = [p](const Vec& x) {
    return p == 1.0 ? Vec(Vec::Zero(x.size())) : Vec(p * (p - 1.0) * x.array().pow(p - 2.0));
  };

  Iterate it;
  it.x = Vec::Ones(n);
  it.s = (A * it.x - Vec::Ones(m)).cwiseMax(1.0);
  it.y = Vec::Ones(m);
  it.z = Vec::Ones(n);

  const double total = static_cast<double>(n + m);
  const double tol = options.tolerance;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    out.iterations = iter;
    const Vec g = grad(it.x);
    const Vec rd = g - At * it.y - it.z;
    const Vec rp = A * it.x - it.s - Vec::Ones(m);
    const double mu = (it.s.dot(it.y) + it.x.dot(it.z)) / total;
    const double obj = it.x.array().pow(p).sum();
    if (mu <= tol * (1.0 + obj) && rp.lpNorm<Eigen::Infinity>() <= tol &&
        rd.lpNorm<Eigen::Infinity>() <= tol * (1.0 + g.lpNorm<Eigen::Infinity>())) {
      out.converged = true;
      break;
    }
    // Complementarity exhausted while the dual residual stalls: no further
    // progress is possible in double precision.
    if (mu <= 1e-6 * tol * (1.0 + obj)) break;

    const Vec d = hess(it.x) + it.z.cwiseQuotient(it.x);
    const Vec dinv = d.cwiseInverse();
    // Reduced Newton system in y (m x m) or, with more rows than variables,
    // in x (n x n); the latter stays positive definite as slacks vanish.
    const Vec ys = it.y.cwiseQuotient(it.s);
    const bool by_rows = m <= n;
    Eigen::SparseMatrix<double> normal;
    if (by_rows) {
      normal = A * dinv.asDiagonal() * At;
      for (Eigen::Index i = 0; i < m; ++i) normal.coeffRef(i, i) += 1.0 / ys[i];
    } else {
      normal = At * ys.asDiagonal() * A;
      for (Eigen::Index j = 0; j < n; ++j) normal.coeffRef(j, j) += d[j];
    }
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(normal);
    if (llt.info() != Eigen::Success) break;

    // Solves the Newton system for complementarity targets (rsy, rxz).
    auto direction = [&](const Vec& rsy, const Vec& rxz, Iterate& dir) {
      const Vec w = -rd - rxz.cwiseQuotient(it.x);
      if (by_rows) {
        const Vec rhs = -rsy.cwiseQuotient(it.y) - rp - A * dinv.cwiseProduct(w);
        dir.y = llt.solve(rhs);
        dir.x = dinv.cwiseProduct(w + At * dir.y);
        dir.s = A * dir.x + rp;
      } else {
        dir.x = llt.solve(w - At * (ys.cwiseProduct(rp) + rsy.cwiseQuotient(it.s)));
        dir.s = A * dir.x + rp;
        dir.y = (-rsy - it.y.cwiseProduct(dir.s)).cwiseQuotient(it.s);
      }
      dir.z = (-rxz - it.z.cwiseProduct(dir.x)).cwiseQuotient(it.x);
    };

    Iterate aff;
    direction(it.s.cwiseProduct(it.y), it.x.cwiseProduct(it.z), aff);
    const double ap = std::min(max_step(it.x, aff.x), max_step(it.s, aff.s));
    const double ad = std::min(max_step(it.y, aff.y), max_step(it.z, aff.z));
    const double a_aff = std::min(ap, ad);
    const double mu_aff = ((it.s + a_aff * aff.s).dot(it.y + a_aff * aff.y) +
                           (it.x + a_aff * aff.x).dot(it.z + a_aff * aff.z)) /
                          total;
    const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);

    Iterate dir;
    direction(it.s.cwiseProduct(it.y) - Vec::Constant(m, sigma * mu) + aff.s.cwiseProduct(aff.y),
              it.x.cwiseProduct(it.z) - Vec::Constant(n, sigma * mu) + aff.x.cwiseProduct(aff.z),
              dir);
    double alpha = std::min({max_step(it.x, dir.x), max_step(it.s, dir.s),
                             max_step(it.y, dir.y), max_step(it.z, dir.z)});
    alpha = std::min(1.0, 0.995 * alpha);
    it.x += alpha * dir.x;
    it.s += alpha * dir.s;
    it.y += alpha * dir.y;
    it.z += alpha * dir.z;
  }

  out.x.assign(it.x.data(), it.x.data() + n);
  out.y.assign(it.y.data(), it.y.data() + m);
  out.objective = it.x.array().pow(p).sum();

  // Lagrangian dual value at y: sum y - sum_j conj(eta_j), eta = A^T y.
  // For p = 1 the dual is feasible only when eta <= 1, so y is rescaled.
  const Vec eta = At * it.y.cwiseMax(0.0);
  const double ysum = it.y.cwiseMax(0.0).sum();
  if (p == 1.0) {
    const double peak = std::max(1.0, eta.maxCoeff());
    out.dual_bound = ysum / peak;
  } else {
    const double pc = p / (p - 1.0);
    out.dual_bound = ysum - (p - 1.0) * (eta / p).array().pow(pc).sum();
  }
  return out;
}

}  // namespace racmod
