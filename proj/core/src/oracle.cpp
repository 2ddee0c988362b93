// Brute-force modulus for tiny explicit families. Shares nothing with the
// interior-point path: p > 1 runs exact coordinate ascent on the Lagrangian
// dual, p = 1 enumerates the vertices of the dual linear program.

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Dense>

#include "racmod/modulus.hpp"

namespace racmod {

namespace {

struct Instance {
  std::size_t tiles = 0;
  std::vector<std::vector<int>> curves;     // distinct tile sets
  std::vector<std::vector<int>> curves_at;  // tile -> curves through it
};

Instance normalise(const CurveFamily& family, const BruteForceOptions& options) {
  if (family.kind != CurveFamily::Kind::kExplicit) {
    throw DomainError("brute-force modulus needs an explicit curve list");
  }
  if (family.tile_count > options.max_tiles) {
    throw ResourceError("brute-force modulus is capped at " + std::to_string(options.max_tiles) +
                        " tiles (got " + std::to_string(family.tile_count) + ")");
  }
  Instance in;
  in.tiles = family.tile_count;
  std::set<std::vector<int>> seen;
  for (const Curve& c : family.curves) {
    std::vector<int> t(c.begin(), c.end());
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    if (seen.insert(t).second) in.curves.push_back(std::move(t));
  }
  in.curves_at.resize(in.tiles);
  for (std::size_t i = 0; i < in.curves.size(); ++i)
    for (int t : in.curves[i]) in.curves_at[t].push_back(static_cast<int>(i));
  return in;
}

// Dual: maximise sum mu - (p-1) sum_v (eta_v / p)^(p/(p-1)),
// eta_v = sum of mu over curves through v, mu >= 0.
class DualAscent {
 public:
  DualAscent(const Instance& in, double p) : in_(in), p_(p), mu_(in.curves.size(), 0.0), eta_(in.tiles, 0.0) {}

  double value() const {
    double s = 0.0;
    for (double m : mu_) s += m;
    const double pc = p_ / (p_ - 1.0);
    for (double e : eta_) s -= (p_ - 1.0) * std::pow(e / p_, pc);
    return s;
  }

  double rho(int v) const { return std::pow(eta_[v] / p_, 1.0 / (p_ - 1.0)); }

  // Upper bound: mass of rho(mu) scaled to be admissible.
  double primal_bound() const {
    double min_len = std::numeric_limits<double>::infinity();
    for (const auto& c : in_.curves) {
      double l = 0.0;
      for (int v : c) l += rho(v);
      min_len = std::min(min_len, l);
    }
    if (!(min_len > 0)) return std::numeric_limits<double>::infinity();
    double mass = 0.0;
    for (std::size_t v = 0; v < in_.tiles; ++v) mass += std::pow(rho(static_cast<int>(v)), p_);
    return mass / std::pow(min_len, p_);
  }

  // eta is summed afresh on every update: incremental updates cancel badly
  // after large trial steps.
  void set(std::size_t i, double value) {
    mu_[i] = value;
    for (int v : in_.curves[i]) {
      double e = 0.0;
      for (int c : in_.curves_at[v]) e += mu_[c];
      eta_[v] = e;
    }
  }

  // Exact maximisation in coordinate i; the derivative
  // 1 - sum_{v in c} ((eta_v^- + t) / p)^(1/(p-1)) is decreasing in t.
  void optimise(std::size_t i) {
    const auto& c = in_.curves[i];
    std::vector<double> base(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) base[j] = std::max(0.0, eta_[c[j]] - mu_[i]);
    auto slope = [&](double t) {
      double s = 1.0;
      for (double b : base) s -= std::pow((b + t) / p_, 1.0 / (p_ - 1.0));
      return s;
    };
    double t = 0.0;
    if (slope(0.0) > 0) {
      double lo = 0.0, hi = p_;
      while (slope(hi) > 0) hi *= 2;
      for (int k = 0; k < 200 && hi - lo > 1e-17 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0 ? lo : hi) = mid;
      }
      t = 0.5 * (lo + hi);
    }
    set(i, t);
  }

  std::vector<double>& mu() { return mu_; }

  // Newton step on the curves with mu > 0, clipped at mu = 0 and accepted
  // only if the dual value increases. Returns whether it moved.
  bool newton_polish() {
    std::vector<int> act;
    for (std::size_t i = 0; i < mu_.size(); ++i)
      if (mu_[i] > 0) act.push_back(static_cast<int>(i));
    if (act.empty()) return false;
    const auto k = static_cast<Eigen::Index>(act.size());
    Eigen::VectorXd grad(k);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(k, k);
    std::vector<double> slope(in_.tiles, 0.0);
    for (std::size_t v = 0; v < in_.tiles; ++v) {
      if (eta_[v] > 0)
        slope[v] = std::pow(eta_[v] / p_, (2.0 - p_) / (p_ - 1.0)) / (p_ * (p_ - 1.0));
    }
    for (Eigen::Index a = 0; a < k; ++a) {
      const auto& ca = in_.curves[act[a]];
      double g = 1.0;
      for (int v : ca) g -= rho(v);
      grad[a] = g;
      for (Eigen::Index b = 0; b < k; ++b) {
        const auto& cb = in_.curves[act[b]];
        double h = 0.0;
        for (int v : ca)
          if (std::find(cb.begin(), cb.end(), v) != cb.end()) h += slope[v];
        hess(a, b) = h;
      }
    }
    // Maximising: step solves (sum of slopes) d = grad.
    Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
    if (ldlt.info() != Eigen::Success) return false;
    const Eigen::VectorXd d = ldlt.solve(grad);
    if (!d.allFinite()) return false;
    const std::vector<double> start = mu_;
    const double before = value();
    for (double t = 1.0; t > 1e-6; t *= 0.5) {
      for (Eigen::Index a = 0; a < k; ++a) set(act[a], std::max(0.0, start[act[a]] + t * d[a]));
      if (value() > before) return true;
    }
    for (std::size_t i = 0; i < mu_.size(); ++i) set(i, start[i]);
    return false;
  }

 private:
  const Instance& in_;
  double p_;
  std::vector<double> mu_;
  std::vector<double> eta_;
};

double dual_ascent_modulus(const Instance& in, double p, const BruteForceOptions& options) {
  DualAscent dual(in, p);
  const std::size_t m = in.curves.size();

  // Coarse grid seed over mu in {0, p/4, p/2, p}^m when small enough.
  if (m <= 6) {
    const double levels[] = {0.0, 0.25 * p, 0.5 * p, p};
    std::vector<int> idx(m, 0);
    std::vector<double> best_mu(m, 0.0);
    double best = dual.value();
    while (true) {
      std::size_t j = 0;
      while (j < m && idx[j] == 3) idx[j++] = 0;
      if (j == m) break;
      ++idx[j];
      for (std::size_t i = 0; i < m; ++i) dual.set(i, levels[idx[i]]);
      if (const double v = dual.value(); v > best) {
        best = v;
        best_mu.assign(dual.mu().begin(), dual.mu().end());
      }
    }
    for (std::size_t i = 0; i < m; ++i) dual.set(i, best_mu[i]);
  }

  double lower = dual.value();
  double upper = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    for (std::size_t i = 0; i < m; ++i) dual.optimise(i);
    if (sweep % 8 == 0) {
      dual.newton_polish();
      lower = std::max(lower, dual.value());
      upper = std::min(upper, dual.primal_bound());
      if (upper - lower <= options.gap_tolerance * upper) break;
    }
  }
  lower = std::max(lower, dual.value());
  upper = std::min(upper, dual.primal_bound());
  if (upper - lower > 1e-7 * upper) {
    throw NonConvergenceError("brute-force dual ascent left a relative gap of " +
                              std::to_string((upper - lower) / upper));
  }
  return 0.5 * (upper + lower);
}

// max sum mu s.t. eta_v <= 1 for every tile, mu >= 0; the optimum sits on
// a vertex where m of the n + m constraints are tight.
double lp_vertex_modulus(const Instance& in, const BruteForceOptions& options) {
  const std::size_t m = in.curves.size();
  if (m > options.max_curves_lp) {
    throw ResourceError("brute-force p = 1 modulus is capped at " +
                        std::to_string(options.max_curves_lp) + " curves");
  }
  std::vector<int> tiles;
  for (std::size_t v = 0; v < in.tiles; ++v)
    if (!in.curves_at[v].empty()) tiles.push_back(static_cast<int>(v));
  const std::size_t rows = tiles.size() + m;

  auto row = [&](std::size_t r) {
    Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(m));
    double b = 0.0;
    if (r < tiles.size()) {
      for (int c : in.curves_at[tiles[r]]) a[c] = 1.0;
      b = 1.0;
    } else {
      a[static_cast<Eigen::Index>(r - tiles.size())] = 1.0;
    }
    return std::pair{a, b};
  };

  double best = 0.0;
  std::vector<std::size_t> pick(m);
  // Lexicographic m-subsets of the rows.
  for (std::size_t i = 0; i < m; ++i) pick[i] = i;
  if (rows < m) return 0.0;
  while (true) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    Eigen::VectorXd b(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
      auto [ar, br] = row(pick[i]);
      a.row(static_cast<Eigen::Index>(i)) = ar;
      b[static_cast<Eigen::Index>(i)] = br;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.isInvertible()) {
      const Eigen::VectorXd mu = lu.solve(b);
      bool feasible = (mu.array() >= -1e-12).all();
      for (std::size_t r = 0; feasible && r < tiles.size(); ++r) {
        double eta = 0.0;
        for (int c : in.curves_at[tiles[r]]) eta += mu[c];
        feasible = eta <= 1.0 + 1e-12;
      }
      if (feasible) best = std::max(best, mu.sum());
    }
    std::size_t i = m;
    while (i > 0 && pick[i - 1] == rows - m + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace

double brute_force_modulus(const CurveFamily& family, double p, const BruteForceOptions& options) {
  if (!(p >= 1.0)) throw DomainError("modulus exponent p must be >= 1");
  const Instance in = normalise(family, options);
  if (in.curves.empty()) return 0.0;
  return p == 1.0 ? lp_vertex_modulus(in, options) : dual_ascent_modulus(in, p, options);
}

double brute_force_modulus(const ModulusProblem& problem, const BruteForceOptions& options) {
  return brute_force_modulus(problem.family, problem.p, options);
}

}  // namespace racmod
