#include "racmod/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "racmod/error.hpp"

namespace racmod {

WeightSequence weights_from_sweep(const ModulusSweep& sweep, double p) {
  WeightSequence ws;
  ws.p = p;
  for (const auto& [key, result] : sweep.results) {
    if (key.second != p) continue;
    ws.scales.push_back({key.first, result.weights.values, 1.0});
  }
  if (ws.scales.empty()) {
    std::ostringstream m;
    m << "sweep has no results at p=" << p;
    throw DomainError(m.str());
  }
  std::sort(ws.scales.begin(), ws.scales.end(),
            [](const ScaleWeights& a, const ScaleWeights& b) { return a.scale < b.scale; });
  return ws;
}

WeightSequence geometric_weights(double tau, double K, double lambda, int k_min, int k_max) {
  WeightSequence ws;
  for (int k = k_min; k <= k_max; ++k) {
    ws.scales.push_back({k, {K * std::pow(lambda, k)}, std::exp(tau * k)});
  }
  return ws;
}

namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
};

Line least_squares(const std::vector<std::pair<double, double>>& pts) {
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  Line l;
  l.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  l.intercept = (sy - l.slope * sx) / n;
  return l;
}

}  // namespace

DecayFit fit_decay(const WeightSequence& ws) {
  if (ws.scales.size() < 3) throw DomainError("decay fit needs at least three scales");
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : ws.scales) {
    const double peak = s.values.empty() ? 0.0 : *std::max_element(s.values.begin(), s.values.end());
    if (!(peak > 0)) throw DomainError("scale " + std::to_string(s.scale) + " has no positive weight");
    pts.emplace_back(s.scale, std::log(peak));
  }
  const Line l = least_squares(pts);
  DecayFit f;
  f.lambda = std::exp(l.slope);
  if (!(f.lambda < 1.0)) {
    std::ostringstream m;
    m << "no exponential envelope: fitted lambda = " << f.lambda << " >= 1";
    throw DomainError(m.str());
  }
  double log_k = -std::numeric_limits<double>::infinity();
  for (auto [x, y] : pts) log_k = std::max(log_k, y - l.slope * x);
  f.K = std::exp(log_k);
  return f;
}

double select_weights_exponent(const ModulusSweep& sweep, double above) {
  std::vector<double> grid;
  for (const auto& [key, result] : sweep.results)
    if (key.second > above + 1e-12) grid.push_back(key.second);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  double best_p = 0.0, best_lambda = 1.0;
  std::string last_error = "no grid exponent above " + std::to_string(above);
  for (double p : grid) {
    try {
      const DecayFit f = fit_decay(weights_from_sweep(sweep, p));
      if (f.lambda < best_lambda) {
        best_lambda = f.lambda;
        best_p = p;
      }
    } catch (const DomainError& e) {
      last_error = e.what();
    }
  }
  if (best_lambda >= 1.0) throw DomainError("no decaying weights: " + last_error);
  return best_p;
}

double upper_bound_from_decay(double tau2, int q, double lambda) {
  if (!(lambda > 0 && lambda < 1)) throw DomainError("lambda must lie in (0, 1)");
  if (q < 2) throw DomainError("q must be >= 2");
  return (tau2 + std::log(static_cast<double>(q - 1))) / std::log(1.0 / lambda);
}

double s_zero(double tau2, int q) {
  if (q < 2) throw DomainError("q must be >= 2");
  if (q == 2) throw DomainError("s0 undefined (log(q-1) = 0)");
  return -tau2 / std::log(static_cast<double>(q - 1));
}

PressureEstimate estimate_pressure(const WeightSequence& ws, int q, const PressureOptions& options) {
  if (q < 3) throw DomainError("pressure needs q >= 3 (log(q-1) > 0)");
  if (options.s_grid.empty() || options.p_grid.size() < 2) {
    throw DomainError("pressure needs a nonempty s grid and at least two p values");
  }
  std::vector<double> pg = options.p_grid;
  std::sort(pg.begin(), pg.end());
  if (pg.front() < 0) throw DomainError("pressure p grid must be >= 0");

  std::vector<const ScaleWeights*> shells;
  for (const auto& s : ws.scales)
    if (options.k_max == 0 || s.scale <= options.k_max) shells.push_back(&s);
  std::sort(shells.begin(), shells.end(),
            [](const ScaleWeights* a, const ScaleWeights* b) { return a->scale < b->scale; });
  if (shells.size() < 3) throw DomainError("pressure needs at least three scales up to k_max");
  const std::size_t use = (shells.size() + 1) / 2;
  const std::vector<const ScaleWeights*> window(shells.end() - static_cast<std::ptrdiff_t>(use),
                                                shells.end());

  PressureEstimate pe;
  pe.q = q;
  pe.s_grid = options.s_grid;
  pe.p_step = pg[1] - pg[0];
  for (const auto* s : window) pe.scales_used.push_back(s->scale);
  const double lq = std::log(static_cast<double>(q - 1));

  // log T_k(s, p) = s k log(q-1) + log sum_w mult rho^p, over rho > 0.
  auto log_shell = [&](const ScaleWeights& sh, double s, double p) {
    double sum = 0.0;
    for (double v : sh.values)
      if (v > 0) sum += std::pow(v, p);
    sum *= sh.multiplicity;
    if (!(sum > 0)) return -std::numeric_limits<double>::infinity();
    return s * sh.scale * lq + std::log(sum);
  };
  auto rate = [&](double s, double p) {
    std::vector<std::pair<double, double>> pts;
    for (const auto* sh : window) {
      const double y = log_shell(*sh, s, p);
      if (!std::isfinite(y)) return -std::numeric_limits<double>::infinity();
      pts.emplace_back(sh->scale, y);
    }
    return least_squares(pts).slope;
  };

  if (options.tau2) {
    pe.s0 = -*options.tau2 / lq;
  } else {
    std::vector<std::pair<double, double>> pts;
    for (const auto* sh : window) {
      std::size_t support = 0;
      for (double v : sh->values) support += v > 0 ? 1 : 0;
      pts.emplace_back(sh->scale, std::log(static_cast<double>(support) * sh->multiplicity));
    }
    pe.s0 = -least_squares(pts).slope / lq;
  }

  for (double s : pe.s_grid) {
    double est = pg.back();
    bool found = false;
    double prev = rate(s, pg[0]);
    if (prev < 0) {
      est = pg[0];
      found = s <= pe.s0 + 1e-12;
      if (!found) {
        std::ostringstream w;
        w << "at s=" << s << " the series already converges at p=" << pg[0];
        pe.warnings.push_back(w.str());
      }
    } else {
      for (std::size_t i = 1; i < pg.size(); ++i) {
        const double cur = rate(s, pg[i]);
        if (cur < 0) {
          est = pg[i - 1] + (pg[i] - pg[i - 1]) * prev / (prev - cur);
          found = true;
          break;
        }
        prev = cur;
      }
      if (!found) {
        std::ostringstream w;
        w << "at s=" << s << " no sign change of the shell rate on the p grid";
        pe.warnings.push_back(w.str());
      }
    }
    pe.P_values.push_back(est);
    pe.bracketed.push_back(found);
  }
  return pe;
}

ConvexityReport convexity_check(const PressureEstimate& pe, std::optional<double> epsilon) {
  ConvexityReport r;
  r.epsilon = epsilon.value_or(2.0 * pe.p_step);
  r.worst_violation = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < pe.s_grid.size(); ++i)
    if (pe.s_grid[i] >= pe.s0 - 1e-12) pts.emplace_back(pe.s_grid[i], pe.P_values[i]);
  std::sort(pts.begin(), pts.end());
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t c = a + 1; c < pts.size(); ++c) {
      for (std::size_t b = c + 1; b < pts.size(); ++b) {
        const double t = (pts[b].first - pts[c].first) / (pts[b].first - pts[a].first);
        const double chord = t * pts[a].second + (1 - t) * pts[b].second;
        const double excess = pts[c].second - chord - r.epsilon;
        ++r.triples_checked;
        r.worst_violation = std::max(r.worst_violation, excess);
        if (excess > 0) ++r.violations;
      }
    }
  }
  if (r.triples_checked == 0) r.worst_violation = 0.0;
  return r;
}

double convexity_lower_bound(double P0, double s0) {
  if (!(s0 < 0)) throw DomainError("s0 must be negative");
  return P0 * (1.0 - 1.0 / s0);
}

}  // namespace racmod
