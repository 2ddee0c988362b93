#include "racmod/critical.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "racmod/approximation.hpp"
#include "racmod/curves.hpp"
#include "racmod/error.hpp"

namespace racmod {

std::vector<SlopeFit> fit_slopes(const std::vector<DecayCell>& table) {
  std::set<int> all_scales;
  std::set<double> grid;
  for (const auto& c : table) {
    all_scales.insert(c.k);
    grid.insert(c.p);
  }
  const std::vector<int> scales(all_scales.begin(), all_scales.end());
  const std::size_t use = (scales.size() + 1) / 2;
  const std::vector<int> window(scales.end() - static_cast<std::ptrdiff_t>(use), scales.end());
  if (window.size() < 2) throw DomainError("slope fit needs at least two scales in the window");

  std::vector<SlopeFit> out;
  for (double p : grid) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& c : table)
      if (c.p == p && std::binary_search(window.begin(), window.end(), c.k))
        pts.emplace_back(c.k, c.log_modulus);
    SlopeFit f;
    f.p = p;
    f.scales = window;
    const double n = static_cast<double>(pts.size());
    if (pts.size() < 2) {
      f.slope = std::nan("");
      out.push_back(f);
      continue;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (auto [x, y] : pts) {
      const double r = y - (f.intercept + f.slope * x);
      ss += r * r;
    }
    f.rms_residual = std::sqrt(ss / n);
    out.push_back(f);
  }
  return out;
}

CriticalExponent estimate_critical_exponent(const std::vector<SlopeFit>& slopes, int q,
                                            const FitOptions& options) {
  if (q < 2) throw DomainError("q must be >= 2");
  if (slopes.empty()) throw DomainError("no slopes to interpolate");
  CriticalExponent ce;
  ce.q = q;
  ce.target_slope = -std::log(static_cast<double>(q - 1));

  for (const auto& s : slopes) {
    if (s.rms_residual > options.residual_threshold) {
      std::ostringstream w;
      w << "slope fit at p=" << s.p << " has RMS residual " << s.rms_residual;
      ce.warnings.push_back(w.str());
    }
  }
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    if (slopes[i].slope > slopes[i - 1].slope) {
      std::ostringstream w;
      w << "sigma(p) increases between p=" << slopes[i - 1].p << " and p=" << slopes[i].p;
      ce.warnings.push_back(w.str());
      break;
    }
  }

  // First grid interval where sigma - target changes from >= 0 to < 0.
  const double t = ce.target_slope;
  if (slopes.front().slope - t < 0) {
    ce.estimate = slopes.front().p;
    ce.warnings.push_back("sigma is already below -log(q-1) at the first grid point");
    return ce;
  }
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    const double a = slopes[i - 1].slope - t;
    const double b = slopes[i].slope - t;
    if (a >= 0 && b < 0) {
      ce.estimate = slopes[i - 1].p + (slopes[i].p - slopes[i - 1].p) * a / (a - b);
      ce.bracketed = true;
      return ce;
    }
  }
  ce.estimate = slopes.back().p;
  ce.warnings.push_back("sigma never falls below -log(q-1) on the p grid");
  return ce;
}

ModulusSweep modulus_sweep(const SimplicialGraph& graph, int k_min, int k_max,
                           const std::vector<double>& p_grid, const SweepOptions& options) {
  if (k_min > k_max) throw DomainError("k_min must be <= k_max");
  if (k_min <= options.k0) {
    throw DomainError("k_min must exceed the separation scale k0 = " + std::to_string(options.k0));
  }
  if (p_grid.empty()) throw DomainError("empty p grid");
  for (double p : p_grid)
    if (!(p >= 1.0)) throw DomainError("modulus p grid must lie in [1, inf)");
  if (!options.assume_ok) require_assumptions(graph);

  const GroupSpec spec(graph, 2);
  ApproximationOptions aopts;
  aopts.assume_ok = true;
  aopts.tile_cap = options.tile_cap;

  ModulusSweep sweep;
  for (int k = k_min; k <= k_max; ++k) {
    const Approximation approx = build_approximation(spec, k, options.adjacency_radius, aopts);
    const CurveFamily family = build_curve_family(approx, options.k0);
    sweep.tiles_per_scale[k] = approx.tile_count();
    SolveOptions so;
    so.tolerance = options.tolerance;
    for (double p : p_grid) {
      ModulusResult r = solve_modulus(family, p, so);
      so.initial_curves = r.active_curves;
      sweep.table.push_back({k, p, r.modulus, std::log(r.modulus)});
      sweep.results.emplace(std::pair{k, p}, std::move(r));
    }
  }
  return sweep;
}

CriticalExponentReport critical_exponent(const SimplicialGraph& graph, int k_min, int k_max,
                                         const std::vector<double>& p_grid, int q,
                                         const SweepOptions& options, const FitOptions& fit) {
  if (k_max - k_min + 1 < 3) throw DomainError("critical exponent needs at least three scales");
  CriticalExponentReport rep;
  rep.sweep = modulus_sweep(graph, k_min, k_max, p_grid, options);
  for (const auto& c : rep.sweep.table) {
    if (!(c.modulus > 0)) {
      throw DomainError("empty curve family at scale " + std::to_string(c.k) +
                        "; lower k0 or raise k_min");
    }
  }
  rep.slopes = fit_slopes(rep.sweep.table);
  rep.estimate = estimate_critical_exponent(rep.slopes, q, fit);
  return rep;
}

std::vector<double> parse_grid(const std::string& spec) {
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ParseError("bad number '" + s + "' in grid '" + spec + "'");
    return v;
  };
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw ParseError("grid '" + spec + "' must be start:stop:step");
    const double a = num(parts[0]), b = num(parts[1]), h = num(parts[2]);
    if (!(h > 0) || b < a) throw ParseError("grid '" + spec + "' needs step > 0 and stop >= start");
    const auto count = static_cast<long>(std::floor((b - a) / h + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
      out.push_back(std::round((a + static_cast<double>(i) * h) * 1e12) / 1e12);
    }
  } else {
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(num(part));
  }
  if (out.empty()) throw ParseError("empty grid '" + spec + "'");
  return out;
}

}  // namespace racmod
