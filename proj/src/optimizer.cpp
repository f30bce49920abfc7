#include "evim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "evim/errors.hpp"
#include "evim/parallel.hpp"

namespace evim {

std::string to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::Exploratory: return "exploratory";
    case MoveKind::Pattern: return "pattern";
    case MoveKind::Reduce: return "reduce";
  }
  return "?";
}

std::string to_string(Termination t) {
  return t == Termination::StepTolerance ? "step_tolerance" : "eval_budget";
}

namespace {

std::vector<double> clamp_point(std::vector<double> x,
                                const std::vector<double>& lower,
                                const std::vector<double>& upper) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::clamp(x[i], lower[i], upper[i]);
  }
  return x;
}

}  // namespace

std::vector<double> exploratory_step(const Objective& f,
                                     const std::vector<double>& base,
                                     double& base_value,
                                     const std::vector<double>& step,
                                     const std::vector<double>& lower,
                                     const std::vector<double>& upper,
                                     const std::vector<bool>& frozen,
                                     int& evaluations) {
  std::vector<double> x = base;
  // Fixed coordinate order and strict-improvement acceptance keep the walk
  // deterministic and the accepted-value sequence monotone.
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i < frozen.size() && frozen[i]) continue;
    const double keep = x[i];
    for (double dir : {+1.0, -1.0}) {
      const double candidate = std::clamp(keep + dir * step[i], lower[i], upper[i]);
      if (candidate == x[i]) continue;  // clamped back onto the current point
      x[i] = candidate;
      ++evaluations;
      const double value = f(x);
      if (value < base_value) {
        base_value = value;
        break;  // keep the improvement, move to the next coordinate
      }
      x[i] = keep;
    }
  }
  return x;
}

SearchResult hooke_jeeves(const Objective& f,
                          std::vector<double> start,
                          const std::vector<double>& lower,
                          const std::vector<double>& upper,
                          const SearchOptions& options) {
  const std::size_t n = start.size();
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("hooke_jeeves: bounds dimension mismatch");
  }
  if (options.step_reduction <= 0.0 || options.step_reduction >= 1.0) {
    throw std::invalid_argument("hooke_jeeves: step_reduction must lie in (0,1)");
  }
  if (options.tolerance >= options.initial_step) {
    throw std::invalid_argument("hooke_jeeves: tolerance must be below initial_step");
  }

  SearchResult result;
  std::vector<bool> frozen = options.frozen;
  frozen.resize(n, false);

  // Steps are fractions of each variable's range so one scale covers all
  // coordinates; zero-width ranges are simply never perturbed.
  std::vector<double> range(n);
  for (std::size_t i = 0; i < n; ++i) {
    range[i] = upper[i] - lower[i];
    if (range[i] <= 0.0) frozen[i] = true;
  }
  double scale = options.initial_step;
  auto step_at = [&](double s) {
    std::vector<double> step(n);
    for (std::size_t i = 0; i < n; ++i) step[i] = s * range[i];
    return step;
  };

  int evaluations = 0;
  const auto counted = [&](const std::vector<double>& x) {
    if (evaluations >= options.max_evaluations) {
      return std::numeric_limits<double>::infinity();  // not counted, never accepted
    }
    ++evaluations;
    return f(x);
  };

  std::vector<double> x_base = clamp_point(std::move(start), lower, upper);
  ++evaluations;
  double f_base = f(x_base);
  int iteration = 0;

  auto record = [&](const std::vector<double>& x, double value, MoveKind kind) {
    if (!options.record_trace) return;
    result.trace.push_back({iteration, x, value, scale / options.initial_step, kind});
  };
  record(x_base, f_base, MoveKind::Exploratory);

  result.termination = Termination::EvalBudget;
  while (evaluations < options.max_evaluations) {
    const std::vector<double> step = step_at(scale);
    int local_evals = 0;
    double f_trial = f_base;
    std::vector<double> x_trial = exploratory_step(
        [&](const std::vector<double>& x) { return counted(x); }, x_base, f_trial, step, lower,
        upper, frozen, local_evals);

    if (f_trial < f_base) {
      // The exploratory sweep improved the base: chain pattern moves while
      // they keep paying off.
      MoveKind kind = MoveKind::Exploratory;
      while (true) {
        std::vector<double> x_prev = x_base;
        x_base = x_trial;
        f_base = f_trial;
        ++iteration;
        record(x_base, f_base, kind);
        if (evaluations >= options.max_evaluations) break;

        std::vector<double> x_pattern(n);
        for (std::size_t i = 0; i < n; ++i) {
          x_pattern[i] = x_base[i] + options.acceleration * (x_base[i] - x_prev[i]);
        }
        x_pattern = clamp_point(std::move(x_pattern), lower, upper);
        double f_pattern = counted(x_pattern);
        x_trial = exploratory_step(
            [&](const std::vector<double>& x) { return counted(x); }, x_pattern, f_pattern, step,
            lower, upper, frozen, local_evals);
        f_trial = f_pattern;
        if (f_trial >= f_base) break;  // pattern failed; poll the base again
        kind = MoveKind::Pattern;
      }
    } else {
      // No improving coordinate move: halve the steps.
      scale *= options.step_reduction;
      ++iteration;
      record(x_base, f_base, MoveKind::Reduce);
      if (scale < options.tolerance) {
        result.termination = Termination::StepTolerance;
        break;
      }
    }
  }

  result.best_x = std::move(x_base);
  result.best_value = f_base;
  result.evaluations = std::min(evaluations, options.max_evaluations);
  result.iterations = iteration;
  result.converged = result.termination == Termination::StepTolerance;
  return result;
}

GridResult grid_search(const Objective& f,
                       const std::vector<double>& start,
                       const std::vector<double>& lower,
                       const std::vector<double>& upper,
                       const std::vector<bool>& active,
                       std::size_t points_per_axis,
                       bool parallel) {
  const std::size_t n = start.size();
  if (points_per_axis < 2) {
    throw std::invalid_argument("grid_search: need at least 2 points per axis");
  }
  std::vector<std::size_t> axes;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < active.size() && active[i]) axes.push_back(i);
  }
  std::size_t total = 1;
  for (std::size_t k = 0; k < axes.size(); ++k) total *= points_per_axis;

  auto point_at = [&](std::size_t flat) {
    std::vector<double> x = start;
    std::vector<std::size_t> idx(axes.size());
    // Row-major decoding: the flat order is exactly the lexicographic order
    // of the index tuple, so the first strict minimum is the tie-break winner.
    for (std::size_t k = axes.size(); k-- > 0;) {
      idx[k] = flat % points_per_axis;
      flat /= points_per_axis;
    }
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const std::size_t i = axes[k];
      x[i] = lower[i] + (upper[i] - lower[i]) * static_cast<double>(idx[k]) /
                            static_cast<double>(points_per_axis - 1);
    }
    return std::pair{x, idx};
  };

  std::vector<double> values(total);
  parallel_for(
      total, [&](std::size_t flat) { values[flat] = f(point_at(flat).first); }, parallel);

  std::size_t best_flat = 0;
  for (std::size_t flat = 1; flat < total; ++flat) {
    if (values[flat] < values[best_flat]) best_flat = flat;
  }
  auto [x, idx] = point_at(best_flat);
  return {std::move(x), values[best_flat], std::move(idx)};
}

// ---- Motor-design objective -------------------------------------------

Objective design_objective(const MotorSpec& spec,
                           const MaterialCatalog& materials,
                           const std::vector<ConstraintSpec>& constraints,
                           const ModelParams& params,
                           const ObjectiveConfig& config) {
  return [spec, materials, constraints, params, config](const std::vector<double>& x) {
    DesignVector d;
    for (int i = 0; i < DesignVector::kCount && i < static_cast<int>(x.size()); ++i) d[i] = x[i];
    d = d.canonical_for(spec);
    const EvalResult eval = evaluate_design(spec, d, materials, params);
    if (!eval.ok()) {
      return config.infeasible_objective + static_cast<double>(*eval.failure);
    }
    const ConstraintReport cr = evaluate_constraints(*eval.report, constraints, params);
    return -eval.report->efficiency_value + config.penalty_weight * cr.quadratic_sum();
  };
}

std::vector<DesignVector> default_starts(const MotorSpec& spec,
                                         const VariableBounds& bounds,
                                         int count) {
  std::vector<DesignVector> starts;
  auto at_fraction = [&](double frac, bool flip_magnetics) {
    DesignVector d;
    for (int i = 0; i < DesignVector::kCount; ++i) {
      double f = frac;
      // Anti-correlated magnetic loading explores the thin-gap/low-flux and
      // wide-gap/high-flux corners the plain diagonal ladder never visits.
      if (flip_magnetics && (i == DesignVector::kAirgapLength ||
                             i == DesignVector::kAirgapFluxDensity ||
                             i == DesignVector::kEndRingCrossSection)) {
        f = 1.0 - frac;
      }
      d[i] = bounds.lower[i] + f * (bounds.upper[i] - bounds.lower[i]);
    }
    return d.canonical_for(spec);
  };

  // First five: the documented diagonal ladder at 0.3/0.4/0.5/0.6/0.7 of each
  // range.  Further starts interleave anti-correlated points.
  const int base = std::min(count, 5);
  for (int k = 0; k < base; ++k) {
    const double frac =
        base <= 1 ? 0.5 : 0.3 + 0.4 * static_cast<double>(k) / static_cast<double>(base - 1);
    starts.push_back(at_fraction(frac, false));
  }
  for (int k = base; k < count; ++k) {
    const int j = k - base;
    const double frac = 0.35 + 0.1 * static_cast<double>(j % 4);
    starts.push_back(at_fraction(frac, true));
  }
  return starts;
}

namespace {

// Bounds shifted inward by a relative margin; the search optimises against
// these while final feasibility is judged on the originals.
std::vector<ConstraintSpec> tightened(const std::vector<ConstraintSpec>& constraints,
                                      double margin) {
  std::vector<ConstraintSpec> out = constraints;
  for (auto& c : out) {
    const double shift = margin * std::abs(c.bound);
    c.bound += c.sense == Sense::AtLeast ? shift : -shift;
  }
  return out;
}

}  // namespace

OptimizeResult optimize_design(const MotorSpec& spec,
                               const std::vector<ConstraintSpec>& constraints,
                               const MaterialCatalog& materials,
                               const ModelParams& params,
                               const OptimizeOptions& options,
                               const std::optional<VariableBounds>& bounds_opt) {
  const VariableBounds bounds = bounds_opt ? *bounds_opt : default_bounds(spec);
  std::vector<double> lower(bounds.lower.begin(), bounds.lower.end());
  std::vector<double> upper(bounds.upper.begin(), bounds.upper.end());
  const std::vector<ConstraintSpec> search_constraints =
      tightened(constraints, options.search_margin);

  SearchOptions search = options.search;
  search.frozen.resize(DesignVector::kCount, false);
  if (spec.rotor_slot_shape == SlotShape::Round) {
    // Round bars have one free dimension; the depth coordinate is tied to the
    // width by canonicalisation, so perturbing it would be a no-op.
    search.frozen[DesignVector::kRotorSlotDepth] = true;
  }

  std::vector<DesignVector> starts =
      default_starts(spec, bounds, std::max(1, options.multi_starts));
  for (const DesignVector& d : options.extra_starts) {
    starts.push_back(bounds.clamp(d).canonical_for(spec));
  }

  OptimizeResult out;
  out.evaluations = 0;

  if (options.prescan_per_axis > 1 && options.prescan_keep > 0) {
    const Objective f0 = design_objective(spec, materials, search_constraints, params,
                                          options.objective);
    const int n_axis = options.prescan_per_axis;
    // Five coarse axes: the three dominant sizing variables individually, plus
    // a common scale for the slot dimensions (copper area) and one for the
    // yoke depths (iron section).  Sweeping the copper/iron balance explicitly
    // keeps the descent from stalling in a one-sided loss split.
    const std::vector<std::vector<int>> axes = {
        {DesignVector::kStatorInnerDiameter},
        {DesignVector::kCoreLength},
        {DesignVector::kAirgapFluxDensity},
        {DesignVector::kStatorSlotWidth, DesignVector::kStatorSlotDepth,
         DesignVector::kRotorSlotWidth, DesignVector::kRotorSlotDepth},
        {DesignVector::kStatorYokeDepth, DesignVector::kRotorYokeDepth}};
    std::size_t total = 1;
    for (std::size_t a = 0; a < axes.size(); ++a) total *= static_cast<std::size_t>(n_axis);
    std::vector<double> values(total);
    std::vector<DesignVector> points(total);
    parallel_for(
        total,
        [&](std::size_t flat) {
          std::size_t rem = flat;
          DesignVector d;
          for (int i = 0; i < DesignVector::kCount; ++i) {
            d[i] = bounds.lower[i] + 0.5 * (bounds.upper[i] - bounds.lower[i]);
          }
          for (std::size_t a = axes.size(); a-- > 0;) {
            const int idx = static_cast<int>(rem % n_axis);
            rem /= n_axis;
            const double frac = static_cast<double>(idx) / static_cast<double>(n_axis - 1);
            for (int var : axes[a]) {
              d[var] = bounds.lower[var] + (bounds.upper[var] - bounds.lower[var]) * frac;
            }
          }
          d = d.canonical_for(spec);
          points[flat] = d;
          values[flat] = f0(std::vector<double>(d.v.begin(), d.v.end()));
        },
        options.parallel_starts);
    out.evaluations += static_cast<int>(total);

    std::vector<std::size_t> order(total);
    for (std::size_t i = 0; i < total; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    for (int k = 0; k < options.prescan_keep && k < static_cast<int>(total); ++k) {
      starts.push_back(points[order[static_cast<std::size_t>(k)]]);
    }
  }

  for (int round = 0; round <= options.max_penalty_rounds; ++round) {
    ObjectiveConfig oc = options.objective;
    oc.penalty_weight = options.objective.penalty_weight * std::pow(2.0, round);
    const Objective f = design_objective(spec, materials, search_constraints, params, oc);

    std::vector<SearchResult> results(starts.size());
    parallel_for(
        starts.size(),
        [&](std::size_t i) {
          std::vector<double> x0(starts[i].v.begin(), starts[i].v.end());
          SearchResult r = hooke_jeeves(f, std::move(x0), lower, upper, search);
          // Fresh-step polish: restart the sweep from the incumbent so a
          // prematurely collapsed step size cannot freeze a poor point.
          for (int k = 0; k < options.restarts; ++k) {
            SearchResult again = hooke_jeeves(f, r.best_x, lower, upper, search);
            again.evaluations += r.evaluations;
            if (again.best_value >= r.best_value - 1e-12) {
              r.evaluations = again.evaluations;
              break;
            }
            r = std::move(again);
          }
          results[i] = std::move(r);
        },
        options.parallel_starts);

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
      if (results[i].best_value < results[best].best_value) best = i;
    }
    for (const auto& r : results) out.evaluations += r.evaluations;

    DesignVector d;
    for (int i = 0; i < DesignVector::kCount; ++i) {
      d[i] = results[best].best_x[static_cast<std::size_t>(i)];
    }
    d = d.canonical_for(spec);
    const EvalResult eval = evaluate_design(spec, d, materials, params);

    out.best_design = d;
    out.objective_value = results[best].best_value;
    out.penalty_rounds = round;
    out.penalty_weight = oc.penalty_weight;
    out.winning_start = static_cast<int>(best);
    out.start_results = std::move(results);
    if (eval.ok()) {
      out.report = *eval.report;
      out.constraint_report = evaluate_constraints(*eval.report, constraints, params);
      if (out.constraint_report.feasible) break;
    } else {
      out.report = {};
      out.constraint_report = infeasible_constraint_report(constraints, params);
    }
    // Infeasible incumbent: double the penalty and rerun every start, unless
    // the round budget is spent — then the flagged incumbent stands.
  }
  return out;
}

}  // namespace evim
