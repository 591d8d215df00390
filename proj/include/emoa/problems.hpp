#pragma once

#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "emoa/dominance.hpp"
#include "emoa/problem.hpp"

namespace emoa {

namespace detail {

inline void check_unit_box(const Genome& x) {
  for (double v : x) {
    if (v < 0.0 || v > 1.0) {
      throw std::logic_error("zdt: genome coordinate outside [0, 1]");
    }
  }
  if (x.size() < 2) {
    throw std::logic_error("zdt: genome must have at least 2 coordinates");
  }
}

inline double zdt_g(const Genome& x) {
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += x[i];
  return 1.0 + 9.0 * sum / static_cast<double>(x.size() - 1);
}

inline std::vector<ObjectiveVector> linspace_front(
    std::size_t samples, const std::function<double(double)>& f2_of_t) {
  std::vector<ObjectiveVector> front;
  front.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t =
        static_cast<double>(k) / static_cast<double>(samples - 1);
    front.push_back({t, f2_of_t(t)});
  }
  return front;
}

}  // namespace detail

inline ObjectiveVector zdt1(const Genome& x) {
  detail::check_unit_box(x);
  const double f1 = x[0];
  const double g = detail::zdt_g(x);
  return {f1, g * (1.0 - std::sqrt(f1 / g))};
}

inline ObjectiveVector zdt2(const Genome& x) {
  detail::check_unit_box(x);
  const double f1 = x[0];
  const double g = detail::zdt_g(x);
  const double ratio = f1 / g;
  return {f1, g * (1.0 - ratio * ratio)};
}

inline ObjectiveVector zdt3(const Genome& x) {
  detail::check_unit_box(x);
  const double f1 = x[0];
  const double g = detail::zdt_g(x);
  const double ratio = f1 / g;
  return {f1, g * (1.0 - std::sqrt(ratio) -
                   ratio * std::sin(10.0 * std::numbers::pi * f1))};
}

inline Problem make_zdt1(std::size_t dimension = 30) {
  Problem p;
  p.name = "zdt1";
  p.dimension = dimension;
  p.bounds.assign(dimension, Interval{0.0, 1.0});
  p.objectives = [](const Genome& x) { return zdt1(x); };
  p.front_sampler = [](std::size_t samples) {
    return detail::linspace_front(
        samples, [](double t) { return 1.0 - std::sqrt(t); });
  };
  p.hypervolume_reference = {1.1, 11.0};
  p.default_generations = 150;
  return p;
}

inline Problem make_zdt2(std::size_t dimension = 30) {
  Problem p;
  p.name = "zdt2";
  p.dimension = dimension;
  p.bounds.assign(dimension, Interval{0.0, 1.0});
  p.objectives = [](const Genome& x) { return zdt2(x); };
  p.front_sampler = [](std::size_t samples) {
    return detail::linspace_front(samples,
                                  [](double t) { return 1.0 - t * t; });
  };
  p.hypervolume_reference = {1.1, 11.0};
  p.default_generations = 150;
  return p;
}

/// ZDT3's front is disconnected; it is realized by densely sampling the g=1
/// curve and keeping the non-dominated subset, so no segment endpoints are
/// hardcoded.
inline Problem make_zdt3(std::size_t dimension = 30) {
  Problem p;
  p.name = "zdt3";
  p.dimension = dimension;
  p.bounds.assign(dimension, Interval{0.0, 1.0});
  p.objectives = [](const Genome& x) { return zdt3(x); };
  p.front_sampler = [](std::size_t samples) {
    return non_dominated_filter(detail::linspace_front(samples, [](double t) {
      return 1.0 - std::sqrt(t) - t * std::sin(10.0 * std::numbers::pi * t);
    }));
  };
  p.hypervolume_reference = {1.1, 11.0};
  p.default_generations = 150;
  return p;
}

/// Two-variable constrained benchmark: minimize (x1, (1+x2)/x1) on
/// x1 in [0.1, 1], x2 in [0, 5] subject to x2 + 9 x1 >= 6 and
/// -x2 + 9 x1 >= 1, wired through the scaled-violation aggregator.
inline Problem make_constr(std::vector<double> scales = {1.0, 1.0}) {
  if (scales.size() != 2) {
    throw std::invalid_argument("constr: exactly two constraint scales");
  }
  Problem p;
  p.name = "constr";
  p.dimension = 2;
  p.bounds = {Interval{0.1, 1.0}, Interval{0.0, 5.0}};
  p.objectives = [](const Genome& x) {
    return ObjectiveVector{x[0], (1.0 + x[1]) / x[0]};
  };
  p.constraints = [](const Genome& x) {
    const double c1 = x[1] + 9.0 * x[0] - 6.0;
    const double c2 = -x[1] + 9.0 * x[0] - 1.0;
    return std::vector<double>{c1 < 0.0 ? -c1 : 0.0, c2 < 0.0 ? -c2 : 0.0};
  };
  p.infeasibility = InfeasibilityAggregator{std::move(scales)};
  // Feasible minimum of x2 for given x1 is max(0, 6 - 9 x1), attainable for
  // x1 >= 7/18; both branches of f2 decrease in x1, so the whole curve is
  // the constrained front.
  p.front_sampler = [](std::size_t samples) {
    const double lo = 7.0 / 18.0;
    std::vector<ObjectiveVector> front;
    front.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
      const double f1 =
          lo + (1.0 - lo) * static_cast<double>(k) /
                   static_cast<double>(samples - 1);
      const double f2 = f1 < 2.0 / 3.0 ? 7.0 / f1 - 9.0 : 1.0 / f1;
      front.push_back({f1, f2});
    }
    return front;
  };
  p.hypervolume_reference = {1.1, 70.0};
  p.default_generations = 250;
  return p;
}

/// Samples the problem's analytic Pareto front in objective space.
inline std::vector<ObjectiveVector> analytic_front(const Problem& problem,
                                                   std::size_t samples) {
  if (!problem.front_sampler) {
    throw std::invalid_argument("problem '" + problem.name +
                                "' has no analytic front");
  }
  if (samples < 2) {
    throw std::invalid_argument("analytic front needs at least 2 samples");
  }
  return problem.front_sampler(samples);
}

inline std::vector<std::string> problem_names() {
  return {"zdt1", "zdt2", "zdt3", "constr"};
}

/// Looks a benchmark up by its CLI name. `zdt_dimension` applies to the ZDT
/// family; `constr_scales` to the constrained demo.
inline Problem problem_by_name(std::string_view name,
                               std::size_t zdt_dimension = 30,
                               std::vector<double> constr_scales = {1.0,
                                                                    1.0}) {
  if (name == "zdt1") return make_zdt1(zdt_dimension);
  if (name == "zdt2") return make_zdt2(zdt_dimension);
  if (name == "zdt3") return make_zdt3(zdt_dimension);
  if (name == "constr") return make_constr(std::move(constr_scales));
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

}  // namespace emoa
