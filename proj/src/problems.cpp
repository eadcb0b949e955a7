// Copyright 2026 the parapt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "parapt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace parapt {

using std::numbers::pi;

double SeparableField::operator()(double t, double x1, double x2) const {
  double s = 0.0;
  for (const auto& term : terms) s += term.temporal(t) * term.spatial(x1, x2);
  return s;
}

bool SeparableField::has_derivatives() const {
  return std::all_of(terms.begin(), terms.end(), [](const SeparableTerm& term) {
    return static_cast<bool>(term.temporal_derivative) && static_cast<bool>(term.laplacian);
  });
}

double SeparableField::time_derivative(double t, double x1, double x2) const {
  double s = 0.0;
  for (const auto& term : terms) s += term.temporal_derivative(t) * term.spatial(x1, x2);
  return s;
}

double SeparableField::laplacian(double t, double x1, double x2) const {
  double s = 0.0;
  for (const auto& term : terms) s += term.temporal(t) * term.laplacian(x1, x2);
  return s;
}

std::vector<RhsTerm> SeparableField::discretize(const StructuredTriMesh& mesh) const {
  std::vector<RhsTerm> out;
  out.reserve(terms.size());
  for (const auto& term : terms) out.push_back({term.temporal, interpolate(mesh, term.spatial)});
  return out;
}

TimeFunction SeparableField::interpolant(const StructuredTriMesh& mesh) const {
  auto discrete = discretize(mesh);
  const std::size_t n = mesh.n_interior();
  return [discrete = std::move(discrete), n](double t) {
    SpatialField v(n, 0.0);
    for (const auto& term : discrete) kernels::axpy(term.temporal(t), term.spatial, v);
    return v;
  };
}

double g1(double x1, double x2) { return std::sin(pi * x1) * std::sin(pi * x2); }

std::vector<double> find_level_crossings(const std::function<double(double)>& f, double lo,
                                         double hi, std::span<const double> levels,
                                         std::size_t samples) {
  std::vector<double> out;
  for (double level : levels) {
    auto g = [&](double t) { return f(t) - level; };
    double t_prev = lo;
    double g_prev = g(lo);
    for (std::size_t s = 1; s <= samples; ++s) {
      const double t = lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(samples);
      const double gt = g(t);
      if (g_prev * gt < 0.0) {
        double a = t_prev, b = t, ga = g_prev;
        for (int it = 0; it < 200 && b - a > 0.0; ++it) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          const double gm = g(mid);
          if (ga * gm <= 0.0) {
            b = mid;
          } else {
            a = mid;
            ga = gm;
          }
        }
        out.push_back(0.5 * (a + b));
      } else if (gt == 0.0 && s < samples) {
        out.push_back(t);
      }
      t_prev = t;
      g_prev = gt;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

double laplacian_g1(double x1, double x2) { return -2.0 * pi * pi * g1(x1, x2); }

SeparableTerm g1_term(std::function<double(double)> theta, std::function<double(double)> dtheta,
                      std::vector<double> kinks = {}) {
  return {TemporalFunction::smooth(std::move(theta), std::move(kinks)), g1, std::move(dtheta),
          laplacian_g1};
}

}  // namespace

ProblemSpec example1(std::optional<double> alpha_override) {
  const double T = 0.1;
  const double a = -std::sqrt(5.0);
  const double alpha = alpha_override.value_or(std::pow(pi, -4.0));
  const double lam = a * pi * pi;
  const double lower = -25.0;
  const double upper = -1.0;

  ProblemSpec p;
  p.name = "example1";
  p.horizon = T;
  p.alpha = alpha;
  p.bounds = AdmissibleSet({lower}, {upper});
  p.g = {g1};

  // Unclamped optimal argument -(1/alpha) <g1, p(t)> with <g1, g1> = 1/4.
  auto z = [=](double t) { return -(std::exp(lam * t) - std::exp(lam * T)) / (4.0 * alpha); };
  const double bounds_arr[2] = {lower, upper};
  const std::vector<double> kinks = find_level_crossings(z, 0.0, T, bounds_arr);
  auto u_bar = [=](double t) { return std::max(lower, std::min(z(t), upper)); };

  // g0 = -pi^4 w_a - u(t) g1
  p.g0.terms.push_back(g1_term([=](double t) { return -std::pow(pi, 4) * std::exp(lam * t); },
                               [=](double t) { return -std::pow(pi, 4) * lam * std::exp(lam * t); }));
  p.g0.terms.push_back({TemporalFunction::smooth([=](double t) { return -u_bar(t); }, kinks), g1});

  const double c_state = -pi * pi / (2.0 + a);
  p.y0 = [=](double x1, double x2) { return c_state * g1(x1, x2); };

  const double c_track = (a * a - 5.0) / (2.0 + a) * pi * pi;
  const double c_tail = 2.0 * pi * pi * std::exp(lam * T);
  p.y_d.terms.push_back(g1_term([=](double t) { return c_track * std::exp(lam * t) + c_tail; },
                                [=](double t) { return c_track * lam * std::exp(lam * t); }));

  ExactSolution ex;
  ex.control.dim = 1;
  ex.control.eval = [=](std::size_t, double t) { return u_bar(t); };
  ex.control.breakpoints = kinks;
  ex.state.terms.push_back(g1_term([=](double t) { return c_state * std::exp(lam * t); },
                                   [=](double t) { return c_state * lam * std::exp(lam * t); }));
  ex.adjoint.terms.push_back(g1_term([=](double t) { return std::exp(lam * t) - std::exp(lam * T); },
                                     [=](double t) { return lam * std::exp(lam * t); }));
  p.exact = std::move(ex);
  return p;
}

ProblemSpec example2(std::optional<double> alpha_override) {
  const double T = 0.5;
  const double a = 2.0;
  const double alpha = alpha_override.value_or(1.0);
  const double lower = 0.2;
  const double upper = 0.4;
  const double omega = 2.0 * pi * a / T;
  const double cT = std::cos(2.0 * pi * a);

  ProblemSpec p;
  p.name = "example2";
  p.horizon = T;
  p.alpha = alpha;
  p.bounds = AdmissibleSet({lower}, {upper});
  p.g = {g1};

  auto z = [=](double t) { return (-std::cos(omega * t) + cT) / (4.0 * alpha); };
  const double bounds_arr[2] = {lower, upper};
  const std::vector<double> kinks = find_level_crossings(z, 0.0, T, bounds_arr);
  auto u_bar = [=](double t) { return std::max(lower, std::min(z(t), upper)); };

  // g0 = 2 pi g1 (-(a/T) sin + pi cos) - u g1
  p.g0.terms.push_back(g1_term(
      [=](double t) { return 2.0 * pi * (-(a / T) * std::sin(omega * t) + pi * std::cos(omega * t)); },
      [=](double t) {
        return 2.0 * pi * omega * (-(a / T) * std::cos(omega * t) - pi * std::sin(omega * t));
      }));
  p.g0.terms.push_back({TemporalFunction::smooth([=](double t) { return -u_bar(t); }, kinks), g1});

  p.y0 = g1;

  p.y_d.terms.push_back(g1_term(
      [=](double t) {
        return std::cos(omega * t) * (1.0 - 2.0 * pi * pi) - omega * std::sin(omega * t) +
               2.0 * pi * pi * cT;
      },
      [=](double t) {
        return -omega * std::sin(omega * t) * (1.0 - 2.0 * pi * pi) -
               omega * omega * std::cos(omega * t);
      }));

  ExactSolution ex;
  ex.control.dim = 1;
  ex.control.eval = [=](std::size_t, double t) { return u_bar(t); };
  ex.control.breakpoints = kinks;
  ex.state.terms.push_back(g1_term([=](double t) { return std::cos(omega * t); },
                                   [=](double t) { return -omega * std::sin(omega * t); }));
  ex.adjoint.terms.push_back(g1_term([=](double t) { return std::cos(omega * t) - cT; },
                                     [=](double t) { return -omega * std::sin(omega * t); }));
  p.exact = std::move(ex);
  return p;
}

ProblemSpec manufactured_smooth(double horizon, int q) {
  if (!(horizon > 0.0)) throw std::invalid_argument("manufactured_smooth: horizon must be positive");
  if (q < 1) throw std::invalid_argument("manufactured_smooth: mode must be >= 1");
  const double T = horizon;
  const double qpi = q * pi;
  const double lam = 2.0 * qpi * qpi;
  auto shape = [=](double x1, double x2) { return std::sin(qpi * x1) * std::sin(qpi * x2); };
  auto lap_shape = [=](double x1, double x2) { return -lam * shape(x1, x2); };
  auto term = [&](std::function<double(double)> th, std::function<double(double)> dth) {
    return SeparableTerm{TemporalFunction::smooth(std::move(th)), shape, std::move(dth), lap_shape};
  };

  ProblemSpec p;
  p.name = "manufactured";
  p.horizon = T;
  p.alpha = 1.0;
  p.y0 = shape;
  // f = y_t - Laplace y = (lam - 1) e^{-t} shape
  p.g0.terms.push_back(term([=](double t) { return (lam - 1.0) * std::exp(-t); },
                            [=](double t) { return -(lam - 1.0) * std::exp(-t); }));
  // h = -p_t - Laplace p = e^{-t} + lam (e^{-t} - e^{-T}); y_d = y - h
  p.y_d.terms.push_back(term([=](double t) { return -lam * (std::exp(-t) - std::exp(-T)); },
                             [=](double t) { return lam * std::exp(-t); }));

  ExactSolution ex;
  ex.control.dim = 0;
  ex.control.eval = [](std::size_t, double) { return 0.0; };
  ex.state.terms.push_back(term([](double t) { return std::exp(-t); },
                                [](double t) { return -std::exp(-t); }));
  ex.adjoint.terms.push_back(term([=](double t) { return std::exp(-t) - std::exp(-T); },
                                  [](double t) { return -std::exp(-t); }));
  p.exact = std::move(ex);
  return p;
}

ProblemSpec problem_by_name(const std::string& name, std::optional<double> alpha) {
  if (name == "1" || name == "example1") return example1(alpha);
  if (name == "2" || name == "example2") return example2(alpha);
  if (name == "manufactured") {
    ProblemSpec p = manufactured_smooth();
    if (alpha) p.alpha = *alpha;
    return p;
  }
  throw std::invalid_argument("unknown problem '" + name + "' (expected 1, 2 or manufactured)");
}

}  // namespace parapt
