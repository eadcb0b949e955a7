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

#include "parapt/temporal.hpp"

#include <algorithm>
#include <stdexcept>
#include <type_traits>

#include "parapt/quadrature.hpp"

namespace parapt {

std::size_t PiecewiseLinearFunction::piece_of(double t) const {
  const auto it = std::upper_bound(knots.begin(), knots.end(), t);
  if (it == knots.begin()) return 0;
  const auto idx = static_cast<std::size_t>(it - knots.begin()) - 1;
  return std::min(idx, knots.size() - 2);
}

double PiecewiseLinearFunction::operator()(double t) const {
  if (knots.size() == 1) return values.front();
  const std::size_t p = piece_of(t);
  const double s = (t - knots[p]) / (knots[p + 1] - knots[p]);
  return values[p] + s * (values[p + 1] - values[p]);
}

double PiecewiseLinearFunction::integrate_against_linear(double a, double b, double w0,
                                                         double w1) const {
  if (!(b > a)) return 0.0;
  auto weight = [&](double t) { return w0 + (w1 - w0) * (t - a) / (b - a); };
  // Both factors are affine on each sub-piece, so Simpson's rule is exact.
  auto simpson = [&](double l, double r) {
    const double m = 0.5 * (l + r);
    return (r - l) / 6.0 *
           ((*this)(l)*weight(l) + 4.0 * (*this)(m)*weight(m) + (*this)(r)*weight(r));
  };
  double sum = 0.0;
  double left = a;
  auto it = std::upper_bound(knots.begin(), knots.end(), a);
  for (; it != knots.end() && *it < b; ++it) {
    sum += simpson(left, *it);
    left = *it;
  }
  sum += simpson(left, b);
  return sum;
}

TemporalFunction TemporalFunction::smooth(std::function<double(double)> f,
                                          std::vector<double> kinks) {
  std::sort(kinks.begin(), kinks.end());
  return TemporalFunction(Impl(Smooth{std::move(f), std::move(kinks)}));
}

double TemporalFunction::operator()(double t) const {
  return std::visit(
      [t](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          return v;
        } else if constexpr (std::is_same_v<V, Smooth>) {
          return v.f(t);
        } else {
          return v(t);
        }
      },
      impl_);
}

double TemporalFunction::integrate_against_linear(double a, double b, double w0, double w1) const {
  if (!(b > a)) return 0.0;
  return std::visit(
      [&](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          return v * 0.5 * (w0 + w1) * (b - a);
        } else if constexpr (std::is_same_v<V, Smooth>) {
          const GaussRule& rule = gauss_legendre(kTimeGaussPoints);
          auto integrand = [&](double t) {
            return v.f(t) * (w0 + (w1 - w0) * (t - a) / (b - a));
          };
          double sum = 0.0;
          double left = a;
          for (double kink : v.kinks) {
            if (kink <= left || kink >= b) continue;
            sum += rule.integrate(integrand, left, kink);
            left = kink;
          }
          return sum + rule.integrate(integrand, left, b);
        } else {
          return v.integrate_against_linear(a, b, w0, w1);
        }
      },
      impl_);
}

HatMoments hat_moments(const TemporalFunction& f, const TimeGrid& grid) {
  const std::size_t M = grid.intervals();
  HatMoments out{std::vector<double>(M), std::vector<double>(M)};
  for (std::size_t m = 0; m < M; ++m) {
    const double a = grid.node(m);
    const double b = grid.node(m + 1);
    out.down[m] = f.integrate_against_linear(a, b, 1.0, 0.0);
    out.up[m] = f.integrate_against_linear(a, b, 0.0, 1.0);
  }
  return out;
}

}  // namespace parapt
