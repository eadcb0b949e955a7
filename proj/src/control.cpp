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

#include "parapt/control.hpp"

#include <algorithm>
#include <cmath>

#include "parapt/quadrature.hpp"

namespace parapt {

AdmissibleSet::AdmissibleSet(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size())
    throw std::invalid_argument("admissible set: bound vectors differ in length");
  for (std::size_t i = 0; i < lower_.size(); ++i)
    if (!(lower_[i] < upper_[i]))
      throw std::invalid_argument("admissible set: lower bound must be below upper bound");
}

double AdmissibleSet::project(std::size_t i, double z) const {
  return std::max(lower_[i], std::min(z, upper_[i]));
}

namespace {

PieceTag tag_piece(double v0, double v1, double a, double b) {
  if (v0 == a && v1 == a) return PieceTag::kLowerActive;
  if (v0 == b && v1 == b) return PieceTag::kUpperActive;
  return PieceTag::kInactive;
}

}  // namespace

ClampedLinearControl ClampedLinearControl::constant(const Vector& c, const TimeGrid& grid,
                                                    const AdmissibleSet& bounds) {
  if (c.size() != bounds.dim()) throw std::invalid_argument("constant control: dimension mismatch");
  std::vector<PiecewiseLinearFunction> v;
  for (double ci : c) v.push_back({grid.nodes(), Vector(grid.nodes().size(), ci)});
  return clamp_control(v, bounds);
}

std::vector<PiecewiseLinearFunction> apply_B_adjoint(const PiecewiseLinearField& p,
                                                     std::span<const SpatialField> g,
                                                     const SparseMatrix& mass) {
  std::vector<PiecewiseLinearFunction> out;
  out.reserve(g.size());
  for (const auto& gi : g) {
    if (gi.size() != mass.rows()) throw std::invalid_argument("apply_B_adjoint: g_i does not match the mesh");
    const SpatialField mg = mass.matvec(gi);
    PiecewiseLinearFunction f{p.knots, Vector(p.values.size())};
    for (std::size_t m = 0; m < p.values.size(); ++m) {
      if (p.values[m].size() != mg.size()) throw std::invalid_argument("apply_B_adjoint: adjoint does not match the mesh");
      f.values[m] = kernels::dot(mg, p.values[m]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

ClampedLinearControl clamp_control(std::span<const PiecewiseLinearFunction> v,
                                   const AdmissibleSet& bounds) {
  if (v.size() != bounds.dim()) throw std::invalid_argument("clamp_control: dimension mismatch");
  ClampedLinearControl u;
  u.components.reserve(v.size());
  u.tags.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& in = v[i];
    const double a = bounds.lower(i);
    const double b = bounds.upper(i);
    const double horizon = in.knots.back() - in.knots.front();
    const double dedup = 1e-13 * horizon;

    PiecewiseLinearFunction out;
    out.knots.push_back(in.knots.front());
    out.values.push_back(bounds.project(i, in.values.front()));
    for (std::size_t j = 0; j + 1 < in.knots.size(); ++j) {
      const double t0 = in.knots[j];
      const double t1 = in.knots[j + 1];
      const double v0 = in.values[j];
      const double v1 = in.values[j + 1];
      const double scale = std::max({std::fabs(v0), std::fabs(v1), std::fabs(a), std::fabs(b), 1.0});
      double crossings[2];
      double levels[2];
      int n_cross = 0;
      if (std::fabs(v1 - v0) >= 1e-14 * scale) {
        for (double bound : {a, b}) {
          if ((v0 - bound) * (v1 - bound) < 0.0) {
            const double s = t0 + (bound - v0) * (t1 - t0) / (v1 - v0);
            if (s - t0 > dedup && t1 - s > dedup) {
              crossings[n_cross] = s;
              levels[n_cross] = bound;
              ++n_cross;
            }
          }
        }
      }
      if (n_cross == 2 && crossings[1] < crossings[0]) {
        std::swap(crossings[0], crossings[1]);
        std::swap(levels[0], levels[1]);
      }
      for (int c = 0; c < n_cross; ++c) {
        out.knots.push_back(crossings[c]);
        out.values.push_back(levels[c]);
      }
      out.knots.push_back(t1);
      out.values.push_back(bounds.project(i, v1));
    }
    std::vector<PieceTag> tags;
    tags.reserve(out.knots.size() - 1);
    for (std::size_t j = 0; j + 1 < out.knots.size(); ++j)
      tags.push_back(tag_piece(out.values[j], out.values[j + 1], a, b));
    u.components.push_back(std::move(out));
    u.tags.push_back(std::move(tags));
  }
  return u;
}

std::vector<RhsTerm> control_to_rhs_terms(const ClampedLinearControl& u,
                                          std::span<const SpatialField> g) {
  if (u.dim() != g.size()) throw std::invalid_argument("control_to_rhs_terms: dimension mismatch");
  std::vector<RhsTerm> terms;
  terms.reserve(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) {
    const auto& c = u.components[i];
    const bool constant =
        std::all_of(c.values.begin(), c.values.end(), [&](double x) { return x == c.values.front(); });
    if (constant && c.values.front() == 0.0) continue;
    terms.push_back({constant ? TemporalFunction::constant(c.values.front())
                              : TemporalFunction::piecewise_linear(c),
                     g[i]});
  }
  return terms;
}

ControlReference as_reference(const ClampedLinearControl& u) {
  ControlReference r;
  r.dim = u.dim();
  r.eval = [u](std::size_t i, double t) { return u.components[i](t); };
  for (const auto& c : u.components) r.breakpoints.insert(r.breakpoints.end(), c.knots.begin(), c.knots.end());
  return r;
}

ControlNorms control_norms(const ClampedLinearControl& u, const ControlReference& v, double horizon) {
  if (u.dim() != v.dim) throw std::invalid_argument("control_norms: dimension mismatch");
  std::vector<double> pts{0.0, horizon};
  for (const auto& c : u.components) pts.insert(pts.end(), c.knots.begin(), c.knots.end());
  pts.insert(pts.end(), v.breakpoints.begin(), v.breakpoints.end());
  std::sort(pts.begin(), pts.end());
  std::vector<double> merged;
  for (double p : pts) {
    if (p < 0.0 || p > horizon) continue;
    if (merged.empty() || p - merged.back() > 1e-13 * horizon) merged.push_back(p);
  }
  merged.back() = horizon;

  auto diff = [&](double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) {
      const double d = u.components[i](t) - v.eval(i, t);
      s += d * d;
    }
    return std::sqrt(s);
  };

  // For one component |u - v| has a kink wherever u - v changes sign; the L1
  // integral is split there (sign changes between samples, then bisection).
  auto signed_diff = [&](double t) { return u.components[0](t) - v.eval(0, t); };

  const GaussRule& rule = gauss_legendre(kControlGaussPoints);
  ControlNorms n;
  double l2_sq = 0.0;
  constexpr int kSamples = 100;
  std::vector<double> cuts;
  for (std::size_t j = 0; j + 1 < merged.size(); ++j) {
    const double a = merged[j];
    const double b = merged[j + 1];
    l2_sq += rule.integrate([&](double t) { const double d = diff(t); return d * d; }, a, b);
    cuts.assign(1, a);
    double t_prev = a, d_prev = u.dim() == 1 ? signed_diff(a) : 0.0;
    for (int s = 1; s <= kSamples; ++s) {
      const double t = a + (b - a) * static_cast<double>(s) / kSamples;
      n.linf = std::max(n.linf, diff(t));
      if (u.dim() != 1) continue;
      const double d = signed_diff(t);
      if ((d_prev < 0.0 && d > 0.0) || (d_prev > 0.0 && d < 0.0)) {
        double lo = t_prev, hi = t;
        for (int it = 0; it < 60 && hi - lo > 1e-15 * horizon; ++it) {
          const double mid = 0.5 * (lo + hi);
          if ((signed_diff(mid) < 0.0) == (d_prev < 0.0)) lo = mid;
          else hi = mid;
        }
        cuts.push_back(0.5 * (lo + hi));
      }
      t_prev = t;
      d_prev = d;
    }
    n.linf = std::max(n.linf, diff(a));
    cuts.push_back(b);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) n.l1 += rule.integrate(diff, cuts[c], cuts[c + 1]);
  }
  n.l2 = std::sqrt(l2_sq);
  return n;
}

double control_l2_squared(const ClampedLinearControl& u) {
  double s = 0.0;
  for (const auto& c : u.components) {
    for (std::size_t j = 0; j + 1 < c.knots.size(); ++j) {
      const double v0 = c.values[j];
      const double v1 = c.values[j + 1];
      s += (c.knots[j + 1] - c.knots[j]) * (v0 * v0 + v0 * v1 + v1 * v1) / 3.0;
    }
  }
  return s;
}

double total_variation(const PiecewiseLinearFunction& v) {
  double tv = 0.0;
  for (std::size_t j = 0; j + 1 < v.values.size(); ++j) tv += std::fabs(v.values[j + 1] - v.values[j]);
  return tv;
}

}  // namespace parapt
