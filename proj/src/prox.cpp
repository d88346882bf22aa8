// Copyright 2026 The scsdg Authors
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

#include "scsdg/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scsdg/error.hpp"

namespace scsdg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckTau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    ThrowInvalidParameter("prox step must be positive and finite");
  }
}

void CheckSizes(std::size_t expected, std::span<const double> v,
                std::span<double> out) {
  if (v.size() != expected) ThrowDimensionMismatch("prox input", expected, v.size());
  if (out.size() != expected) {
    ThrowDimensionMismatch("prox output", expected, out.size());
  }
}

void CheckValueSize(std::size_t expected, std::span<const double> v) {
  if (v.size() != expected) ThrowDimensionMismatch("value input", expected, v.size());
}

// <c, a - b> without forming either inner product separately.
double LinearDifference(std::span<const double> c, std::span<const double> a,
                        std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += c[i] * (a[i] - b[i]);
  return sum;
}

// out <- v - tau * c
void ShiftInto(double tau, std::span<const double> c, std::span<const double> v,
               std::span<double> out) {
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - tau * c[i];
}

}  // namespace

const char* ToString(ConeKind kind) {
  switch (kind) {
    case ConeKind::kZero:
      return "zero";
    case ConeKind::kFree:
      return "free";
    case ConeKind::kNonneg:
      return "nonneg";
    case ConeKind::kNonpos:
      return "nonpos";
    case ConeKind::kSoc:
      return "soc";
  }
  return "?";
}

ConeKind ConeKindFromString(const std::string& name) {
  if (name == "zero") return ConeKind::kZero;
  if (name == "free") return ConeKind::kFree;
  if (name == "nonneg") return ConeKind::kNonneg;
  if (name == "nonpos") return ConeKind::kNonpos;
  if (name == "soc") return ConeKind::kSoc;
  throw ParseError(0, "unknown cone kind '" + name + "'");
}

ConeKind DualKind(ConeKind kind) {
  switch (kind) {
    case ConeKind::kZero:
      return ConeKind::kFree;
    case ConeKind::kFree:
      return ConeKind::kZero;
    default:
      return kind;
  }
}

void ValidateConePartition(std::span<const ConeDescriptor> cones,
                           std::size_t total) {
  std::size_t sum = 0;
  for (const ConeDescriptor& cone : cones) {
    if (cone.dim < 1) ThrowInvalidParameter("cone dimension must be >= 1");
    if (cone.kind == ConeKind::kSoc && cone.dim < 2) {
      ThrowInvalidParameter("second-order cone dimension must be >= 2");
    }
    sum += cone.dim;
  }
  if (sum != total) {
    ThrowInvalidParameter("cone dimensions sum to " + std::to_string(sum) +
                          ", expected " + std::to_string(total));
  }
}

void ProjectSocInto(std::span<const double> v, std::span<double> out) {
  const double t = v[0];
  double unorm_sq = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) unorm_sq += v[i] * v[i];
  const double unorm = std::sqrt(unorm_sq);
  if (unorm <= t) {
    std::copy(v.begin(), v.end(), out.begin());
  } else if (unorm <= -t) {
    std::fill(out.begin(), out.end(), 0.0);
  } else {
    const double scale = 0.5 * (t + unorm);
    const double ratio = scale / unorm;
    out[0] = scale;
    for (std::size_t i = 1; i < v.size(); ++i) out[i] = ratio * v[i];
  }
}

Vector ProjectSoc(std::span<const double> v) {
  if (v.size() < 2) ThrowInvalidParameter("second-order cone needs dim >= 2");
  Vector out(v.size());
  ProjectSocInto(v, out);
  return out;
}

void ProjectConeInto(std::span<const ConeDescriptor> cones,
                     std::span<const double> v, std::span<double> out) {
  std::size_t offset = 0;
  for (const ConeDescriptor& cone : cones) {
    auto in = v.subspan(offset, cone.dim);
    auto dst = out.subspan(offset, cone.dim);
    switch (cone.kind) {
      case ConeKind::kZero:
        std::fill(dst.begin(), dst.end(), 0.0);
        break;
      case ConeKind::kFree:
        std::copy(in.begin(), in.end(), dst.begin());
        break;
      case ConeKind::kNonneg:
        for (std::size_t i = 0; i < cone.dim; ++i) dst[i] = std::max(in[i], 0.0);
        break;
      case ConeKind::kNonpos:
        for (std::size_t i = 0; i < cone.dim; ++i) dst[i] = std::min(in[i], 0.0);
        break;
      case ConeKind::kSoc:
        ProjectSocInto(in, dst);
        break;
    }
    offset += cone.dim;
  }
}

bool InCone(std::span<const ConeDescriptor> cones, std::span<const double> v) {
  std::size_t offset = 0;
  for (const ConeDescriptor& cone : cones) {
    auto in = v.subspan(offset, cone.dim);
    offset += cone.dim;
    switch (cone.kind) {
      case ConeKind::kZero:
        for (double vi : in) {
          if (std::abs(vi) > kFeasibilityTolerance) return false;
        }
        break;
      case ConeKind::kFree:
        break;
      case ConeKind::kNonneg:
        for (double vi : in) {
          if (vi < -kFeasibilityTolerance) return false;
        }
        break;
      case ConeKind::kNonpos:
        for (double vi : in) {
          if (vi > kFeasibilityTolerance) return false;
        }
        break;
      case ConeKind::kSoc: {
        double unorm_sq = 0.0;
        for (std::size_t i = 1; i < in.size(); ++i) unorm_sq += in[i] * in[i];
        const double unorm = std::sqrt(unorm_sq);
        const double scale = std::max({1.0, std::abs(in[0]), unorm});
        if (unorm - in[0] > kFeasibilityTolerance * scale) return false;
        break;
      }
    }
  }
  return true;
}

Vector ProxLinear(double tau, std::span<const double> c,
                  std::span<const double> v) {
  return LinearFn(Vector(c.begin(), c.end())).Prox(tau, v);
}

Vector ProxLinearNonneg(double tau, std::span<const double> c,
                        std::span<const double> v) {
  return LinearPlusNonneg(Vector(c.begin(), c.end())).Prox(tau, v);
}

Vector ProxLinearDualCone(double tau, std::span<const double> b,
                          std::span<const ConeDescriptor> cones,
                          std::span<const double> v) {
  return LinearPlusDualCone(Vector(b.begin(), b.end()),
                            std::vector<ConeDescriptor>(cones.begin(), cones.end()))
      .Prox(tau, v);
}

LinearFn::LinearFn(Vector c) : c_(std::move(c)) {}

void LinearFn::ProxInto(double tau, std::span<const double> v,
                        std::span<double> out) const {
  CheckTau(tau);
  CheckSizes(c_.size(), v, out);
  ShiftInto(tau, c_, v, out);
}

double LinearFn::Value(std::span<const double> v) const {
  CheckValueSize(c_.size(), v);
  return kernels::omp::Dot(c_, v);
}

double LinearFn::ValueDifference(std::span<const double> a,
                                 std::span<const double> b) const {
  CheckValueSize(c_.size(), a);
  CheckValueSize(c_.size(), b);
  return LinearDifference(c_, a, b);
}

LinearPlusNonneg::LinearPlusNonneg(Vector c) : c_(std::move(c)) {}

void LinearPlusNonneg::ProxInto(double tau, std::span<const double> v,
                                std::span<double> out) const {
  CheckTau(tau);
  CheckSizes(c_.size(), v, out);
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(v[i] - tau * c_[i], 0.0);
  }
}

double LinearPlusNonneg::Value(std::span<const double> v) const {
  CheckValueSize(c_.size(), v);
  for (double vi : v) {
    if (vi < -kFeasibilityTolerance) return kInf;
  }
  return kernels::omp::Dot(c_, v);
}

double LinearPlusNonneg::ValueDifference(std::span<const double> a,
                                         std::span<const double> b) const {
  CheckValueSize(c_.size(), a);
  CheckValueSize(c_.size(), b);
  for (double ai : a) {
    if (ai < -kFeasibilityTolerance) return kInf;
  }
  return LinearDifference(c_, a, b);
}

LinearPlusCone::LinearPlusCone(Vector c, std::vector<ConeDescriptor> cones)
    : c_(std::move(c)), cones_(std::move(cones)) {
  ValidateConePartition(cones_, c_.size());
}

void LinearPlusCone::ProxInto(double tau, std::span<const double> v,
                              std::span<double> out) const {
  CheckTau(tau);
  CheckSizes(c_.size(), v, out);
  ShiftInto(tau, c_, v, out);
  ProjectConeInto(cones_, out, out);
}

double LinearPlusCone::Value(std::span<const double> v) const {
  CheckValueSize(c_.size(), v);
  if (!InCone(cones_, v)) return kInf;
  return kernels::omp::Dot(c_, v);
}

double LinearPlusCone::ValueDifference(std::span<const double> a,
                                       std::span<const double> b) const {
  CheckValueSize(c_.size(), a);
  CheckValueSize(c_.size(), b);
  if (!InCone(cones_, a)) return kInf;
  return LinearDifference(c_, a, b);
}

LinearPlusDualCone::LinearPlusDualCone(Vector b,
                                       std::vector<ConeDescriptor> cones)
    : b_(std::move(b)), cones_(std::move(cones)) {
  ValidateConePartition(cones_, b_.size());
  dual_cones_.reserve(cones_.size());
  for (const ConeDescriptor& cone : cones_) {
    dual_cones_.push_back({DualKind(cone.kind), cone.dim});
  }
}

void LinearPlusDualCone::ProxInto(double tau, std::span<const double> v,
                                  std::span<double> out) const {
  CheckTau(tau);
  CheckSizes(b_.size(), v, out);
  ShiftInto(tau, b_, v, out);
  ProjectConeInto(dual_cones_, out, out);
}

double LinearPlusDualCone::Value(std::span<const double> v) const {
  CheckValueSize(b_.size(), v);
  if (!InCone(dual_cones_, v)) return kInf;
  return kernels::omp::Dot(b_, v);
}

double LinearPlusDualCone::ValueDifference(std::span<const double> a,
                                           std::span<const double> b) const {
  CheckValueSize(b_.size(), a);
  CheckValueSize(b_.size(), b);
  if (!InCone(dual_cones_, a)) return kInf;
  return LinearDifference(b_, a, b);
}

}  // namespace scsdg
