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

// Proximable building blocks for linear and second-order cone programs:
// a linear term plus the indicator of a product of simple cones.

#ifndef SCSDG_PROX_HPP_
#define SCSDG_PROX_HPP_

#include <span>
#include <string>
#include <vector>

#include "scsdg/core.hpp"

namespace scsdg {

// Indicator membership tolerance used by Value().
inline constexpr double kFeasibilityTolerance = 1e-9;

enum class ConeKind {
  kZero,    // {0}
  kFree,    // R^d
  kNonneg,  // R^d_+
  kNonpos,  // R^d_-
  kSoc,     // {(t, u) : ||u|| <= t}, d >= 2
};

const char* ToString(ConeKind kind);
// "zero" | "free" | "nonneg" | "nonpos" | "soc"; throws kParse otherwise.
ConeKind ConeKindFromString(const std::string& name);
// Kind of the dual cone: {0} and R^d swap, the others are self-dual.
ConeKind DualKind(ConeKind kind);

struct ConeDescriptor {
  ConeKind kind = ConeKind::kFree;
  std::size_t dim = 1;

  bool operator==(const ConeDescriptor&) const = default;
};

// Throws kInvalidParameter unless every block is well formed and the
// dimensions add up to `total`.
void ValidateConePartition(std::span<const ConeDescriptor> cones,
                           std::size_t total);

// Euclidean projection onto {(t, u) : ||u|| <= t}. out may alias v.
void ProjectSocInto(std::span<const double> v, std::span<double> out);
Vector ProjectSoc(std::span<const double> v);
// Blockwise projection onto the product cone. out may alias v.
void ProjectConeInto(std::span<const ConeDescriptor> cones,
                     std::span<const double> v, std::span<double> out);
// Whether v lies in the product cone up to kFeasibilityTolerance (scaled by
// the block magnitude for the second-order cone).
bool InCone(std::span<const ConeDescriptor> cones, std::span<const double> v);

// v - tau c
Vector ProxLinear(double tau, std::span<const double> c,
                  std::span<const double> v);
// max(v - tau c, 0)
Vector ProxLinearNonneg(double tau, std::span<const double> c,
                        std::span<const double> v);
// proj_{K*}(v - tau b), blockwise over `cones` (which describe K).
Vector ProxLinearDualCone(double tau, std::span<const double> b,
                          std::span<const ConeDescriptor> cones,
                          std::span<const double> v);

// f(x) = <c, x>.
class LinearFn final : public ProxCapable {
 public:
  explicit LinearFn(Vector c);

  std::size_t dim() const override { return c_.size(); }
  void ProxInto(double tau, std::span<const double> v,
                std::span<double> out) const override;
  double Value(std::span<const double> v) const override;
  double ValueDifference(std::span<const double> a,
                         std::span<const double> b) const override;
  const Vector& c() const { return c_; }

 private:
  Vector c_;
};

// f(x) = <c, x> + indicator(x >= 0).
class LinearPlusNonneg final : public ProxCapable {
 public:
  explicit LinearPlusNonneg(Vector c);

  std::size_t dim() const override { return c_.size(); }
  void ProxInto(double tau, std::span<const double> v,
                std::span<double> out) const override;
  double Value(std::span<const double> v) const override;
  double ValueDifference(std::span<const double> a,
                         std::span<const double> b) const override;
  const Vector& c() const { return c_; }

 private:
  Vector c_;
};

// f(x) = <c, x> + indicator(x in K), K a product of cones. Used for primal
// variable blocks of conic programs.
class LinearPlusCone final : public ProxCapable {
 public:
  LinearPlusCone(Vector c, std::vector<ConeDescriptor> cones);

  std::size_t dim() const override { return c_.size(); }
  void ProxInto(double tau, std::span<const double> v,
                std::span<double> out) const override;
  double Value(std::span<const double> v) const override;
  double ValueDifference(std::span<const double> a,
                         std::span<const double> b) const override;
  const std::vector<ConeDescriptor>& cones() const { return cones_; }

 private:
  Vector c_;
  std::vector<ConeDescriptor> cones_;
};

// g*(y) = <b, y> + indicator(y in K*), where `cones` describes K (the cone
// of the constraint b - Ax in K). Equality rows (K = {0}) leave y free.
class LinearPlusDualCone final : public ProxCapable {
 public:
  LinearPlusDualCone(Vector b, std::vector<ConeDescriptor> cones);

  std::size_t dim() const override { return b_.size(); }
  void ProxInto(double tau, std::span<const double> v,
                std::span<double> out) const override;
  double Value(std::span<const double> v) const override;
  double ValueDifference(std::span<const double> a,
                         std::span<const double> b) const override;
  const Vector& b() const { return b_; }
  const std::vector<ConeDescriptor>& cones() const { return cones_; }
  const std::vector<ConeDescriptor>& dual_cones() const { return dual_cones_; }

 private:
  Vector b_;
  std::vector<ConeDescriptor> cones_;
  std::vector<ConeDescriptor> dual_cones_;
};

}  // namespace scsdg

#endif  // SCSDG_PROX_HPP_
