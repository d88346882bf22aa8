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

// Conic programs
//
//   min  <c, x>   s.t.  b - A x in K,  x in K_var
//
// read from a line-oriented native format or from a subset of the Conic
// Benchmark Format, and converted to the saddle form
//
//   f(x)  = <c, x> + i_{K_var}(x)
//   g*(y) = <b, y> + i_{K*}(y).
//
// Native format. '#' starts a comment, tokens are whitespace separated and
// indices are 0-based. Sections, each starting with an upper-case keyword:
//
//   VARS n         followed by "kind dim" blocks; no blocks means all free
//   ROWS m         optional, defaults to 0
//   OBJ MIN|MAX    followed by n coefficients
//   OFFSET v       optional constant added to the objective
//   TRIPLETS nnz   followed by nnz "row col value" entries
//   RHS            followed by m values
//   CONES          followed by "kind dim" blocks partitioning the rows;
//                  omitted means every row is an equality
//
// with kind one of zero, free, nonneg, nonpos, soc.

#ifndef SCSDG_INGESTION_HPP_
#define SCSDG_INGESTION_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scsdg/core.hpp"
#include "scsdg/prox.hpp"

namespace scsdg {

enum class ObjectiveSense { kMinimize, kMaximize };

struct ConicProgram {
  std::size_t n = 0;
  std::size_t m = 0;
  ObjectiveSense sense = ObjectiveSense::kMinimize;
  Vector c;
  double objective_offset = 0.0;
  std::vector<Triplet> triplets;
  Vector b;
  // Partition of the rows; b - A x lies in their product.
  std::vector<ConeDescriptor> row_cones;
  // Partition of the variables.
  std::vector<ConeDescriptor> var_cones;

  bool operator==(const ConicProgram&) const = default;
};

struct ParseWarning {
  int line = 0;
  std::string message;
};

struct ParseDiagnostics {
  std::vector<ParseWarning> warnings;
};

// Throws ParseError with a line number on malformed input and Error
// (kDimensionMismatch) on inconsistent counts.
ConicProgram ParseNative(std::string_view text,
                         ParseDiagnostics* diagnostics = nullptr);
// Full precision (%.17g), so ParseNative(SerializeNative(p)) == p.
std::string SerializeNative(const ConicProgram& program);

// Accepts VER, OBJSENSE, VAR, CON, OBJACOORD, OBJBCOORD, ACOORD and BCOORD
// with cones F, L+, L-, L= and Q. Anything else throws Error (kUnsupported)
// with message "unsupported: <KEYWORD>".
ConicProgram ParseCbfSubset(std::string_view text,
                            ParseDiagnostics* diagnostics = nullptr);

// Structural checks: counts, index ranges and cone partitions.
void ValidateProgram(const ConicProgram& program);

SaddleProblem ToSaddle(const ConicProgram& program,
                       const PowerIterationOptions& power = {});

// Dispatches on the extension: ".cbf" for CBF, anything else native.
ConicProgram LoadProgram(const std::string& path,
                         ParseDiagnostics* diagnostics = nullptr);
std::string ReadFile(const std::string& path);

}  // namespace scsdg

#endif  // SCSDG_INGESTION_HPP_
