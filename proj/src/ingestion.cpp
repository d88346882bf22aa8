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

#include "scsdg/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "scsdg/error.hpp"

namespace scsdg {
namespace {

struct Token {
  std::string_view text;
  int line = 0;
};

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
      ++i;
    } else if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && text[i] != ' ' && text[i] != '\t' &&
             text[i] != '\r' && text[i] != '\n' && text[i] != '#') {
        ++i;
      }
      tokens.push_back({text.substr(start, i - start), line});
    }
  }
  return tokens;
}

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : tokens_(Tokenize(text)) {}

  bool AtEnd() const { return pos_ >= tokens_.size(); }
  const Token& Peek() const { return tokens_[pos_]; }
  int line() const {
    if (tokens_.empty()) return 1;
    return AtEnd() ? tokens_.back().line : tokens_[pos_].line;
  }

  Token Next(const char* what) {
    if (AtEnd()) {
      throw ParseError(line(), std::string("unexpected end of input, expected ") + what);
    }
    return tokens_[pos_++];
  }

  double NextDouble(const char* what) {
    const Token tok = Next(what);
    double value = 0.0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    if (!tok.text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw ParseError(tok.line, std::string("expected ") + what + ", got '" +
                                     std::string(tok.text) + "'");
    }
    return value;
  }

  std::int64_t NextInt(const char* what) {
    const Token tok = Next(what);
    std::int64_t value = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw ParseError(tok.line, std::string("expected ") + what + ", got '" +
                                     std::string(tok.text) + "'");
    }
    return value;
  }

  std::size_t NextCount(const char* what) {
    const int at = line();
    const std::int64_t value = NextInt(what);
    if (value < 0) throw ParseError(at, std::string(what) + " must be >= 0");
    return static_cast<std::size_t>(value);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool IsSectionKeyword(std::string_view word) {
  return !word.empty() &&
         std::all_of(word.begin(), word.end(),
                     [](char ch) { return ch >= 'A' && ch <= 'Z'; });
}

void Warn(ParseDiagnostics* diagnostics, int line, std::string message) {
  if (diagnostics) diagnostics->warnings.push_back({line, std::move(message)});
}

void WarnDuplicates(const std::vector<Triplet>& triplets,
                    const std::vector<int>& lines,
                    ParseDiagnostics* diagnostics) {
  if (!diagnostics) return;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (std::size_t k = 0; k < triplets.size(); ++k) {
    if (!seen.insert({triplets[k].row, triplets[k].col}).second) {
      Warn(diagnostics, lines[k],
           "duplicate entry (" + std::to_string(triplets[k].row) + ", " +
               std::to_string(triplets[k].col) + ") is summed");
    }
  }
}

ConeKind NativeConeKind(const Token& tok) {
  const std::string name(tok.text);
  if (name == "zero") return ConeKind::kZero;
  if (name == "free") return ConeKind::kFree;
  if (name == "nonneg") return ConeKind::kNonneg;
  if (name == "nonpos") return ConeKind::kNonpos;
  if (name == "soc") return ConeKind::kSoc;
  throw ParseError(tok.line, "unknown cone kind '" + name + "'");
}

// "kind dim" blocks until the next section keyword.
std::vector<ConeDescriptor> ParseConeBlocks(TokenStream& in) {
  std::vector<ConeDescriptor> cones;
  while (!in.AtEnd() && !IsSectionKeyword(in.Peek().text)) {
    const Token kind_tok = in.Next("cone kind");
    const ConeKind kind = NativeConeKind(kind_tok);
    const std::size_t dim = in.NextCount("cone dimension");
    if (dim == 0 || (kind == ConeKind::kSoc && dim < 2)) {
      throw ParseError(kind_tok.line, "invalid dimension for cone '" +
                                          std::string(kind_tok.text) + "'");
    }
    cones.push_back({kind, dim});
  }
  return cones;
}

void CheckPartition(const std::vector<ConeDescriptor>& cones, std::size_t total,
                    int line, const char* what) {
  std::size_t sum = 0;
  for (const ConeDescriptor& cone : cones) sum += cone.dim;
  if (sum != total) {
    throw ParseError(line, std::string(what) + " dimensions sum to " +
                               std::to_string(sum) + ", expected " +
                               std::to_string(total));
  }
}

std::string FormatDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

// Mirrors the native "kind dim" list; merges nothing so round-trips are
// field-exact.
void WriteCones(std::ostringstream& out,
                const std::vector<ConeDescriptor>& cones) {
  for (const ConeDescriptor& cone : cones) {
    out << ToString(cone.kind) << ' ' << cone.dim << '\n';
  }
}

ConeKind CbfConeKind(const Token& tok) {
  if (tok.text == "F") return ConeKind::kFree;
  if (tok.text == "L+") return ConeKind::kNonneg;
  if (tok.text == "L-") return ConeKind::kNonpos;
  if (tok.text == "L=") return ConeKind::kZero;
  if (tok.text == "Q") return ConeKind::kSoc;
  throw Error(ErrorKind::kUnsupported,
              "line " + std::to_string(tok.line) + ": unsupported cone: " +
                  std::string(tok.text));
}

std::vector<ConeDescriptor> ParseCbfCones(TokenStream& in, std::size_t& total) {
  total = in.NextCount("dimension");
  const std::size_t count = in.NextCount("cone count");
  std::vector<ConeDescriptor> cones;
  std::size_t sum = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const Token kind_tok = in.Next("cone kind");
    const ConeKind kind = CbfConeKind(kind_tok);
    const std::size_t dim = in.NextCount("cone dimension");
    if (dim == 0 || (kind == ConeKind::kSoc && dim < 2)) {
      throw ParseError(kind_tok.line, "invalid cone dimension");
    }
    cones.push_back({kind, dim});
    sum += dim;
  }
  if (sum != total) {
    throw ParseError(in.line(), "cone dimensions sum to " + std::to_string(sum) +
                                    ", expected " + std::to_string(total));
  }
  return cones;
}

std::int64_t CheckIndex(std::int64_t index, std::size_t bound, int line,
                        const char* what) {
  if (index < 0 || static_cast<std::size_t>(index) >= bound) {
    throw ParseError(line, std::string(what) + " index " +
                               std::to_string(index) + " out of range [0, " +
                               std::to_string(bound) + ")");
  }
  return index;
}

}  // namespace

ConicProgram ParseNative(std::string_view text, ParseDiagnostics* diagnostics) {
  TokenStream in(text);
  ConicProgram program;
  bool have_vars = false;
  bool have_rows = false;
  bool have_obj = false;
  bool have_rhs = false;
  bool have_cones = false;
  std::vector<int> triplet_lines;
  std::set<std::string> seen;

  while (!in.AtEnd()) {
    const Token keyword = in.Next("section keyword");
    const std::string name(keyword.text);
    if (!IsSectionKeyword(keyword.text)) {
      throw ParseError(keyword.line, "expected a section keyword, got '" + name + "'");
    }
    if (!seen.insert(name).second) {
      throw ParseError(keyword.line, "duplicate section " + name);
    }
    auto require = [&](bool flag, const char* section) {
      if (!flag) {
        throw ParseError(keyword.line,
                         name + " must follow the " + section + " section");
      }
    };

    if (name == "VARS") {
      program.n = in.NextCount("variable count");
      program.var_cones = ParseConeBlocks(in);
      if (program.var_cones.empty() && program.n > 0) {
        program.var_cones.push_back({ConeKind::kFree, program.n});
      }
      CheckPartition(program.var_cones, program.n, keyword.line, "variable cone");
      have_vars = true;
    } else if (name == "ROWS") {
      program.m = in.NextCount("row count");
      have_rows = true;
    } else if (name == "OBJ") {
      require(have_vars, "VARS");
      const Token sense = in.Next("MIN or MAX");
      if (sense.text == "MIN") {
        program.sense = ObjectiveSense::kMinimize;
      } else if (sense.text == "MAX") {
        program.sense = ObjectiveSense::kMaximize;
      } else {
        throw ParseError(sense.line, "expected MIN or MAX, got '" +
                                         std::string(sense.text) + "'");
      }
      program.c.resize(program.n);
      for (double& value : program.c) value = in.NextDouble("objective coefficient");
      have_obj = true;
    } else if (name == "OFFSET") {
      program.objective_offset = in.NextDouble("objective offset");
    } else if (name == "TRIPLETS") {
      require(have_vars, "VARS");
      require(have_rows, "ROWS");
      const std::size_t nnz = in.NextCount("triplet count");
      program.triplets.reserve(nnz);
      for (std::size_t k = 0; k < nnz; ++k) {
        const int line = in.line();
        Triplet t;
        t.row = CheckIndex(in.NextInt("row index"), program.m, line, "row");
        t.col = CheckIndex(in.NextInt("column index"), program.n, line, "column");
        t.value = in.NextDouble("coefficient");
        program.triplets.push_back(t);
        triplet_lines.push_back(line);
      }
    } else if (name == "RHS") {
      require(have_rows, "ROWS");
      program.b.resize(program.m);
      for (double& value : program.b) value = in.NextDouble("right-hand side");
      have_rhs = true;
    } else if (name == "CONES") {
      require(have_rows, "ROWS");
      program.row_cones = ParseConeBlocks(in);
      CheckPartition(program.row_cones, program.m, keyword.line, "row cone");
      have_cones = true;
    } else {
      throw ParseError(keyword.line, "unknown section " + name);
    }
    if (!in.AtEnd() && !IsSectionKeyword(in.Peek().text)) {
      throw ParseError(in.line(), "unexpected token '" +
                                      std::string(in.Peek().text) + "' in " + name);
    }
  }

  if (!have_vars) throw ParseError(in.line(), "missing VARS section");
  if (!have_obj) throw ParseError(in.line(), "missing OBJ section");
  if (program.m > 0 && !have_rhs) throw ParseError(in.line(), "missing RHS section");
  if (program.m == 0) program.b.clear();
  if (program.m > 0 && !have_cones) {
    Warn(diagnostics, in.line(), "CONES omitted; every row is an equality");
    program.row_cones.push_back({ConeKind::kZero, program.m});
  }
  WarnDuplicates(program.triplets, triplet_lines, diagnostics);
  return program;
}

std::string SerializeNative(const ConicProgram& program) {
  ValidateProgram(program);
  std::ostringstream out;
  out << "VARS " << program.n << '\n';
  WriteCones(out, program.var_cones);
  out << "ROWS " << program.m << '\n';
  out << "OBJ " << (program.sense == ObjectiveSense::kMinimize ? "MIN" : "MAX")
      << '\n';
  for (std::size_t j = 0; j < program.c.size(); ++j) {
    out << (j ? " " : "") << FormatDouble(program.c[j]);
  }
  out << '\n';
  if (program.objective_offset != 0.0) {
    out << "OFFSET " << FormatDouble(program.objective_offset) << '\n';
  }
  out << "TRIPLETS " << program.triplets.size() << '\n';
  for (const Triplet& t : program.triplets) {
    out << t.row << ' ' << t.col << ' ' << FormatDouble(t.value) << '\n';
  }
  out << "RHS\n";
  for (std::size_t i = 0; i < program.b.size(); ++i) {
    out << (i ? " " : "") << FormatDouble(program.b[i]);
  }
  out << '\n';
  out << "CONES\n";
  WriteCones(out, program.row_cones);
  return out.str();
}

ConicProgram ParseCbfSubset(std::string_view text, ParseDiagnostics* diagnostics) {
  TokenStream in(text);
  ConicProgram program;
  bool have_var = false;
  bool have_con = false;
  bool have_ver = false;
  std::vector<int> triplet_lines;

  while (!in.AtEnd()) {
    const Token keyword = in.Next("keyword");
    const std::string name(keyword.text);
    auto require = [&](bool flag, const char* section) {
      if (!flag) {
        throw ParseError(keyword.line, name + " must follow " + section);
      }
    };

    if (name == "VER") {
      const int line = in.line();
      const std::int64_t version = in.NextInt("version");
      if (version < 1 || version > 4) {
        throw Error(ErrorKind::kUnsupported, "line " + std::to_string(line) +
                                                 ": unsupported: VER " +
                                                 std::to_string(version));
      }
      have_ver = true;
    } else if (name == "OBJSENSE") {
      const Token sense = in.Next("MIN or MAX");
      if (sense.text == "MIN") {
        program.sense = ObjectiveSense::kMinimize;
      } else if (sense.text == "MAX") {
        program.sense = ObjectiveSense::kMaximize;
      } else {
        throw ParseError(sense.line, "expected MIN or MAX");
      }
    } else if (name == "VAR") {
      program.var_cones = ParseCbfCones(in, program.n);
      program.c.assign(program.n, 0.0);
      have_var = true;
    } else if (name == "CON") {
      program.row_cones = ParseCbfCones(in, program.m);
      program.b.assign(program.m, 0.0);
      have_con = true;
    } else if (name == "OBJACOORD") {
      require(have_var, "VAR");
      const std::size_t nnz = in.NextCount("entry count");
      for (std::size_t k = 0; k < nnz; ++k) {
        const int line = in.line();
        const auto j = CheckIndex(in.NextInt("variable index"), program.n, line, "variable");
        program.c[static_cast<std::size_t>(j)] += in.NextDouble("coefficient");
      }
    } else if (name == "OBJBCOORD") {
      program.objective_offset = in.NextDouble("objective constant");
    } else if (name == "ACOORD") {
      require(have_var, "VAR");
      require(have_con, "CON");
      const std::size_t nnz = in.NextCount("entry count");
      program.triplets.reserve(nnz);
      for (std::size_t k = 0; k < nnz; ++k) {
        const int line = in.line();
        Triplet t;
        t.row = CheckIndex(in.NextInt("row index"), program.m, line, "row");
        t.col = CheckIndex(in.NextInt("variable index"), program.n, line, "variable");
        // CBF writes A x + b in K; here b - A x in K.
        t.value = -in.NextDouble("coefficient");
        program.triplets.push_back(t);
        triplet_lines.push_back(line);
      }
    } else if (name == "BCOORD") {
      require(have_con, "CON");
      const std::size_t nnz = in.NextCount("entry count");
      for (std::size_t k = 0; k < nnz; ++k) {
        const int line = in.line();
        const auto i = CheckIndex(in.NextInt("row index"), program.m, line, "row");
        program.b[static_cast<std::size_t>(i)] += in.NextDouble("coefficient");
      }
    } else if (IsSectionKeyword(keyword.text)) {
      throw Error(ErrorKind::kUnsupported, "unsupported: " + name);
    } else {
      throw ParseError(keyword.line, "expected a keyword, got '" + name + "'");
    }
  }

  if (!have_ver) Warn(diagnostics, 1, "missing VER");
  if (!have_var) throw ParseError(in.line(), "missing VAR section");
  WarnDuplicates(program.triplets, triplet_lines, diagnostics);
  return program;
}

void ValidateProgram(const ConicProgram& program) {
  if (program.c.size() != program.n) {
    ThrowDimensionMismatch("objective length", program.n, program.c.size());
  }
  if (program.b.size() != program.m) {
    ThrowDimensionMismatch("right-hand side length", program.m, program.b.size());
  }
  ValidateConePartition(program.var_cones, program.n);
  ValidateConePartition(program.row_cones, program.m);
  for (const Triplet& t : program.triplets) {
    if (t.row < 0 || static_cast<std::size_t>(t.row) >= program.m || t.col < 0 ||
        static_cast<std::size_t>(t.col) >= program.n) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "triplet (" + std::to_string(t.row) + ", " +
                      std::to_string(t.col) + ") out of range");
    }
  }
}

SaddleProblem ToSaddle(const ConicProgram& program,
                       const PowerIterationOptions& power) {
  ValidateProgram(program);
  Vector c = program.c;
  if (program.sense == ObjectiveSense::kMaximize) {
    for (double& value : c) value = -value;
  }

  std::shared_ptr<const ProxCapable> f;
  const auto& vc = program.var_cones;
  const bool all_free = std::all_of(vc.begin(), vc.end(), [](const ConeDescriptor& d) {
    return d.kind == ConeKind::kFree;
  });
  const bool all_nonneg = !vc.empty() && std::all_of(vc.begin(), vc.end(), [](const ConeDescriptor& d) {
    return d.kind == ConeKind::kNonneg;
  });
  if (all_free) {
    f = std::make_shared<LinearFn>(std::move(c));
  } else if (all_nonneg) {
    f = std::make_shared<LinearPlusNonneg>(std::move(c));
  } else {
    f = std::make_shared<LinearPlusCone>(std::move(c), vc);
  }

  auto gstar = std::make_shared<LinearPlusDualCone>(program.b, program.row_cones);
  auto coupling = std::make_shared<MatrixCoupling>(
      program.m, program.n, program.triplets, MatrixCoupling::Storage::kAuto, power);
  return SaddleProblem(std::move(f), std::move(gstar), std::move(coupling));
}

std::string ReadFile(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

ConicProgram LoadProgram(const std::string& path, ParseDiagnostics* diagnostics) {
  const std::string text = ReadFile(path);
  const bool is_cbf =
      path.size() >= 4 && path.compare(path.size() - 4, 4, ".cbf") == 0;
  ConicProgram program =
      is_cbf ? ParseCbfSubset(text, diagnostics) : ParseNative(text, diagnostics);
  ValidateProgram(program);
  return program;
}

}  // namespace scsdg
