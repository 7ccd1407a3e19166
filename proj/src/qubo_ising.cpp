// Copyright 2026 The bqcs Authors
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

#include "bqcs/qubo_ising.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bqcs/error.hpp"

namespace bqcs {

namespace detail {

namespace {

void check_linear(const std::vector<double>& linear) {
  for (double v : linear) {
    if (!std::isfinite(v)) throw NumericError("non-finite linear coefficient");
  }
}

}  // namespace

QuadraticData::QuadraticData(std::vector<double> lin, QuadraticMap quad, double off)
    : linear(std::move(lin)), quadratic(std::move(quad)), offset(off) {
  check_linear(linear);
  for (const auto& [key, v] : quadratic) {
    if (key.first >= key.second || key.second >= linear.size()) {
      throw DimensionError("quadratic key (" + std::to_string(key.first) + ", " +
                           std::to_string(key.second) + ") violates i < j < n");
    }
    if (!std::isfinite(v)) throw NumericError("non-finite quadratic coefficient");
  }
  if (!std::isfinite(offset)) throw NumericError("non-finite offset");
}

QuadraticData::QuadraticData(std::vector<double> lin, const std::vector<QuadraticTerm>& terms,
                             double off)
    : linear(std::move(lin)), offset(off) {
  check_linear(linear);
  for (const auto& t : terms) {
    if (t.i >= t.j || t.j >= linear.size()) {
      throw DimensionError("quadratic key (" + std::to_string(t.i) + ", " + std::to_string(t.j) +
                           ") violates i < j < n");
    }
    if (!std::isfinite(t.value)) throw NumericError("non-finite quadratic coefficient");
    if (!quadratic.emplace(Edge{t.i, t.j}, t.value).second) {
      throw DimensionError("duplicate quadratic key (" + std::to_string(t.i) + ", " +
                           std::to_string(t.j) + ")");
    }
  }
  if (!std::isfinite(offset)) throw NumericError("non-finite offset");
}

double QuadraticData::max_abs_coefficient() const {
  double m = 0.0;
  for (double v : linear) m = std::max(m, std::abs(v));
  for (const auto& [key, v] : quadratic) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace detail

namespace {

double lookup(const QuadraticMap& q, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  auto it = q.find({i, j});
  return it == q.end() ? 0.0 : it->second;
}

QuadraticMap scale_map(const QuadraticMap& q, double c) {
  QuadraticMap out;
  for (const auto& [k, v] : q) out.emplace_hint(out.end(), k, v * c);
  return out;
}

std::vector<double> scale_vec(const std::vector<double>& v, double c) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
  return out;
}

}  // namespace

double QuboModel::quad(std::size_t i, std::size_t j) const { return lookup(quad(), i, j); }

QuboModel QuboModel::scaled(double c) const {
  return {scale_vec(lin(), c), scale_map(quad(), c), offset() * c};
}

double IsingModel::coupling(std::size_t i, std::size_t j) const {
  return lookup(coupling(), i, j);
}

IsingModel IsingModel::scaled(double c) const {
  return {scale_vec(field(), c), scale_map(coupling(), c), offset() * c};
}

QuboModel build_qubo(const CSInstance& inst) {
  const Matrix& a = inst.A().entries();
  const Vector& y = inst.y();
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();

  std::vector<double> lin(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index t = 0; t < m; ++t) acc += a(t, i) * (-2.0 * y[t] + a(t, i));
    lin[static_cast<std::size_t>(i)] = inst.lambda() + acc;
  }

  // Off-diagonal Gram entries of A^T A, doubled.
  QuadraticMap quad;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double g = 2.0 * a.col(i).dot(a.col(j));
      if (g != 0.0) {
        quad.emplace_hint(quad.end(), Edge{static_cast<std::size_t>(i), static_cast<std::size_t>(j)},
                          g);
      }
    }
  }
  return {std::move(lin), std::move(quad), y.squaredNorm()};
}

double qubo_energy(const QuboModel& q, const BinarySignal& x) {
  if (x.size() != q.n()) {
    throw DimensionError("state length " + std::to_string(x.size()) + " != model size " +
                         std::to_string(q.n()));
  }
  double e = 0.0;
  for (std::size_t i = 0; i < q.n(); ++i) {
    if (x[i]) e += q.lin()[i];
  }
  for (const auto& [key, v] : q.quad()) {
    if (x[key.first] && x[key.second]) e += v;
  }
  return e;
}

double objective(const CSInstance& inst, const BinarySignal& x) {
  if (x.size() != inst.n()) {
    throw DimensionError("signal length " + std::to_string(x.size()) + " != n = " +
                         std::to_string(inst.n()));
  }
  const Vector r = inst.y() - inst.A().entries() * x.to_vector();
  return r.squaredNorm() + inst.lambda() * static_cast<double>(x.sparsity());
}

IsingModel qubo_to_ising(const QuboModel& q) {
  std::vector<double> field(q.n());
  for (std::size_t i = 0; i < q.n(); ++i) field[i] = q.lin()[i] / 2.0;
  double offset = q.offset();
  for (double v : q.lin()) offset += v / 2.0;

  QuadraticMap coupling;
  for (const auto& [key, v] : q.quad()) {
    field[key.first] += v / 4.0;
    field[key.second] += v / 4.0;
    coupling.emplace_hint(coupling.end(), key, v / 4.0);
    offset += v / 4.0;
  }
  return {std::move(field), std::move(coupling), offset};
}

double ising_energy(const IsingModel& s, const SpinVector& z) {
  if (z.size() != s.n()) {
    throw DimensionError("spin vector length " + std::to_string(z.size()) + " != model size " +
                         std::to_string(s.n()));
  }
  double e = 0.0;
  for (std::size_t i = 0; i < s.n(); ++i) {
    if (z[i] != 1 && z[i] != -1) {
      throw DomainError("spin " + std::to_string(i) + " is " + std::to_string(z[i]) +
                        ", expected -1 or +1");
    }
    e += s.field()[i] * z[i];
  }
  for (const auto& [key, v] : s.coupling()) e += v * z[key.first] * z[key.second];
  return e;
}

// ---------------------------------------------------------------------------
// Text export

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string dump(const char* type, const std::vector<double>& linear, const QuadraticMap& quad,
                 double offset) {
  std::ostringstream out;
  out << "# type " << type << "\n";
  out << "# n " << linear.size() << "\n";
  out << "# offset " << format_real(offset) << "\n";
  for (std::size_t i = 0; i < linear.size(); ++i) {
    out << "h " << i << " " << format_real(linear[i]) << "\n";
  }
  for (const auto& [key, v] : quad) {
    out << "J " << key.first << " " << key.second << " " << format_real(v) << "\n";
  }
  return out.str();
}

double parse_real(const std::string& token, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw ParseError(field, "trailing characters in \"" + token + "\"");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(field, "expected a real, got \"" + token + "\"");
  }
}

std::size_t parse_index(const std::string& token, const std::string& field) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size() || v < 0) throw ParseError(field, "bad index \"" + token + "\"");
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw ParseError(field, "bad index \"" + token + "\"");
  }
}

}  // namespace

std::string dump_model(const QuboModel& q) { return dump("qubo", q.lin(), q.quad(), q.offset()); }

std::string dump_model(const IsingModel& s) {
  return dump("ising", s.field(), s.coupling(), s.offset());
}

AnyModel parse_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string type;
  bool have_n = false;
  bool have_offset = false;
  std::size_t n = 0;
  double offset = 0.0;
  std::vector<double> linear;
  std::vector<bool> seen;
  std::vector<QuadraticTerm> terms;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "#") {
      std::string key;
      std::string value;
      ls >> key >> value;
      if (key == "type") {
        if (value != "ising" && value != "qubo") throw ParseError("type", "unknown \"" + value + "\"");
        type = value;
      } else if (key == "n") {
        n = parse_index(value, "n");
        have_n = true;
        linear.assign(n, 0.0);
        seen.assign(n, false);
      } else if (key == "offset") {
        offset = parse_real(value, "offset");
        have_offset = true;
      }
      continue;
    }
    if (!have_n) throw ParseError("n", "header must precede terms");
    if (tag == "h") {
      std::string i_tok;
      std::string v_tok;
      if (!(ls >> i_tok >> v_tok)) throw ParseError("h", "expected \"h <i> <value>\"");
      const auto i = parse_index(i_tok, "h");
      if (i >= n) throw DimensionError("h index " + std::to_string(i) + " >= n");
      if (seen[i]) throw ParseError("h", "duplicate index " + std::to_string(i));
      seen[i] = true;
      linear[i] = parse_real(v_tok, "h");
    } else if (tag == "J") {
      std::string i_tok;
      std::string j_tok;
      std::string v_tok;
      if (!(ls >> i_tok >> j_tok >> v_tok)) throw ParseError("J", "expected \"J <i> <j> <value>\"");
      terms.push_back({parse_index(i_tok, "J"), parse_index(j_tok, "J"), parse_real(v_tok, "J")});
    } else {
      throw ParseError(tag, "unknown line tag");
    }
  }
  if (type.empty()) throw ParseError("type", "missing");
  if (!have_n) throw ParseError("n", "missing");
  if (!have_offset) throw ParseError("offset", "missing");
  if (type == "qubo") return QuboModel(std::move(linear), terms, offset);
  return IsingModel(std::move(linear), terms, offset);
}

void save_model(const AnyModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  std::visit([&](const auto& m) { out << dump_model(m); }, model);
  if (!out) throw ValidationError("failed writing " + path.string());
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

}  // namespace bqcs
