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

#include "bqcs/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "bqcs/error.hpp"
#include "bqcs/rng.hpp"

namespace bqcs {

using json = nlohmann::json;

namespace {

constexpr double kTrueDScale = 0.1;

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw NumericError(std::string(what) + " has non-finite entries");
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw NumericError(std::string(what) + " has non-finite entries");
}

}  // namespace

MeasurementMatrix::MeasurementMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw DimensionError("measurement matrix must be at least 1x1, got " +
                         std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()));
  }
  require_finite(entries_, "measurement matrix");
}

BinarySignal::BinarySignal(std::vector<std::uint8_t> values) : values_(std::move(values)) {
  for (auto v : values_) {
    if (v > 1) throw DomainError("binary signal entries must be 0 or 1");
  }
}

BinarySignal BinarySignal::zeros(std::size_t n) {
  return BinarySignal(std::vector<std::uint8_t>(n, 0));
}

BinarySignal BinarySignal::from_support(std::size_t n, const std::vector<std::size_t>& support) {
  std::vector<std::uint8_t> v(n, 0);
  for (auto i : support) {
    if (i >= n) throw DimensionError("support index " + std::to_string(i) + " out of range");
    v[i] = 1;
  }
  return BinarySignal(std::move(v));
}

BinarySignal BinarySignal::from_spins(const SpinVector& spins) {
  std::vector<std::uint8_t> v(spins.size());
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] != 1 && spins[i] != -1) throw DomainError("spin entries must be -1 or +1");
    v[i] = spins[i] > 0 ? 1 : 0;
  }
  return BinarySignal(std::move(v));
}

std::size_t BinarySignal::sparsity() const {
  return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), 1));
}

std::vector<std::size_t> BinarySignal::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i]) s.push_back(i);
  }
  return s;
}

Vector BinarySignal::to_vector() const {
  Vector v(static_cast<Eigen::Index>(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i) v[static_cast<Eigen::Index>(i)] = values_[i];
  return v;
}

SpinVector BinarySignal::to_spins() const {
  SpinVector z(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) z[i] = values_[i] ? 1 : -1;
  return z;
}

CSInstance::CSInstance(MeasurementMatrix a, Vector y, double lambda)
    : a_(std::move(a)), y_(std::move(y)), lambda_(lambda) {
  if (static_cast<std::size_t>(y_.size()) != a_.rows()) {
    throw DimensionError("len(y) = " + std::to_string(y_.size()) + " but A has " +
                         std::to_string(a_.rows()) + " rows");
  }
  require_finite(y_, "y");
  if (!std::isfinite(lambda_) || lambda_ < 0) throw DomainError("lambda must be finite and >= 0");
}

UncertainCSInstance::UncertainCSInstance(MeasurementMatrix a0,
                                         std::vector<MeasurementMatrix> perturbations, Vector y,
                                         double gamma, double lambda)
    : a0_(std::move(a0)),
      perturbations_(std::move(perturbations)),
      y_(std::move(y)),
      gamma_(gamma),
      lambda_(lambda) {
  if (perturbations_.empty()) throw DimensionError("at least one perturbation matrix is required");
  for (std::size_t i = 0; i < perturbations_.size(); ++i) {
    const auto& p = perturbations_[i];
    if (p.rows() != a0_.rows() || p.cols() != a0_.cols()) {
      throw DimensionError("perturbation " + std::to_string(i + 1) + " is " +
                           std::to_string(p.rows()) + "x" + std::to_string(p.cols()) +
                           ", expected " + std::to_string(a0_.rows()) + "x" +
                           std::to_string(a0_.cols()));
    }
  }
  if (static_cast<std::size_t>(y_.size()) != a0_.rows()) {
    throw DimensionError("len(y) = " + std::to_string(y_.size()) + " but A0 has " +
                         std::to_string(a0_.rows()) + " rows");
  }
  require_finite(y_, "y");
  if (!std::isfinite(gamma_) || gamma_ <= 0) throw DomainError("gamma must be finite and > 0");
  if (!std::isfinite(lambda_) || lambda_ < 0) throw DomainError("lambda must be finite and >= 0");
}

Distribution parse_distribution(const std::string& name) {
  if (name == "gaussian") return Distribution::gaussian;
  if (name == "bernoulli") return Distribution::bernoulli;
  throw DomainError("unknown distribution \"" + name + "\"");
}

double default_lambda(const Vector& y) { return std::max(1e-3 * y.squaredNorm(), 1e-6); }

MeasurementMatrix gen_matrix(std::size_t m, std::size_t n, Distribution dist, std::uint64_t seed) {
  if (m < 1 || n < 1) throw DimensionError("gen_matrix needs m >= 1 and n >= 1");
  Engine rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  // Fill row by row so the stream order matches the row-major document layout.
  if (dist == Distribution::gaussian) {
    std::normal_distribution<double> normal(0.0, scale);
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = normal(rng);
  } else {
    std::bernoulli_distribution coin(0.5);
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = coin(rng) ? scale : -scale;
  }
  return MeasurementMatrix(std::move(a));
}

namespace {

BinarySignal random_support(std::size_t n, std::size_t s, std::uint64_t seed) {
  if (s > n) {
    throw SparsityError("sparsity " + std::to_string(s) + " exceeds n = " + std::to_string(n));
  }
  Engine rng(seed);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates: the first s slots are a uniform s-subset.
  for (std::size_t i = 0; i < s; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(s);
  return BinarySignal::from_support(n, idx);
}

}  // namespace

PlantedInstance gen_planted(std::size_t m, std::size_t n, std::size_t s, Distribution dist,
                            std::uint64_t seed) {
  if (s > n) {
    throw SparsityError("sparsity " + std::to_string(s) + " exceeds n = " + std::to_string(n));
  }
  auto a = gen_matrix(m, n, dist, derive_seed(seed, 0));
  auto x = random_support(n, s, derive_seed(seed, 1));
  Vector y = a.entries() * x.to_vector();
  const double lambda = default_lambda(y);
  return {CSInstance(std::move(a), std::move(y), lambda), std::move(x)};
}

UncertainPlantedInstance gen_uncertain_planted(std::size_t m, std::size_t n, std::size_t s,
                                               std::size_t r, double gamma, bool noise,
                                               std::uint64_t seed) {
  if (s > n) {
    throw SparsityError("sparsity " + std::to_string(s) + " exceeds n = " + std::to_string(n));
  }
  if (r < 1) throw DimensionError("r must be >= 1");
  if (!std::isfinite(gamma) || gamma <= 0) throw DomainError("gamma must be finite and > 0");

  auto a0 = gen_matrix(m, n, Distribution::gaussian, derive_seed(seed, 0));
  std::vector<MeasurementMatrix> perturbations;
  perturbations.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    perturbations.push_back(gen_matrix(m, n, Distribution::gaussian, derive_seed(seed, 2 + i)));
  }
  auto x = random_support(n, s, derive_seed(seed, 1));

  Engine rng(derive_seed(seed, 2 + r));
  std::normal_distribution<double> d_law(0.0, kTrueDScale);
  Vector d(static_cast<Eigen::Index>(r));
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = d_law(rng);

  Matrix ad = a0.entries();
  for (std::size_t i = 0; i < r; ++i) ad += d[static_cast<Eigen::Index>(i)] * perturbations[i].entries();
  Vector y = ad * x.to_vector();
  if (noise) {
    std::normal_distribution<double> e_law(0.0, 1.0 / std::sqrt(gamma));
    for (Eigen::Index t = 0; t < y.size(); ++t) y[t] += e_law(rng);
  }
  const double lambda = default_lambda(y);
  return {UncertainCSInstance(std::move(a0), std::move(perturbations), std::move(y), gamma, lambda),
          std::move(x), std::move(d)};
}

const CSInstance& InstanceDocument::standard() const {
  if (auto* p = std::get_if<CSInstance>(&instance)) return *p;
  throw ValidationError("expected a \"cs\" instance, got \"cs-uncertain\"");
}

const UncertainCSInstance& InstanceDocument::uncertain() const {
  if (auto* p = std::get_if<UncertainCSInstance>(&instance)) return *p;
  throw ValidationError("expected a \"cs-uncertain\" instance, got \"cs\"");
}

// ---------------------------------------------------------------------------
// JSON document

namespace {

json matrix_to_json(const Matrix& a) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

const json& require(const json& j, const std::string& field) {
  auto it = j.find(field);
  if (it == j.end()) throw ParseError(field, "missing");
  return *it;
}

double as_real(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field, "expected a number");
  return j.get<double>();
}

std::size_t as_count(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw ParseError(field, "expected a positive integer");
  }
  return j.get<std::size_t>();
}

Vector as_vector(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = as_real(j[i], field);
  return v;
}

MeasurementMatrix as_matrix(const json& j, const std::string& field, std::size_t m, std::size_t n) {
  if (!j.is_array()) throw ParseError(field, "expected an array of rows");
  if (j.size() != m) {
    throw DimensionError(field + " has " + std::to_string(j.size()) + " rows, expected m = " +
                         std::to_string(m));
  }
  Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = j[r];
    if (!row.is_array()) throw ParseError(field, "row " + std::to_string(r) + " is not an array");
    if (row.size() != n) {
      throw DimensionError(field + " row " + std::to_string(r) + " has " +
                           std::to_string(row.size()) + " entries, expected n = " +
                           std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = as_real(row[c], field);
    }
  }
  return MeasurementMatrix(std::move(a));
}

}  // namespace

std::string dump_instance(const InstanceDocument& doc) {
  json j;
  if (const auto* cs = std::get_if<CSInstance>(&doc.instance)) {
    j["kind"] = "cs";
    j["m"] = cs->m();
    j["n"] = cs->n();
    j["A"] = matrix_to_json(cs->A().entries());
    j["y"] = vector_to_json(cs->y());
    j["lambda"] = cs->lambda();
  } else {
    const auto& u = std::get<UncertainCSInstance>(doc.instance);
    j["kind"] = "cs-uncertain";
    j["m"] = u.m();
    j["n"] = u.n();
    j["A0"] = matrix_to_json(u.A0().entries());
    json ai = json::array();
    for (const auto& p : u.perturbations()) ai.push_back(matrix_to_json(p.entries()));
    j["Ai"] = std::move(ai);
    j["y"] = vector_to_json(u.y());
    j["gamma"] = u.gamma();
    j["lambda"] = u.lambda();
  }
  if (doc.truth) {
    json t;
    t["x"] = doc.truth->x.values();
    t["d"] = vector_to_json(doc.truth->d);
    j["truth"] = std::move(t);
  }
  return j.dump(1) + "\n";
}

InstanceDocument parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!j.is_object()) throw ParseError("<document>", "expected a JSON object");

  const auto& kind_j = require(j, "kind");
  if (!kind_j.is_string()) throw ParseError("kind", "expected a string");
  const auto kind = kind_j.get<std::string>();
  const auto m = as_count(require(j, "m"), "m");
  const auto n = as_count(require(j, "n"), "n");

  auto read_body = [&]() -> std::variant<CSInstance, UncertainCSInstance> {
  if (kind == "cs") {
    auto a = as_matrix(require(j, "A"), "A", m, n);
    auto y = as_vector(require(j, "y"), "y");
    const double lambda = as_real(require(j, "lambda"), "lambda");
    if (static_cast<std::size_t>(y.size()) != m) {
      throw DimensionError("len(y) = " + std::to_string(y.size()) + " but m = " + std::to_string(m));
    }
    return CSInstance(std::move(a), std::move(y), lambda);
  } else if (kind == "cs-uncertain") {
    auto a0 = as_matrix(require(j, "A0"), "A0", m, n);
    const auto& ai_j = require(j, "Ai");
    if (!ai_j.is_array()) throw ParseError("Ai", "expected an array of matrices");
    std::vector<MeasurementMatrix> ai;
    for (const auto& mat : ai_j) ai.push_back(as_matrix(mat, "Ai", m, n));
    auto y = as_vector(require(j, "y"), "y");
    const double gamma = as_real(require(j, "gamma"), "gamma");
    const double lambda = as_real(require(j, "lambda"), "lambda");
    if (static_cast<std::size_t>(y.size()) != m) {
      throw DimensionError("len(y) = " + std::to_string(y.size()) + " but m = " + std::to_string(m));
    }
    return UncertainCSInstance(std::move(a0), std::move(ai), std::move(y), gamma, lambda);
  }
  throw ParseError("kind", "unknown kind \"" + kind + "\"");
  };
  InstanceDocument doc{read_body(), std::nullopt};

  if (auto it = j.find("truth"); it != j.end()) {
    const auto& t = *it;
    if (!t.is_object()) throw ParseError("truth", "expected an object");
    const auto& xj = require(t, "x");
    if (!xj.is_array()) throw ParseError("truth.x", "expected an array");
    std::vector<std::uint8_t> x;
    for (const auto& v : xj) {
      if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
        throw ParseError("truth.x", "entries must be 0 or 1");
      }
      x.push_back(static_cast<std::uint8_t>(v.get<int>()));
    }
    if (x.size() != n) throw DimensionError("truth.x has length " + std::to_string(x.size()));
    Vector d = t.contains("d") ? as_vector(t["d"], "truth.d") : Vector();
    doc.truth = GroundTruth{BinarySignal(std::move(x)), std::move(d)};
  }
  return doc;
}

void save_instance(const InstanceDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  out << dump_instance(doc);
  if (!out) throw ValidationError("failed writing " + path.string());
}

InstanceDocument load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

}  // namespace bqcs
