// Copyright 2026 The schwarzball Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "schwarzball/jet.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "schwarzball/errors.h"

namespace schwarzball {
namespace {

// Appends every exponent vector of exactly `total` in `vars` variables,
// first exponent descending.
void enumerate_total(int vars, int total, std::vector<int>& prefix,
                     std::vector<MultiIndex>& out) {
  const int pos = static_cast<int>(prefix.size());
  if (pos == vars - 1) {
    prefix.push_back(total);
    out.push_back(MultiIndex{prefix});
    prefix.pop_back();
    return;
  }
  for (int e = total; e >= 0; --e) {
    prefix.push_back(e);
    enumerate_total(vars, total - e, prefix, out);
    prefix.pop_back();
  }
}

bool is_integer(Complex p, double* value) {
  if (p.imag() != 0.0) return false;
  const double r = std::round(p.real());
  if (r != p.real()) return false;
  *value = r;
  return true;
}

// a = c0 * (1 + x) with x free of constant term.
Jet relative_increment(const Jet& a, Complex c0) {
  Jet x = a * (1.0 / c0);
  x.set_constant_term(0.0);
  return x;
}

void require_branch(Complex c0, const char* op) {
  if (c0 == Complex(0.0)) {
    throw BranchError(std::string(op) + ": constant term is zero");
  }
  if (c0.real() < 0.0 && std::abs(c0.imag()) <= 1e-14 * std::abs(c0)) {
    throw BranchError(std::string(op) +
                      ": constant term lies on the branch cut (-inf, 0]");
  }
}

}  // namespace

int MultiIndex::total() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

MonomialLayout::MonomialLayout(int vars, int degree)
    : vars_(vars), degree_(degree) {
  if (vars < 1 || vars > kMaxJetVars) {
    throw DimensionError("jet variable count must lie in [1, " +
                         std::to_string(kMaxJetVars) + "], got " +
                         std::to_string(vars));
  }
  if (degree < 0 || degree > kMaxJetDegree) {
    throw DimensionError("jet degree must lie in [0, " +
                         std::to_string(kMaxJetDegree) + "], got " +
                         std::to_string(degree));
  }
  std::vector<int> prefix;
  for (int t = 0; t <= degree; ++t) enumerate_total(vars, t, prefix, monomials_);
  for (int i = 0; i < size(); ++i) {
    lookup_.emplace(pack(monomials_[i].exponents), i);
  }

  std::vector<int> sum(vars);
  for (int i = 0; i < size(); ++i) {
    const auto& a = monomials_[i];
    const int ta = a.total();
    for (int j = 0; j < size(); ++j) {
      const auto& b = monomials_[j];
      if (ta + b.total() > degree) continue;
      for (int v = 0; v < vars; ++v) sum[v] = a.exponents[v] + b.exponents[v];
      products_.push_back({i, j, lookup_.at(pack(sum))});
    }
  }

  partials_.resize(vars);
  if (degree == 0) return;
  // The degree d-1 layout enumerates the same monomials in the same order,
  // so its indices are a prefix of ours.
  for (int v = 0; v < vars; ++v) {
    for (int i = 0; i < size(); ++i) {
      const auto& a = monomials_[i];
      if (a.exponents[v] == 0) continue;
      std::vector<int> lowered = a.exponents;
      --lowered[v];
      partials_[v].push_back(
          {i, lookup_.at(pack(lowered)), static_cast<double>(a.exponents[v])});
    }
  }
}

std::shared_ptr<const MonomialLayout> MonomialLayout::get(int vars,
                                                          int degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialLayout>>
      cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({vars, degree});
  if (it != cache.end()) return it->second;
  auto layout = std::make_shared<const MonomialLayout>(vars, degree);
  cache.emplace(std::make_pair(vars, degree), layout);
  return layout;
}

std::uint64_t MonomialLayout::pack(std::span<const int> exponents) {
  std::uint64_t key = 0;
  for (int e : exponents) key = (key << 5) | static_cast<std::uint64_t>(e);
  return key;
}

int MonomialLayout::index_of(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != vars_) {
    throw DimensionError("multi-index has " +
                         std::to_string(exponents.size()) +
                         " entries, expected " + std::to_string(vars_));
  }
  int total = 0;
  for (int e : exponents) {
    if (e < 0) throw DimensionError("negative exponent in multi-index");
    total += e;
  }
  if (total > degree_) return -1;
  return lookup_.at(pack(exponents));
}

Jet::Jet(int vars, int degree)
    : layout_(MonomialLayout::get(vars, degree)),
      coeffs_(layout_->size(), Complex(0.0)) {}

Jet Jet::constant(int vars, int degree, Complex value) {
  Jet j(vars, degree);
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(int vars, int degree, int var, Complex center) {
  if (var < 0 || var >= vars) {
    throw DimensionError("variable index " + std::to_string(var) +
                         " out of range for " + std::to_string(vars) +
                         " variables");
  }
  Jet j(vars, degree);
  j.coeffs_[0] = center;
  if (degree >= 1) j.coeffs_[j.layout_->linear_index(var)] = 1.0;
  return j;
}

Complex Jet::coeff(std::span<const int> exponents) const {
  const int idx = layout_->index_of(exponents);
  return idx < 0 ? Complex(0.0) : coeffs_[idx];
}

void Jet::set_coeff(std::span<const int> exponents, Complex value) {
  const int idx = layout_->index_of(exponents);
  if (idx >= 0) coeffs_[idx] = value;
}

Complex Jet::linear_coeff(int var) const {
  if (var < 0 || var >= vars()) {
    throw DimensionError("variable index out of range");
  }
  return degree() >= 1 ? coeffs_[layout_->linear_index(var)] : Complex(0.0);
}

Complex Jet::evaluate(const CVector& h) const {
  if (h.size() != vars()) {
    throw DimensionError("evaluation offset has wrong dimension");
  }
  Complex sum = 0.0;
  for (int i = 0; i < layout_->size(); ++i) {
    if (coeffs_[i] == Complex(0.0)) continue;
    Complex term = coeffs_[i];
    const auto& e = layout_->monomial(i).exponents;
    for (int v = 0; v < vars(); ++v) {
      for (int k = 0; k < e[v]; ++k) term *= h[v];
    }
    sum += term;
  }
  return sum;
}

double Jet::max_abs_diff(const Jet& other) const {
  require_same_shape(other, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    m = std::max(m, std::abs(coeffs_[i] - other.coeffs_[i]));
  }
  return m;
}

double Jet::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void Jet::require_same_shape(const Jet& other, const char* op) const {
  if (layout_ != other.layout_) {
    throw DimensionError(std::string(op) + ": jets differ in shape (n=" +
                         std::to_string(vars()) + ",d=" +
                         std::to_string(degree()) + ") vs (n=" +
                         std::to_string(other.vars()) + ",d=" +
                         std::to_string(other.degree()) + ")");
  }
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_same_shape(rhs, "jet addition");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_same_shape(rhs, "jet subtraction");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Jet operator*(const Jet& lhs, const Jet& rhs) {
  lhs.require_same_shape(rhs, "jet_mul");
  Jet out(lhs.vars(), lhs.degree());
  for (const auto& t : lhs.layout_->products()) {
    out.coeffs_[t.out] += lhs.coeffs_[t.lhs] * rhs.coeffs_[t.rhs];
  }
  return out;
}

Jet jet_mul(const Jet& a, const Jet& b) { return a * b; }

Jet jet_partial(const Jet& a, int var) {
  if (var < 0 || var >= a.vars()) {
    throw DimensionError("jet_partial: variable index " + std::to_string(var) +
                         " out of range for " + std::to_string(a.vars()) +
                         " variables");
  }
  Jet out(a.vars(), std::max(a.degree() - 1, 0));
  auto dst = out.mutable_coefficients();
  const auto src = a.coefficients();
  for (const auto& t : a.layout().partials(var)) {
    dst[t.dst] += t.factor * src[t.src];
  }
  return out;
}

Jet jet_truncate(const Jet& a, int degree) {
  if (degree > a.degree()) {
    throw DimensionError("jet_truncate cannot raise the degree");
  }
  Jet out(a.vars(), degree);
  // Graded enumeration: the lower-degree layout is a prefix.
  auto dst = out.mutable_coefficients();
  const auto src = a.coefficients();
  std::copy_n(src.begin(), dst.size(), dst.begin());
  return out;
}

namespace {

// sum_{k=0}^{d} weights[k] x^k for x without constant term.
Jet power_series(const Jet& x, std::span<const Complex> weights) {
  Jet out = Jet::constant(x.vars(), x.degree(), weights[0]);
  Jet xk = Jet::constant(x.vars(), x.degree(), 1.0);
  for (std::size_t k = 1; k < weights.size(); ++k) {
    xk = xk * x;
    out += xk * weights[k];
  }
  return out;
}

}  // namespace

Jet jet_log(const Jet& a) {
  const Complex c0 = a.constant_term();
  require_branch(c0, "jet_log");
  const int d = a.degree();
  std::vector<Complex> w(d + 1);
  w[0] = std::log(c0);
  for (int k = 1; k <= d; ++k) w[k] = ((k % 2 == 1) ? 1.0 : -1.0) / k;
  return power_series(relative_increment(a, c0), w);
}

Jet jet_pow(const Jet& a, Complex p) {
  const Complex c0 = a.constant_term();
  double integer_p = 0.0;
  const bool integral = is_integer(p, &integer_p);
  Complex lead;
  if (integral) {
    if (c0 == Complex(0.0)) {
      if (integer_p < 0) throw BranchError("jet_pow: zero constant term");
      // Nonnegative integer powers of a jet vanishing at the center.
      Jet out = Jet::constant(a.vars(), a.degree(), 1.0);
      for (int k = 0; k < static_cast<int>(integer_p); ++k) out = out * a;
      return out;
    }
    lead = std::pow(c0, static_cast<int>(integer_p));
  } else {
    require_branch(c0, "jet_pow");
    lead = std::pow(c0, p);
  }
  const int d = a.degree();
  std::vector<Complex> w(d + 1);
  // Binomial coefficients binom(p, k).
  w[0] = lead;
  Complex binom = 1.0;
  for (int k = 1; k <= d; ++k) {
    binom *= (p - static_cast<double>(k - 1)) / static_cast<double>(k);
    w[k] = lead * binom;
  }
  return power_series(relative_increment(a, c0), w);
}

Jet jet_exp(const Jet& a) {
  const Complex c0 = a.constant_term();
  const int d = a.degree();
  std::vector<Complex> w(d + 1);
  const Complex lead = std::exp(c0);
  double fact = 1.0;
  w[0] = lead;
  for (int k = 1; k <= d; ++k) {
    fact *= k;
    w[k] = lead / fact;
  }
  Jet x = a;
  x.set_constant_term(0.0);
  return power_series(x, w);
}

Jet jet_reciprocal(const Jet& a) {
  const Complex c0 = a.constant_term();
  if (c0 == Complex(0.0)) {
    throw VanishingDenominatorError("jet_reciprocal: constant term is zero");
  }
  const int d = a.degree();
  std::vector<Complex> w(d + 1);
  for (int k = 0; k <= d; ++k) w[k] = (k % 2 == 0 ? 1.0 : -1.0) / c0;
  return power_series(relative_increment(a, c0), w);
}

Jet jet_compose(const Jet& outer, std::span<const Jet> inner) {
  if (static_cast<int>(inner.size()) != outer.vars()) {
    throw DimensionError("jet_compose: outer has " +
                         std::to_string(outer.vars()) + " variables but " +
                         std::to_string(inner.size()) + " inner jets given");
  }
  require_uniform(inner, "jet_compose");
  for (const auto& j : inner) {
    if (j.constant_term() != Complex(0.0)) {
      throw CompositionCenterError(
          "jet_compose: inner jet has nonzero constant term; recenter first");
    }
  }
  const int n = inner.front().vars();
  const int d = inner.front().degree();
  const int m = outer.vars();
  const int top = std::min(d, outer.degree());

  // powers[v][e] = inner[v]^e
  std::vector<std::vector<Jet>> powers(m);
  for (int v = 0; v < m; ++v) {
    powers[v].push_back(Jet::constant(n, d, 1.0));
    for (int e = 1; e <= top; ++e) {
      powers[v].push_back(powers[v].back() * inner[v]);
    }
  }

  Jet out(n, d);
  const auto& layout = outer.layout();
  const auto coeffs = outer.coefficients();
  for (int i = 0; i < layout.size(); ++i) {
    if (coeffs[i] == Complex(0.0)) continue;
    const auto& e = layout.monomial(i).exponents;
    if (layout.monomial(i).total() > d) continue;
    Jet term = Jet::constant(n, d, coeffs[i]);
    for (int v = 0; v < m; ++v) {
      if (e[v] > 0) term = term * powers[v][e[v]];
    }
    out += term;
  }
  return out;
}

JetMatrix::JetMatrix(int rows, int cols, int vars, int degree)
    : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw DimensionError("empty jet matrix");
  entries_.assign(static_cast<std::size_t>(rows) * cols, Jet(vars, degree));
}

JetMatrix JetMatrix::identity(int size, int vars, int degree) {
  JetMatrix m(size, size, vars, degree);
  for (int i = 0; i < size; ++i) m(i, i) = Jet::constant(vars, degree, 1.0);
  return m;
}

CMatrix JetMatrix::constant_part() const {
  CMatrix c(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int k = 0; k < cols_; ++k) c(r, k) = (*this)(r, k).constant_term();
  }
  return c;
}

JetMatrix operator*(const JetMatrix& lhs, const JetMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw DimensionError("jet matrix product: inner dimensions differ");
  }
  JetMatrix out(lhs.rows(), rhs.cols(), lhs.vars(), lhs.degree());
  for (int r = 0; r < lhs.rows(); ++r) {
    for (int c = 0; c < rhs.cols(); ++c) {
      Jet acc(lhs.vars(), lhs.degree());
      for (int k = 0; k < lhs.cols(); ++k) acc += lhs(r, k) * rhs(k, c);
      out(r, c) = std::move(acc);
    }
  }
  return out;
}

Jet jet_det(const JetMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("jet_det: matrix not square");
  const int n = m.rows();
  if (n > 16) throw DimensionError("jet_det: matrix too large");
  // minors[mask] = det of rows 0..popcount(mask)-1 restricted to the columns
  // in mask, filled one row at a time.
  std::vector<std::optional<Jet>> minors(std::size_t{1} << n);
  minors[0] = Jet::constant(m.vars(), m.degree(), 1.0);
  for (int row = 0; row < n; ++row) {
    std::vector<std::optional<Jet>> next(minors.size());
    for (std::size_t mask = 0; mask < minors.size(); ++mask) {
      if (!minors[mask] || std::popcount(mask) != row) continue;
      for (int c = 0; c < n; ++c) {
        if (mask & (std::size_t{1} << c)) continue;
        const std::size_t grown = mask | (std::size_t{1} << c);
        // Column c sits at position pos within `grown`; expanding along the
        // last row gives sign (-1)^(row + pos).
        const int pos = std::popcount(mask & ((std::size_t{1} << c) - 1));
        const double sign = ((row + pos) % 2 == 0) ? 1.0 : -1.0;
        Jet term = (m(row, c) * *minors[mask]) * sign;
        if (next[grown]) {
          *next[grown] += term;
        } else {
          next[grown] = std::move(term);
        }
      }
    }
    minors = std::move(next);
  }
  return *minors[(std::size_t{1} << n) - 1];
}

JetMatrix jet_matrix_inverse(const JetMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("jet_matrix_inverse: matrix not square");
  }
  const int n = m.rows();
  JetMatrix a = m;
  JetMatrix inv = JetMatrix::identity(n, m.vars(), m.degree());
  const double scale = std::max(1.0, m.constant_part().cwiseAbs().maxCoeff());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col).constant_term()) >
          std::abs(a(pivot, col).constant_term())) {
        pivot = r;
      }
    }
    if (std::abs(a(pivot, col).constant_term()) <= 1e-14 * scale) {
      throw SingularDifferentialError(
          "jet_matrix_inverse: constant part is singular");
    }
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const Jet r = jet_reciprocal(a(col, col));
    for (int c = 0; c < n; ++c) {
      a(col, c) = a(col, c) * r;
      inv(col, c) = inv(col, c) * r;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const Jet f = a(row, col);
      if (f.max_abs_coeff() == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        a(row, c) -= f * a(col, c);
        inv(row, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

JetMatrix jet_jacobian(std::span<const Jet> components) {
  require_uniform(components, "jet_jacobian");
  const int rows = static_cast<int>(components.size());
  const int n = components.front().vars();
  const int d = std::max(components.front().degree() - 1, 0);
  JetMatrix df(rows, n, n, d);
  for (int l = 0; l < rows; ++l) {
    for (int k = 0; k < n; ++k) df(l, k) = jet_partial(components[l], k);
  }
  return df;
}

Complex second_derivative(const Jet& a, int i, int j) {
  if (i < 0 || j < 0 || i >= a.vars() || j >= a.vars()) {
    throw DimensionError("second_derivative: variable index out of range");
  }
  std::vector<int> e(a.vars(), 0);
  ++e[i];
  ++e[j];
  return (i == j ? 2.0 : 1.0) * a.coeff(e);
}

void require_uniform(std::span<const Jet> jets, const char* context) {
  if (jets.empty()) {
    throw DimensionError(std::string(context) + ": empty jet sequence");
  }
  for (const auto& j : jets) {
    if (j.vars() != jets.front().vars() ||
        j.degree() != jets.front().degree()) {
      throw DimensionError(std::string(context) +
                           ": jets differ in (n, d) across entries");
    }
  }
}

CVector constant_terms(std::span<const Jet> jets) {
  CVector v(static_cast<Eigen::Index>(jets.size()));
  for (std::size_t i = 0; i < jets.size(); ++i) v[i] = jets[i].constant_term();
  return v;
}

}  // namespace schwarzball
