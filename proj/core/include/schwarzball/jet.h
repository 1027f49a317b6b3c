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

// Truncated multivariate complex power series ("jets").
//
// A Jet of degree d in n variables stores every Taylor coefficient c_a of
// total degree |a| <= d, densely, in graded order.  All arithmetic truncates
// at d, so a jet of a map about a point carries exactly the partial
// derivatives of order <= d at that point (c_a = D^a f / a!).

#ifndef SCHWARZBALL_JET_H_
#define SCHWARZBALL_JET_H_

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "schwarzball/types.h"

namespace schwarzball {

inline constexpr int kMaxJetVars = 8;
inline constexpr int kMaxJetDegree = 15;

/// Exponent vector of a monomial z_1^{e_1} ... z_n^{e_n}.
struct MultiIndex {
  std::vector<int> exponents;

  int total() const;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Shared, immutable enumeration of the monomials of total degree <= d in n
/// variables, with precomputed product and differentiation tables.
class MonomialLayout {
 public:
  struct ProductTerm {
    int lhs;
    int rhs;
    int out;
  };
  struct PartialTerm {
    int src;      // index in this layout
    int dst;      // index in the degree d-1 layout
    double factor;
  };

  /// Cached layout for (vars, degree); thread-safe.
  static std::shared_ptr<const MonomialLayout> get(int vars, int degree);

  int vars() const { return vars_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(monomials_.size()); }

  const MultiIndex& monomial(int index) const { return monomials_[index]; }
  /// Index of the monomial, or -1 when its total degree exceeds degree().
  int index_of(std::span<const int> exponents) const;
  /// Index of 1 (always 0) and of z_i.
  int linear_index(int var) const { return 1 + var; }

  const std::vector<ProductTerm>& products() const { return products_; }
  const std::vector<PartialTerm>& partials(int var) const {
    return partials_[var];
  }

  MonomialLayout(int vars, int degree);

 private:
  static std::uint64_t pack(std::span<const int> exponents);

  int vars_;
  int degree_;
  std::vector<MultiIndex> monomials_;
  std::unordered_map<std::uint64_t, int> lookup_;
  std::vector<ProductTerm> products_;
  std::vector<std::vector<PartialTerm>> partials_;
};

/// Degree-d truncated complex power series in n variables.
class Jet {
 public:
  Jet(int vars, int degree);

  static Jet constant(int vars, int degree, Complex value);
  /// The jet of center + z_var.
  static Jet variable(int vars, int degree, int var, Complex center = 0.0);

  int vars() const { return layout_->vars(); }
  int degree() const { return layout_->degree(); }
  const MonomialLayout& layout() const { return *layout_; }

  Complex coeff(std::span<const int> exponents) const;
  Complex coeff(std::initializer_list<int> exponents) const {
    return coeff(std::span<const int>(exponents.begin(), exponents.size()));
  }
  /// Writes a coefficient; monomials above the truncation degree are dropped.
  void set_coeff(std::span<const int> exponents, Complex value);
  void set_coeff(std::initializer_list<int> exponents, Complex value) {
    set_coeff(std::span<const int>(exponents.begin(), exponents.size()),
              value);
  }

  Complex constant_term() const { return coeffs_[0]; }
  void set_constant_term(Complex value) { coeffs_[0] = value; }
  /// Coefficient of z_var.
  Complex linear_coeff(int var) const;

  std::span<const Complex> coefficients() const { return coeffs_; }
  std::span<Complex> mutable_coefficients() { return coeffs_; }

  /// Sums the truncated series at offset h from the expansion center.
  Complex evaluate(const CVector& h) const;

  /// Max |coefficient| of (this - other); both must share (n, d).
  double max_abs_diff(const Jet& other) const;
  double max_abs_coeff() const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(Complex scale);
  Jet operator-() const;

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator*(Jet lhs, Complex scale) { return lhs *= scale; }
  friend Jet operator*(Complex scale, Jet rhs) { return rhs *= scale; }
  friend Jet operator*(const Jet& lhs, const Jet& rhs);

 private:
  void require_same_shape(const Jet& other, const char* op) const;

  std::shared_ptr<const MonomialLayout> layout_;
  std::vector<Complex> coeffs_;
};

using JetVector = std::vector<Jet>;

/// Dense row-major grid of jets sharing (n, d).
class JetMatrix {
 public:
  JetMatrix(int rows, int cols, int vars, int degree);
  static JetMatrix identity(int size, int vars, int degree);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int vars() const { return entries_.front().vars(); }
  int degree() const { return entries_.front().degree(); }

  Jet& operator()(int r, int c) { return entries_[r * cols_ + c]; }
  const Jet& operator()(int r, int c) const { return entries_[r * cols_ + c]; }

  /// Matrix of constant terms.
  CMatrix constant_part() const;

  friend JetMatrix operator*(const JetMatrix& lhs, const JetMatrix& rhs);

 private:
  int rows_;
  int cols_;
  std::vector<Jet> entries_;
};

/// Truncated Cauchy product.  Throws DimensionError on mismatched (n, d).
Jet jet_mul(const Jet& a, const Jet& b);

/// Formal derivative in variable `var` (0-based); the result has degree d-1
/// (degree 0 stays 0).
Jet jet_partial(const Jet& a, int var);

/// Copy of `a` truncated to a lower degree.
Jet jet_truncate(const Jet& a, int degree);

/// Principal-branch logarithm.  Throws BranchError when the constant term is
/// zero or lies on (-inf, 0].
Jet jet_log(const Jet& a);

/// Principal-branch power a^p.  Integer exponents skip the branch-cut check
/// (they are single valued) but still require a nonzero constant term when
/// negative.
Jet jet_pow(const Jet& a, Complex p);

Jet jet_exp(const Jet& a);
Jet jet_reciprocal(const Jet& a);

/// Substitutes the jets `inner` (one per variable of `outer`, all with zero
/// constant term) into `outer`.  The result lives in inner's (n, d).
Jet jet_compose(const Jet& outer, std::span<const Jet> inner);

/// Division-free determinant (Laplace expansion over column subsets).
Jet jet_det(const JetMatrix& m);

/// Gauss-Jordan inverse pivoting on constant terms.  Throws
/// SingularDifferentialError when the constant part is singular.
JetMatrix jet_matrix_inverse(const JetMatrix& m);

/// DF with (DF)_{lm} = d f_l / d z_m; entries have degree d-1.
JetMatrix jet_jacobian(std::span<const Jet> components);

/// d^2 a / dz_i dz_j at the expansion center.
Complex second_derivative(const Jet& a, int i, int j);

/// Throws DimensionError unless all jets share (n, d).
void require_uniform(std::span<const Jet> jets, const char* context);

/// The value of each component (the map evaluated at the center).
CVector constant_terms(std::span<const Jet> jets);

}  // namespace schwarzball

#endif  // SCHWARZBALL_JET_H_
