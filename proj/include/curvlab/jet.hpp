#pragma once

// Multivariate truncated Taylor polynomials ("jets").
//
// A Jet over n variables truncated at order K stores, for every multi-index
// alpha with |alpha| <= K, the normalized coefficient d^alpha f / alpha! of
// the represented function at the base point. Coefficients are laid out in
// graded order (by total degree, then descending lexicographic within a
// degree), so a jet of order K-1 is a prefix of the same jet at order K.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace curvlab {

struct MultiIndex {
  std::vector<int> exponents;

  int order() const;
  // alpha! = prod(alpha_i!)
  double factorial() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

// Enumeration and multiplication tables for a fixed (n_vars, max_order).
// Instances are created once per shape and shared; they are immutable.
class JetSpace {
 public:
  struct Product {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };

  static const JetSpace& get(int n_vars, int max_order);

  int n_vars() const { return n_vars_; }
  int max_order() const { return max_order_; }
  std::size_t size() const { return indices_.size(); }

  const MultiIndex& index(std::size_t rank) const { return indices_[rank]; }
  std::size_t rank(const MultiIndex& alpha) const;
  int degree(std::size_t rank) const { return degrees_[rank]; }
  // Ranks [degree_begin(d), degree_begin(d + 1)) hold the degree-d terms.
  std::size_t degree_begin(int d) const { return degree_begin_[d]; }

  // Rank of alpha + e_var, or -1 when that exceeds max_order.
  std::ptrdiff_t raised(std::size_t rank, int var) const {
    return raised_[rank * n_vars_ + var];
  }

  // All (lhs, rhs, out) rank triples with |lhs| + |rhs| <= max_order.
  std::span<const Product> products() const { return products_; }

 private:
  JetSpace(int n_vars, int max_order);

  int n_vars_;
  int max_order_;
  std::vector<MultiIndex> indices_;
  std::vector<int> degrees_;
  std::vector<std::size_t> degree_begin_;
  std::vector<std::ptrdiff_t> raised_;
  std::vector<std::ptrdiff_t> lookup_;  // dense key -> rank
  std::vector<Product> products_;

  std::size_t key(std::span<const int> exponents) const;
};

// Number of coefficients of a jet: C(n_vars + max_order, n_vars).
std::size_t jet_size(int n_vars, int max_order);

class Jet {
 public:
  Jet() = default;
  Jet(int n_vars, int max_order);

  static Jet constant(double value, int n_vars, int max_order);
  static Jet variable(int var, double value, int n_vars, int max_order);

  int n_vars() const { return space_ ? space_->n_vars() : 0; }
  int max_order() const { return space_ ? space_->max_order() : -1; }
  const JetSpace& space() const { return *space_; }

  double value() const { return coeffs_[0]; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }
  double operator[](std::size_t rank) const { return coeffs_[rank]; }
  double& operator[](std::size_t rank) { return coeffs_[rank]; }

  // Coefficient times alpha!, i.e. the alpha-partial derivative.
  double partial(const MultiIndex& alpha) const;

  // Drop every term above `order` (order <= max_order).
  Jet truncated(int order) const;
  // d/dx_var; the result has one order less.
  Jet derivative(int var) const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(double s);
  Jet& operator+=(double c);

  // this += scale * a * b, truncated to this jet's order.
  void add_product(const Jet& a, const Jet& b, double scale = 1.0);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double c) { return a += c; }
  friend Jet operator+(double c, Jet a) { return a += c; }
  friend Jet operator-(Jet a, double c) { return a += -c; }
  friend Jet operator-(double c, const Jet& a) { return (a * -1.0) + c; }
  friend Jet operator-(Jet a) { return a *= -1.0; }

 private:
  const JetSpace* space_ = nullptr;
  std::vector<double> coeffs_;

  void require_same_shape(const Jet& other) const;
};

Jet operator/(const Jet& a, const Jet& b);
Jet operator/(double c, const Jet& b);
Jet operator/(Jet a, double c);

Jet recip(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, double exponent);

// Compose a univariate series with a jet: returns sum_k taylor[k] * (a - a0)^k,
// where taylor[k] = f^(k)(a0) / k!. Terms beyond the jet's order are ignored.
Jet compose(std::span<const double> taylor, const Jet& a);

inline Jet jet_variable(int var, double value, int n_vars, int max_order) {
  return Jet::variable(var, value, n_vars, max_order);
}

inline double extract_partial(const Jet& a, const MultiIndex& alpha) {
  return a.partial(alpha);
}

}  // namespace curvlab
