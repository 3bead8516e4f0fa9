#include "curvlab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "curvlab/errors.hpp"

namespace curvlab {

int MultiIndex::order() const {
  int total = 0;
  for (int e : exponents) total += e;
  return total;
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : exponents)
    for (int k = 2; k <= e; ++k) f *= k;
  return f;
}

std::size_t jet_size(int n_vars, int max_order) {
  // C(n + K, n) computed incrementally; exact for the sizes used here.
  std::size_t c = 1;
  for (int i = 1; i <= n_vars; ++i) c = c * static_cast<std::size_t>(max_order + i) / i;
  return c;
}

namespace {

// Exponent tuples of total degree `d` in descending lexicographic order.
void enumerate_degree(int n, int d, std::vector<int>& prefix,
                      std::vector<MultiIndex>& out) {
  const int pos = static_cast<int>(prefix.size());
  if (pos == n - 1) {
    prefix.push_back(d);
    out.push_back(MultiIndex{prefix});
    prefix.pop_back();
    return;
  }
  for (int e = d; e >= 0; --e) {
    prefix.push_back(e);
    enumerate_degree(n, d - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

JetSpace::JetSpace(int n_vars, int max_order) : n_vars_(n_vars), max_order_(max_order) {
  std::vector<int> prefix;
  degree_begin_.reserve(max_order + 2);
  for (int d = 0; d <= max_order; ++d) {
    degree_begin_.push_back(indices_.size());
    enumerate_degree(n_vars, d, prefix, indices_);
  }
  degree_begin_.push_back(indices_.size());

  degrees_.reserve(indices_.size());
  for (const auto& alpha : indices_) degrees_.push_back(alpha.order());

  std::size_t lookup_size = 1;
  for (int i = 0; i < n_vars; ++i) lookup_size *= static_cast<std::size_t>(max_order + 1);
  lookup_.assign(lookup_size, -1);
  for (std::size_t r = 0; r < indices_.size(); ++r) lookup_[key(indices_[r].exponents)] = static_cast<std::ptrdiff_t>(r);

  raised_.assign(indices_.size() * n_vars, -1);
  std::vector<int> work(n_vars);
  for (std::size_t r = 0; r < indices_.size(); ++r) {
    if (degrees_[r] == max_order) continue;
    for (int v = 0; v < n_vars; ++v) {
      work = indices_[r].exponents;
      ++work[v];
      raised_[r * n_vars + v] = lookup_[key(work)];
    }
  }

  for (std::size_t a = 0; a < indices_.size(); ++a) {
    const int room = max_order - degrees_[a];
    const std::size_t b_end = degree_begin_[room + 1];
    for (std::size_t b = 0; b < b_end; ++b) {
      for (int v = 0; v < n_vars; ++v)
        work[v] = indices_[a].exponents[v] + indices_[b].exponents[v];
      products_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                           static_cast<std::uint32_t>(lookup_[key(work)])});
    }
  }
}

std::size_t JetSpace::key(std::span<const int> exponents) const {
  std::size_t k = 0;
  for (int e : exponents) k = k * static_cast<std::size_t>(max_order_ + 1) + static_cast<std::size_t>(e);
  return k;
}

std::size_t JetSpace::rank(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.exponents.size()) != n_vars_)
    throw ShapeError("multi-index has " + std::to_string(alpha.exponents.size()) +
                     " entries, expected " + std::to_string(n_vars_));
  for (int e : alpha.exponents)
    if (e < 0) throw ShapeError("negative exponent in multi-index");
  if (alpha.order() > max_order_)
    throw JetBudgetError("multi-index order " + std::to_string(alpha.order()) +
                         " exceeds jet order " + std::to_string(max_order_));
  return static_cast<std::size_t>(lookup_[key(alpha.exponents)]);
}

const JetSpace& JetSpace::get(int n_vars, int max_order) {
  if (n_vars < 1 || max_order < 0)
    throw ShapeError("invalid jet shape (" + std::to_string(n_vars) + ", " +
                     std::to_string(max_order) + ")");
  thread_local const JetSpace* recent[9][11] = {};
  const bool small = n_vars <= 8 && max_order <= 10;
  if (small && recent[n_vars][max_order]) return *recent[n_vars][max_order];
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n_vars, max_order}];
  if (!slot) slot.reset(new JetSpace(n_vars, max_order));
  if (small) recent[n_vars][max_order] = slot.get();
  return *slot;
}

Jet::Jet(int n_vars, int max_order)
    : space_(&JetSpace::get(n_vars, max_order)), coeffs_(space_->size(), 0.0) {}

Jet Jet::constant(double value, int n_vars, int max_order) {
  Jet j(n_vars, max_order);
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(int var, double value, int n_vars, int max_order) {
  if (var < 0 || var >= n_vars)
    throw ShapeError("variable index " + std::to_string(var) + " out of range for " +
                     std::to_string(n_vars) + " variables");
  Jet j(n_vars, max_order);
  j.coeffs_[0] = value;
  if (max_order >= 1) j.coeffs_[1 + var] = 1.0;
  return j;
}

double Jet::partial(const MultiIndex& alpha) const {
  return coeffs_[space_->rank(alpha)] * alpha.factorial();
}

Jet Jet::truncated(int order) const {
  if (order > max_order())
    throw JetBudgetError("cannot raise jet order from " + std::to_string(max_order()) + " to " +
                         std::to_string(order));
  if (order == max_order()) return *this;
  Jet out(n_vars(), order);
  std::copy_n(coeffs_.begin(), out.coeffs_.size(), out.coeffs_.begin());
  return out;
}

Jet Jet::derivative(int var) const {
  if (var < 0 || var >= n_vars()) throw ShapeError("derivative variable out of range");
  if (max_order() < 1) throw JetBudgetError("cannot differentiate an order-0 jet");
  Jet out(n_vars(), max_order() - 1);
  for (std::size_t r = 0; r < out.coeffs_.size(); ++r) {
    const auto up = space_->raised(r, var);
    out.coeffs_[r] = coeffs_[up] * (space_->index(r).exponents[var] + 1);
  }
  return out;
}

void Jet::require_same_shape(const Jet& other) const {
  if (space_ != other.space_)
    throw ShapeError("jet shape mismatch: (" + std::to_string(n_vars()) + ", " +
                     std::to_string(max_order()) + ") vs (" + std::to_string(other.n_vars()) +
                     ", " + std::to_string(other.max_order()) + ")");
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_same_shape(rhs);
  for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] += rhs.coeffs_[r];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_same_shape(rhs);
  for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] -= rhs.coeffs_[r];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Jet& Jet::operator+=(double c) {
  coeffs_[0] += c;
  return *this;
}

void Jet::add_product(const Jet& a, const Jet& b, double scale) {
  if (a.n_vars() != n_vars() || b.n_vars() != n_vars())
    throw ShapeError("jet variable count mismatch in product");
  if (a.max_order() < max_order() || b.max_order() < max_order())
    throw JetBudgetError("product operand has lower order than the accumulator");
  const double* pa = a.coeffs_.data();
  const double* pb = b.coeffs_.data();
  double* po = coeffs_.data();
  for (const auto& t : space_->products()) po[t.out] += scale * pa[t.lhs] * pb[t.rhs];
}

Jet operator*(const Jet& a, const Jet& b) {
  a.require_same_shape(b);
  Jet out(a.n_vars(), a.max_order());
  out.add_product(a, b);
  return out;
}

Jet compose(std::span<const double> taylor, const Jet& a) {
  const int order = a.max_order();
  Jet h = a;
  h[0] = 0.0;
  const int top = std::min<int>(order, static_cast<int>(taylor.size()) - 1);
  Jet result = Jet::constant(taylor[top], a.n_vars(), order);
  for (int k = top - 1; k >= 0; --k) {
    Jet next = Jet::constant(taylor[k], a.n_vars(), order);
    next.add_product(result, h);
    result = std::move(next);
  }
  return result;
}

namespace {

std::vector<double> power_series(double a0, double p, int order) {
  std::vector<double> t(order + 1, 0.0);
  const bool integral = p == std::floor(p);
  if (a0 == 0.0) {
    if (!integral || p < 0) throw DomainError("power with exponent " + std::to_string(p) + " at 0");
    if (p <= order) t[static_cast<int>(p)] = 1.0;
    return t;
  }
  if (a0 < 0.0 && !integral)
    throw DomainError("non-integer power of negative value " + std::to_string(a0));
  t[0] = std::pow(a0, p);
  for (int k = 1; k <= order; ++k) t[k] = t[k - 1] * (p - k + 1) / (k * a0);
  return t;
}

}  // namespace

Jet pow(const Jet& a, double exponent) {
  return compose(power_series(a.value(), exponent, a.max_order()), a);
}

Jet recip(const Jet& a) {
  if (a.value() == 0.0) throw DomainError("reciprocal of a jet with zero constant term");
  return pow(a, -1.0);
}

Jet sqrt(const Jet& a) {
  if (!(a.value() > 0.0)) throw DomainError("sqrt of non-positive value " + std::to_string(a.value()));
  return pow(a, 0.5);
}

Jet sin(const Jet& a) {
  const int order = a.max_order();
  const double s = std::sin(a.value()), c = std::cos(a.value());
  std::vector<double> t(order + 1);
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    const double d = (k % 4 == 0) ? s : (k % 4 == 1) ? c : (k % 4 == 2) ? -s : -c;
    t[k] = d / fact;
  }
  return compose(t, a);
}

Jet cos(const Jet& a) {
  const int order = a.max_order();
  const double s = std::sin(a.value()), c = std::cos(a.value());
  std::vector<double> t(order + 1);
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    const double d = (k % 4 == 0) ? c : (k % 4 == 1) ? -s : (k % 4 == 2) ? -c : s;
    t[k] = d / fact;
  }
  return compose(t, a);
}

Jet exp(const Jet& a) {
  const int order = a.max_order();
  std::vector<double> t(order + 1);
  t[0] = std::exp(a.value());
  for (int k = 1; k <= order; ++k) t[k] = t[k - 1] / k;
  return compose(t, a);
}

Jet log(const Jet& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw DomainError("log of non-positive value " + std::to_string(a0));
  const int order = a.max_order();
  std::vector<double> t(order + 1);
  t[0] = std::log(a0);
  double pw = 1.0;
  for (int k = 1; k <= order; ++k) {
    pw *= a0;
    t[k] = ((k % 2 == 1) ? 1.0 : -1.0) / (k * pw);
  }
  return compose(t, a);
}

Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
Jet operator/(double c, const Jet& b) { return recip(b) * c; }
Jet operator/(Jet a, double c) { return a *= 1.0 / c; }

}  // namespace curvlab
