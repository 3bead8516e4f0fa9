#include "curvlab/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace curvlab {

Valence covariant_valence(int rank) { return Valence(rank, Slot::Covariant); }

std::string to_string(const Valence& valence) {
  std::string s = "(";
  for (std::size_t i = 0; i < valence.size(); ++i) {
    if (i) s += ",";
    s += valence[i] == Slot::Covariant ? "down" : "up";
  }
  return s + ")";
}

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

double TensorValue::max_abs() const {
  double m = 0.0;
  for (double c : comps_) m = std::max(m, std::abs(c));
  return m;
}

JetTensor::JetTensor(int dim, Valence valence, int n_vars, int order)
    : TensorArray<Jet>(dim, std::move(valence), Jet(n_vars, order)),
      n_vars_(n_vars),
      order_(order) {}

JetTensor JetTensor::truncated(int order) const {
  if (order == order_) return *this;
  JetTensor out;
  out.dim_ = dim_;
  out.valence_ = valence_;
  out.n_vars_ = n_vars_;
  out.order_ = order;
  out.comps_.reserve(comps_.size());
  for (const auto& c : comps_) out.comps_.push_back(c.truncated(order));
  return out;
}

TensorValue JetTensor::value(const Point& base) const {
  TensorValue out(dim_, valence_, base);
  for (std::size_t f = 0; f < comps_.size(); ++f) out[f] = comps_[f].value();
  return out;
}

Frame orthonormal_frame(const Matrix& metric) {
  // g = L L^T, E = L^-T satisfies E^T g E = I.
  const Matrix linv = inverse(cholesky(metric));
  Frame f;
  f.vectors = linv.transposed();
  f.dual = inverse(f.vectors);
  return f;
}

Frame frame_from_vectors(const Matrix& vectors) { return Frame{vectors, inverse(vectors)}; }

TensorValue to_frame(const TensorValue& t, const Frame& frame) {
  const int n = t.dim();
  TensorValue cur = t;
  for (int s = 0; s < t.rank(); ++s) {
    TensorValue next(n, t.valence(), t.base_point());
    const std::size_t st = cur.stride(s);
    const bool cov = t.valence()[s] == Slot::Covariant;
    for (std::size_t f = 0; f < cur.size(); ++f) {
      const int a = static_cast<int>((f / st) % n);
      const std::size_t base = f - static_cast<std::size_t>(a) * st;
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        const double m = cov ? frame.vectors(i, a) : frame.dual(a, i);
        sum += m * cur[base + static_cast<std::size_t>(i) * st];
      }
      next[f] = sum;
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace curvlab
