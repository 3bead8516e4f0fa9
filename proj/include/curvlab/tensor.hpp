#pragma once

// Dense component arrays for tensors at a point, as plain numbers
// (TensorValue) or as jets carrying their derivatives (JetTensor).
// Components are stored row-major: the last slot varies fastest.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/jet.hpp"
#include "curvlab/linalg.hpp"

namespace curvlab {

enum class Slot : std::uint8_t { Covariant, Contravariant };
using Valence = std::vector<Slot>;

Valence covariant_valence(int rank);
std::string to_string(const Valence& valence);

struct Point {
  std::vector<double> coords;

  std::size_t size() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }
  friend bool operator==(const Point&, const Point&) = default;
};

std::size_t ipow(int base, int exp);

template <class Scalar>
class TensorArray {
 public:
  TensorArray() = default;
  TensorArray(int dim, Valence valence, const Scalar& fill = Scalar{})
      : dim_(dim),
        valence_(std::move(valence)),
        comps_(ipow(dim, static_cast<int>(valence_.size())), fill) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(valence_.size()); }
  const Valence& valence() const { return valence_; }
  std::size_t size() const { return comps_.size(); }

  // Distance between consecutive values of slot `s` in flat storage.
  std::size_t stride(int s) const { return ipow(dim_, rank() - 1 - s); }

  std::size_t flat(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank())
      throw ShapeError("index count " + std::to_string(idx.size()) + " for rank " +
                       std::to_string(rank()));
    std::size_t f = 0;
    for (int i : idx) {
      if (i < 0 || i >= dim_) throw ShapeError("tensor index out of range");
      f = f * dim_ + static_cast<std::size_t>(i);
    }
    return f;
  }
  // Slot indices of flat position `f`.
  std::vector<int> unflat(std::size_t f) const {
    std::vector<int> idx(rank());
    for (int s = rank() - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(f % dim_);
      f /= dim_;
    }
    return idx;
  }

  Scalar& operator[](std::size_t f) { return comps_[f]; }
  const Scalar& operator[](std::size_t f) const { return comps_[f]; }

  template <class... I>
  Scalar& operator()(I... idx) {
    const int list[] = {static_cast<int>(idx)...};
    return comps_[flat(list)];
  }
  template <class... I>
  const Scalar& operator()(I... idx) const {
    const int list[] = {static_cast<int>(idx)...};
    return comps_[flat(list)];
  }

  std::span<Scalar> components() { return comps_; }
  std::span<const Scalar> components() const { return comps_; }

 protected:
  int dim_ = 0;
  Valence valence_;
  std::vector<Scalar> comps_;
};

class TensorValue : public TensorArray<double> {
 public:
  TensorValue() = default;
  TensorValue(int dim, Valence valence, Point base = {})
      : TensorArray<double>(dim, std::move(valence), 0.0), base_(std::move(base)) {}

  const Point& base_point() const { return base_; }
  double max_abs() const;

 private:
  Point base_;
};

class JetTensor : public TensorArray<Jet> {
 public:
  JetTensor() = default;
  // Zero jets of the given shape.
  JetTensor(int dim, Valence valence, int n_vars, int order);

  int order() const { return order_; }
  int n_vars() const { return n_vars_; }

  JetTensor truncated(int order) const;
  // Constant terms.
  TensorValue value(const Point& base = {}) const;

 private:
  int n_vars_ = 0;
  int order_ = -1;
};

// An orthonormal frame for a metric at a point: columns of `vectors` are the
// frame vectors in coordinates, `dual` = vectors^-1.
struct Frame {
  Matrix vectors;
  Matrix dual;
};

Frame orthonormal_frame(const Matrix& metric);
// Frame built from given g-orthonormal columns (e.g. Ricci eigenvectors).
Frame frame_from_vectors(const Matrix& vectors);

// Components of t in the frame (covariant slots via vectors, contravariant via dual).
TensorValue to_frame(const TensorValue& t, const Frame& frame);

}  // namespace curvlab
