#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "hdual/errors.hpp"

namespace hdual {

inline constexpr int kMaxPointDim = 8;

// A point (or vector) of Euclidean n-space with inline storage, n <= 8.
class Point {
 public:
  Point() = default;
  explicit Point(int n) : n_(n) { check_dim(n); }
  Point(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
    check_dim(n_);
    std::size_t i = 0;
    for (double v : xs) x_[i++] = v;
  }
  explicit Point(std::span<const double> xs) : n_(static_cast<int>(xs.size())) {
    check_dim(n_);
    for (std::size_t i = 0; i < xs.size(); ++i) x_[i] = xs[i];
  }

  int dim() const noexcept { return n_; }
  double operator[](int i) const noexcept { return x_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) noexcept { return x_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const noexcept { return {x_.data(), static_cast<std::size_t>(n_)}; }
  std::vector<double> to_vector() const { return {x_.begin(), x_.begin() + n_}; }

  Point& operator+=(const Point& o) {
    same_dim(o);
    for (int i = 0; i < n_; ++i) x_[i] += o.x_[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    same_dim(o);
    for (int i = 0; i < n_; ++i) x_[i] -= o.x_[i];
    return *this;
  }
  Point& operator*=(double s) noexcept {
    for (int i = 0; i < n_; ++i) x_[i] *= s;
    return *this;
  }
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend bool operator==(const Point& a, const Point& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
      if (a.x_[i] != b.x_[i]) return false;
    return true;
  }

  double dot(const Point& o) const {
    same_dim(o);
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += x_[i] * o.x_[i];
    return s;
  }
  double norm() const { return std::sqrt(dot(*this)); }

 private:
  static void check_dim(int n) {
    if (n < 0 || n > kMaxPointDim) throw UnsupportedDimension("point dimension out of range");
  }
  void same_dim(const Point& o) const {
    if (o.n_ != n_) throw DimensionMismatch("point dimensions differ");
  }

  std::array<double, kMaxPointDim> x_{};
  int n_ = 0;
};

inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

}  // namespace hdual
