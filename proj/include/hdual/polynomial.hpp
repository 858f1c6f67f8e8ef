#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "hdual/point.hpp"

namespace hdual {

using Exponents = std::array<std::uint8_t, kMaxPointDim>;

// Real multivariate polynomial in n variables, sparse over monomials.
class Polynomial {
 public:
  explicit Polynomial(int n = 0) : n_(n) {}

  static Polynomial constant(int n, double c);
  // x_i (0-based variable index).
  static Polynomial variable(int n, int i);

  int dim() const noexcept { return n_; }
  const std::map<Exponents, double>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int total_degree() const noexcept;

  // Adds coeff * x^powers; powers.size() must equal n.
  Polynomial& add_term(double coeff, const std::vector<int>& powers);
  Polynomial& add_term(double coeff, const Exponents& powers);
  Polynomial& add_term(double coeff, std::initializer_list<int> powers) {
    return add_term(coeff, std::vector<int>(powers));
  }

  double evaluate(const Point& x) const;
  Polynomial derivative(int i) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  void prune();

  int n_;
  std::map<Exponents, double> terms_;
};

}  // namespace hdual
