#include "hdual/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace hdual {

Polynomial Polynomial::constant(int n, double c) {
  Polynomial p(n);
  p.add_term(c, Exponents{});
  return p;
}

Polynomial Polynomial::variable(int n, int i) {
  if (i < 0 || i >= n) throw ArgumentError("polynomial variable index out of range");
  Polynomial p(n);
  Exponents e{};
  e[static_cast<std::size_t>(i)] = 1;
  p.add_term(1.0, e);
  return p;
}

int Polynomial::total_degree() const noexcept {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int i = 0; i < n_; ++i) s += e[static_cast<std::size_t>(i)];
    d = std::max(d, s);
  }
  return d;
}

Polynomial& Polynomial::add_term(double coeff, const std::vector<int>& powers) {
  if (static_cast<int>(powers.size()) != n_) throw DimensionMismatch("monomial arity differs from polynomial");
  Exponents e{};
  for (int i = 0; i < n_; ++i) {
    const int p = powers[static_cast<std::size_t>(i)];
    if (p < 0 || p > 255) throw ArgumentError("monomial exponent out of range");
    e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(p);
  }
  return add_term(coeff, e);
}

Polynomial& Polynomial::add_term(double coeff, const Exponents& powers) {
  if (coeff == 0.0) return *this;
  auto& slot = terms_[powers];
  slot += coeff;
  if (slot == 0.0) terms_.erase(powers);
  return *this;
}

double Polynomial::evaluate(const Point& x) const {
  if (x.dim() != n_) throw DimensionMismatch("polynomial evaluated at a point of wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) m *= x[i];
    sum += m;
  }
  return sum;
}

Polynomial Polynomial::derivative(int i) const {
  if (i < 0 || i >= n_) throw ArgumentError("derivative index out of range");
  Polynomial d(n_);
  const auto ui = static_cast<std::size_t>(i);
  for (const auto& [e, c] : terms_) {
    if (e[ui] == 0) continue;
    Exponents f = e;
    f[ui] = static_cast<std::uint8_t>(e[ui] - 1);
    d.add_term(c * e[ui], f);
  }
  return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.n_ != n_) throw DimensionMismatch("polynomial arities differ");
  for (const auto& [e, c] : o.terms_) add_term(c, e);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.n_ != n_) throw DimensionMismatch("polynomial arities differ");
  for (const auto& [e, c] : o.terms_) add_term(-c, e);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (auto& [e, c] : terms_) c *= s;
  prune();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("polynomial arities differ");
  Polynomial p(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e{};
      for (int i = 0; i < a.n_; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const int s = ea[ui] + eb[ui];
        if (s > 255) throw ArgumentError("monomial exponent overflow");
        e[ui] = static_cast<std::uint8_t>(s);
      }
      p.add_term(ca * cb, e);
    }
  return p;
}

void Polynomial::prune() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int i = 0; i < n_; ++i) {
      const int p = e[static_cast<std::size_t>(i)];
      if (p == 0) continue;
      os << "*x" << (i + 1);
      if (p > 1) os << '^' << p;
    }
  }
  return os.str();
}

}  // namespace hdual
