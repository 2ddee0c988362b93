#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace racmod {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Dense univariate polynomial, coefficients in increasing degree, trailing
// zeros trimmed (the zero polynomial has no coefficients).
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coefficients() const { return c_; }
  T coefficient(int i) const { return i >= 0 && i <= degree() ? c_[i] : T(0); }
  const T& leading() const { return c_.back(); }

  template <typename X>
  X operator()(const X& x) const {
    X acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<T> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * T(i));
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(const T& s, const Polynomial& a) {
    std::vector<T> r = a.c_;
    for (auto& x : r) x *= s;
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Euclidean division over a field: a = q*b + r, deg r < deg b.
  static void divide(const Polynomial& a, const Polynomial& b, Polynomial& quot,
                     Polynomial& rem) {
    std::vector<T> r = a.c_;
    std::vector<T> qc(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0, T(0));
    for (int i = a.degree(); i >= b.degree(); --i) {
      T f = r[i] / b.leading();
      qc[i - b.degree()] = f;
      for (int j = 0; j <= b.degree(); ++j) r[i - b.degree() + j] -= f * b.c_[j];
    }
    quot = Polynomial(std::move(qc));
    rem = Polynomial(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPolynomial = Polynomial<BigInt>;
using RatPolynomial = Polynomial<Rational>;

RatPolynomial to_rational(const IntPolynomial& p);

// Sturm chain of the square-free part of p; counts distinct real roots.
class SturmChain {
 public:
  explicit SturmChain(const RatPolynomial& p);

  // Number of distinct real roots in (a, b], a < b.
  int roots_in(const Rational& a, const Rational& b) const;
  const RatPolynomial& squarefree() const { return chain_.front(); }

 private:
  int sign_changes(const Rational& x) const;
  std::vector<RatPolynomial> chain_;
};

// Cauchy bound: every real root has |x| < bound.
Rational root_bound(const RatPolynomial& p);

std::string to_string(const IntPolynomial& p);

}  // namespace racmod
