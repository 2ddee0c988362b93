#include "racmod/polynomial.hpp"

#include "racmod/error.hpp"

namespace racmod {

RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> c;
  c.reserve(p.coefficients().size());
  for (const auto& x : p.coefficients()) c.emplace_back(x);
  return RatPolynomial(std::move(c));
}

namespace {

RatPolynomial monic_gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    RatPolynomial q, r;
    RatPolynomial::divide(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return (Rational(1) / a.leading()) * a;
}

}  // namespace

SturmChain::SturmChain(const RatPolynomial& p) {
  if (p.is_zero()) throw DomainError("Sturm chain of the zero polynomial");
  RatPolynomial sf = p;
  if (p.degree() > 0) {
    RatPolynomial g = monic_gcd(p, p.derivative());
    RatPolynomial rem;
    RatPolynomial::divide(p, g, sf, rem);
  }
  chain_.push_back(sf);
  if (sf.degree() <= 0) return;
  chain_.push_back(sf.derivative());
  while (chain_.back().degree() > 0) {
    RatPolynomial q, r;
    RatPolynomial::divide(chain_[chain_.size() - 2], chain_.back(), q, r);
    if (r.is_zero()) break;
    chain_.push_back(Rational(-1) * r);
  }
}

int SturmChain::sign_changes(const Rational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain_) {
    const Rational v = p(x);
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmChain::roots_in(const Rational& a, const Rational& b) const {
  return sign_changes(a) - sign_changes(b);
}

Rational root_bound(const RatPolynomial& p) {
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coefficient(i) / p.leading());
    if (r > m) m = r;
  }
  return m + 1;
}

std::string to_string(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int i = 0; i <= p.degree(); ++i) {
    const BigInt& c = p.coefficient(i);
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (i == 0 || mag != 1) s += mag.str();
    if (i >= 1) s += "t";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace racmod
