#pragma once
// Tiny univariate polynomials over Q, used for quantities that depend
// affinely (edge offsets, lattice lengths) or quadratically (polygon areas)
// on the momentum level t.

#include "sfh/exact.hpp"

namespace sfh {

class Poly {
 public:
  Poly() = default;
  Poly(const Rat& c) : c_{c} { trim(); }        // NOLINT: implicit by design
  Poly(long c) : c_{Rat(c)} { trim(); }          // NOLINT
  static Poly affine(const Rat& a, const Rat& b) { return Poly(std::vector<Rat>{a, b}); }
  static Poly t() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }
  explicit Poly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }

  int degree() const { return int(c_.size()) - 1; }  // -1 for the zero poly
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_affine() const { return c_.size() <= 2; }
  Rat coeff(int i) const { return i < int(c_.size()) ? c_[i] : Rat(0); }
  Rat constant() const { return coeff(0); }
  Rat slope() const { return coeff(1); }  // meaningful for affine polys

  Rat eval(const Rat& t) const {
    Rat v(0);
    for (int i = degree(); i >= 0; --i) v = v * t + c_[i];
    return v;
  }

  Poly operator+(const Poly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (o * Rat(-1)); }
  Poly operator-() const { return *this * Rat(-1); }
  Poly operator*(const Rat& f) const {
    std::vector<Rat> r = c_;
    for (auto& x : r) x *= f;
    return Poly(std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
  }
  Poly operator/(const Rat& f) const { return *this * (Rat(1) / f); }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  std::string str() const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;  // c_[i] * t^i
};

inline std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = 0; i <= degree(); ++i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += c_[i] > 0 ? " + " : " - ";
    else if (c_[i] < 0) s += "-";
    Rat a = abs(c_[i]);
    std::string term;
    if (a != 1 || i == 0) term = rat_to_string(a);
    if (i >= 1) {
      if (!term.empty()) term += "*";
      term += "t";
      if (i > 1) term += "^" + std::to_string(i);
    }
    s += term;
  }
  return s;
}

using PolyVec = std::vector<Poly>;

}  // namespace sfh
