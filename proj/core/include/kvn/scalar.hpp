#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kvn/errors.hpp"

namespace kvn {

using Rational = boost::multiprecision::cpp_rational;

// Exact complex number with rational components.
struct CRational {
  Rational re{0};
  Rational im{0};

  CRational() = default;
  CRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  CRational(long r) : re(r) {}  // NOLINT(google-explicit-constructor)

  static CRational i() { return CRational(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  CRational operator-() const { return {-re, -im}; }
  CRational& operator+=(const CRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRational& operator-=(const CRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend CRational operator+(CRational a, const CRational& b) { return a += b; }
  friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
  friend CRational operator*(const CRational& a, const CRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  CRational inverse() const {
    Rational n = re * re + im * im;
    if (n == 0) throw Error("division by zero scalar");
    return {re / n, -im / n};
  }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

// A scalar coefficient: an exact polynomial in the formal symbol hbar with
// complex rational coefficients, sum over k >= 0 of (a_k + i b_k) hbar^k.
// Kept sorted by power with no zero entries.
class Scalar {
 public:
  using Entry = std::pair<int, CRational>;  // (hbar power, coefficient)

  Scalar() = default;
  Scalar(CRational c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) entries_.emplace_back(0, std::move(c));
  }
  Scalar(long n) : Scalar(CRational(n)) {}  // NOLINT(google-explicit-constructor)

  static Scalar hbar(int power = 1, CRational c = CRational(1)) {
    if (power < 0) throw Error("negative hbar power");
    Scalar s;
    if (!c.is_zero()) s.entries_.emplace_back(power, std::move(c));
    return s;
  }
  static Scalar i() { return Scalar(CRational::i()); }
  static Scalar i_hbar() { return hbar(1, CRational::i()); }

  bool is_zero() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  // Coefficient of hbar^k.
  CRational at(int k) const {
    for (const auto& [p, c] : entries_)
      if (p == k) return c;
    return CRational(0);
  }
  int max_power() const { return entries_.empty() ? 0 : entries_.back().first; }
  bool hbar_free() const { return entries_.empty() || entries_.back().first == 0; }

  Scalar operator-() const {
    Scalar s;
    s.entries_.reserve(entries_.size());
    for (const auto& [p, c] : entries_) s.entries_.emplace_back(p, -c);
    return s;
  }

  Scalar& operator+=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a += -b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.entries_ == b.entries_;
  }

  // Exact division by (i hbar). Fails when any term sits at hbar^0, which
  // signals a malformed relation table upstream.
  Scalar divided_by_i_hbar() const;

  // Multiplicative inverse, defined for hbar-free scalars only.
  Scalar inverse() const;

  // Numeric value with hbar set to a concrete number.
  std::complex<double> evaluate(double hbar_value) const;

 private:
  std::vector<Entry> entries_;
};

std::string to_string(const CRational& c);

}  // namespace kvn
