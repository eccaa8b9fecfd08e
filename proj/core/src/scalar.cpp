#include "kvn/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kvn {

Scalar& Scalar::operator+=(const Scalar& o) {
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + o.entries_.size());
  auto a = entries_.begin();
  auto b = o.entries_.begin();
  while (a != entries_.end() || b != o.entries_.end()) {
    if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      CRational c = a->second + b->second;
      if (!c.is_zero()) merged.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& [pa, ca] : a.entries_) {
    Scalar partial;
    partial.entries_.reserve(b.entries_.size());
    for (const auto& [pb, cb] : b.entries_) {
      CRational c = ca * cb;
      if (!c.is_zero()) partial.entries_.emplace_back(pa + pb, std::move(c));
    }
    out += partial;
  }
  return out;
}

Scalar Scalar::divided_by_i_hbar() const {
  Scalar out;
  const CRational inv_i(Rational(0), Rational(-1));  // 1/i = -i
  out.entries_.reserve(entries_.size());
  for (const auto& [p, c] : entries_) {
    if (p == 0)
      throw TheoryError("bracket value not divisible by i*hbar");
    out.entries_.emplace_back(p - 1, inv_i * c);
  }
  return out;
}

Scalar Scalar::inverse() const {
  if (entries_.size() != 1 || entries_.front().first != 0)
    throw Error("scalar not invertible (must be hbar-free and nonzero)");
  return Scalar(entries_.front().second.inverse());
}

std::complex<double> Scalar::evaluate(double hbar_value) const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [p, c] : entries_)
    acc += c.to_complex() * std::pow(hbar_value, p);
  return acc;
}

std::string to_string(const CRational& c) {
  auto rat = [](const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
  };
  if (c.is_zero()) return "0";
  if (c.im == 0) return rat(c.re);
  std::string imag = (c.im == 1) ? "i" : (c.im == -1 ? "-i" : rat(c.im) + "*i");
  if (c.re == 0) return imag;
  std::string s = "(" + rat(c.re);
  s += (c.im > 0) ? "+" : "-";
  if (c.im == 1 || c.im == -1)
    s += "i)";
  else
    s += rat(abs(c.im)) + "*i)";
  return s;
}

}  // namespace kvn
