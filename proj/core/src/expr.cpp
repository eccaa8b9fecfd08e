#include "kvn/expr.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kvn {

namespace {

std::strong_ordering compare_factors(const Term& a, const Term& b) {
  if (auto c = std::lexicographical_compare_three_way(
          a.ops.begin(), a.ops.end(), b.ops.begin(), b.ops.end());
      c != 0)
    return c;
  return std::lexicographical_compare_three_way(
      a.params.begin(), a.params.end(), b.params.begin(), b.params.end(),
      [](const auto& x, const auto& y) {
        if (auto c = x.first <=> y.first; c != 0) return c;
        return x.second <=> y.second;
      });
}

void merge_params(std::vector<std::pair<Symbol, int>>& into,
                  const std::vector<std::pair<Symbol, int>>& from) {
  for (const auto& [sym, pow] : from) {
    auto it = std::lower_bound(
        into.begin(), into.end(), sym,
        [](const auto& entry, const Symbol& s) { return entry.first < s; });
    if (it != into.end() && it->first == sym) {
      it->second += pow;
      if (it->second == 0) into.erase(it);
    } else {
      into.insert(it, {sym, pow});
    }
  }
}

}  // namespace

Expr::Expr(Scalar s) {
  if (!s.is_zero()) {
    Term t;
    t.coeff = std::move(s);
    terms_.push_back(std::move(t));
  }
}

Expr::Expr(const Symbol& s) {
  Term t;
  t.coeff = Scalar(1);
  if (s.is_parameter())
    t.params.emplace_back(s, 1);
  else
    t.ops.push_back(s);
  terms_.push_back(std::move(t));
}

Expr Expr::from_terms(std::vector<Term> terms) {
  Expr e;
  e.terms_ = std::move(terms);
  e.canonicalize();
  return e;
}

void Expr::canonicalize() {
  std::stable_sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    return compare_factors(a, b) < 0;
  });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && compare_factors(merged.back(), t) == 0)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
  terms_ = std::move(merged);
}

Scalar Expr::as_scalar() const {
  if (terms_.empty()) return Scalar();
  if (terms_.size() == 1 && terms_[0].scalar_like()) return terms_[0].coeff;
  throw Error("expression is not a pure scalar");
}

int Expr::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

bool Expr::hbar_free() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.coeff.hbar_free(); });
}

bool Expr::contains(const Symbol& s) const {
  for (const auto& t : terms_) {
    if (s.is_parameter()) {
      for (const auto& [sym, pow] : t.params)
        if (sym == s) return true;
    } else {
      for (const auto& sym : t.ops)
        if (sym == s) return true;
    }
  }
  return false;
}

bool Expr::contains_tilde() const {
  for (const auto& t : terms_)
    for (const auto& sym : t.ops)
      if (sym.is_tilde()) return true;
  return false;
}

std::set<Symbol> Expr::symbols() const {
  std::set<Symbol> out;
  for (const auto& t : terms_) out.insert(t.ops.begin(), t.ops.end());
  return out;
}

std::set<Symbol> Expr::all_symbols() const {
  std::set<Symbol> out = symbols();
  for (const auto& t : terms_)
    for (const auto& [sym, pow] : t.params) out.insert(sym);
  return out;
}

std::set<int> Expr::dofs() const {
  std::set<int> out;
  for (const auto& t : terms_)
    for (const auto& sym : t.ops) out.insert(sym.dof());
  return out;
}

Expr Expr::operator-() const {
  Expr e = *this;
  for (auto& t : e.terms_) t.coeff = -t.coeff;
  return e;
}

Expr operator+(const Expr& a, const Expr& b) {
  std::vector<Term> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return Expr::from_terms(std::move(terms));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Term t;
      t.coeff = ta.coeff * tb.coeff;
      if (t.coeff.is_zero()) continue;
      t.params = ta.params;
      merge_params(t.params, tb.params);
      t.ops = ta.ops;
      t.ops.insert(t.ops.end(), tb.ops.begin(), tb.ops.end());
      terms.push_back(std::move(t));
    }
  }
  return Expr::from_terms(std::move(terms));
}

Expr operator*(const Scalar& s, const Expr& e) {
  Expr out = e;
  for (auto& t : out.terms_) t.coeff = s * t.coeff;
  out.canonicalize();
  return out;
}

Expr Expr::divided_by(const Expr& divisor) const {
  if (divisor.terms_.size() != 1 || !divisor.terms_[0].ops.empty())
    throw Error("division is only defined by scalars and parameters");
  const Term& d = divisor.terms_[0];
  Scalar inv = d.coeff.inverse();
  std::vector<Term> terms = terms_;
  for (auto& t : terms) {
    t.coeff = t.coeff * inv;
    std::vector<std::pair<Symbol, int>> neg = d.params;
    for (auto& [sym, pow] : neg) pow = -pow;
    merge_params(t.params, neg);
  }
  return Expr::from_terms(std::move(terms));
}

Expr Expr::pow(int exponent) const {
  if (exponent < 0) throw Error("negative exponent");
  Expr acc = Expr::one();
  for (int k = 0; k < exponent; ++k) acc = acc * *this;
  return acc;
}

Expr Expr::hbar_term(int k) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    CRational c = t.coeff.at(k);
    if (c.is_zero()) continue;
    Term s = t;
    s.coeff = Scalar(std::move(c));
    out.push_back(std::move(s));
  }
  return Expr::from_terms(std::move(out));
}

Expr underline(const Expr& e) {
  std::vector<Term> terms = e.terms();
  for (auto& t : terms) std::sort(t.ops.begin(), t.ops.end());
  return Expr::from_terms(std::move(terms));
}

Expr underline_in(const Expr& e, const std::function<bool(int)>& mobile) {
  std::vector<Term> terms = e.terms();
  for (auto& t : terms) {
    std::vector<Symbol> movable;
    std::vector<Symbol> fixed;
    for (const auto& sym : t.ops) {
      if (sym.is_tilde())
        throw TheoryError(
            "commutative projection is defined on original variables only");
      (mobile(sym.dof()) ? movable : fixed).push_back(sym);
    }
    std::sort(movable.begin(), movable.end());
    // Movable symbols commute with everything; interleave them with the
    // fixed subsequence at their global-order positions.
    std::vector<Symbol> out;
    out.reserve(t.ops.size());
    auto m = movable.begin();
    for (const auto& f : fixed) {
      while (m != movable.end() && *m < f) out.push_back(*m++);
      out.push_back(f);
    }
    out.insert(out.end(), m, movable.end());
    t.ops = std::move(out);
  }
  return Expr::from_terms(std::move(terms));
}

Expr formal_derivative(const Expr& e, const Symbol& s) {
  if (s.is_parameter()) throw Error("derivatives act on operator symbols");
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    for (size_t i = 0; i < t.ops.size(); ++i) {
      if (!(t.ops[i] == s)) continue;
      Term d = t;
      d.ops.erase(d.ops.begin() + static_cast<long>(i));
      out.push_back(std::move(d));
    }
  }
  return Expr::from_terms(std::move(out));
}

Expr substitute(const Expr& e, const Symbol& s, const Expr& value) {
  Expr acc;
  for (const auto& t : e.terms()) {
    Term head;
    head.coeff = t.coeff;
    head.params = t.params;
    Expr product = Expr::from_terms({head});
    for (const auto& sym : t.ops)
      product = product * (sym == s ? value : Expr(sym));
    acc += product;
  }
  return acc;
}

std::string Expr::str(const std::function<std::string(const Symbol&)>& name) const {
  auto namer = name ? name : [](const Symbol& s) { return s.default_name(true); };
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    // One printed addend per hbar power of the coefficient.
    for (const auto& [hpow, crat] : t.coeff.entries()) {
      std::vector<std::string> numer;
      std::vector<std::string> denom;
      CRational c = crat;
      bool negative = false;
      if (c.im == 0 && c.re < 0) {
        negative = true;
        c = -c;
      } else if (c.re == 0 && c.im < 0) {
        negative = true;
        c = -c;
      }
      std::string cs = to_string(c);
      if (cs != "1") numer.push_back(cs);
      if (hpow > 0)
        numer.push_back(hpow == 1 ? "hbar" : "hbar^" + std::to_string(hpow));
      for (const auto& [sym, pow] : t.params) {
        std::string base = namer(sym);
        int a = pow > 0 ? pow : -pow;
        if (a != 1) base += "^" + std::to_string(a);
        (pow > 0 ? numer : denom).push_back(base);
      }
      for (size_t i = 0; i < t.ops.size();) {
        size_t j = i;
        while (j < t.ops.size() && t.ops[j] == t.ops[i]) ++j;
        std::string base = namer(t.ops[i]);
        if (j - i > 1) base += "^" + std::to_string(j - i);
        numer.push_back(base);
        i = j;
      }
      if (numer.empty()) numer.push_back("1");
      if (!first)
        os << (negative ? " - " : " + ");
      else if (negative)
        os << "-";
      first = false;
      for (size_t i = 0; i < numer.size(); ++i) {
        if (i) os << "*";
        os << numer[i];
      }
      for (const auto& d : denom) os << "/" << d;
    }
  }
  return os.str();
}

}  // namespace kvn
