#include "kvn/relations.hpp"

#include <algorithm>
#include <map>

namespace kvn {

void RelationTable::set(const Symbol& a, const Symbol& b, Scalar commutator) {
  if (a.is_parameter() || b.is_parameter())
    throw TheoryError("parameters have no commutation relations");
  if (a == b) throw TheoryError("a symbol commutes with itself");
  symbols_.insert(a);
  symbols_.insert(b);
  if (b < a) commutator = -commutator;
  entries_[a < b ? std::make_pair(a, b) : std::make_pair(b, a)] =
      std::move(commutator);
}

Scalar RelationTable::commutator(const Symbol& a, const Symbol& b) const {
  if (a.is_parameter() || b.is_parameter() || a == b) return Scalar();
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  auto it = entries_.find(key);
  if (it == entries_.end())
    throw TheoryError("missing relation for symbol pair (" +
                      a.default_name(true) + ", " + b.default_name(true) + ")");
  return a < b ? it->second : -it->second;
}

bool RelationTable::covers(const Symbol& s) const {
  return s.is_parameter() || symbols_.count(s) > 0;
}

void RelationTable::require_coverage(const Expr& e) const {
  for (const auto& s : e.symbols())
    if (!covers(s))
      throw TheoryError("missing relation for symbol " + s.default_name(true));
}

const Symbol* RelationTable::conjugate_of(const Symbol& s) const {
  // The partner X with [[s, X]] = 1 (positions) or [[X, s]] = 1 (momenta).
  for (const auto& [key, value] : entries_) {
    if (value.is_zero()) continue;
    if (key.first == s) return &key.second;
    if (key.second == s) return &key.first;
  }
  return nullptr;
}

Expr normal_form(const Expr& e, const RelationTable& table) {
  table.require_coverage(e);

  // Worklist rewriting: swap adjacent out-of-order factors, inserting the
  // central commutator term. Commutators are scalars, so the contracted
  // branch strictly shrinks and the recursion terminates.
  std::vector<Term> done;
  std::vector<Term> todo(e.terms().begin(), e.terms().end());
  while (!todo.empty()) {
    Term t = std::move(todo.back());
    todo.pop_back();
    size_t i = 0;
    bool sorted = true;
    for (; i + 1 < t.ops.size(); ++i) {
      if (t.ops[i + 1] < t.ops[i]) {
        sorted = false;
        break;
      }
    }
    if (sorted) {
      done.push_back(std::move(t));
      continue;
    }
    // a b -> b a + [a, b]
    Scalar c = table.commutator(t.ops[i], t.ops[i + 1]);
    if (!c.is_zero()) {
      Term contracted = t;
      contracted.coeff = contracted.coeff * c;
      contracted.ops.erase(contracted.ops.begin() + static_cast<long>(i),
                           contracted.ops.begin() + static_cast<long>(i) + 2);
      todo.push_back(std::move(contracted));
    }
    std::swap(t.ops[i], t.ops[i + 1]);
    todo.push_back(std::move(t));
  }
  return Expr::from_terms(std::move(done));
}

bool equal_mod(const Expr& a, const Expr& b, const RelationTable& table) {
  return normal_form(a - b, table).is_zero();
}

}  // namespace kvn
