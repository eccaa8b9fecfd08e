#pragma once

#include <compare>
#include <memory>
#include <string>

namespace kvn {

// The kind order doubles as the global normal-ordering rank within a degree
// of freedom: q < p~ < q~ < p. Positions-left makes the normal form line up
// with the del_q-before-del_p reading of the bracket expansion.
enum class SymbolKind : uint8_t {
  Position = 0,
  TildeMomentum = 1,
  TildePosition = 2,
  Momentum = 3,
  Parameter = 4,
};

inline bool is_tilde(SymbolKind k) {
  return k == SymbolKind::TildeMomentum || k == SymbolKind::TildePosition;
}
inline bool is_position_like(SymbolKind k) {
  return k == SymbolKind::Position || k == SymbolKind::TildePosition;
}
inline bool is_momentum_like(SymbolKind k) {
  return k == SymbolKind::Momentum || k == SymbolKind::TildeMomentum;
}

// A dynamical variable or central parameter. Phase-space symbols are
// identified by (kind, dof); parameters by name and commute with everything.
class Symbol {
 public:
  Symbol() = default;

  static Symbol position(int dof) { return Symbol(SymbolKind::Position, dof); }
  static Symbol momentum(int dof) { return Symbol(SymbolKind::Momentum, dof); }
  static Symbol tilde_position(int dof) {
    return Symbol(SymbolKind::TildePosition, dof);
  }
  static Symbol tilde_momentum(int dof) {
    return Symbol(SymbolKind::TildeMomentum, dof);
  }
  static Symbol parameter(const std::string& name) {
    Symbol s(SymbolKind::Parameter, 0);
    s.name_ = std::make_shared<const std::string>(name);
    return s;
  }

  SymbolKind kind() const { return kind_; }
  int dof() const { return dof_; }
  bool is_parameter() const { return kind_ == SymbolKind::Parameter; }
  bool is_tilde() const { return kvn::is_tilde(kind_); }
  const std::string& parameter_name() const { return *name_; }

  // Global ordering: parameters first (by name), then (dof, kind rank).
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
    if (a.is_parameter() != b.is_parameter())
      return a.is_parameter() ? std::strong_ordering::less
                              : std::strong_ordering::greater;
    if (a.is_parameter()) {
      int c = a.parameter_name().compare(b.parameter_name());
      return c <=> 0;
    }
    if (a.dof_ != b.dof_) return a.dof_ <=> b.dof_;
    return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  }
  friend bool operator==(const Symbol& a, const Symbol& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  // Default ASCII spelling: q, p, q~, p~ with _<dof> inserted for
  // multi-degree-of-freedom theories (q_2~, p_1, ...).
  std::string default_name(bool with_index) const;

 private:
  Symbol(SymbolKind k, int dof) : kind_(k), dof_(dof) {}

  SymbolKind kind_{SymbolKind::Parameter};
  int dof_{0};
  std::shared_ptr<const std::string> name_;
};

}  // namespace kvn
