#include "kvn/model.hpp"

#include <fstream>
#include <sstream>

namespace kvn {

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

double parse_double(const std::string& s, int lineno) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(lineno) + ": bad number '" + s + "'");
  }
}

long parse_long(const std::string& s, int lineno) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(lineno) + ": bad integer '" + s + "'");
  }
}

}  // namespace

ModelFile parse_model_text(const std::string& text) {
  ModelFile m;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::vector<std::string> words = split_words(line);
    if (words.empty()) continue;
    const std::string& key = words[0];
    auto need = [&](size_t n) {
      if (words.size() < n + 1)
        throw ParseError("line " + std::to_string(lineno) + ": '" + key +
                         "' needs " + std::to_string(n) + " argument(s)");
    };
    auto rest_of_line = [&](const std::string& k) {
      size_t at = line.find(k);
      return line.substr(at + k.size());
    };

    if (key == "dofs") {
      need(1);
      m.dofs = static_cast<int>(parse_long(words[1], lineno));
    } else if (key == "deconjugate") {
      need(1);
      for (size_t i = 1; i < words.size(); ++i)
        m.deconjugate.insert(static_cast<int>(parse_long(words[i], lineno)));
    } else if (key == "param") {
      need(2);
      m.params.emplace_back(words[1], parse_double(words[2], lineno));
    } else if (key == "hbar") {
      need(1);
      m.hbar_value = parse_double(words[1], lineno);
    } else if (key == "hamiltonian") {
      need(1);
      m.hamiltonian_text = rest_of_line(key);
    } else if (key == "alpha") {
      need(1);
      m.alpha_text = rest_of_line(key);
    } else if (key == "grid") {
      need(4);
      m.grid_axes.push_back({words[1], parse_double(words[2], lineno),
                             parse_double(words[3], lineno),
                             static_cast<int>(parse_long(words[4], lineno))});
    } else if (key == "state") {
      need(2);
      GaussianAxis g;
      for (size_t i = 2; i < words.size(); ++i) {
        auto eq = words[i].find('=');
        if (eq == std::string::npos)
          throw ParseError("line " + std::to_string(lineno) +
                           ": state expects key=value pairs");
        std::string k = words[i].substr(0, eq);
        double v = parse_double(words[i].substr(eq + 1), lineno);
        if (k == "center") g.center = v;
        else if (k == "sigma") g.sigma = v;
        else if (k == "pgrad") g.pgrad = v;
        else
          throw ParseError("line " + std::to_string(lineno) +
                           ": unknown state key '" + k + "'");
      }
      m.states[words[1]] = g;
    } else if (key == "dt") {
      need(1);
      m.dt = parse_double(words[1], lineno);
    } else if (key == "steps") {
      need(1);
      m.steps = parse_long(words[1], lineno);
    } else if (key == "t_final") {
      need(1);
      m.t_final = parse_double(words[1], lineno);
    } else if (key == "qtilde_offset") {
      need(1);
      m.qtilde_offset = parse_double(words[1], lineno);
    } else if (key == "observe") {
      need(1);
      m.observes.push_back(rest_of_line(key));
    } else if (key == "command") {
      need(1);
      m.commands.emplace_back(words.begin() + 1, words.end());
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" +
                       key + "'");
    }
  }
  m.finalize();
  return m;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_text(buf.str());
}

void ModelFile::finalize() {
  if (dofs < 1) throw ParseError("model must declare dofs >= 1");
  scope = SymbolScope::for_dofs(dofs);
  for (int d : deconjugate) {
    if (d < 1 || d > dofs) throw ParseError("deconjugate index out of range");
    scope.declare_tilde(d);
  }
  for (const auto& [name, value] : params) scope.declare_parameter(name);
  theory = build_theory(dofs, deconjugate);
  if (hamiltonian_text.empty()) throw ParseError("model must declare a hamiltonian");
  hamiltonian = parse_expr(hamiltonian_text, scope);
  alpha = alpha_text ? parse_expr(*alpha_text, scope) : Expr::zero();
  for (const auto& ax : grid_axes)
    if (!scope.lookup(ax.symbol))
      throw ParseError("grid axis symbol '" + ax.symbol + "' not declared");
  for (const auto& [name, g] : states) {
    bool found = false;
    for (const auto& ax : grid_axes) found = found || ax.symbol == name;
    if (!found)
      throw ParseError("state symbol '" + name + "' has no grid axis");
  }
}

std::map<std::string, double> ModelFile::param_values() const {
  std::map<std::string, double> out;
  for (const auto& [name, value] : params) out[name] = value;
  return out;
}

PhaseGrid ModelFile::build_grid() const {
  if (grid_axes.empty()) throw TheoryError("model declares no grid");
  std::vector<Axis> axes;
  for (const auto& ax : grid_axes) {
    auto sym = scope.lookup(ax.symbol);
    axes.push_back({*sym, ax.lo, ax.hi, ax.points});
  }
  return PhaseGrid(axes);
}

std::vector<GaussianAxis> ModelFile::state_spec(const PhaseGrid& grid) const {
  std::vector<GaussianAxis> spec;
  for (const auto& ax : grid.axes()) {
    auto it = states.find(scope.name(ax.symbol));
    spec.push_back(it == states.end() ? GaussianAxis{} : it->second);
  }
  return spec;
}

}  // namespace kvn
