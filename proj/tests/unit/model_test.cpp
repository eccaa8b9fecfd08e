#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "kvn/runner.hpp"

using namespace kvn;

namespace {

const char* kHarmonicModel = R"(
dofs 1
deconjugate 1
param m 1
param k 1
hamiltonian p^2/(2*m) + (k/2)*q^2
grid q -8 8 32
grid p -8 8 32
state q center=1 sigma=0.7071
state p center=0 sigma=0.7071
dt 0.002
steps 40
observe q
observe unc(q)
observe rhs(q)
observe energy
command eom
)";

std::string run(const ModelFile& model, const std::string& command,
                const std::vector<std::string>& args = {},
                RunOptions options = {}) {
  std::ostringstream out;
  run_command(model, command, args, options, out);
  return out.str();
}

}  // namespace

TEST_SUITE_BEGIN("fast");

TEST_CASE("model files parse into theories") {
  ModelFile m = parse_model_text(kHarmonicModel);
  CHECK(m.dofs == 1);
  CHECK(m.theory.full());
  CHECK(m.hbar_value == 1.0);
  CHECK(m.states.at("q").center == 1.0);
  CHECK(m.grid_axes.size() == 2);
  CHECK(m.observes.size() == 4);
}

TEST_CASE("model parse errors") {
  CHECK_THROWS_AS(parse_model_text("dofs 1\n"), ParseError);  // no hamiltonian
  CHECK_THROWS_AS(parse_model_text("hamiltonian q\n"), ParseError);  // no dofs
  CHECK_THROWS_AS(parse_model_text("dofs 1\nbogus 3\nhamiltonian q\n"), ParseError);
  CHECK_THROWS_AS(parse_model_text("dofs 1\ndeconjugate 2\nhamiltonian q\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_model_text("dofs 1\nhamiltonian q\ngrid z -1 1 32\n"), ParseError);
  CHECK_THROWS_AS(
      parse_model_text("dofs 1\nhamiltonian q + z\n"), ParseError);
}

TEST_CASE("eom command prints every symbol's equation") {
  ModelFile m = parse_model_text(kHarmonicModel);
  std::string text = run(m, "eom");
  CHECK(text.find("d/dt q = p/m") != std::string::npos);
  CHECK(text.find("d/dt p~ = -k*q~") != std::string::npos);
  CHECK(text.find("d/dt q~ = p~/m") != std::string::npos);
  CHECK(text.find("d/dt p = -k*q") != std::string::npos);
}

TEST_CASE("bracket command uses the model's table") {
  ModelFile m = parse_model_text(kHarmonicModel);
  CHECK(run(m, "bracket", {"q", "p"}) == "0\n");
  CHECK(run(m, "bracket", {"q", "p~"}) == "1\n");
  CHECK_THROWS_AS(run(m, "bracket", {"q"}), ParseError);
}

TEST_CASE("alpha modes") {
  ModelFile m = parse_model_text(kHarmonicModel);
  RunOptions zero;
  zero.alpha_mode = RunOptions::AlphaMode::Zero;
  CHECK(run(m, "deconjugate", {}, zero) == "H~ = k*q*q~ + p~*p/m\n");
  RunOptions decouple;
  decouple.alpha_mode = RunOptions::AlphaMode::Decouple;
  // Full deconjugation has no mixed sector to decouple.
  CHECK_THROWS_AS(run(m, "deconjugate", {}, decouple), TheoryError);
}

TEST_CASE("unknown commands are parse errors") {
  ModelFile m = parse_model_text(kHarmonicModel);
  CHECK_THROWS_AS(run(m, "frobnicate"), ParseError);
}

TEST_CASE("simulate writes deterministic CSV") {
  ModelFile m = parse_model_text(kHarmonicModel);
  RunOptions options;
  options.out_dir = "model_test_out";
  std::string first = run(m, "simulate", {}, options);
  CHECK(first.find("trajectory.csv") != std::string::npos);
  std::ifstream csv1("model_test_out/trajectory.csv", std::ios::binary);
  std::stringstream buf1;
  buf1 << csv1.rdbuf();
  run(m, "simulate", {}, options);
  std::ifstream csv2("model_test_out/trajectory.csv", std::ios::binary);
  std::stringstream buf2;
  buf2 << csv2.rdbuf();
  const std::string csv = buf1.str();
  CHECK(csv == buf2.str());
  CHECK(csv.rfind("t,norm,E[q],unc[q],rhs[q],energy", 0) == 0);
  // 41 samples + header.
  long lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 42);
}

TEST_CASE("verify passes on the harmonic model") {
  ModelFile m = parse_model_text(kHarmonicModel);
  std::string text = run(m, "verify");
  CHECK(text.find("FAIL") == std::string::npos);
  CHECK(text.find("PASS grid commutator relations") != std::string::npos);
}

TEST_SUITE_END();
