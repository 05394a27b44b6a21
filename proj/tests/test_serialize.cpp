#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "qtangle/serialize.hpp"

using namespace qtangle;
using Catch::Approx;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/qtangle_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("state JSON round trip") {
  const PureState s = random_pure_state(3, 17);
  const LoadedState back = state_from_json(to_json(s));
  REQUIRE(back.state.n_qubits == 3);
  REQUIRE((back.state.amplitudes - s.amplitudes).norm() < 1e-14);
  REQUIRE(back.norm_factor == Approx(1.0).margin(1e-12));
}

TEST_CASE("the reader normalizes and reports the norm factor") {
  json j = to_json(make_ghz(2));
  for (auto& amp : j["amplitudes"]) {
    amp[0] = amp[0].get<double>() * 3.0;
    amp[1] = amp[1].get<double>() * 3.0;
  }
  const LoadedState loaded = state_from_json(j);
  REQUIRE(loaded.norm_factor == Approx(3.0).margin(1e-12));
  REQUIRE(loaded.state.amplitudes.norm() == Approx(1.0).margin(1e-14));
}

TEST_CASE("state file validation errors") {
  REQUIRE_THROWS_AS(state_from_json(json{{"n_qubits", 2}}), BadParam);
  REQUIRE_THROWS_AS(
      state_from_json(json{{"n_qubits", 2}, {"amplitudes", {{1.0, 0.0}}}}),
      BadDimension);
  REQUIRE_THROWS_AS(
      state_from_json(json{{"n_qubits", 1}, {"amplitudes", {{1.0}, {0.0}}}}),
      BadParam);
  json zero{{"n_qubits", 1}, {"amplitudes", {{0.0, 0.0}, {0.0, 0.0}}}};
  REQUIRE_THROWS_AS(state_from_json(zero), ZeroVector);
  REQUIRE_THROWS_AS(load_state_file("/nonexistent/state.json"), BadParam);
}

TEST_CASE("load_state_file reads what to_json writes") {
  TempFile tmp("roundtrip.json");
  const PureState s = random_pure_state(2, 23);
  {
    std::ofstream out(tmp.path);
    out << to_json(s);
  }
  const LoadedState loaded = load_state_file(tmp.path);
  REQUIRE((loaded.state.amplitudes - s.amplitudes).norm() < 1e-14);
}

TEST_CASE("report serialization shapes") {
  const TangleReport report = make_tangle_report(make_ghz(3), 0, 4);
  const json j = to_json(report);
  REQUIRE(j.at("one_tangles").at("1").get<double>() == Approx(1.0));
  REQUIRE(j.at("two_tangles").contains("12"));
  REQUIRE(j.at("three_tangles").contains("123"));
  REQUIRE_FALSE(j.at("three_tangles_are_roof").get<bool>());

  const MonogamyReport rep = analyze(make_chi1(), 0, 8);
  const json m = to_json(rep);
  REQUIRE(m.at("per_qubit").at("2").at("scaling_s") == "undefined");
  REQUIRE(m.at("roofs").contains("234"));
  REQUIRE(m.at("consistent").is_boolean());
  // decompositions are serialized in full
  const auto& decomp = m.at("roofs").at("123").at("decomposition");
  REQUIRE(decomp.is_array());
  REQUIRE(decomp.size() >= 1);
  double total = 0.0;
  for (const auto& entry : decomp) total += entry.at("weight").get<double>();
  REQUIRE(total == Approx(1.0).margin(1e-9));
}
