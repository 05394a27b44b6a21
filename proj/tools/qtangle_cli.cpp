#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qtangle/serialize.hpp"
#include "qtangle/verify.hpp"

// qtangle command-line front end.
//
// Exit codes: 0 success, 1 failed verification checks, 2 parse/validation
// error, 3 numerical failure.

namespace {

using namespace qtangle;
using nlohmann::json;

struct GlobalOpts {
  std::uint64_t seed = 0;
  int restarts = 64;
  double beta = 1.0;
  bool as_json = false;
  std::string out;
};

// JSON numbers are printed with 12 significant digits; tables use 6.
double round_sig12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

void round_floats(json& j) {
  if (j.is_number_float())
    j = round_sig12(j.get<double>());
  else if (j.is_array() || j.is_object())
    for (auto& el : j) round_floats(el);
}

void write_output(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw BadParam("cannot open output file: " + g.out);
  f << text;
}

void emit_json(const GlobalOpts& g, json j) {
  round_floats(j);
  write_output(g, j.dump(2) + "\n");
}

std::string line(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return std::string(buf);
}

struct StateInput {
  std::string family;
  std::string file;

  void attach(CLI::App* sub) {
    auto* f = sub->add_option("--family", family, "family spec, e.g. psi_p:p=0.5");
    auto* p = sub->add_option("--file", file, "JSON state file");
    f->excludes(p);
  }

  PureState load() const {
    if (!family.empty()) return FamilySpec::parse(family).build();
    if (!file.empty()) return load_state_file(file).state;
    throw BadParam("need --family or --file");
  }
};

void add_globals(CLI::App* sub, GlobalOpts& g) {
  sub->add_option("--seed", g.seed, "RNG seed (default 0)");
  sub->add_option("--restarts", g.restarts, "roof restarts (default 64)");
  sub->add_option("--beta", g.beta, "roof transform exponent (default 1)");
  sub->add_flag("--json", g.as_json, "emit JSON instead of a table");
  sub->add_option("--out", g.out, "write output to PATH instead of stdout");
}

// --- tangles ---------------------------------------------------------------

void cmd_tangles(const GlobalOpts& g, const StateInput& input) {
  const PureState state = input.load();
  const TangleReport report = make_tangle_report(state, g.seed, g.restarts);
  if (g.as_json) {
    emit_json(g, to_json(report));
    return;
  }
  std::string text;
  for (const auto& [j, v] : report.one_tangles)
    text += line("tau1_%d        %.6g\n", j, v);
  for (const auto& [jk, v] : report.two_tangles)
    text += line("tau2_%d%d       %.6g\n", jk.first, jk.second, v);
  for (const auto& [t, v] : report.three_tangles)
    text += line("tau3_%d%d%d%s  %.6g\n", t[0], t[1], t[2],
                 report.three_tangles_are_roof ? " (roof)" : "       ", v);
  for (const auto& [j, v] : report.residues)
    text += line("residue_%d     %.6g\n", j, v);
  write_output(g, text);
}

// --- invariants --------------------------------------------------------------

void cmd_invariants(const GlobalOpts& g, const StateInput& input) {
  const PureState state = input.load();
  bool any = false;
  json out = json::object();
  std::string text = line("%-8s %14s %14s %14s %7s %14s\n", "name", "raw_re", "raw_im",
                          "modulus", "degree", "degree4");
  for (const auto& inv : invariant_registry()) {
    if (inv.arity != state.n_qubits) continue;
    any = true;
    const InvariantValue v = inv.eval(state);
    out[inv.name] = {{"raw", {v.raw.real(), v.raw.imag()}},
                     {"modulus", v.modulus},
                     {"homogeneity_degree", v.homogeneity_degree},
                     {"degree4_normalized", v.degree4_normalized()}};
    text += line("%-8s %14.6g %14.6g %14.6g %7d %14.6g\n", inv.name.c_str(),
                 v.raw.real(), v.raw.imag(), v.modulus, v.homogeneity_degree,
                 v.degree4_normalized());
  }
  if (!any)
    throw BadArity("no registered invariant matches a " +
                   std::to_string(state.n_qubits) + "-qubit state");
  if (g.as_json)
    emit_json(g, out);
  else
    write_output(g, text);
}

// --- monogamy ---------------------------------------------------------------

void cmd_monogamy(const GlobalOpts& g, const StateInput& input) {
  const PureState state = input.load();
  const MonogamyReport report = analyze(state, g.seed, g.restarts, g.beta);
  if (g.as_json) {
    emit_json(g, to_json(report));
    return;
  }
  std::string text = line("%-6s %14s %14s %14s %14s\n", "qubit", "residue", "roof_sum",
                          "tau4", "scaling_s");
  for (const auto& [j, row] : report.per_qubit) {
    if (row.scaling_s)
      text += line("%-6d %14.6g %14.6g %14.6g %14.6g\n", j, row.residue, row.roof_sum,
                   row.tau4_candidate, *row.scaling_s);
    else
      text += line("%-6d %14.6g %14.6g %14.6g %14s\n", j, row.residue, row.roof_sum,
                   row.tau4_candidate, "undefined");
  }
  text += line("consistent: %s (tolerance %.6g)\n", report.consistent ? "true" : "false",
               report.consistency_tolerance);
  for (const auto& [name, v] : report.tau4_from_invariants)
    text += line("invariant %-6s degree4 = %.6g\n", name.c_str(), v);
  write_output(g, text);
}

// --- roof -------------------------------------------------------------------

std::array<int, 3> parse_triple(const std::string& text) {
  if (text.size() != 3) throw BadParam("triple must be three digits, e.g. 234");
  std::array<int, 3> t{};
  for (int k = 0; k < 3; ++k) {
    if (text[k] < '1' || text[k] > '4') throw BadParam("triple digits must be 1..4");
    t[k] = text[k] - '0';
  }
  if (!(t[0] < t[1] && t[1] < t[2])) throw BadParam("triple must be increasing");
  return t;
}

void cmd_roof(const GlobalOpts& g, const StateInput& input, const std::string& triple,
              int size) {
  const PureState state = input.load();
  auto solve = [&](const DensityMatrix& rho) {
    RoofProblem problem;
    problem.rho = rho;
    problem.transform_exponent = g.beta;
    problem.decomposition_size = size;
    return roof_tau3(problem, g.seed, g.restarts);
  };
  auto render = [&](const RoofResult& r, const std::string& label) {
    if (g.as_json) return std::string();
    std::string text = label.empty() ? std::string() : ("triple " + label + ":\n");
    text += line("roof value   %.6g\nrank         %d\nrestarts     %d\n", r.value,
                 r.rank, r.restarts_used);
    for (const auto& [w, phi] : r.decomposition)
      text += line("  weight %.6g  tau3 %.6g\n", w, invariant_tau3_pure(phi));
    return text;
  };

  if (state.n_qubits == 3) {
    if (!triple.empty()) throw BadParam("--triple applies to four-qubit states");
    const RoofResult r = solve(density(state));
    if (g.as_json)
      emit_json(g, to_json(r));
    else
      write_output(g, render(r, ""));
    return;
  }
  if (state.n_qubits != 4) throw BadArity("roof needs a three- or four-qubit state");
  if (!triple.empty()) {
    const auto t = parse_triple(triple);
    const RoofResult r = solve(partial_trace(state, QubitSubset{{t[0], t[1], t[2]}}));
    if (g.as_json)
      emit_json(g, to_json(r));
    else
      write_output(g, render(r, triple));
    return;
  }
  json out = json::object();
  std::string text;
  for (const auto& t : {std::array{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}) {
    const std::string key = std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]);
    const RoofResult r = solve(partial_trace(state, QubitSubset{{t[0], t[1], t[2]}}));
    out[key] = to_json(r);
    text += render(r, key);
  }
  if (g.as_json)
    emit_json(g, out);
  else
    write_output(g, text);
}

// --- sweep --------------------------------------------------------------------

struct RowCache {
  const PureState* state = nullptr;
  std::optional<std::map<std::array<int, 3>, RoofResult>> roofs;

  const std::map<std::array<int, 3>, RoofResult>& get_roofs(const GlobalOpts& g) {
    if (!roofs) roofs = roof_three_tangles_all(*state, g.seed, g.restarts);
    return *roofs;
  }
};

using ColumnFn = std::function<double(RowCache&)>;

std::vector<int> parse_digits(const std::string& s) {
  std::vector<int> out;
  for (char c : s) {
    if (c < '1' || c > '9') throw BadParam("expected qubit digits, got " + s);
    out.push_back(c - '0');
  }
  return out;
}

ColumnFn make_column(const std::string& name, const GlobalOpts& g) {
  const auto under = name.rfind('_');
  const std::string head = name.substr(0, under);
  const std::string tail = under == std::string::npos ? "" : name.substr(under + 1);

  if (head == "tau1" && tail.size() == 1) {
    const int j = parse_digits(tail)[0];
    return [j](RowCache& c) { return one_tangle(*c.state, j); };
  }
  if (head == "tau2" && tail.size() == 2) {
    const auto d = parse_digits(tail);
    return [d](RowCache& c) { return two_tangle(*c.state, d[0], d[1]); };
  }
  if (head == "tau3" && tail.size() == 3) {
    const auto d = parse_digits(tail);
    const std::array<int, 3> t{d[0], d[1], d[2]};
    return [t, &g](RowCache& c) {
      if (c.state->n_qubits == 3) return three_tangle_pure(*c.state);
      return c.get_roofs(g).at(t).value;
    };
  }
  if (head == "residue" && tail.size() == 1) {
    const int j = parse_digits(tail)[0];
    return [j](RowCache& c) { return ckw_residue(*c.state, j); };
  }
  if (head == "tau4" && tail.size() == 1) {
    const int j = parse_digits(tail)[0];
    return [j, &g](RowCache& c) {
      double v = ckw_residue(*c.state, j);
      for (const auto& [t, r] : c.get_roofs(g))
        if (t[0] == j || t[1] == j || t[2] == j) v -= r.value;
      return v;
    };
  }
  // registered invariant: modulus, or degree-4 value with the _norm suffix
  const bool norm = tail == "norm";
  const std::string inv_name = norm ? head : name;
  const NamedInvariant& inv = find_invariant(inv_name);
  return [&inv, norm](RowCache& c) {
    const InvariantValue v = inv.eval(*c.state);
    return norm ? v.degree4_normalized() : v.modulus;
  };
}

void cmd_sweep(const GlobalOpts& g, const std::string& family, const std::string& param,
               double lo, double hi, int steps, const std::string& columns,
               double zero_tol) {
  if (steps < 2) throw BadParam("steps must be >= 2");
  if (!(lo < hi)) throw BadParam("range start must be below stop");
  FamilySpec spec = FamilySpec::parse(family);

  std::vector<std::string> names;
  std::vector<ColumnFn> fns;
  std::stringstream ss(columns);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    names.push_back(item);
    fns.push_back(make_column(item, g));
  }
  if (names.empty()) throw BadParam("need at least one column");

  std::string csv = "param";
  for (const auto& n : names) csv += "," + n;
  csv += "\n";

  std::vector<std::vector<double>> table;
  std::vector<double> grid;
  for (int k = 0; k < steps; ++k) {
    const double x = lo + (hi - lo) * k / (steps - 1);
    grid.push_back(x);
    spec.params[param] = Complex(x, 0.0);
    const PureState state = spec.build();
    RowCache cache;
    cache.state = &state;
    std::vector<double> row;
    csv += line("%.12g", x);
    for (const auto& fn : fns) {
      row.push_back(fn(cache));
      csv += line(",%.12g", row.back());
    }
    csv += "\n";
    table.push_back(std::move(row));
  }
  write_output(g, csv);

  // report sign changes and zero transitions on the error stream
  auto classify = [&](double v) { return std::abs(v) <= zero_tol ? 0 : (v > 0 ? 1 : -1); };
  for (std::size_t c = 0; c < names.size(); ++c)
    for (int k = 0; k + 1 < steps; ++k)
      if (classify(table[k][c]) != classify(table[k + 1][c]))
        std::fprintf(stderr, "# column %s: transition in [%.12g, %.12g]\n",
                     names[c].c_str(), grid[k], grid[k + 1]);
}

// --- verify-paper ---------------------------------------------------------------

int cmd_verify(const GlobalOpts& g) {
  VerifyOptions opts;
  opts.seed = g.seed;
  opts.restarts = g.restarts;
  const auto results = run_paper_checks(opts);
  int failures = 0;
  if (g.as_json) {
    json out = json::array();
    for (const auto& r : results) {
      if (!r.pass) ++failures;
      out.push_back({{"claim", r.claim},
                     {"expected", r.expected},
                     {"computed", r.computed},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass}});
    }
    emit_json(g, out);
  } else {
    std::string text = line("%-62s %14s %14s %10s %s\n", "claim", "expected", "computed",
                            "tolerance", "status");
    for (const auto& r : results) {
      if (!r.pass) ++failures;
      text += line("%-62s %14.6g %14.6g %10.2g %s\n", r.claim.c_str(), r.expected,
                   r.computed, r.tolerance, r.pass ? "pass" : "FAIL");
    }
    text += line("%zu checks, %d failures\n", results.size(), failures);
    write_output(g, text);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tangles and polynomial invariants for small qubit registers"};
  app.require_subcommand(1);

  GlobalOpts g;
  int exit_code = 0;

  StateInput tangles_in, invariants_in, monogamy_in, roof_in;
  std::string roof_triple;
  int roof_size = 4;
  std::string sweep_family, sweep_param = "p", sweep_columns;
  double sweep_lo = 0.0, sweep_hi = 1.0, sweep_zero_tol = 1e-9;
  int sweep_steps = 101;

  auto* tangles = app.add_subcommand("tangles", "one-, two-, three-tangles and residues");
  tangles_in.attach(tangles);
  add_globals(tangles, g);
  tangles->callback([&] { cmd_tangles(g, tangles_in); });

  auto* invariants = app.add_subcommand("invariants", "registered polynomial invariants");
  invariants_in.attach(invariants);
  add_globals(invariants, g);
  invariants->callback([&] { cmd_invariants(g, invariants_in); });

  auto* monogamy = app.add_subcommand("monogamy", "generalized-monogamy analysis");
  monogamy_in.attach(monogamy);
  add_globals(monogamy, g);
  monogamy->callback([&] { cmd_monogamy(g, monogamy_in); });

  auto* roof = app.add_subcommand("roof", "convex-roof three-tangle");
  roof_in.attach(roof);
  roof->add_option("--triple", roof_triple, "qubit triple for four-qubit states, e.g. 234");
  roof->add_option("--size", roof_size, "decomposition size (default 4)");
  add_globals(roof, g);
  roof->callback([&] { cmd_roof(g, roof_in, roof_triple, roof_size); });

  auto* sweep = app.add_subcommand("sweep", "CSV sweep of a family parameter");
  sweep->add_option("--family", sweep_family, "family spec; the swept key is overridden")
      ->required();
  sweep->add_option("--param", sweep_param, "parameter to sweep (default p)");
  sweep->add_option("--min", sweep_lo, "range start (default 0)");
  sweep->add_option("--max", sweep_hi, "range stop (default 1)");
  sweep->add_option("--steps", sweep_steps, "grid points (default 101)");
  sweep->add_option("--columns", sweep_columns, "comma-separated column names")->required();
  sweep->add_option("--zero-tol", sweep_zero_tol, "zero classification tolerance");
  add_globals(sweep, g);
  sweep->callback([&] {
    cmd_sweep(g, sweep_family, sweep_param, sweep_lo, sweep_hi, sweep_steps,
              sweep_columns, sweep_zero_tol);
  });

  auto* verify = app.add_subcommand("verify-paper", "run the reproduction check table");
  add_globals(verify, g);
  verify->callback([&] { exit_code = cmd_verify(g); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fprintf(stderr, "error: cli: %s\n", e.what());
    return 2;
  } catch (const qtangle::Error& e) {
    const bool numerical = dynamic_cast<const qtangle::SpectralFailure*>(&e) ||
                           dynamic_cast<const qtangle::RankOverflow*>(&e) ||
                           dynamic_cast<const qtangle::NoConvergence*>(&e) ||
                           dynamic_cast<const qtangle::NotOrthonormal*>(&e);
    std::fprintf(stderr, "error: %s: %s\n", numerical ? "numerical" : "parse", e.what());
    return numerical ? 3 : 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: parse: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 3;
  }
  return exit_code;
}
