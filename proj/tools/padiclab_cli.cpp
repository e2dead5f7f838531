// Copyright 2026 The padiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// padiclab command-line front end. Talks to the library through the C API only.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "padiclab/padiclab.h"

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::uint32_t prime = 3;
  unsigned precision = 12;
  unsigned degree = 2;
  std::uint64_t height_max = 10;
  std::string poly;
  std::string omega;
  std::string q;
  std::string delta = "1";
  std::string xi = "0";
  std::string xi0;
  std::string C = "1";
  std::string T;
  std::string disc = "Zp";
  std::string psi = "pow:-2";
  std::string eps;
  unsigned d = 0;
  unsigned k = 0;
  unsigned resolution = 0;
  std::uint64_t seed = 2026;
  std::size_t samples = 200;
  std::vector<std::uint64_t> h_grid{25, 50, 100, 200};
  std::string output;
  std::string format = "json";
  unsigned threads = 1;
};

// Exit codes: 0 ok, 1 domain error, 2 usage error.
constexpr int kDomainExit = 1;
constexpr int kUsageExit = 2;

struct Failure {
  int exit_code;
  Json body;
};

Failure usage_failure(std::vector<std::string> problems) {
  return {kUsageExit, Json{{"error", "Usage"}, {"problems", problems}}};
}

void check(padiclab_status s) {
  if (s == PADICLAB_OK) return;
  throw Failure{s == PADICLAB_E_USAGE ? kUsageExit : kDomainExit,
                Json{{"error", padiclab_status_name(s)}, {"message", padiclab_last_error()}}};
}

struct CString {
  char* p = nullptr;
  ~CString() { padiclab_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct ContextHandle {
  padiclab_context* h = nullptr;
  ~ContextHandle() { padiclab_context_free(h); }
};

struct PolyHandle {
  padiclab_poly* h = nullptr;
  ~PolyHandle() { padiclab_poly_free(h); }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kUsageExit, Json{{"error", "Usage"}, {"message", "cannot open output file " + path}}};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

// Flat key=value config file. Keys mirror long flag names; '#' starts a comment.
std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_failure({"cannot read config file " + path});
  std::vector<std::string> args, problems;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back(path + ":" + std::to_string(lineno) + ": expected key=value");
      continue;
    }
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    args.push_back("--" + key);
    args.push_back(value);
  }
  if (!problems.empty()) throw usage_failure(problems);
  return args;
}

// Pulls --config out of argv and splices the file's flags in right after the
// subcommand path, so explicit flags given later on the command line win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> in(argv + 1, argv + argc), rest;
  std::string config;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == "--config") {
      if (i + 1 >= in.size()) throw usage_failure({"--config requires a file"});
      config = in[++i];
    } else if (in[i].rfind("--config=", 0) == 0) {
      config = in[i].substr(9);
    } else {
      rest.push_back(in[i]);
    }
  }
  if (config.empty()) return rest;
  std::size_t path_end = 0;
  while (path_end < rest.size() && rest[path_end].rfind("-", 0) != 0) ++path_end;
  std::vector<std::string> out(rest.begin(), rest.begin() + static_cast<long>(path_end));
  for (auto& a : read_config(config)) out.push_back(std::move(a));
  out.insert(out.end(), rest.begin() + static_cast<long>(path_end), rest.end());
  return out;
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  void validate(const std::string& cmd, const std::vector<std::string>& required, bool csv_ok,
                const std::vector<std::string>& given) {
    std::vector<std::string> problems;
    for (const auto& r : required)
      if (std::find(given.begin(), given.end(), r) == given.end()) problems.push_back("missing required flag --" + r);
    if (o_.format != "json" && o_.format != "csv") problems.push_back("--format must be json or csv");
    if (o_.format == "csv" && !csv_ok) problems.push_back("--format csv is only available for dichotomy and thm2");
    if (o_.threads == 0) problems.push_back("--threads must be at least 1");
    if (cmd == "dichotomy" || cmd == "thm2") {
      if (o_.samples == 0) problems.push_back("--samples must be at least 1");
      if (o_.h_grid.empty()) problems.push_back("--h-grid must not be empty");
    }
    if (padiclab_context_new(o_.prime, o_.precision, &ctx_.h) != PADICLAB_OK)
      problems.push_back(padiclab_last_error());
    if (!o_.poly.empty() && padiclab_poly_parse(o_.poly.c_str(), &poly_.h) != PADICLAB_OK)
      problems.push_back(std::string("--poly: ") + padiclab_last_error());
    if (!problems.empty()) throw usage_failure(problems);
  }

  int roots() {
    Json j = Json::parse(call([&](char** out) { return padiclab_roots(ctx_.h, poly_.h, out); }));
    if (!o_.xi0.empty())
      j["hensel"] = Json::parse(
          call([&](char** out) { return padiclab_hensel(ctx_.h, poly_.h, o_.xi0.c_str(), out); }));
    if (!o_.omega.empty())
      j["nearest"] = Json::parse(
          call([&](char** out) { return padiclab_nearest_root(ctx_.h, poly_.h, o_.omega.c_str(), out); }));
    if (!o_.eps.empty())
      j["profile"] = Json::parse(
          call([&](char** out) { return padiclab_profile(ctx_.h, poly_.h, o_.eps.c_str(), o_.d, out); }));
    write_text(o_.output, j.dump(2));
    return 0;
  }

  int enum_alg() {
    return emit([&](char** out) {
      return padiclab_enum_alg(ctx_.h, o_.degree, o_.height_max, o_.disc.c_str(), out);
    });
  }

  int dirichlet() {
    return emit([&](char** out) {
      return padiclab_dirichlet(ctx_.h, o_.omega.c_str(), o_.degree, o_.q.c_str(), o_.delta.c_str(), o_.C.c_str(),
                                out);
    });
  }

  int approx() {
    return emit([&](char** out) {
      return padiclab_approx(ctx_.h, o_.omega.c_str(), o_.degree, o_.q.c_str(), o_.delta.c_str(), o_.C.c_str(), out);
    });
  }

  int regsys() {
    return emit([&](char** out) { return padiclab_regsys(ctx_.h, o_.disc.c_str(), o_.T.c_str(), o_.degree, out); });
  }

  int measure_solution() {
    return emit([&](char** out) {
      return padiclab_measure_solution(ctx_.h, poly_.h, o_.k, o_.disc.c_str(), o_.resolution, out);
    });
  }

  int measure_union() {
    return emit([&](char** out) {
      return padiclab_measure_union(ctx_.h, o_.delta.c_str(), o_.q.c_str(), o_.degree, o_.disc.c_str(),
                                    o_.resolution, o_.threads, out);
    });
  }

  int measure_e1() {
    return emit([&](char** out) {
      return padiclab_measure_e1(ctx_.h, o_.delta.c_str(), o_.q.c_str(), o_.xi.c_str(), o_.degree, o_.disc.c_str(),
                                 out);
    });
  }

  int experiment(bool thm2) {
    CString summary, lines, csv;
    auto fn = thm2 ? padiclab_thm2 : padiclab_dichotomy;
    check(fn(ctx_.h, o_.samples, o_.seed, o_.psi.c_str(), o_.degree, o_.h_grid.data(), o_.h_grid.size(), o_.threads,
             &summary.p, &lines.p, &csv.p));
    if (o_.format == "csv") {
      write_text(o_.output, csv.str());
    } else if (o_.output.empty()) {
      write_text("", summary.str());
    } else {
      write_text(o_.output, summary.str());
      write_text(o_.output + ".samples.jsonl", lines.str());
      write_text(o_.output + ".mean.csv", csv.str());
    }
    return 0;
  }

  int check_suite() {
    CString json;
    std::uint64_t violations = 0;
    check(padiclab_check(o_.prime, o_.precision, o_.degree, o_.height_max, o_.seed, &json.p, &violations));
    write_text(o_.output, json.str());
    return violations == 0 ? 0 : kDomainExit;
  }

 private:
  template <class F>
  std::string call(F&& f) {
    CString s;
    check(f(&s.p));
    return s.str();
  }

  template <class F>
  int emit(F&& f) {
    write_text(o_.output, call(std::forward<F>(f)));
    return 0;
  }

  const Options& o_;
  ContextHandle ctx_;
  PolyHandle poly_;
};

struct Command {
  CLI::App* app;
  std::string name;
  std::vector<std::string> required;
  bool csv_ok;
};

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"padiclab: exact p-adic Diophantine approximation experiments"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(padiclab_version()));
  // Registered so that --help lists it; expand_config consumes it before parsing.
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value file mirroring long flag names");

  std::vector<Command> commands;
  auto add = [&](CLI::App* parent, const std::string& name, const std::string& help,
                 std::vector<std::string> flags, std::vector<std::string> required, bool csv_ok = false) {
    CLI::App* sub = parent->add_subcommand(name, help);
    auto has = [&](const char* f) { return std::find(flags.begin(), flags.end(), f) != flags.end(); };
    sub->add_option("--prime", o.prime, "prime p")->capture_default_str();
    sub->add_option("--precision", o.precision, "working precision m (digits)")->capture_default_str();
    sub->add_option("--output", o.output, "output path (default stdout)");
    sub->add_option("--format", o.format, "json or csv")->capture_default_str();
    sub->add_option("--threads", o.threads, "maximum worker threads")->capture_default_str();
    if (has("degree")) sub->add_option("--degree", o.degree, "degree n")->capture_default_str();
    if (has("height-max")) sub->add_option("--height-max", o.height_max, "height bound")->capture_default_str();
    if (has("poly")) sub->add_option("--poly", o.poly, "coefficients lowest first, e.g. [-2,0,1]");
    if (has("omega")) sub->add_option("--omega", o.omega, "point of Z_p: integer or p:m:[digits]");
    if (has("xi0")) sub->add_option("--xi0", o.xi0, "Hensel starting point");
    if (has("eps")) sub->add_option("--eps", o.eps, "separation grid epsilon (rational)");
    if (has("d")) sub->add_option("--d", o.d, "separation grid d")->capture_default_str();
    if (has("q")) sub->add_option("--q", o.q, "height parameter Q");
    if (has("delta")) sub->add_option("--delta", o.delta, "delta (rational)")->capture_default_str();
    if (has("xi")) sub->add_option("--xi", o.xi, "derivative exponent xi (rational)")->capture_default_str();
    if (has("C")) sub->add_option("--C", o.C, "constant C (rational)")->capture_default_str();
    if (has("T")) sub->add_option("--T", o.T, "separation parameter T = p^(s(n+1))");
    if (has("disc")) sub->add_option("--disc", o.disc, "Zp or center:k")->capture_default_str();
    if (has("k")) sub->add_option("--k", o.k, "valuation threshold k");
    if (has("resolution"))
      sub->add_option("--resolution", o.resolution, "residue resolution (0 = automatic)")->capture_default_str();
    if (has("psi")) sub->add_option("--psi", o.psi, "pow:s or powlog:s:q")->capture_default_str();
    if (has("seed")) sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
    if (has("samples")) sub->add_option("--samples", o.samples, "number of random omegas")->capture_default_str();
    if (has("h-grid"))
      sub->add_option("--h-grid", o.h_grid, "comma-separated height cutoffs")->delimiter(',')->capture_default_str();
    commands.push_back({sub, name, std::move(required), csv_ok});
    return sub;
  };

  add(&app, "roots", "Z_p roots of a polynomial; optional Hensel lift, nearest root and separation profile",
      {"poly", "xi0", "omega", "eps", "d"}, {"poly"});
  add(&app, "enum-alg", "enumerate algebraic numbers in a disc", {"degree", "height-max", "disc"}, {});
  add(&app, "dirichlet", "small polynomial at omega by box search", {"omega", "degree", "q", "delta", "C"},
      {"omega", "q"});
  add(&app, "approx", "constructive algebraic approximant to omega", {"omega", "degree", "q", "delta", "C"},
      {"omega", "q"});
  add(&app, "regsys", "regular system witness in a disc", {"degree", "T", "disc"}, {"T"});
  CLI::App* measure = app.add_subcommand("measure", "exact Haar measures");
  measure->require_subcommand(1);
  add(measure, "solution", "measure of {omega in disc : v(P(omega)) >= k}", {"poly", "k", "disc", "resolution"},
      {"poly", "k"});
  add(measure, "union", "measure of the union set E(delta, Q)", {"q", "delta", "degree", "disc", "resolution"},
      {"q"});
  add(measure, "e1", "measure of the large-derivative part E1", {"q", "delta", "xi", "degree", "disc"}, {"q"});
  add(&app, "dichotomy", "random-omega solution counts for integer polynomials",
      {"psi", "degree", "samples", "seed", "h-grid"}, {}, true);
  add(&app, "thm2", "random-omega solution counts for algebraic numbers", {"psi", "degree", "samples", "seed", "h-grid"},
      {}, true);
  add(&app, "check", "run the invariant suite", {"degree", "height-max", "seed"}, {});

  Json error;
  int code = 0;
  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      throw usage_failure({e.what()});
    }
    const Command* cmd = nullptr;
    for (const auto& c : commands)
      if (c.app->parsed()) cmd = &c;
    if (!cmd) throw usage_failure({"no subcommand given"});
    std::vector<std::string> given;
    for (const CLI::Option* opt : cmd->app->get_options())
      if (opt->count() > 0) given.push_back(opt->get_name().substr(2));
    Runner run(o);
    const std::string full = cmd->app->get_parent() == measure ? "measure " + cmd->name : cmd->name;
    run.validate(cmd->name, cmd->required, cmd->csv_ok, given);
    if (full == "roots") code = run.roots();
    else if (full == "enum-alg") code = run.enum_alg();
    else if (full == "dirichlet") code = run.dirichlet();
    else if (full == "approx") code = run.approx();
    else if (full == "regsys") code = run.regsys();
    else if (full == "measure solution") code = run.measure_solution();
    else if (full == "measure union") code = run.measure_union();
    else if (full == "measure e1") code = run.measure_e1();
    else if (full == "dichotomy") code = run.experiment(false);
    else if (full == "thm2") code = run.experiment(true);
    else code = run.check_suite();
  } catch (const Failure& f) {
    std::cerr << f.body.dump() << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return kDomainExit;
  }
  return code;
}
