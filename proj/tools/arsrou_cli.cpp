// Copyright 2026 The arsrou Authors
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

// Command-line driver for the arsrou samplers. Talks to the library only
// through the C interface.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arsrou/arsrou.h"

namespace {

struct Failure {
  int code;
  std::string message;
};

void check(arsrou_status s) {
  if (s != ARSROU_OK) {
    throw Failure{1, std::string(arsrou_status_name(s)) + ": " + arsrou_last_error()};
  }
}

struct ModelDeleter {
  void operator()(arsrou_model* m) const { arsrou_model_free(m); }
};
struct SamplerDeleter {
  void operator()(arsrou_sampler* s) const { arsrou_sampler_free(s); }
};
struct RegionDeleter {
  void operator()(arsrou_region* r) const { arsrou_region_free(r); }
};
using ModelPtr = std::unique_ptr<arsrou_model, ModelDeleter>;
using SamplerPtr = std::unique_ptr<arsrou_sampler, SamplerDeleter>;
using RegionPtr = std::unique_ptr<arsrou_region, RegionDeleter>;

struct Common {
  std::string scheme = "rou";
  std::string model = "artificial3obs";
  std::vector<std::string> params;
  std::string config;
  double rho = 1.0;
  std::size_t n = 1000;
  std::uint64_t seed = 42;
  std::string out = "-";
  std::string supports;
  std::size_t term = 0;  // 1-based; 0 picks the last term
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw Failure{1, "cannot open '" + path + "' for writing"};
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{1, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ModelPtr load_model(const Common& c) {
  arsrou_model* m = nullptr;
  if (!c.config.empty()) {
    if (!c.params.empty()) throw Failure{2, "--param cannot be combined with --config"};
    check(arsrou_model_from_config(read_file(c.config).c_str(), &m));
    return ModelPtr(m);
  }
  nlohmann::json params = nlohmann::json::object();
  for (const auto& p : c.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw Failure{2, "--param expects key=value: " + p};
    try {
      std::size_t used = 0;
      const double v = std::stod(p.substr(eq + 1), &used);
      if (used != p.size() - eq - 1) throw std::invalid_argument(p);
      params[p.substr(0, eq)] = v;
    } catch (const std::exception&) {
      throw Failure{2, "--param value is not a number: " + p};
    }
  }
  check(arsrou_model_builtin(c.model.c_str(), params.dump().c_str(), &m));
  return ModelPtr(m);
}

std::vector<double> parse_supports(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Failure{2, "bad support point '" + item + "'"};
    }
  }
  return out;
}

arsrou_scheme scheme_of(const Common& c) {
  return c.scheme == "ars1" ? ARSROU_SCHEME_ARS1 : ARSROU_SCHEME_ROU;
}

std::size_t term_index(const Common& c, const arsrou_model* m) {
  const std::size_t n = arsrou_model_term_count(m);
  if (c.term == 0) return n - 1;
  if (c.term > n) throw Failure{2, "--term must be in 1.." + std::to_string(n)};
  return c.term - 1;
}

SamplerPtr make_sampler(const Common& c, const arsrou_model* m, const std::vector<double>& s) {
  arsrou_sampler* out = nullptr;
  if (scheme_of(c) == ARSROU_SCHEME_ARS1) {
    check(arsrou_sampler_create_ars1(m, term_index(c, m), s.data(), s.size(), c.seed, &out));
  } else {
    check(arsrou_sampler_create_rou(m, c.rho, s.data(), s.size(), c.seed, &out));
  }
  return SamplerPtr(out);
}

void cmd_sample(const Common& c, const std::string& stats_out) {
  const ModelPtr m = load_model(c);
  const auto supports = parse_supports(c.supports);
  const SamplerPtr s = make_sampler(c, m.get(), supports);
  std::vector<double> xs(c.n);
  std::vector<std::uint64_t> trials(c.n);
  check(arsrou_sampler_draw(s.get(), c.n, xs.data(), trials.data()));

  Output out(c.out);
  out.stream() << "x\n";
  for (double x : xs) out.stream() << fmt(x) << '\n';
  if (!stats_out.empty()) {
    Output st(stats_out);
    st.stream() << "i,trials\n";
    for (std::size_t i = 0; i < trials.size(); ++i) {
      st.stream() << i + 1 << ',' << trials[i] << '\n';
    }
  }
}

void cmd_curve(const Common& c, std::size_t runs, unsigned threads) {
  const ModelPtr m = load_model(c);
  const auto supports = parse_supports(c.supports);
  const std::size_t term = scheme_of(c) == ARSROU_SCHEME_ARS1 ? term_index(c, m.get()) : 0;
  std::vector<double> curve(c.n);
  check(arsrou_acceptance_curve(m.get(), scheme_of(c), term, c.rho, supports.data(),
                                supports.size(), runs, c.n, c.seed, threads, curve.data()));
  Output out(c.out);
  out.stream() << "i,rate\n";
  for (std::size_t i = 0; i < curve.size(); ++i) out.stream() << i + 1 << ',' << fmt(curve[i]) << '\n';
}

void cmd_region(const Common& c, std::uint64_t warmup, std::size_t probes) {
  if (scheme_of(c) != ARSROU_SCHEME_ROU) throw Failure{2, "region needs --scheme rou"};
  const ModelPtr m = load_model(c);
  const auto supports = parse_supports(c.supports);
  const SamplerPtr s = make_sampler(c, m.get(), supports);
  double x;
  while (arsrou_sampler_rejections(s.get()) < warmup) {
    check(arsrou_sampler_draw(s.get(), 1, &x, nullptr));
  }

  arsrou_region* raw = nullptr;
  check(arsrou_region_export(s.get(), probes, &raw));
  const RegionPtr r(raw);
  Output out(c.out);
  out.stream() << "kind,v1,u1,v2,u2,v3,u3,area\n";
  double t[7];
  for (std::size_t i = 0; i < arsrou_region_triangle_count(r.get()); ++i) {
    check(arsrou_region_triangle(r.get(), i, t));
    out.stream() << "triangle";
    for (double v : t) out.stream() << ',' << fmt(v);
    out.stream() << '\n';
  }
  double b[2];
  for (std::size_t i = 0; i < arsrou_region_boundary_count(r.get()); ++i) {
    check(arsrou_region_boundary(r.get(), i, b));
    out.stream() << "boundary," << fmt(b[0]) << ',' << fmt(b[1]) << ",,,,,\n";
  }
}

std::vector<double> read_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{1, "cannot read '" + path + "'"};
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(line.substr(first), &used));
    } catch (const std::exception&) {
      // Tolerate one header row.
      if (lineno == 1) continue;
      throw Failure{1, path + ":" + std::to_string(lineno) + ": not a number"};
    }
  }
  return out;
}

struct SvArgs {
  double beta = 0.8;
  double sigma = 0.9;
  std::size_t steps = 40;
  std::size_t particles = 1000;
  std::string obs_file;
  double x0 = 1.0;
  bool jacobian = false;
};

void cmd_pf_sv(const Common& c, const SvArgs& a) {
  if (!(a.sigma > 0.0)) throw Failure{2, "--sigma must be > 0"};
  if (a.particles == 0) throw Failure{2, "--particles must be >= 1"};
  std::vector<double> obs, truth;
  if (!a.obs_file.empty()) {
    obs = read_observations(a.obs_file);
  } else {
    obs.resize(a.steps);
    truth.resize(a.steps);
    check(arsrou_sv_simulate(a.beta, a.sigma, a.steps, a.x0, arsrou_split_seed(c.seed, 0),
                             truth.data(), obs.data()));
  }
  std::vector<arsrou_filter_row> rows(obs.size());
  check(arsrou_sv_filter(a.beta, a.sigma, a.jacobian ? 1 : 0, obs.data(), truth.empty() ? nullptr : truth.data(),
                         obs.size(), a.particles, arsrou_split_seed(c.seed, 1), rows.data()));
  Output out(c.out);
  out.stream() << "k,truth,estimate,std,acceptance_rate\n";
  for (const auto& r : rows) {
    out.stream() << r.k << ',' << fmt(r.truth) << ',' << fmt(r.estimate) << ',' << fmt(r.std)
                 << ',' << fmt(r.acceptance_rate) << '\n';
  }
}

void add_common(CLI::App* cmd, Common& c, bool sampler_flags) {
  cmd->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  cmd->add_option("--out", c.out, "Output file ('-' for stdout)")->capture_default_str();
  if (!sampler_flags) return;
  cmd->add_option("--scheme", c.scheme, "Sampler: ars1 or rou")
      ->check(CLI::IsMember({"ars1", "rou"}))
      ->capture_default_str();
  auto* model = cmd->add_option("--model", c.model, "Built-in model name")->capture_default_str();
  cmd->add_option("--param", c.params, "Built-in model parameter key=value (repeatable)");
  cmd->add_option("--config", c.config, "JSON model description")->excludes(model);
  cmd->add_option("--rho", c.rho, "RoU exponent (>= 1)")
      ->check(CLI::Range(1.0, 1e6))
      ->capture_default_str();
  cmd->add_option("--n", c.n, "Samples per run")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--supports", c.supports, "Initial support points, comma separated");
  cmd->add_option("--term", c.term, "1-based proposal term for ars1 (default: last)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive rejection and ratio-of-uniforms samplers"};
  app.require_subcommand(1);

  Common common;
  std::string stats_out;
  std::size_t runs = 1000;
  unsigned threads = 0;
  std::uint64_t warmup = 0;
  std::size_t probes = 1000;
  SvArgs sv;

  auto* sample = app.add_subcommand("sample", "Draw samples");
  add_common(sample, common, true);
  sample->add_option("--stats-out", stats_out, "Write trials per accepted sample here");

  auto* curve = app.add_subcommand("curve", "Acceptance-rate curve averaged over runs");
  add_common(curve, common, true);
  curve->add_option("--runs", runs, "Independent runs")->check(CLI::PositiveNumber)->capture_default_str();
  curve->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  auto* region = app.add_subcommand("region", "Dump the RoU triangle cover and region boundary");
  add_common(region, common, true);
  region->add_option("--warmup", warmup, "Rejections to absorb before the dump")->capture_default_str();
  region->add_option("--probes", probes, "Boundary probe count")->capture_default_str();

  auto* pf = app.add_subcommand("pf-sv", "Accept/reject particle filter on stochastic volatility");
  add_common(pf, common, false);
  pf->add_option("--beta", sv.beta, "AR coefficient")->capture_default_str();
  pf->add_option("--sigma", sv.sigma, "State noise standard deviation (> 0)")->capture_default_str();
  pf->add_option("--steps", sv.steps, "Simulated steps")->capture_default_str();
  pf->add_option("--particles", sv.particles, "Particle count")->capture_default_str();
  pf->add_option("--obs-file", sv.obs_file, "Observations, one per line (skips simulation)");
  pf->add_option("--x0", sv.x0, "Initial volatility of the simulated path")->capture_default_str();
  pf->add_flag("--jacobian", sv.jacobian, "Include the 1/x change-of-variables factor in the prior");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; every other parse problem is a usage error.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*sample) cmd_sample(common, stats_out);
    if (*curve) cmd_curve(common, runs, threads);
    if (*region) cmd_region(common, warmup, probes);
    if (*pf) cmd_pf_sv(common, sv);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return 0;
}
