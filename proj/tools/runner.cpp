#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wignerlab/concentration.hpp"
#include "wignerlab/hermitian.hpp"
#include "wignerlab/reductions.hpp"
#include "wignerlab/spectral.hpp"
#include "wignerlab/stieltjes.hpp"
#include "wignerlab/walks.hpp"

#ifndef WIGNERLAB_VERSION
#define WIGNERLAB_VERSION "0.0.0"
#endif

namespace wignerlab::cli {

namespace fs = std::filesystem;

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> commands{"simulate", "moments", "walks", "stieltjes",
                                                 "concentration", "reduce", "conditions"};
  return commands;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// config parsing

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool to_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

bool to_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty() || s[0] == '-' || s[0] == '+') return false;
  try {
    std::size_t pos = 0;
    out = std::stoull(s, &pos, 10);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

struct Reader {
  std::vector<std::string>& diags;

  void bad(const std::string& key, const std::string& value, const char* what) {
    diags.push_back(key + ": cannot parse '" + value + "' as " + what);
  }
  void real(const std::string& key, const std::string& v, double& out) {
    if (!to_double(v, out)) bad(key, v, "a number");
  }
  template <class U>
  void count(const std::string& key, const std::string& v, U& out) {
    std::uint64_t x = 0;
    if (!to_u64(v, x)) return bad(key, v, "a nonnegative integer");
    out = static_cast<U>(x);
  }
  void reals(const std::string& key, const std::string& v, std::vector<double>& out) {
    out.clear();
    for (const auto& item : split(v, ',')) {
      double x = 0.0;
      if (!to_double(item, x)) return bad(key, item, "a number");
      out.push_back(x);
    }
  }
  template <class U>
  void counts(const std::string& key, const std::string& v, std::vector<U>& out) {
    out.clear();
    for (const auto& item : split(v, ',')) {
      std::uint64_t x = 0;
      if (!to_u64(item, x)) return bad(key, item, "a nonnegative integer");
      out.push_back(static_cast<U>(x));
    }
  }
};

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::vector<std::string>& diags = c.parse_diagnostics;
  Reader rd{diags};
  std::set<std::string> seen;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CliError(exit_bad_config, "config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string v = trim(std::string_view(line).substr(eq + 1));
    if (key.empty())
      throw CliError(exit_bad_config, "config line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second) diags.push_back(key + ": duplicate key");
    c.entries.emplace_back(key, v);

    if (key == "command") c.command = v;
    else if (key == "ensemble.family") c.family = v;
    else if (key == "ensemble.law") c.law = v;
    else if (key == "ensemble.alpha") rd.real(key, v, c.alpha);
    else if (key == "ensemble.scale") rd.real(key, v, c.scale);
    else if (key == "ensemble.profile") c.profile = v;
    else if (key == "ensemble.variance") rd.real(key, v, c.variance);
    else if (key == "ensemble.band_width") rd.count(key, v, c.band_width);
    else if (key == "ensemble.inside") rd.real(key, v, c.inside);
    else if (key == "ensemble.outside") rd.real(key, v, c.outside);
    else if (key == "ensemble.seed") rd.count(key, v, c.seed);
    else if (key == "run.sizes") rd.counts(key, v, c.sizes);
    else if (key == "run.trials") rd.count(key, v, c.trials);
    else if (key == "run.out") c.outputs = v;
    else if (key == "run.threads") rd.count(key, v, c.threads);
    else if (key == "moments.k") rd.counts(key, v, c.moments_k);
    else if (key == "moments.oracle") {
      if (v == "true" || v == "1") c.moments_oracle = true;
      else if (v == "false" || v == "0") c.moments_oracle = false;
      else rd.bad(key, v, "a boolean");
    } else if (key == "walks.k_max") rd.count(key, v, c.walks_k_max);
    else if (key == "stieltjes.z") {
      c.stieltjes_z.clear();
      for (const auto& item : split(v, ',')) {
        const auto parts = split(item, ':');
        double re = 0.0, im = 0.0;
        if (parts.size() != 2 || !to_double(parts[0], re) || !to_double(parts[1], im)) {
          rd.bad(key, item, "re:im");
          break;
        }
        c.stieltjes_z.emplace_back(re, im);
      }
    } else if (key == "stieltjes.b") rd.real(key, v, c.stieltjes_b);
    else if (key == "stieltjes.grid") {
      const auto parts = split(v, ':');
      if (parts.size() != 3 || !to_double(parts[0], c.grid_lo) || !to_double(parts[1], c.grid_hi) ||
          !to_double(parts[2], c.grid_step))
        rd.bad(key, v, "lo:hi:step");
    } else if (key == "concentration.t") rd.reals(key, v, c.concentration_t);
    else if (key == "concentration.p") rd.real(key, v, c.ramp_p);
    else if (key == "concentration.q") rd.real(key, v, c.ramp_q);
    else if (key == "reduce.eta") {
      if (v == "auto") c.reduce_eta.reset();
      else {
        double e = 0.0;
        rd.real(key, v, e);
        c.reduce_eta = e;
      }
    } else if (key == "reduce.C") rd.real(key, v, c.reduce_c);
    else if (key == "conditions.C") rd.real(key, v, c.conditions_c);
    else if (key == "conditions.eps") rd.reals(key, v, c.conditions_eps);
    else diags.push_back("unknown key '" + key + "'");
  }
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(exit_bad_config, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::optional<EntryLaw> law_from(const ExperimentConfig& c) {
  if (c.law == "gaussian_real") return EntryLaw::gaussian_real();
  if (c.law == "gaussian_complex") return EntryLaw::gaussian_complex();
  if (c.law == "rademacher") return EntryLaw::rademacher();
  if (c.law == "uniform_bounded") return EntryLaw::uniform_bounded();
  if (c.law == "constant_zero") return EntryLaw::constant_zero();
  if (c.law == "pareto" && c.alpha > 0.0 && c.scale > 0.0) return EntryLaw::pareto_symmetric(c.alpha, c.scale);
  return std::nullopt;
}

}  // namespace

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> d = c.parse_diagnostics;
  const auto& cmds = known_commands();
  if (c.command.empty()) d.push_back("command is missing");
  else if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end()) d.push_back("unknown command '" + c.command + "'");

  if (c.sizes.empty()) d.push_back("sizes must be nonempty");
  if (std::any_of(c.sizes.begin(), c.sizes.end(), [](std::size_t n) { return n == 0; }))
    d.push_back("sizes must be positive");
  if (c.trials < 1) d.push_back("trials must be >= 1");
  if (c.threads < 1) d.push_back("threads must be >= 1");

  const bool heavy = c.family == "heavy_tail";
  std::optional<EntryLaw> law;
  if (heavy) {
    if (std::any_of(c.sizes.begin(), c.sizes.end(), [](std::size_t n) { return n < 3; }))
      d.push_back("heavy_tail family needs sizes >= 3");
    law = EntryLaw::pareto_symmetric(2.0, 1.0);
  } else if (c.family != "wigner") {
    d.push_back("unknown ensemble family '" + c.family + "'");
  } else {
    law = law_from(c);
    if (!law) {
      if (c.law == "pareto") d.push_back("pareto law needs alpha > 0 and scale > 0");
      else d.push_back("unknown law '" + c.law + "'");
    }
    if (c.profile == "uniform") {
      if (!(c.variance >= 0.0)) d.push_back("variance must be nonnegative");
    } else if (c.profile == "banded") {
      if (!(c.inside >= 0.0) || !(c.outside >= 0.0)) d.push_back("banded profile values must be nonnegative");
    } else if (c.profile != "unit") {
      d.push_back("unknown profile '" + c.profile + "'");
    }
  }

  if (c.command == "moments") {
    if (c.moments_k.empty()) d.push_back("moments.k must be nonempty");
    const unsigned kmax = c.moments_k.empty() ? 0 : *std::max_element(c.moments_k.begin(), c.moments_k.end());
    if (std::any_of(c.moments_k.begin(), c.moments_k.end(), [](unsigned k) { return k == 0 || k > 72; }))
      d.push_back("moments.k entries must lie in 1..72");
    if (c.moments_oracle) {
      if (law && static_cast<double>(kmax) >= law->moment_limit()) d.push_back("oracle requires finite moments");
      if (kmax > 8 || std::any_of(c.sizes.begin(), c.sizes.end(), [](std::size_t n) { return n > 6; }))
        d.push_back("oracle requires sizes <= 6 and k <= 8");
    }
  } else if (c.command == "walks") {
    if (c.walks_k_max < 1 || c.walks_k_max > 10) d.push_back("walks.k_max must lie in 1..10");
  } else if (c.command == "stieltjes") {
    if (c.stieltjes_z.empty()) d.push_back("stieltjes.z must be nonempty");
    for (const auto& z : c.stieltjes_z)
      if (!(z.second > 0.0)) {
        d.push_back("stieltjes.z points need positive imaginary part");
        break;
      }
    if (!(c.stieltjes_b > 0.0)) d.push_back("stieltjes.b must be positive");
    if (!(c.grid_step > 0.0) || !(c.grid_hi > c.grid_lo)) d.push_back("stieltjes.grid needs lo < hi and step > 0");
    else if ((c.grid_hi - c.grid_lo) / c.grid_step > 1e6) d.push_back("stieltjes.grid has more than 10^6 points");
  } else if (c.command == "concentration") {
    if (c.trials < 100) d.push_back("concentration needs trials >= 100");
    if (!(c.ramp_p < c.ramp_q)) d.push_back("concentration.p must be < concentration.q");
    if (c.concentration_t.empty() ||
        std::any_of(c.concentration_t.begin(), c.concentration_t.end(), [](double t) { return !(t > 0.0); }))
      d.push_back("concentration.t must be a nonempty list of positive values");
  } else if (c.command == "reduce") {
    if (c.reduce_eta && !(*c.reduce_eta > 0.0)) d.push_back("reduce.eta must be positive or 'auto'");
    if (!(c.reduce_c > 0.0)) d.push_back("reduce.C must be positive");
  } else if (c.command == "conditions") {
    if (!(c.conditions_c >= 0.0)) d.push_back("conditions.C must be nonnegative");
    if (c.conditions_eps.empty() ||
        std::any_of(c.conditions_eps.begin(), c.conditions_eps.end(), [](double e) { return !(e > 0.0); }))
      d.push_back("conditions.eps must be a nonempty list of positive values");
  }
  return d;
}

EnsembleSpec make_spec(const ExperimentConfig& c, std::size_t n) {
  if (c.family == "heavy_tail") return heavy_tail(n, c.seed);
  const auto law = law_from(c);
  if (!law) throw CliError(exit_bad_config, "unknown law '" + c.law + "'");
  EnsembleSpec spec = unit_wigner(n, *law, c.seed);
  const double nd = static_cast<double>(n);
  if (c.profile == "uniform") spec.profile = VarianceProfile::uniform(c.variance);
  else if (c.profile == "banded") spec.profile = VarianceProfile::banded(c.band_width, c.inside / nd, c.outside / nd);
  return spec;
}

// ---------------------------------------------------------------------------
// commands

namespace {

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> header) { row_of(header); }
  template <class... T>
  void row(const T&... fields) {
    bool first = true;
    ((out_ += (first ? "" : ","), out_ += cell(fields), first = false), ...);
    out_ += '\n';
  }
  std::string str() && { return std::move(out_); }

 private:
  void row_of(std::initializer_list<std::string_view> fields) {
    bool first = true;
    for (auto f : fields) {
      if (!first) out_ += ',';
      out_ += f;
      first = false;
    }
    out_ += '\n';
  }
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  template <class I>
    requires std::is_integral_v<I>
  static std::string cell(I v) { return std::to_string(v); }
  std::string out_;
};

using Files = std::vector<std::pair<std::string, std::string>>;

std::vector<std::vector<double>> trial_spectra(const EnsembleSpec& spec, std::size_t trials, unsigned threads) {
  std::vector<std::vector<double>> eig(trials);
  parallel_for(trials, threads, [&](std::size_t t) { eig[t] = eigenvalues_desc(sample(spec, t)); });
  return eig;
}

Files cmd_simulate(const ExperimentConfig& c) {
  Csv csv{"n", "trial", "levy_to_sc", "kolmogorov_to_sc"};
  for (std::size_t n : c.sizes) {
    const auto spec = make_spec(c, n);
    std::vector<double> levy(c.trials), kol(c.trials);
    parallel_for(c.trials, c.threads, [&](std::size_t t) {
      const auto mu = esd(eigenvalues_desc(sample(spec, t)));
      levy[t] = levy_distance(mu, SemicircleLaw{});
      kol[t] = kolmogorov_distance(mu, SemicircleLaw{});
    });
    for (std::size_t t = 0; t < c.trials; ++t) csv.row(n, t, levy[t], kol[t]);
  }
  return {{"simulate.csv", std::move(csv).str()}};
}

Files cmd_moments(const ExperimentConfig& c) {
  Csv csv{"n", "k", "trials", "empirical", "catalan", "abs_err"};
  std::optional<Csv> oracle;
  if (c.moments_oracle) oracle.emplace(Csv{"n", "k", "oracle", "empirical", "abs_err"});
  for (std::size_t n : c.sizes) {
    const auto spec = make_spec(c, n);
    const auto eig = trial_spectra(spec, c.trials, c.threads);
    for (unsigned k : c.moments_k) {
      std::vector<double> per(c.trials);
      for (std::size_t t = 0; t < c.trials; ++t)
        per[t] = trace_power(eig[t], static_cast<int>(k)) / static_cast<double>(n);
      const double emp = pairwise_sum(per) / static_cast<double>(c.trials);
      const double cat = static_cast<double>(semicircle_moment(k));
      csv.row(n, k, c.trials, emp, cat, std::abs(emp - cat));
      if (oracle) {
        const double exact = walk_sum_moment(spec.law, spec.profile, n, k);
        oracle->row(n, k, exact, emp, std::abs(emp - exact));
      }
    }
  }
  Files files{{"moments.csv", std::move(csv).str()}};
  if (oracle) files.emplace_back("moments_oracle.csv", std::move(*oracle).str());
  return files;
}

Files cmd_walks(const ExperimentConfig& c) {
  Csv census{"k", "t", "class_id", "sequence", "classification"};
  Csv summary{"k", "walks", "single_edge", "double_tree", "multi_other", "catalan", "dyck_paths", "dyck_bijective"};
  for (std::size_t k = 1; k <= c.walks_k_max; ++k) {
    std::size_t id = 0, single = 0, dtree = 0, other = 0;
    std::set<DyckPath> images;
    bool injective = true;
    for (std::size_t t = 1; t <= k + 1; ++t) {
      for_each_gamma(k, t, [&](const CanonicalWalk& w) {
        const WalkClass cls = classify(w);
        census.row(k, t, ++id, w.to_string(), to_string(cls));
        if (cls == WalkClass::single_edge) ++single;
        else if (cls == WalkClass::multi_other) ++other;
        else {
          ++dtree;
          injective = images.insert(dyck_of(w)).second && injective;
        }
      });
    }
    const auto paths = enumerate_dyck_paths(k);
    const bool bijective = injective && images == std::set<DyckPath>(paths.begin(), paths.end());
    const double cat = k % 2 == 0 ? static_cast<double>(semicircle_moment(static_cast<unsigned>(k))) : 0.0;
    summary.row(k, id, single, dtree, other, cat, paths.size(), bijective ? "true" : "false");
  }
  return {{"walks.csv", std::move(census).str()}, {"walks_summary.csv", std::move(summary).str()}};
}

Complex mean_transform(const std::vector<std::vector<double>>& eig, const UpperHalfPoint& z) {
  std::vector<double> re(eig.size()), im(eig.size());
  for (std::size_t t = 0; t < eig.size(); ++t) {
    const Complex s = resolvent_trace(eig[t], z);
    re[t] = s.real();
    im[t] = s.imag();
  }
  const double inv = 1.0 / static_cast<double>(eig.size());
  return {pairwise_sum(re) * inv, pairwise_sum(im) * inv};
}

Files cmd_stieltjes(const ExperimentConfig& c) {
  Csv csv{"n", "z_re", "z_im", "s_re", "s_im", "sc_re", "sc_im", "residual"};
  Files files;
  std::vector<double> grid;
  const auto steps = static_cast<std::size_t>(std::floor((c.grid_hi - c.grid_lo) / c.grid_step + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) grid.push_back(c.grid_lo + static_cast<double>(i) * c.grid_step);
  for (std::size_t n : c.sizes) {
    const auto spec = make_spec(c, n);
    const auto eig = trial_spectra(spec, c.trials, c.threads);
    for (const auto& [re, im] : c.stieltjes_z) {
      const UpperHalfPoint z(re, im);
      const Complex s = mean_transform(eig, z);
      const Complex sc = semicircle_stieltjes(z);
      csv.row(n, re, im, s.real(), s.imag(), sc.real(), sc.imag(), recursion_residual(s, z));
    }
    std::vector<double> values(grid.size());
    parallel_for(grid.size(), c.threads, [&](std::size_t i) {
      values[i] = std::max(0.0, mean_transform(eig, UpperHalfPoint(grid[i], c.stieltjes_b)).imag() / std::numbers::pi);
    });
    Csv dens{"a", "density"};
    for (std::size_t i = 0; i < grid.size(); ++i) dens.row(grid[i], values[i]);
    files.emplace_back("stieltjes_density_n" + std::to_string(n) + ".csv", std::move(dens).str());
  }
  files.insert(files.begin(), {"stieltjes.csv", std::move(csv).str()});
  return files;
}

Files cmd_concentration(const ExperimentConfig& c) {
  Csv csv{"statistic", "t", "empirical", "bound", "trials", "n", "seed"};
  const RampFunction f(c.ramp_p, c.ramp_q);
  for (std::size_t n : c.sizes) {
    const auto spec = make_spec(c, n);
    for (const auto& e : empirical_tail(spec, f, c.concentration_t, c.trials, c.threads))
      csv.row("ramp(" + format_double(f.p()) + ";" + format_double(f.q()) + ")", e.t, e.empirical_prob, e.bound,
              e.trials, n, c.seed);
  }
  return {{"concentration.csv", std::move(csv).str()}};
}

Files cmd_reduce(const ExperimentConfig& c) {
  Csv csv{"n",           "trial",          "eta",        "truncated_count", "centering_norm_sq", "delta_truncate",
          "delta_centralize", "delta_rescale", "lindeberg_at_eta", "min_coeff"};
  nlohmann::ordered_json traces = nlohmann::ordered_json::array();
  std::vector<double> eta_grid;
  for (int i = 1; i <= 20; ++i) eta_grid.push_back(0.05 * i);
  for (std::size_t n : c.sizes) {
    const auto spec = make_spec(c, n);
    const double eta = c.reduce_eta ? *c.reduce_eta : auto_eta(spec, eta_grid);
    const double eta_arr[] = {eta};
    const double lind = condition_sums(spec, c.reduce_c, eta_arr).lindeberg.front().second;
    std::vector<ReductionTrace> out(c.trials);
    parallel_for(c.trials, c.threads, [&](std::size_t t) { out[t] = pipeline(sample(spec, t), spec, eta, c.reduce_c).second; });
    for (std::size_t t = 0; t < c.trials; ++t) {
      const auto& tr = out[t];
      const auto& coeffs = tr.rescale_coeffs.values;
      const double min_coeff = *std::min_element(coeffs.begin(), coeffs.end());
      const std::size_t lowered =
          static_cast<std::size_t>(std::count_if(coeffs.begin(), coeffs.end(), [](double v) { return v < 1.0; }));
      csv.row(n, t, tr.eta, tr.truncated_count, tr.centering_norm_sq, tr.frobenius_delta_sq_per_stage[0].delta,
              tr.frobenius_delta_sq_per_stage[1].delta, tr.frobenius_delta_sq_per_stage[2].delta, lind, min_coeff);
      nlohmann::ordered_json j;
      j["n"] = n;
      j["trial"] = t;
      j["eta"] = tr.eta;
      j["truncated_count"] = tr.truncated_count;
      j["centering_norm_sq"] = tr.centering_norm_sq;
      nlohmann::ordered_json stages = nlohmann::ordered_json::array();
      for (const auto& s : tr.frobenius_delta_sq_per_stage) stages.push_back({{"stage", s.stage}, {"delta", s.delta}});
      j["frobenius_delta_sq_per_stage"] = std::move(stages);
      j["rescale_min_coeff"] = min_coeff;
      j["rescale_lowered_count"] = lowered;
      if (n <= 16) j["rescale_coeffs"] = coeffs;
      traces.push_back(std::move(j));
    }
  }
  return {{"reduce.csv", std::move(csv).str()}, {"reduce_traces.json", traces.dump(2) + "\n"}};
}

Files cmd_conditions(const ExperimentConfig& c) {
  Csv csv{"n", "statistic", "parameter", "value"};
  for (std::size_t n : c.sizes) {
    const auto spec = make_spec(c, n);
    const auto r = gaussian_row_check(spec, c.conditions_eps);
    const auto s = condition_sums(spec, c.conditions_c, c.conditions_eps);
    csv.row(n, "var_row_sum", "", s.var_row_sum_stat);
    csv.row(n, "row_excess", c.conditions_c, s.row_excess_stat);
    for (const auto& [eps, v] : s.lindeberg) csv.row(n, "lindeberg", eps, v);
    for (const auto& [eps, v] : r.gauss->tail_sums) csv.row(n, "gauss_tail_sum", eps, v);
    csv.row(n, "gauss_truncated_mean_sum", 1.0, r.gauss->truncated_mean_sum);
    csv.row(n, "gauss_truncated_variance_sum", 1.0, r.gauss->truncated_variance_sum);
  }
  return {{"conditions.csv", std::move(csv).str()}};
}

}  // namespace

RunManifest run(const ExperimentConfig& c) {
  const auto& cmds = known_commands();
  if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end())
    throw CliError(exit_unknown_command, "unknown command '" + c.command + "'");
  if (const auto d = validate(c); !d.empty()) {
    std::string msg = "invalid config:";
    for (const auto& s : d) msg += "\n  " + s;
    throw CliError(exit_bad_config, msg);
  }
  const auto start = std::chrono::steady_clock::now();

  std::error_code ec;
  fs::create_directories(c.outputs, ec);
  if (ec || !fs::is_directory(c.outputs)) throw CliError(exit_unwritable, "cannot create output directory " + c.outputs.string());

  Files files;
  if (c.command == "simulate") files = cmd_simulate(c);
  else if (c.command == "moments") files = cmd_moments(c);
  else if (c.command == "walks") files = cmd_walks(c);
  else if (c.command == "stieltjes") files = cmd_stieltjes(c);
  else if (c.command == "concentration") files = cmd_concentration(c);
  else if (c.command == "reduce") files = cmd_reduce(c);
  else files = cmd_conditions(c);

  RunManifest m;
  m.version = WIGNERLAB_VERSION;
  m.command = c.command;
  m.seed = c.seed;
  m.threads = c.threads;
  m.config = c.entries;
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(c.outputs / name, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError(exit_unwritable, "cannot write " + (c.outputs / name).string());
    out << body;
    out.close();
    if (!out) throw CliError(exit_unwritable, "cannot write " + (c.outputs / name).string());
  };
  for (const auto& [name, body] : files) {
    write(name, body);
    m.outputs.push_back({name, fnv1a64_hex(body), body.size()});
  }
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::ordered_json j;
  j["version"] = m.version;
  j["command"] = m.command;
  j["seed"] = m.seed;
  j["threads"] = m.threads;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.config) cfg[k] = v;
  j["config"] = std::move(cfg);
  nlohmann::ordered_json outs = nlohmann::ordered_json::array();
  for (const auto& o : m.outputs) outs.push_back({{"file", o.name}, {"fnv1a64", o.fnv1a64}, {"bytes", o.bytes}});
  j["outputs"] = std::move(outs);
  j["wall_seconds"] = m.wall_seconds;
  write("manifest.json", j.dump(2) + "\n");
  return m;
}

// ---------------------------------------------------------------------------

int main_entry(int argc, char** argv) {
  CLI::App app{"wignerlab: semicircle-law experiments"};
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  app.add_option("command", command, "simulate | moments | walks | stieltjes | concentration | reduce | conditions")
      ->required();
  app.add_option("--config", config_path, "config file")->required();
  app.add_option("--seed", seed, "override ensemble.seed");
  app.add_option("--out", out, "override run.out");
  app.add_option("--threads", threads, "worker threads (default: WIGNERLAB_THREADS, then run.threads)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_failure;
  }
  const auto& cmds = known_commands();
  if (std::find(cmds.begin(), cmds.end(), command) == cmds.end()) {
    std::cerr << "wignerlab: unknown command '" << command << "'\n";
    return exit_unknown_command;
  }
  try {
    ExperimentConfig c = load_config(config_path);
    if (!c.command.empty() && c.command != command)
      c.parse_diagnostics.push_back("config command '" + c.command + "' does not match '" + command + "'");
    c.command = command;
    if (seed) c.seed = *seed;
    if (out) c.outputs = *out;
    if (threads) {
      c.threads = *threads;
    } else if (const char* env = std::getenv("WIGNERLAB_THREADS"); env && *env) {
      std::uint64_t v = 0;
      if (!to_u64(env, v) || v == 0) throw CliError(exit_bad_config, "WIGNERLAB_THREADS must be a positive integer");
      c.threads = static_cast<unsigned>(v);
    }
    const RunManifest m = run(c);
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", m.wall_seconds);
    std::cout << "wrote " << m.outputs.size() << " file(s) to " << c.outputs.string() << " in " << secs << " s\n";
    return exit_ok;
  } catch (const CliError& e) {
    std::cerr << "wignerlab: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "wignerlab: " << e.what() << "\n";
    return exit_failure;
  }
}

}  // namespace wignerlab::cli
