// Command-line front end: exact/asymptotic counting, saddle data, the
// Gumbel diagnostic, uniform sampling, and the analytic verifications.
//
// Every invocation writes exactly one run manifest (JSON, one line) to
// stderr or --manifest, and its data to stdout or --out.  Exit codes:
// 0 success, 1 usage, 2 domain error, 3 non-convergence.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meinardus/meinardus.hpp"

namespace {

using nlohmann::json;

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string fmt_prob(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// decimal with 15 significant digits from a natural log, usable far
// beyond double range
std::string fmt_from_log(double l) {
  if (l == meinardus::neg_inf) return "0";
  const double l10 = l / std::log(10.0);
  double e10 = std::floor(l10);
  double mant = std::pow(10.0, l10 - e10);
  if (mant >= 10.0) {
    mant /= 10.0;
    e10 += 1.0;
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.14fe%+03d", mant, static_cast<int>(e10));
  return buf;
}

std::string fmt_rational(const meinardus::Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1)
    os << "/" << boost::multiprecision::denominator(q);
  return os.str();
}

std::string iso8601_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty grid list");
  return out;
}

std::vector<std::uint64_t> parse_grid_u64(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw std::invalid_argument("empty grid list");
  return out;
}

std::string resolve_out_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("MEINARDUS_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string d(dir);
  if (d.back() != '/') d += '/';
  return d + path;
}

meinardus::WeightModel load_model(const std::string& path, json& spec_out) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file: " + path);
  try {
    spec_out = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("model file is not valid JSON: " + std::string(e.what()));
  }
  return meinardus::model_from_json(spec_out);
}

void emit_manifest(const std::string& manifest_path, const std::string& subcommand,
                   const json& model_spec, const json& parameters,
                   std::optional<std::uint64_t> seed, bool certified) {
  json m;
  m["subcommand"] = subcommand;
  m["model_spec"] = model_spec;
  m["parameters"] = parameters;
  if (seed) m["seed"] = *seed;
  else m["seed"] = nullptr;
  m["tool_version"] = meinardus::version_string;
  m["timestamp"] = iso8601_now();
  m["metadata_certified"] = certified;
  if (!certified) m["warning"] = "user table weights: pole metadata not certified";
  const std::string line = m.dump() + "\n";
  if (manifest_path.empty()) {
    std::fputs(line.c_str(), stderr);
  } else {
    std::ofstream out(resolve_out_path(manifest_path));
    if (!out) throw std::invalid_argument("cannot open manifest path: " + manifest_path);
    out << line;
  }
}

class DataSink {
public:
  explicit DataSink(const std::string& out_path) {
    if (!out_path.empty()) {
      file_.open(resolve_out_path(out_path));
      if (!file_) throw std::invalid_argument("cannot open output path: " + out_path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
  std::ofstream file_;
};

struct CommonOpts {
  std::string model_path;
  std::string out_path;
  std::string manifest_path;
  std::string format = "csv";
};

void add_common(CLI::App* sub, CommonOpts& c, bool with_format = true) {
  sub->add_option("--model", c.model_path, "weight model JSON file")->required();
  sub->add_option("--out", c.out_path, "data output path (default stdout)");
  sub->add_option("--manifest", c.manifest_path, "manifest output path (default stderr)");
  if (with_format) sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

meinardus::CountMode parse_mode(const std::string& mode, const meinardus::WeightModel& m) {
  if (mode == "exact") return meinardus::CountMode::ExactRational;
  if (mode == "logfloat") return meinardus::CountMode::LogFloat;
  // auto: exact when the weights allow it
  return meinardus::has_rational_weights(m) ? meinardus::CountMode::ExactRational
                                            : meinardus::CountMode::LogFloat;
}

std::string value_string(const meinardus::SeriesTable& t, std::size_t n) {
  if (t.mode == meinardus::CountMode::ExactRational) return fmt_rational(t.count_exact(n));
  return fmt_from_log(t.log_count(n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted integer partition asymptotics"};
  app.require_subcommand(1);

  // ---- count ----
  CommonOpts c_count;
  std::uint64_t count_n = 0;
  std::int64_t count_trunc = -1;
  std::string count_mode = "auto";
  bool count_all = false;
  auto* sub_count = app.add_subcommand("count", "coefficients of the (truncated) Euler product");
  add_common(sub_count, c_count);
  sub_count->add_option("--n", count_n, "target n")->required();
  sub_count->add_option("--trunc", count_trunc, "largest allowed part (default: none)");
  sub_count->add_option("--mode", count_mode, "exact | logfloat | auto")
      ->check(CLI::IsMember({"exact", "logfloat", "auto"}));
  sub_count->add_flag("--all", count_all, "emit rows for every n' <= n");

  // ---- cdf ----
  CommonOpts c_cdf;
  std::uint64_t cdf_n = 0, cdf_m = 0;
  std::string cdf_mode = "auto";
  auto* sub_cdf = app.add_subcommand("cdf", "largest-part CDF P(X_n <= m)");
  add_common(sub_cdf, c_cdf);
  sub_cdf->add_option("--n", cdf_n, "partition size")->required();
  sub_cdf->add_option("--m", cdf_m, "largest-part bound")->required();
  sub_cdf->add_option("--mode", cdf_mode, "exact | logfloat | auto")
      ->check(CLI::IsMember({"exact", "logfloat", "auto"}));

  // ---- saddle ----
  CommonOpts c_saddle;
  std::uint64_t saddle_n = 0;
  auto* sub_saddle = app.add_subcommand("saddle", "saddle point and count estimate at n");
  add_common(sub_saddle, c_saddle, false);
  sub_saddle->add_option("--n", saddle_n, "target n")->required();

  // ---- gumbel ----
  CommonOpts c_gumbel;
  std::uint64_t gumbel_n = 0;
  std::string gumbel_grid = "-2,-1,0,1,2,3";
  std::string gumbel_norm = "alpha";
  std::string gumbel_mode = "logfloat";
  auto* sub_gumbel = app.add_subcommand("gumbel", "largest-part law against its Gumbel limit");
  add_common(sub_gumbel, c_gumbel, false);
  sub_gumbel->add_option("--n", gumbel_n, "partition size")->required();
  sub_gumbel->add_option("--grid", gumbel_grid, "comma-separated t values");
  sub_gumbel->add_option("--normalization", gumbel_norm, "alpha (saddle) or a (leading order)")
      ->check(CLI::IsMember({"alpha", "a"}));
  sub_gumbel->add_option("--mode", gumbel_mode, "exact | logfloat")
      ->check(CLI::IsMember({"exact", "logfloat"}));

  // ---- sample ----
  CommonOpts c_sample;
  std::uint64_t sample_n = 0, sample_count = 1000, sample_seed = 0, sample_max_tries = 1000000;
  auto* sub_sample = app.add_subcommand("sample", "uniform samples via tilted rejection");
  add_common(sub_sample, c_sample, false);
  sub_sample->add_option("--n", sample_n, "partition size")->required();
  sub_sample->add_option("--samples", sample_count, "number of accepted samples")->required();
  sub_sample->add_option("--seed", sample_seed, "RNG seed")->required();
  sub_sample->add_option("--max-tries", sample_max_tries, "rejection budget per sample");

  // ---- verify ----
  auto* sub_verify = app.add_subcommand("verify", "numerical checks of the analytic identities");
  sub_verify->require_subcommand(1);

  CommonOpts c_mellin;
  double mellin_alpha = 0.3, mellin_delta = 1.5, mellin_ymax = 60.0, mellin_step = 0.004;
  std::string mellin_m = "inf";
  auto* sub_mellin = sub_verify->add_subcommand("mellin", "contour integral vs direct F");
  add_common(sub_mellin, c_mellin, false);
  sub_mellin->add_option("--alpha", mellin_alpha, "evaluation point e^{-alpha}")->required();
  sub_mellin->add_option("--m", mellin_m, "truncation (integer or 'inf')");
  sub_mellin->add_option("--delta", mellin_delta, "contour offset past rho");
  sub_mellin->add_option("--ymax", mellin_ymax, "contour half-height");
  sub_mellin->add_option("--step", mellin_step, "quadrature step");

  CommonOpts c_perron;
  double perron_delta = 1.5, perron_wim = 0.0, perron_T = 0.0;
  std::string perron_mlist = "100,1000,10000";
  auto* sub_perron = sub_verify->add_subcommand("perron", "truncated Dirichlet remainder decay");
  add_common(sub_perron, c_perron, false);
  sub_perron->add_option("--delta", perron_delta, "Re(w) = 1 + delta, delta > 1");
  sub_perron->add_option("--w-im", perron_wim, "Im(w)");
  sub_perron->add_option("--m-list", perron_mlist, "comma-separated truncations");
  sub_perron->add_option("--T", perron_T, "contour height (0: half the admissible max)");

  CommonOpts c_m3;
  std::string m3_alphas = "0.1,0.03,0.01";
  std::size_t m3_grid = 10000;
  auto* sub_m3 = sub_verify->add_subcommand("m3", "minor-arc lower bound growth");
  add_common(sub_m3, c_m3, false);
  sub_m3->add_option("--alpha-list", m3_alphas, "comma-separated alpha values");
  sub_m3->add_option("--grid", m3_grid, "u-grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sub_count) {
      json spec;
      const auto model = load_model(c_count.model_path, spec);
      const auto mode = parse_mode(count_mode, model);
      std::optional<std::size_t> trunc;
      if (count_trunc >= 0) trunc = static_cast<std::size_t>(count_trunc);
      json params{{"n", std::to_string(count_n)},
                  {"trunc", count_trunc < 0 ? "none" : std::to_string(count_trunc)},
                  {"mode", mode == meinardus::CountMode::ExactRational ? "exact" : "logfloat"},
                  {"all", count_all ? "true" : "false"},
                  {"format", c_count.format}};
      emit_manifest(c_count.manifest_path, "count", spec, params, std::nullopt,
                    model.certified_metadata());
      const auto table = meinardus::expand(model, count_n, trunc, mode);
      DataSink sink(c_count.out_path);
      const std::string mcol = trunc ? std::to_string(*trunc) : "";
      if (c_count.format == "csv") {
        sink.stream() << "n,m,value\n";
        if (count_all)
          for (std::size_t i = 0; i <= count_n; ++i)
            sink.stream() << i << "," << mcol << "," << value_string(table, i) << "\n";
        else
          sink.stream() << count_n << "," << mcol << "," << value_string(table, count_n) << "\n";
      } else {
        json rows = json::array();
        auto row = [&](std::size_t i) {
          json r{{"n", i}, {"value", value_string(table, i)}};
          if (trunc) r["m"] = *trunc;
          else r["m"] = nullptr;
          rows.push_back(r);
        };
        if (count_all)
          for (std::size_t i = 0; i <= count_n; ++i) row(i);
        else
          row(count_n);
        sink.stream() << rows.dump() << "\n";
      }
      return 0;
    }

    if (*sub_cdf) {
      json spec;
      const auto model = load_model(c_cdf.model_path, spec);
      const auto mode = parse_mode(cdf_mode, model);
      json params{{"n", std::to_string(cdf_n)},
                  {"m", std::to_string(cdf_m)},
                  {"mode", mode == meinardus::CountMode::ExactRational ? "exact" : "logfloat"},
                  {"format", c_cdf.format}};
      emit_manifest(c_cdf.manifest_path, "cdf", spec, params, std::nullopt,
                    model.certified_metadata());
      std::string value;
      if (mode == meinardus::CountMode::ExactRational)
        value = fmt_rational(meinardus::cdf_exact_rational(model, cdf_n, cdf_m));
      else
        value = fmt_g(meinardus::cdf_exact(model, cdf_n, cdf_m, mode));
      DataSink sink(c_cdf.out_path);
      if (c_cdf.format == "csv")
        sink.stream() << "n,m,value\n" << cdf_n << "," << cdf_m << "," << value << "\n";
      else
        sink.stream() << json{{"n", cdf_n}, {"m", cdf_m}, {"value", value}}.dump() << "\n";
      return 0;
    }

    if (*sub_saddle) {
      json spec;
      const auto model = load_model(c_saddle.model_path, spec);
      json params{{"n", std::to_string(saddle_n)}};
      emit_manifest(c_saddle.manifest_path, "saddle", spec, params, std::nullopt,
                    model.certified_metadata());
      const auto sol = meinardus::solve_saddle(model, saddle_n);
      json out{{"alpha_n", sol.alpha_n},
               {"alpha_expansion", sol.alpha_expansion},
               {"F", sol.F_value},
               {"B", sol.B_value},
               {"h", sol.h},
               {"residual", sol.residual},
               {"meinardus_log_estimate", meinardus::meinardus_log_estimate(sol)}};
      DataSink sink(c_saddle.out_path);
      sink.stream() << out.dump() << "\n";
      return 0;
    }

    if (*sub_gumbel) {
      json spec;
      const auto model = load_model(c_gumbel.model_path, spec);
      const auto grid = parse_grid(gumbel_grid);
      const auto norm = gumbel_norm == "alpha" ? meinardus::Normalization::ViaAlphaN
                                               : meinardus::Normalization::ViaAOfN;
      const auto mode = gumbel_mode == "exact" ? meinardus::CountMode::ExactRational
                                               : meinardus::CountMode::LogFloat;
      json params{{"n", std::to_string(gumbel_n)},
                  {"grid", gumbel_grid},
                  {"normalization", gumbel_norm},
                  {"mode", gumbel_mode}};
      emit_manifest(c_gumbel.manifest_path, "gumbel", spec, params, std::nullopt,
                    model.certified_metadata());
      const auto diag = meinardus::diagnostic(model, gumbel_n, grid, norm, mode);
      DataSink sink(c_gumbel.out_path);
      sink.stream() << "t,m,exact,closed_form,gumbel,abs_err\n";
      for (const auto& r : diag.grid)
        sink.stream() << fmt_g(r.t) << "," << r.m << "," << fmt_prob(r.exact_cdf) << ","
                      << fmt_prob(r.closed_form_cdf) << "," << fmt_prob(r.gumbel_cdf) << ","
                      << fmt_prob(std::abs(r.exact_cdf - r.gumbel_cdf)) << "\n";
      sink.stream() << json{{"n", diag.n},
                            {"normalization", gumbel_norm},
                            {"sup_error", diag.sup_error}}
                           .dump()
                    << "\n";
      return 0;
    }

    if (*sub_sample) {
      json spec;
      const auto model = load_model(c_sample.model_path, spec);
      json params{{"n", std::to_string(sample_n)},
                  {"samples", std::to_string(sample_count)},
                  {"max_tries", std::to_string(sample_max_tries)}};
      emit_manifest(c_sample.manifest_path, "sample", spec, params, sample_seed,
                    model.certified_metadata());
      const auto emp = meinardus::empirical_largest_part(model, sample_n, sample_count,
                                                         sample_seed, sample_max_tries);
      DataSink sink(c_sample.out_path);
      sink.stream() << "largest_part,count\n";
      for (std::size_t mpart = 1; mpart <= emp.freq.size(); ++mpart)
        if (emp.freq[mpart - 1] > 0)
          sink.stream() << mpart << "," << emp.freq[mpart - 1] << "\n";
      sink.stream() << json{{"ks", emp.ks}, {"tries_mean", emp.tries_mean}, {"seed", sample_seed}}
                           .dump()
                    << "\n";
      return 0;
    }

    if (*sub_mellin) {
      json spec;
      const auto model = load_model(c_mellin.model_path, spec);
      std::optional<std::uint64_t> trunc;
      if (mellin_m != "inf") trunc = std::stoull(mellin_m);
      json params{{"alpha", fmt_g(mellin_alpha)}, {"m", mellin_m},
                  {"delta", fmt_g(mellin_delta)}, {"ymax", fmt_g(mellin_ymax)},
                  {"step", fmt_g(mellin_step)}};
      emit_manifest(c_mellin.manifest_path, "verify mellin", spec, params, std::nullopt,
                    model.certified_metadata());
      const auto chk = meinardus::mellin_F_check(model, mellin_alpha, trunc, mellin_delta,
                                                 mellin_ymax, mellin_step);
      const bool pass = chk.converged && chk.abs_diff < 1e-6;
      json out{{"alpha", mellin_alpha},
               {"m", trunc ? json(*trunc) : json("inf")},
               {"delta", mellin_delta},
               {"ymax", mellin_ymax},
               {"step", mellin_step},
               {"integral", chk.integral},
               {"direct", chk.direct},
               {"abs_diff", chk.abs_diff},
               {"converged", chk.converged},
               {"pass", pass}};
      DataSink sink(c_mellin.out_path);
      sink.stream() << out.dump() << "\n";
      return chk.converged ? 0 : 3;
    }

    if (*sub_perron) {
      json spec;
      const auto model = load_model(c_perron.model_path, spec);
      const auto mlist = parse_grid_u64(perron_mlist);
      const meinardus::sf::cdouble w(1.0 + perron_delta, perron_wim);
      json params{{"delta", fmt_g(perron_delta)}, {"w_im", fmt_g(perron_wim)},
                  {"m_list", perron_mlist}, {"T", fmt_g(perron_T)}};
      emit_manifest(c_perron.manifest_path, "verify perron", spec, params, std::nullopt,
                    model.certified_metadata());
      json entries = json::array();
      double prev = -1.0;
      bool decreasing = true;
      for (const auto mcut : mlist) {
        const double tmax = meinardus::perron_t_max(model, mcut, perron_delta);
        const double T = perron_T > 0.0 ? perron_T : 0.5 * tmax;
        const auto chk = meinardus::perron_truncation_check(model, w, mcut, T);
        const double om = std::abs(chk.omega);
        if (prev >= 0.0 && om >= prev) decreasing = false;
        prev = om;
        entries.push_back(json{{"m", mcut},
                               {"T", chk.t_used},
                               {"T_max", chk.t_max},
                               {"lhs_re", chk.lhs.real()},
                               {"lhs_im", chk.lhs.imag()},
                               {"rhs_re", chk.rhs.real()},
                               {"rhs_im", chk.rhs.imag()},
                               {"omega_abs", om}});
      }
      json out{{"w_re", w.real()}, {"w_im", w.imag()}, {"entries", entries},
               {"decreasing", decreasing}, {"pass", decreasing}};
      DataSink sink(c_perron.out_path);
      sink.stream() << out.dump() << "\n";
      return 0;
    }

    if (*sub_m3) {
      json spec;
      const auto model = load_model(c_m3.model_path, spec);
      const auto alphas = parse_grid(m3_alphas);
      json params{{"alpha_list", m3_alphas}, {"grid", std::to_string(m3_grid)}};
      emit_manifest(c_m3.manifest_path, "verify m3", spec, params, std::nullopt,
                    model.certified_metadata());
      json entries = json::array();
      double prev = -1.0;
      bool increasing = true;
      for (double a : alphas) {
        const auto chk = meinardus::check_m3(model, a, m3_grid);
        if (prev >= 0.0 && chk.min_S <= prev) increasing = false;
        prev = chk.min_S;
        entries.push_back(json{{"alpha", a},
                               {"min_S", chk.min_S},
                               {"argmin_u", chk.argmin_u},
                               {"ratio_quarter", chk.ratio_quarter},
                               {"ratio_half", chk.ratio_half},
                               {"ratio_one", chk.ratio_one}});
      }
      // the list is conventionally decreasing in alpha, so min_S should grow
      json out{{"entries", entries}, {"increasing_min", increasing}, {"pass", increasing}};
      DataSink sink(c_m3.out_path);
      sink.stream() << out.dump() << "\n";
      return 0;
    }
  } catch (const meinardus::convergence_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
