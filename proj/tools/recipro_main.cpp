// recipro: command-line front end for the reciprocating-function toolkit.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "recipro/bounds.hpp"
#include "recipro/errors.hpp"
#include "recipro/harness.hpp"
#include "recipro/inference.hpp"
#include "recipro/io.hpp"
#include "recipro/mixture.hpp"
#include "recipro/reciprocator.hpp"
#include "recipro/selfnorm.hpp"

namespace {

using nlohmann::ordered_json;
using namespace recipro;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;

struct Output {
  std::string result_json;
  int exit_code = kExitOk;
};

struct Inputs {
  std::map<std::string, std::string> digests;

  std::string load(const std::string& flag, const std::string& path) {
    std::string text = io::read_file(path);
    digests[flag] = io::digest(text);
    return text;
  }
};

Rational parse_exact(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const ValidationError&) {
    throw ValidationError(std::string("--") + what + ": malformed number '" + text + "'");
  }
}

double parse_real(const std::string& text, const char* what) { return to_double(parse_exact(text, what)); }

ordered_json exact_value(const Rational& v) { return {{"exact", to_string(v)}, {"value", to_double(v)}}; }

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(to_double(r));
  return out;
}

MixtureIndex parse_index(const std::string& s) {
  if (s == "W" || s == "w") return MixtureIndex::W;
  if (s == "Y" || s == "y") return MixtureIndex::Y;
  throw ValidationError("--index must be W or Y");
}

// Flags that were given on the command line, as text.
std::map<std::string, std::string> given_flags(const CLI::App& sub) {
  std::map<std::string, std::string> out;
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string joined;
    for (const auto& r : opt->results()) joined += (joined.empty() ? "" : ",") + r;
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    out[name] = joined;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reciprocating functions, mixture decompositions and self-normalized sums"};
  app.set_version_flag("--version", std::string(io::version()));
  app.require_subcommand(1);

  std::string dist_path, sample_path, mixture_path, config_path, out_path;
  std::string index = "W", x_text, u_text = "1", stat_kind = "sw", kind, method = "c5";
  std::string p_text, lambda_text;
  std::optional<std::uint64_t> seed;
  double theta = 0.0, alpha = 0.05;
  std::size_t n = 1, B = 2000;

  auto* decompose = app.add_subcommand("decompose", "Mixture of two-point zero-mean laws indexed by W or Y");
  decompose->add_option("--dist", dist_path, "Distribution JSON")->required();
  decompose->add_option("--index", index, "W or Y");

  auto* recompose = app.add_subcommand("recompose", "Collapse a mixture JSON back into one law");
  recompose->add_option("--mixture", mixture_path, "Mixture JSON (decompose output)")->required();

  auto* eval = app.add_subcommand("eval", "r(x,u), H(x,u), W and Y at one point");
  eval->add_option("--dist", dist_path)->required();
  eval->add_option("--x", x_text)->required();
  eval->add_option("--u", u_text, "randomizer in [0,1]");

  auto* stat = app.add_subcommand("stat", "Self-normalized statistic of a sample drawn from a known law");
  stat->add_option("--dist", dist_path)->required();
  stat->add_option("--sample", sample_path, "CSV, one value per line")->required();
  stat->add_option("--stat", stat_kind, "sw, sy or classic");
  stat->add_option("--lambda", lambda_text, "exponent for sy (default 1)");
  stat->add_option("--seed", seed)->required();

  auto* bounds = app.add_subcommand("bounds", "Evaluate a bound or constant");
  bounds->add_option("--kind", kind,
                     "c5, c3, hoeffding, normal-tail, bernoulli-lc, lambda-star, c30, c50, asymmetry-p")
      ->required();
  bounds->add_option("--x", x_text);
  bounds->add_option("--n", n);
  bounds->add_option("--p", p_text);
  bounds->add_option("--lambda", lambda_text);
  bounds->add_option("--dist", dist_path);

  auto* test = app.add_subcommand("test", "Conservative test of E X = theta");
  test->add_option("--sample", sample_path)->required();
  test->add_option("--theta", theta);
  test->add_option("--alpha", alpha);
  test->add_option("--method", method, "c5, bernoulli-lc or bootstrap");
  test->add_option("--B", B, "bootstrap replications");
  test->add_option("--seed", seed)->required();

  auto* ci = app.add_subcommand("ci", "Confidence interval by test inversion");
  ci->add_option("--sample", sample_path)->required();
  ci->add_option("--alpha", alpha);
  ci->add_option("--method", method, "c5, bernoulli-lc or bootstrap");
  ci->add_option("--B", B, "bootstrap replications");
  ci->add_option("--seed", seed)->required();

  auto* verify = app.add_subcommand("verify", "Check the inequalities on a configuration");
  verify->add_option("--config", config_path)->required();
  verify->add_option("--seed", seed)->required();
  verify->add_option("--out", out_path, "report file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const auto started = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  Inputs inputs;
  Output out;

  try {
    if (sub == decompose) {
      const auto dist = io::parse_dist(inputs.load("dist", dist_path));
      const auto mix = parse_index(index) == MixtureIndex::W ? decompose_w(dist) : decompose_y(dist);
      out.result_json = io::mixture_to_json(mix);
    } else if (sub == recompose) {
      const auto mix = io::parse_mixture(inputs.load("mixture", mixture_path));
      out.result_json = io::dist_to_json(recipro::recompose(mix));
    } else if (sub == eval) {
      const DiscreteReciprocator recip(io::parse_dist(inputs.load("dist", dist_path)));
      const Rational x = parse_exact(x_text, "x");
      const Rational u = parse_exact(u_text, "u");
      if (u < 0 || u > 1) throw ValidationError("--u must lie in [0,1]");
      if (!recip.dist().find(x)) throw ValidationError("--x is not an atom of the law");
      const Rational r = recip.reciprocal(x, u);
      out.result_json = ordered_json{{"x", exact_value(x)},
                                     {"u", exact_value(u)},
                                     {"r", exact_value(r)},
                                     {"H", exact_value(recip.level(x, u))},
                                     {"W", exact_value(abs(Rational(x - r)))},
                                     {"Y", exact_value(abs(Rational(x * r)))}}
                            .dump();
    } else if (sub == stat) {
      const DiscreteReciprocator recip(io::parse_dist(inputs.load("dist", dist_path)));
      const auto x = to_doubles(io::parse_sample_csv(inputs.load("sample", sample_path)));
      const ObservationBatch batch = attach_w_y(x, recip, *seed);
      ordered_json j{{"stat", stat_kind}, {"n", batch.size()}};
      if (stat_kind == "sw") {
        j["value"] = s_w(batch);
      } else if (stat_kind == "sy") {
        const double lambda = lambda_text.empty() ? 1.0 : parse_real(lambda_text, "lambda");
        j["lambda"] = lambda;
        j["value"] = s_y(batch, lambda);
      } else if (stat_kind == "classic") {
        j["value"] = s_classic(x);
      } else {
        throw ValidationError("--stat must be sw, sy or classic");
      }
      j["seed"] = *seed;
      out.result_json = j.dump();
    } else if (sub == bounds) {
      ordered_json j{{"kind", kind}};
      auto need_x = [&] {
        if (x_text.empty()) throw ValidationError("--kind " + kind + " needs --x");
        const double x = parse_real(x_text, "x");
        j["x"] = x;
        return x;
      };
      auto need_p = [&] {
        if (p_text.empty()) throw ValidationError("--kind " + kind + " needs --p");
        const double p = parse_real(p_text, "p");
        j["p"] = p;
        return p;
      };
      if (kind == "c5" || kind == "normal-c5") {
        j["value"] = normal_c5_bound(need_x());
      } else if (kind == "c3" || kind == "normal-c3") {
        j["value"] = normal_c3_bound(need_x());
      } else if (kind == "hoeffding") {
        j["value"] = hoeffding_bound(need_x());
      } else if (kind == "normal-tail") {
        j["value"] = normal_tail(need_x());
      } else if (kind == "bernoulli-lc") {
        const double x = need_x();
        const double p = need_p();
        const double lambda = lambda_text.empty() ? lambda_star(p) : parse_real(lambda_text, "lambda");
        j["n"] = n;
        j["lambda"] = lambda;
        j["value"] = bernoulli_lc_bound(n, p, lambda, x);
      } else if (kind == "lambda-star") {
        j["value"] = lambda_star(need_p());
      } else if (kind == "c30") {
        j["value"] = c30();
      } else if (kind == "c50") {
        j["value"] = c50();
      } else if (kind == "asymmetry-p") {
        if (dist_path.empty()) throw ValidationError("--kind asymmetry-p needs --dist");
        const Rational p = asymmetry_p(io::parse_dist(inputs.load("dist", dist_path)));
        j["exact"] = to_string(p);
        j["value"] = to_double(p);
      } else {
        throw ValidationError("unknown --kind '" + kind + "'");
      }
      out.result_json = j.dump();
    } else if (sub == test || sub == ci) {
      const auto sample = io::parse_sample_csv(inputs.load("sample", sample_path));
      TestOptions options;
      options.alpha = alpha;
      options.method = parse_test_method(method);
      options.seed = *seed;
      options.bootstrap_reps = B;
      if (sub == test) {
        const TestResult r = test_mean(sample, theta, options);
        out.result_json = io::test_result_to_json(r);
      } else {
        out.result_json = io::interval_to_json(confidence_interval(sample, options));
      }
    } else if (sub == verify) {
      const std::filesystem::path config(config_path);
      const auto checks = io::parse_verify_config(inputs.load("config", config_path), config.parent_path());
      const auto reports = run_checks(checks, *seed);
      out.result_json = io::reports_to_json(reports);
      for (const auto& r : reports)
        if (!r.pass) out.exit_code = kExitVerification;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }

  io::RunManifest manifest;
  manifest.command = sub->get_name();
  manifest.flags = given_flags(*sub);
  manifest.seed = seed;
  manifest.input_digests = inputs.digests;
  const std::string document = io::wrap_output(manifest, out.result_json);

  if (sub == verify && !out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f || !(f << document)) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitError;
    }
  } else {
    std::cout << document;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  std::cerr << "wall time: " << elapsed.count() << " s\n";
  return out.exit_code;
}
