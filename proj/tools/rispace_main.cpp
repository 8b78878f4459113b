#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rispace/cli.hpp"
#include "rispace/error.hpp"
#include "rispace/grammar.hpp"
#include "rispace/interp.hpp"
#include "rispace/serialize.hpp"
#include "rispace/spaces.hpp"

using namespace rispace;

namespace {

/// Turns "--key value" / "--key=value" leftovers into settings; '-' in keys becomes '_'.
void apply_extras(ConfigFile& cfg, const std::vector<std::string>& extras) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::string arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() < 3)
      throw Error(ErrorCode::ConfigError, "unexpected argument '" + arg + "'");
    arg = arg.substr(2);
    std::string value;
    if (const auto eq = arg.find('='); eq != std::string::npos) {
      value = arg.substr(eq + 1);
      arg = arg.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw Error(ErrorCode::ConfigError, "--" + arg + " needs a value");
      value = extras[++i];
    }
    for (char& c : arg)
      if (c == '-') c = '_';
    cfg.set(arg, value);
  }
}

Domain domain_arg(const std::string& s) {
  if (s == "real") return Domain::RealLine;
  if (s == "torus") return Domain::Torus;
  throw Error(ErrorCode::ConfigError, "domain must be real or torus");
}

nlohmann::ordered_json pl_json(const PiecewiseLinear& h) {
  nlohmann::ordered_json j;
  j["domain"] = std::string(to_string(h.domain()));
  j["breakpoints"] = std::vector<double>(h.breakpoints().begin(), h.breakpoints().end());
  std::vector<double> left, right;
  for (const auto& c : h.left_values()) left.push_back(c.real());
  for (const auto& c : h.right_values()) right.push_back(c.real());
  j["left"] = left;
  j["right"] = right;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rearrangement-invariant spaces: norms, interpolation and inequality verification"};
  app.require_subcommand(1);

  app.add_subcommand("list", "List the verification suites");

  std::string config_path, suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite; extra --key value pairs override the config");
  verify->alias("run");
  verify->add_option("--config,-c", config_path, "key = value configuration file");
  verify->add_option("--suite,-s", suite, "Suite id (see `list`)");
  verify->allow_extras();

  std::string m_config, m_suite = "blasco-endpoints", m_symbol;
  auto* mult = app.add_subcommand("multiplier", "Bilinear multiplier suites on the torus");
  mult->add_option("--config,-c", m_config, "key = value configuration file");
  mult->add_option("--suite,-s", m_suite, "blasco-endpoints or grand-chain")->capture_default_str();
  mult->add_option("--m", m_symbol, "Symbol: decay, one, zero or a CSV file of k,k',re,im rows");
  mult->allow_extras();

  std::string space_text, f_text, g_text, domain = "real";
  auto* norm_cmd = app.add_subcommand("norm", "Norm of a step function in a space");
  norm_cmd->add_option("--space", space_text, "Space, e.g. lorentz(2, 1)")->required();
  norm_cmd->add_option("--f", f_text, "Function: JSON, @file, indicator(a, b) or steps([..], [..])")->required();
  norm_cmd->add_option("--domain", domain, "real or torus")->capture_default_str();

  std::string r_f, r_domain = "real";
  auto* rearr = app.add_subcommand("rearrange", "Decreasing rearrangement as JSON");
  rearr->add_option("--f", r_f, "Function")->required();
  rearr->add_option("--domain", r_domain, "real or torus")->capture_default_str();

  std::string couple_text = "couple(L1, Linf)", k_f, k_params, k_domain = "real";
  std::vector<double> ts;
  auto* kfun = app.add_subcommand("kfun", "K-functional values, or the K-method norm with --params");
  kfun->add_option("--couple", couple_text, "Couple, e.g. couple(L1, Linf)")->capture_default_str();
  kfun->add_option("--f", k_f, "Function")->required();
  kfun->add_option("--t", ts, "Values of t");
  kfun->add_option("--params", k_params, "params(theta=.., b=\"..\", E=.., T=.., h=..)");
  kfun->add_option("--domain", k_domain, "real or torus")->capture_default_str();

  std::string c_f, c_g, c_domain = "real";
  auto* conv = app.add_subcommand("conv", "Exact convolution f * g as piecewise-linear JSON");
  conv->add_option("--f", c_f, "Function")->required();
  conv->add_option("--g", c_g, "Function")->required();
  conv->add_option("--domain", c_domain, "real or torus")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (app.got_subcommand("list")) {
      std::cout << list_suites();
      return 0;
    }
    if (verify->parsed() || mult->parsed()) {
      const bool is_mult = mult->parsed();
      RunConfig rc;
      const std::string& path = is_mult ? m_config : config_path;
      if (!path.empty()) rc.settings = ConfigFile::load(path);
      if (is_mult) {
        if (!rc.settings.has("suite") || mult->count("--suite")) rc.settings.set("suite", m_suite);
        if (!m_symbol.empty()) rc.settings.set("m", m_symbol);
      } else if (!suite.empty()) {
        rc.settings.set("suite", suite);
      }
      apply_extras(rc.settings, (is_mult ? mult : verify)->remaining());
      return run(rc, std::cout, std::cerr);
    }
    if (norm_cmd->parsed()) {
      const auto f = parse_function(f_text, domain_arg(domain));
      std::cout << format_double(norm(parse_space(space_text), f)) << "\n";
      return 0;
    }
    if (rearr->parsed()) {
      std::cout << to_json(decreasing_rearrangement(parse_function(r_f, domain_arg(r_domain)))).dump(2) << "\n";
      return 0;
    }
    if (kfun->parsed()) {
      const auto couple = parse_couple(couple_text);
      const auto f = parse_function(k_f, domain_arg(k_domain));
      if (!k_params.empty()) {
        std::cout << format_double(k_method_norm(couple, parse_params(k_params), f)) << "\n";
        return 0;
      }
      if (ts.empty()) throw Error(ErrorCode::ConfigError, "kfun needs --t values or --params");
      for (double t : ts) std::cout << format_double(t) << " " << format_double(k_functional(couple, t, f)) << "\n";
      return 0;
    }
    if (conv->parsed()) {
      const Domain d = domain_arg(c_domain);
      std::cout << pl_json(convolve_continuous(parse_function(c_f, d), parse_function(c_g, d))).dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? 3 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
