#include "rispace/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "rispace/bilinear.hpp"
#include "rispace/corpus.hpp"
#include "rispace/error.hpp"
#include "rispace/multiplier.hpp"
#include "rispace/varying.hpp"
#include "rispace/young.hpp"

namespace rispace {

namespace {

using Vars = std::map<std::string, double>;

/// Typed access to the settings; remembers what each suite read.
class Settings {
public:
  explicit Settings(RunConfig& cfg) : cfg_(cfg) {}

  const Setting* find(const std::string& key) {
    used_.insert(key);
    const auto& s = cfg_.settings.settings();
    const auto it = s.find(key);
    return it == s.end() ? nullptr : &it->second;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const Setting* s = find(key);
    const std::string v = s ? s->value : fallback;
    cfg_.resolved[key] = v;
    return v;
  }

  double number(const std::string& key, const std::string& fallback, const Vars& vars = {}) {
    const Setting* s = find(key);
    const double v = s ? parse_number(s->value, vars, s->origin) : parse_number(fallback, vars);
    record(key, v);
    return v;
  }

  std::optional<double> optional_number(const std::string& key) {
    const Setting* s = find(key);
    if (!s) return std::nullopt;
    const double v = parse_number(s->value, {}, s->origin);
    record(key, v);
    return v;
  }

  long long integer(const std::string& key, long long fallback, long long lo, long long hi) {
    const Setting* s = find(key);
    const double v = s ? parse_number(s->value, {}, s->origin) : static_cast<double>(fallback);
    if (v != std::floor(v) || v < static_cast<double>(lo) || v > static_cast<double>(hi))
      bad(key, s, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    const auto out = static_cast<long long>(v);
    cfg_.resolved[key] = out;
    return out;
  }

  bool flag(const std::string& key, bool fallback) {
    const Setting* s = find(key);
    bool v = fallback;
    if (s) {
      const std::string& t = s->value;
      if (t == "1" || t == "true" || t == "yes" || t == "on") v = true;
      else if (t == "0" || t == "false" || t == "no" || t == "off") v = false;
      else bad(key, s, "expected 1/0, true/false, yes/no or on/off");
    }
    cfg_.resolved[key] = v;
    return v;
  }

  SpaceSpec space(const std::string& key, const std::string& fallback, const Vars& vars = {}) {
    const Setting* s = find(key);
    SpaceSpec v = s ? parse_space(s->value, vars, s->origin) : parse_space(fallback, vars);
    cfg_.resolved[key] = v.label();
    return v;
  }

  ParamFunction param(const std::string& key, const std::string& fallback) {
    const Setting* s = find(key);
    const std::string t = s ? s->value : fallback;
    try {
      auto v = parse_param_function(t);
      cfg_.resolved[key] = t;
      return v;
    } catch (const Error& e) {
      bad(key, s, e.what());
    }
  }

  YoungFunction young(const std::string& key, const std::string& fallback) {
    const Setting* s = find(key);
    YoungFunction v = s ? parse_young(s->value, s->origin) : parse_young(fallback);
    cfg_.resolved[key] = s ? s->value : fallback;
    return v;
  }

  /// `params` in the grammar, then the single keys theta, b, outer, T, h.
  InterpParams interp(const InterpParams& base, const std::string& prefix = "") {
    InterpParams p = base;
    if (const Setting* s = find(prefix + "params")) p = parse_params(s->value, p, {}, s->origin);
    p.theta = number(prefix + "theta", format_double(p.theta));
    if (find(prefix + "b")) p.weight = param(prefix + "b", "1");
    if (find(prefix + "outer")) p.outer = space(prefix + "outer", "lebesgue(2)");
    p.T = number(prefix + "T", format_double(p.T));
    p.h = number(prefix + "h", format_double(p.h));
    cfg_.resolved[prefix + "params"] = p.label();
    return p;
  }

  Domain domain(const std::string& fallback) {
    const Setting* s = find("domain");
    const std::string t = s ? s->value : fallback;
    Domain d;
    if (t == "real" || t == "RealLine") d = Domain::RealLine;
    else if (t == "torus" || t == "Torus") d = Domain::Torus;
    else bad("domain", s, "expected real or torus");
    cfg_.resolved["domain"] = d == Domain::Torus ? "torus" : "real";
    return d;
  }

  std::vector<FunctionPair> corpus(Domain d, std::size_t default_size) {
    CorpusSpec spec;
    spec.domain = d;
    spec.kind = text("corpus", "default");
    if (spec.kind != "default" && spec.kind != "structured" && spec.kind != "random")
      bad("corpus", find("corpus"), "expected default, structured or random");
    spec.size = static_cast<std::size_t>(integer("size", static_cast<long long>(default_size), 0, 1'000'000));
    spec.seed = static_cast<std::uint64_t>(integer("seed", 7, 0, (1LL << 53)));
    spec.max_cells = static_cast<int>(integer("max_cells", 10, 1, 10'000));
    return make_corpus(spec);
  }

  SuiteOptions options(unsigned threads) {
    SuiteOptions o;
    o.threads = threads;
    o.claimed_constant = optional_number("claimed_constant");
    if (const auto t = optional_number("tolerance")) o.tolerance = *t;
    o.refine = flag("refine", true);
    o.resample = static_cast<int>(integer("resample", 2, 1, 64));
    return o;
  }

  /// Settings nobody read are errors, so typos do not silently fall back to defaults.
  void reject_unused() const {
    static const std::set<std::string> plumbing{"suite", "out", "csv", "threads"};
    for (const auto& [key, s] : cfg_.settings.settings()) {
      if (used_.count(key) || plumbing.count(key)) continue;
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(s.origin.line) + ", column " +
                                              std::to_string(s.origin.column) + ": unknown setting '" + key +
                                              "' for this suite");
    }
  }

  [[noreturn]] void bad(const std::string& key, const Setting* s, const std::string& msg) const {
    const TextOrigin at = s ? s->origin : TextOrigin{};
    throw Error(ErrorCode::ConfigError, "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) +
                                            ": " + key + ": " + msg);
  }

private:
  void record(const std::string& key, double v) {
    if (std::isfinite(v)) cfg_.resolved[key] = v;
    else cfg_.resolved[key] = format_double(v);
  }

  RunConfig& cfg_;
  std::set<std::string> used_;
};

/// A suite with every setting read and validated, ready to run.
using Job = std::function<VerificationReport()>;
/// Reads the suite's settings; nothing is computed until the job runs.
using Runner = std::function<Job(Settings&, unsigned)>;

Job classical_young(Settings& s, unsigned threads) {
  const double p = s.number("p", "2"), q = s.number("q", "2"), r = s.number("r", "inf");
  try {
    classical_young_instance(p, q, r, {});
  } catch (const Error& e) {
    const Setting* at = s.find("r");
    s.bad("exponents", at ? at : s.find("p"), e.what());
  }
  auto corpus = s.corpus(s.domain("real"), 200);
  auto o = s.options(threads);
  return [=] { return verify_classical_young(p, q, r, corpus, o); };
}

Job conv_endpoints(Settings& s, unsigned threads) {
  auto E = s.space("E", "lebesgue(2)");
  auto corpus = s.corpus(s.domain("real"), 200);
  auto o = s.options(threads);
  return [=] { return verify_conv_endpoints(E, corpus, o); };
}

Job thm21(Settings& s, unsigned threads) {
  auto E = s.space("E", "lebesgue(2)");
  InterpParams base;
  base.T = 20.0;
  base.h = 0.01;
  auto p = s.interp(base);
  auto corpus = s.corpus(s.domain("real"), 200);
  auto o = s.options(threads);
  return [=] { return verify_thm21(E, p, corpus, o); };
}

Job cor22(Settings& s, unsigned threads) {
  auto phi0 = s.young("phi0", "t^2");
  const double theta = s.number("theta", "0.5");
  auto corpus = s.corpus(s.domain("real"), 200);
  auto o = s.options(threads);
  return [=] { return verify_orlicz_young(phi0, theta, corpus, o); };
}

Job cor23(Settings& s, unsigned threads) {
  auto phi0 = s.young("phi0", "t^2");
  auto rho = s.param("rho", "t^0.5");
  auto corpus = s.corpus(s.domain("real"), 200);
  auto o = s.options(threads);
  return [=] { return verify_gustavsson_peetre(phi0, rho, corpus, o); };
}

Job cor24(Settings& s, unsigned threads) {
  const double theta = s.number("theta", "0.5");
  InterpParams grid;
  grid.theta = theta;
  grid.T = s.number("T", "20");
  grid.h = s.number("h", "0.01");
  auto corpus = s.corpus(s.domain("torus"), 200);
  auto o = s.options(threads);
  return [=] { return verify_torus_zygmund(theta, grid, corpus, o); };
}

Job cor27(Settings& s, unsigned threads) {
  const double theta = s.number("theta", "0.5");
  auto b = s.param("b", "1");
  const Vars vars{{"theta", theta}};
  const double q = s.number("q", "1/(1-theta)", vars);
  const Vars qv{{"theta", theta}, {"q", q}};
  auto E = s.space("E", "lebesgue(q)", qv);
  auto F = s.space("F", "lebesgue(q)", qv);
  auto corpus = s.corpus(s.domain("torus"), 200);
  auto o = s.options(threads);
  return [=] { return verify_karamata_young(theta, b, q, E, F, corpus, o); };
}

Runner karamata_endpoint(bool theta_one) {
  return [theta_one](Settings& s, unsigned threads) -> Job {
    auto b = s.param("b", "1");
    auto F = s.space("F", "lebesgue(2)");
    auto corpus = s.corpus(s.domain("torus"), 200);
    auto o = s.options(threads);
    return [=] {
      return theta_one ? verify_karamata_theta1(b, F, corpus, o) : verify_karamata_theta0(b, F, corpus, o);
    };
  };
}

Runner bilinear(bool jj) {
  return [jj](Settings& s, unsigned threads) -> Job {
    const std::string op_name = s.text("op", "conv-torus");
    BilinearOpSpec op;
    try {
      op = bilinear_op_from_name(op_name);
    } catch (const Error& e) {
      s.bad("op", s.find("op"), e.what());
    }
    const double theta = s.number("theta", "0.5");
    auto phi = s.param("phi", "1");
    auto E = s.space("E", "lebesgue(2)");
    BilinearOptions o;
    o.T = s.number("T", "20");
    o.h = s.number("h", "0.02");
    o.H = s.number("H", "0.6931471805599453");
    o.slack = s.number("slack", "0.1");
    o.functor = s.interp(o.functor, "functor_");
    const Domain d = s.domain(op.domain == Domain::Torus ? "torus" : "real");
    if (d != op.domain) s.bad("domain", s.find("domain"), "operator " + op.label() + " fixes the domain");
    auto corpus = s.corpus(d, 100);
    o.suite = s.options(threads);
    return [=] {
      return jj ? verify_thm36(op, theta, phi, E, corpus, o) : verify_thm35(op, theta, phi, E, corpus, o);
    };
  };
}

Runner multiplier_suite(bool chain) {
  return [chain](Settings& s, unsigned threads) -> Job {
    std::string m = s.text("m", "decay");
    if (m != "decay" && m != "one" && m != "zero" && m.rfind("csv:", 0) != 0) m = "csv:" + m;
    const double p = s.number("p", "2");
    MultiplierOptions o;
    o.N = static_cast<int>(s.integer("N", 32, 1, 512));
    SymbolFamily fam;
    try {
      fam = symbol_family(m);
      fam.at(o.N);
    } catch (const Error& e) {
      s.bad("m", s.find("m"), e.what());
    }
    o.size = static_cast<std::size_t>(s.integer("size", 64, 0, 100'000));
    o.seed = static_cast<std::uint64_t>(s.integer("seed", 7, 0, (1LL << 53)));
    o.threads = threads;
    o.refine = s.flag("refine", true);
    o.drift_limit = s.number("drift_limit", "0.1");
    o.claimed_constant = s.optional_number("claimed_constant");
    if (const auto t = s.optional_number("tolerance")) o.tolerance = *t;
    return [=] { return chain ? check_grand_chain(fam, p, o) : check_blasco_endpoints(fam, p, o); };
  };
}

struct Entry {
  SuiteInfo info;
  Runner runner;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      {{"classical-young", "classical Young convolution inequality with constant 1", "constant-exact", "p, q, r"},
       classical_young},
      {{"conv-endpoints", "convolution endpoint bounds E * L1 -> E and E * E' -> Linf", "constant-exact", "E"},
       conv_endpoints},
      {{"thm21", "generalized Young inequality for an exact interpolation functor", "constant-robust",
        "E, params | theta, b, outer, T, h"},
       thm21},
      {{"cor22", "Orlicz-space Young inequality", "constant-exact", "phi0, theta"}, cor22},
      {{"cor23", "Young inequality for Orlicz spaces built from a parameter function", "constant-robust",
        "phi0, rho"},
       cor23},
      {{"cor24", "Zygmund-space convolution estimate on the torus", "constant-robust", "theta, T, h"}, cor24},
      {{"cor27", "Young inequality for Lorentz-Karamata spaces on the torus", "constant-robust",
        "theta, b, q, E, F"},
       cor27},
      {{"cor28", "Lorentz-Karamata endpoint estimate at theta = 0", "report-only", "b, F"},
       karamata_endpoint(false)},
      {{"cor29", "Lorentz-Karamata endpoint estimate at theta = 1", "report-only", "b, F"},
       karamata_endpoint(true)},
      {{"thm35", "bilinear interpolation, J-method times K-method into K-method", "constant-exact",
        "op, theta, phi, E, T, h, H, slack, functor_params"},
       bilinear(false)},
      {{"thm36", "bilinear interpolation, J-method times J-method into J-method", "constant-exact",
        "op, theta, phi, E, T, h, H, slack, functor_params"},
       bilinear(true)},
      {{"blasco-endpoints", "bilinear multipliers with l^p symbols at the Lebesgue endpoints", "constant-exact",
        "m, p, N, size, seed, drift_limit"},
       multiplier_suite(false)},
      {{"grand-chain", "bilinear multipliers from L^p x grand L^p into L_exp", "constant-robust",
        "m, p, N, size, seed, drift_limit"},
       multiplier_suite(true)},
  };
  return table;
}

unsigned thread_count(Settings& s) {
  long long n = 1;
  if (const Setting* t = s.find("threads")) {
    const double v = parse_number(t->value, {}, t->origin);
    if (v != std::floor(v) || v < 0 || v > 1024) s.bad("threads", t, "expected an integer in [0, 1024]");
    n = static_cast<long long>(v);
  }
  if (const char* env = std::getenv("RISPACE_THREADS"); env && *env) {
    try {
      n = std::stoll(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "RISPACE_THREADS must be an integer");
    }
    if (n < 0 || n > 1024) throw Error(ErrorCode::ConfigError, "RISPACE_THREADS must lie in [0, 1024]");
  }
  return resolve_threads(static_cast<unsigned>(n));
}

std::string output_path(const std::string& given) {
  const char* dir = std::getenv("RISPACE_OUT_DIR");
  if (!dir || !*dir) return given;
  return (std::filesystem::path(dir) / std::filesystem::path(given).filename()).string();
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalogue() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

std::string list_suites() {
  std::ostringstream os;
  for (const auto& s : suite_catalogue()) {
    os << s.id;
    for (std::size_t i = s.id.size(); i < 18; ++i) os << ' ';
    os << s.kind;
    for (std::size_t i = s.kind.size(); i < 16; ++i) os << ' ';
    os << s.anchor << "\n";
  }
  return os.str();
}

VerificationReport run_suite(RunConfig& config) {
  config.resolved = nlohmann::ordered_json::object();
  if (!config.settings.has("suite")) throw Error(ErrorCode::ConfigError, "no suite given");
  const Setting& id = config.settings.at("suite");
  const auto& table = entries();
  const auto it = std::find_if(table.begin(), table.end(), [&](const Entry& e) { return e.info.id == id.value; });
  if (it == table.end())
    throw Error(ErrorCode::ConfigError, "line " + std::to_string(id.origin.line) + ", column " +
                                            std::to_string(id.origin.column) + ": unknown suite '" + id.value +
                                            "' (see `list`)");
  Settings s(config);
  config.resolved["suite"] = id.value;
  const unsigned threads = thread_count(s);
  const Job job = it->runner(s, threads);
  s.reject_unused();
  auto report = job();
  report.parameters["run_config"] = config.resolved;
  return report;
}

int exit_code(const VerificationReport& report) { return report.verdict == Verdict::Violated ? 2 : 0; }

std::string summary_text(const VerificationReport& r) {
  std::ostringstream os;
  os << r.suite << ": " << to_string(r.verdict) << "\n";
  os << "  " << r.label << "\n";
  os << "  checks: " << r.anchor << "\n";
  os << "  cases " << r.n_cases << ", max ratio " << format_double(r.max_ratio) << ", mean ratio "
     << format_double(r.mean_ratio);
  if (r.refinement_drift) os << ", refinement drift " << format_double(*r.refinement_drift);
  os << "\n";
  if (r.claimed_constant)
    os << "  claimed constant " << format_double(*r.claimed_constant) << ", tolerance " << format_double(r.tolerance)
       << "\n";
  if (!r.cases.empty()) os << "  largest ratio at case " << r.argmax << " (" << r.cases[r.argmax].tag << ")\n";
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

int run(RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto report = run_suite(config);
    const auto& s = config.settings;
    const std::string json_path = output_path(s.has("out") ? s.at("out").value : report.suite + ".json");
    std::string csv_path;
    if (s.has("csv")) {
      csv_path = output_path(s.at("csv").value);
    } else {
      csv_path = (std::filesystem::path(json_path).replace_extension(".csv")).string();
    }
    for (const auto& path : {json_path, csv_path}) {
      const auto parent = std::filesystem::path(path).parent_path();
      if (!parent.empty()) std::filesystem::create_directories(parent);
    }
    write_file_atomic(json_path, report.to_json().dump(2) + "\n");
    write_file_atomic(csv_path, report.to_csv());
    out << summary_text(report);
    out << "  report: " << json_path << "\n  ratios: " << csv_path << "\n";
    return exit_code(report);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? 3 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rispace
