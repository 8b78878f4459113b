#include "rispace/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "rispace/error.hpp"
#include "suite_common.hpp"

namespace rispace {

using namespace suite;

namespace {

PiecewiseLinear exact_apply(const BilinearOpSpec& op, const StepFunction& a, const StepFunction& b) {
  if (a.domain() != op.domain || b.domain() != op.domain)
    throw Error(ErrorCode::DomainMismatch, op.label() + " acts on " + std::string(to_string(op.domain)));
  if (op.kind == BilinearOpSpec::Kind::Convolution) return convolve_continuous(a, b);
  return PiecewiseLinear::from_step(a * b);
}

std::shared_ptr<const NestedFunctor> functor_on(const CoupleSpec& couple, const InterpParams& functor) {
  return std::make_shared<const NestedFunctor>(NestedFunctor{couple, functor});
}

InterpParams outer_params(double theta, ParamFunction weight, const BilinearOptions& o) {
  InterpParams p;
  p.theta = theta;
  p.weight = std::move(weight);
  p.T = o.T;
  p.h = o.h;
  return p;
}

/// C-norms of (1 - lambda) w_m + lambda w_{m+1}.
std::pair<double, double> blend_norms(const BilinearOpSpec& op, const PiecewiseLinear& lo,
                                      const PiecewiseLinear& hi, double lambda) {
  PiecewiseLinear mix(op.domain);
  if (lambda < 1.0 && !lo.is_zero()) mix = mix + lo.scaled(1.0 - lambda);
  if (lambda > 0.0 && !hi.is_zero()) mix = mix + hi.scaled(lambda);
  if (mix.is_zero()) return {0.0, 0.0};
  return {norm(op.C.x0, mix), norm(op.C.x1, mix)};
}

struct Sample {
  double y;
  double value;
};

/// Weighted output J profile at y = node(0) - H + k H / sub.
std::vector<Sample> output_j_samples(const BilinearOpSpec& op, double theta, const ParamFunction& phi,
                                     const OutputRepresentation& w, int sub) {
  std::vector<Sample> out;
  if (w.terms.empty()) return out;
  const double H = w.H;
  const PiecewiseLinear zero(op.domain);
  const auto n = static_cast<long long>(w.terms.size());
  // segment s runs from node s - 1 to node s, for s = 0 .. n
  for (long long s = 0; s <= n; ++s) {
    const PiecewiseLinear& lo = s >= 1 ? w.terms[static_cast<std::size_t>(s - 1)] : zero;
    const PiecewiseLinear& hi = s < n ? w.terms[static_cast<std::size_t>(s)] : zero;
    for (int k = 0; k < sub; ++k) {
      const double lambda = static_cast<double>(k) / sub;
      const double y = (w.first_index + s - 1 + lambda) * H;
      const auto [n0, n1] = blend_norms(op, lo, hi, lambda);
      const double J = std::max(n0, std::exp(y) * n1) / H;
      out.push_back({y, std::exp(-theta * y) * phi(std::exp(y)) * J});
    }
  }
  out.push_back({(w.first_index + n) * H, 0.0});
  return out;
}

void require_certificate(const BilinearOpSpec& op, VerificationReport& rep) {
  const auto cert = certify_endpoints(op, smoke_corpus(op));
  rep.diagnostics["endpoint_ratio0"] = cert.ratio0;
  rep.diagnostics["endpoint_ratio1"] = cert.ratio1;
  rep.diagnostics["endpoint_cases"] = cert.cases;
  if (!cert.ok)
    throw Error(ErrorCode::EndpointCertificateFailed,
                op.label() + ": measured endpoint ratios " + format_double(cert.ratio0) + ", " +
                    format_double(cert.ratio1) + " exceed k0 = " + format_double(op.k0) +
                    ", k1 = " + format_double(op.k1));
}

SuiteOptions claim_norm_bound(const BilinearOpSpec& op, const BilinearOptions& o) {
  SuiteOptions s = o.suite;
  if (!s.claimed_constant) s.claimed_constant = op.norm_bound();
  if (s.tolerance < 0.0) s.tolerance = o.slack;
  return s;
}

/// Per-case evaluation; RepresentationFailed marks the case instead of aborting the suite.
std::vector<CaseRecord> evaluate_cases(const std::vector<FunctionPair>& corpus, unsigned threads,
                                       const SidesFn& fn, std::vector<std::string>& failures) {
  struct Outcome {
    CaseRecord record;
    std::string failure;
  };
  const std::function<Outcome(std::size_t)> one = [&](std::size_t i) {
    Outcome o;
    o.record.tag = corpus[i].tag;
    try {
      const Sides s = fn(corpus[i]);
      o.record.lhs = s.lhs;
      o.record.rhs = s.rhs;
      o.record.ratio = safe_ratio(s.lhs, s.rhs);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RepresentationFailed) throw;
      o.failure = "case " + std::to_string(i) + ": " + e.what();
      o.record.tag += " (representation failed)";
    }
    return o;
  };
  auto outcomes = parallel_map(corpus.size(), threads, one);
  std::vector<CaseRecord> cases;
  for (auto& o : outcomes) {
    if (!o.failure.empty()) failures.push_back(o.failure);
    cases.push_back(std::move(o.record));
  }
  return cases;
}

void finish(VerificationReport& rep, const SuiteOptions& s, const std::vector<std::string>& failures) {
  finish_exact(rep, s, s.tolerance);
  rep.diagnostics["representation_failures"] = failures;
  if (!failures.empty() && rep.verdict != Verdict::Violated) {
    rep.verdict = Verdict::Conditional;
    rep.notes.push_back(std::to_string(failures.size()) + " case(s) without a representation");
  }
}

nlohmann::ordered_json op_json(const BilinearOpSpec& op) {
  nlohmann::ordered_json j;
  j["operator"] = op.label();
  j["A"] = op.A.label();
  j["B"] = op.B.label();
  j["C"] = op.C.label();
  j["k0"] = op.k0;
  j["k1"] = op.k1;
  j["norm_bound"] = op.norm_bound();
  j["norm_bound_reading"] = "max of the two endpoint operator norms";
  return j;
}

}  // namespace

std::string BilinearOpSpec::label() const {
  const std::string base = kind == Kind::Convolution ? "convolution" : "product";
  return base + "(" + std::string(to_string(domain)) + ")";
}

StepFunction BilinearOpSpec::apply(const StepFunction& a, const StepFunction& b, int resample) const {
  if (kind == Kind::PointwiseProduct) {
    if (a.domain() != domain || b.domain() != domain)
      throw Error(ErrorCode::DomainMismatch, label() + " acts on " + std::string(to_string(domain)));
    return a * b;
  }
  return exact_apply(*this, a, b).to_step(resample);
}

double BilinearOpSpec::target_norm(int i, const StepFunction& a, const StepFunction& b) const {
  const SpaceSpec& space = i == 0 ? C.x0 : C.x1;
  if (kind == Kind::PointwiseProduct) return norm(space, apply(a, b));
  return norm(space, exact_apply(*this, a, b));
}

BilinearOpSpec conv_torus_op() {
  BilinearOpSpec op;
  op.A = {SpaceSpec::lebesgue(1.0), SpaceSpec::linf()};
  op.B = {SpaceSpec::lebesgue(1.0), SpaceSpec::lebesgue(1.0)};
  op.C = {SpaceSpec::lebesgue(1.0), SpaceSpec::linf()};
  return op;
}

BilinearOpSpec conv_line_op() {
  BilinearOpSpec op = conv_torus_op();
  op.domain = Domain::RealLine;
  return op;
}

BilinearOpSpec product_op() {
  BilinearOpSpec op;
  op.kind = BilinearOpSpec::Kind::PointwiseProduct;
  op.A = {SpaceSpec::linf(), SpaceSpec::linf()};
  op.B = {SpaceSpec::lebesgue(1.0), SpaceSpec::linf()};
  op.C = {SpaceSpec::lebesgue(1.0), SpaceSpec::linf()};
  return op;
}

BilinearOpSpec bilinear_op_from_name(const std::string& name) {
  if (name == "conv-torus") return conv_torus_op();
  if (name == "conv-line") return conv_line_op();
  if (name == "product") return product_op();
  throw Error(ErrorCode::ConfigError, "unknown operator '" + name + "' (conv-torus, conv-line, product)");
}

std::vector<FunctionPair> smoke_corpus(const BilinearOpSpec& op) {
  auto pairs = structured_pairs(op.domain);
  CorpusSpec spec;
  spec.domain = op.domain;
  spec.kind = "random";
  spec.size = 16;
  spec.seed = 11;
  for (auto& p : make_corpus(spec)) pairs.push_back(std::move(p));
  return pairs;
}

EndpointCertificate certify_endpoints(const BilinearOpSpec& op, const std::vector<FunctionPair>& corpus) {
  EndpointCertificate cert;
  for (const auto& c : corpus) {
    const double d0 = norm(op.A.x0, c.f) * norm(op.B.x0, c.g);
    const double d1 = norm(op.A.x1, c.f) * norm(op.B.x1, c.g);
    cert.ratio0 = std::max(cert.ratio0, safe_ratio(op.target_norm(0, c.f, c.g), d0));
    cert.ratio1 = std::max(cert.ratio1, safe_ratio(op.target_norm(1, c.f, c.g), d1));
    ++cert.cases;
  }
  cert.ok = cert.ratio0 <= op.k0 * (1.0 + 1e-6) && cert.ratio1 <= op.k1 * (1.0 + 1e-6);
  return cert;
}

VerificationReport verify_thm35(const BilinearOpSpec& op, double theta, const ParamFunction& phi,
                                const SpaceSpec& E, const std::vector<FunctionPair>& corpus,
                                const BilinearOptions& options) {
  const auto dual = associate_space(E);
  if (!dual) throw Error(ErrorCode::Unsupported, E.label() + " has no closed-form associate space");
  const ParamFunction mphi = m_phi(phi);

  InterpParams target = outer_params(theta, phi, options);
  target.nested = functor_on({E, SpaceSpec::linf()}, options.functor);
  InterpParams first = outer_params(theta, mphi, options);
  first.outer = E;
  InterpParams second = outer_params(theta, phi, options);
  second.nested = functor_on({SpaceSpec::lebesgue(1.0), *dual}, options.functor);

  const int resample = options.suite.resample;
  std::vector<std::string> failures;
  auto cases = evaluate_cases(corpus, options.suite.threads, [&](const FunctionPair& c) {
    const double lhs = k_method_norm(op.C, target, op.apply(c.f, c.g, resample));
    if (c.f.is_zero() || c.g.is_zero()) return Sides{lhs, 0.0};
    const double ja = j_method_norm_upper(op.A, first, c.f, options.H);
    return Sides{lhs, ja * k_method_norm(op.B, second, c.g)};
  }, failures);

  auto rep = start("thm35", "bilinear-jk(" + op.label() + ", theta=" + format_double(theta) + ", phi=\"" +
                                phi.label() + "\", E=" + E.label() + ")",
                   "bilinear interpolation, J-method times K-method into K-method", corpus, std::move(cases));
  rep.parameters["op"] = op_json(op);
  rep.parameters["theta"] = theta;
  rep.parameters["phi"] = phi.label();
  rep.parameters["m_phi"] = mphi.label();
  rep.parameters["E"] = E.label();
  rep.parameters["E_associate"] = dual->label();
  rep.parameters["target"] = params_json(target);
  rep.parameters["first_factor"] = params_json(first);
  rep.parameters["second_factor"] = params_json(second);
  rep.parameters["functor"] = params_json(options.functor);
  rep.parameters["H"] = options.H;
  rep.parameters["resample"] = resample;
  require_certificate(op, rep);
  rep.notes.push_back("m_phi is taken as the dilation function s_phi");
  rep.notes.push_back("F is the K-method with the functor parameters; the hypothesis does not name F");
  rep.notes.push_back("the first factor is an upper bound for the J-method norm");
  finish(rep, claim_norm_bound(op, options), failures);
  return rep;
}

OutputRepresentation combine_representations(const BilinearOpSpec& op, const Representation& u,
                                             const Representation& v) {
  if (std::abs(u.H - v.H) > 1e-15 * std::max(u.H, v.H))
    throw Error(ErrorCode::InvalidArgument, "representations use different node spacings");
  OutputRepresentation w;
  w.H = u.H;
  auto first_nonzero = [](const Representation& r) {
    std::size_t i = 0;
    while (i < r.pieces.size() && r.pieces[i].is_zero()) ++i;
    return i;
  };
  auto last_nonzero = [](const Representation& r) {
    std::size_t i = r.pieces.size();
    while (i > 0 && r.pieces[i - 1].is_zero()) --i;
    return i;
  };
  const std::size_t ui0 = first_nonzero(u), ui1 = last_nonzero(u);
  const std::size_t vj0 = first_nonzero(v), vj1 = last_nonzero(v);
  if (ui0 >= ui1 || vj0 >= vj1) return w;
  w.first_index = u.first_index + static_cast<int>(ui0) + v.first_index + static_cast<int>(vj0);
  w.terms.assign((ui1 - ui0) + (vj1 - vj0) - 1, PiecewiseLinear(op.domain));
  for (std::size_t i = ui0; i < ui1; ++i) {
    if (u.pieces[i].is_zero()) continue;
    for (std::size_t j = vj0; j < vj1; ++j) {
      if (v.pieces[j].is_zero()) continue;
      auto& t = w.terms[(i - ui0) + (j - vj0)];
      t = t + exact_apply(op, u.pieces[i], v.pieces[j]);
    }
  }
  return w;
}

StepFunction output_j_profile(const BilinearOpSpec& op, double theta, const ParamFunction& phi,
                              const OutputRepresentation& w) {
  const auto samples = output_j_samples(op, theta, phi, w, 16);
  if (samples.size() < 2) return StepFunction(Domain::RealLine);
  std::vector<double> x(samples.size());
  std::vector<Complex> v(samples.size() - 1);
  for (std::size_t k = 0; k < samples.size(); ++k) x[k] = samples[k].y;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) v[k] = std::max(samples[k].value, samples[k + 1].value);
  return StepFunction(Domain::RealLine, std::move(x), std::move(v));
}

VerificationReport verify_thm36(const BilinearOpSpec& op, double theta, const ParamFunction& phi,
                                const SpaceSpec& E, const std::vector<FunctionPair>& corpus,
                                const BilinearOptions& options) {
  const auto dual = associate_space(E);
  if (!dual) throw Error(ErrorCode::Unsupported, E.label() + " has no closed-form associate space");
  const ParamFunction mphi = m_phi(phi);

  InterpParams target = outer_params(theta, phi, options);
  target.nested = functor_on({E, SpaceSpec::linf()}, options.functor);
  InterpParams first = outer_params(theta, phi, options);
  first.outer = E;
  InterpParams second = outer_params(theta, mphi, options);
  second.nested = functor_on({SpaceSpec::lebesgue(1.0), *dual}, options.functor);

  std::vector<std::string> failures;
  auto cases = evaluate_cases(corpus, options.suite.threads, [&](const FunctionPair& c) {
    if (c.f.is_zero() || c.g.is_zero()) return Sides{0.0, 0.0};
    const auto ru = build_representation(op.A, c.f, options.T, options.H);
    const auto rv = build_representation(op.B, c.g, options.T, options.H);
    const double ja = outer_norm(first, j_profile(op.A, first, ru));
    const double jb = outer_norm(second, j_profile(op.B, second, rv));
    const auto w = combine_representations(op, ru, rv);
    const double lhs = outer_norm(target, output_j_profile(op, theta, phi, w));
    return Sides{lhs, ja * jb};
  }, failures);

  auto rep = start("thm36", "bilinear-jj(" + op.label() + ", theta=" + format_double(theta) + ", phi=\"" +
                                phi.label() + "\", E=" + E.label() + ")",
                   "bilinear interpolation, J-method times J-method into J-method", corpus, std::move(cases));
  rep.parameters["op"] = op_json(op);
  rep.parameters["theta"] = theta;
  rep.parameters["phi"] = phi.label();
  rep.parameters["m_phi"] = mphi.label();
  rep.parameters["E"] = E.label();
  rep.parameters["E_associate"] = dual->label();
  rep.parameters["target"] = params_json(target);
  rep.parameters["first_factor"] = params_json(first);
  rep.parameters["second_factor"] = params_json(second);
  rep.parameters["functor"] = params_json(options.functor);
  rep.parameters["H"] = options.H;
  rep.parameters["profile_subdivision"] = 16;
  require_certificate(op, rep);

  // one-term representations at nodes 1 and -2 of the first structured pair
  const auto smoke = structured_pairs(op.domain);
  const auto st = single_term_check(op, smoke.front().f, 1, smoke.front().g, -2, options.H);
  rep.diagnostics["single_term_nonzero_terms"] = st.nonzero_terms;
  rep.diagnostics["single_term_max_error"] = st.max_error;
  rep.diagnostics["single_term_peak_ratio"] = st.peak_ratio;
  rep.notes.push_back("checks the output representation built from the input representations; "
                      "the target J-method norm itself is not computed");
  rep.notes.push_back("m_phi is taken as the dilation function s_phi");
  finish(rep, claim_norm_bound(op, options), failures);
  if (st.nonzero_terms != 1 || st.max_error > 1e-9) {
    rep.verdict = Verdict::Violated;
    rep.notes.push_back("single-term representation check failed");
  }
  return rep;
}

SingleTermCheck single_term_check(const BilinearOpSpec& op, const StepFunction& u, int i, const StepFunction& v,
                                  int j, double H) {
  auto single = [H](const StepFunction& f, int node) {
    Representation r;
    r.H = H;
    r.first_index = node;
    r.pieces.push_back(f);
    return r;
  };
  const auto w = combine_representations(op, single(u, i), single(v, j));
  SingleTermCheck out;
  for (const auto& t : w.terms)
    if (!t.is_zero()) ++out.nonzero_terms;
  if (w.terms.empty()) return out;

  const PiecewiseLinear T = exact_apply(op, u, v);
  const double t0 = norm(op.C.x0, T), t1 = norm(op.C.x1, T);
  const double m = (i + j) * H;
  const ParamFunction one = ParamFunction::power(0.0);
  double peak = 0.0, err = 0.0;
  for (const auto& s : output_j_samples(op, 0.0, one, w, 16)) {
    const double hat = std::max(0.0, 1.0 - std::abs(s.y - m) / H);
    const double expected = hat / H * std::max(t0, std::exp(s.y) * t1);
    peak = std::max(peak, expected);
    err = std::max(err, std::abs(s.value - expected));
  }
  out.max_error = peak > 0.0 ? err / peak : err;

  auto J = [](const CoupleSpec& c, double s, const StepFunction& f) {
    return std::max(norm(c.x0, f), s * norm(c.x1, f));
  };
  const double lhs = std::max(t0, std::exp(m) * t1);
  const double rhs = op.norm_bound() * J(op.A, std::exp(i * H), u) * J(op.B, std::exp(j * H), v);
  out.peak_ratio = safe_ratio(lhs, rhs);
  return out;
}

}  // namespace rispace
