#include <doctest.h>

#include <cmath>

#include "rispace/error.hpp"
#include "rispace/grammar.hpp"

using namespace rispace;
using doctest::Approx;

namespace {
std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    return e.what();
  }
  FAIL("no error");
  return {};
}
}  // namespace

TEST_CASE("numbers") {
  CHECK(parse_number("3/2") == Approx(1.5));
  CHECK(parse_number("2^3 - 1") == Approx(7.0));
  CHECK(parse_number("-(1 + 2) * 2") == Approx(-6.0));
  CHECK(std::isinf(parse_number("inf")));
  CHECK(parse_number("1/(1-theta)", {{"theta", 0.75}}) == Approx(4.0));
  CHECK(message_of([] { parse_number("2 +"); }).find("line 1") != std::string::npos);
  CHECK(message_of([] { parse_number("theta"); }).find("theta") != std::string::npos);
}

TEST_CASE("spaces") {
  CHECK(parse_space("lebesgue(3/2)").is_lebesgue(1.5));
  CHECK(parse_space("Linf").is_linf());
  CHECK(parse_space("L2").is_lebesgue(2));
  const auto l = parse_space("lorentz(2, 1)");
  CHECK(l.family() == SpaceSpec::Family::Lorentz);
  CHECK(l.q() == Approx(1.0));
  CHECK(parse_space("lz(2, 2, -1)").alpha() == Approx(-1.0));
  const auto k = parse_space("karamata(p=2, b=\"l1^-1\", E=Linf)");
  CHECK(k.family() == SpaceSpec::Family::LorentzKaramata);
  CHECK(k.outer().is_linf());
  CHECK(parse_space("orlicz(lux, \"t^3\")").young().p() == Approx(3.0));
  CHECK(parse_space("grand(2)").family() == SpaceSpec::Family::GrandLebesgue);
  CHECK(parse_space("lebesgue(q)", {{"q", 4}}).is_lebesgue(4));
}

TEST_CASE("space errors point at the text") {
  const auto m = message_of([] { parse_space("lorentz(2,", {}, {3, 7}); });
  CHECK(m.find("line 3") != std::string::npos);
  CHECK(message_of([] { parse_space("sobolev(2)"); }).find("sobolev") != std::string::npos);
  message_of([] { parse_space("lebesgue(0.5)"); });
}

TEST_CASE("couples and params") {
  const auto c = parse_couple("couple(L1, Linf)");
  CHECK(c.x0.is_lebesgue(1));
  CHECK(c.x1.is_linf());
  CHECK(parse_couple("(L1, L2)").x1.is_lebesgue(2));
  const auto p = parse_params("params(theta=1/4, b=\"l1^2\", E=lebesgue(3), T=10, h=0.05)");
  CHECK(p.theta == Approx(0.25));
  CHECK(p.outer.is_lebesgue(3));
  CHECK(p.T == Approx(10.0));
  CHECK(p.h == Approx(0.05));
  CHECK(p.weight(std::exp(1.0)) == Approx(4.0));
  InterpParams base;
  base.T = 7;
  CHECK(parse_params("params(theta=0.3)", base).T == Approx(7.0));
  message_of([] { parse_params("params(alpha=1)"); });
}

TEST_CASE("Young functions") {
  CHECK(parse_young("t^2")(3.0) == Approx(9.0));
  CHECK(parse_young("2*t^3")(1.0) == Approx(2.0));
  CHECK(parse_young("t^2/2")(2.0) == Approx(2.0));
  CHECK(parse_young("tlogt").family() == YoungFunction::Family::TLogT);
  CHECK(parse_young("exp-1").family() == YoungFunction::Family::ExpMinusOne);
  CHECK(parse_young("t^2*l^1").family() == YoungFunction::Family::PowerLog);
  message_of([] { parse_young("t^0.5"); });
}

TEST_CASE("functions") {
  const auto f = parse_function("indicator(0, 2)");
  CHECK(integrate(f) == Approx(2.0));
  const auto g = parse_function("steps([0, 1, 3], [2, -1])", Domain::Torus);
  CHECK(g.domain() == Domain::Torus);
  CHECK(integrate(g) == Approx(0.0));
  const auto h = parse_function(R"({"domain":"RealLine","breakpoints":[0,1],"re":[4]})");
  CHECK(integrate(h) == Approx(4.0));
  CHECK(integrate(parse_function("indicator(0, pi)", Domain::Torus)) == Approx(3.141592653589793));
  message_of([] { parse_function("steps([0, 1], [1, 2])"); });
}

TEST_CASE("configuration files") {
  const auto c = ConfigFile::parse("# header\nsuite = cor22\n\ntheta = 1/4  # quarter\nphi0 = \"t^2 # not a comment\"\n");
  CHECK(c.at("suite").value == "cor22");
  CHECK(c.at("theta").value == "1/4");
  CHECK(c.at("theta").origin.line == 4);
  CHECK(c.at("phi0").value == "t^2 # not a comment");
  CHECK(message_of([] { ConfigFile::parse("a = 1\nb 2\n"); }).find("line 2") != std::string::npos);
  CHECK(message_of([] { ConfigFile::parse("a = 1\na = 2\n"); }).find("line 2") != std::string::npos);
  message_of([] { ConfigFile::parse("bad key = 1\n"); });
  message_of([] { ConfigFile::load("/nonexistent/file.cfg"); });
}
