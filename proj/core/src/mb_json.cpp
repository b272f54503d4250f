#include <json.hpp>

#include "whittaker/errors.hpp"
#include "whittaker/mb_engine.hpp"

namespace whittaker {

namespace {

using nlohmann::json;

const char* kind_name(GammaKind k) {
  switch (k) {
    case GammaKind::Plain: return "PLAIN";
    case GammaKind::R: return "R";
    case GammaKind::C: return "C";
  }
  return "PLAIN";
}

GammaKind kind_from(const std::string& s) {
  if (s == "PLAIN") return GammaKind::Plain;
  if (s == "R") return GammaKind::R;
  if (s == "C") return GammaKind::C;
  throw InvalidArgument("unknown gamma kind '" + s + "'");
}

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  return {j.at("re").get<double>(), j.value("im", 0.0)};
}

json rationals_json(const std::vector<Rational>& rs) {
  json out = json::array();
  for (const auto& r : rs) out.push_back(r.str());
  return out;
}

std::vector<Rational> rationals_from(const json& j) {
  std::vector<Rational> out;
  for (const auto& x : j) {
    if (x.is_string()) out.push_back(Rational::parse(x.get<std::string>()));
    else if (x.is_number_integer()) out.emplace_back(x.get<std::int64_t>());
    else throw InvalidArgument("coefficients must be \"num/den\" strings or integers");
  }
  return out;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON document: ") + e.what());
  }
}

}  // namespace

std::string to_json(const MBIntegrand& f) {
  if (!f.externals().empty()) throw InvalidArgument("integrands with external factors are not serializable");
  json gammas = json::array();
  for (const auto& g : f.gammas()) {
    gammas.push_back({{"kind", kind_name(g.kind)},
                      {"constant", complex_json(g.constant)},
                      {"coeffs", rationals_json(g.coeffs)},
                      {"position", g.position == Position::Numerator ? "NUMERATOR" : "DENOMINATOR"}});
  }
  json powers = json::array();
  for (const auto& p : f.powers()) {
    powers.push_back({{"base", p.base},
                      {"exponent_constant", complex_json(p.exponent_constant)},
                      {"exponent_coeffs", rationals_json(p.exponent_coeffs)}});
  }
  json doc = {{"nvars", f.nvars()},
              {"prefactor", {{"log_modulus", f.prefactor().log_modulus}, {"phase", f.prefactor().phase}}},
              {"gammas", gammas},
              {"powers", powers}};
  return doc.dump(2);
}

MBIntegrand integrand_from_json(std::string_view text) {
  return guarded([&] {
    const json doc = json::parse(text);
    const int n = doc.at("nvars").get<int>();
    LogComplex pre;
    if (doc.contains("prefactor")) {
      pre = LogComplex(doc["prefactor"].value("log_modulus", 0.0), doc["prefactor"].value("phase", 0.0));
    }
    std::vector<GammaFactor> gammas;
    for (const auto& g : doc.at("gammas")) {
      GammaFactor gf;
      gf.kind = kind_from(g.at("kind").get<std::string>());
      gf.constant = complex_from(g.at("constant"));
      gf.coeffs = rationals_from(g.at("coeffs"));
      const std::string pos = g.value("position", "NUMERATOR");
      if (pos == "NUMERATOR") gf.position = Position::Numerator;
      else if (pos == "DENOMINATOR") gf.position = Position::Denominator;
      else throw InvalidArgument("unknown gamma position '" + pos + "'");
      gammas.push_back(std::move(gf));
    }
    std::vector<PowerFactor> powers;
    if (doc.contains("powers")) {
      for (const auto& p : doc["powers"]) {
        powers.push_back({p.at("base").get<double>(),
                          p.contains("exponent_constant") ? complex_from(p["exponent_constant"]) : cplx(0.0),
                          rationals_from(p.at("exponent_coeffs"))});
      }
    }
    return MBIntegrand(n, pre, std::move(gammas), std::move(powers));
  });
}

std::string to_json(const ContourSpec& c) {
  return json{{"sigma", c.sigma}, {"height", c.height}, {"step", c.step}}.dump();
}

ContourSpec contour_from_json(std::string_view text) {
  return guarded([&] {
    const json doc = json::parse(text);
    ContourSpec c;
    c.sigma = doc.at("sigma").get<std::vector<double>>();
    c.height = doc.value("height", c.height);
    c.step = doc.value("step", c.step);
    return c;
  });
}

}  // namespace whittaker
