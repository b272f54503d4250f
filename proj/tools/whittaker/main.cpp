// whittaker: evaluate Whittaker functions and run the identity suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "whittaker/arch_whittaker.hpp"
#include "whittaker/asai_zeta.hpp"
#include "whittaker/errors.hpp"
#include "whittaker/padic_whittaker.hpp"
#include "whittaker/suites.hpp"

namespace {

using json = nlohmann::ordered_json;
using whittaker::cplx;

constexpr int kExitPass = 0;
constexpr int kExitIdentityFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

// Raised for malformed parameter documents; maps to exit 2.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double tolerance = 1e-8;
  double mb_height = 40.0;
  double mb_step = 0.1;
  double quad_window = 0.0;  // 0: quadratures size their own windows
  int threads = 1;
  std::string output_format = "json";

  whittaker::ArchOptions arch() const {
    whittaker::ArchOptions o;
    o.tol = tolerance;
    o.mb_height = mb_height;
    o.mb_step = mb_step;
    o.threads = threads;
    return o;
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json parse_doc(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

cplx complex_from(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_object() && j.contains("re")) {
    const json im = j.value("im", json(0.0));
    if (!j["re"].is_number() || !im.is_number()) {
      throw SchemaError(std::string(what) + ": re/im must be numbers");
    }
    return {j["re"].get<double>(), im.get<double>()};
  }
  throw SchemaError(std::string(what) + ": expected a number or {re, im}");
}

std::vector<cplx> complex_list(const std::string& text, const char* what) {
  const json j = parse_doc(text, what);
  if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array");
  std::vector<cplx> out;
  for (const auto& e : j) out.push_back(complex_from(e, what));
  return out;
}

template <class T>
std::vector<T> number_list(const std::string& text, const char* what) {
  const json j = parse_doc(text, what);
  if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array");
  std::vector<T> out;
  for (const auto& e : j) {
    if (!e.is_number()) throw SchemaError(std::string(what) + ": expected numbers");
    if constexpr (std::is_integral_v<T>) {
      if (!e.is_number_integer()) throw SchemaError(std::string(what) + ": expected integers");
    }
    out.push_back(e.get<T>());
  }
  return out;
}

std::vector<whittaker::GaussianRational> rational_list(const std::string& text, const char* what) {
  const json j = parse_doc(text, what);
  if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array");
  std::vector<whittaker::GaussianRational> out;
  for (const auto& e : j) {
    if (e.is_number_integer()) {
      out.emplace_back(e.get<long>());
    } else if (e.is_string()) {
      out.push_back(whittaker::GaussianRational::parse(e.get<std::string>()));
    } else {
      throw SchemaError(std::string(what) + ": expected integers or \"num/den\" strings");
    }
  }
  return out;
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const json j = parse_doc(ss.str(), "config");
  if (!j.is_object()) throw SchemaError("config: expected an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "tolerance") cfg.tolerance = v.get<double>();
    else if (key == "mb_height") cfg.mb_height = v.get<double>();
    else if (key == "mb_step") cfg.mb_step = v.get<double>();
    else if (key == "quad_window") cfg.quad_window = v.get<double>();
    else if (key == "threads") cfg.threads = v.get<int>();
    else if (key == "output_format") cfg.output_format = v.get<std::string>();
    else throw SchemaError("config: unknown key '" + key + "'");
  }
}

void validate(const RunConfig& cfg) {
  if (!(cfg.tolerance > 0.0) || !(cfg.mb_height > 0.0) || !(cfg.mb_step > 0.0) ||
      cfg.quad_window < 0.0) {
    throw SchemaError("tolerance, mb_height and mb_step must be positive");
  }
  if (cfg.threads < 1) throw SchemaError("threads must be at least 1");
  if (cfg.output_format != "json" && cfg.output_format != "csv") {
    throw SchemaError("format must be json or csv");
  }
}

// --- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string lambda, alpha, nu, a, ell, w, s;
  int n = 0;
  int kappa = 0;
  std::string method = "mb";
};

void emit_value(const RunConfig& cfg, cplx value, double err, const json& echo,
                json extra = json::object()) {
  if (cfg.output_format == "csv") {
    std::cout << "value_re,value_im,error_estimate\n"
              << num(value.real()) << "," << num(value.imag()) << "," << num(err) << "\n";
    return;
  }
  json out = {{"value", to_json(value)}, {"error_estimate", err}};
  for (auto& [k, v] : extra.items()) out[k] = v;
  out["params_echo"] = echo;
  std::cout << out.dump(2) << "\n";
}

json echo_complex(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

int eval_padic(const EvalArgs& e, const RunConfig& cfg) {
  const auto lam = number_list<long>(e.lambda, "lambda");
  const auto alpha = rational_list(e.alpha, "alpha");
  if (lam.size() != alpha.size()) throw whittaker::LengthMismatch("lambda and alpha lengths differ");
  const whittaker::DominantWeight w(lam);
  const whittaker::SatakeParams sp(alpha);
  const auto v = whittaker::shintani_value(w, sp, int(lam.size()));
  json a = json::array();
  for (const auto& x : alpha) a.push_back(x.str());
  if (cfg.output_format == "csv") {
    std::cout << "q_exponent,value\n" << v.exponent_str() << "," << v.value.str() << "\n";
  } else {
    json out = {{"q_exponent", v.exponent_str()},
                {"value", v.value.str()},
                {"error_estimate", 0.0},
                {"params_echo", {{"lambda", lam}, {"alpha", a}}}};
    std::cout << out.dump(2) << "\n";
  }
  return kExitPass;
}

int eval_spherical(const EvalArgs& e, const RunConfig& cfg) {
  const whittaker::SphericalParamsC p{complex_list(e.nu, "nu")};
  if (e.n != 0 && e.n != p.n()) throw whittaker::LengthMismatch("n differs from len(nu)");
  const whittaker::TorusPointC a{number_list<double>(e.a, "a")};
  const auto r = whittaker::f_spherical(p, a, cfg.arch());
  emit_value(cfg, r.value, r.error, {{"n", p.n()}, {"nu", echo_complex(p.nu)}, {"a", a.a}});
  return kExitPass;
}

int eval_minimal(const EvalArgs& e, const RunConfig& cfg) {
  const whittaker::MinimalTypeParamsC p{complex_list(e.nu, "nu"), e.kappa};
  if (e.n != 0 && e.n != p.n()) throw whittaker::LengthMismatch("n differs from len(nu)");
  whittaker::WeightIndexC ell{number_list<int>(e.ell, "ell")};
  const whittaker::TorusPointC a{number_list<double>(e.a, "a")};
  const auto r = e.method == "direct" ? whittaker::whittaker_c_direct(p, ell, a, cfg.arch())
                                      : whittaker::whittaker_c_mb(p, ell, a, cfg.arch());
  emit_value(cfg, r.value, r.error,
             {{"n", p.n()}, {"nu", echo_complex(p.nu)}, {"kappa", p.kappa}, {"ell", ell.ell},
              {"a", a.a}, {"method", e.method}});
  return kExitPass;
}

int eval_gl3r(const EvalArgs& e, const RunConfig& cfg) {
  const auto a = number_list<double>(e.a, "a");
  if (a.size() != 2) throw whittaker::LengthMismatch("gl3r takes a = [a1, a2]");
  const whittaker::MiyazakiParams p{e.kappa, e.w.empty() ? cplx(0.0) : complex_from(parse_doc(e.w, "w"), "w")};
  const auto vals = e.method == "direct" ? whittaker::miyazaki_direct(p, a[0], a[1], cfg.arch())
                                         : whittaker::miyazaki_mb(p, a[0], a[1], cfg.arch());
  if (cfg.output_format == "csv") {
    std::cout << "n1,n2,n3,value_re,value_im,error_estimate\n";
    for (const auto& [m, v] : vals) {
      std::cout << m[0] << "," << m[1] << "," << m[2] << "," << num(v.value.real()) << ","
                << num(v.value.imag()) << "," << num(v.error) << "\n";
    }
    return kExitPass;
  }
  json rows = json::array();
  double worst = 0.0;
  for (const auto& [m, v] : vals) {
    rows.push_back({{"n", {m[0], m[1], m[2]}}, {"value", to_json(v.value)}, {"error_estimate", v.error}});
    worst = std::max(worst, v.error);
  }
  json out = {{"value", rows},
              {"error_estimate", worst},
              {"params_echo", {{"kappa", p.kappa}, {"w", to_json(p.w)}, {"a", a}, {"method", e.method}}}};
  std::cout << out.dump(2) << "\n";
  return kExitPass;
}

int eval_asai(const EvalArgs& e, const RunConfig& cfg) {
  whittaker::AsaiInput in;
  in.nu = complex_list(e.nu, "nu");
  in.n = e.n != 0 ? e.n : int(in.nu.size());
  in.kappa = e.kappa;
  in.s = e.s.empty() ? cplx(1.0) : complex_from(parse_doc(e.s, "s"), "s");
  const auto L = whittaker::asai_l_factor(in);
  const cplx value = L.evaluate(in.s).value();
  const cplx rhs = whittaker::asai_rhs(in);
  json terms = json::array();
  for (const auto& g : L.gamma_terms) {
    terms.push_back({{"kind", g.kind == whittaker::AsaiGammaKind::R ? "R" : "C"},
                     {"constant", to_json(g.constant)},
                     {"slope", g.slope}});
  }
  emit_value(cfg, value, 0.0,
             {{"n", in.n}, {"nu", echo_complex(in.nu)}, {"kappa", in.kappa}, {"s", to_json(in.s)}},
             {{"zeta_closed_form", to_json(rhs)}, {"gamma_terms", terms}});
  return kExitPass;
}

// --- verify ---------------------------------------------------------------

int run_verify(const std::string& suite, int cases, int n, const RunConfig& cfg) {
  whittaker::SuiteConfig sc;
  sc.arch = cfg.arch();
  sc.cases = cases;
  sc.asai_n = n;
  const auto reports = whittaker::run_suite(suite, sc);
  bool ok = true;
  if (cfg.output_format == "csv") {
    std::cout << "suite,label,error,tol,pass,detail\n";
    for (const auto& r : reports) {
      for (const auto& row : r.rows) {
        std::cout << row.suite << ",\"" << row.label << "\"," << num(row.error) << ","
                  << num(row.tol) << "," << (row.pass ? "true" : "false") << ",\"" << row.detail
                  << "\"\n";
      }
      ok = ok && r.pass();
    }
  } else {
    json out = json::array();
    for (const auto& r : reports) {
      json rows = json::array();
      for (const auto& row : r.rows) {
        rows.push_back({{"label", row.label}, {"error", std::isfinite(row.error) ? json(row.error) : json(nullptr)},
                        {"tol", row.tol}, {"pass", row.pass}, {"detail", row.detail}});
      }
      out.push_back({{"suite", r.name}, {"pass", r.pass()}, {"max_error", r.max_error()}, {"rows", rows}});
      ok = ok && r.pass();
    }
    std::cout << out.dump(2) << "\n";
  }
  return ok ? kExitPass : kExitIdentityFail;
}

// --- table ----------------------------------------------------------------

struct TableArgs {
  std::string function;
  std::string nu, ell, fixed = "[]";
  int kappa = 0;
  double a_min = 0.1, a_max = 10.0;
  int points = 50;
  std::string method = "mb";
};

int run_table(const TableArgs& t, const RunConfig& cfg) {
  if (t.points < 0) throw SchemaError("points must be nonnegative");
  if (!(t.a_min > 0.0) || !(t.a_max > 0.0)) throw whittaker::DomainError("grid bounds must be positive");
  const auto nu = complex_list(t.nu, "nu");
  const auto fixed = number_list<double>(t.fixed, "fixed");
  const int n = int(nu.size());
  if (int(fixed.size()) != n - 2) {
    throw whittaker::LengthMismatch("fixed must hold a_2..a_{n-1} (" + std::to_string(n - 2) + " values)");
  }
  std::function<whittaker::Estimate(const whittaker::TorusPointC&)> f;
  if (t.function == "spherical-c") {
    f = [&](const whittaker::TorusPointC& a) { return whittaker::f_spherical({nu}, a, cfg.arch()); };
  } else if (t.function == "minimal-c") {
    const whittaker::WeightIndexC ell{number_list<int>(t.ell, "ell")};
    const whittaker::MinimalTypeParamsC p{nu, t.kappa};
    f = [&, ell, p](const whittaker::TorusPointC& a) {
      return t.method == "direct" ? whittaker::whittaker_c_direct(p, ell, a, cfg.arch())
                                  : whittaker::whittaker_c_mb(p, ell, a, cfg.arch());
    };
  } else {
    throw SchemaError("table supports spherical-c and minimal-c");
  }
  std::cout << "a1";
  for (int i = 0; i < n - 2; ++i) std::cout << ",a" << i + 2;
  std::cout << ",value_re,value_im,error_estimate\n";
  for (int k = 0; k < t.points; ++k) {
    const double frac = t.points == 1 ? 0.0 : double(k) / (t.points - 1);
    const double a1 = std::exp(std::log(t.a_min) + frac * (std::log(t.a_max) - std::log(t.a_min)));
    whittaker::TorusPointC a{{a1}};
    a.a.insert(a.a.end(), fixed.begin(), fixed.end());
    const auto r = f(a);
    for (double x : a.a) std::cout << num(x) << ",";
    std::cout << num(r.value.real()) << "," << num(r.value.imag()) << "," << num(r.error) << "\n";
  }
  return kExitPass;
}

void print_error(const std::string& kind, const std::string& detail) {
  std::cout << json{{"error", kind}, {"detail", detail}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whittaker functions on GL_n: evaluation, tables and identity checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand; inherited by subcommands

  RunConfig cfg;
  std::string config_path, format;
  double tol = 0, height = 0, step = 0, window = -1;
  int threads = 0;
  app.add_option("--config", config_path, "JSON file mirroring the run configuration");
  app.add_option("--tol", tol, "tolerance (default 1e-8)");
  app.add_option("--mb-height", height, "contour truncation height T");
  app.add_option("--mb-step", step, "contour step h");
  app.add_option("--quad-window", window, "accepted for configuration files; quadratures size their own windows");
  app.add_option("--threads", threads, "worker threads (fallback: WHITTAKER_THREADS)");
  app.add_option("--format", format, "json or csv");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "evaluate one function");
  eval->require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    c->add_option("--n", ev.n, "rank");
    c->add_option("--nu", ev.nu, "JSON array of numbers or {re, im}");
  };
  auto* padic = eval->add_subcommand("padic", "Shintani's formula, exact");
  padic->add_option("--lambda", ev.lambda, "dominant weight, JSON integer array")->required();
  padic->add_option("--alpha", ev.alpha, "Satake parameters, JSON array of \"num/den\"")->required();
  auto* sph = eval->add_subcommand("spherical-c", "spherical function f_nu on GL_n(C), n = 2..4");
  add_common(sph);
  sph->add_option("--a", ev.a, "torus point, JSON array")->required();
  auto* mc = eval->add_subcommand("minimal-c", "minimal K-type function on GL_n(C), n = 2, 3");
  add_common(mc);
  mc->add_option("--kappa", ev.kappa);
  mc->add_option("--ell", ev.ell, "weight index, JSON integer array")->required();
  mc->add_option("--a", ev.a, "torus point, JSON array")->required();
  mc->add_option("--method", ev.method)->check(CLI::IsMember({"mb", "direct"}));
  auto* g3 = eval->add_subcommand("gl3r", "discrete series of GL_3(R), every monomial");
  g3->add_option("--kappa", ev.kappa)->required();
  g3->add_option("--w", ev.w, "number or {re, im}");
  g3->add_option("--a", ev.a, "[a1, a2]")->required();
  g3->add_option("--method", ev.method)->check(CLI::IsMember({"mb", "direct"}));
  auto* asai = eval->add_subcommand("asai-l", "Asai L-factor and the closed-form zeta value");
  add_common(asai);
  asai->add_option("--kappa", ev.kappa);
  asai->add_option("--s", ev.s, "number or {re, im}");

  std::string suite;
  int cases = 20, suite_n = 2;
  auto* verify = app.add_subcommand("verify", "run an identity suite");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember([] {
    auto v = whittaker::suite_names();
    v.push_back("all");
    return v;
  }()));
  verify->add_option("--cases", cases, "random tuples for barnes");
  verify->add_option("--n", suite_n, "rank for the asai suite");

  TableArgs tb;
  auto* table = app.add_subcommand("table", "CSV table over a log-spaced a_1 grid");
  table->add_option("function", tb.function)->required()->check(CLI::IsMember({"spherical-c", "minimal-c"}));
  table->add_option("--nu", tb.nu)->required();
  table->add_option("--kappa", tb.kappa);
  table->add_option("--ell", tb.ell);
  table->add_option("--fixed", tb.fixed, "a_2..a_{n-1}, JSON array");
  table->add_option("--a-min", tb.a_min);
  table->add_option("--a-max", tb.a_max);
  table->add_option("--points", tb.points);
  table->add_option("--method", tb.method)->check(CLI::IsMember({"mb", "direct"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (const char* env = std::getenv("WHITTAKER_THREADS"); env && app.get_option("--threads")->count() == 0) {
      try {
        cfg.threads = std::stoi(env);
      } catch (const std::exception&) {
        throw SchemaError("WHITTAKER_THREADS must be an integer");
      }
    }
    if (app.get_option("--tol")->count()) cfg.tolerance = tol;
    if (app.get_option("--mb-height")->count()) cfg.mb_height = height;
    if (app.get_option("--mb-step")->count()) cfg.mb_step = step;
    if (app.get_option("--quad-window")->count()) cfg.quad_window = window;
    if (app.get_option("--threads")->count()) cfg.threads = threads;
    if (app.get_option("--format")->count()) cfg.output_format = format;
    validate(cfg);

    if (*eval) {
      if (*padic) return eval_padic(ev, cfg);
      if (*sph) return eval_spherical(ev, cfg);
      if (*mc) return eval_minimal(ev, cfg);
      if (*g3) return eval_gl3r(ev, cfg);
      return eval_asai(ev, cfg);
    }
    if (*verify) return run_verify(suite, cases, suite_n, cfg);
    return run_table(tb, cfg);
  } catch (const whittaker::Error& e) {
    print_error(e.kind(), e.what());
    return whittaker::is_numeric_failure(e) ? kExitNumeric : kExitUsage;
  } catch (const SchemaError& e) {
    print_error("SchemaError", e.what());
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    print_error("SchemaError", e.what());
    return kExitUsage;
  }
}
