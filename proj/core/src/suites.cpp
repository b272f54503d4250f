#include "whittaker/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>

#include "whittaker/asai_zeta.hpp"
#include "whittaker/errors.hpp"
#include "whittaker/padic_whittaker.hpp"

namespace whittaker {

bool SuiteReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.pass; });
}

double SuiteReport::max_error() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.error);
  return m;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"gamma", "barnes",      "shintani", "lemmas", "gl3r",
                                                 "glnc",  "ishii-stade", "asai",     "engine"};
  return names;
}

namespace {

double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

std::string fmt_vec(const std::vector<cplx>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << fmt(v[i]);
  return os.str() + ")";
}

template <class T>
std::string fmt_ints(const std::vector<T>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str() + ")";
}

SuiteRow row(const std::string& suite, std::string label, double err, double tol,
             std::string detail = {}) {
  return {suite, std::move(label), err, tol, err <= tol, std::move(detail)};
}

// Runs one case; library errors become a failed row.
void guarded(std::vector<SuiteRow>& rows, const std::string& suite, const std::string& label,
             double tol, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    rows.push_back({suite, label, INFINITY, tol, false, e.kind() + ": " + e.what()});
  }
}

// --- gamma ----------------------------------------------------------------

std::vector<SuiteRow> gamma_suite(const SuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> re(-5.0, 10.0), im(-50.0, 50.0);
  auto far_from_poles = [](cplx z) {
    return !near_gamma_pole(z, 1e-3) && !near_gamma_pole(0.5 * z, 1e-3) &&
           !near_gamma_pole(0.5 * (z + 1.0), 1e-3);
  };
  double rec = 0.0, dup = 0.0;
  int count = 0;
  while (count < 1000) {
    const cplx z(re(rng), im(rng));
    if (!far_from_poles(z)) continue;
    ++count;
    const cplx ratio = (LogComplex::from_value(z) * log_gamma(z) / log_gamma(z + 1.0)).value();
    rec = std::max(rec, std::abs(1.0 - ratio));
    const cplx d = (gamma_R(z) * gamma_R(z + 1.0) / gamma_C(z)).value();
    dup = std::max(dup, std::abs(1.0 - d));
  }
  return {row("gamma", "recurrence Gamma(z+1) = z Gamma(z), 1000 points", rec, 1e-12),
          row("gamma", "duplication Gamma_C(s) = Gamma_R(s) Gamma_R(s+1), 1000 points", dup,
              1e-12)};
}

// --- barnes ---------------------------------------------------------------

std::vector<SuiteRow> barnes_suite(const SuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_real_distribution<double> re(0.2, 1.5), im(-1.0, 1.0);
  EvalOptions eo{1e-11, 0.0, 4, cfg.arch.threads};
  std::vector<SuiteRow> rows;
  for (int k = 0; k < cfg.cases; ++k) {
    const cplx a(re(rng), im(rng)), b(re(rng), im(rng)), c(re(rng), im(rng)), d(re(rng), im(rng));
    const std::string label = "(a,b,c,d) = " + fmt_vec({a, b, c, d});
    guarded(rows, "barnes", label, cfg.arch.tol, [&] {
      const BarnesResult r = barnes_check(a, b, c, d, eo);
      rows.push_back(row("barnes", label, rel_diff(r.lhs, r.rhs), cfg.arch.tol,
                         "lhs=" + fmt(r.lhs) + " rhs=" + fmt(r.rhs)));
    });
  }
  return rows;
}

// --- shintani -------------------------------------------------------------

void weights(int n, int max_entry, std::vector<long>& cur, std::vector<DominantWeight>& out) {
  if (int(cur.size()) == n) {
    out.emplace_back(cur);
    return;
  }
  const long top = cur.empty() ? max_entry : cur.back();
  for (long v = top; v >= 0; --v) {
    cur.push_back(v);
    weights(n, max_entry, cur, out);
    cur.pop_back();
  }
}

std::vector<DominantWeight> all_weights(int n, int max_entry) {
  std::vector<DominantWeight> out;
  std::vector<long> cur;
  weights(n, max_entry, cur, out);
  return out;
}

SatakeParams random_alphas(std::mt19937_64& rng, int n, bool gaussian) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  std::vector<GaussianRational> out;
  while (int(out.size()) < n) {
    long p = num(rng);
    if (p == 0) continue;
    GaussianRational x(mpq_class(p, den(rng)), gaussian ? mpq_class(num(rng), den(rng)) : 0);
    if (std::find(out.begin(), out.end(), x) != out.end()) continue;
    out.push_back(x);
  }
  return SatakeParams(std::move(out));
}

std::vector<SuiteRow> shintani_suite(const SuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 2);
  std::vector<SuiteRow> rows;
  for (int n = 1; n <= 4; ++n) {
    int checks = 0, failures = 0;
    for (const auto& lam : all_weights(n, 3)) {
      for (int t = 0; t < 4; ++t) {
        const SatakeParams alpha = random_alphas(rng, n, t == 3);
        ++checks;
        if (!(schur_branching(lam, alpha) == schur_bialternant(lam, alpha))) ++failures;
      }
    }
    rows.push_back(row("shintani", "branching = bialternant, n=" + std::to_string(n) + ", " +
                                       std::to_string(checks) + " checks",
                       failures, 0.0));
  }
  for (int n = 2; n <= 4; ++n) {
    int checks = 0, failures = 0;
    for (const auto& lam : all_weights(n, 3)) {
      for (int t = 0; t < 3; ++t) {
        const SatakeParams alpha = random_alphas(rng, n - 1, t == 2);
        ++checks;
        if (!verify_shintani_recursion(lam, alpha)) ++failures;
      }
    }
    rows.push_back(row("shintani", "recursion s_lam(alpha,1) = sum s_mu(alpha), n=" +
                                       std::to_string(n) + ", " + std::to_string(checks) +
                                       " checks",
                       failures, 0.0));
  }
  return rows;
}

// --- lemmas ---------------------------------------------------------------

std::vector<SuiteRow> lemmas_suite(const SuiteConfig&) {
  const LemmaReport rep = lemma_checks();
  std::vector<SuiteRow> rows;
  for (const auto& [lemma, err] : rep.max_rel_err) {
    int count = 0;
    for (const auto& c : rep.cases) count += c.lemma == lemma;
    rows.push_back(row("lemmas", lemma + ", " + std::to_string(count) + " cases", err, 1e-7));
  }
  return rows;
}

// --- gl3r -----------------------------------------------------------------

std::vector<SuiteRow> gl3r_suite(const SuiteConfig& cfg) {
  std::vector<SuiteRow> rows;
  ArchOptions opts = cfg.arch;
  opts.tol = 1e-10;
  for (int kappa : {2, 3}) {
    for (cplx w : {cplx(0.0), cplx(0.3, 0.1)}) {
      for (auto [a1, a2] : {std::pair{1.0, 1.0}, std::pair{0.5, 1.5}}) {
        std::ostringstream ctx;
        ctx << "kappa=" << kappa << " w=" << fmt(w) << " a=(" << a1 << "," << a2 << ")";
        guarded(rows, "gl3r", ctx.str(), 1e-6, [&] {
          const MiyazakiParams p{kappa, w};
          const MonomialValues mb = miyazaki_mb(p, a1, a2, opts);
          const MonomialValues direct = miyazaki_direct(p, a1, a2, opts);
          for (const auto& [m, v] : mb) {
            const cplx d = direct.at(m).value;
            rows.push_back(row("gl3r",
                               ctx.str() + " n=" + fmt_ints(std::vector<int>(m.begin(), m.end())),
                               rel_diff(v.value, d), 1e-6,
                               "mb=" + fmt(v.value) + " direct=" + fmt(d)));
          }
        });
      }
    }
  }
  return rows;
}

// --- glnc -----------------------------------------------------------------

std::vector<SuiteRow> glnc_suite(const SuiteConfig& cfg) {
  std::vector<SuiteRow> rows;
  struct Setup {
    std::vector<cplx> nu;
    std::vector<TorusPointC> points;
    double tol;
  };
  const std::vector<Setup> setups = {
      {{0.3, cplx(0.0, -0.1)}, {{{0.5}}, {{1.0}}, {{2.0}}}, 1e-8},
      {{0.1, cplx(0.0, 0.2), -0.1}, {{{0.5, 0.5}}, {{1.0, 1.0}}, {{2.0, 0.5}}}, 1e-5},
  };
  for (const auto& s : setups) {
    ArchOptions opts = cfg.arch;
    opts.tol = 1e-2 * s.tol;
    for (int kappa = 0; kappa <= 2; ++kappa) {
      const MinimalTypeParamsC p{s.nu, kappa};
      for (const auto& ell : WeightIndexC::all(p.n(), kappa)) {
        for (const auto& a : s.points) {
          std::ostringstream label;
          label << "n=" << p.n() << " kappa=" << kappa << " ell=" << fmt_ints(ell.ell)
                << " a=" << fmt_ints(a.a);
          guarded(rows, "glnc", label.str(), s.tol, [&] {
            const Estimate mb = whittaker_c_mb(p, ell, a, opts);
            const Estimate direct = whittaker_c_direct(p, ell, a, opts);
            rows.push_back(row("glnc", label.str(), rel_diff(mb.value, direct.value), s.tol,
                               "mb=" + fmt(mb.value) + " direct=" + fmt(direct.value)));
          });
        }
      }
    }
  }
  return rows;
}

// --- ishii-stade ----------------------------------------------------------

std::vector<SuiteRow> ishii_stade_suite(const SuiteConfig& cfg) {
  std::vector<SuiteRow> rows;
  struct Case {
    std::array<cplx, 2> mu;
    cplx w;
    std::array<cplx, 2> sigma;
  };
  const std::vector<Case> cases = {
      {{0.3, -0.3}, 2.0, {1.0, 1.7}},
      {{cplx(0.2, 0.1), -0.1}, cplx(1.5, 0.5), {0.8, cplx(1.4, 0.3)}},
  };
  ArchOptions opts = cfg.arch;
  opts.tol = 1e-10;
  for (const auto& c : cases) {
    std::ostringstream ctx;
    ctx << "mu=" << fmt_vec({c.mu[0], c.mu[1]}) << " w=" << fmt(c.w);
    guarded(rows, "ishii-stade", ctx.str(), 1e-7, [&] {
      const ConsistencyResult r0 = ishii_stade_consistency(c.mu, c.w, c.sigma[0], opts);
      const ConsistencyResult r1 = ishii_stade_consistency(c.mu, c.w, c.sigma[1], opts);
      for (int k = 0; k < 2; ++k) {
        const auto& r = k == 0 ? r0 : r1;
        rows.push_back(row("ishii-stade", ctx.str() + " sigma=" + fmt(c.sigma[k]),
                           rel_diff(r.rhs.value, r.lhs), 1e-7,
                           "lhs=" + fmt(r.lhs) + " rhs=" + fmt(r.rhs.value)));
      }
      rows.push_back(row("ishii-stade", ctx.str() + " sigma-independence",
                         rel_diff(r1.rhs.value, r0.rhs.value), 1e-7));
    });
  }
  return rows;
}

// --- asai -----------------------------------------------------------------

std::vector<SuiteRow> asai_suite(const SuiteConfig& cfg) {
  std::vector<SuiteRow> rows;
  std::vector<AsaiInput> inputs;
  if (cfg.asai_n == 2) {
    for (int kappa = 0; kappa <= 2; ++kappa) {
      for (const auto& nu : std::vector<std::vector<cplx>>{
               {0.0, 0.0}, {0.2, -0.2}, {cplx(0.0, 0.1), cplx(0.0, -0.1)}}) {
        for (double s : {1.2, 1.5, 2.0}) inputs.push_back({2, nu, kappa, s});
      }
    }
  } else if (cfg.asai_n == 3) {
    for (int kappa = 0; kappa <= 1; ++kappa) inputs.push_back({3, {0.2, 0.0, -0.2}, kappa, 1.5});
  } else {
    throw UnsupportedRank("the asai suite covers n = 2, 3");
  }
  const double tol = cfg.arch.tol;
  for (const auto& in : inputs) {
    std::ostringstream label;
    label << "n=" << in.n << " kappa=" << in.kappa << " nu=" << fmt_vec(in.nu)
          << " s=" << in.s.real();
    guarded(rows, "asai", label.str(), tol, [&] {
      const AsaiReport r = verify_asai(in, tol);
      rows.push_back(row("asai", label.str(), r.rel_err, tol,
                         "lhs=" + fmt(r.lhs.value) + " rhs=" + fmt(r.rhs)));
    });
  }
  return rows;
}

// --- engine ---------------------------------------------------------------

bool same_bits(cplx a, cplx b) { return std::memcmp(&a, &b, sizeof(cplx)) == 0; }

std::vector<SuiteRow> engine_suite(const SuiteConfig& cfg) {
  std::vector<SuiteRow> rows;
  const EvalOptions eo{1e-11, 0.0, 4, 1};
  for (const auto& [name, f] : integrand_corpus()) {
    guarded(rows, "engine", name + " contour shift", 1e-9, [&, &f = f, &name = name] {
      // Two feasible lines 0.7 apart in every variable; the segment between
      // them is feasible too, so no pole is crossed.
      const std::vector<double> base = optimize_contour(f, 0.1).sigma;
      ContourSpec c0{base}, c1{base};
      bool found = false;
      for (auto [d0, d1] : {std::pair{0.0, 0.7}, {0.0, -0.7}, {-0.35, 0.35}}) {
        for (std::size_t i = 0; i < base.size(); ++i) {
          c0.sigma[i] = base[i] + d0;
          c1.sigma[i] = base[i] + d1;
        }
        if (contour_is_feasible(f, c0.sigma, 0.05) && contour_is_feasible(f, c1.sigma, 0.05)) {
          found = true;
          break;
        }
      }
      if (!found) throw InfeasibleContour("no pair of feasible contours 0.7 apart");
      const MBResult r0 = eval_mb(f, c0, eo);
      const MBResult r1 = eval_mb(f, c1, eo);
      rows.push_back(row("engine", name + " contour shift", rel_diff(r1.value, r0.value), 1e-9,
                         fmt(r0.value) + " vs " + fmt(r1.value)));

      EvalOptions par = eo;
      par.threads = std::max(4, cfg.arch.threads);
      const MBResult p = eval_mb(f, c0, par);
      const bool same = same_bits(p.value, r0.value) && p.error_estimate == r0.error_estimate;
      rows.push_back(row("engine", name + " threads 1 vs " + std::to_string(par.threads),
                         same ? 0.0 : 1.0, 0.0));
    });
  }
  return rows;
}

}  // namespace

std::vector<CorpusEntry> integrand_corpus() {
  const Rational half(1, 2);
  std::vector<CorpusEntry> out;
  out.push_back({"gamma_power",
                 MBIntegrand(1, LogComplex(), {{GammaKind::Plain, 0.0, {Rational(1)}, Position::Numerator}},
                             {{1.7, 0.0, {Rational(-1)}}})});
  // 2^{-4} Gamma_C(s/2 + z/4) Gamma_C(s/2 - z/4) (b1 b2)^{-s} at z = 0.6, b1 b2 = 0.8.
  out.push_back({"bessel_n2",
                 MBIntegrand(1, LogComplex(-4.0 * std::log(2.0), 0.0),
                             {{GammaKind::C, 0.15, {half}, Position::Numerator},
                              {GammaKind::C, -0.15, {half}, Position::Numerator}},
                             {{0.8, 0.0, {Rational(-1)}}})});
  out.push_back({"barnes",
                 MBIntegrand(1, LogComplex(),
                             {{GammaKind::C, 0.3, {half}, Position::Numerator},
                              {GammaKind::C, 0.7, {half}, Position::Numerator},
                              {GammaKind::C, 0.5, {-half}, Position::Numerator},
                              {GammaKind::C, 0.9, {-half}, Position::Numerator}})});
  out.push_back({"minimal_n2", minimal_type_integrand({{0.3, cplx(0.0, -0.1)}, 1}, {{1, 0}}, {{1.0}})});
  out.push_back({"miyazaki", miyazaki_integrand({2, cplx(0.3, 0.1)}, {1, 0, 1}, 0.5, 1.5)});
  out.push_back({"minimal_n3",
                 minimal_type_integrand({{0.1, cplx(0.0, 0.2), -0.1}, 1}, {{0, 1, 0}}, {{1.0, 1.0}})});
  out.push_back({"spherical_n3", spherical_integrand({{0.2, 0.0, -0.2}}, {{1.0, 1.0}})});
  return out;
}

std::vector<SuiteReport> run_suite(const std::string& name, const SuiteConfig& cfg) {
  using Runner = std::vector<SuiteRow> (*)(const SuiteConfig&);
  static const std::vector<std::pair<std::string, Runner>> runners = {
      {"gamma", gamma_suite}, {"barnes", barnes_suite},           {"shintani", shintani_suite},
      {"lemmas", lemmas_suite}, {"gl3r", gl3r_suite},             {"glnc", glnc_suite},
      {"ishii-stade", ishii_stade_suite}, {"asai", asai_suite}, {"engine", engine_suite}};
  std::vector<SuiteReport> out;
  for (const auto& [n, run] : runners) {
    if (name != "all" && name != n) continue;
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep{n, run(cfg)};
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(rep));
  }
  if (out.empty()) throw InvalidArgument("unknown suite '" + name + "'");
  return out;
}

}  // namespace whittaker
