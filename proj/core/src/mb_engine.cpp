#include "whittaker/mb_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "whittaker/errors.hpp"

namespace whittaker {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool factor_on_pole(GammaKind kind, cplx arg, double tol) {
  return near_gamma_pole(kind == GammaKind::R ? 0.5 * arg : arg, tol);
}

LogComplex gamma_of_kind(GammaKind kind, cplx arg) {
  switch (kind) {
    case GammaKind::Plain: return log_gamma(arg);
    case GammaKind::R: return gamma_R(arg);
    case GammaKind::C: return gamma_C(arg);
  }
  return {};
}

cplx affine(cplx constant, const std::vector<Rational>& coeffs, std::span<const cplx> s) {
  cplx v = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero()) v += coeffs[i].value() * s[i];
  }
  return v;
}

double affine_real(double constant, const std::vector<Rational>& coeffs,
                   std::span<const double> sigma) {
  double v = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i].value() * sigma[i];
  return v;
}

std::vector<int> support(const std::vector<Rational>& coeffs) {
  std::vector<int> vars;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero()) vars.push_back(int(i));
  }
  return vars;
}

}  // namespace

cplx GammaFactor::argument(std::span<const cplx> s) const { return affine(constant, coeffs, s); }

LogComplex GammaFactor::evaluate_at(cplx arg) const {
  if (position == Position::Denominator) {
    if (factor_on_pole(kind, arg, kPoleTolerance)) return LogComplex::zero();
    return gamma_of_kind(kind, arg).inverse();
  }
  return gamma_of_kind(kind, arg);
}

MBIntegrand::MBIntegrand(int nvars, LogComplex prefactor, std::vector<GammaFactor> gammas,
                         std::vector<PowerFactor> powers, std::vector<ExternalFactor> externals)
    : nvars_(nvars),
      prefactor_(prefactor),
      gammas_(std::move(gammas)),
      powers_(std::move(powers)),
      externals_(std::move(externals)) {
  if (nvars_ < 1 || nvars_ > kMaxVariables) {
    throw InvalidArgument("MBIntegrand: variable count must be in 1.." +
                          std::to_string(kMaxVariables));
  }
  for (const auto& g : gammas_) {
    if (int(g.coeffs.size()) != nvars_) {
      throw InvalidArgument("MBIntegrand: gamma factor coefficient count differs from nvars");
    }
  }
  for (const auto& p : powers_) {
    if (int(p.exponent_coeffs.size()) != nvars_) {
      throw InvalidArgument("MBIntegrand: power factor coefficient count differs from nvars");
    }
    if (!(p.base > 0.0) || !std::isfinite(p.base)) {
      throw InvalidArgument("MBIntegrand: power factor base must be positive");
    }
  }
  for (const auto& e : externals_) {
    if (!e.fn) throw InvalidArgument("MBIntegrand: external factor without callback");
    for (int v : e.vars) {
      if (v < 0 || v >= nvars_) throw InvalidArgument("MBIntegrand: external factor variable");
    }
  }
  // Exponential decay along every vertical line needs more Gamma factors
  // upstairs than downstairs among those that move with the variable.
  for (int v = 0; v < nvars_; ++v) {
    int net = 0;
    for (const auto& g : gammas_) {
      if (!g.coeffs[v].is_zero()) net += g.position == Position::Numerator ? 1 : -1;
    }
    if (net < 1) {
      throw InvalidArgument("MBIntegrand: variable " + std::to_string(v) +
                            " has no net numerator Gamma factor (no decay)");
    }
  }
}

MBIntegrand MBIntegrand::with_prefactor(LogComplex p) const {
  MBIntegrand copy = *this;
  copy.prefactor_ = p;
  return copy;
}

LogComplex MBIntegrand::evaluate(std::span<const cplx> s) const {
  LogComplex v = prefactor_;
  for (const auto& g : gammas_) v *= g.evaluate_at(g.argument(s));
  for (const auto& p : powers_) {
    v *= LogComplex::from_log(affine(p.exponent_constant, p.exponent_coeffs, s) * std::log(p.base));
  }
  for (const auto& e : externals_) v *= e.fn(s);
  return v;
}

// ---------------------------------------------------------------------------
// Contours

namespace {

// a . sigma >= b
struct Constraint {
  std::vector<double> a;
  double b;
};

std::vector<Constraint> pole_constraints(const MBIntegrand& f, double margin) {
  std::vector<Constraint> out;
  for (const auto& g : f.gammas()) {
    if (g.position != Position::Numerator) continue;
    Constraint c{std::vector<double>(f.nvars()), margin - g.constant.real()};
    for (int i = 0; i < f.nvars(); ++i) c.a[i] = g.coeffs[i].value();
    out.push_back(std::move(c));
  }
  return out;
}

bool all_zero(const std::vector<double>& a) {
  return std::all_of(a.begin(), a.end(), [](double x) { return std::abs(x) < 1e-14; });
}

void normalise(Constraint& c) {
  double m = 0.0;
  for (double x : c.a) m = std::max(m, std::abs(x));
  if (m == 0.0) return;
  for (double& x : c.a) x /= m;
  c.b /= m;
}

// Removes duplicate directions, keeping the tightest bound.
void prune(std::vector<Constraint>& cs) {
  std::vector<Constraint> out;
  for (auto& c : cs) {
    normalise(c);
    bool merged = false;
    for (auto& o : out) {
      bool same = true;
      for (std::size_t i = 0; i < c.a.size() && same; ++i) same = std::abs(c.a[i] - o.a[i]) < 1e-12;
      if (same) {
        o.b = std::max(o.b, c.b);
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(c);
  }
  cs = std::move(out);
}

[[noreturn]] void infeasible() {
  throw InfeasibleContour("numerator pole constraints admit no common contour");
}

// levels[v] holds the constraints on variables 0..v-1 left after eliminating
// v..n-1; levels[n] is the original system.
std::vector<std::vector<Constraint>> eliminate(std::vector<Constraint> cs, int n) {
  std::vector<std::vector<Constraint>> levels(n + 1);
  prune(cs);
  levels[n] = cs;
  for (int v = n - 1; v >= 1; --v) {
    std::vector<Constraint> pos, neg, next;
    for (const auto& c : levels[v + 1]) {
      if (c.a[v] > 1e-14) pos.push_back(c);
      else if (c.a[v] < -1e-14) neg.push_back(c);
      else next.push_back(c);
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        const double wp = -q.a[v], wq = p.a[v];
        Constraint c{std::vector<double>(n), wp * p.b + wq * q.b};
        for (int i = 0; i < n; ++i) c.a[i] = wp * p.a[i] + wq * q.a[i];
        c.a[v] = 0.0;
        next.push_back(std::move(c));
      }
    }
    for (auto& c : next) {
      if (all_zero(c.a) && c.b > 1e-12) infeasible();
    }
    std::erase_if(next, [](const Constraint& c) { return all_zero(c.a); });
    prune(next);
    levels[v] = std::move(next);
  }
  for (const auto& c : levels[n]) {
    if (all_zero(c.a) && c.b > 1e-12) infeasible();
  }
  return levels;
}

std::pair<double, double> interval(const std::vector<Constraint>& cs, int v,
                                   std::span<const double> sigma) {
  double lo = -kInf, hi = kInf;
  for (const auto& c : cs) {
    double rhs = c.b;
    for (int j = 0; j < int(c.a.size()); ++j) {
      if (j != v) rhs -= c.a[j] * sigma[j];
    }
    if (c.a[v] > 1e-14) lo = std::max(lo, rhs / c.a[v]);
    else if (c.a[v] < -1e-14) hi = std::min(hi, rhs / c.a[v]);
    else if (rhs > 1e-12) infeasible();
  }
  if (lo > hi + 1e-12) infeasible();
  return {lo, hi};
}

template <class Choose>
ContourSpec solve(const MBIntegrand& f, double margin, Choose choose) {
  if (!(margin > 0.0)) throw InvalidArgument("contour margin must be positive");
  const int n = f.nvars();
  auto levels = eliminate(pole_constraints(f, margin), n);
  ContourSpec spec;
  spec.sigma.assign(n, 0.0);
  for (int v = 0; v < n; ++v) {
    // Constraints in levels[v+1] involve only variables 0..v.
    auto [lo, hi] = interval(levels[v + 1], v, spec.sigma);
    spec.sigma[v] = choose(v, lo, hi);
  }
  return spec;
}

}  // namespace

bool contour_is_feasible(const MBIntegrand& f, std::span<const double> sigma, double margin) {
  if (int(sigma.size()) != f.nvars()) return false;
  for (const auto& g : f.gammas()) {
    if (g.position != Position::Numerator) continue;
    if (affine_real(g.constant.real(), g.coeffs, sigma) < margin) return false;
  }
  return true;
}

ContourSpec find_contour(const MBIntegrand& f, double margin) {
  return solve(f, margin, [](int, double lo, double hi) {
    if (std::isfinite(lo) && std::isfinite(hi)) return 0.5 * (lo + hi);
    if (std::isfinite(lo)) return lo;
    if (std::isfinite(hi)) return hi;
    return kDefaultStart;
  });
}

ContourSpec project_contour(const MBIntegrand& f, std::span<const double> preferred,
                            double margin) {
  if (int(preferred.size()) != f.nvars()) throw LengthMismatch("preferred sigma length");
  return solve(f, margin, [&](int v, double lo, double hi) {
    return std::clamp(preferred[v], lo, std::max(lo, hi));
  });
}

namespace {

// log |integrand| on the real axis; denominator poles are ignored.
double real_axis_log_modulus(const MBIntegrand& f, std::span<const double> sigma) {
  double total = 0.0;
  for (const auto& g : f.gammas()) {
    const cplx arg = g.constant + affine_real(0.0, g.coeffs, sigma);
    if (factor_on_pole(g.kind, arg, 1e-9)) {
      if (g.position == Position::Numerator) return kInf;
      continue;
    }
    const double lm = gamma_of_kind(g.kind, arg).log_modulus;
    total += g.position == Position::Numerator ? lm : -lm;
  }
  for (const auto& p : f.powers()) {
    total += affine_real(p.exponent_constant.real(), p.exponent_coeffs, sigma) * std::log(p.base);
  }
  return total;
}

}  // namespace

ContourSpec optimize_contour(const MBIntegrand& f, double margin) {
  ContourSpec spec = find_contour(f, margin);
  const int n = f.nvars();
  const auto cons = pole_constraints(f, margin);
  constexpr double kSpan = 30.0;
  constexpr double kGolden = 0.6180339887498949;
  for (int cycle = 0; cycle < 40; ++cycle) {
    double moved = 0.0;
    for (int v = 0; v < n; ++v) {
      auto [lo, hi] = interval(cons, v, spec.sigma);
      const double cur = spec.sigma[v];
      double a = std::isfinite(lo) ? lo : std::min(cur, hi) - kSpan;
      double b = std::isfinite(hi) ? hi : std::max(cur, a) + kSpan;
      auto phi = [&](double x) {
        std::vector<double> s = spec.sigma;
        s[v] = x;
        return real_axis_log_modulus(f, s);
      };
      double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
      double f1 = phi(x1), f2 = phi(x2);
      for (int it = 0; it < 80 && b - a > 1e-9; ++it) {
        if (f1 < f2) {
          b = x2; x2 = x1; f2 = f1;
          x1 = b - kGolden * (b - a); f1 = phi(x1);
        } else {
          a = x1; x1 = x2; f1 = f2;
          x2 = a + kGolden * (b - a); f2 = phi(x2);
        }
      }
      double best = 0.5 * (a + b);
      if (!(phi(best) <= phi(cur))) best = cur;
      best = std::clamp(best, lo, std::max(lo, hi));
      moved = std::max(moved, std::abs(best - cur));
      spec.sigma[v] = best;
    }
    if (moved < 1e-6) break;
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Acc {
  cplx full = 0.0;
  cplx half = 0.0;  // restricted to |Im| <= T/2 at every level
  double l1 = 0.0;
};

// Neumaier-compensated complex accumulator with a fixed summation order.
struct Summer {
  double re = 0, im = 0, cre = 0, cim = 0;
  static void add(double& s, double& c, double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  void add(cplx z) {
    add(re, cre, z.real());
    add(im, cim, z.imag());
  }
  cplx sum() const { return {re + cre, im + cim}; }
};

cplx pairwise_sum(std::span<const cplx> xs) {
  if (xs.size() <= 8) {
    Summer s;
    for (auto x : xs) s.add(x);
    return s.sum();
  }
  const std::size_t mid = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, mid)) + pairwise_sum(xs.subspan(mid));
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) return std::accumulate(xs.begin(), xs.end(), 0.0);
  const std::size_t mid = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, mid)) + pairwise_sum(xs.subspan(mid));
}

// Gamma or power factor tabulated along the lattice: on the tensor grid its
// argument is base + i * (h/D) * m with m = sum_i c_i k_i an integer.
struct Table {
  std::vector<int> weights;  // c_i, one per variable
  int offset = 0;            // table index of m = 0
  std::vector<LogComplex> values;

  const LogComplex& at(const std::vector<int>& k) const {
    int m = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) m += weights[i] * k[i];
    return values[m + offset];
  }
};

std::int64_t lcm_of_denominators(const std::vector<Rational>& coeffs) {
  std::int64_t d = 1;
  for (const auto& c : coeffs) d = std::lcm(d, c.den());
  return d;
}

template <class Eval>
Table make_table(const std::vector<Rational>& coeffs, int K, Eval eval) {
  Table t;
  const std::int64_t D = lcm_of_denominators(coeffs);
  int span = 0;
  for (const auto& c : coeffs) {
    const int w = int(c.num() * (D / c.den()));
    t.weights.push_back(w);
    span += std::abs(w) * K;
  }
  t.offset = span;
  t.values.resize(2 * span + 1);
  for (int m = -span; m <= span; ++m) t.values[m + span] = eval(double(m) / double(D));
  return t;
}

struct PlanNode {
  int var = 0;
  std::vector<int> tables;     // indices into Grid::tables applied here
  std::vector<int> externals;  // indices into integrand externals
  std::vector<PlanNode> children;
};

struct FactorVars {
  std::vector<int> vars;
};

// Splits the remaining variables into independent components and nests
// each component in index order, so separable integrands cost a sum, not a
// product, of grid sizes.
std::vector<PlanNode> build_plan(unsigned assigned, unsigned remaining,
                                 const std::vector<FactorVars>& tab_vars,
                                 const std::vector<FactorVars>& ext_vars, int n) {
  std::vector<PlanNode> nodes;
  if (remaining == 0) return nodes;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto link = [&](const std::vector<FactorVars>& fs) {
    for (const auto& f : fs) {
      int first = -1;
      for (int v : f.vars) {
        if (!(remaining >> v & 1u)) continue;
        if (first < 0) first = v;
        else parent[find(v)] = find(first);
      }
    }
  };
  link(tab_vars);
  link(ext_vars);
  for (int v = 0; v < n; ++v) {
    if (!(remaining >> v & 1u) || find(v) != v) continue;
    unsigned comp = 0;
    int first = n;
    for (int u = 0; u < n; ++u) {
      if ((remaining >> u & 1u) && find(u) == v) {
        comp |= 1u << u;
        first = std::min(first, u);
      }
    }
    PlanNode node;
    node.var = first;
    const unsigned now = assigned | (1u << first);
    auto applies = [&](const FactorVars& f) {
      bool has = false;
      for (int u : f.vars) {
        if (!(now >> u & 1u)) return false;
        has |= u == first;
      }
      return has;
    };
    for (int i = 0; i < int(tab_vars.size()); ++i) {
      if (applies(tab_vars[i])) node.tables.push_back(i);
    }
    for (int i = 0; i < int(ext_vars.size()); ++i) {
      if (applies(ext_vars[i])) node.externals.push_back(i);
    }
    node.children = build_plan(now, comp & ~(1u << first), tab_vars, ext_vars, n);
    nodes.push_back(std::move(node));
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const PlanNode& a, const PlanNode& b) { return a.var < b.var; });
  return nodes;
}

class Grid {
 public:
  Grid(const MBIntegrand& f, std::span<const double> sigma, double h, double T)
      : f_(f), sigma_(sigma.begin(), sigma.end()), h_(h), K_(int(std::floor(T / h + 1e-9))) {
    const int n = f.nvars();
    std::vector<FactorVars> tab_vars, ext_vars;
    for (const auto& g : f.gammas()) {
      const cplx base = g.constant + affine_real(0.0, g.coeffs, sigma_);
      const double step = h;
      tables_.push_back(make_table(g.coeffs, K_, [&](double m) {
        const cplx arg = base + cplx(0.0, m * step);
        if (g.position == Position::Numerator && factor_on_pole(g.kind, arg, 1e-10)) {
          std::ostringstream os;
          os << "Gamma argument " << arg << " meets a pole on the contour";
          throw PoleOnContour(os.str());
        }
        return g.evaluate_at(arg);
      }));
      tab_vars.push_back({support(g.coeffs)});
    }
    for (const auto& p : f.powers()) {
      const double lb = std::log(p.base);
      const cplx base = p.exponent_constant + affine_real(0.0, p.exponent_coeffs, sigma_);
      tables_.push_back(make_table(p.exponent_coeffs, K_, [&](double m) {
        return LogComplex::from_log((base + cplx(0.0, m * h)) * lb);
      }));
      tab_vars.push_back({support(p.exponent_coeffs)});
    }
    for (const auto& e : f.externals()) ext_vars.push_back({e.vars});
    plan_ = build_plan(0u, (1u << n) - 1u, tab_vars, ext_vars, n);
  }

  Acc run(int threads) const {
    Acc total{1.0, 1.0, 1.0};
    for (std::size_t i = 0; i < plan_.size(); ++i) {
      const Acc a = i == 0 ? run_top(plan_[i], threads) : run_sequential(plan_[i]);
      total.full *= a.full;
      total.half *= a.half;
      total.l1 *= a.l1;
    }
    const cplx pre = f_.prefactor().value();
    total.full *= pre;
    total.half *= pre;
    total.l1 *= std::abs(pre);
    return total;
  }

 private:
  struct State {
    std::vector<int> k;
    std::vector<cplx> s;
  };

  State fresh_state() const {
    State st{std::vector<int>(f_.nvars(), 0), std::vector<cplx>(f_.nvars())};
    for (int i = 0; i < f_.nvars(); ++i) st.s[i] = sigma_[i];
    return st;
  }

  // Contribution of one grid line position of `node`, including children.
  Acc term(const PlanNode& node, int kk, State& st) const {
    st.k[node.var] = kk;
    st.s[node.var] = cplx(sigma_[node.var], kk * h_);
    double lm = 0.0, ph = 0.0;
    for (int t : node.tables) {
      const LogComplex& v = tables_[t].at(st.k);
      lm += v.log_modulus;
      ph += v.phase;
    }
    for (int e : node.externals) {
      const LogComplex v = f_.externals()[e].fn(st.s);
      lm += v.log_modulus;
      ph += v.phase;
    }
    if (lm == -kInf) return {};
    const cplx w = std::polar(std::exp(lm), ph);
    Acc a{w, w, std::abs(w)};
    for (const auto& child : node.children) {
      const Acc c = run_sequential(child, st);
      a.full *= c.full;
      a.half *= c.half;
      a.l1 *= c.l1;
    }
    return a;
  }

  double weight() const { return h_ / kTwoPi; }

  Acc run_sequential(const PlanNode& node) const {
    State st = fresh_state();
    return run_sequential(node, st);
  }

  Acc run_sequential(const PlanNode& node, State& st) const {
    Summer full, half;
    double l1 = 0.0;
    for (int kk = -K_; kk <= K_; ++kk) {
      const Acc a = term(node, kk, st);
      full.add(a.full);
      if (2 * std::abs(kk) <= K_) half.add(a.half);
      l1 += a.l1;
    }
    const double w = weight();
    return {full.sum() * w, half.sum() * w, l1 * w};
  }

  // Outermost loop: terms computed in parallel, reduced pairwise in a fixed
  // order so the result does not depend on the thread count.
  Acc run_top(const PlanNode& node, int threads) const {
    const int count = 2 * K_ + 1;
    std::vector<cplx> full(count), half(count);
    std::vector<double> l1(count);
    auto work = [&](int first, int stride) {
      State st = fresh_state();
      for (int idx = first; idx < count; idx += stride) {
        const int kk = idx - K_;
        const Acc a = term(node, kk, st);
        full[idx] = a.full;
        half[idx] = 2 * std::abs(kk) <= K_ ? a.half : 0.0;
        l1[idx] = a.l1;
      }
    };
    threads = std::clamp(threads, 1, count);
    if (threads == 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(threads);
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            work(t, threads);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    const double w = weight();
    return {pairwise_sum(full) * w, pairwise_sum(half) * w, pairwise_sum(l1) * w};
  }

  const MBIntegrand& f_;
  std::vector<double> sigma_;
  double h_;
  int K_;
  std::vector<Table> tables_;
  std::vector<PlanNode> plan_;
};

}  // namespace

MBResult eval_mb(const MBIntegrand& f, const ContourSpec& contour, const EvalOptions& opts) {
  if (int(contour.sigma.size()) != f.nvars()) {
    throw LengthMismatch("contour has " + std::to_string(contour.sigma.size()) +
                         " lines for an integrand in " + std::to_string(f.nvars()) + " variables");
  }
  if (!(contour.step > 0.0) || !(contour.height > contour.step)) {
    throw InvalidArgument("contour step and height must be positive with height > step");
  }
  for (const auto& g : f.gammas()) {
    if (g.position != Position::Numerator) continue;
    const double re = affine_real(g.constant.real(), g.coeffs, contour.sigma);
    if (re <= 1e-10) {
      std::ostringstream os;
      os << "numerator Gamma factor has real part " << re
         << " on the contour; its poles are not kept to the left";
      throw PoleOnContour(os.str());
    }
  }
  double h = contour.step, T = contour.height;
  auto run = [&](double step, double height) {
    return Grid(f, contour.sigma, step, height).run(opts.threads);
  };
  Acc coarse = run(h, T);
  for (int r = 0;; ++r) {
    const Acc fine = run(h / 2, T);
    const double disc = std::abs(fine.full - coarse.full);
    const double tail = std::abs(coarse.full - coarse.half);
    const double err = disc + tail + 16.0 * kEps * fine.l1;
    const double target = std::max(opts.tol * std::abs(fine.full), opts.abs_tol);
    if (err <= target) {
      return {fine.full, err, ContourSpec{contour.sigma, T, h / 2}};
    }
    if (r >= opts.max_refinements) {
      std::ostringstream os;
      os.precision(3);
      os << "contour integral did not reach tolerance " << opts.tol << " (estimate " << err
         << " vs |value| " << std::abs(fine.full) << ", h=" << h / 2 << ", T=" << T << ")";
      throw Unconverged(os.str());
    }
    if (tail > disc) {
      T *= 2;
      coarse = run(h, T);
    } else {
      h /= 2;
      coarse = fine;
    }
  }
}

BarnesResult barnes_check(cplx a, cplx b, cplx c, cplx d, const EvalOptions& opts) {
  for (cplx x : {a, b, c, d}) {
    if (!(x.real() > 0.0)) throw DomainError("barnes_check: parameters need positive real parts");
  }
  const Rational half(1, 2);
  std::vector<GammaFactor> gs = {
      {GammaKind::C, a, {half}, Position::Numerator},
      {GammaKind::C, b, {half}, Position::Numerator},
      {GammaKind::C, c, {-half}, Position::Numerator},
      {GammaKind::C, d, {-half}, Position::Numerator},
  };
  MBIntegrand f(1, LogComplex(), std::move(gs));
  // Widest margin the parameters allow, so the line sits midway between
  // the two pole families.
  const double room = 0.5 * (std::min(a.real(), b.real()) + std::min(c.real(), d.real()));
  const MBResult lhs = eval_mb(f, find_contour(f, 0.5 * room), opts);
  const LogComplex rhs = LogComplex(std::log(4.0), 0.0) * gamma_C(a + c) * gamma_C(a + d) *
                         gamma_C(b + c) * gamma_C(b + d) / gamma_C(a + b + c + d);
  return {lhs.value, lhs.error_estimate, rhs.value()};
}

// ---------------------------------------------------------------------------
// Structural tools

MBIntegrand shift_variables(const MBIntegrand& f, std::span<const cplx> shift) {
  if (int(shift.size()) != f.nvars()) throw LengthMismatch("shift length differs from nvars");
  if (!f.externals().empty()) throw InvalidArgument("cannot shift external factors");
  auto gs = f.gammas();
  for (auto& g : gs) g.constant = affine(g.constant, g.coeffs, shift);
  auto ps = f.powers();
  for (auto& p : ps) p.exponent_constant = affine(p.exponent_constant, p.exponent_coeffs, shift);
  return MBIntegrand(f.nvars(), f.prefactor(), std::move(gs), std::move(ps));
}

MBIntegrand canonical_form(const MBIntegrand& f) {
  if (!f.externals().empty()) throw InvalidArgument("external factors have no canonical form");
  LogComplex pre = f.prefactor();
  std::vector<PowerFactor> merged;
  for (const auto& p : f.powers()) {
    pre *= LogComplex::from_log(p.exponent_constant * std::log(p.base));
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const PowerFactor& q) { return q.base == p.base; });
    if (it == merged.end()) {
      merged.push_back({p.base, 0.0, p.exponent_coeffs});
    } else {
      for (int i = 0; i < f.nvars(); ++i) {
        it->exponent_coeffs[i] = it->exponent_coeffs[i] + p.exponent_coeffs[i];
      }
    }
  }
  std::erase_if(merged, [](const PowerFactor& p) {
    return std::all_of(p.exponent_coeffs.begin(), p.exponent_coeffs.end(),
                       [](const Rational& r) { return r.is_zero(); });
  });
  std::sort(merged.begin(), merged.end(),
            [](const PowerFactor& a, const PowerFactor& b) { return a.base < b.base; });
  auto gs = f.gammas();
  std::sort(gs.begin(), gs.end(), [](const GammaFactor& a, const GammaFactor& b) {
    return std::make_tuple(a.position, a.kind, a.coeffs, a.constant.real(), a.constant.imag()) <
           std::make_tuple(b.position, b.kind, b.coeffs, b.constant.real(), b.constant.imag());
  });
  return MBIntegrand(f.nvars(), pre, std::move(gs), std::move(merged));
}

bool structurally_equal(const MBIntegrand& a, const MBIntegrand& b, double tol) {
  if (a.nvars() != b.nvars()) return false;
  const MBIntegrand ca = canonical_form(a), cb = canonical_form(b);
  if (ca.gammas().size() != cb.gammas().size() || ca.powers().size() != cb.powers().size()) {
    return false;
  }
  for (std::size_t i = 0; i < ca.gammas().size(); ++i) {
    const auto &x = ca.gammas()[i], &y = cb.gammas()[i];
    if (x.kind != y.kind || x.position != y.position || x.coeffs != y.coeffs ||
        std::abs(x.constant - y.constant) > tol) {
      return false;
    }
  }
  for (std::size_t i = 0; i < ca.powers().size(); ++i) {
    const auto &x = ca.powers()[i], &y = cb.powers()[i];
    if (std::abs(x.base - y.base) > tol * x.base || x.exponent_coeffs != y.exponent_coeffs) {
      return false;
    }
  }
  const auto &pa = ca.prefactor(), &pb = cb.prefactor();
  if (pa.is_zero() || pb.is_zero()) return pa.is_zero() && pb.is_zero();
  return std::abs(pa.log_modulus - pb.log_modulus) <= tol &&
         std::abs(reduce_phase(pa.phase - pb.phase)) <= tol;
}

}  // namespace whittaker
