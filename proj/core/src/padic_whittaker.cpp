#include "whittaker/padic_whittaker.hpp"

#include <map>
#include <numeric>

#include "whittaker/errors.hpp"

namespace whittaker {

DominantWeight::DominantWeight(std::vector<long> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i] > entries_[i - 1]) {
      throw InvalidArgument("dominant weight must be non-increasing");
    }
  }
}

long DominantWeight::total() const { return std::accumulate(entries_.begin(), entries_.end(), 0L); }

SatakeParams::SatakeParams(std::vector<GaussianRational> alphas) : alphas_(std::move(alphas)) {
  for (const auto& a : alphas_) {
    if (a.is_zero()) throw DomainError("Satake parameters must be nonzero");
  }
}

HalfPowerValue operator*(const HalfPowerValue& a, const HalfPowerValue& b) {
  return {a.q_exponent + b.q_exponent, a.value * b.value};
}

HalfPowerValue operator+(const HalfPowerValue& a, const HalfPowerValue& b) {
  if (a.q_exponent != b.q_exponent) {
    throw InvalidArgument("cannot add values carrying different powers of q");
  }
  return {a.q_exponent, a.value + b.value};
}

bool interleaves(const DominantWeight& lam, const DominantWeight& mu) {
  if (lam.size() != mu.size() + 1) {
    throw LengthMismatch("interleaving needs len(lam) = len(mu) + 1");
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!(lam[i] >= mu[i] && mu[i] >= lam[i + 1])) return false;
  }
  return true;
}

namespace {

void enumerate(const std::vector<long>& lam, std::vector<long>& mu, std::size_t i,
               std::vector<std::vector<long>>& out) {
  if (i + 1 == lam.size()) {
    out.push_back(mu);
    return;
  }
  for (long v = lam[i]; v >= lam[i + 1]; --v) {
    mu[i] = v;
    enumerate(lam, mu, i + 1, out);
  }
}

std::vector<std::vector<long>> interleaved(const std::vector<long>& lam) {
  std::vector<std::vector<long>> out;
  if (lam.empty()) return out;
  std::vector<long> mu(lam.size() - 1);
  enumerate(lam, mu, 0, out);
  return out;
}

GaussianRational determinant(std::vector<std::vector<GaussianRational>> m) {
  const std::size_t n = m.size();
  GaussianRational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return GaussianRational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const GaussianRational inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      const GaussianRational factor = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  return det;
}

// Memo keyed by (weight, prefix length); one per top-level call, so
// concurrent callers never share mutable state.
using Memo = std::map<std::pair<std::vector<long>, std::size_t>, GaussianRational>;

GaussianRational branch(const std::vector<long>& lam, std::size_t k,
                        const std::vector<GaussianRational>& alpha, Memo& memo) {
  if (k == 0) return GaussianRational(1);
  if (k == 1) return alpha[0].pow(lam[0]);
  auto key = std::make_pair(lam, k);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const long size = std::accumulate(lam.begin(), lam.end(), 0L);
  GaussianRational sum(0);
  for (const auto& mu : interleaved(lam)) {
    const long mu_size = std::accumulate(mu.begin(), mu.end(), 0L);
    sum += alpha[k - 1].pow(size - mu_size) * branch(mu, k - 1, alpha, memo);
  }
  memo.emplace(std::move(key), sum);
  return sum;
}

void require_same_length(const DominantWeight& lam, const SatakeParams& alpha) {
  if (lam.size() != alpha.size()) {
    throw LengthMismatch("weight has " + std::to_string(lam.size()) + " entries but " +
                         std::to_string(alpha.size()) + " Satake parameters were given");
  }
}

}  // namespace

std::vector<DominantWeight> interleaved_weights(const DominantWeight& lam) {
  std::vector<DominantWeight> out;
  for (auto& mu : interleaved(lam.entries())) out.emplace_back(std::move(mu));
  return out;
}

GaussianRational schur_bialternant(const DominantWeight& lam, const SatakeParams& alpha) {
  require_same_length(lam, alpha);
  const auto& a = alpha.alphas();
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a[i] == a[j]) throw RepeatedParameter("bialternant needs distinct Satake parameters");
    }
  }
  std::vector<std::vector<GaussianRational>> num(n, std::vector<GaussianRational>(n));
  std::vector<std::vector<GaussianRational>> vdm(n, std::vector<GaussianRational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const long shift = long(n - 1 - j);
      num[i][j] = a[i].pow(lam[j] + shift);
      vdm[i][j] = a[i].pow(shift);
    }
  }
  return determinant(std::move(num)) / determinant(std::move(vdm));
}

GaussianRational schur_branching(const DominantWeight& lam, const SatakeParams& alpha) {
  require_same_length(lam, alpha);
  if (lam.size() == 0) return GaussianRational(1);
  // Central shift to a partition: s_lam = (prod alpha)^m s_{lam - m}.
  const long m = lam.entries().back();
  std::vector<long> shifted = lam.entries();
  for (auto& x : shifted) x -= m;
  GaussianRational det(1);
  for (const auto& x : alpha.alphas()) det *= x;
  Memo memo;
  return det.pow(m) * branch(shifted, shifted.size(), alpha.alphas(), memo);
}

namespace {

mpq_class half_delta_exponent(const DominantWeight& lam, int n) {
  // delta_B(varpi^lam)^{1/2} = q^{-sum lam_i (n - 2i + 1) / 2}, i 1-based.
  mpq_class e = 0;
  for (std::size_t i = 0; i < lam.size(); ++i) e -= mpq_class(lam[i] * (n - 2 * long(i + 1) + 1), 2);
  e.canonicalize();
  return e;
}

}  // namespace

HalfPowerValue shintani_value(const DominantWeight& lam, const SatakeParams& alpha, int n) {
  if (int(lam.size()) != n || int(alpha.size()) != n) {
    throw LengthMismatch("shintani_value needs len(lam) = len(alpha) = n");
  }
  return {half_delta_exponent(lam, n), schur_branching(lam, alpha)};
}

bool verify_shintani_recursion(const DominantWeight& lam, const SatakeParams& alpha) {
  if (lam.size() != alpha.size() + 1) {
    throw LengthMismatch("recursion check needs len(lam) = len(alpha) + 1");
  }
  const int n = int(alpha.size());
  std::vector<GaussianRational> extended = alpha.alphas();
  extended.emplace_back(1);
  const SatakeParams big(extended);

  // Left: W_{n+1}(varpi^lam) at Satake parameters (alpha, 1). The Schur part
  // comes from the bialternant when possible so the two sides use
  // independent evaluators.
  HalfPowerValue lhs = shintani_value(lam, big, n + 1);
  bool distinct = true;
  for (std::size_t i = 0; i < extended.size() && distinct; ++i) {
    for (std::size_t j = i + 1; j < extended.size(); ++j) distinct &= !(extended[i] == extended[j]);
  }
  if (distinct) lhs.value = schur_bialternant(lam, big);

  // Right: delta_{n+1}^{1/2}(lam) * sum_mu delta_n^{-1/2}(mu) W_n(varpi^mu).
  HalfPowerValue sum{0, GaussianRational(0)};
  for (const auto& mu : interleaved_weights(lam)) {
    const HalfPowerValue w = shintani_value(mu, alpha, n);
    sum = sum + HalfPowerValue{-w.q_exponent, GaussianRational(1)} * w;
  }
  const HalfPowerValue rhs = HalfPowerValue{half_delta_exponent(lam, n + 1), GaussianRational(1)} * sum;
  return lhs == rhs;
}

}  // namespace whittaker
