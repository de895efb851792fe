#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "midpoint_lab/core/parallel.hpp"
#include "midpoint_lab/core/random.hpp"
#include "midpoint_lab/verify/certify.hpp"

namespace mlab {

struct SearchConfig {
  std::size_t m = 4;
  std::size_t restarts = 100;
  std::uint64_t seed = 7;
  double eps_target = 0.1;      // required excess of every point
  std::size_t max_iters = 400;
  double hinge_weight = 10;
  double accept_residual = 1e-12;
  unsigned threads = 0;         // 0: thread_budget()
};

struct RestartTrace {
  std::size_t restart = 0;
  std::uint64_t seed = 0;
  double residual = 0;
  std::size_t iterations = 0;
  bool certified = false;
};

struct SearchResult {
  std::vector<VecD> best_points;
  double residual = 0;
  std::size_t best_restart = 0;
  std::optional<MSetCertificate> certificate;
  std::vector<RestartTrace> trace;
  /// Best residual above 1e-3 over at least 100 restarts: numerical evidence,
  /// not a proof, that no such M-set exists.
  bool evidence_of_impossibility = false;
};

namespace detail {

struct Residual {
  VecD r;
  MatrixD J;
  double cost = 0;
};

// Residuals [gauge(mid_ij) − 1] over pairs, then sqrt(w)·max(0, 1 + ε − gauge(x_i)).
inline Residual search_residual(const NormOracle& norm, const VecD& z, std::size_t m, const SearchConfig& cfg,
                                bool with_jacobian) {
  const std::size_t d = norm.dim();
  const std::size_t pairs = m * (m - 1) / 2;
  Residual out{VecD(pairs + m), with_jacobian ? MatrixD(pairs + m, m * d) : MatrixD(0, 0), 0};
  auto point = [&](std::size_t i) {
    VecD p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = z[i * d + k];
    return p;
  };
  std::size_t row = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j, ++row) {
      const VecD mid = 0.5 * (point(i) + point(j));
      if (with_jacobian) {
        auto g = norm.gauge_with_gradient(mid);
        out.r[row] = g.value - 1;
        for (std::size_t k = 0; k < d; ++k) {
          out.J(row, i * d + k) = 0.5 * g.gradient[k];
          out.J(row, j * d + k) = 0.5 * g.gradient[k];
        }
      } else {
        out.r[row] = norm.gauge(mid) - 1;
      }
    }
  const double sw = std::sqrt(cfg.hinge_weight);
  for (std::size_t i = 0; i < m; ++i, ++row) {
    const VecD p = point(i);
    if (with_jacobian) {
      auto g = norm.gauge_with_gradient(p);
      const double h = 1 + cfg.eps_target - g.value;
      if (h > 0) {
        out.r[row] = sw * h;
        for (std::size_t k = 0; k < d; ++k) out.J(row, i * d + k) = -sw * g.gradient[k];
      }
    } else {
      out.r[row] = sw * std::max(0.0, 1 + cfg.eps_target - norm.gauge(p));
    }
  }
  out.cost = dot(out.r, out.r);
  return out;
}

struct RestartOutcome {
  VecD z;
  double cost = 0;
  std::size_t iterations = 0;
};

// Levenberg–Marquardt on the penalised residual.
inline RestartOutcome levenberg_marquardt(const NormOracle& norm, VecD z, std::size_t m, const SearchConfig& cfg) {
  const std::size_t n = z.dim();
  auto cur = search_residual(norm, z, m, cfg, true);
  double mu = 1e-3;
  std::size_t it = 0;
  for (; it < cfg.max_iters && cur.cost > 1e-30; ++it) {
    MatrixD A = cur.J.transposed() * cur.J;
    VecD g = cur.J.transposed() * cur.r;
    bool improved = false;
    while (mu < 1e12) {
      MatrixD B = A;
      for (std::size_t k = 0; k < n; ++k) B(k, k) += mu * (1 + A(k, k));
      auto sol = solve_linear(B, VecD(-g), 1e-15);
      if (sol.singular) {
        mu *= 4;
        continue;
      }
      VecD trial = z + sol.x;
      auto next = search_residual(norm, trial, m, cfg, false);
      if (next.cost < cur.cost) {
        z = std::move(trial);
        cur = search_residual(norm, z, m, cfg, true);
        mu = std::max(mu / 3, 1e-12);
        improved = true;
        break;
      }
      mu *= 4;
    }
    if (!improved) break;
  }
  return {std::move(z), cur.cost, it};
}

}  // namespace detail

/// Multi-restart search for an m-point M-set with excess >= eps_target.
///
/// Each restart draws points at gauge radius 1.5–2.5 from its own derived seed
/// and runs Levenberg–Marquardt on the penalised residual. Restarts run in
/// parallel; the winner is the smallest (residual, restart index), so the
/// outcome does not depend on scheduling.
inline SearchResult numeric_search(const NormOracle& norm, const SearchConfig& cfg) {
  if (cfg.m < 2) throw std::invalid_argument("numeric_search: m must be >= 2");
  if (cfg.restarts < 1) throw std::invalid_argument("numeric_search: need at least one restart");
  if (!(cfg.eps_target >= ToleranceBudget{}.strict_margin))
    throw std::invalid_argument("numeric_search: eps_target below the strict margin");
  const std::size_t d = norm.dim();
  std::vector<detail::RestartOutcome> outcomes(cfg.restarts);
  std::vector<RestartTrace> trace(cfg.restarts);
  std::vector<std::optional<MSetCertificate>> certs(cfg.restarts);
  parallel_for(
      cfg.restarts,
      [&](std::size_t k) {
        const std::uint64_t s = Rng::derive(cfg.seed, k);
        Rng rng(s);
        VecD z(cfg.m * d);
        for (std::size_t i = 0; i < cfg.m; ++i) {
          VecD dir = rng.on_sphere(d);
          dir = dir * (rng.uniform(1.5, 2.5) / norm.gauge(dir));
          for (std::size_t j = 0; j < d; ++j) z[i * d + j] = dir[j];
        }
        outcomes[k] = detail::levenberg_marquardt(norm, std::move(z), cfg.m, cfg);
        trace[k] = {k, s, outcomes[k].cost, outcomes[k].iterations, false};
        if (outcomes[k].cost < cfg.accept_residual) {
          std::vector<VecD> pts;
          for (std::size_t i = 0; i < cfg.m; ++i) {
            VecD p(d);
            for (std::size_t j = 0; j < d; ++j) p[j] = outcomes[k].z[i * d + j];
            pts.push_back(std::move(p));
          }
          auto cert = certify_mset_float(norm, pts);
          trace[k].certified = cert.certified();
          if (cert.certified()) certs[k] = std::move(cert);
        }
      },
      cfg.threads ? cfg.threads : thread_budget());

  SearchResult res;
  res.trace = std::move(trace);
  std::size_t best = 0;
  for (std::size_t k = 1; k < cfg.restarts; ++k)
    if (outcomes[k].cost < outcomes[best].cost) best = k;
  // Prefer a certified restart when one exists.
  for (std::size_t k = 0; k < cfg.restarts; ++k)
    if (certs[k] && (!certs[best] || outcomes[k].cost < outcomes[best].cost)) best = k;
  res.best_restart = best;
  res.residual = outcomes[best].cost;
  for (std::size_t i = 0; i < cfg.m; ++i) {
    VecD p(d);
    for (std::size_t j = 0; j < d; ++j) p[j] = outcomes[best].z[i * d + j];
    res.best_points.push_back(std::move(p));
  }
  res.certificate = certs[best];
  res.evidence_of_impossibility = !res.certificate && cfg.restarts >= 100 && res.residual > 1e-3;
  return res;
}

}  // namespace mlab
