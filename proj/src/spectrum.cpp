#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "expander/errors.hpp"
#include "expander/metrics.hpp"
#include "expander/random.hpp"

namespace expander {

namespace {

Spectrum finish(double lambda2, double lambda_min) {
  Spectrum s;
  s.lambda2 = lambda2;
  s.lambda_min = lambda_min;
  s.rho_star = std::max(std::abs(lambda2), std::abs(lambda_min));
  s.gap = 1.0 - lambda2;
  return s;
}

Spectrum dense_spectrum(const Graph& g, const Eigen::VectorXd& inv_sqrt_deg) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd walk = Eigen::MatrixXd::Zero(n, n);
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    for (Vertex v : g.neighbors(u)) walk(u, v) = inv_sqrt_deg[u] * inv_sqrt_deg[v];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(walk, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");
  const auto& ev = solver.eigenvalues();  // ascending
  return finish(ev[n - 2], ev[0]);
}

// Lanczos with full reorthogonalization on the complement of the principal
// eigenvector sqrt(deg). Both ends of the deflated spectrum are tracked; the
// run stops once each extreme Ritz value has residual below the tolerance.
Spectrum lanczos_spectrum(const Graph& g, const Eigen::VectorXd& inv_sqrt_deg,
                          const SpectrumOptions& options) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::VectorXd principal = inv_sqrt_deg.cwiseInverse();
  principal.normalize();

  auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
      double acc = 0.0;
      for (Vertex v : g.neighbors(u)) acc += inv_sqrt_deg[v] * x[v];
      y[u] = inv_sqrt_deg[u] * acc;
    }
  };

  const auto max_steps = static_cast<Eigen::Index>(
      std::min<std::size_t>(options.max_iterations, static_cast<std::size_t>(n - 1)));
  Eigen::MatrixXd basis(n, std::min<Eigen::Index>(max_steps, 64));
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples basis j and j + 1

  Rng rng(options.seed);
  Eigen::VectorXd q(n);
  for (Eigen::Index i = 0; i < n; ++i) q[i] = rng.uniform() - 0.5;
  q -= principal.dot(q) * principal;
  q.normalize();

  Eigen::VectorXd w(n);
  // Convergence checks get sparser as the basis grows: each one solves the
  // whole tridiagonal problem.
  Eigen::Index next_check = 8;
  for (Eigen::Index j = 0; j < max_steps; ++j) {
    if (j >= basis.cols()) basis.conservativeResize(Eigen::NoChange, std::min(max_steps, 2 * j));
    basis.col(j) = q;
    apply(q, w);
    alpha.push_back(q.dot(w));
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      const auto active = basis.leftCols(j + 1);
      w -= active * (active.transpose() * w);
      w -= principal.dot(w) * principal;
    }
    const double b = w.norm();
    const auto k = j + 1;
    const bool exhausted = b < 1e-12 || k == max_steps;
    if (k >= next_check || exhausted) {
      next_check = k + std::max<Eigen::Index>(8, k / 4);
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
      Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), k - 1);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      if (tri.info() != Eigen::Success) throw ConvergenceError("tridiagonal eigensolver failed");
      const auto& theta = tri.eigenvalues();
      const auto& s = tri.eigenvectors();
      const double res_low = std::abs(b * s(k - 1, 0));
      const double res_high = std::abs(b * s(k - 1, k - 1));
      const bool invariant = b < 1e-12;
      if (invariant || (res_low < options.tolerance && res_high < options.tolerance)) {
        return finish(theta[k - 1], theta[0]);
      }
      if (k == max_steps) break;
    }
    beta.push_back(b);
    q = w / b;
  }
  throw ConvergenceError("Lanczos did not reach tolerance " + std::to_string(options.tolerance) +
                         " within " + std::to_string(max_steps) + " steps");
}

}  // namespace

Spectrum spectrum(const Graph& g, const SpectrumOptions& options) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw InvalidInput("spectrum needs n >= 2");
  if (!is_connected(g)) throw InvalidInput("spectrum needs a connected graph");
  Eigen::VectorXd inv_sqrt_deg(static_cast<Eigen::Index>(n));
  for (Vertex v = 0; v < n; ++v) inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
  // n = 2 leaves a one-dimensional complement; the dense path covers it.
  if (n <= std::max<std::size_t>(options.dense_limit, 2)) return dense_spectrum(g, inv_sqrt_deg);
  return lanczos_spectrum(g, inv_sqrt_deg, options);
}

}  // namespace expander
