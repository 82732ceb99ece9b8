#pragma once

// Combinatorial Laplacian (Delta b)(i) = sum_{j ~ i} (b(i) - b(j)), Rayleigh
// quotients, and Dirichlet ground states on vertex subsets. Edges to vertices
// outside the graph (external degree) behave like neighbours where b = 0.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "veech/error.hpp"
#include "veech/graph/finite_graph.hpp"
#include "veech/quadfield.hpp"

namespace veech {

template <class T>
std::vector<T> laplacian_apply(const FiniteGraph& G, const std::vector<T>& b) {
  if (b.size() != G.size()) throw domain_error("vertex function has the wrong length");
  std::vector<T> out(G.size());
  for (std::uint32_t i = 0; i < G.size(); ++i) {
    T acc = b[i] * T(static_cast<long>(G.external_degree(i)));
    for (auto j : G.neighbors(i)) acc += b[i] - b[j];
    out[i] = acc;
  }
  return out;
}

template <class T>
T inner(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw domain_error("inner product of mismatched vectors");
  T acc = T(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// ||grad b||^2: sum over edges of (b(i) - b(j))^2, plus b(i)^2 per external edge.
template <class T>
T quadratic_form(const FiniteGraph& G, const std::vector<T>& b) {
  if (b.size() != G.size()) throw domain_error("vertex function has the wrong length");
  T acc = T(0);
  for (std::uint32_t i = 0; i < G.size(); ++i) {
    acc += b[i] * b[i] * T(static_cast<long>(G.external_degree(i)));
    for (auto j : G.neighbors(i))
      if (i < j) acc += (b[i] - b[j]) * (b[i] - b[j]);
  }
  return acc;
}

inline double rayleigh(const FiniteGraph& G, const std::vector<double>& b) {
  const double n2 = inner(b, b);
  if (!(n2 > 0.0)) throw domain_error("Rayleigh quotient of the zero function");
  return quadratic_form(G, b) / n2;
}

inline Rational rayleigh(const FiniteGraph& G, const std::vector<Rational>& b) {
  const Rational n2 = inner(b, b);
  if (sgn(n2) == 0) throw domain_error("Rayleigh quotient of the zero function");
  return quadratic_form(G, b) / n2;
}

struct DirichletResult {
  double mu0 = 0.0;
  double residual = 0.0;  // ||L v - mu0 v|| for the returned unit vector
  std::vector<double> ground_state;  // on the support, in support order
  std::string method;
};

struct DirichletOptions {
  std::size_t dense_limit = 1500;
  double tolerance = 1e-10;
  std::size_t max_iterations = 3000;
  std::uint64_t seed = 1;
};

namespace detail {

// Lanczos with full reorthogonalisation for the smallest eigenvalue of a
// symmetric positive semidefinite sparse matrix.
inline DirichletResult lanczos_smallest(const Eigen::SparseMatrix<double>& L, const DirichletOptions& opt) {
  const Eigen::Index n = L.rows();
  const Eigen::Index m_max = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(opt.max_iterations));
  Eigen::MatrixXd V(n, m_max + 1);
  std::vector<double> alpha, beta;
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = gauss(rng);
  V.col(0) = v.normalized();

  DirichletResult res;
  res.method = "lanczos";
  double last_residual = INFINITY;
  for (Eigen::Index j = 0; j < m_max; ++j) {
    Eigen::VectorXd w = L * V.col(j);
    alpha.push_back(V.col(j).dot(w));
    w -= alpha.back() * V.col(j);
    if (j > 0) w -= beta.back() * V.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    const double b = w.norm();

    const Eigen::Index m = j + 1;
    // Ritz values are only extracted every few steps; the tridiagonal solve
    // would otherwise dominate.
    if (m % 8 != 0 && b >= 1e-14 && m != n && m != m_max) {
      beta.push_back(b);
      V.col(j + 1) = w / b;
      continue;
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const double theta = es.eigenvalues()[0];
    const double ritz_residual = std::abs(b * es.eigenvectors()(m - 1, 0));
    last_residual = ritz_residual;
    if (ritz_residual < opt.tolerance || b < 1e-14 || m == n) {
      Eigen::VectorXd y = V.leftCols(m) * es.eigenvectors().col(0);
      y.normalize();
      res.mu0 = theta;
      res.residual = (L * y - theta * y).norm();
      res.ground_state.assign(y.data(), y.data() + n);
      if (res.residual > 100 * opt.tolerance + 1e-9)
        throw convergence_error("Lanczos Ritz vector residual too large", res.residual);
      return res;
    }
    beta.push_back(b);
    V.col(j + 1) = w / b;
  }
  throw convergence_error("Lanczos did not converge in " + std::to_string(m_max) + " steps", last_residual);
}

}  // namespace detail

// Smallest eigenvalue of the Laplacian restricted to functions vanishing
// outside `support`: the minimum Rayleigh quotient over that space.
inline DirichletResult dirichlet_mu0(const FiniteGraph& G, const std::vector<std::uint32_t>& support,
                                     const DirichletOptions& opt = {}) {
  if (support.empty()) throw domain_error("empty support");
  std::vector<std::int64_t> pos(G.size(), -1);
  for (std::size_t k = 0; k < support.size(); ++k) {
    const auto v = support[k];
    if (v >= G.size()) throw domain_error("support vertex out of range");
    if (pos[v] >= 0) throw domain_error("repeated support vertex");
    pos[v] = static_cast<std::int64_t>(k);
  }
  const auto n = static_cast<Eigen::Index>(support.size());
  std::vector<Eigen::Triplet<double>> entries;
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto v = support[static_cast<std::size_t>(k)];
    entries.emplace_back(k, k, static_cast<double>(G.degree(v)));
    for (auto u : G.neighbors(v))
      if (pos[u] >= 0) entries.emplace_back(k, static_cast<Eigen::Index>(pos[u]), -1.0);
  }
  Eigen::SparseMatrix<double> L(n, n);
  L.setFromTriplets(entries.begin(), entries.end());

  if (static_cast<std::size_t>(n) <= opt.dense_limit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(L)};
    if (es.info() != Eigen::Success) throw convergence_error("dense eigensolver failed", INFINITY);
    DirichletResult res;
    res.method = "dense";
    res.mu0 = es.eigenvalues()[0];
    const Eigen::VectorXd y = es.eigenvectors().col(0);
    res.residual = (L * y - res.mu0 * y).norm();
    res.ground_state.assign(y.data(), y.data() + n);
    return res;
  }
  return detail::lanczos_smallest(L, opt);
}

struct SandwichReport {
  double cheeger;
  double k;
  double mu0;
  double lower;  // c^2 / (2k)
  double upper;  // k c
  bool lower_holds;
  bool upper_holds;
  bool holds() const { return lower_holds && upper_holds; }
};

// c^2/(2k) <= mu0 <= k c. Which side is meaningful depends on how mu0 was
// obtained; both are reported, the caller decides which to require.
inline SandwichReport cheeger_sandwich_check(double cheeger, double k, double mu0, double slack = 1e-9) {
  SandwichReport r{cheeger, k, mu0, cheeger * cheeger / (2 * k), k * cheeger, false, false};
  r.lower_holds = r.lower <= mu0 + slack;
  r.upper_holds = mu0 <= r.upper + slack;
  return r;
}

}  // namespace veech
