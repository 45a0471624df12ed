#pragma once

// Eigenpairs of the discrete Hamiltonian −(ħ²/2m)Δ_h + V on a Dirichlet box.
// The interior points form a symmetric tridiagonal matrix that Eigen
// diagonalizes directly.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "imagunit/grid.hpp"

namespace imagunit {

struct Eigenstate {
  double energy;
  ComplexField state;  // real-valued, ∫|φ|² = 1, walls zero
};

/// Lowest `count` eigenstates of −(ħ²/2m)Δ_h + Re V on a Dirichlet grid.
/// Each state is normalized and its sign fixed so the first interior sample
/// with non-negligible magnitude is positive.
inline std::vector<Eigenstate> box_eigenstates(const RealField& potential, double hbar, double mass,
                                               std::size_t count) {
  const Grid1D& g = potential.grid();
  if (g.periodic()) throw PreconditionError("box_eigenstates: needs a Dirichlet grid");
  if (!(hbar > 0.0) || !(mass > 0.0)) throw PreconditionError("box_eigenstates: hbar and mass must be positive");
  const std::size_t m = g.size() - 2;
  if (count == 0 || count > m) throw PreconditionError("box_eigenstates: level count out of range");

  const double kin = hbar * hbar / (2.0 * mass * g.dx() * g.dx());
  Eigen::VectorXd diag(m);
  Eigen::VectorXd off(m - 1);
  for (std::size_t i = 0; i < m; ++i) diag(i) = 2.0 * kin + potential[i + 1];
  for (std::size_t i = 0; i + 1 < m; ++i) off(i) = -kin;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw ConfigurationError("box_eigenstates: tridiagonal solver failed");

  std::vector<Eigenstate> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto col = solver.eigenvectors().col(static_cast<Eigen::Index>(k));
    const double peak = col.cwiseAbs().maxCoeff();
    double sign = 1.0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > 1e-3 * peak) {
        sign = col(i) < 0 ? -1.0 : 1.0;
        break;
      }
    }
    // Interior samples only; the trapezoid weights are 1 there.
    const double scale = sign / std::sqrt(col.squaredNorm() * g.dx());
    std::vector<Complex> v(g.size(), Complex{});
    for (std::size_t i = 0; i < m; ++i) v[i + 1] = scale * col(static_cast<Eigen::Index>(i));
    out.push_back({solver.eigenvalues()(static_cast<Eigen::Index>(k)), ComplexField(g, std::move(v))});
  }
  return out;
}

/// Convenience overload for a field-free box.
inline std::vector<Eigenstate> box_eigenstates(const Grid1D& g, double hbar, double mass, std::size_t count) {
  return box_eigenstates(RealField(g, 0.0), hbar, mass, count);
}

}  // namespace imagunit
