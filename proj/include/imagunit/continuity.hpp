#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "imagunit/errors.hpp"
#include "imagunit/grid.hpp"

namespace imagunit {

/// One named term of a continuity budget, kept pointwise.
struct BudgetTerm {
  std::string name;
  RealField values;
  double integral;
};

/// Pointwise continuity budget: every term separately plus the residual of
/// (time derivative) + (divergence) − (sources).
struct ContinuityReport {
  std::vector<BudgetTerm> terms;
  RealField residual;
  double max_residual;

  const BudgetTerm& term(std::string_view name) const {
    auto it = std::find_if(terms.begin(), terms.end(), [&](const BudgetTerm& t) { return t.name == name; });
    if (it == terms.end()) throw LookupError("ContinuityReport: no term named " + std::string(name));
    return *it;
  }
  double integral(std::string_view name) const { return term(name).integral; }
};

inline BudgetTerm make_term(std::string name, RealField values) {
  const double integral = integrate(values);
  return {std::move(name), std::move(values), integral};
}

/// How the divergence of a current is evaluated.
///  Grid: central difference of the sampled current.
///  ProductRule: expanded analytically from the supplied first and second
///  spatial derivatives of the wavefunction.
enum class Divergence { Grid, ProductRule };

/// A field with its first and second x-derivatives.
template <class T>
struct Jet {
  Field<T> value;
  Field<T> dx;
  Field<T> dxx;
};

using ComplexJet = Jet<Complex>;
using QuatJet = Jet<Quaternion>;

/// Derivatives from the grid stencils.
template <class T>
Jet<T> grid_jet(const Field<T>& f) {
  return {f, grad(f), laplace(f)};
}

/// Samples an analytic function and its derivatives.
template <class T, class F, class Fx, class Fxx>
Jet<T> analytic_jet(const Grid1D& g, F&& f, Fx&& fx, Fxx&& fxx) {
  return {Field<T>::generate(g, f), Field<T>::generate(g, fx), Field<T>::generate(g, fxx)};
}

}  // namespace imagunit
