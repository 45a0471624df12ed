#pragma once

// Classical fixed-step fourth-order Runge-Kutta for any state type that
// forms a vector space under `+` and scalar `*`.

namespace imagunit {

template <class State, class Rhs>
State rk4_step(const State& y, double t, double dt, Rhs&& rhs) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k1);
  const State k3 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k2);
  const State k4 = rhs(t + dt, y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace imagunit
