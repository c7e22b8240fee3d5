#pragma once

#include <array>
#include <cstddef>

namespace lakebloom::sim {

/// One classical fourth-order Runge-Kutta step of dy/dt = f(t, y).
template <std::size_t N, class F>
std::array<double, N> rk4_step(F&& f, const std::array<double, N>& y, double t, double dt) {
  auto axpy = [](const std::array<double, N>& a, double s, const std::array<double, N>& b) {
    std::array<double, N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  const std::array<double, N> k1 = f(t, y);
  const std::array<double, N> k2 = f(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
  const std::array<double, N> k3 = f(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
  const std::array<double, N> k4 = f(t + dt, axpy(y, dt, k3));
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace lakebloom::sim
