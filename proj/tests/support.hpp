#pragma once

// Shared generators for the property tests.

#include <cstdint>
#include <optional>
#include <random>

#include "sbill/engine.hpp"

namespace sbill::testing {

using Rng = std::mt19937_64;

// p/q with q odd in [3, max_den], p in [1, q-1]; never dyadic, never 0.
inline Rat odd_rat(Rng& rng, std::int64_t max_den = 999) {
  std::uniform_int_distribution<std::int64_t> dq(1, (max_den - 1) / 2);
  const std::int64_t q = 2 * dq(rng) + 1;
  std::uniform_int_distribution<std::int64_t> dp(1, q - 1);
  return Rat(dp(rng), q);
}

inline Rat any_rat(Rng& rng, std::int64_t span = 20, std::int64_t max_den = 50) {
  std::uniform_int_distribution<std::int64_t> dq(1, max_den);
  const std::int64_t q = dq(rng);
  std::uniform_int_distribution<std::int64_t> dp(-span * q, span * q);
  return Rat(dp(rng), q);
}

// Random phase pair with both points off the vertices and on non-parallel edges.
inline PhasePair random_pair(const Billiard& B, Rng& rng, Side s = Side::Minus,
                             std::int64_t max_den = 999) {
  const auto& T = B.table();
  std::uniform_int_distribution<int> di(0, static_cast<int>(T.size(s)) - 1);
  std::uniform_int_distribution<int> dj(0, static_cast<int>(T.size(other(s))) - 1);
  for (;;) {
    const int i = di(rng), j = dj(rng);
    if (B.chord_sign(s, i, j) == 0) continue;
    return {{{s, i}, odd_rat(rng, max_den)}, {{other(s), j}, odd_rat(rng, max_den)}};
  }
}

// Random pair in the phase space (one forward step is Ok).
inline PhasePair random_ok_pair(const Billiard& B, Rng& rng, Side s = Side::Minus) {
  for (;;) {
    auto p = random_pair(B, rng, s);
    if (B.step(p).ok() && B.step_back(p).ok()) return p;
  }
}

// Invariant area |det(e_x, e_y)| dt du of the rectangle [t, t+h] x [u, u+h]
// at p and of its image under one step. nullopt when the corners (and the
// midpoint of the first side) do not all take one affine branch.
inline std::optional<std::pair<Rat, Rat>> rectangle_measures(const Billiard& B, const PhasePair& p,
                                                             const Rat& h) {
  const auto& T = B.table();
  if (p.x.t + h >= Rat(1) || p.y.t + h >= Rat(1)) return std::nullopt;
  auto image = [&](const Rat& dt, const Rat& du) -> std::optional<std::pair<Rat, Rat>> {
    const PhasePair q{{p.x.edge, p.x.t + dt}, {p.y.edge, p.y.t + du}};
    const auto o = B.step(q);
    if (!o.ok()) return std::nullopt;
    return std::pair{o.next.x.t, o.next.y.t};
  };
  const auto o = B.step(p);
  if (!o.ok()) return std::nullopt;
  const EdgeRef k = o.next.y.edge;
  const auto c00 = image(Rat(0), Rat(0)), c10 = image(h, Rat(0)), c01 = image(Rat(0), h),
             c11 = image(h, h), mid = image(h / Rat(2), Rat(0));
  for (const auto* c : {&c00, &c10, &c01, &c11, &mid})
    if (!*c) return std::nullopt;
  for (const Rat& t : {p.x.t, p.x.t + h, p.x.t + h / Rat(2)}) {
    const auto q = B.step({{p.x.edge, t}, p.y});
    if (q.next.y.edge != k) return std::nullopt;
  }
  if (c11->first - c10->first != c01->first - c00->first ||
      c11->second - c10->second != c01->second - c00->second ||
      mid->second + mid->second != c00->second + c10->second)
    return std::nullopt;
  const Rat du1 = c10->first - c00->first, dz1 = c10->second - c00->second;
  const Rat du2 = c01->first - c00->first, dz2 = c01->second - c00->second;
  const Rat w0 = abs(cross(T.edge_vec(p.x.edge), T.edge_vec(p.y.edge)));
  const Rat w1 = abs(cross(T.edge_vec(p.y.edge), T.edge_vec(k)));
  return std::pair{w0 * h * h, w1 * abs(du1 * dz2 - dz1 * du2)};
}

}  // namespace sbill::testing
