#include "sbill/casebook.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "sbill/error.hpp"
#include "sbill/tiles.hpp"

namespace sbill {

namespace {

// P + lambda d meets the line Q + nu e.
Pt meet(const Pt& P, const Pt& d, const Pt& Q, const Pt& e) {
  const Rat den = cross(d, e);
  if (den.is_zero()) throw Error(Errc::DegenerateAtBoundary, "ray parallel to the side");
  return P + (cross(Q - P, e) / den) * d;
}

// Edge point of P at the boundary point p; nullopt if p is off the boundary.
std::optional<EdgePoint> locate(const TablePair& T, Side s, const Pt& p) {
  const Poly& P = T.poly(s);
  for (std::size_t i = 0; i < P.size(); ++i) {
    const Pt d = p - P.v(i);
    const Pt& e = P.e(i);
    if (!cross(d, e).is_zero()) continue;
    const Rat t = dot(d, e) / dot(e, e);
    if (t < Rat(0) || !(t < Rat(1))) continue;
    return EdgePoint{{s, static_cast<int>(i)}, t};
  }
  return std::nullopt;
}

bool strictly_between(const Rat& lo, const Rat& v, const Rat& hi) { return lo < v && v < hi; }

Rat pow2(int k) {
  Rat r(1);
  for (int i = 0; i < k; ++i) r = r * Rat(2);
  return r;
}

Rat chain_slope(const Billiard& B, const std::vector<EdgeRef>& e, std::size_t first,
                std::size_t last, std::size_t* reversals = nullptr) {
  Rat a(1);
  for (std::size_t k = first; k + 2 <= last; k += 2) {
    const Rat f = B.affine_step_coeffs(e[k], e[k + 1], e[k + 2]).a;
    if (reversals && f.sign() < 0) ++*reversals;
    a = a * f;
  }
  return a;
}

TablePair kite_table(const Rat& X, const Rat& Y) {
  return validate_table({{Rat(0), Rat(1)}, {Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {X, Y}},
                         std::nullopt);
}

}  // namespace

// ------------------------------------------------------------ crooked kite

KiteOrbit kite_orbit6(const Rat& X, const Rat& Y) {
  const Rat one(1);
  if (X < one || Y < one || abs(X - Y) > one)
    throw Error(Errc::BadKiteParams,
                "need X > 1, Y > 1, |X-Y| < 1; got X=" + X.str() + " Y=" + Y.str());
  // the closed region is accepted; on its boundary the construction may degenerate
  auto degenerate = [&](const std::string& why) {
    return Error(Errc::DegenerateAtBoundary, why + " (X=" + X.str() + ", Y=" + Y.str() + ")");
  };
  KiteOrbit K;
  K.X = X;
  K.Y = Y;
  // slanted sides: (1,0) + nu (X-1, Y) and (0,1) + nu (X, Y-1)
  const Pt Q2{one, Rat(0)}, E2{X - one, Y};
  const Pt Q3{Rat(0), one}, E3{X, Y - one};
  const Pt dA = E3, dB = E2;
  auto a_of = [&](const Rat& s) { return meet({s, Rat(0)}, dA, Q2, E2); };
  auto b_of = [&](const Rat& s) { return meet({s, Rat(0)}, dB, Q3, E3); };
  auto c_of = [&](const Rat& t) { return meet({Rat(0), t}, dA, Q2, E2); };
  auto d_of = [&](const Rat& t) { return meet({Rat(0), t}, dB, Q3, E3); };
  // both differences are affine in the parameter
  const Rat f0 = a_of(Rat(0)).x - b_of(Rat(0)).x, f1 = a_of(one).x - b_of(one).x;
  const Rat g0 = c_of(Rat(0)).y - d_of(Rat(0)).y, g1 = c_of(one).y - d_of(one).y;
  if (f0 == f1 || g0 == g1) throw degenerate("no unique inscribed triangle");
  K.s0 = f0 / (f0 - f1);
  K.t0 = g0 / (g0 - g1);
  if (!strictly_between(Rat(0), K.s0, one) || !strictly_between(Rat(0), K.t0, one))
    throw degenerate("inscribed triangle leaves the side");
  K.a = a_of(K.s0);
  K.b = b_of(K.s0);
  K.c = c_of(K.t0);
  K.d = d_of(K.t0);

  const TablePair T = kite_table(X, Y);
  const Billiard B(T);
  const auto x0 = locate(T, Side::Minus, {Rat(0), K.t0});
  const auto x1 = locate(T, Side::Plus, K.b);
  if (!x0 || !x1 || x0->is_vertex() || x1->is_vertex())
    throw degenerate("seed on a vertex");
  PhasePair cur{*x0, *x1};
  std::vector<EdgeRef> edges{cur.x.edge, cur.y.edge};
  for (int k = 0; k < 6; ++k) {
    K.orbit.push_back(cur);
    const auto o = B.step(cur);
    if (!o.ok()) throw degenerate(std::string("orbit stops: ") + stop_name(o.kind));
    cur = o.next;
    edges.push_back(cur.y.edge);
  }
  if (cur != K.orbit.front() || B.period(K.orbit.front(), 6) != std::optional<std::size_t>(6))
    throw degenerate("orbit is not 6-periodic");
  K.expansion_factor = abs(chain_slope(B, edges, 0, 6));
  K.contraction_factor = abs(chain_slope(B, edges, 1, 7));
  return K;
}

KiteIsolation kite_isolation_check(const KiteOrbit& K, std::size_t delta_samples,
                                   const Rat& delta, std::size_t max_steps) {
  const Billiard B(kite_table(K.X, K.Y));
  const PhasePair seed = K.orbit.front();
  KiteIsolation R;
  R.contraction_factor = K.contraction_factor;
  R.contracts = K.contraction_factor < Rat(1);
  R.delta = delta;
  R.max_steps = max_steps;

  // seeds spread over the boundary of the box of half-width delta
  for (std::size_t j = 0; j < delta_samples; ++j) {
    const Rat p = Rat(8) * delta * Rat(static_cast<std::int64_t>(j)) /
                  Rat(static_cast<std::int64_t>(delta_samples));
    const Rat w = Rat(2) * delta;
    Rat u, v;  // offsets of x0 and x1
    if (p < w) {
      u = p - delta, v = -delta;
    } else if (p < Rat(2) * w) {
      u = delta, v = p - w - delta;
    } else if (p < Rat(3) * w) {
      u = Rat(3) * w - p - delta, v = delta;
    } else {
      u = -delta, v = Rat(4) * w - p - delta;
    }
    PhasePair q = seed;
    q.x.t = q.x.t + u;
    q.y.t = q.y.t + v;
    ++R.samples;
    Stop stop = Stop::Ok;
    if (B.period(q, max_steps, &stop)) ++R.periodic;
    else if (stop != Stop::Budget) ++R.vertex_hits;
  }

  // interval return map with the even point held at (0,t0)
  PhasePair q = seed;
  q.y.t = q.y.t + delta;
  R.geometric = true;
  R.return_distances.push_back(abs(q.y.t - seed.y.t));
  for (int k = 0; k < 12; ++k) {
    for (int n = 0; n < 6; ++n) {
      const auto o = B.step(q);
      if (!o.ok()) {
        R.geometric = false;
        break;
      }
      q = o.next;
    }
    if (!R.geometric || q.x != seed.x || q.y.edge != seed.y.edge) {
      R.geometric = false;
      break;
    }
    const Rat dist = abs(q.y.t - seed.y.t);
    if (dist != R.return_distances.back() * K.contraction_factor) R.geometric = false;
    R.return_distances.push_back(dist);
  }

  const Tile t = tile_of(B, seed);
  R.tile_degenerate = t.degenerate();
  R.tile_area = t.area;
  return R;
}

// ------------------------------------------------------------ odometer

BitSeq binary(const Rat& t) {
  if (t < Rat(0) || !(t < Rat(1))) throw Error(Errc::InvalidArgument, "need 0 <= t < 1");
  const mpz_class q = t.denominator();
  mpz_class r = t.numerator();
  std::map<mpz_class, std::size_t> seen;
  std::vector<std::uint8_t> d;
  while (!seen.count(r)) {
    seen.emplace(r, d.size());
    r *= 2;
    const bool one = r >= q;
    if (one) r -= q;
    d.push_back(one ? 1 : 0);
  }
  const std::size_t start = seen.at(r);
  BitSeq b;
  b.prefix.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(start));
  b.cycle.assign(d.begin() + static_cast<std::ptrdiff_t>(start), d.end());
  return b;
}

Rat value(const BitSeq& b) {
  mpz_class p = 0;
  for (auto bit : b.prefix) p = 2 * p + bit;
  mpz_class scale = 1;
  scale <<= b.prefix.size();
  mpq_class v(p, scale);
  if (!b.cycle.empty()) {
    mpz_class c = 0;
    for (auto bit : b.cycle) c = 2 * c + bit;
    mpz_class m = 1;
    m <<= b.cycle.size();
    m -= 1;
    v += mpq_class(c, m * scale);
  }
  v.canonicalize();
  return Rat(v);
}

std::vector<std::uint8_t> digits(const BitSeq& b, std::size_t n) {
  std::vector<std::uint8_t> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < b.prefix.size()) out.push_back(b.prefix[k]);
    else if (!b.cycle.empty()) out.push_back(b.cycle[(k - b.prefix.size()) % b.cycle.size()]);
    else break;
  }
  return out;
}

BitSeq canonical(BitSeq b) {
  if (b.cycle.empty()) return b;
  const std::size_t n = b.cycle.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t k = p; k < n && ok; ++k) ok = b.cycle[k] == b.cycle[k - p];
    if (ok) {
      b.cycle.resize(p);
      break;
    }
  }
  while (!b.prefix.empty() && b.prefix.back() == b.cycle.back()) {
    b.prefix.pop_back();
    std::rotate(b.cycle.rbegin(), b.cycle.rbegin() + 1, b.cycle.rend());
  }
  return b;
}

BitSeq odometer_step(const BitSeq& b) {
  BitSeq out = b;
  for (auto& bit : out.prefix) {
    if (bit == 0) {
      bit = 1;
      return out;
    }
    bit = 0;
  }
  const auto z = std::find(b.cycle.begin(), b.cycle.end(), 0);
  if (z == b.cycle.end()) throw Error(Errc::AllOnes, "odometer undefined on (1,1,1,...)");
  // carry runs into the cycle: unroll it up to the first zero
  const std::size_t j = static_cast<std::size_t>(z - b.cycle.begin());
  for (std::size_t k = 0; k < j; ++k) out.prefix.push_back(0);
  out.prefix.push_back(1);
  std::rotate(out.cycle.begin(), out.cycle.begin() + static_cast<std::ptrdiff_t>(j + 1),
              out.cycle.end());
  return out;
}

int vnk_level(const Rat& t) {
  if (!strictly_between(Rat(0), t, Rat(1))) throw Error(Errc::InvalidArgument, "need 0 < t < 1");
  if (t.is_dyadic()) throw Error(Errc::DyadicInput, "vnk is undefined at the dyadic " + t.str());
  const Rat gap = Rat(1) - t;
  int l = 1;
  Rat h(1, 2);
  while (!(h < gap)) {
    h = h / Rat(2);
    ++l;
  }
  return l;
}

Rat vnk(const Rat& t) {
  const int l = vnk_level(t);
  const Rat lo = Rat(1) - Rat(1) / pow2(l - 1);
  const Rat hi = Rat(1) - Rat(1) / pow2(l);
  return t + Rat(1) - lo - hi;
}

// ------------------------------------------------------------ necktie

const char* square_side_name(SquareSide s) {
  switch (s) {
    case SquareSide::V0V1: return "v0v1";
    case SquareSide::V1V2: return "v1v2";
    case SquareSide::V2V3: return "v2v3";
    case SquareSide::V3V0: return "v3v0";
  }
  return "?";
}

namespace {

struct Necktie {
  TablePair T = builtin("necktie");
  Billiard B{T};
  Pt v[4] = {{Rat(2), Rat(2)}, {Rat(2), Rat(0)}, {Rat(0), Rat(0)}, {Rat(0), Rat(2)}};
  Pt w[4] = {{Rat(5), Rat(2)}, {Rat(4), Rat(2)}, {Rat(3), Rat(0)}, {Rat(5), Rat(1)}};
  int w0w1 = -1, w3w0 = -1;  // kite edge indices

  Necktie() {
    const Poly& P = T.plus;
    for (std::size_t i = 0; i < P.size(); ++i) {
      const Pt& a = P.v(i);
      const Pt& b = P.v(i + 1);
      auto is = [&](const Pt& p, const Pt& q) { return (a == p && b == q) || (a == q && b == p); };
      if (is(w[0], w[1])) w0w1 = static_cast<int>(i);
      if (is(w[3], w[0])) w3w0 = static_cast<int>(i);
    }
  }

  // 0 for w0w1, 3 for w3w0
  int kite_side(const EdgePoint& x) const {
    if (x.edge.table != Side::Plus || x.is_vertex()) return -1;
    if (x.edge.index == w0w1) return 0;
    if (x.edge.index == w3w0) return 3;
    return -1;
  }

  static int first(SquareSide s) { return static_cast<int>(s); }

  static bool allowed(int kite, SquareSide s) {
    const bool even = s == SquareSide::V0V1 || s == SquareSide::V2V3;
    return kite == 0 ? even : !even;
  }

  // the w0w1 sections are parametrized from v_i, the symmetric w3w0
  // sections from v_{i+1}
  Pt section_point(int kite, SquareSide s, const Rat& t) const {
    const int i = first(s);
    const Pt& p = v[i];
    const Pt& q = v[(i + 1) % 4];
    return kite == 0 ? p + t * (q - p) : q + t * (p - q);
  }

  std::optional<Rat> section_param(int kite, SquareSide s, const Pt& y) const {
    const int i = first(s);
    const Pt p = kite == 0 ? v[i] : v[(i + 1) % 4];
    const Pt q = kite == 0 ? v[(i + 1) % 4] : v[i];
    const Pt d = q - p;
    if (!cross(y - p, d).is_zero()) return std::nullopt;
    const Rat t = dot(y - p, d) / dot(d, d);
    if (!strictly_between(Rat(0), t, Rat(1))) return std::nullopt;
    return t;
  }
};

const Necktie& necktie() {
  static const Necktie N;
  return N;
}

constexpr SquareSide kSides[4] = {SquareSide::V0V1, SquareSide::V1V2, SquareSide::V2V3,
                                  SquareSide::V3V0};

}  // namespace

PhasePair necktie_section_pair(const EdgePoint& x, SquareSide side, const Rat& t) {
  const Necktie& N = necktie();
  const int kite = N.kite_side(x);
  if (kite < 0) throw Error(Errc::InvalidArgument, "x must lie inside w0w1 or w3w0");
  if (!Necktie::allowed(kite, side))
    throw Error(Errc::InvalidArgument,
                std::string("section ") + square_side_name(side) + " does not belong to x");
  if (!strictly_between(Rat(0), t, Rat(1))) throw Error(Errc::InvalidArgument, "need 0 < t < 1");
  const auto y = locate(N.T, Side::Minus, N.section_point(kite, side, t));
  return {x, *y};
}

std::optional<std::pair<SquareSide, Rat>> necktie_section_of(const EdgePoint& x,
                                                            const EdgePoint& y) {
  const Necktie& N = necktie();
  const int kite = N.kite_side(x);
  if (kite < 0 || y.edge.table != Side::Minus || y.is_vertex()) return std::nullopt;
  const Pt p = N.T.point(y);
  for (SquareSide s : kSides) {
    if (!Necktie::allowed(kite, s)) continue;
    if (auto t = N.section_param(kite, s, p)) return std::make_pair(s, *t);
  }
  return std::nullopt;
}

ReturnResult necktie_return_map(const EdgePoint& x, SquareSide side, const Rat& t,
                                std::size_t max_steps) {
  if (t.is_dyadic()) throw Error(Errc::DyadicSeed, "dyadic section points leave the phase space");
  const Necktie& N = necktie();
  PhasePair cur = necktie_section_pair(x, side, t);
  std::vector<EdgeRef> edges{cur.x.edge, cur.y.edge};
  ReturnResult R;
  R.level = vnk_level(t);
  for (std::size_t n = 1; n <= max_steps; ++n) {
    const auto o = N.B.step(cur);
    if (!o.ok()) throw Error(Errc::DyadicSeed, std::string("orbit stops: ") + stop_name(o.kind));
    cur = o.next;
    edges.push_back(cur.y.edge);
    if (n % 2 || cur.x != x) continue;
    const auto sec = necktie_section_of(x, cur.y);
    if (!sec || sec->first != side) continue;
    R.t_out = sec->second;
    R.steps = n;
    R.slope = chain_slope(N.B, edges, 1, n + 1, &R.reversals);
    return R;
  }
  throw Error(Errc::Budget, "no return to the section");
}

ReturnResult necktie_return_map(const EdgePoint& x, const Rat& t) {
  const int kite = necktie().kite_side(x);
  return necktie_return_map(x, kite == 3 ? SquareSide::V1V2 : SquareSide::V0V1, t);
}

NecktieScan necktie_no_period_scan(std::size_t samples, std::size_t max_steps,
                                   std::uint64_t rng_seed) {
  const Necktie& N = necktie();
  const Billiard& B = N.B;
  const TablePair& T = N.T;
  std::mt19937_64 rng(rng_seed);
  auto odd = [&]() {
    std::uniform_int_distribution<std::int64_t> dq(1, 499);
    const std::int64_t q = 2 * dq(rng) + 1;
    std::uniform_int_distribution<std::int64_t> dp(1, q - 1);
    return Rat(dp(rng), q);
  };
  NecktieScan R;
  R.samples = samples;
  R.max_steps = max_steps;
  for (std::size_t s = 0; s < samples; ++s) {
    const Side a = s % 2 ? Side::Plus : Side::Minus;
    PhasePair seed;
    for (;;) {
      std::uniform_int_distribution<int> di(0, static_cast<int>(T.size(a)) - 1);
      std::uniform_int_distribution<int> dj(0, static_cast<int>(T.size(other(a))) - 1);
      const int i = di(rng), j = dj(rng);
      if (B.chord_sign(a, i, j) == 0) continue;
      seed = {{{a, i}, odd()}, {{other(a), j}, odd()}};
      break;
    }
    // the map is injective, so a repeated state means the seed itself recurs
    PhasePair cur = seed;
    std::optional<EdgePoint> anchor;
    SquareSide anchor_side{};
    Rat anchor_t;
    std::size_t anchor_n = 0;
    std::optional<Pt> last_kite;
    bool reached = false;
    auto visit = [&](std::size_t n) {
      if (cur.y.edge.table == Side::Plus) {
        const Pt p = T.point(cur.y);
        if (last_kite) {
          const Pt m = p - *last_kite;
          ++R.kite_moves;
          if (m.y.is_zero()) ++R.horizontal_moves;
          else if (m.x.is_zero()) ++R.vertical_moves;
          else ++R.staircase_violations;
        }
        last_kite = p;
      }
      if (N.kite_side(cur.x) < 0) return;
      const auto sec = necktie_section_of(cur.x, cur.y);
      if (!sec) return;
      if (!anchor) {
        if (!reached) {
          reached = true;
          ++R.reached_section;
          R.max_steps_to_section = std::max(R.max_steps_to_section, n);
        }
        anchor = cur.x, anchor_side = sec->first, anchor_t = sec->second, anchor_n = n;
        return;
      }
      if (cur.x != *anchor || sec->first != anchor_side) return;
      ++R.returns;
      if (sec->second != vnk(anchor_t)) ++R.vnk_mismatches;
      if (n - anchor_n != 4 * static_cast<std::size_t>(vnk_level(anchor_t))) ++R.step_mismatches;
      anchor_t = sec->second, anchor_n = n;
    };
    visit(0);
    for (std::size_t n = 1; n <= max_steps; ++n) {
      const auto o = B.step(cur);
      if (!o.ok()) {
        ++R.vertex_hits;
        break;
      }
      cur = o.next;
      if (cur == seed) {
        ++R.periodic;
        break;
      }
      visit(n);
    }
  }
  return R;
}

// ------------------------------------------------------------ json

namespace {

nlohmann::json pt_json(const Pt& p) { return {p.x.str(), p.y.str()}; }

nlohmann::json bits_json(const std::vector<std::uint8_t>& v) {
  std::string s;
  for (auto b : v) s.push_back(static_cast<char>('0' + b));
  return s;
}

}  // namespace

nlohmann::json to_json(const KiteOrbit& K) {
  auto orbit = nlohmann::json::array();
  for (const auto& p : K.orbit)
    orbit.push_back({{"x", format_edge_point(p.x)}, {"y", format_edge_point(p.y)}});
  return {{"X", K.X.str()},
          {"Y", K.Y.str()},
          {"s0", K.s0.str()},
          {"t0", K.t0.str()},
          {"a", pt_json(K.a)},
          {"b", pt_json(K.b)},
          {"c", pt_json(K.c)},
          {"d", pt_json(K.d)},
          {"orbit", orbit},
          {"period", K.orbit.size()},
          {"contraction_factor", K.contraction_factor.str()},
          {"expansion_factor", K.expansion_factor.str()}};
}

nlohmann::json to_json(const KiteIsolation& R) {
  auto d = nlohmann::json::array();
  for (const auto& r : R.return_distances) d.push_back(r.str());
  return {{"contraction_factor", R.contraction_factor.str()},
          {"contracts", R.contracts},
          {"samples", R.samples},
          {"periodic", R.periodic},
          {"vertex_hits", R.vertex_hits},
          {"max_steps", R.max_steps},
          {"delta", R.delta.str()},
          {"return_distances", d},
          {"geometric", R.geometric},
          {"tile_degenerate", R.tile_degenerate},
          {"tile_area", R.tile_area.str()}};
}

nlohmann::json to_json(const BitSeq& b) {
  return {{"prefix", bits_json(b.prefix)}, {"cycle", bits_json(b.cycle)}};
}

nlohmann::json to_json(const ReturnResult& r) {
  return {{"t_out", r.t_out.str()},
          {"steps", r.steps},
          {"level", r.level},
          {"slope", r.slope.str()},
          {"reversals", r.reversals}};
}

nlohmann::json to_json(const NecktieScan& r) {
  return {{"samples", r.samples},
          {"max_steps", r.max_steps},
          {"periodic", r.periodic},
          {"vertex_hits", r.vertex_hits},
          {"reached_section", r.reached_section},
          {"max_steps_to_section", r.max_steps_to_section},
          {"returns", r.returns},
          {"vnk_mismatches", r.vnk_mismatches},
          {"step_mismatches", r.step_mismatches},
          {"kite_moves", r.kite_moves},
          {"horizontal_moves", r.horizontal_moves},
          {"vertical_moves", r.vertical_moves},
          {"staircase_violations", r.staircase_violations}};
}

}  // namespace sbill
