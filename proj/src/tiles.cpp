#include "sbill/tiles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "sbill/error.hpp"

namespace sbill {

namespace {

EdgeRef as_side(EdgeRef e, Side s) {
  e.table = s;
  return e;
}

std::pair<Rat, Rat> image(const Affine1& f, const Rat& lo, const Rat& hi) {
  Rat l = f(lo), h = f(hi);
  if (h < l) std::swap(l, h);
  return {l, h};
}

// One coordinate chain of a tile: the surviving initial interval and the
// affine map carrying it to the current edge.
struct Chain {
  EdgeRef edge0;
  Rat lo0, hi0;
  Affine1 f;
  EdgeRef cur;
  std::pair<Rat, Rat> current() const { return image(f, lo0, hi0); }
};

}  // namespace

bool Tile::contains(const PhasePair& p) const {
  auto in = [](const EdgeInterval& I, const EdgePoint& q) {
    if (I.edge != q.edge) return false;
    return I.degenerate() ? q.t == I.lo : I.contains_open(q.t);
  };
  return in(x, p.x) && in(y, p.y);
}

Tile tile_of(const Billiard& B, const PhasePair& seed, const TileOptions& opt) {
  Stop stop = Stop::Ok;
  const auto n = B.period(seed, opt.budget, &stop);
  if (!n) {
    if (stop == Stop::Budget) throw Error(Errc::Budget, "no return within the step budget");
    throw Error(Errc::SeedHitsVertex, std::string("seed orbit stops: ") + stop_name(stop));
  }
  const TablePair& T = B.table();
  std::vector<EdgePoint> pts;
  {
    PhasePair cur = seed;
    pts.push_back(cur.x);
    for (std::size_t k = 1; k < *n; ++k) {
      cur = B.step(cur).next;
      pts.push_back(cur.x);
    }
  }
  auto pt = [&](std::size_t k) -> const EdgePoint& { return pts[k % *n]; };

  Tile tile;
  tile.seed = seed;
  tile.period = *n;
  for (std::size_t p = 1; p <= *n; ++p) {
    if (*n % p) continue;
    bool ok = true;
    for (std::size_t k = 0; k < *n && ok; ++k) ok = pt(k).edge == pt(k + p).edge;
    if (ok) {
      tile.symbolic_period = p;
      break;
    }
  }

  Chain ch[2];
  for (int c = 0; c < 2; ++c) {
    ch[c].edge0 = ch[c].cur = pt(c).edge;
    ch[c].lo0 = Rat(0);
    ch[c].hi0 = Rat(1);
  }
  // Advances the chain sitting at x_k by one of its steps.
  auto advance = [&](std::size_t k, bool shrink) {
    Chain& c = ch[k % 2];
    const auto [lo, hi] = c.current();
    const Projection pr = B.project(c.cur, lo, hi, pt(k + 1).edge.index);
    const Rat& t = pt(k).t;
    const Piece* hit = nullptr;
    for (const auto& pc : pr.pieces)
      if (pc.lo < t && t < pc.hi) hit = &pc;
    if (!hit) throw std::logic_error("tile chain lost its orbit point");
    if (shrink && (lo < hit->lo || hit->hi < hi)) {
      const Affine1 inv{Rat(1) / c.f.a, -c.f.b / c.f.a};
      auto [l0, h0] = image(inv, max(lo, hit->lo), min(hi, hit->hi));
      c.lo0 = std::move(l0);
      c.hi0 = std::move(h0);
    }
    c.f = {hit->a * c.f.a, hit->a * c.f.b + hit->b};
    c.cur = {c.cur.table, hit->target};
  };

  bool stable[2] = {false, false};
  bool expanding[2] = {false, false};
  std::size_t periods = 0;
  while (!(stable[0] && stable[1])) {
    if (periods++ >= opt.max_periods)
      throw Error(Errc::Budget, "tile did not stabilise");
    const Affine1 g[2] = {ch[0].f, ch[1].f};
    for (std::size_t k = 0; k < *n; ++k) advance(k, true);
    for (int c = 0; c < 2; ++c) {
      // one period as a map of the first edge to itself
      const Rat pa = ch[c].f.a / g[c].a;
      const Affine1 P{pa, ch[c].f.b - pa * g[c].b};
      const Rat slope = abs(pa);
      tile.chain_factor[c] = slope;
      const auto [l, h] = image(P, ch[c].lo0, ch[c].hi0);
      if (slope > Rat(1)) {
        expanding[c] = true;
        stable[c] = true;
      } else if (slope == Rat(1)) {
        stable[c] = l == ch[c].lo0 && h == ch[c].hi0;
      } else {
        stable[c] = ch[c].lo0 <= l && h <= ch[c].hi0;
      }
    }
  }
  for (int c = 0; c < 2; ++c) {
    EdgeInterval& I = c == 0 ? tile.x : tile.y;
    I.edge = ch[c].edge0;
    if (expanding[c]) {
      I.lo = I.hi = pt(c).t;
    } else {
      I.lo = ch[c].lo0;
      I.hi = ch[c].hi0;
    }
  }
  tile.area = tile.x.length() * tile.y.length();
  if (tile.degenerate()) return tile;

  // first return of the rectangle onto itself and the order of that map
  Affine1 f0{}, f1{};
  ch[0].f = f1;
  ch[1].f = f1;
  ch[0].lo0 = tile.x.lo;
  ch[0].hi0 = tile.x.hi;
  ch[1].lo0 = tile.y.lo;
  ch[1].hi0 = tile.y.hi;
  for (int c = 0; c < 2; ++c) ch[c].cur = ch[c].edge0;
  for (std::size_t m = 1; m <= *n; ++m) {
    advance(m - 1, false);
    const Chain& first = ch[m % 2];
    const Chain& second = ch[(m + 1) % 2];
    const bool odd = m % 2 == 1;
    if (odd && !T.single) continue;
    if (first.cur.index != tile.x.edge.index || second.cur.index != tile.y.edge.index) continue;
    const auto a = first.current();
    const auto b = second.current();
    if (a.first != tile.x.lo || a.second != tile.x.hi || b.first != tile.y.lo ||
        b.second != tile.y.hi)
      continue;
    tile.return_steps = m;
    f0 = first.f;
    f1 = second.f;
    // R(t, u) = (f0(t), f1(u)) for even m, (f0(u), f1(t)) for odd m
    auto R = [&](const std::pair<Rat, Rat>& p) -> std::pair<Rat, Rat> {
      return odd ? std::pair{f0(p.second), f1(p.first)} : std::pair{f0(p.first), f1(p.second)};
    };
    const std::vector<std::pair<Rat, Rat>> corners{
        {tile.x.lo, tile.y.lo}, {tile.x.hi, tile.y.lo}, {tile.x.lo, tile.y.hi}};
    for (int r = 1; r <= 4 && !tile.return_order; ++r) {
      bool back = true;
      for (const auto& c0 : corners) {
        auto c = c0;
        for (int i = 0; i < r; ++i) c = R(c);
        back = back && c == c0;
      }
      if (back) tile.return_order = r;
    }
    break;
  }
  return tile;
}

std::pair<EdgeInterval, EdgeInterval> image_rectangle(const Billiard& B, const Tile& t) {
  EdgeInterval z;
  z.edge = t.x.edge;
  if (t.x.degenerate()) {
    const auto q = B.cast(EdgePoint{t.x.edge, t.x.lo}, t.y.edge,
                          B.chord_sign(t.x.edge.table, t.x.edge.index, t.y.edge.index));
    if (!q) throw std::logic_error("degenerate tile has no image");
    z.edge = q->edge;
    z.lo = z.hi = q->t;
    return {t.y, z};
  }
  const Projection pr = B.project(t.x.edge, t.x.lo, t.x.hi, t.y.edge.index);
  if (pr.pieces.size() != 1) throw std::logic_error("tile splits under the map");
  const Piece& pc = pr.pieces.front();
  z.edge = {t.x.edge.table, pc.target};
  std::tie(z.lo, z.hi) = image({pc.a, pc.b}, t.x.lo, t.x.hi);
  return {t.y, z};
}

Decomposition decompose(const Billiard& B, const CriticalSet& C, const TileOptions& opt) {
  if (C.status != CStatus::Finite) throw Error(Errc::InfiniteC, "critical set is not finite");
  const TablePair& T = B.table();
  Decomposition D;
  auto cuts = [&](const EdgeRef& e) {
    std::vector<Rat> v{Rat(0)};
    for (const auto& p : C.on(e.table))
      if (p.edge.index == e.index && !p.is_vertex()) v.push_back(p.t);
    v.push_back(Rat(1));
    std::sort(v.begin(), v.end());
    return v;
  };
  const int comps = T.single ? 1 : 2;
  for (int s = 0; s < comps; ++s) {
    const Side A = static_cast<Side>(s), O = other(A);
    for (std::size_t i = 0; i < T.size(A); ++i) {
      for (std::size_t j = 0; j < T.size(O); ++j) {
        const EdgeRef ei{A, static_cast<int>(i)}, ej{O, static_cast<int>(j)};
        D.total_area = D.total_area + Rat(1);
        if (B.chord_sign(A, ei.index, ej.index) == 0) {
          D.parallel_pairs.emplace_back(ei, ej);
          D.band_area = D.band_area + Rat(1);
          continue;
        }
        const auto ct = cuts(ei), cu = cuts(ej);
        for (std::size_t a = 0; a + 1 < ct.size(); ++a) {
          for (std::size_t b = 0; b + 1 < cu.size(); ++b) {
            ++D.cells;
            const PhasePair seed{{ei, (ct[a] + ct[a + 1]) * Rat(1, 2)},
                                 {ej, (cu[b] + cu[b + 1]) * Rat(1, 2)}};
            bool known = false;
            for (const auto& t : D.tiles) known = known || t.contains(seed);
            if (known) continue;
            D.tiles.push_back(tile_of(B, seed, opt));
            D.tile_area = D.tile_area + D.tiles.back().area;
          }
        }
      }
    }
  }
  // how the map permutes the tiles
  std::vector<int> next(D.tiles.size(), -1);
  for (std::size_t k = 0; k < D.tiles.size(); ++k) {
    const Tile& t = D.tiles[k];
    PhasePair img = B.step(t.seed).next;
    auto [ix, iy] = image_rectangle(B, t);
    if (T.single) {
      img = {{as_side(img.x.edge, Side::Minus), img.x.t}, {as_side(img.y.edge, Side::Plus), img.y.t}};
      ix.edge = as_side(ix.edge, Side::Minus);
      iy.edge = as_side(iy.edge, Side::Plus);
    }
    for (std::size_t m = 0; m < D.tiles.size(); ++m) {
      if (!D.tiles[m].contains(img)) continue;
      next[k] = static_cast<int>(m);
      if (!(D.tiles[m].x == ix && D.tiles[m].y == iy)) D.maps_onto = false;
    }
    if (next[k] < 0) D.maps_onto = false;
  }
  std::vector<bool> seen(D.tiles.size(), false);
  for (std::size_t k = 0; k < D.tiles.size(); ++k) {
    if (seen[k]) continue;
    ++D.families;
    for (int m = static_cast<int>(k); m >= 0 && !seen[static_cast<std::size_t>(m)];
         m = next[static_cast<std::size_t>(m)])
      seen[static_cast<std::size_t>(m)] = true;
  }
  return D;
}

// ------------------------------------------------------------------ sampling

namespace {

Rat radical_inverse(std::uint64_t k, std::int64_t base) {
  std::int64_t num = 0, den = 1;
  while (k > 0) {
    num = num * base + static_cast<std::int64_t>(k % static_cast<std::uint64_t>(base));
    den *= base;
    k /= static_cast<std::uint64_t>(base);
  }
  return Rat(num, den);
}

}  // namespace

std::vector<PhasePair> sample_seeds(const TablePair& T, std::size_t count) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < T.size(Side::Minus); ++i)
    for (std::size_t j = 0; j < T.size(Side::Plus); ++j)
      if (!cross(T.minus.e(i), T.plus.e(j)).is_zero())
        pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  std::vector<PhasePair> out;
  if (pairs.empty()) return out;
  for (std::size_t k = 0; k < count; ++k) {
    const auto [i, j] = pairs[k % pairs.size()];
    const std::uint64_t idx = k / pairs.size() + 1;
    // squeeze into (0,1) with a prime denominator to stay off lattice points
    const auto squeeze = [](const Rat& t) { return (t * Rat(10005) + Rat(1)) / Rat(10007); };
    out.push_back({{{Side::Minus, i}, squeeze(radical_inverse(idx, 3))},
                   {{Side::Plus, j}, squeeze(radical_inverse(idx * 7 + 3, 5))}});
  }
  return out;
}

std::vector<PhasePair> shadowed_periodic_orbits(const Billiard& B,
                                                const std::vector<EdgePoint>& orbit,
                                                std::size_t max_period,
                                                std::size_t max_candidates) {
  std::vector<PhasePair> found;
  std::set<std::vector<std::pair<int, int>>> tried;
  const std::size_t L = orbit.size();
  auto chain_map = [&](std::size_t k, std::size_t p) {
    Affine1 f;
    for (std::size_t m = 0; m + 1 < p; m += 2) {
      const auto c = B.affine_step_coeffs(orbit[k + m].edge, orbit[k + m + 1].edge,
                                          orbit[k + m + 2].edge);
      f = {c.a * f.a, c.a * f.b + c.b};
    }
    return f;
  };
  for (std::size_t p = 2; p <= max_period && found.size() < max_candidates; p += 2) {
    std::size_t run = 0;
    for (std::size_t k = 0; k + p + 2 < L; ++k) {
      run = orbit[k].edge == orbit[k + p].edge ? run + 1 : 0;
      if (run < 3 * p) continue;
      run = 0;
      const std::size_t k0 = k + 1 - 2 * p;
      std::vector<std::pair<int, int>> word;
      for (std::size_t m = 0; m < p; ++m)
        word.emplace_back(static_cast<int>(orbit[k0 + m].edge.table), orbit[k0 + m].edge.index);
      std::rotate(word.begin(), std::min_element(word.begin(), word.end()), word.end());
      if (!tried.insert(word).second) continue;
      if (tried.size() > 64) return found;
      try {
        Rat fix[2];
        bool ok = true;
        for (std::size_t c = 0; c < 2 && ok; ++c) {
          const Affine1 f = chain_map(k0 + c, p);
          if (f.a == Rat(1)) {
            ok = false;
            break;
          }
          fix[c] = f.b / (Rat(1) - f.a);
          ok = Rat(0) < fix[c] && fix[c] < Rat(1);
        }
        if (!ok) continue;
        const PhasePair cand{{orbit[k0].edge, fix[0]}, {orbit[k0 + 1].edge, fix[1]}};
        const auto per = B.period(cand, p);
        if (per && p % *per == 0) {
          found.push_back(cand);
          if (found.size() >= max_candidates) break;
        }
      } catch (const Error&) {
        // word not realizable as a branch sequence
      }
    }
  }
  return found;
}

// ------------------------------------------------------------ classification

const char* label_name(Label l) {
  switch (l) {
    case Label::BP: return "BP";
    case Label::FPEvidence: return "FP_unbounded_evidence";
    case Label::IsolatedOrbitFound: return "IsolatedOrbitFound";
    case Label::NoPeriodicFoundUpTo: return "NoPeriodicFoundUpTo";
    case Label::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

// Runs every seed; collects periods and, when asked, forward orbits of the
// non-periodic ones.
SampleAudit audit_samples(const Billiard& B, std::size_t count, std::size_t steps,
                          std::vector<PhasePair>* periodic,
                          std::vector<std::vector<EdgePoint>>* open_orbits) {
  SampleAudit a;
  a.steps = steps;
  for (const auto& seed : sample_seeds(B.table(), count)) {
    ++a.samples;
    Stop stop = Stop::Ok;
    if (!open_orbits) {
      const auto n = B.period(seed, steps, &stop);
      if (n) {
        ++a.periodic;
        a.max_period = std::max(a.max_period, *n);
        if (periodic) periodic->push_back(seed);
      } else if (stop != Stop::Budget) {
        ++a.vertex_hits;
      }
      continue;
    }
    std::vector<EdgePoint> orb{seed.x};
    PhasePair cur = seed;
    bool closed = false, hit = false;
    for (std::size_t n = 1; n <= steps; ++n) {
      auto o = B.step(cur);
      if (!o.ok()) {
        hit = true;
        break;
      }
      cur = std::move(o.next);
      orb.push_back(cur.x);
      if (cur == seed) {
        closed = true;
        ++a.periodic;
        a.max_period = std::max(a.max_period, n);
        if (periodic) periodic->push_back(seed);
        break;
      }
    }
    if (hit) ++a.vertex_hits;
    if (!closed && !hit) {
      orb.push_back(cur.y);
      open_orbits->push_back(std::move(orb));
    }
  }
  return a;
}

}  // namespace

Classification classify(const Billiard& B, const ClassifyOptions& opt) {
  const TablePair& T = B.table();
  Classification out;
  const FilledSet F = filled_set(B, opt.f_points, opt.f_rounds);
  out.f_status = F.status;
  out.f_minus = F.count(Side::Minus);
  out.f_plus = F.count(Side::Plus);
  if (F.status == FStatus::Closed) {
    out.label = Label::BP;
    out.bound = 4 * out.f_minus * out.f_plus;
    out.rule = "filled set closed: periods bounded by 4|F-||F+|";
    out.audit = audit_samples(B, opt.samples, opt.sample_steps, nullptr, nullptr);
    return out;
  }
  const CriticalSet C = critical_set(B, opt.critical);
  out.c_computed = true;
  out.c_status = C.status;
  out.c_minus = C.count(Side::Minus);
  out.c_plus = C.count(Side::Plus);
  out.witnesses = C.witnesses;
  if (C.status == CStatus::Finite) {
    out.label = Label::BP;
    const std::size_t c = out.c_minus;
    out.bound = T.single ? 2 * (c * c - c) : 4 * out.c_minus * out.c_plus;
    out.rule = T.single ? "critical set finite: periods bounded by 2(|C|^2-|C|)"
                        : "critical set finite: periods bounded by 4|C-||C+|";
    out.audit = audit_samples(B, opt.samples, opt.sample_steps, nullptr, nullptr);
    return out;
  }
  if (C.status == CStatus::LimitPointsAtVertices) {
    out.label = Label::FPEvidence;
    out.rule = "critical points accumulate only at vertices: every orbit periodic";
    out.audit = audit_samples(B, opt.samples, opt.sample_steps, nullptr, nullptr);
    return out;
  }
  std::vector<PhasePair> periodic;
  std::vector<std::vector<EdgePoint>> open;
  out.audit = audit_samples(B, opt.samples, opt.sample_steps, &periodic, &open);
  std::vector<PhasePair> candidates = periodic;
  for (const auto& c : C.candidates) candidates.push_back(c.pair);
  for (const auto& orb : open) {
    if (candidates.size() > periodic.size() + 16) break;
    for (auto& c : shadowed_periodic_orbits(B, orb, 64, 2)) candidates.push_back(std::move(c));
  }
  for (const auto& seed : candidates) {
    try {
      Tile t = tile_of(B, seed, {});
      if (t.degenerate()) {
        out.label = Label::IsolatedOrbitFound;
        out.rule = "periodic orbit with a zero-area tile";
        out.isolated = std::move(t);
        return out;
      }
    } catch (const Error&) {
    }
  }
  if (out.audit.periodic == 0) {
    out.label = Label::NoPeriodicFoundUpTo;
    out.horizon = opt.sample_steps;
    out.rule = "no sampled orbit closes";
  } else {
    out.label = Label::Inconclusive;
    out.rule = "some sampled orbits periodic, no criterion applies";
  }
  return out;
}

BoundReport period_bound_report(const Billiard& B, std::size_t samples, std::size_t steps) {
  const FilledSet F = filled_set(B, 100000, 200);
  if (F.status != FStatus::Closed) throw Error(Errc::FNotClosed, "filled set does not close");
  BoundReport R;
  R.f_minus = F.count(Side::Minus);
  R.f_plus = F.count(Side::Plus);
  R.bound = 4 * R.f_minus * R.f_plus;
  R.audit.steps = steps;
  const TablePair& T = B.table();
  // cut points of every edge
  std::map<std::pair<int, int>, std::vector<Rat>> cuts;
  for (Side s : {Side::Minus, Side::Plus}) {
    for (const auto& p : F.on(s)) cuts[{static_cast<int>(s), p.edge.index}].push_back(p.t);
  }
  for (auto& [k, v] : cuts) {
    v.push_back(Rat(1));
    std::sort(v.begin(), v.end());
  }
  for (const auto& seed : sample_seeds(T, samples)) {
    ++R.audit.samples;
    Stop stop = Stop::Ok;
    const auto n = B.period(seed, steps, &stop);
    if (!n) {
      if (stop != Stop::Budget) ++R.audit.vertex_hits;
      continue;
    }
    ++R.audit.periodic;
    R.audit.max_period = std::max(R.audit.max_period, *n);
    std::vector<EdgePoint> pts;
    PhasePair cur = seed;
    for (std::size_t k = 0; k < *n; ++k) {
      pts.push_back(cur.x);
      cur = B.step(cur).next;
    }
    for (std::size_t c = 0; c < 2; ++c) {
      std::optional<Rat> rho0;
      std::map<std::tuple<int, int, std::size_t>, std::size_t> visits;
      for (std::size_t k = c; k < pts.size(); k += 2) {
        const EdgePoint& p = pts[k];
        const auto& v = cuts[{static_cast<int>(p.edge.table), p.edge.index}];
        const auto it = std::upper_bound(v.begin(), v.end(), p.t);
        const Rat& hi = *it;
        const Rat& lo = *(it - 1);
        const Rat rho = (p.t - lo) / (hi - lo);
        if (!rho0) rho0 = rho;
        else if (rho != *rho0 && rho != Rat(1) - *rho0) R.ratio_invariant = false;
        const auto key = std::tuple{static_cast<int>(T.single ? Side::Minus : p.edge.table),
                                    p.edge.index, static_cast<std::size_t>(it - v.begin())};
        R.max_segment_visits = std::max(R.max_segment_visits, ++visits[key]);
      }
    }
  }
  return R;
}

// ---------------------------------------------------------------------- json

namespace {

nlohmann::json interval_json(const EdgeInterval& I) {
  return {{"edge", std::string(side_name(I.edge.table)) + ":" + std::to_string(I.edge.index)},
          {"lo", I.lo.str()},
          {"hi", I.hi.str()}};
}

}  // namespace

nlohmann::json to_json(const Tile& t) {
  nlohmann::json j{{"seed", {{"x", format_edge_point(t.seed.x)}, {"y", format_edge_point(t.seed.y)}}},
                   {"x", interval_json(t.x)},
                   {"y", interval_json(t.y)},
                   {"period", t.period},
                   {"symbolic_period", t.symbolic_period},
                   {"area", t.area.str()},
                   {"degenerate", t.degenerate()},
                   {"chain_factor", {t.chain_factor[0].str(), t.chain_factor[1].str()}}};
  j["return_steps"] = t.return_steps ? nlohmann::json(*t.return_steps) : nlohmann::json();
  j["return_order"] = t.return_order ? nlohmann::json(*t.return_order) : nlohmann::json();
  return j;
}

nlohmann::json to_json(const Decomposition& d) {
  auto tiles = nlohmann::json::array();
  for (const auto& t : d.tiles) tiles.push_back(to_json(t));
  auto bands = nlohmann::json::array();
  for (const auto& [a, b] : d.parallel_pairs)
    bands.push_back({std::string(side_name(a.table)) + ":" + std::to_string(a.index),
                     std::string(side_name(b.table)) + ":" + std::to_string(b.index)});
  return {{"tiles", tiles},
          {"cells", d.cells},
          {"families", d.families},
          {"maps_onto", d.maps_onto},
          {"tile_area", d.tile_area.str()},
          {"band_area", d.band_area.str()},
          {"total_area", d.total_area.str()},
          {"covers", d.covers()},
          {"parallel_pairs", bands}};
}

namespace {

nlohmann::json audit_json(const SampleAudit& a) {
  return {{"samples", a.samples},
          {"periodic", a.periodic},
          {"vertex_hits", a.vertex_hits},
          {"max_period", a.max_period},
          {"steps", a.steps}};
}

}  // namespace

nlohmann::json to_json(const Classification& c) {
  nlohmann::json j{{"label", label_name(c.label)},
                   {"rule", c.rule},
                   {"filled_set", {{"status", fstatus_name(c.f_status)},
                                   {"minus", c.f_minus},
                                   {"plus", c.f_plus}}},
                   {"audit", audit_json(c.audit)}};
  j["bound"] = c.bound ? nlohmann::json(*c.bound) : nlohmann::json();
  j["critical_set"] = c.c_computed ? nlohmann::json{{"status", cstatus_name(c.c_status)},
                                                    {"minus", c.c_minus},
                                                    {"plus", c.c_plus}}
                                   : nlohmann::json();
  if (c.label == Label::NoPeriodicFoundUpTo) j["horizon"] = c.horizon;
  auto wit = nlohmann::json::array();
  for (const auto& w : c.witnesses)
    wit.push_back({{"vertex", format_edge_point(w.vertex)}, {"ratio", w.ratio.str()},
                   {"terms", w.terms.size()}});
  j["witnesses"] = wit;
  if (c.isolated) j["isolated_orbit"] = to_json(*c.isolated);
  return j;
}

nlohmann::json to_json(const BoundReport& r) {
  return {{"f_minus", r.f_minus},
          {"f_plus", r.f_plus},
          {"bound", r.bound},
          {"audit", audit_json(r.audit)},
          {"ratio_invariant", r.ratio_invariant},
          {"max_segment_visits", r.max_segment_visits}};
}

}  // namespace sbill
