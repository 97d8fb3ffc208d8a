#include "sbill/strata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "sbill/error.hpp"

namespace sbill {

const char* fstatus_name(FStatus s) {
  return s == FStatus::Closed ? "Closed" : "BudgetExceeded";
}

const char* cstatus_name(CStatus s) {
  switch (s) {
    case CStatus::Finite: return "Finite";
    case CStatus::LimitPointsAtVertices: return "LimitPointsAtVertices";
    case CStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* origin_name(Origin o) {
  switch (o) {
    case Origin::Vertex: return "vertex";
    case Origin::EvenPoint: return "even";
    case Origin::Backtrace: return "backtrace";
    case Origin::SplitPoint: return "split";
  }
  return "?";
}

namespace {

using PointSet = std::unordered_set<EdgePoint, EdgePointHash>;

// One representative edge index per direction class of the given polygon.
std::vector<int> distinct_directions(const Poly& P) {
  std::vector<int> reps;
  for (std::size_t j = 0; j < P.size(); ++j) {
    bool seen = false;
    for (int r : reps)
      if (cross(P.e(j), P.e(static_cast<std::size_t>(r))).is_zero()) seen = true;
    if (!seen) reps.push_back(static_cast<int>(j));
  }
  return reps;
}

EdgePoint retag(EdgePoint p, Side s) {
  p.edge.table = s;
  return p;
}

}  // namespace

bool FilledSet::contains(const EdgePoint& p) const {
  const auto& v = on(p.edge.table);
  return std::binary_search(v.begin(), v.end(), p);
}

FilledSet filled_set(const Billiard& B, std::size_t max_points, std::size_t max_rounds) {
  const TablePair& T = B.table();
  FilledSet F;
  F.single = T.single;
  const int sides = T.single ? 1 : 2;
  std::map<EdgePoint, std::size_t> found[2];
  std::vector<EdgePoint> frontier[2];
  for (int s = 0; s < sides; ++s) {
    const Side side = static_cast<Side>(s);
    for (std::size_t v = 0; v < T.size(side); ++v) {
      EdgePoint p{{side, static_cast<int>(v)}, Rat(0)};
      found[s].emplace(p, 0);
      frontier[s].push_back(p);
    }
  }
  std::vector<int> dirs[2];
  for (int s = 0; s < sides; ++s)
    dirs[s] = distinct_directions(T.poly(other(static_cast<Side>(s))));

  auto total = [&] { return found[0].size() + found[1].size(); };
  F.status = FStatus::BudgetExceeded;
  while (true) {
    if (frontier[0].empty() && frontier[1].empty()) {
      F.status = FStatus::Closed;
      break;
    }
    if (F.rounds >= max_rounds || total() > max_points) break;
    ++F.rounds;
    std::vector<EdgePoint> next[2];
    for (int s = 0; s < sides; ++s) {
      for (const EdgePoint& w : frontier[s]) {
        for (int j : dirs[s]) {
          for (EdgePoint z : B.chord_ends(w, j)) {
            if (T.single) z = retag(z, Side::Minus);
            const int zs = static_cast<int>(z.edge.table);
            if (found[zs].emplace(z, F.rounds).second) next[zs].push_back(z);
          }
        }
      }
    }
    frontier[0] = std::move(next[0]);
    frontier[1] = std::move(next[1]);
  }
  for (int s = 0; s < 2; ++s) {
    const int src = T.single ? 0 : s;
    for (const auto& [p, r] : found[src]) {
      F.points[s].push_back(retag(p, static_cast<Side>(s)));
      F.round_of[s].push_back(r);
    }
  }
  return F;
}

// ---------------------------------------------------------------- critical set

std::vector<EdgePoint> CriticalSet::on(Side s) const {
  std::vector<EdgePoint> out;
  for (const auto& c : points)
    if (single || c.p.edge.table == s) out.push_back(retag(c.p, s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool CriticalSet::contains(const EdgePoint& p) const {
  for (const auto& c : points)
    if (c.p.edge.index == p.edge.index && c.p.t == p.t &&
        (single || c.p.edge.table == p.edge.table))
      return true;
  return false;
}

namespace {

// A family of orbits with fixed even point and odd points filling an open
// interval. The odd interval is the affine image u = a t + b of the
// surviving part (lo0, hi0) of the initial edge.
struct Branch {
  EdgePoint root;
  int init_edge = 0;
  Rat lo0, hi0;
  Rat a{1}, b{0};
  int edge = 0;
  EdgePoint p;
  EdgePoint p1;
  std::size_t depth = 0;
  // state when this branch was queued, for return detection
  EdgePoint sp;
  int s_edge = -1;
  Rat sa, sb;
  std::size_t sdepth = 0;
  std::size_t age = 0;

  std::pair<Rat, Rat> odd_interval() const {
    Rat u = a * lo0 + b, v = a * hi0 + b;
    if (v < u) std::swap(u, v);
    return {u, v};
  }
  void mark_start() {
    sp = p;
    s_edge = edge;
    sa = a;
    sb = b;
    sdepth = depth;
    age = 0;
  }
};

class CriticalBuilder {
 public:
  CriticalBuilder(const Billiard& B, const CriticalOptions& opt) : B_(B), T_(B.table()), opt_(opt) {
    C_.single = T_.single;
  }

  CriticalSet run() {
    const int sides = T_.single ? 1 : 2;
    for (int s = 0; s < sides; ++s) {
      const Side A = static_cast<Side>(s);
      for (std::size_t v = 0; v < T_.size(A); ++v) {
        EdgePoint root{{A, static_cast<int>(v)}, Rat(0)};
        add(root, Origin::Vertex, root, {root, root}, 0, root);
      }
    }
    for (int s = 0; s < sides; ++s) {
      const Side A = static_cast<Side>(s);
      for (std::size_t v = 0; v < T_.size(A); ++v) {
        for (std::size_t j = 0; j < T_.size(other(A)); ++j) {
          Branch br;
          br.root = {{A, static_cast<int>(v)}, Rat(0)};
          br.init_edge = static_cast<int>(j);
          br.lo0 = Rat(0);
          br.hi0 = Rat(1);
          br.edge = br.init_edge;
          br.p = br.root;
          br.mark_start();
          queue_.push_back(std::move(br));
        }
      }
    }
    while (!queue_.empty() && C_.processed < opt_.budget) {
      Branch br = std::move(queue_.front());
      queue_.pop_front();
      ++C_.branches;
      run_branch(std::move(br));
    }
    C_.queue_empty = queue_.empty();
    diagnose();
    return std::move(C_);
  }

 private:
  void add(const EdgePoint& p, Origin o, const EdgePoint& root, const PhasePair& replay,
           std::size_t steps, const EdgePoint& vertex) {
    EdgePoint key = T_.single ? retag(p, Side::Minus) : p;
    if (index_.count(key)) return;
    index_.emplace(key, C_.points.size());
    C_.points.push_back({key, o, root, replay, steps, vertex, C_.processed});
  }

  EdgePoint at(Side s, int e, const Rat& t) const { return T_.normalize({s, e}, t); }

  void run_branch(Branch br) {
    const Side A = br.root.edge.table;
    const Side Bs = other(A);
    while (true) {
      if (C_.processed >= opt_.budget) {
        queue_.push_front(std::move(br));
        return;
      }
      if (br.age >= opt_.branch_cap) {
        ++C_.runaway;
        return;
      }
      ++C_.processed;
      ++br.age;
      const auto [ulo, uhi] = br.odd_interval();
      const Rat wit = (ulo + uhi) * Rat(1, 2);
      const EdgePoint odd_wit = at(Bs, br.edge, wit);
      auto ends = B_.chord_ends(br.p, br.edge);
      std::vector<Branch> next;
      for (const EdgePoint& q : ends) {
        if (q.is_vertex()) continue;  // the even trajectory hits a vertex
        add(q, Origin::EvenPoint, br.root, {q, odd_wit}, 2 * br.depth + 1, br.root);
        const EdgePoint p1 = br.depth == 0 ? q : br.p1;
        if (B_.chord_sign(Bs, br.edge, q.edge.index) == 0) continue;
        const Projection pr = B_.project({Bs, br.edge}, ulo, uhi, q.edge.index);
        for (std::size_t k = 0; k < pr.splits.size(); ++k) {
          const Rat& s = pr.splits[k];
          const Rat c0 = (s - br.b) / br.a;
          const EdgePoint sp = at(Bs, br.edge, s);
          add(at(Bs, br.init_edge, c0), Origin::Backtrace, br.root,
              {at(Bs, br.init_edge, c0), p1}, 2 * br.depth + 1, pr.split_vertex[k]);
          add(sp, Origin::SplitPoint, br.root, {sp, q}, 1, pr.split_vertex[k]);
        }
        for (const Piece& pc : pr.pieces) {
          Branch ch = br;
          Rat l = (pc.lo - br.b) / br.a, h = (pc.hi - br.b) / br.a;
          if (h < l) std::swap(l, h);
          ch.lo0 = std::move(l);
          ch.hi0 = std::move(h);
          ch.a = pc.a * br.a;
          ch.b = pc.a * br.b + pc.b;
          ch.edge = pc.target;
          ch.p = q;
          ch.p1 = p1;
          ch.depth = br.depth + 1;
          next.push_back(std::move(ch));
        }
      }
      if (next.size() == 1 && ends.size() == 1) {
        br = std::move(next.front());
        if (returned(br)) return;
        continue;
      }
      for (Branch& ch : next) {
        ch.mark_start();
        queue_.push_back(std::move(ch));
      }
      return;
    }
  }

  // True when the branch came back to its queued state and needs no more work.
  bool returned(const Branch& br) {
    if (br.p != br.sp || br.edge != br.s_edge || br.depth == br.sdepth) return false;
    // current u = r * (start u) + c on the same edge
    const Rat r = br.a / br.sa;
    const Rat c = br.b - r * br.sb;
    Rat slo = br.sa * br.lo0 + br.sb, shi = br.sa * br.hi0 + br.sb;
    if (shi < slo) std::swap(slo, shi);
    const auto [ulo, uhi] = br.odd_interval();
    if (r == Rat(1) && c.is_zero()) return true;
    if (abs(r) < Rat(1) && slo <= ulo && uhi <= shi) {
      const Rat fix = c / (Rat(1) - r);
      const Side Bs = other(br.root.edge.table);
      C_.candidates.push_back(
          {{br.p, at(Bs, br.edge, fix)}, 2 * (br.depth - br.sdepth), abs(r)});
      return true;
    }
    return false;
  }

  // Exact geometric cascades toward vertices; decides the final status.
  void diagnose() {
    if (C_.queue_empty && C_.runaway == 0) {
      C_.status = CStatus::Finite;
      return;
    }
    C_.status = CStatus::Inconclusive;
    if (C_.runaway > 0) return;
    const std::size_t K = opt_.certificate_terms;
    // distances to the start (end = 0) or end (end = 1) vertex of each edge
    std::map<std::tuple<int, int, int>, std::vector<Rat>> dist;
    for (const auto& c : C_.points) {
      if (c.p.is_vertex()) continue;
      const int s = static_cast<int>(c.p.edge.table), e = c.p.edge.index;
      dist[{s, e, 0}].push_back(c.p.t);
      dist[{s, e, 1}].push_back(Rat(1) - c.p.t);
    }
    for (auto& [key, ds] : dist) {
      std::sort(ds.begin(), ds.end());
      const std::size_t M = std::min<std::size_t>(ds.size(), 48);
      std::unordered_set<Rat, RatHash> have(ds.begin(), ds.end());
      Certificate best;
      for (std::size_t i = 0; i + 1 < M && best.terms.size() < K; ++i) {
        for (std::size_t j = i + 1; j < M; ++j) {
          const Rat r = ds[i] / ds[j];
          std::vector<Rat> terms{ds[j], ds[i]};
          Rat cur = ds[i] * r;
          while (have.count(cur)) {
            terms.push_back(cur);
            cur = cur * r;
          }
          if (terms.size() > best.terms.size()) {
            best.terms = std::move(terms);
            best.ratio = r;
          }
        }
      }
      if (best.terms.size() < K) continue;
      // grow the cascade outward so its first term bounds the zone
      for (Rat up = best.terms.front() / best.ratio; have.count(up); up = up / best.ratio)
        best.terms.insert(best.terms.begin(), up);
      const auto [s, e, end] = key;
      const Side side = static_cast<Side>(s);
      best.edge = {side, e};
      best.vertex = T_.normalize({side, e}, Rat(end));
      C_.witnesses.push_back(std::move(best));
    }
    if (C_.witnesses.empty()) return;
    // Every point found late must sit inside a certified cascade zone.
    const std::size_t late = C_.processed / 2;
    for (const auto& c : C_.points) {
      if (c.found_at < late || c.p.is_vertex()) continue;
      bool inside = false;
      for (const auto& w : C_.witnesses) {
        if (w.edge.index != c.p.edge.index || w.edge.table != c.p.edge.table) continue;
        const Rat d = w.vertex.edge.index == w.edge.index ? c.p.t : Rat(1) - c.p.t;
        if (d <= w.terms.front()) inside = true;
      }
      if (!inside) return;
    }
    C_.status = CStatus::LimitPointsAtVertices;
  }

  const Billiard& B_;
  const TablePair& T_;
  CriticalOptions opt_;
  CriticalSet C_;
  std::deque<Branch> queue_;
  std::unordered_map<EdgePoint, std::size_t, EdgePointHash> index_;
};

}  // namespace

CriticalSet critical_set(const Billiard& B, const CriticalOptions& opt) {
  return CriticalBuilder(B, opt).run();
}

// -------------------------------------------------------------------- C-grid

GridReport c_grid(const Billiard& B, const CriticalSet& C) {
  if (C.status == CStatus::Inconclusive)
    throw Error(Errc::InconclusiveInput, "critical set is inconclusive");
  const TablePair& T = B.table();
  GridReport G;
  G.accumulation = C.witnesses;
  G.truncated = C.status != CStatus::Finite;
  const int comps = T.single ? 1 : 2;
  for (int s = 0; s < comps; ++s) {
    const Side A = static_cast<Side>(s);
    for (const auto& p : C.on(A)) G.lines[s].push_back({p, true});
    for (const auto& p : C.on(other(A))) G.lines[s].push_back({p, false});
  }
  return G;
}

// ---------------------------------------------------------- discontinuity set

Discontinuity discontinuity_depth(const Billiard& B, std::size_t d, std::size_t max_segments) {
  const TablePair& T = B.table();
  Discontinuity N;
  N.depth = d;
  std::vector<PhaseSegment> level;
  for (int s = 0; s < 2; ++s) {
    const Side A = static_cast<Side>(s);
    if (T.single && A == Side::Plus) continue;
    for (std::size_t v = 0; v < T.size(other(A)); ++v)
      for (std::size_t i = 0; i < T.size(A); ++i)
        level.push_back({false, {{other(A), static_cast<int>(v)}, Rat(0)},
                         {A, static_cast<int>(i)}, Rat(0), Rat(1), 0, false});
  }
  std::vector<PhaseSegment> all = level;
  std::unordered_set<std::string> seen;
  auto key = [](const PhaseSegment& g) {
    return std::string(g.fixed_first ? "v" : "h") + format_edge_point(g.fixed) + "|" +
           side_name(g.edge.table) + std::to_string(g.edge.index) + "|" + g.lo.str() + "|" +
           g.hi.str();
  };
  for (const auto& g : all) seen.insert(key(g));
  for (std::size_t depth = 1; depth <= d && !N.truncated; ++depth) {
    std::vector<PhaseSegment> next;
    auto push = [&](PhaseSegment g) {
      if (seen.insert(key(g)).second) next.push_back(std::move(g));
    };
    for (const PhaseSegment& g : level) {
      if (!g.fixed_first) {
        // preimage of I x {q}: {w} x I with w the far end of the chord from q
        for (const EdgePoint& w : B.chord_ends(g.fixed, g.edge.index)) {
          if (w.is_vertex()) continue;
          push({true, w, g.edge, g.lo, g.hi, depth, false});
        }
      } else {
        if (g.fixed.is_vertex()) continue;
        const Projection pr = B.project(g.edge, g.lo, g.hi, g.fixed.edge.index);
        for (const Piece& pc : pr.pieces) {
          Rat l = pc.a * pc.lo + pc.b, h = pc.a * pc.hi + pc.b;
          if (h < l) std::swap(l, h);
          push({false, g.fixed, {g.edge.table, pc.target}, l, h, depth, false});
        }
      }
      if (all.size() + next.size() > max_segments) {
        N.truncated = true;
        break;
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
    if (level.empty()) {
      N.closed = true;
      break;
    }
  }
  const std::size_t base = all.size();
  for (std::size_t k = 0; k < base; ++k) {
    PhaseSegment m = all[k];
    m.fixed_first = !m.fixed_first;
    m.mirrored = true;
    all.push_back(std::move(m));
  }
  N.segments = std::move(all);
  return N;
}

// ---------------------------------------------------------------------- json

namespace {

nlohmann::json points_json(const std::vector<EdgePoint>& v) {
  auto a = nlohmann::json::array();
  for (const auto& p : v) a.push_back(format_edge_point(p));
  return a;
}

nlohmann::json pair_json(const PhasePair& p) {
  return {{"x", format_edge_point(p.x)}, {"y", format_edge_point(p.y)}};
}

}  // namespace

nlohmann::json to_json(const FilledSet& F) {
  return {{"status", fstatus_name(F.status)},
          {"rounds", F.rounds},
          {"single", F.single},
          {"points_minus", points_json(F.on(Side::Minus))},
          {"points_plus", points_json(F.on(Side::Plus))}};
}

nlohmann::json to_json(const CriticalSet& C) {
  auto pts = nlohmann::json::array();
  for (const auto& c : C.points)
    pts.push_back({{"point", format_edge_point(c.p)},
                   {"origin", origin_name(c.origin)},
                   {"root", format_edge_point(c.root)},
                   {"replay", pair_json(c.replay)},
                   {"steps", c.steps},
                   {"vertex", format_edge_point(c.vertex)}});
  auto wit = nlohmann::json::array();
  for (const auto& w : C.witnesses) {
    auto terms = nlohmann::json::array();
    for (const auto& t : w.terms) terms.push_back(t.str());
    wit.push_back({{"vertex", format_edge_point(w.vertex)},
                   {"edge", std::string(side_name(w.edge.table)) + ":" +
                                std::to_string(w.edge.index)},
                   {"ratio", w.ratio.str()},
                   {"terms", terms}});
  }
  auto cand = nlohmann::json::array();
  for (const auto& c : C.candidates)
    cand.push_back({{"pair", pair_json(c.pair)}, {"period", c.period}, {"factor", c.factor.str()}});
  return {{"status", cstatus_name(C.status)},
          {"single", C.single},
          {"processed", C.processed},
          {"branches", C.branches},
          {"runaway", C.runaway},
          {"points_minus", points_json(C.on(Side::Minus))},
          {"points_plus", points_json(C.on(Side::Plus))},
          {"provenance", pts},
          {"witnesses", wit},
          {"isolated_candidates", cand}};
}

nlohmann::json to_json(const GridReport& G) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& lines : G.lines) {
    auto a = nlohmann::json::array();
    for (const auto& l : lines)
      a.push_back({{"at", format_edge_point(l.at)}, {"vertical", l.vertical}});
    comps.push_back(a);
  }
  return {{"components", comps}, {"truncated", G.truncated},
          {"accumulation_vertices", [&] {
             auto a = nlohmann::json::array();
             for (const auto& w : G.accumulation) a.push_back(format_edge_point(w.vertex));
             return a;
           }()}};
}

nlohmann::json to_json(const Discontinuity& N) {
  auto a = nlohmann::json::array();
  for (const auto& g : N.segments)
    a.push_back({{"fixed_first", g.fixed_first},
                 {"fixed", format_edge_point(g.fixed)},
                 {"edge", std::string(side_name(g.edge.table)) + ":" + std::to_string(g.edge.index)},
                 {"lo", g.lo.str()},
                 {"hi", g.hi.str()},
                 {"depth", g.depth},
                 {"mirrored", g.mirrored}});
  return {{"depth", N.depth}, {"truncated", N.truncated}, {"closed", N.closed}, {"segments", a}};
}

}  // namespace sbill
