#include "sbill/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sbill/error.hpp"

namespace sbill {

const char* stop_name(Stop s) {
  switch (s) {
    case Stop::Ok: return "Ok";
    case Stop::ParallelEdges: return "ParallelEdges";
    case Stop::YIsVertex: return "YIsVertex";
    case Stop::HitsVertex: return "HitsVertex";
    case Stop::NoUniqueChord: return "NoUniqueChord";
    case Stop::Budget: return "Budget";
  }
  return "?";
}

Billiard::Billiard(TablePair T) : T_(std::move(T)) {
  nb_[0] = static_cast<int>(T_.minus.size());
  nb_[1] = static_cast<int>(T_.plus.size());
  off2_ = static_cast<std::size_t>(nb_[0] * nb_[1]);
  off3_ = static_cast<std::size_t>(nb_[0] * nb_[1] * nb_[0]);
  coef_.resize(off3_ + static_cast<std::size_t>(nb_[1] * nb_[0] * nb_[1]));
  sign_.resize(2 * off2_);
  for (Side s : {Side::Minus, Side::Plus}) {
    const Poly& A = T_.poly(s);
    const Poly& B = T_.poly(other(s));
    const int n = static_cast<int>(A.size());
    const int m = static_cast<int>(B.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        const Pt& d = B.e(j);
        sign_[idx2(s, i, j)] = cross(A.e(i), d).sign();
        for (int k = 0; k < n; ++k) {
          Coef& c = coef_[coef_index(s, i, j, k)];
          const Rat Dk = cross(A.e(k), d);
          if (Dk.is_zero()) continue;
          // x = v_i + t e_i;  x + s d = v_k + u e_k
          c.parallel = false;
          c.alpha = cross(A.v(i) - A.v(k), d) / Dk;
          c.beta = cross(A.e(i), d) / Dk;
          c.gamma = cross(A.v(i) - A.v(k), A.e(k)) / Dk;
          c.delta = cross(A.e(i), A.e(k)) / Dk;
        }
      }
    }
  }
}

std::optional<std::pair<int, Rat>> Billiard::cast_raw(Side s, int i, const Rat& t, int j,
                                                      int sign) const {
  const int n = nb_[static_cast<int>(s)];
  int best_k = -1;
  Rat best_s, best_u;
  for (int k = 0; k < n; ++k) {
    const Coef& c = coef(s, i, j, k);
    if (c.parallel) continue;
    Rat sv = c.gamma + c.delta * t;
    if (sv.sign() != sign) continue;
    if (best_k >= 0 && (sign > 0 ? sv >= best_s : sv <= best_s)) continue;
    Rat u = c.alpha + c.beta * t;
    if (u.sign() < 0 || u > Rat(1)) continue;
    best_k = k;
    best_s = std::move(sv);
    best_u = std::move(u);
  }
  if (best_k < 0) return std::nullopt;
  return std::pair<int, Rat>{best_k, std::move(best_u)};
}

std::optional<EdgePoint> Billiard::cast(const EdgePoint& x, const EdgeRef& dir,
                                        int sign) const {
  auto h = cast_raw(x.edge.table, x.edge.index, x.t, dir.index, sign);
  if (!h) return std::nullopt;
  return T_.normalize({x.edge.table, h->first}, std::move(h->second));
}

StepOutcome Billiard::step(const PhasePair& p) const {
  StepOutcome out;
  const Side s = p.x.edge.table;
  if (p.y.edge.table != other(s))
    throw Error(Errc::InvalidArgument, "x and y must carry opposite table tags");
  if (p.y.is_vertex()) {
    out.kind = Stop::YIsVertex;
    return out;
  }
  const int i = p.x.edge.index;
  const int j = p.y.edge.index;
  const int sg = sign_[idx2(s, i, j)];
  if (sg == 0) {
    out.kind = Stop::ParallelEdges;
    return out;
  }
  auto finish = [&](EdgePoint z) {
    if (z.is_vertex()) {
      out.kind = Stop::HitsVertex;
      out.vertex = std::move(z);
    } else {
      out.kind = Stop::Ok;
      out.next = {p.y, std::move(z)};
    }
  };
  if (!p.x.is_vertex()) {
    auto z = cast(p.x, p.y.edge, sg);
    if (!z) throw std::logic_error("chord from a boundary point found no exit");
    finish(std::move(*z));
    return out;
  }
  auto conts = continuations_at_vertex(p);
  if (conts.size() == 1) return conts.front();
  out.kind = Stop::NoUniqueChord;
  for (auto& c : conts) out.candidates.push_back(c.ok() ? c.next.y : c.vertex);
  return out;
}

std::vector<StepOutcome> Billiard::continuations_at_vertex(const PhasePair& p) const {
  if (p.y.is_vertex()) throw Error(Errc::InvalidArgument, "YIsVertex");
  if (!p.x.is_vertex()) throw Error(Errc::InvalidArgument, "x is not a vertex");
  const Side s = p.x.edge.table;
  const Poly& A = T_.poly(s);
  const Pt d = T_.edge_vec(p.y.edge);
  std::vector<StepOutcome> out;
  for (int sg : {1, -1}) {
    if (!inward_at_vertex(A, static_cast<std::size_t>(p.x.edge.index), sg > 0 ? d : -d))
      continue;
    auto z = cast(p.x, p.y.edge, sg);
    if (!z) continue;
    StepOutcome o;
    if (z->is_vertex()) {
      o.kind = Stop::HitsVertex;
      o.vertex = std::move(*z);
    } else {
      o.next = {p.y, std::move(*z)};
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<EdgePoint> Billiard::chord_ends(const EdgePoint& x, int dir) const {
  std::vector<EdgePoint> out;
  const Side s = x.edge.table;
  if (!x.is_vertex()) {
    const int sg = sign_[idx2(s, x.edge.index, dir)];
    if (sg == 0) return out;
    if (auto z = cast(x, {other(s), dir}, sg)) out.push_back(std::move(*z));
    return out;
  }
  const Pt& d = T_.poly(other(s)).e(dir);
  for (int sg : {1, -1}) {
    if (!inward_at_vertex(T_.poly(s), static_cast<std::size_t>(x.edge.index), sg > 0 ? d : -d))
      continue;
    if (auto z = cast(x, {other(s), dir}, sg)) out.push_back(std::move(*z));
  }
  return out;
}

StepOutcome Billiard::step_back(const PhasePair& p) const {
  StepOutcome o = step(swap(p));
  if (o.ok()) o.next = swap(o.next);
  return o;
}

Projection Billiard::project(const EdgeRef& i, const Rat& lo, const Rat& hi, int j) const {
  Projection out;
  const Side s = i.table;
  const int sg = sign_[idx2(s, i.index, j)];
  if (sg == 0 || !(lo < hi)) return out;
  const Poly& A = T_.poly(s);
  const Pt& d = T_.poly(other(s)).e(j);
  const Rat Di = cross(A.e(i.index), d);
  std::vector<Rat> bps;
  for (std::size_t w = 0; w < A.size(); ++w) {
    Rat tw = cross(A.v(w) - A.v(i.index), d) / Di;
    if (lo < tw && tw < hi) bps.push_back(std::move(tw));
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  std::vector<bool> is_split(bps.size(), false);
  for (std::size_t b = 0; b < bps.size(); ++b) {
    auto h = cast_raw(s, i.index, bps[b], j, sg);
    if (!h) throw std::logic_error("projection breakpoint without exit");
    if (h->second.is_zero() || h->second == Rat(1)) {
      is_split[b] = true;
      out.splits.push_back(bps[b]);
      out.split_vertex.push_back(T_.normalize({s, h->first}, h->second));
    }
  }
  Rat left = lo;
  for (std::size_t b = 0; b <= bps.size(); ++b) {
    const Rat right = b < bps.size() ? bps[b] : hi;
    const Rat mid = (left + right) * Rat(1, 2);
    auto h = cast_raw(s, i.index, mid, j, sg);
    if (!h) throw std::logic_error("projection piece without exit");
    const int k = h->first;
    const bool merge = !out.pieces.empty() && out.pieces.back().target == k &&
                       !is_split[b - 1];
    if (merge) {
      out.pieces.back().hi = right;
    } else {
      const Coef& c = coef(s, i.index, j, k);
      out.pieces.push_back({left, right, k, c.beta, c.alpha});
    }
    left = right;
  }
  return out;
}

AffineCoeffs Billiard::affine_step_coeffs(const EdgeRef& i, const EdgeRef& j,
                                          const EdgeRef& k) const {
  if (i.table != k.table || j.table != other(i.table))
    throw Error(Errc::UnrealizableBranch, "edge tables do not alternate");
  const auto pr = project(i, Rat(0), Rat(1), j.index);
  for (const auto& pc : pr.pieces) {
    if (pc.target != k.index) continue;
    const Pt& ej = T_.edge_vec(j);
    return {pc.a, pc.b, cross(T_.edge_vec(i), ej) / cross(T_.edge_vec(k), ej)};
  }
  throw Error(Errc::UnrealizableBranch, "no chord from edge " + std::to_string(i.index) +
                                            " parallel to edge " + std::to_string(j.index) +
                                            " ends on edge " + std::to_string(k.index));
}

std::pair<Trajectory, SymbolicTrajectory> Billiard::iterate(const PhasePair& seed,
                                                            std::size_t max_steps) const {
  Trajectory tr;
  std::vector<EdgePoint> fwd{seed.x, seed.y};
  PhasePair cur = seed;
  tr.forward_stop.kind = Stop::Budget;
  for (std::size_t n = 1; n <= max_steps; ++n) {
    StepOutcome o = step(cur);
    if (!o.ok()) {
      if (o.kind == Stop::HitsVertex) fwd.push_back(o.vertex);
      tr.forward_stop = std::move(o);
      break;
    }
    cur = std::move(o.next);
    if (cur == seed) {
      tr.period = n;
      tr.forward_stop.kind = Stop::Ok;
      break;
    }
    fwd.push_back(cur.y);
  }
  std::vector<EdgePoint> bwd;
  tr.backward_stop.kind = Stop::Budget;
  if (!tr.period) {
    cur = seed;
    for (std::size_t n = 1; n <= max_steps; ++n) {
      StepOutcome o = step_back(cur);
      if (!o.ok()) {
        if (o.kind == Stop::HitsVertex) bwd.push_back(o.vertex);
        tr.backward_stop = std::move(o);
        break;
      }
      cur = std::move(o.next);
      bwd.push_back(cur.x);
    }
  } else {
    tr.backward_stop.kind = Stop::Ok;
  }
  tr.seed_index = bwd.size();
  tr.points.assign(bwd.rbegin(), bwd.rend());
  tr.points.insert(tr.points.end(), fwd.begin(), fwd.end());
  SymbolicTrajectory sym;
  sym.reserve(tr.points.size());
  for (const auto& p : tr.points) sym.push_back(p.edge);
  return {std::move(tr), std::move(sym)};
}

std::optional<std::size_t> Billiard::period(const PhasePair& seed, std::size_t max_steps,
                                            Stop* stop) const {
  PhasePair cur = seed;
  for (std::size_t n = 1; n <= max_steps; ++n) {
    StepOutcome o = step(cur);
    if (!o.ok()) {
      if (stop) *stop = o.kind;
      return std::nullopt;
    }
    cur = std::move(o.next);
    if (cur == seed) {
      if (stop) *stop = Stop::Ok;
      return n;
    }
  }
  if (stop) *stop = Stop::Budget;
  return std::nullopt;
}

}  // namespace sbill
