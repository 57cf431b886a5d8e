#include "conicquad/subdivide.hpp"

#include <algorithm>

#include "conicquad/errors.hpp"

namespace conicquad {

namespace {

using Kind = FreeStatus::Kind;

struct Node {
  Vec2 p;
  bool on;
};

std::optional<Piece> make_piece(Node a, Node b, Node c, Provenance prov) {
  auto t = Triangle::make(a.p, b.p, c.p);
  if (!t) return std::nullopt;
  Piece out{*t, {}, prov, FreeCase::NoContact};
  for (int i = 0; i < 3; ++i) {
    const Vec2 v = (*t)[i];
    out.on[static_cast<std::size_t>(i)] = v == a.p ? a.on : v == b.p ? b.on : c.on;
  }
  return out;
}

void push(std::vector<Piece>& out, Node a, Node b, Node c, Provenance prov) {
  if (auto p = make_piece(a, b, c, prov)) out.push_back(*p);
}

Node vertex(const Piece& p, int i) {
  const int k = ((i % 3) + 3) % 3;
  return {p.tri[k], p.on[static_cast<std::size_t>(k)]};
}

Node hit_node(const SegmentHit& h) { return {h.point, true}; }

std::vector<SegmentHit> interior_hits(const Conic& c, Node a, Node b) {
  auto hits = segment_hits(c.f(), {a.p, b.p}, a.on, b.on, c.tolerances());
  std::erase_if(hits, [](const SegmentHit& h) { return h.at_vertex; });
  return hits;
}

// Fan of a convex polygon from its first vertex.
void fan(std::vector<Piece>& out, const std::vector<Node>& poly, Provenance prov) {
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) push(out, poly[0], poly[k], poly[k + 1], prov);
}

FreeStatus evaluate(const Conic& c, const Triangle& t, std::array<bool, 3> on) {
  const auto& f = c.f();
  const auto& tol = c.tolerances();
  for (int i = 0; i < 3; ++i) on[static_cast<std::size_t>(i)] = on[static_cast<std::size_t>(i)] || on_conic(f, t[i], tol);

  FreeStatus s;
  std::array<std::vector<SegmentHit>, 3> raw;
  for (int pass = 0; pass < 2; ++pass) {
    bool changed = false;
    for (int i = 0; i < 3; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>((i + 1) % 3);
      raw[ui] = segment_hits(f, t.side(i), on[ui], on[uj], tol);
      for (const auto& h : raw[ui]) {
        if (!h.at_vertex) continue;
        auto& flag = h.param == 0.0 ? on[ui] : on[uj];
        if (!flag) flag = changed = true;
      }
    }
    if (!changed) break;
  }
  s.vertex_on = on;
  for (std::size_t i = 0; i < 3; ++i) {
    for (const auto& h : raw[i])
      if (!h.at_vertex) s.side_hits[i].push_back(h);
  }

  int nonfree = 0;
  int total = 0;
  int last_nonfree = -1;
  for (int i = 0; i < 3; ++i) {
    const auto n = static_cast<int>(s.side_hits[static_cast<std::size_t>(i)].size());
    total += n;
    if (n > 0) {
      ++nonfree;
      last_nonfree = i;
    }
  }
  const int nv = static_cast<int>(std::count(on.begin(), on.end(), true));
  if (nonfree == 0) {
    s.kind = Kind::Free;
    s.free_case = nv == 0   ? FreeCase::NoContact
                  : nv == 1 ? FreeCase::OneVertex
                  : nv == 2 ? FreeCase::TwoVertices
                            : FreeCase::ThreeVertices;
  } else if (total == 1 && nv == 0) {
    s.kind = Kind::Free;
    s.free_case = FreeCase::BoundaryTouch;
    s.almost_side = last_nonfree;
  } else if (total == 1) {
    s.kind = Kind::AlmostFree;
    s.almost_side = last_nonfree;
  } else {
    s.kind = Kind::NotFree;
  }
  return s;
}

bool all_free(const Conic& c, std::vector<Piece>& pieces) {
  for (auto& p : pieces) {
    const auto s = triangle_freedom(c, p);
    if (s.kind != Kind::Free) return false;
    p.free_case = s.free_case;
    p.on = s.vertex_on;
  }
  return true;
}

}  // namespace

std::string_view to_string(FreeCase c) {
  switch (c) {
    case FreeCase::NoContact: return "NoContact";
    case FreeCase::BoundaryTouch: return "BoundaryTouch";
    case FreeCase::OneVertex: return "OneVertex";
    case FreeCase::TwoVertices: return "TwoVertices";
    case FreeCase::ThreeVertices: return "ThreeVertices";
  }
  return "?";
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Input: return "Input";
    case Provenance::NoFreeSides: return "NoFreeSides";
    case Provenance::OneFreeSide: return "OneFreeSide";
    case Provenance::TwoFreeSides: return "TwoFreeSides";
    case Provenance::CevianSplit: return "CevianSplit";
    case Provenance::TangencySplit: return "TangencySplit";
  }
  return "?";
}

int FreeStatus::free_side_count() const {
  int n = 0;
  for (int i = 0; i < 3; ++i) n += side_free(i) ? 1 : 0;
  return n;
}

FreeStatus triangle_freedom(const Conic& c, const Triangle& t) { return evaluate(c, t, {}); }

FreeStatus triangle_freedom(const Conic& c, const Piece& p) { return evaluate(c, p.tri, p.on); }

std::vector<Piece> cut_no_free_sides(const Conic&, const Piece& p, const FreeStatus& s) {
  if (s.free_side_count() != 0) throw InvalidArgument("cut_no_free_sides: a side is free");
  std::vector<Piece> out;
  std::vector<Node> inner;
  for (int i = 0; i < 3; ++i) {
    const auto& prev = s.side_hits[static_cast<std::size_t>((i + 2) % 3)];
    const auto& next = s.side_hits[static_cast<std::size_t>(i)];
    push(out, hit_node(prev.back()), vertex(p, i), hit_node(next.front()), Provenance::NoFreeSides);
    for (const auto& h : next) inner.push_back(hit_node(h));
  }
  fan(out, inner, Provenance::NoFreeSides);
  return out;
}

std::vector<Piece> cut_one_free_side(const Conic&, const Piece& p, const FreeStatus& s) {
  if (s.free_side_count() != 1) throw InvalidArgument("cut_one_free_side: need exactly one free side");
  int fs = 0;
  while (!s.side_free(fs)) ++fs;
  const Node a = vertex(p, fs);
  const Node b = vertex(p, fs + 1);
  const Node c = vertex(p, fs + 2);
  const auto& bc = s.side_hits[static_cast<std::size_t>((fs + 1) % 3)];
  const auto& ca = s.side_hits[static_cast<std::size_t>((fs + 2) % 3)];
  const Node near_a = hit_node(ca.back());

  std::vector<Piece> out;
  const auto prov = Provenance::OneFreeSide;
  push(out, a, b, near_a, prov);
  push(out, b, hit_node(bc.front()), near_a, prov);
  push(out, hit_node(bc.back()), c, hit_node(ca.front()), prov);
  std::vector<Node> inner;
  for (const auto& h : bc) inner.push_back(hit_node(h));
  for (const auto& h : ca) inner.push_back(hit_node(h));
  fan(out, inner, prov);
  return out;
}

std::vector<Piece> cut_two_free_sides(const Conic& c, const Piece& p, const FreeStatus& s) {
  if (s.free_side_count() != 2) throw InvalidArgument("cut_two_free_sides: need exactly two free sides");
  int ns = 0;
  while (s.side_free(ns)) ++ns;
  const auto& hits = s.side_hits[static_cast<std::size_t>(ns)];
  if (hits.size() == 1) return {p};

  const Node a = vertex(p, ns);
  const Node b = vertex(p, ns + 1);
  const Node cv = vertex(p, ns + 2);
  const Node d1 = hit_node(hits.front());
  const Node d2 = hit_node(hits.back());
  const auto prov = Provenance::TwoFreeSides;

  std::vector<Piece> out;
  push(out, a, d1, cv, prov);
  const auto x1 = interior_hits(c, cv, d1);
  const auto x2 = interior_hits(c, cv, d2);
  if (!x1.empty() && !x2.empty()) {
    // Extra cut from the hit on C-D1 to D2 keeps every piece almost free.
    const Node x = hit_node(x1.front());
    push(out, d1, d2, x, prov);
    push(out, x, d2, cv, prov);
  } else {
    push(out, d1, d2, cv, prov);
  }
  push(out, d2, b, cv, prov);
  return out;
}

std::vector<Piece> resolve_almost_free(const Conic& c, const Piece& p, const FreeStatus& s) {
  if (s.kind == Kind::Free) return {p};
  if (s.kind != Kind::AlmostFree) throw InvalidArgument("resolve_almost_free: triangle is not almost free");
  const int side = s.almost_side;
  const Node a = vertex(p, side);
  const Node b = vertex(p, side + 1);
  const Node cv = vertex(p, side + 2);
  const Node d = hit_node(s.side_hits[static_cast<std::size_t>(side)].front());

  if (!a.on && !b.on && !cv.on) return {p};

  std::vector<Piece> out;
  if (cv.on || interior_hits(c, cv, d).empty()) {
    push(out, a, d, cv, Provenance::CevianSplit);
    push(out, d, b, cv, Provenance::CevianSplit);
    return out;
  }

  const Node other = a.on ? b : a;
  std::vector<Vec2> candidates;
  try {
    candidates = tangency_interior_points(c, d.p, other.p, cv.p);
  } catch (const NoTangencyCandidate& e) {
    throw SubdivisionFailure(std::string("almost-free triangle: ") + e.what());
  }
  for (Vec2 pt : candidates) {
    if (point_in_triangle(pt, p.tri, c.tolerances().barycentric) != PointLocation::Inside) continue;
    const Node x{pt, true};
    std::vector<Piece> trial;
    const auto prov = Provenance::TangencySplit;
    push(trial, a, d, x, prov);
    push(trial, d, b, x, prov);
    push(trial, b, cv, x, prov);
    push(trial, cv, a, x, prov);
    if (all_free(c, trial)) return trial;
  }
  throw SubdivisionFailure("almost-free triangle: no tangency candidate gives free pieces");
}

DecompositionTrace decompose(const Conic& c, const Triangle& t) {
  if (!is_nondegenerate(c.type())) throw InvalidArgument("decompose: conic is degenerate");
  DecompositionTrace trace{t, {}};
  const Piece root{t, {}, Provenance::Input, FreeCase::NoContact};
  const auto status = triangle_freedom(c, root);

  std::vector<Piece> stage;
  if (status.kind != Kind::NotFree) {
    stage.push_back(root);
  } else {
    switch (status.free_side_count()) {
      case 0: stage = cut_no_free_sides(c, root, status); break;
      case 1: stage = cut_one_free_side(c, root, status); break;
      case 2: stage = cut_two_free_sides(c, root, status); break;
      default: throw SubdivisionFailure("decompose: inconsistent side hits");
    }
  }

  for (const auto& piece : stage) {
    const auto s = triangle_freedom(c, piece);
    if (s.kind == Kind::NotFree) throw SubdivisionFailure("decompose: cut produced a non-free piece");
    for (auto& q : resolve_almost_free(c, piece, s)) trace.pieces.push_back(q);
  }

  if (trace.pieces.size() > 11) throw SubdivisionFailure("decompose: more than eleven pieces");
  if (!all_free(c, trace.pieces)) throw SubdivisionFailure("decompose: piece failed certification");
  return trace;
}

}  // namespace conicquad
