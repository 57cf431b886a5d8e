#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "conicquad/conic.hpp"
#include "conicquad/geometry.hpp"

namespace conicquad {

/// The five configurations of a free triangle.
enum class FreeCase {
  NoContact,      // sides free, no vertex on the conic
  BoundaryTouch,  // boundary meets the conic in one non-vertex point
  OneVertex,
  TwoVertices,
  ThreeVertices,
};

std::string_view to_string(FreeCase c);

/// Which construction produced a piece.
enum class Provenance {
  Input,
  NoFreeSides,
  OneFreeSide,
  TwoFreeSides,
  CevianSplit,
  TangencySplit,
};

std::string_view to_string(Provenance p);

struct FreeStatus {
  enum class Kind { Free, AlmostFree, NotFree };

  Kind kind = Kind::Free;
  FreeCase free_case = FreeCase::NoContact;  // meaningful when kind == Free
  std::array<bool, 3> vertex_on{};
  // Interior hits of side i (vertex i to vertex i + 1), ordered by parameter.
  std::array<std::vector<SegmentHit>, 3> side_hits;
  int almost_side = -1;  // the non-free side when kind == AlmostFree

  bool side_free(int i) const { return side_hits[static_cast<std::size_t>(i)].empty(); }
  int free_side_count() const;
};

/// A triangle of a decomposition. `on` flags vertices known to lie on the
/// conic; these take precedence over numerical membership tests.
struct Piece {
  Triangle tri;
  std::array<bool, 3> on{};
  Provenance provenance = Provenance::Input;
  FreeCase free_case = FreeCase::NoContact;
};

struct DecompositionTrace {
  Triangle original;
  std::vector<Piece> pieces;
};

FreeStatus triangle_freedom(const Conic& c, const Triangle& t);
FreeStatus triangle_freedom(const Conic& c, const Piece& p);

/// All three sides non-free: ears at the vertices plus a fan of the polygon
/// of boundary hits. At most seven pieces, all free.
std::vector<Piece> cut_no_free_sides(const Conic& c, const Piece& p, const FreeStatus& s);

/// Exactly one free side: at most five free or almost-free pieces.
std::vector<Piece> cut_one_free_side(const Conic& c, const Piece& p, const FreeStatus& s);

/// Exactly two free sides: at most four free or almost-free pieces.
std::vector<Piece> cut_two_free_sides(const Conic& c, const Piece& p, const FreeStatus& s);

/// At most four free pieces. Throws SubdivisionFailure when no tangency
/// candidate yields free pieces.
std::vector<Piece> resolve_almost_free(const Conic& c, const Piece& p, const FreeStatus& s);

/// Cuts t into at most eleven certified free pieces. Requires a nondegenerate conic.
DecompositionTrace decompose(const Conic& c, const Triangle& t);

}  // namespace conicquad
