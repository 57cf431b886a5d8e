#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conicquad/engine.hpp"
#include "conicquad/geometry.hpp"
#include "conicquad/polynomial.hpp"

namespace conicquad::tools {

/// Malformed or invalid job file; the message names the line or field.
class JobError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadraticCoeffs {
  double a20 = 0.0, a11 = 0.0, a02 = 0.0, a10 = 0.0, a01 = 0.0, a00 = 0.0;

  Polynomial2 polynomial() const { return Polynomial2::quadratic(a20, a11, a02, a10, a01, a00); }
  bool operator==(const QuadraticCoeffs&) const = default;
};

struct TermSpec {
  int i = 0;
  int j = 0;
  double b = 0.0;
  bool operator==(const TermSpec&) const = default;
};

struct BandCoeffs {
  QuadraticCoeffs p;
  double alpha = 1.0;
  double fa = 0.0;
  double fb = 0.0;
  bool operator==(const BandCoeffs&) const = default;
};

/// Integrand: either `g` terms or the product phi1 * phi2.
/// Region: either {f >= 0} or a band.
struct Job {
  std::array<Vec2, 3> triangle{};
  std::optional<QuadraticCoeffs> f;
  std::optional<BandCoeffs> band;
  std::optional<std::vector<TermSpec>> g;
  std::optional<QuadraticCoeffs> phi1;
  std::optional<QuadraticCoeffs> phi2;

  bool operator==(const Job&) const = default;

  Triangle tri() const;
  Polynomial2 integrand() const;
  /// Region polynomial; for a band job, the first of its two one-sided regions.
  Polynomial2 region() const;
  BandSpec band_spec() const;
};

Job parse_job(const std::string& text);
Job load_job(const std::string& path);
std::string dump_job(const Job& job);

}  // namespace conicquad::tools
