#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "midpoint_lab/norms/norm_oracle.hpp"

namespace mlab {

struct Provenance {
  std::string method;
  std::map<std::string, std::string> params;
};

/// Points proposed as an M-set for `norm`. Rational constructions also carry
/// their exact coordinates so that certification can run without rounding.
struct MSetCandidate {
  std::vector<VecD> points;
  std::optional<std::vector<VecQ>> exact_points;
  NormOracle norm;
  Provenance provenance;
  double intended_excess = 0;

  std::size_t size() const { return points.size(); }
};

inline MSetCandidate make_candidate(std::vector<VecQ> pts, NormOracle norm, Provenance prov,
                                    double excess) {
  MSetCandidate c{vec_cast<double>(pts), std::move(pts), std::move(norm), std::move(prov), excess};
  return c;
}

inline MSetCandidate make_candidate(std::vector<VecD> pts, NormOracle norm, Provenance prov,
                                    double excess) {
  return {std::move(pts), std::nullopt, std::move(norm), std::move(prov), excess};
}

}  // namespace mlab
