#pragma once

#include <cstdint>
#include <vector>

#include "atc/graph.hpp"
#include "atc/rational.hpp"

namespace atc {

/// Query (V_q, W_q) with structural parameters and algorithm knobs.
struct QuerySpec {
  std::vector<VertexId> nodes;
  std::vector<AttributeId> attrs;
  std::uint32_t k = 4;
  std::uint32_t d = 4;
  Rational epsilon{3, 100};
  Rational gamma{1, 5};
  std::uint32_t eta = 1000;
  bool auto_kd = false;

  /// Throws std::invalid_argument on empty V_q, k < 2, epsilon <= 0,
  /// gamma < 0, eta < 1 or ids that do not resolve in g.
  void validate(const Graph& g) const;
};

}  // namespace atc
