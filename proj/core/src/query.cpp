#include "atc/query.hpp"

#include <stdexcept>

namespace atc {

void QuerySpec::validate(const Graph& g) const {
  if (nodes.empty()) throw std::invalid_argument("query needs at least one node");
  for (auto v : nodes)
    if (v >= g.num_vertices()) throw std::invalid_argument("query node id out of range");
  for (auto w : attrs)
    if (w >= g.num_attributes()) throw std::invalid_argument("query attribute id out of range");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (epsilon <= Rational(0)) throw std::invalid_argument("epsilon must be positive");
  if (gamma < Rational(0)) throw std::invalid_argument("gamma must be non-negative");
  if (eta < 1) throw std::invalid_argument("eta must be at least 1");
}

}  // namespace atc
