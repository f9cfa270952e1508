#pragma once

#include <string>

#include "degpart/graph.hpp"

namespace degpart {

/// A diagnosed, non-exceptional failure of a construction step.
struct Failure {
  std::string stage;
  std::string reason;
  Vertex witness = -1;

  std::string describe() const {
    return stage + ": " + reason + (witness >= 0 ? " (vertex " + std::to_string(witness) + ")" : "");
  }
};

}  // namespace degpart
