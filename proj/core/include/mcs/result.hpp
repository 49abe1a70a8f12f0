#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcs/graph.hpp"

namespace mcs {

enum class Method { RD, AIH, KernelAIH, KernelRD, Exact };

std::string to_string(Method m);
/// Accepts the CLI spellings rd, aih, kaih, krd (and exact).
Method parse_method(const std::string& text);

struct SolveStats {
  std::size_t iterations = 0;
  std::size_t stages = 0;
  std::optional<std::size_t> kernel_size;
  double wall_ms = 0.0;
};

/// An injective vertex mapping (i in g1, h in g2) witnessing a common induced subgraph.
struct MCSResult {
  std::vector<std::pair<Vertex, Vertex>> mapping;
  Method method = Method::RD;
  SolveStats stats;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return mapping.size(); }
};

}  // namespace mcs
