#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "reebcat/morphism.hpp"

namespace reebcat {

inline constexpr std::size_t kDefaultSearchBudget = 2'000'000;

/// Raised when a backtracking search exceeds its node budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Level-preserving bijection between two presentations with the same
/// critical values.
struct PresentationIso {
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;
};

/// Backtracking search for a bijection of vertices (level by level) and
/// edges (slot by slot) that commutes with the attaching maps.
std::optional<PresentationIso> find_presentation_iso(const RGraph& a, const RGraph& b,
                                                     std::size_t budget = kDefaultSearchBudget);

/// Isomorphism of R-graphs, found on the reduced presentations and
/// returned as a morphism g -> h.
std::optional<IsoWitness> is_isomorphic(const GraphRef& g, const GraphRef& h,
                                        std::size_t budget = kDefaultSearchBudget);

}  // namespace reebcat
