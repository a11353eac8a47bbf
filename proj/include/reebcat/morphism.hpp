#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reebcat/rgraph.hpp"

namespace reebcat {

using GraphRef = std::shared_ptr<const RGraph>;

inline GraphRef share(RGraph g) { return std::make_shared<const RGraph>(std::move(g)); }

/// Raised when a construction that must produce a valid morphism does not.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Function-preserving map between R-graphs in compact form: each source
/// vertex goes to a target vertex of equal value or to the target edge
/// whose open span contains that value; each source edge goes to the
/// monotone chain of target edges it runs along, bottom to top. The first
/// and last edges of a chain may be entered or left part-way.
struct RGraphMorphism {
  GraphRef source;
  GraphRef target;
  std::vector<Cell> vertex_map;
  std::vector<std::vector<std::size_t>> edge_map;
};

using IsoWitness = RGraphMorphism;

/// Image of the point of value x on source cell c.
Cell apply(const RGraphMorphism& m, Cell c, const Rational& x);

/// Maps the point of value x on a source cell to the target cell holding its image.
using PointMap = std::function<Cell(Cell, const Rational&)>;

/// Builds the compact morphism induced by a continuous, value-preserving
/// point map. Edge images are sampled between consecutive target critical
/// values and any `extra_samples`. Throws InternalError if the result does
/// not validate.
RGraphMorphism from_point_map(GraphRef source, GraphRef target, const PointMap& map,
                              const std::vector<Rational>& extra_samples = {});

ValidationReport validate_morphism(const RGraphMorphism& m);

RGraphMorphism identity_morphism(GraphRef g);

/// second ∘ first. Throws std::invalid_argument if first.target differs from second.source.
RGraphMorphism compose(const RGraphMorphism& first, const RGraphMorphism& second);

/// Level-wise form over a common critical set: every vertex of `source.fine`
/// maps to a vertex of `target.fine` and every edge to a single edge.
struct RefinedMorphism {
  GraphRef source_graph;
  GraphRef target_graph;
  Subdivision source;
  Subdivision target;
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;
};

RefinedMorphism refine_morphism(const RGraphMorphism& m, const std::vector<Rational>& extra = {});
RGraphMorphism unrefine_morphism(const RefinedMorphism& r);

bool equal(const RGraphMorphism& a, const RGraphMorphism& b);
/// Id of the first source cell on which the two maps differ, if any.
std::optional<std::string> first_difference(const RGraphMorphism& a, const RGraphMorphism& b);

bool is_isomorphism(const RGraphMorphism& m);
/// Inverse of an isomorphism; throws std::invalid_argument otherwise.
RGraphMorphism inverse(const RGraphMorphism& m);

/// Isomorphisms coarse -> fine and fine -> coarse of a subdivision.
RGraphMorphism coarse_to_fine(const Subdivision& s, GraphRef coarse = nullptr, GraphRef fine = nullptr);
RGraphMorphism fine_to_coarse(const Subdivision& s, GraphRef fine = nullptr, GraphRef coarse = nullptr);

bool same_graph(const GraphRef& a, const GraphRef& b);

std::string describe(const RGraphMorphism& m);

}  // namespace reebcat
