#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "reebcat/rational.hpp"

namespace reebcat {

inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

struct Vertex {
  std::string id;
  std::size_t level = 0;
};

/// An edge over the slot [a_slot, a_slot+1], attached below to `lower`
/// (a vertex of level `slot`) and above to `upper` (level `slot + 1`).
/// kNoIndex marks an undefined attachment; validate() reports it.
struct Edge {
  std::string id;
  std::size_t slot = 0;
  std::size_t lower = kNoIndex;
  std::size_t upper = kNoIndex;
};

enum class CellKind : unsigned char { kVertex, kEdge };

/// A vertex or an edge of an RGraph, by index.
struct Cell {
  CellKind kind = CellKind::kVertex;
  std::size_t index = 0;

  static Cell vertex(std::size_t i) { return {CellKind::kVertex, i}; }
  static Cell edge(std::size_t i) { return {CellKind::kEdge, i}; }
  bool is_vertex() const { return kind == CellKind::kVertex; }
  bool is_edge() const { return kind == CellKind::kEdge; }

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Combinatorial R-graph: vertices grouped into levels over strictly
/// increasing critical values, edges grouped into the slots between
/// consecutive levels, and per-edge attaching maps down and up.
///
/// Instances are immutable after construction. The constructor accepts
/// malformed data so that validate() can describe it; every other
/// operation assumes a graph that validates.
class RGraph {
 public:
  RGraph() = default;
  RGraph(std::vector<Rational> criticals, std::vector<Vertex> vertices, std::vector<Edge> edges);

  const std::vector<Rational>& criticals() const { return criticals_; }
  std::size_t num_levels() const { return criticals_.size(); }
  std::size_t num_slots() const { return criticals_.empty() ? 0 : criticals_.size() - 1; }
  bool empty() const { return criticals_.empty() && vertices_.empty() && edges_.empty(); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(std::size_t v) const { return vertices_[v]; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_cells() const { return vertices_.size() + edges_.size(); }

  const Rational& level_value(std::size_t level) const { return criticals_[level]; }
  const Rational& value(std::size_t v) const { return criticals_[vertices_[v].level]; }
  /// Value range of a cell: a point for vertices, the open slot for edges.
  const Rational& low(Cell c) const;
  const Rational& high(Cell c) const;
  /// True if the cell meets the closed interval [lo, hi].
  bool meets(Cell c, const Rational& lo, const Rational& hi) const;
  /// True if the cell contains a point of value x.
  bool contains_value(Cell c, const Rational& x) const;

  std::span<const std::size_t> level(std::size_t i) const { return level_members_[i]; }
  std::span<const std::size_t> slot(std::size_t i) const { return slot_members_[i]; }
  std::span<const std::size_t> up_edges(std::size_t v) const { return up_[v]; }
  std::span<const std::size_t> down_edges(std::size_t v) const { return down_[v]; }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;
  std::optional<std::size_t> find_level(const Rational& value) const;
  const std::string& cell_id(Cell c) const;

  /// Dense numbering of all cells: vertices first, then edges.
  std::size_t cell_number(Cell c) const {
    return c.is_vertex() ? c.index : vertices_.size() + c.index;
  }
  Cell cell_from_number(std::size_t n) const {
    return n < vertices_.size() ? Cell::vertex(n) : Cell::edge(n - vertices_.size());
  }

  friend bool operator==(const RGraph& a, const RGraph& b);

 private:
  std::vector<Rational> criticals_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> level_members_;
  std::vector<std::vector<std::size_t>> slot_members_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
  std::unordered_map<std::string, std::size_t> vertex_ids_;
  std::unordered_map<std::string, std::size_t> edge_ids_;
};

struct Violation {
  std::string id;
  std::string rule;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

ValidationReport validate(const RGraph& g);

/// A coarse presentation and a finer presentation of the same R-graph,
/// with the cell correspondence in both directions.
struct Subdivision {
  RGraph coarse;
  RGraph fine;
  std::vector<std::size_t> vertex_image;              // coarse vertex -> fine vertex
  std::vector<std::vector<std::size_t>> edge_segments;  // coarse edge -> fine edges, bottom to top
  std::vector<Cell> vertex_origin;                    // fine vertex -> coarse vertex or edge
  std::vector<std::size_t> edge_origin;               // fine edge -> coarse edge
};

/// The fine cell containing the point of value x on a coarse cell.
Cell to_fine(const Subdivision& s, Cell coarse, const Rational& x);
/// The coarse cell containing a fine cell.
Cell to_coarse(const Subdivision& s, Cell fine);

/// Adds critical values, splitting every edge that crosses one.
/// `coarse` is the input and `fine` the result.
Subdivision refine(const RGraph& g, const std::vector<Rational>& extra);

/// Removes every level made only of vertices with one edge below and one
/// above, merging the edge chains through them. `fine` is the input and
/// `coarse` the result.
Subdivision reduce(const RGraph& g);

struct CommonRefinement {
  Subdivision first;
  Subdivision second;
};
CommonRefinement common_refinement(const RGraph& g, const RGraph& h);

std::size_t num_components(const RGraph& g);

/// Smallest difference between consecutive critical values.
std::optional<Rational> minimum_gap(const RGraph& g);

std::vector<Rational> merge_values(std::vector<Rational> a, const std::vector<Rational>& b);

/// Assembles an RGraph from vertex values and edges between arbitrary
/// vertices, refining edges that span several levels.
class GraphBuilder {
 public:
  GraphBuilder& criticals(std::vector<Rational> values);
  GraphBuilder& vertex(std::string id, Rational value);
  GraphBuilder& edge(std::string id, std::string a, std::string b);

  /// Throws std::invalid_argument on unknown vertices, equal endpoint
  /// values, duplicate ids, or (with `strict_criticals`) vertex values
  /// missing from an explicit critical list.
  RGraph build(bool strict_criticals = false) const;

 private:
  std::vector<Rational> criticals_;
  bool has_criticals_ = false;
  std::vector<std::pair<std::string, Rational>> vertices_;
  std::vector<std::tuple<std::string, std::string, std::string>> edges_;
};

/// Desk fixtures.
RGraph line_graph(const Rational& a, const Rational& b);
RGraph loop_graph(const Rational& a, const Rational& b);
RGraph point_graph(const Rational& a);
/// u at -1, w at 0, x and y at 1; edges u-w, w-x, w-y.
RGraph fork_graph();
/// Ids of the two inputs are prefixed with "a:" and "b:".
RGraph disjoint_union(const RGraph& g, const RGraph& h);

}  // namespace reebcat
