#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reebcat/cosheaf.hpp"
#include "reebcat/morphism.hpp"

namespace reebcat {

/// Malformed input; the message starts with "line N:" when a line is at fault.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reads a rational written as p/q, an integer or a decimal.
Rational parse_rational(std::string_view text);

/// R-graph document:
///   criticals 0 1/2 1
///   vertex <id> <value>
///   edge <id> <vertex id> <vertex id>
/// The criticals line is optional; when present every vertex value must
/// appear in it. Edges crossing several levels are split.
RGraph parse_rgraph(std::string_view text);
std::string emit_rgraph(const RGraph& g);

/// Morphism document, one line per source cell:
///   vertex <source vertex id> <target cell id>
///   edge <source edge id> <target edge id>...
RGraphMorphism parse_morphism(std::string_view text, GraphRef source, GraphRef target);
std::string emit_morphism(const RGraphMorphism& m);

/// Simplicial complex of dimension at most 2 with vertex values.
struct ScalarField2 {
  struct Simplex {
    std::string id;
    std::vector<std::size_t> vertices;
  };
  std::vector<std::string> vertex_ids;
  std::vector<Rational> values;
  std::vector<Simplex> edges;
  std::vector<Simplex> triangles;

  /// Simplices are numbered vertices first, then edges, then triangles.
  std::size_t num_simplices() const { return values.size() + edges.size() + triangles.size(); }
};

/// Field document:
///   v <id> <value>
///   e <id> <vertex id> <vertex id>
///   t <id> <vertex id> <vertex id> <vertex id>
ScalarField2 parse_field(std::string_view text);
std::string emit_field(const ScalarField2& k);
/// Throws std::invalid_argument on missing faces, duplicate ids or edges
/// with equal endpoint values.
void check_field(const ScalarField2& k);
std::size_t num_components(const ScalarField2& k);

/// The 1-complex of an R-graph, with every edge split at its middle value.
ScalarField2 field_of_graph(const RGraph& g);

struct ReebQuotient {
  RGraph graph;
  /// Per simplex, the graph cell it meets at each position it spans, with
  /// positions 2i for level i and 2i+1 for slot i.
  std::vector<std::vector<std::pair<std::size_t, Cell>>> images;

  /// Graph cell receiving the points of a simplex with value x.
  /// Throws std::invalid_argument if the simplex has no such points.
  Cell locate(std::size_t simplex, const Rational& x) const;
};

ReebQuotient reeb_of_complex(const ScalarField2& k);

struct DotOptions {
  bool rank_by_value = true;
};

std::string export_dot(const RGraph& g, const DotOptions& options = {});

/// One line per component: the short-interval elements it merges.
std::string describe(const Evaluation& e, const Cosheaf& f);

}  // namespace reebcat
