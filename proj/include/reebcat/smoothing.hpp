#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reebcat/dynconn.hpp"
#include "reebcat/morphism.hpp"

namespace reebcat {

struct SmoothOptions {
  ForestKind forest = ForestKind::kLinkCut;
  /// Record, for every smoothed cell, the input cells of its window
  /// component. Needed by locate() and everything built on it.
  bool record_provenance = true;
};

/// U_eps g with the canonical map zeta: g -> U_eps g.
///
/// The smoothed graph is presented over (S - eps) ∪ (S + eps). A smoothed
/// vertex at level b is a component of g over the closed window
/// [b - eps, b + eps]; a smoothed edge over the slot (b, b') is a component
/// over [t - eps, t + eps] for any t strictly inside the slot.
struct SmoothingResult {
  GraphRef input;
  Rational eps;
  GraphRef smoothed;
  RGraphMorphism zeta;
  bool has_provenance = false;
  std::vector<std::vector<Cell>> vertex_members;
  std::vector<std::vector<Cell>> edge_members;

  const std::vector<Cell>& members(Cell smoothed_cell) const;
  /// Smoothed cell at value t whose window component contains the input
  /// cell c. Throws std::invalid_argument if c misses the window.
  Cell locate(Cell c, const Rational& t) const;

  // cell number -> smoothed cell index, sorted, per level and per slot
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> level_lookup;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> slot_lookup;
};

/// Window components computed from scratch at every level and slot.
SmoothingResult smooth_naive(GraphRef g, const Rational& eps);

/// Levelset sweep maintaining window connectivity in a dynamic forest.
SmoothingResult smooth_sweep(GraphRef g, const Rational& eps, const SmoothOptions& options = {});

inline SmoothingResult smooth(GraphRef g, const Rational& eps) { return smooth_sweep(std::move(g), eps); }

/// An input cell of the window component of the point (y, t) of the
/// smoothed graph, with a value of that cell inside the window.
std::pair<Cell, Rational> representative(const SmoothingResult& u, Cell y, const Rational& t);

/// Isomorphism a.smoothed -> b.smoothed for two smoothings of the same
/// graph by the same eps, matched through provenance.
RGraphMorphism match_smoothings(const SmoothingResult& a, const SmoothingResult& b);

/// U_eps g -> U_eps' g for eps <= eps', sending each window component to
/// the wider one containing it.
RGraphMorphism widen(const SmoothingResult& narrow, const SmoothingResult& wide);

struct SemigroupCheck {
  SmoothingResult first;   ///< U_eps1 g
  SmoothingResult second;  ///< U_eps2 U_eps1 g
  SmoothingResult whole;   ///< U_(eps1+eps2) g
  IsoWitness witness;      ///< second.smoothed -> whole.smoothed
  bool coherent = false;   ///< witness ∘ zeta2 ∘ zeta1 == zeta
  std::optional<std::string> diagnostic;
};

/// Throws InternalError if the provenance matching does not produce a morphism.
SemigroupCheck compose_smoothings(GraphRef g, const Rational& eps1, const Rational& eps2,
                                  const SmoothOptions& options = {});

/// U_eps on a morphism alpha: f -> g, given the eps-smoothings of f and g.
/// Throws InternalError if the members of one smoothed cell disagree.
RGraphMorphism smooth_morphism(const RGraphMorphism& alpha, const SmoothingResult& uf, const SmoothingResult& ug);

/// alpha^eps_2eps: U_eps f -> U_2eps g for alpha: f -> U_eps g, given the
/// eps-smoothing of f and the eps- and 2eps-smoothings of g.
RGraphMorphism shift_compose(const RGraphMorphism& alpha, const SmoothingResult& uf, const SmoothingResult& ug,
                             const SmoothingResult& ug2);

}  // namespace reebcat
