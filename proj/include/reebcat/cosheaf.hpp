#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reebcat/isomorphism.hpp"

namespace reebcat {

/// Open interval (lo, hi); a missing endpoint is infinite.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool empty = false;

  static Interval open(const Rational& lo, const Rational& hi);
  static Interval below(const Rational& hi);
  static Interval above(const Rational& lo);
  static Interval line();
  static Interval none();

  bool contains(const Rational& x) const;
  bool contains(const Interval& other) const;
  std::string str() const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// (lo - eps, hi + eps). Throws std::invalid_argument for negative eps.
Interval expand(const Interval& i, const Rational& eps);
Interval intersect(const Interval& a, const Interval& b);
/// Smallest interval containing both; equals the union when they overlap.
Interval hull(const Interval& a, const Interval& b);

/// Element of a short-interval set. `members` lists the base cells it
/// contains (graph cell ids for Reeb cosheaves), sorted.
struct Element {
  std::string name;
  std::vector<std::string> members;
};

/// Constructible cosheaf in zigzag form. node_sets[i] = F((a_{i-1}, a_{i+1})),
/// edge_sets[i] = F((a_i, a_{i+1})).
struct Cosheaf {
  std::vector<Rational> criticals;
  std::vector<std::vector<Element>> node_sets;
  std::vector<std::vector<Element>> edge_sets;
  std::vector<std::vector<std::size_t>> left_maps;
  std::vector<std::vector<std::size_t>> right_maps;

  Interval node_interval(std::size_t i) const;
  Interval edge_interval(std::size_t i) const;
};

using CosheafRef = std::shared_ptr<const Cosheaf>;

inline CosheafRef share(Cosheaf f) { return std::make_shared<const Cosheaf>(std::move(f)); }

ValidationReport validate(const Cosheaf& f);

Cosheaf reeb_cosheaf(const RGraph& g);
/// Display graph; element names become cell ids, made unique if needed.
RGraph display(const Cosheaf& f);

/// Short-interval element: a node (level) or edge (slot) entry of the zigzag.
struct Part {
  bool is_node;
  std::size_t index;
  std::size_t element;
  friend auto operator<=>(const Part&, const Part&) = default;
};

/// F(I) as components of the zigzag restricted to I, each listed by the
/// short-interval elements it merges.
struct Evaluation {
  Interval interval;
  std::vector<std::vector<Part>> components;

  /// Component containing p; none if p is not part of the restricted zigzag.
  std::optional<std::size_t> component_of(const Part& p) const;
  std::vector<std::pair<Part, std::size_t>> index;  // sorted by part
};

Evaluation evaluate(const Cosheaf& f, const Interval& i);
/// Largest interval meeting the critical values in the same subset as i.
Interval clamp(const Cosheaf& f, const Interval& i);

/// F[I ⊆ J] as a map of component indices. Throws std::invalid_argument if I ⊄ J.
std::vector<std::size_t> extend_map(const Cosheaf& f, const Interval& i, const Interval& j);
std::vector<std::size_t> extend_map(const Cosheaf& f, const Evaluation& i, const Evaluation& j);

/// The cosheaf I -> F(I^eps) presented over the critical values `values`
/// (which must contain every critical value of that cosheaf).
Cosheaf resample(const Cosheaf& f, const std::vector<Rational>& values, const Rational& eps);
Cosheaf smooth_cosheaf(const Cosheaf& f, const Rational& eps);
Cosheaf refine_cosheaf(const Cosheaf& f, const std::vector<Rational>& extra);

/// (S - eps) ∪ (S + eps), sorted, coincident values merged.
std::vector<Rational> smoothed_criticals(const std::vector<Rational>& s, const Rational& eps);

struct CosheafMorphism {
  CosheafRef source;
  CosheafRef target;
  std::vector<std::vector<std::size_t>> node_maps;
  std::vector<std::vector<std::size_t>> edge_maps;
};

ValidationReport validate_cosheaf_morphism(const CosheafMorphism& m);
CosheafMorphism identity_cosheaf_morphism(CosheafRef f);

/// sigma^eps: F -> S_eps F over the critical values S ∪ S^eps.
CosheafMorphism sigma_map(const Cosheaf& f, const Rational& eps);

/// The map psi_I: F(I) -> G(I) induced by a morphism.
std::vector<std::size_t> interval_map(const CosheafMorphism& m, const Interval& i);
/// Same morphism presented over a finer critical set.
CosheafMorphism refine_cosheaf_morphism(const CosheafMorphism& m, const std::vector<Rational>& values);
/// second ∘ first, matching the middle cosheaves by critical values and
/// element members. Throws std::invalid_argument if they do not match.
CosheafMorphism compose(const CosheafMorphism& first, const CosheafMorphism& second);
bool equal(const CosheafMorphism& a, const CosheafMorphism& b);

/// Induced map of Reeb cosheaves, over the union of the critical sets.
CosheafMorphism reeb_cosheaf_map(const RGraphMorphism& m);

/// Isomorphism between the refinements of F and G to their common critical
/// values, or none.
std::optional<CosheafMorphism> is_cosheaf_iso(const Cosheaf& f, const Cosheaf& g,
                                              std::size_t budget = kDefaultSearchBudget);

/// Two-interval gluing: the pushout of F(I) <- F(I∩J) -> F(J) against F(I∪J).
struct GluingCheck {
  bool holds;
  std::size_t pushout_components;
  std::size_t union_components;
};
GluingCheck check_gluing(const Cosheaf& f, const Interval& i, const Interval& j);

}  // namespace reebcat
