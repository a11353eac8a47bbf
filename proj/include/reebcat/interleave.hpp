#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reebcat/isomorphism.hpp"
#include "reebcat/smoothing.hpp"

namespace reebcat {

/// The two graphs of an interleaving problem at a fixed eps, with the
/// smoothings every check needs.
struct InterleaveSetting {
  GraphRef f;
  GraphRef g;
  Rational eps;
  SmoothingResult uf;   ///< U_eps f
  SmoothingResult ug;   ///< U_eps g
  SmoothingResult uf2;  ///< U_2eps f
  SmoothingResult ug2;  ///< U_2eps g
};

using SettingRef = std::shared_ptr<const InterleaveSetting>;

SettingRef make_setting(GraphRef f, GraphRef g, const Rational& eps);

struct Certificate {
  SettingRef setting;
  RGraphMorphism alpha;  ///< f -> U_eps g
  RGraphMorphism beta;   ///< g -> U_eps f

  const Rational& eps() const { return setting->eps; }
};

struct Verification {
  bool ok = false;
  std::optional<std::string> diagnostic;
};

/// Checks both interleaving squares. Throws std::invalid_argument when the
/// maps have the wrong source or target.
Verification verify_certificate(const Certificate& c);

/// The certificate for (g, f).
Certificate swap(const Certificate& c);

/// (zeta, zeta) for f against itself.
Certificate zeta_certificate(GraphRef f, const Rational& eps);

enum class SearchStatus { kFound, kExhausted, kUnknown };

std::string to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::kUnknown;
  std::optional<Certificate> certificate;
  std::size_t nodes = 0;
};

/// Backtracking over all value-preserving pairs (alpha, beta), refined
/// over a common critical set. kExhausted means no eps-interleaving exists.
SearchResult search_certificate(GraphRef f, GraphRef g, const Rational& eps,
                                std::size_t budget = kDefaultSearchBudget);
SearchResult search_certificate(const SettingRef& setting, std::size_t budget = kDefaultSearchBudget);

/// False iff the component counts differ, in which case the distance is infinite.
bool finite_distance_check(const RGraph& f, const RGraph& g);

struct Probe {
  Rational eps;
  SearchStatus status;
  std::size_t nodes;
};

struct DistanceBracket {
  bool infinite = false;
  Rational lower;
  Rational upper;
  std::optional<Certificate> witness;  ///< at upper
  std::vector<Probe> transcript;
  bool unknown_gaps = false;
};

/// Throws std::invalid_argument unless tol > 0.
DistanceBracket distance_bracket(GraphRef f, GraphRef g, const Rational& tol,
                                 std::size_t budget = kDefaultSearchBudget);

/// The same interleaving at a larger eps. Throws InternalError if the
/// result fails to verify.
Certificate lift_certificate(const Certificate& c, const Rational& eps);

/// Interleaving of the eps1-certificate (f, g) and the eps2-certificate
/// (g, h) at eps1 + eps2.
Certificate compose_certificates(const Certificate& first, const Certificate& second);

/// An eps-certificate for (U_delta f, U_delta g) built from one for (f, g).
Certificate smooth_certificate(const Certificate& c, const Rational& delta);

/// Abstract graph carrying two value assignments.
struct Domain {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// The R-graph of x with the given vertex values. Edges crossing several
/// values are split into chains. Throws std::invalid_argument if an edge
/// has equal endpoint values.
RGraph realize(const Domain& x, const std::vector<Rational>& values);

/// Certificate between realize(x, fv) and realize(x, gv) at the sup-norm
/// distance of the two assignments.
Certificate stability_certificate(const Domain& x, const std::vector<Rational>& fv, const std::vector<Rational>& gv);

struct QuantifiedIso {
  Rational eps;  ///< hbar / 8 over the union of critical values
  SearchStatus status = SearchStatus::kUnknown;
  std::optional<IsoWitness> witness;
};

/// Searches for an interleaving below hbar / 4 and turns it into an
/// isomorphism f -> g. Throws InternalError if that map is not an isomorphism.
QuantifiedIso quantified_iso_check(GraphRef f, GraphRef g, std::size_t budget = kDefaultSearchBudget);

}  // namespace reebcat
