#pragma once

#include "wpi/gmod.hpp"
#include "wpi/linalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace wpi {

/** Vector in a fixture: component index to fiber coordinates, zero
 * components absent. Coordinate length is the component's dimension. */
using FixtureVector = std::map<LatticePoint, std::vector<GaussianRational>, LatticePointLess>;

bool fv_is_zero(const FixtureVector& v);

/// acc += c * v, dropping components that cancel.
void fv_axpy(FixtureVector& acc, const GaussianRational& c, const FixtureVector& v);

/**
 * A graded module presented through coordinates: per-component dimension,
 * per-component weight, and the action of the weight symbols. The rank and
 * reduction audits below only see this interface.
 */
struct CoverFixture {
  virtual ~CoverFixture() = default;
  virtual EmbeddingRef embedding() const = 0;
  /// Dimension of the component at k (0 for a deleted component).
  virtual long component_dim(const LatticePoint& k) const = 0;
  /// Largest component dimension; the width of evaluation rows.
  virtual long fiber_width() const = 0;
  virtual CVec2 weight(const LatticePoint& k) const = 0;
  virtual FixtureVector act(const LatticePoint& lambda, const FixtureVector& v) const = 0;
};

/// j-th coordinate vector of the component at k. Throws
/// std::invalid_argument when the component has no such basis vector.
FixtureVector fixture_basis(const CoverFixture& f, const LatticePoint& k, long j);

/// Polynomial-fiber modules behind the fixture interface.
class GmodFixture : public CoverFixture {
 public:
  explicit GmodFixture(GradedModuleSpec s) : s_(std::move(s)) {}
  EmbeddingRef embedding() const override { return s_.coset.emb; }
  long component_dim(const LatticePoint&) const override { return s_.fiber_dim(); }
  long fiber_width() const override { return s_.fiber_dim(); }
  CVec2 weight(const LatticePoint& k) const override { return s_.weight(k); }
  FixtureVector act(const LatticePoint& lambda, const FixtureVector& v) const override;

 private:
  GradedModuleSpec s_;
};

/// Quotient of the scalar module on the coset of -rho by the invariant line
/// sitting at component 0: that component is deleted on both sides.
class MBarFixture : public CoverFixture {
 public:
  explicit MBarFixture(EmbeddingRef e) : e_(std::move(e)) {}
  EmbeddingRef embedding() const override { return e_; }
  long component_dim(const LatticePoint& k) const override { return k.is_zero() ? 0 : 1; }
  long fiber_width() const override { return 1; }
  CVec2 weight(const LatticePoint& k) const override { return -rho() + e_->embed(k); }
  FixtureVector act(const LatticePoint& lambda, const FixtureVector& v) const override;

 private:
  EmbeddingRef e_;
};

/// One-dimensional components with declared weights and zero action.
class TrivialFixture : public CoverFixture {
 public:
  TrivialFixture(EmbeddingRef e, CVec2 base) : e_(std::move(e)), base_(std::move(base)) {}
  EmbeddingRef embedding() const override { return e_; }
  long component_dim(const LatticePoint&) const override { return 1; }
  long fiber_width() const override { return 1; }
  CVec2 weight(const LatticePoint& k) const override { return base_ + e_->embed(k); }
  FixtureVector act(const LatticePoint&, const FixtureVector&) const override { return {}; }

 private:
  EmbeddingRef e_;
  CVec2 base_;
};

/// The functional attached to the symbol at lambda and the vector x,
/// evaluated at delta: the symbol at lambda + delta applied to x. For x in
/// the component at k the value sits at k + lambda + delta.
FixtureVector psi_eval(const CoverFixture& f, const LatticePoint& lambda, const FixtureVector& x,
                       const LatticePoint& delta);

struct CoverRankResult {
  long rank = 0;
  bool stabilized = false;
};

/**
 * Rank over Q(i) of the evaluations of the functionals at degree gamma: one
 * row per (lambda in `generators`, basis vector of the component at
 * gamma - lambda, probe delta in `probes`), holding the fiber coordinates
 * of the value at gamma + delta. The rank is how much of a fiber the
 * evaluated functionals reach; it is capped by fiber_width(). The
 * stabilization flag reports that growing the probe window by one in every
 * direction leaves the rank unchanged (a heuristic certificate, not a
 * proof).
 */
CoverRankResult cover_rank(const CoverFixture& f, const LatticePoint& gamma, const Window& probes,
                           const Window& generators);

/**
 * Index-lowering identity behind the spanning-set reduction: with y the
 * given basis vector of the component at alpha and x the symbol-at-0 image
 * of y, the alternating sum over i = 0..order of
 * (-1)^i C(order, i) psi(L_{gamma - alpha - i step}, L_{i step}. y), with
 * step the signed axis generator, is evaluated at every probe; the
 * evaluation at delta collapses to the order-`order` alternating-shift
 * operator applied to y, so the result is zero wherever that operator
 * annihilates the fixture. Returns the assembled evaluations keyed by
 * gamma + delta. Throws
 * std::domain_error("spanning_reduction_check: non-invertible-L0") when the
 * declared weight at alpha pairs to zero with rho, the one component where
 * x = L_0 . y is not solvable.
 */
FixtureVector spanning_reduction_check(const CoverFixture& f, const LatticePoint& gamma,
                                       const LatticePoint& alpha, long fiber, int axis, int sign,
                                       long order, const Window& probes);

struct CoverAuditRow {
  LatticePoint gamma;
  long rank = 0;
  bool stabilized = false;
};

struct CoverAudit {
  long bound = 0;  // d * order^N
  long probe_radius = 0, generator_radius = 0;
  long max_rank = 0;
  bool within_bound = true;
  std::vector<CoverAuditRow> rows;
};

/// cover_rank on cube windows at every sampled gamma, compared against the
/// spanning-set cardinality bound d * order^N.
CoverAudit boundedness_audit(const CoverFixture& f, long d, long order,
                             const std::vector<LatticePoint>& gammas, long probe_radius = 1,
                             long generator_radius = 2);

std::string format_audit(const CoverAudit& a);

}  // namespace wpi
