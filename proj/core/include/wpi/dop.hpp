#pragma once

#include "wpi/gmod.hpp"
#include "wpi/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace wpi {

/// Fiber-map matrix of act_v(lambda) from the component at `at` to the one
/// at `at + lambda`, in the monomial bases x^n, ..., y^n on both ends.
QMatrix act_matrix(const GradedModuleSpec& s, const LatticePoint& at, const LatticePoint& lambda);

/// act_a(-lambda) after act_v(lambda), restricted to the component at `at`:
/// a component-preserving operator, computed by honest composition.
QMatrix d_matrix(const GradedModuleSpec& s, const LatticePoint& at, const LatticePoint& lambda);

/// [D(lam), D(mu)] - <lam+rho, mu+rho> D(lam+mu) + <lam, mu+rho> D(lam)
///   + <lam+rho, mu> D(mu), all at `at`. Contract: zero.
QMatrix dd_residual(const GradedModuleSpec& s, const LatticePoint& at, const LatticePoint& lam,
                    const LatticePoint& mu);

/** Coefficient table of the polynomial family lambda -> D(lambda): the
 * matrix at multi-index K (a lattice point with nonnegative entries) is
 * K! times the coefficient of lambda^K. Zero matrices are not stored. */
struct PTable {
  EmbeddingRef emb;
  long dim = 0;
  std::map<LatticePoint, QMatrix, LatticePointLess> p;

  /// Stored matrix, or dim x dim zero for absent indices.
  QMatrix get(const LatticePoint& k) const;
  long max_order() const;
};

/// Sum over K of lambda^K / K! times P_K.
QMatrix p_table_eval(const PTable& t, const LatticePoint& lambda);

/**
 * Interpolates the family lambda -> d_matrix on the grid {0..d}^N by exact
 * per-axis Vandermonde inversion and converts coefficients to a PTable.
 * The interpolant is then re-checked against 20 seeded sample points
 * outside the grid; any disagreement means the family is not a polynomial
 * of per-axis degree <= d and raises
 * std::runtime_error("extract_p_table: interpolation-mismatch ...").
 * Requires d >= 2 (std::invalid_argument below).
 */
PTable extract_p_table(const GradedModuleSpec& s, const LatticePoint& at, long d,
                       unsigned long long seed = 20);

/// act_matrix(s, k, lambda) minus the table's prediction
/// <lambda+rho, embed(k)> id + p_table_eval(t, lambda), for a table
/// extracted at the component 0. Contract: zero at every k.
QMatrix table_recovery_residual(const GradedModuleSpec& s, const PTable& t, const LatticePoint& k,
                                const LatticePoint& lambda);

struct PRelationViolation {
  std::string family;  // "central", "one-one", "one-many", "many-many"
  LatticePoint k, s;
};

struct PRelationReport {
  long pairs = 0;
  std::vector<PRelationViolation> violations;
  bool ok() const { return violations.empty(); }
};

/**
 * Evaluates the commutation laws of the coefficient family on every ordered
 * pair of stored indices: P_0 is central; for unit indices
 * [P_ei, P_ej] = <rho,ej> P_ei - <rho,ei> P_ej - <ei,ej> P_0; for a unit
 * against a higher index
 * [P_ei, P_S] = -<rho,ei> P_S + sum_j <rho,ej> S_j P_{S+ei-ej}; and for two
 * higher indices [P_K, P_S] = sum_{i != j} K_i S_j <ei,ej> P_{K+S-ei-ej}
 *   + sum_i (S_i - K_i) <rho,ei> P_{K+S-ei}.
 * Pairings are taken between embedded generators. Tables extracted from a
 * module satisfy all four families exactly.
 */
PRelationReport verify_p_relations(const PTable& t);

struct StructuralMapsReport {
  bool tau_ok = false;      // plane-vector character on unit indices
  bool eta_ok = false;      // order-2 indices against the symmetric square of C^N
  bool pi_star_ok = false;  // push-forward to the symmetric square of the plane
  bool phi_ok = false;      // unit indices acting on the symmetric square of the plane
  bool ok() const { return tau_ok && eta_ok && pi_star_ok && phi_ok; }
};

/**
 * Symbolic audits of the four linearization maps, in exact plane-vector and
 * polynomial arithmetic:
 *  - tau sends P_ei to the embedded generator and P_0 to rho; its defect on
 *    [P_ei, P_ej] is <rho,ej> e_i - <rho,ei> e_j - <ei,ej> rho = 0.
 *  - eta identifies order-2 indices with products of generators; the
 *    commutator projected back to order 2 must match the symmetric-square
 *    bracket under the pulled-back pairing.
 *  - the push-forward of the symmetric square of C^N to plane polynomials
 *    intertwines the 4-term product bracket with the Poisson bracket.
 *  - the unit-index action on plane quadratics is reproduced by half the
 *    Poisson bracket with (embedded generator) * rho.
 */
StructuralMapsReport structural_maps_check(const LatticeEmbedding& e);

enum class ModuleCase { SGammaIrreducible, MBar, MBarDual, Mn };

std::string to_string(ModuleCase c);

struct Classification {
  ModuleCase outcome = ModuleCase::SGammaIrreducible;
  long n = 0;
  GaussianRational k0, k1;
  /// k1 is reported in the convention where the component carries its own
  /// symbol weight; the offset converts to the base-point normalization:
  /// base = k0 rho_dagger + (k1 - offset) rho.
  long convention_offset = 1;
  CVec2 gamma_base;
  std::string condition_flags;  // coset membership of -rho and -2rho
};

/**
 * Reads the module data off a coefficient table: n = dim - 1, k0 the scalar
 * of P_0, k1 solved from the scalar parts of the unit-index matrices (one
 * equation per generator not parallel to rho; all must agree, otherwise
 * std::runtime_error("classify: inconsistent-K1 ...")). Fiber dimension one
 * is resolved through the coset: containing -rho names the quotient of the
 * scalar module by its one-dimensional trivial submodule, containing -2rho
 * names the restricted dual of that quotient, and a generic coset is the
 * irreducible scalar module. Higher fiber dimension reports the
 * symmetric-power family member n (the input itself; n = 1 is reducible).
 */
Classification classify(const PTable& t);

/// Extraction at component 0 with grid degree 2, then table classification.
Classification classify(const GradedModuleSpec& s);

/// Equal verdicts: same case, same n, bases in the same coset.
bool same_classification(EmbeddingRef e, const Classification& a, const Classification& b);

/// The structured report: one "field: value" line per field.
std::string format_classification(const Classification& c);

}  // namespace wpi
