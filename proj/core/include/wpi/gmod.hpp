#pragma once

#include "wpi/lattice.hpp"
#include "wpi/poisson.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wpi {

enum class ModuleKind { SGamma, Mn };

/** Graded module over the lattice-symbol algebra: either the coset algebra
 * span of weight symbols (SGamma) or its thickening with homogeneous
 * degree-n polynomial fibers (Mn, fiber dimension n + 1). */
struct GradedModuleSpec {
  ModuleKind kind = ModuleKind::SGamma;
  long n = 0;
  Coset coset;

  static GradedModuleSpec sgamma(Coset g);
  /// Throws std::invalid_argument for n < 0.
  static GradedModuleSpec mn(Coset g, long n);

  long fiber_dim() const { return kind == ModuleKind::Mn ? n + 1 : 1; }
  /// Weight of the component at lattice point k: base + embed(k).
  CVec2 weight(const LatticePoint& k) const;
};

/** Finitely supported map from lattice points to fibers. SGamma fibers are
 * constants; Mn fibers are homogeneous of degree exactly n. Zero fibers are
 * never stored. */
struct ModuleVector {
  GradedModuleSpec spec;
  std::map<LatticePoint, PolyV, LatticePointLess> comps;

  bool is_zero() const { return comps.empty(); }
  /// Adds u into the component at k, dropping it if the sum cancels.
  void add(const LatticePoint& k, const PolyV& u);

  ModuleVector operator-() const;
  ModuleVector& operator+=(const ModuleVector& o);
  ModuleVector& operator-=(const ModuleVector& o);
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(const GaussianRational& c, const ModuleVector& v);
  friend bool operator==(const ModuleVector& a, const ModuleVector& b) {
    return a.comps == b.comps;
  }
  friend bool operator!=(const ModuleVector& a, const ModuleVector& b) { return !(a == b); }
};

/// Single-component vector; validates the fiber against the spec
/// (std::invalid_argument on degree mismatch).
ModuleVector basis_vector(const GradedModuleSpec& s, const LatticePoint& k, const PolyV& fiber);

std::string to_string(const ModuleVector& v);

/// lambda(lambda + rho) as a quadratic polynomial, cached per weight.
const PolyV& weight_quadratic(const CVec2& lam);

/** Lie action of the weight symbol at lattice point lambda: the component at
 * k moves to k + lambda, picking up the pairing coefficient plus half the
 * fiber bracket with lambda(lambda + rho).  On SGamma fibers the bracket
 * term vanishes and this is the symbol-algebra bracket. */
ModuleVector act_v(const GradedModuleSpec& s, const LatticePoint& lambda, const ModuleVector& v);

/// Associative action: multiplication by the symbol at lambda - rho, a pure
/// grading shift by lambda.
ModuleVector act_a(const GradedModuleSpec& s, const LatticePoint& lambda, const ModuleVector& v);

/// act_v(lambda) act_a(mu) - <lambda+rho, mu> act_a(lambda+mu)
///   - act_a(mu) act_v(lambda), applied to v. Contract: zero.
ModuleVector av_compatibility_residual(const GradedModuleSpec& s, const LatticePoint& lambda,
                                       const LatticePoint& mu, const ModuleVector& v);

/// [act_v(lambda), act_v(mu)] - <lambda+rho, mu+rho> act_v(lambda+mu),
/// applied to v. Contract: zero.
ModuleVector action_law_residual(const GradedModuleSpec& s, const LatticePoint& lambda,
                                 const LatticePoint& mu, const ModuleVector& v);

/// The order-m alternating-shift operator sum_i (-1)^i C(m,i)
/// L_{alpha-i xi} L_{beta+i xi}, applied through act_v.
ModuleVector omega_apply(const GradedModuleSpec& s, const LatticePoint& alpha,
                         const LatticePoint& beta, const LatticePoint& xi, long order,
                         const ModuleVector& v);

struct OmegaWitness {
  LatticePoint delta, xi;
  PolyV fiber;
  std::string describe() const;
};

/// Scans (delta, xi != 0) over the box and fiber monomials at the origin for
/// a vector NOT killed by the order-`order` operator with beta = 0. Returns
/// the first witness in canonical scan order, or nullopt if the operator
/// annihilates everything probed.
std::optional<OmegaWitness> omega_witness_search(const GradedModuleSpec& s, long order,
                                                 long long radius = 2);

/** Axis-aligned box of lattice points; the finite stage on which span and
 * complement searches run. */
struct Window {
  std::vector<long long> lo, hi;

  /// Throws std::invalid_argument when empty or mismatched.
  Window(std::vector<long long> lo_, std::vector<long long> hi_);
  static Window cube(int rank, long long radius);

  int rank() const { return int(lo.size()); }
  bool contains(const LatticePoint& p) const;
  std::vector<LatticePoint> points() const;
  /// Points whose probe shifts all stay inside the window.
  std::vector<LatticePoint> interior(const std::vector<LatticePoint>& probes) const;
};

/// The 2N unit steps +-e_i.
std::vector<LatticePoint> unit_steps(int rank);

/// Closure of the seed's span under every act_v(lambda) whose source and
/// target supports both lie inside w. Exact linear algebra; the returned
/// vectors are independent. Throws std::invalid_argument if the seed leaves w.
std::vector<ModuleVector> submodule_window_span(const GradedModuleSpec& s, const ModuleVector& seed,
                                                const Window& w);

/// Dimension of the projection of span(basis) onto the fiber at k.
long fiber_dimension_at(const GradedModuleSpec& s, const std::vector<ModuleVector>& basis,
                        const LatticePoint& k);

struct M1Report {
  bool embed_ok = false;
  bool quotient_ok = false;
  bool splits = true;
};

/** Audits the three-step sequence around the fiber-degree-1 module on the
 * window: a scalar module at base + rho/2 embeds by k -> (weight + shift)
 * fibers, the pairing against (weight + shift) passes to a scalar quotient
 * at base - rho/2, and an invariant complement is searched for by exact
 * linear solve (expected: none). The shift defaults to 3 rho / 2; perturbing
 * it breaks the maps. */
M1Report m1_sequence_check(const Coset& g, const Window& w);
M1Report m1_sequence_check(const Coset& g, const Window& w, const CVec2& fiber_shift);

/// Invariance residual of the pairing between the scalar modules at base and
/// -base - 3 rho: <lam+rho, wu+rho> + <lam+rho, wv+rho> on weights
/// wu = base + embed(mu), wv = -base - 3 rho + embed(nu). Zero whenever the
/// weights pair, i.e. lam + mu + nu = 0; non-pairing triples return zero
/// trivially.
GaussianRational dual_pairing_invariance(const LatticeEmbedding& e, const CVec2& base,
                                         const LatticePoint& lam, const LatticePoint& mu,
                                         const LatticePoint& nu);

/// Parameters (a, b) of the rank-one tensor family along direction xi through
/// weight mu: a = <rho,mu>/<rho,xi>, b = n/2 + <xi,mu>/<rho,xi> - 1. Throws
/// std::domain_error("tensor_parameters: degenerate-direction") when
/// <rho, embed(xi)> = 0.
std::pair<GaussianRational, GaussianRational> tensor_parameters(const Coset& g, const CVec2& mu,
                                                                const LatticePoint& xi, long n);

/// act_v(m xi) on the fiber xi^n at weight mu + k xi, minus
/// <rho,xi>(k + a + m b) times the shifted basis vector. Contract: zero.
ModuleVector tensor_action_residual(const Coset& g, const CVec2& mu, const LatticePoint& xi, long n,
                                    long m, long k);

/** Element of the extended coefficient algebra: finite map from symbol
 * weights to quadratic fibers. */
using ExtElement = std::map<CVec2, PolyV, CVec2Less>;

bool ext_is_zero(const ExtElement& a);

/// The twist cocycle: weight lam maps to half of lam(lam+rho) placed at
/// symbol weight lam - rho.
ExtElement mc_cocycle(const CVec2& lam);

/// Symbol-bracket action of weight lam on the symbol index.
ExtElement ext_v_act(const CVec2& lam, const ExtElement& a);

/// [A ⊗ p, B ⊗ q] = (A·B) ⊗ {p, q}: symbol product, fiber bracket.
ExtElement ext_bracket(const ExtElement& a, const ExtElement& b);

/// c([X,Y]) - X.c(Y) + Y.c(X) - [c(X), c(Y)] for X, Y the weight symbols at
/// lam, mu. Contract: zero for all weights.
ExtElement mc_residual(const CVec2& lam, const CVec2& mu);

/// Coset with the generic base (1/2, 1/3) over the given embedding.
Coset generic_coset(EmbeddingRef e);

}  // namespace wpi
