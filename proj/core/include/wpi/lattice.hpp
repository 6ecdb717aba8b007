#pragma once

#include "wpi/scalars.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wpi {

/** Point of the abstract rank-N lattice Z^N, in generator coordinates. */
struct LatticePoint {
  std::vector<long long> c;

  LatticePoint() = default;
  explicit LatticePoint(std::vector<long long> coords) : c(std::move(coords)) {}

  static LatticePoint zero(int n) { return LatticePoint(std::vector<long long>(n, 0)); }
  static LatticePoint unit(int n, int i);

  int size() const { return int(c.size()); }
  bool is_zero() const;
  long long maxnorm() const;
  long long l1norm() const;

  LatticePoint operator-() const;
  LatticePoint& operator+=(const LatticePoint& o);
  LatticePoint& operator-=(const LatticePoint& o);
  friend LatticePoint operator+(LatticePoint a, const LatticePoint& b) { return a += b; }
  friend LatticePoint operator-(LatticePoint a, const LatticePoint& b) { return a -= b; }
  friend LatticePoint operator*(long long k, LatticePoint p);
  friend bool operator==(const LatticePoint& a, const LatticePoint& b) { return a.c == b.c; }
  friend bool operator!=(const LatticePoint& a, const LatticePoint& b) { return !(a == b); }
};

/// Lexicographic coordinate order; the normal-ordering of symbol products.
int cmp_lex(const LatticePoint& a, const LatticePoint& b);

/// Enumeration order for searches: by max-norm, then 1-norm, then a
/// coordinatewise key ordered 0 < 1 < -1 < 2 < -2 < ...  Deterministic and
/// exhaustive on any box, so the first witness found is canonical.
int cmp_scan(const LatticePoint& a, const LatticePoint& b);

struct LatticePointLess {
  bool operator()(const LatticePoint& a, const LatticePoint& b) const {
    return cmp_lex(a, b) < 0;
  }
};

/// All points of [-radius, radius]^n sorted by cmp_scan.
std::vector<LatticePoint> box_points(int n, long long radius);

std::string to_string(const LatticePoint& p);
std::ostream& operator<<(std::ostream& os, const LatticePoint& p);

/**
 * Injection candidate pi: Z^N -> C^2 given by the images of the N
 * generators. Pairing values are cached on construction. N >= 2 is
 * required; injectivity is diagnosed by check_conditions, not enforced here.
 */
class LatticeEmbedding {
 public:
  explicit LatticeEmbedding(std::vector<CVec2> images);

  int rank() const { return int(images_.size()); }
  const CVec2& image(int i) const { return images_[i]; }

  CVec2 embed(const LatticePoint& p) const;

  /// <pi(e_i), pi(e_j)>, cached.
  const GaussianRational& pairing(int i, int j) const { return pairings_[i * rank() + j]; }
  /// <rho, pi(e_i)>, cached.
  const GaussianRational& rho_pairing(int i) const { return rho_pairings_[i]; }

  /// <pi(a), pi(b)> via bilinear expansion over the cached generator pairings.
  GaussianRational symp(const LatticePoint& a, const LatticePoint& b) const;

  bool injective() const { return injective_; }

 private:
  std::vector<CVec2> images_;
  std::vector<GaussianRational> pairings_;
  std::vector<GaussianRational> rho_pairings_;
  bool injective_;
};

using EmbeddingRef = std::shared_ptr<const LatticeEmbedding>;

/// Rank-2 fixture: pi(e1) = (0, 1), pi(e2) = (-3, -3+i). Passes every
/// condition; the zero-pairing obstruction is provably empty at all radii.
EmbeddingRef demo_embedding();
/// Rank-2 fixture: pi(e1) = (1, 0), pi(e2) = (0, i). Injective, but the
/// pairing obstruction has witnesses; the canonical one is (-2 e1, e2).
EmbeddingRef axis_embedding();
/// Rank-2 fixture: pi(e1) = (1, 1), pi(e2) = (2, 2). Degenerate: image in a
/// single complex line through rho, and not injective.
EmbeddingRef collinear_embedding();

/// Coset base + pi(Z^N) inside C^2.
struct Coset {
  CVec2 base;
  EmbeddingRef emb;
};

/// Integer preimage of target under pi, if any. For injective embeddings the
/// decision is exact; otherwise a box search of the given radius is used and
/// nullopt means "none within radius".
std::optional<LatticePoint> coset_solve(const LatticeEmbedding& e, const CVec2& target,
                                        long long fallback_radius = 8);

/// Does v lie in base + pi(Z^N)? Fills *witness with the lattice preimage of
/// v - base when found.
bool coset_contains(const Coset& g, const CVec2& v, LatticePoint* witness = nullptr);

struct ConditionFinding {
  std::string condition;  // "injectivity", "i", "ii", "iii", "C", "C-weak"
  std::string status;     // "holds", "fails", "verified-up-to-radius"
  std::string witness;    // empty unless status == "fails"
};

struct ConditionReport {
  std::vector<ConditionFinding> findings;
  long long radius = 0;
  bool injective = false;

  /// True when nothing failed (bounded checks count as passing).
  bool all_pass() const;
  const ConditionFinding& find(const std::string& name) const;
};

/**
 * Audits the embedding: injectivity; i) image not inside C rho; ii) 2 rho
 * has no integer preimage; iii) image spans more than one complex line; and
 * the pairing obstruction <pi(a)+2rho, pi(b)> != 0 for nonzero b, swept over
 * the box of the given radius ("C"). "C-weak" restricts b to generators and
 * is informational only.
 */
ConditionReport check_conditions(const LatticeEmbedding& e, long long radius = 8);

std::string format_report(const ConditionReport& r);

}  // namespace wpi
