#pragma once

#include "wpi/lattice.hpp"

#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

namespace wpi {

/** Normal-ordered product of weight symbols; letters nondecreasing in cmp_lex. */
struct UWord {
  std::vector<LatticePoint> letters;

  int length() const { return int(letters.size()); }
  friend bool operator==(const UWord& a, const UWord& b) { return a.letters == b.letters; }
};

/// Grades by length, then letterwise lexicographic order.
int cmp_uword(const UWord& a, const UWord& b);

struct UWordLess {
  bool operator()(const UWord& a, const UWord& b) const { return cmp_uword(a, b) < 0; }
};

/** Q(i)-combination of normal-ordered words. */
class UElement {
 public:
  UElement() = default;

  bool is_zero() const { return terms_.empty(); }
  GaussianRational coeff(const UWord& w) const;
  const std::map<UWord, GaussianRational, UWordLess>& terms() const { return terms_; }

  void add(const UWord& w, const GaussianRational& c);

  UElement operator-() const;
  UElement& operator+=(const UElement& o);
  UElement& operator-=(const UElement& o);
  friend UElement operator+(UElement a, const UElement& b) { return a += b; }
  friend UElement operator-(UElement a, const UElement& b) { return a -= b; }
  friend UElement operator*(const GaussianRational& c, const UElement& u);
  friend bool operator==(const UElement& a, const UElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const UElement& a, const UElement& b) { return !(a == b); }

 private:
  std::map<UWord, GaussianRational, UWordLess> terms_;
};

/// Alternating second-difference data: order, base pair, step direction.
struct DifferentiatorSpec {
  LatticePoint alpha, beta, xi;
  int order = 0;
};

/**
 * Word algebra over the weight symbols of a fixed embedding, with the
 * commutator rewriting L_a L_b = L_b L_a + <pi(a)+rho, pi(b)+rho> L_{a+b}
 * applied until words are normal-ordered. A degree bound caps word length;
 * exceeding it raises std::length_error("... word-length-exceeded").
 */
class UAlgebra {
 public:
  explicit UAlgebra(EmbeddingRef emb, int degree_bound = 6);

  const LatticeEmbedding& embedding() const { return *emb_; }
  int degree_bound() const { return bound_; }

  UElement one() const;
  UElement gen(const LatticePoint& p) const;

  /// Normal form of c * L_{letters[0]} ... L_{letters.back()}.
  UElement normal_form(const std::vector<LatticePoint>& letters, const GaussianRational& c) const;

  UElement u_mul(const UElement& a, const UElement& b) const;

  /// sum_{i=0..order} (-1)^i C(order, i) L_{alpha - i xi} L_{beta + i xi}.
  UElement differentiator(const DifferentiatorSpec& spec) const;

  /// <pi(a) + rho, pi(b) + rho>, memoized.
  GaussianRational weight_pairing(const LatticePoint& a, const LatticePoint& b) const;

  std::string format(const UElement& u) const;

 private:
  EmbeddingRef emb_;
  int bound_;
  struct PairKey {
    LatticePoint a, b;
    bool operator<(const PairKey& o) const {
      int c = cmp_lex(a, o.a);
      if (c != 0) return c < 0;
      return cmp_lex(b, o.b) < 0;
    }
  };
  mutable std::map<PairKey, GaussianRational> pair_memo_;
  mutable std::shared_mutex memo_mu_;
};

/// Both sides of the anticommutator relation: lhs collects the double
/// alternating sum of anticommutators, rhs the closed three-term form.
/// Residual lhs - rhs; zero certifies the relation for the given tuple.
/// The relation is guaranteed for m, r >= 2 only (the reduction drops
/// lower-order sums that vanish just for exponents >= 2); smaller orders
/// give an honest nonzero residual.
UElement bf_identity_lhs(const UAlgebra& ua, const LatticePoint& alpha, const LatticePoint& beta,
                         const LatticePoint& gamma, const LatticePoint& delta,
                         const LatticePoint& xi, int m, int r);
UElement bf_identity_rhs(const UAlgebra& ua, const LatticePoint& alpha, const LatticePoint& beta,
                         const LatticePoint& gamma, const LatticePoint& delta,
                         const LatticePoint& xi, int m, int r);
UElement verify_bf_identity(const UAlgebra& ua, const LatticePoint& alpha, const LatticePoint& beta,
                            const LatticePoint& gamma, const LatticePoint& delta,
                            const LatticePoint& xi, int m, int r);

/// Collapsed closed form, valid when beta - gamma is an integer multiple of
/// xi: the commutator correction drops and the leading coefficient becomes
/// <pi(beta)+rho, pi(gamma)+rho>.
UElement bf_identity_rhs_collinear(const UAlgebra& ua, const LatticePoint& alpha,
                                   const LatticePoint& beta, const LatticePoint& gamma,
                                   const LatticePoint& delta, const LatticePoint& xi, int m, int r);

}  // namespace wpi
