#include "wpi/enveloping.hpp"

#include "wpi/poisson.hpp"

#include <mutex>
#include <stdexcept>

namespace wpi {

int cmp_uword(const UWord& a, const UWord& b) {
  if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
  for (int k = 0; k < a.length(); ++k) {
    int c = cmp_lex(a.letters[k], b.letters[k]);
    if (c != 0) return c;
  }
  return 0;
}

GaussianRational UElement::coeff(const UWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? GaussianRational(0) : it->second;
}

void UElement::add(const UWord& w, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

UElement UElement::operator-() const {
  UElement u;
  for (const auto& [w, c] : terms_) u.terms_.emplace(w, -c);
  return u;
}

UElement& UElement::operator+=(const UElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

UElement& UElement::operator-=(const UElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

UElement operator*(const GaussianRational& c, const UElement& u) {
  UElement out;
  for (const auto& [w, v] : u.terms_) out.add(w, c * v);
  return out;
}

UAlgebra::UAlgebra(EmbeddingRef emb, int degree_bound) : emb_(std::move(emb)), bound_(degree_bound) {
  if (!emb_) throw std::invalid_argument("UAlgebra: null embedding");
  if (bound_ < 1) throw std::invalid_argument("UAlgebra: degree bound must be positive");
}

UElement UAlgebra::one() const {
  UElement u;
  u.add(UWord{}, GaussianRational(1));
  return u;
}

UElement UAlgebra::gen(const LatticePoint& p) const {
  UElement u;
  u.add(UWord{{p}}, GaussianRational(1));
  return u;
}

GaussianRational UAlgebra::weight_pairing(const LatticePoint& a, const LatticePoint& b) const {
  PairKey key{a, b};
  {
    std::shared_lock lk(memo_mu_);
    auto it = pair_memo_.find(key);
    if (it != pair_memo_.end()) return it->second;
  }
  GaussianRational v = symplectic(emb_->embed(a) + rho(), emb_->embed(b) + rho());
  std::unique_lock lk(memo_mu_);
  return pair_memo_.emplace(key, std::move(v)).first->second;
}

UElement UAlgebra::normal_form(const std::vector<LatticePoint>& letters,
                               const GaussianRational& c) const {
  if (int(letters.size()) > bound_)
    throw std::length_error("normal_form: word-length-exceeded (bound " + std::to_string(bound_) +
                            ")");
  UElement out;
  if (c.is_zero()) return out;
  std::vector<std::pair<std::vector<LatticePoint>, GaussianRational>> stack{{letters, c}};
  while (!stack.empty()) {
    auto [ls, cf] = std::move(stack.back());
    stack.pop_back();
    int descent = -1;
    for (int k = 0; k + 1 < int(ls.size()); ++k) {
      if (cmp_lex(ls[k], ls[k + 1]) > 0) { descent = k; break; }
    }
    if (descent < 0) {
      out.add(UWord{std::move(ls)}, cf);
      continue;
    }
    GaussianRational br = weight_pairing(ls[descent], ls[descent + 1]);
    std::vector<LatticePoint> swapped = ls;
    std::swap(swapped[descent], swapped[descent + 1]);
    if (!br.is_zero()) {
      std::vector<LatticePoint> contracted;
      contracted.reserve(ls.size() - 1);
      for (int k = 0; k < int(ls.size()); ++k) {
        if (k == descent) contracted.push_back(ls[k] + ls[k + 1]);
        else if (k != descent + 1) contracted.push_back(ls[k]);
      }
      stack.emplace_back(std::move(contracted), cf * br);
    }
    stack.emplace_back(std::move(swapped), cf);
  }
  return out;
}

UElement UAlgebra::u_mul(const UElement& a, const UElement& b) const {
  UElement out;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      std::vector<LatticePoint> ls;
      ls.reserve(wa.letters.size() + wb.letters.size());
      ls.insert(ls.end(), wa.letters.begin(), wa.letters.end());
      ls.insert(ls.end(), wb.letters.begin(), wb.letters.end());
      out += normal_form(ls, ca * cb);
    }
  }
  return out;
}

UElement UAlgebra::differentiator(const DifferentiatorSpec& spec) const {
  if (spec.order < 0) throw std::domain_error("differentiator: negative order");
  UElement out;
  for (int i = 0; i <= spec.order; ++i) {
    GaussianRational c(Rational(binomial(spec.order, i)));
    if (i % 2) c = -c;
    out += normal_form({spec.alpha - i * spec.xi, spec.beta + i * spec.xi}, c);
  }
  return out;
}

std::string UAlgebra::format(const UElement& u) const {
  if (u.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : u.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + " * ";
    if (w.letters.empty()) {
      out += "1";
    } else {
      for (size_t k = 0; k < w.letters.size(); ++k) {
        if (k) out += "·";
        out += symbol_literal(emb_->embed(w.letters[k]));
      }
    }
  }
  return out;
}

namespace {

UElement anticommutator(const UAlgebra& ua, const UElement& a, const UElement& b) {
  return ua.u_mul(a, b) + ua.u_mul(b, a);
}

}  // namespace

UElement bf_identity_lhs(const UAlgebra& ua, const LatticePoint& alpha, const LatticePoint& beta,
                         const LatticePoint& gamma, const LatticePoint& delta,
                         const LatticePoint& xi, int m, int r) {
  UElement acc;
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= r; ++j) {
      GaussianRational c(Rational(binomial(m, i) * binomial(r, j)));
      if ((i + j) % 2) c = -c;
      UElement first = ua.differentiator({alpha - i * xi, beta - j * xi, xi, m});
      UElement second = ua.differentiator({gamma + i * xi, delta + j * xi, xi, r});
      acc += c * anticommutator(ua, first, second);
      UElement third = ua.differentiator({alpha - i * xi, gamma - j * xi, xi, m});
      UElement fourth = ua.differentiator({beta + i * xi, delta + j * xi, xi, r});
      acc -= c * anticommutator(ua, third, fourth);
    }
  }
  return acc;
}

UElement bf_identity_rhs(const UAlgebra& ua, const LatticePoint& alpha, const LatticePoint& beta,
                         const LatticePoint& gamma, const LatticePoint& delta,
                         const LatticePoint& xi, int m, int r) {
  const LatticeEmbedding& e = ua.embedding();
  CVec2 ea = e.embed(alpha), eb = e.embed(beta), eg = e.embed(gamma), ed = e.embed(delta),
        ex = e.embed(xi);

  GaussianRational lead = symplectic(eb - GaussianRational(r) * ex + rho(),
                                     eg - GaussianRational(r) * ex + rho());
  GaussianRational top = symplectic(ea + rho(), ed + GaussianRational(2 * r) * ex + rho());
  GaussianRational mid = GaussianRational(m) * symplectic(ex, ed + rho()) +
                         GaussianRational(r) * symplectic(ea + rho(), ex);
  GaussianRational comm = symplectic(eb - eg, ex);

  LatticePoint sum_ad = alpha + delta, sum_bg = beta + gamma;
  // negative-order terms only arise with vanishing coefficients (m = r = 0)
  auto om = [&](int shift, int order) {
    if (order < 0) return UElement();
    return ua.differentiator({sum_ad + shift * xi, sum_bg - shift * xi, xi, order});
  };
  UElement om_top = om(2 * r, 2 * m + 2 * r);
  UElement om_mid = om(2 * r - 1, 2 * m + 2 * r - 1);
  UElement om_low = om(2 * r - 2, 2 * m + 2 * r - 2);

  UElement out = lead * (top * om_top + GaussianRational(2) * (mid * om_mid));
  // the top-pairing correction enters with weight (m+r): its source term
  // carries u/2, not u, from symmetrizing over the paired running indices
  GaussianRational c1 = GaussianRational(m + r) * top - mid;
  GaussianRational c2 = mid * GaussianRational(2 * m + 2 * r - 1);
  out -= comm * (c1 * om_mid + c2 * om_low);
  return out;
}

UElement verify_bf_identity(const UAlgebra& ua, const LatticePoint& alpha, const LatticePoint& beta,
                            const LatticePoint& gamma, const LatticePoint& delta,
                            const LatticePoint& xi, int m, int r) {
  return bf_identity_lhs(ua, alpha, beta, gamma, delta, xi, m, r) -
         bf_identity_rhs(ua, alpha, beta, gamma, delta, xi, m, r);
}

UElement bf_identity_rhs_collinear(const UAlgebra& ua, const LatticePoint& alpha,
                                   const LatticePoint& beta, const LatticePoint& gamma,
                                   const LatticePoint& delta, const LatticePoint& xi, int m,
                                   int r) {
  const LatticeEmbedding& e = ua.embedding();
  CVec2 ea = e.embed(alpha), eb = e.embed(beta), eg = e.embed(gamma), ed = e.embed(delta),
        ex = e.embed(xi);

  GaussianRational lead = symplectic(eb + rho(), eg + rho());
  GaussianRational top = symplectic(ea + rho(), ed + GaussianRational(2 * r) * ex + rho());
  GaussianRational mid = GaussianRational(m) * symplectic(ex, ed + rho()) +
                         GaussianRational(r) * symplectic(ea + rho(), ex);

  LatticePoint sum_ad = alpha + delta, sum_bg = beta + gamma;
  auto om = [&](int shift, int order) {
    if (order < 0) return UElement();
    return ua.differentiator({sum_ad + shift * xi, sum_bg - shift * xi, xi, order});
  };
  UElement om_top = om(2 * r, 2 * m + 2 * r);
  UElement om_mid = om(2 * r - 1, 2 * m + 2 * r - 1);

  return lead * (top * om_top + GaussianRational(2) * (mid * om_mid));
}

}  // namespace wpi
