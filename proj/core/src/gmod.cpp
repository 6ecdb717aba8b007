#include "wpi/gmod.hpp"

#include "wpi/linalg.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace wpi {

GradedModuleSpec GradedModuleSpec::sgamma(Coset g) {
  GradedModuleSpec s;
  s.kind = ModuleKind::SGamma;
  s.n = 0;
  s.coset = std::move(g);
  return s;
}

GradedModuleSpec GradedModuleSpec::mn(Coset g, long n) {
  if (n < 0) throw std::invalid_argument("GradedModuleSpec: negative fiber degree");
  GradedModuleSpec s;
  s.kind = ModuleKind::Mn;
  s.n = n;
  s.coset = std::move(g);
  return s;
}

CVec2 GradedModuleSpec::weight(const LatticePoint& k) const {
  return coset.base + coset.emb->embed(k);
}

void ModuleVector::add(const LatticePoint& k, const PolyV& u) {
  if (u.is_zero()) return;
  auto it = comps.find(k);
  if (it == comps.end()) {
    comps.emplace(k, u);
    return;
  }
  it->second += u;
  if (it->second.is_zero()) comps.erase(it);
}

ModuleVector ModuleVector::operator-() const {
  ModuleVector out;
  out.spec = spec;
  for (const auto& [k, u] : comps) out.comps.emplace(k, -u);
  return out;
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& o) {
  for (const auto& [k, u] : o.comps) add(k, u);
  return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& o) {
  for (const auto& [k, u] : o.comps) add(k, -u);
  return *this;
}

ModuleVector operator*(const GaussianRational& c, const ModuleVector& v) {
  ModuleVector out;
  out.spec = v.spec;
  if (c.is_zero()) return out;
  for (const auto& [k, u] : v.comps) out.comps.emplace(k, c * u);
  return out;
}

ModuleVector basis_vector(const GradedModuleSpec& s, const LatticePoint& k, const PolyV& fiber) {
  long deg = s.kind == ModuleKind::Mn ? s.n : 0;
  if (!fiber.is_homogeneous(deg))
    throw std::invalid_argument("basis_vector: fiber degree mismatch");
  ModuleVector v;
  v.spec = s;
  v.add(k, fiber);
  return v;
}

std::string to_string(const ModuleVector& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, u] : v.comps) {
    if (!first) os << " + ";
    first = false;
    os << to_string(k) << " ⊗ (" << to_string(u) << ")";
  }
  return os.str();
}

const PolyV& weight_quadratic(const CVec2& lam) {
  static std::map<CVec2, PolyV, CVec2Less> cache;
  static std::shared_mutex guard;
  {
    std::shared_lock lock(guard);
    auto it = cache.find(lam);
    if (it != cache.end()) return it->second;
  }
  PolyV l = PolyV::linear(lam);
  PolyV q = l * (l + PolyV::linear(rho()));
  std::unique_lock lock(guard);
  return cache.emplace(lam, std::move(q)).first->second;
}

ModuleVector act_v(const GradedModuleSpec& s, const LatticePoint& lambda, const ModuleVector& v) {
  CVec2 le = s.coset.emb->embed(lambda);
  const PolyV& q = weight_quadratic(le);
  GaussianRational half(make_rational(1, 2));
  ModuleVector out;
  out.spec = s;
  for (const auto& [k, u] : v.comps) {
    GaussianRational c = symplectic(le + rho(), s.weight(k) + rho());
    PolyV fib = c * u + half * poly_bracket(q, u);
    out.add(k + lambda, fib);
  }
  return out;
}

ModuleVector act_a(const GradedModuleSpec& s, const LatticePoint& lambda, const ModuleVector& v) {
  ModuleVector out;
  out.spec = s;
  for (const auto& [k, u] : v.comps) out.add(k + lambda, u);
  return out;
}

ModuleVector av_compatibility_residual(const GradedModuleSpec& s, const LatticePoint& lambda,
                                       const LatticePoint& mu, const ModuleVector& v) {
  CVec2 le = s.coset.emb->embed(lambda);
  CVec2 me = s.coset.emb->embed(mu);
  ModuleVector lhs = act_v(s, lambda, act_a(s, mu, v));
  ModuleVector rhs = symplectic(le + rho(), me) * act_a(s, lambda + mu, v);
  rhs += act_a(s, mu, act_v(s, lambda, v));
  return lhs - rhs;
}

ModuleVector action_law_residual(const GradedModuleSpec& s, const LatticePoint& lambda,
                                 const LatticePoint& mu, const ModuleVector& v) {
  CVec2 le = s.coset.emb->embed(lambda);
  CVec2 me = s.coset.emb->embed(mu);
  ModuleVector res = act_v(s, lambda, act_v(s, mu, v));
  res -= act_v(s, mu, act_v(s, lambda, v));
  res -= symplectic(le + rho(), me + rho()) * act_v(s, lambda + mu, v);
  return res;
}

ModuleVector omega_apply(const GradedModuleSpec& s, const LatticePoint& alpha,
                         const LatticePoint& beta, const LatticePoint& xi, long order,
                         const ModuleVector& v) {
  ModuleVector out;
  out.spec = s;
  for (long i = 0; i <= order; ++i) {
    GaussianRational c(Rational(binomial((unsigned long)order, (unsigned long)i)));
    if (i % 2 == 1) c = -c;
    ModuleVector term = act_v(s, alpha - i * xi, act_v(s, beta + i * xi, v));
    out += c * term;
  }
  return out;
}

std::string OmegaWitness::describe() const {
  std::ostringstream os;
  os << "delta=" << to_string(delta) << " xi=" << to_string(xi) << " fiber=" << to_string(fiber);
  return os.str();
}

std::optional<OmegaWitness> omega_witness_search(const GradedModuleSpec& s, long order,
                                                 long long radius) {
  int N = s.coset.emb->rank();
  std::vector<LatticePoint> pts = box_points(N, radius);
  long deg = s.kind == ModuleKind::Mn ? s.n : 0;
  LatticePoint origin = LatticePoint::zero(N);
  for (const auto& delta : pts) {
    for (const auto& xi : pts) {
      if (xi.is_zero()) continue;
      for (long j = 0; j <= deg; ++j) {
        PolyV u = PolyV::monomial(deg - j, j);
        ModuleVector v = basis_vector(s, origin, u);
        if (!omega_apply(s, delta, origin, xi, order, v).is_zero())
          return OmegaWitness{delta, xi, u};
      }
    }
  }
  return std::nullopt;
}

Window::Window(std::vector<long long> lo_, std::vector<long long> hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.empty() || lo.size() != hi.size())
    throw std::invalid_argument("Window: mismatched bounds");
  for (size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) throw std::invalid_argument("Window: empty box");
}

Window Window::cube(int rank, long long radius) {
  return Window(std::vector<long long>(rank, -radius), std::vector<long long>(rank, radius));
}

bool Window::contains(const LatticePoint& p) const {
  if (p.size() != rank()) return false;
  for (int i = 0; i < rank(); ++i)
    if (p.c[i] < lo[i] || p.c[i] > hi[i]) return false;
  return true;
}

std::vector<LatticePoint> Window::points() const {
  std::vector<LatticePoint> out;
  LatticePoint cur(lo);
  for (;;) {
    out.push_back(cur);
    int i = 0;
    for (; i < rank(); ++i) {
      if (cur.c[i] < hi[i]) {
        ++cur.c[i];
        break;
      }
      cur.c[i] = lo[i];
    }
    if (i == rank()) break;
  }
  return out;
}

std::vector<LatticePoint> Window::interior(const std::vector<LatticePoint>& probes) const {
  std::vector<LatticePoint> out;
  for (const auto& p : points()) {
    bool ok = true;
    for (const auto& q : probes)
      if (!contains(p + q)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(p);
  }
  return out;
}

std::vector<LatticePoint> unit_steps(int rank) {
  std::vector<LatticePoint> out;
  for (int i = 0; i < rank; ++i) {
    LatticePoint e = LatticePoint::unit(rank, i);
    out.push_back(e);
    out.push_back(-e);
  }
  return out;
}

namespace {

// Incrementally reduced row store for rank growth tests.
struct RowSpan {
  std::vector<std::vector<GaussianRational>> rows;  // each normalized at its pivot
  std::vector<size_t> pivots;

  // Reduces r against the store; if independent, absorbs it and returns true.
  bool insert(std::vector<GaussianRational> r) {
    for (size_t i = 0; i < rows.size(); ++i) {
      const GaussianRational& c = r[pivots[i]];
      if (c.is_zero()) continue;
      GaussianRational f = c;
      for (size_t j = 0; j < r.size(); ++j) r[j] -= f * rows[i][j];
    }
    size_t p = 0;
    while (p < r.size() && r[p].is_zero()) ++p;
    if (p == r.size()) return false;
    GaussianRational inv = r[p].inv();
    for (size_t j = p; j < r.size(); ++j) r[j] = inv * r[j];
    rows.push_back(std::move(r));
    pivots.push_back(p);
    return true;
  }

  size_t rank() const { return rows.size(); }
};

std::vector<GaussianRational> window_row(const GradedModuleSpec& s, const ModuleVector& v,
                                         const std::map<LatticePoint, int, LatticePointLess>& idx) {
  long deg = s.kind == ModuleKind::Mn ? s.n : 0;
  long fd = deg + 1;
  std::vector<GaussianRational> row(idx.size() * fd);
  for (const auto& [k, u] : v.comps) {
    auto it = idx.find(k);
    if (it == idx.end()) throw std::invalid_argument("window_row: support escapes the window");
    std::vector<GaussianRational> fc = fiber_coords(u, deg);
    for (long j = 0; j < fd; ++j) row[size_t(it->second) * fd + j] = fc[j];
  }
  return row;
}

}  // namespace

std::vector<ModuleVector> submodule_window_span(const GradedModuleSpec& s, const ModuleVector& seed,
                                                const Window& w) {
  int N = w.rank();
  std::vector<LatticePoint> pts = w.points();
  std::map<LatticePoint, int, LatticePointLess> idx;
  for (size_t i = 0; i < pts.size(); ++i) idx.emplace(pts[i], int(i));
  long fd = (s.kind == ModuleKind::Mn ? s.n : 0) + 1;
  size_t full = pts.size() * size_t(fd);

  for (const auto& [k, u] : seed.comps)
    if (!w.contains(k)) throw std::invalid_argument("submodule_window_span: seed escapes the window");

  RowSpan span;
  std::vector<ModuleVector> basis;
  std::vector<size_t> todo;
  if (!seed.is_zero() && span.insert(window_row(s, seed, idx))) {
    basis.push_back(seed);
    todo.push_back(0);
  }

  while (!todo.empty() && span.rank() < full) {
    ModuleVector v = basis[todo.back()];
    todo.pop_back();
    // shifts keeping the whole support inside the box
    std::vector<long long> slo(N), shi(N);
    bool first = true;
    for (const auto& [k, u] : v.comps) {
      for (int i = 0; i < N; ++i) {
        if (first) {
          slo[i] = shi[i] = k.c[i];
        } else {
          slo[i] = std::min(slo[i], k.c[i]);
          shi[i] = std::max(shi[i], k.c[i]);
        }
      }
      first = false;
    }
    std::vector<long long> tlo(N), thi(N);
    for (int i = 0; i < N; ++i) {
      tlo[i] = w.lo[i] - slo[i];
      thi[i] = w.hi[i] - shi[i];
    }
    Window shifts(tlo, thi);
    for (const auto& lam : shifts.points()) {
      ModuleVector av = act_v(s, lam, v);
      if (av.is_zero()) continue;
      if (span.insert(window_row(s, av, idx))) {
        basis.push_back(av);
        todo.push_back(basis.size() - 1);
        if (span.rank() >= full) break;
      }
    }
  }
  return basis;
}

long fiber_dimension_at(const GradedModuleSpec& s, const std::vector<ModuleVector>& basis,
                        const LatticePoint& k) {
  long deg = s.kind == ModuleKind::Mn ? s.n : 0;
  long fd = deg + 1;
  RowSpan span;
  for (const auto& v : basis) {
    auto it = v.comps.find(k);
    if (it == v.comps.end()) continue;
    span.insert(fiber_coords(it->second, deg));
  }
  (void)fd;
  return long(span.rank());
}

M1Report m1_sequence_check(const Coset& g, const Window& w) {
  return m1_sequence_check(g, w, GaussianRational(make_rational(3, 2)) * rho());
}

M1Report m1_sequence_check(const Coset& g, const Window& w, const CVec2& fiber_shift) {
  GradedModuleSpec m1 = GradedModuleSpec::mn(g, 1);
  Coset in_coset{g.base + fiber_shift - rho(), g.emb};
  Coset out_coset{g.base + fiber_shift - GaussianRational(2) * rho(), g.emb};
  GradedModuleSpec sin = GradedModuleSpec::sgamma(in_coset);
  GradedModuleSpec sout = GradedModuleSpec::sgamma(out_coset);

  std::vector<LatticePoint> probes = unit_steps(w.rank());
  std::vector<LatticePoint> pts = w.points();

  auto embed_at = [&](const LatticePoint& k) {
    return basis_vector(m1, k, PolyV::linear(m1.weight(k) + fiber_shift));
  };
  auto quot = [&](const ModuleVector& v) {
    // pairing of each fiber against (weight + shift), landing in the scalar module
    ModuleVector out;
    out.spec = sout;
    for (const auto& [k, u] : v.comps) {
      CVec2 uv = u.as_vector();
      out.add(k, PolyV::monomial(0, 0, symplectic(m1.weight(k) + fiber_shift, uv)));
    }
    return out;
  };

  M1Report rep;
  rep.embed_ok = true;
  rep.quotient_ok = true;
  for (const auto& k : pts) {
    for (const auto& p : probes) {
      if (!w.contains(k + p)) continue;
      CVec2 pe = g.emb->embed(p);
      // embedding intertwines the scalar action at the shifted base
      GaussianRational cin = symplectic(pe + rho(), sin.weight(k) + rho());
      if (act_v(m1, p, embed_at(k)) != cin * embed_at(k + p)) rep.embed_ok = false;
      // pairing functional intertwines into the quotient base
      for (int b = 0; b < 2; ++b) {
        ModuleVector mv = basis_vector(m1, k, PolyV::monomial(1 - b, b));
        if (quot(act_v(m1, p, mv)) != act_v(sout, p, quot(mv))) rep.quotient_ok = false;
      }
    }
  }

  // graded section search: v_k with <w_k + shift, v_k> = 1 and
  // act(p) v_k = cout(k, p) v_{k+p}; a solution is an invariant complement
  std::map<LatticePoint, int, LatticePointLess> idx;
  for (size_t i = 0; i < pts.size(); ++i) idx.emplace(pts[i], int(i));
  size_t cols = 2 * pts.size();
  std::vector<std::vector<GaussianRational>> rows;
  std::vector<GaussianRational> rhs;
  for (const auto& k : pts) {
    std::vector<GaussianRational> r(cols);
    CVec2 f = m1.weight(k) + fiber_shift;
    size_t c = 2 * size_t(idx[k]);
    r[c] = -f.y;
    r[c + 1] = f.x;
    rows.push_back(std::move(r));
    rhs.push_back(GaussianRational(1));
  }
  for (const auto& k : pts) {
    for (const auto& p : probes) {
      if (!w.contains(k + p)) continue;
      CVec2 pe = g.emb->embed(p);
      GaussianRational cout = symplectic(pe + rho(), sout.weight(k) + rho());
      // fiber matrix of the action in the basis x, y
      std::vector<GaussianRational> m(4);
      for (int b = 0; b < 2; ++b) {
        ModuleVector av = act_v(m1, p, basis_vector(m1, k, PolyV::monomial(1 - b, b)));
        std::vector<GaussianRational> fc(2);
        auto it = av.comps.find(k + p);
        if (it != av.comps.end()) fc = fiber_coords(it->second, 1);
        m[0 * 2 + b] = fc[0];
        m[1 * 2 + b] = fc[1];
      }
      size_t ck = 2 * size_t(idx[k]);
      size_t cp = 2 * size_t(idx[k + p]);
      for (int rrow = 0; rrow < 2; ++rrow) {
        std::vector<GaussianRational> r(cols);
        r[ck] = m[size_t(rrow) * 2 + 0];
        r[ck + 1] = m[size_t(rrow) * 2 + 1];
        r[cp + size_t(rrow)] -= cout;
        rows.push_back(std::move(r));
        rhs.push_back(GaussianRational(0));
      }
    }
  }
  QMatrix A(int(rows.size()), int(cols));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j) A.at(int(i), int(j)) = rows[i][j];
  rep.splits = solve(A, rhs).has_value();
  return rep;
}

GaussianRational dual_pairing_invariance(const LatticeEmbedding& e, const CVec2& base,
                                         const LatticePoint& lam, const LatticePoint& mu,
                                         const LatticePoint& nu) {
  if (!e.embed(lam + mu + nu).is_zero()) return GaussianRational(0);
  CVec2 le = e.embed(lam);
  CVec2 wu = base + e.embed(mu);
  CVec2 wv = -base - GaussianRational(3) * rho() + e.embed(nu);
  return symplectic(le + rho(), wu + rho()) + symplectic(le + rho(), wv + rho());
}

std::pair<GaussianRational, GaussianRational> tensor_parameters(const Coset& g, const CVec2& mu,
                                                                const LatticePoint& xi, long n) {
  CVec2 xe = g.emb->embed(xi);
  GaussianRational d = symplectic(rho(), xe);
  if (d.is_zero()) throw std::domain_error("tensor_parameters: degenerate-direction");
  GaussianRational dinv = d.inv();
  GaussianRational a = symplectic(rho(), mu) * dinv;
  GaussianRational b = GaussianRational(make_rational(n, 2)) + symplectic(xe, mu) * dinv -
                       GaussianRational(1);
  return {a, b};
}

ModuleVector tensor_action_residual(const Coset& g, const CVec2& mu, const LatticePoint& xi, long n,
                                    long m, long k) {
  auto [a, b] = tensor_parameters(g, mu, xi, n);
  CVec2 xe = g.emb->embed(xi);
  GaussianRational d = symplectic(rho(), xe);
  GradedModuleSpec spec = GradedModuleSpec::mn(Coset{mu, g.emb}, n);
  PolyV fib = PolyV::monomial(0, 0);
  PolyV xl = PolyV::linear(xe);
  for (long j = 0; j < n; ++j) fib = fib * xl;
  ModuleVector v = basis_vector(spec, k * xi, fib);
  ModuleVector av = act_v(spec, m * xi, v);
  GaussianRational c = d * (GaussianRational(k) + a + GaussianRational(m) * b);
  return av - c * basis_vector(spec, (k + m) * xi, fib);
}

bool ext_is_zero(const ExtElement& a) {
  for (const auto& [w, p] : a)
    if (!p.is_zero()) return false;
  return true;
}

namespace {

void ext_add(ExtElement& a, const CVec2& w, const PolyV& p) {
  if (p.is_zero()) return;
  auto it = a.find(w);
  if (it == a.end()) {
    a.emplace(w, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) a.erase(it);
}

}  // namespace

ExtElement mc_cocycle(const CVec2& lam) {
  ExtElement out;
  ext_add(out, lam - rho(),
          GaussianRational(make_rational(1, 2)) * weight_quadratic(lam));
  return out;
}

ExtElement ext_v_act(const CVec2& lam, const ExtElement& a) {
  ExtElement out;
  for (const auto& [w, p] : a) {
    SymbolElement sb = s_bracket(SymbolElement::symbol(lam), SymbolElement::symbol(w));
    for (const auto& [w2, c] : sb.terms()) ext_add(out, w2, c * p);
  }
  return out;
}

ExtElement ext_bracket(const ExtElement& a, const ExtElement& b) {
  ExtElement out;
  for (const auto& [wa, p] : a)
    for (const auto& [wb, q] : b) {
      SymbolElement sp = s_product(SymbolElement::symbol(wa), SymbolElement::symbol(wb));
      PolyV br = poly_bracket(p, q);
      for (const auto& [w2, c] : sp.terms()) ext_add(out, w2, c * br);
    }
  return out;
}

ExtElement mc_residual(const CVec2& lam, const CVec2& mu) {
  GaussianRational bc = symplectic(lam + rho(), mu + rho());
  ExtElement res;
  for (const auto& [w, p] : mc_cocycle(lam + mu)) ext_add(res, w, bc * p);
  for (const auto& [w, p] : ext_v_act(lam, mc_cocycle(mu))) ext_add(res, w, -p);
  for (const auto& [w, p] : ext_v_act(mu, mc_cocycle(lam))) ext_add(res, w, p);
  for (const auto& [w, p] : ext_bracket(mc_cocycle(lam), mc_cocycle(mu))) ext_add(res, w, -p);
  return res;
}

Coset generic_coset(EmbeddingRef e) {
  return Coset{CVec2(GaussianRational(make_rational(1, 2)), GaussianRational(make_rational(1, 3))),
               std::move(e)};
}

}  // namespace wpi
