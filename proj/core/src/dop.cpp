#include "wpi/dop.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace wpi {

namespace {

PolyV component_at(const ModuleVector& v, const LatticePoint& k) {
  auto it = v.comps.find(k);
  return it == v.comps.end() ? PolyV() : it->second;
}

QMatrix fiber_map(const GradedModuleSpec& s, const LatticePoint& at, const LatticePoint& target,
                  const std::function<ModuleVector(const ModuleVector&)>& op) {
  long dim = s.fiber_dim();
  long n = s.kind == ModuleKind::Mn ? s.n : 0;
  QMatrix m{int(dim), int(dim)};
  for (long j = 0; j < dim; ++j) {
    ModuleVector v = basis_vector(s, at, PolyV::monomial(n - j, j));
    auto col = fiber_coords(component_at(op(v), target), n);
    for (long i = 0; i < dim; ++i) m.at(int(i), int(j)) = col[size_t(i)];
  }
  return m;
}

QMatrix comm(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

QMatrix inverse(const QMatrix& m) {
  int n = m.rows();
  QMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = GaussianRational(1);
  }
  rref(aug);
  QMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    if (aug.at(i, i) != GaussianRational(1)) throw std::domain_error("inverse: singular");
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  }
  return out;
}

}  // namespace

QMatrix act_matrix(const GradedModuleSpec& s, const LatticePoint& at, const LatticePoint& lambda) {
  return fiber_map(s, at, at + lambda,
                   [&](const ModuleVector& v) { return act_v(s, lambda, v); });
}

QMatrix d_matrix(const GradedModuleSpec& s, const LatticePoint& at, const LatticePoint& lambda) {
  return fiber_map(s, at, at, [&](const ModuleVector& v) {
    return act_a(s, -lambda, act_v(s, lambda, v));
  });
}

QMatrix dd_residual(const GradedModuleSpec& s, const LatticePoint& at, const LatticePoint& lam,
                    const LatticePoint& mu) {
  const LatticeEmbedding& e = *s.coset.emb;
  CVec2 le = e.embed(lam), me = e.embed(mu);
  QMatrix dl = d_matrix(s, at, lam);
  QMatrix dm = d_matrix(s, at, mu);
  QMatrix dlm = d_matrix(s, at, lam + mu);
  return comm(dl, dm) - symplectic(le + rho(), me + rho()) * dlm +
         symplectic(le, me + rho()) * dl + symplectic(le + rho(), me) * dm;
}

QMatrix PTable::get(const LatticePoint& k) const {
  auto it = p.find(k);
  return it == p.end() ? QMatrix(int(dim), int(dim)) : it->second;
}

long PTable::max_order() const {
  long m = 0;
  for (const auto& [k, mat] : p) m = std::max<long>(m, k.l1norm());
  return m;
}

QMatrix p_table_eval(const PTable& t, const LatticePoint& lambda) {
  QMatrix acc{int(t.dim), int(t.dim)};
  for (const auto& [k, mat] : t.p) {
    Integer num = 1, den = 1;
    for (int i = 0; i < k.size(); ++i) {
      for (long long r = 0; r < k.c[size_t(i)]; ++r) num *= long(lambda.c[size_t(i)]);
      den *= factorial((unsigned long)k.c[size_t(i)]);
    }
    if (num == 0) continue;
    acc += GaussianRational(make_rational(num, den)) * mat;
  }
  return acc;
}

PTable extract_p_table(const GradedModuleSpec& s, const LatticePoint& at, long d,
                       unsigned long long seed) {
  if (d < 2) throw std::invalid_argument("extract_p_table: degree-bound-too-small");
  const int N = s.coset.emb->rank();
  const long dim = s.fiber_dim();
  const long g = d + 1;
  long total = 1;
  for (int i = 0; i < N; ++i) total *= g;

  auto decode = [&](long f) {
    LatticePoint k = LatticePoint::zero(N);
    for (int i = 0; i < N; ++i) {
      k.c[size_t(i)] = f % g;
      f /= g;
    }
    return k;
  };

  std::vector<QMatrix> val;
  val.reserve(size_t(total));
  for (long f = 0; f < total; ++f) val.push_back(d_matrix(s, at, decode(f)));

  QMatrix vand{int(g), int(g)};
  for (long t = 0; t < g; ++t) {
    Integer pw = 1;
    for (long j = 0; j < g; ++j) {
      vand.at(int(t), int(j)) = GaussianRational(pw);
      pw *= t;
    }
  }
  QMatrix vinv = inverse(vand);

  long stride = 1;
  for (int a = 0; a < N; ++a) {
    std::vector<QMatrix> next = val;
    for (long f = 0; f < total; ++f) {
      if ((f / stride) % g != 0) continue;
      for (long j = 0; j < g; ++j) {
        QMatrix acc{int(dim), int(dim)};
        for (long t = 0; t < g; ++t) {
          const GaussianRational& w = vinv.at(int(j), int(t));
          if (!w.is_zero()) acc += w * val[size_t(f + t * stride)];
        }
        next[size_t(f + j * stride)] = acc;
      }
    }
    val = std::move(next);
    stride *= g;
  }

  PTable table;
  table.emb = s.coset.emb;
  table.dim = dim;
  for (long f = 0; f < total; ++f) {
    if (val[size_t(f)].is_zero()) continue;
    LatticePoint k = decode(f);
    Integer kfact = 1;
    for (int i = 0; i < N; ++i) kfact *= factorial((unsigned long)k.c[size_t(i)]);
    table.p.emplace(k, GaussianRational(kfact) * val[size_t(f)]);
  }

  std::mt19937_64 rng(seed);
  const long long lim = d + 6;
  int accepted = 0;
  for (int iter = 0; iter < 1000 && accepted < 20; ++iter) {
    LatticePoint lam = LatticePoint::zero(N);
    bool inside = true;
    for (int i = 0; i < N; ++i) {
      long long c = (long long)(rng() % (unsigned long long)(2 * lim + 1)) - lim;
      lam.c[size_t(i)] = c;
      inside = inside && c >= 0 && c <= d;
    }
    if (inside) continue;
    ++accepted;
    if (p_table_eval(table, lam) != d_matrix(s, at, lam))
      throw std::runtime_error("extract_p_table: interpolation-mismatch at lambda = " +
                               to_string(lam));
  }
  return table;
}

QMatrix table_recovery_residual(const GradedModuleSpec& s, const PTable& t, const LatticePoint& k,
                                const LatticePoint& lambda) {
  CVec2 le = s.coset.emb->embed(lambda);
  CVec2 ke = s.coset.emb->embed(k);
  GaussianRational c = symplectic(le + rho(), ke);
  return act_matrix(s, k, lambda) -
         (c * QMatrix::identity(int(t.dim)) + p_table_eval(t, lambda));
}

PRelationReport verify_p_relations(const PTable& t) {
  const LatticeEmbedding& e = *t.emb;
  const int N = e.rank();
  PRelationReport rep;

  auto unit_at = [&](const LatticePoint& k) {
    for (int i = 0; i < N; ++i)
      if (k.c[size_t(i)] == 1) return i;
    return -1;
  };
  auto rhs_one_many = [&](int i, const LatticePoint& sidx) {
    QMatrix r = -e.rho_pairing(i) * t.get(sidx);
    for (int j = 0; j < N; ++j) {
      long long sj = sidx.c[size_t(j)];
      if (sj == 0) continue;
      LatticePoint target = sidx + LatticePoint::unit(N, i) - LatticePoint::unit(N, j);
      r += (GaussianRational(long(sj)) * e.rho_pairing(j)) * t.get(target);
    }
    return r;
  };

  for (const auto& [k, pk] : t.p) {
    for (const auto& [sx, ps] : t.p) {
      ++rep.pairs;
      long ko = k.l1norm(), so = sx.l1norm();
      QMatrix lhs = comm(pk, ps);
      QMatrix residual;
      std::string family;
      if (ko == 0 || so == 0) {
        family = "central";
        residual = lhs;
      } else if (ko == 1 && so == 1) {
        family = "one-one";
        int i = unit_at(k), j = unit_at(sx);
        residual = lhs - e.rho_pairing(j) * pk + e.rho_pairing(i) * ps + e.pairing(i, j) * t.get(LatticePoint::zero(N));
      } else if (ko == 1) {
        family = "one-many";
        residual = lhs - rhs_one_many(unit_at(k), sx);
      } else if (so == 1) {
        family = "one-many";
        residual = lhs + rhs_one_many(unit_at(sx), k);
      } else {
        family = "many-many";
        residual = lhs;
        for (int i = 0; i < N; ++i) {
          long long ki = k.c[size_t(i)];
          for (int j = 0; j < N; ++j) {
            long long sj = sx.c[size_t(j)];
            if (i == j || ki == 0 || sj == 0) continue;
            LatticePoint target =
                k + sx - LatticePoint::unit(N, i) - LatticePoint::unit(N, j);
            residual -= (GaussianRational(long(ki * sj)) * e.pairing(i, j)) * t.get(target);
          }
        }
        for (int i = 0; i < N; ++i) {
          long long diff = sx.c[size_t(i)] - k.c[size_t(i)];
          if (diff == 0) continue;
          LatticePoint target = k + sx - LatticePoint::unit(N, i);
          residual -= (GaussianRational(long(diff)) * e.rho_pairing(i)) * t.get(target);
        }
      }
      if (!residual.is_zero()) rep.violations.push_back({family, k, sx});
    }
  }
  return rep;
}

namespace {

/* Symmetric square of C^N: coefficient map on sorted generator pairs. */
using S2N = std::map<std::pair<int, int>, GaussianRational>;

void s2n_add(S2N& m, int i, int j, const GaussianRational& c) {
  if (c.is_zero()) return;
  std::pair<int, int> key = std::minmax(i, j);
  auto it = m.find(key);
  if (it == m.end()) {
    m.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) m.erase(it);
}

std::pair<int, int> order_two_pair(const LatticePoint& m) {
  int p = -1, q = -1;
  for (int i = 0; i < m.size(); ++i) {
    if (m.c[size_t(i)] == 2) p = q = i;
    if (m.c[size_t(i)] == 1) (p < 0 ? p : q) = i;
  }
  return {p, q};
}

}  // namespace

StructuralMapsReport structural_maps_check(const LatticeEmbedding& e) {
  const int N = e.rank();
  StructuralMapsReport rep;

  rep.tau_ok = true;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      CVec2 r = e.rho_pairing(j) * e.image(i) - e.rho_pairing(i) * e.image(j) -
                e.pairing(i, j) * rho();
      rep.tau_ok = rep.tau_ok && r.is_zero();
    }

  rep.eta_ok = true;
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b)
      for (int c = 0; c < N; ++c)
        for (int d = c; d < N; ++d) {
          LatticePoint k = LatticePoint::unit(N, a) + LatticePoint::unit(N, b);
          LatticePoint sx = LatticePoint::unit(N, c) + LatticePoint::unit(N, d);
          S2N lhs;
          for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
              if (i == j) continue;
              long long ki = k.c[size_t(i)], sj = sx.c[size_t(j)];
              if (ki == 0 || sj == 0) continue;
              auto [p, q] = order_two_pair(k + sx - LatticePoint::unit(N, i) -
                                           LatticePoint::unit(N, j));
              s2n_add(lhs, p, q, GaussianRational(long(ki * sj)) * e.pairing(i, j));
            }
          S2N rhs;
          s2n_add(rhs, b, d, e.pairing(a, c));
          s2n_add(rhs, b, c, e.pairing(a, d));
          s2n_add(rhs, a, d, e.pairing(b, c));
          s2n_add(rhs, a, c, e.pairing(b, d));
          rep.eta_ok = rep.eta_ok && lhs == rhs;
        }

  rep.pi_star_ok = true;
  {
    std::vector<LatticePoint> pts = box_points(N, 1);
    std::vector<std::pair<LatticePoint, LatticePoint>> elems = {
        {pts[1], pts[1]}, {pts[1], pts[2]}, {pts[2], pts[3]}, {pts[3], pts[4]}, {pts[1], pts[4]}};
    auto push = [&](const std::pair<LatticePoint, LatticePoint>& x) {
      return PolyV::linear(e.embed(x.first)) * PolyV::linear(e.embed(x.second));
    };
    for (size_t u = 0; u < elems.size(); ++u)
      for (size_t v = u; v < elems.size(); ++v) {
        const auto& [al, be] = elems[u];
        const auto& [ga, de] = elems[v];
        PolyV lhs = e.symp(al, ga) * push({be, de}) + e.symp(al, de) * push({be, ga}) +
                    e.symp(be, ga) * push({al, de}) + e.symp(be, de) * push({al, ga});
        PolyV rhs = poly_bracket(push(elems[u]), push(elems[v]));
        rep.pi_star_ok = rep.pi_star_ok && (lhs - rhs).is_zero();
      }
  }

  rep.phi_ok = true;
  {
    auto cv = [](long a, long b) { return CVec2(GaussianRational(a), GaussianRational(b)); };
    std::vector<std::pair<CVec2, CVec2>> quads = {
        {cv(1, 0), cv(0, 1)}, {cv(1, 0), cv(1, 0)}, {cv(0, 1), cv(0, 1)}, {cv(1, 2), cv(3, -1)}};
    GaussianRational half(make_rational(1, 2));
    for (int i = 0; i < N; ++i)
      for (const auto& [lam, mu] : quads) {
        PolyV p = PolyV::linear(lam) * PolyV::linear(mu);
        PolyV lhs = half * poly_bracket(PolyV::linear(e.image(i)) * PolyV::linear(rho()), p);
        PolyV rhs = -e.rho_pairing(i) * p +
                    symplectic(rho(), lam) * (PolyV::linear(e.image(i)) * PolyV::linear(mu)) +
                    symplectic(rho(), mu) * (PolyV::linear(e.image(i)) * PolyV::linear(lam));
        rep.phi_ok = rep.phi_ok && (lhs - rhs).is_zero();
      }
  }

  return rep;
}

std::string to_string(ModuleCase c) {
  switch (c) {
    case ModuleCase::SGammaIrreducible: return "SGammaIrreducible";
    case ModuleCase::MBar: return "MBar";
    case ModuleCase::MBarDual: return "MBarDual";
    case ModuleCase::Mn: return "Mn";
  }
  return "?";
}

Classification classify(const PTable& t) {
  const LatticeEmbedding& e = *t.emb;
  const int N = e.rank();
  Classification c;
  c.n = t.dim - 1;
  GaussianRational dim_inv = GaussianRational(t.dim).inv();
  c.k0 = t.get(LatticePoint::zero(N)).trace() * dim_inv;

  bool have = false;
  for (int i = 0; i < N; ++i) {
    GaussianRational denom = symplectic(e.image(i), rho());
    if (denom.is_zero()) continue;
    GaussianRational scalar = t.get(LatticePoint::unit(N, i)).trace() * dim_inv;
    GaussianRational cand = (scalar - c.k0 * symplectic(e.image(i), rho_dagger())) / denom;
    if (!have) {
      c.k1 = cand;
      have = true;
    } else if (cand != c.k1) {
      throw std::runtime_error("classify: inconsistent-K1 (generators disagree)");
    }
  }
  if (!have) throw std::runtime_error("classify: inconsistent-K1 (no generator transverse to rho)");

  c.gamma_base = c.k0 * rho_dagger() + (c.k1 - GaussianRational(c.convention_offset)) * rho();
  Coset gamma{c.gamma_base, t.emb};
  bool has_mr = coset_contains(gamma, -rho());
  bool has_m2r = coset_contains(gamma, -(rho() + rho()));
  c.condition_flags = std::string("-rho:") + (has_mr ? "in" : "out") + " -2rho:" +
                      (has_m2r ? "in" : "out");
  if (t.dim == 1)
    c.outcome = has_mr ? ModuleCase::MBar
                       : has_m2r ? ModuleCase::MBarDual : ModuleCase::SGammaIrreducible;
  else
    c.outcome = ModuleCase::Mn;
  return c;
}

Classification classify(const GradedModuleSpec& s) {
  return classify(extract_p_table(s, LatticePoint::zero(s.coset.emb->rank()), 2));
}

bool same_classification(EmbeddingRef e, const Classification& a, const Classification& b) {
  return a.outcome == b.outcome && a.n == b.n &&
         coset_contains(Coset{a.gamma_base, std::move(e)}, b.gamma_base);
}

std::string format_classification(const Classification& c) {
  std::ostringstream os;
  os << "case: " << to_string(c.outcome) << "\n";
  os << "n: " << c.n << "\n";
  os << "K0: " << to_string(c.k0) << "\n";
  os << "K1: " << to_string(c.k1) << "\n";
  os << "convention_offset: " << c.convention_offset << "\n";
  os << "gamma_base: " << to_string(c.gamma_base) << "\n";
  os << "condition_flags: " << c.condition_flags << "\n";
  return os.str();
}

}  // namespace wpi
