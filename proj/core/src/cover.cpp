#include "wpi/cover.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace wpi {

namespace {

// Echelon-form accumulator over the fiber coordinate space.
class FiberSpan {
 public:
  explicit FiberSpan(long width) : width_(width) {}

  long rank() const { return long(rows_.size()); }
  bool full() const { return rank() == width_; }

  void insert(std::vector<GaussianRational> row) {
    for (size_t r = 0; r < rows_.size(); ++r) {
      GaussianRational c = row[size_t(pivots_[r])];
      if (c.is_zero()) continue;
      for (size_t j = 0; j < row.size(); ++j) row[j] -= c * rows_[r][j];
    }
    size_t p = 0;
    while (p < row.size() && row[p].is_zero()) ++p;
    if (p == row.size()) return;
    GaussianRational inv = row[p].inv();
    for (size_t j = p; j < row.size(); ++j) row[j] *= inv;
    pivots_.push_back(long(p));
    rows_.push_back(std::move(row));
  }

 private:
  long width_;
  std::vector<long> pivots_;
  std::vector<std::vector<GaussianRational>> rows_;
};

long rank_on(const CoverFixture& f, const LatticePoint& gamma, const Window& probes,
             const Window& generators) {
  const long width = f.fiber_width();
  FiberSpan span(width);
  const std::vector<LatticePoint> dels = probes.points();
  for (const LatticePoint& lam : generators.points()) {
    const LatticePoint k = gamma - lam;
    const long dk = f.component_dim(k);
    for (long j = 0; j < dk; ++j) {
      const FixtureVector x = fixture_basis(f, k, j);
      for (const LatticePoint& del : dels) {
        const FixtureVector val = psi_eval(f, lam, x, del);
        const auto it = val.find(gamma + del);
        if (it == val.end()) continue;
        std::vector<GaussianRational> row(static_cast<size_t>(width));
        for (size_t t = 0; t < it->second.size(); ++t) row[t] = it->second[t];
        span.insert(std::move(row));
        if (span.full()) return width;
      }
    }
  }
  return span.rank();
}

}  // namespace

bool fv_is_zero(const FixtureVector& v) {
  for (const auto& [k, coords] : v) {
    (void)k;
    for (const GaussianRational& c : coords)
      if (!c.is_zero()) return false;
  }
  return true;
}

void fv_axpy(FixtureVector& acc, const GaussianRational& c, const FixtureVector& v) {
  if (c.is_zero()) return;
  for (const auto& [k, coords] : v) {
    std::vector<GaussianRational>& slot = acc[k];
    if (slot.size() < coords.size()) slot.resize(coords.size());
    for (size_t j = 0; j < coords.size(); ++j) slot[j] += c * coords[j];
    bool nonzero = false;
    for (const GaussianRational& q : slot)
      if (!q.is_zero()) {
        nonzero = true;
        break;
      }
    if (!nonzero) acc.erase(k);
  }
}

FixtureVector fixture_basis(const CoverFixture& f, const LatticePoint& k, long j) {
  const long d = f.component_dim(k);
  if (j < 0 || j >= d) throw std::invalid_argument("fixture_basis: no-basis-at-component");
  std::vector<GaussianRational> coords(static_cast<size_t>(d));
  coords[size_t(j)] = GaussianRational(1);
  FixtureVector out;
  out[k] = std::move(coords);
  return out;
}

FixtureVector GmodFixture::act(const LatticePoint& lambda, const FixtureVector& v) const {
  ModuleVector mv{s_, {}};
  for (const auto& [k, coords] : v) mv.add(k, fiber_from_coords(coords));
  const ModuleVector out = act_v(s_, lambda, mv);
  const long deg = s_.fiber_dim() - 1;
  FixtureVector res;
  for (const auto& [k, fib] : out.comps) res[k] = fiber_coords(fib, deg);
  return res;
}

FixtureVector MBarFixture::act(const LatticePoint& lambda, const FixtureVector& v) const {
  FixtureVector out;
  const CVec2 le = e_->embed(lambda);
  for (const auto& [k, coords] : v) {
    if (k.is_zero() || coords.empty()) continue;
    const LatticePoint target = k + lambda;
    if (target.is_zero()) continue;
    const GaussianRational c = symplectic(le + rho(), e_->embed(k)) * coords[0];
    if (!c.is_zero()) out[target] = {c};
  }
  return out;
}

FixtureVector psi_eval(const CoverFixture& f, const LatticePoint& lambda, const FixtureVector& x,
                       const LatticePoint& delta) {
  return f.act(lambda + delta, x);
}

CoverRankResult cover_rank(const CoverFixture& f, const LatticePoint& gamma, const Window& probes,
                           const Window& generators) {
  const long r1 = rank_on(f, gamma, probes, generators);
  if (r1 == f.fiber_width()) return {r1, true};
  std::vector<long long> lo = probes.lo, hi = probes.hi;
  for (long long& v : lo) --v;
  for (long long& v : hi) ++v;
  const long r2 = rank_on(f, gamma, Window(lo, hi), generators);
  return {r1, r1 == r2};
}

FixtureVector spanning_reduction_check(const CoverFixture& f, const LatticePoint& gamma,
                                       const LatticePoint& alpha, long fiber, int axis, int sign,
                                       long order, const Window& probes) {
  if (symplectic(rho(), f.weight(alpha)).is_zero())
    throw std::domain_error("spanning_reduction_check: non-invertible-L0");
  const int N = f.embedding()->rank();
  const FixtureVector y = fixture_basis(f, alpha, fiber);
  const LatticePoint step = (sign >= 0 ? 1LL : -1LL) * LatticePoint::unit(N, axis);
  FixtureVector total;
  for (const LatticePoint& del : probes.points()) {
    for (long i = 0; i <= order; ++i) {
      GaussianRational c{binomial(static_cast<unsigned long>(order), static_cast<unsigned long>(i))};
      if (i % 2) c = -c;
      const LatticePoint shift = (long long)i * step;
      const FixtureVector moved = f.act(shift, y);
      if (moved.empty() && i > 0) continue;
      fv_axpy(total, c, psi_eval(f, gamma - alpha - shift, moved, del));
    }
  }
  return total;
}

CoverAudit boundedness_audit(const CoverFixture& f, long d, long order,
                             const std::vector<LatticePoint>& gammas, long probe_radius,
                             long generator_radius) {
  const int N = f.embedding()->rank();
  CoverAudit a;
  a.probe_radius = probe_radius;
  a.generator_radius = generator_radius;
  a.bound = d;
  for (int i = 0; i < N; ++i) a.bound *= order;
  const Window probes = Window::cube(N, probe_radius);
  const Window gens = Window::cube(N, generator_radius);
  for (const LatticePoint& g : gammas) {
    const CoverRankResult r = cover_rank(f, g, probes, gens);
    a.rows.push_back({g, r.rank, r.stabilized});
    if (r.rank > a.max_rank) a.max_rank = r.rank;
    if (r.rank > a.bound) a.within_bound = false;
  }
  return a;
}

std::string format_audit(const CoverAudit& a) {
  std::ostringstream os;
  os << "bound=" << a.bound << " probe_radius=" << a.probe_radius
     << " generator_radius=" << a.generator_radius << "\n";
  for (const CoverAuditRow& r : a.rows)
    os << "gamma=" << to_string(r.gamma) << " rank=" << r.rank
       << " stabilized=" << (r.stabilized ? "yes" : "no") << "\n";
  os << "max_rank=" << a.max_rank << " within_bound=" << (a.within_bound ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace wpi
