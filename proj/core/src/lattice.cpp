#include "wpi/lattice.hpp"

#include "wpi/linalg.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace wpi {

LatticePoint LatticePoint::unit(int n, int i) {
  LatticePoint p = zero(n);
  p.c.at(i) = 1;
  return p;
}

bool LatticePoint::is_zero() const {
  for (long long v : c)
    if (v != 0) return false;
  return true;
}

long long LatticePoint::maxnorm() const {
  long long m = 0;
  for (long long v : c) m = std::max(m, v < 0 ? -v : v);
  return m;
}

long long LatticePoint::l1norm() const {
  long long s = 0;
  for (long long v : c) s += v < 0 ? -v : v;
  return s;
}

LatticePoint LatticePoint::operator-() const {
  LatticePoint p = *this;
  for (long long& v : p.c) v = -v;
  return p;
}

LatticePoint& LatticePoint::operator+=(const LatticePoint& o) {
  if (c.size() != o.c.size()) throw std::domain_error("LatticePoint::+=: rank mismatch");
  for (size_t k = 0; k < c.size(); ++k) c[k] += o.c[k];
  return *this;
}

LatticePoint& LatticePoint::operator-=(const LatticePoint& o) {
  if (c.size() != o.c.size()) throw std::domain_error("LatticePoint::-=: rank mismatch");
  for (size_t k = 0; k < c.size(); ++k) c[k] -= o.c[k];
  return *this;
}

LatticePoint operator*(long long k, LatticePoint p) {
  for (long long& v : p.c) v *= k;
  return p;
}

int cmp_lex(const LatticePoint& a, const LatticePoint& b) {
  if (a.c.size() != b.c.size()) throw std::domain_error("cmp_lex: rank mismatch");
  for (size_t k = 0; k < a.c.size(); ++k) {
    if (a.c[k] != b.c[k]) return a.c[k] < b.c[k] ? -1 : 1;
  }
  return 0;
}

namespace {

// 0 < 1 < -1 < 2 < -2 < ...
long long scan_key(long long v) { return v > 0 ? 2 * v - 1 : -2 * v; }

}  // namespace

int cmp_scan(const LatticePoint& a, const LatticePoint& b) {
  if (a.c.size() != b.c.size()) throw std::domain_error("cmp_scan: rank mismatch");
  long long am = a.maxnorm(), bm = b.maxnorm();
  if (am != bm) return am < bm ? -1 : 1;
  long long a1 = a.l1norm(), b1 = b.l1norm();
  if (a1 != b1) return a1 < b1 ? -1 : 1;
  for (size_t k = 0; k < a.c.size(); ++k) {
    long long ka = scan_key(a.c[k]), kb = scan_key(b.c[k]);
    if (ka != kb) return ka < kb ? -1 : 1;
  }
  return 0;
}

std::vector<LatticePoint> box_points(int n, long long radius) {
  std::vector<LatticePoint> pts;
  LatticePoint cur(std::vector<long long>(n, -radius));
  for (;;) {
    pts.push_back(cur);
    int k = n - 1;
    while (k >= 0 && cur.c[k] == radius) {
      cur.c[k] = -radius;
      --k;
    }
    if (k < 0) break;
    ++cur.c[k];
  }
  std::sort(pts.begin(), pts.end(),
            [](const LatticePoint& a, const LatticePoint& b) { return cmp_scan(a, b) < 0; });
  return pts;
}

std::string to_string(const LatticePoint& p) {
  std::string s = "(";
  for (size_t k = 0; k < p.c.size(); ++k) {
    if (k) s += ", ";
    s += std::to_string(p.c[k]);
  }
  return s + ")";
}

std::ostream& operator<<(std::ostream& os, const LatticePoint& p) { return os << to_string(p); }

namespace {

// Rows: real x, imag x, real y, imag y of the generator images.
QMatrix coordinate_matrix(const LatticeEmbedding& e) {
  QMatrix m(4, e.rank());
  for (int j = 0; j < e.rank(); ++j) {
    const CVec2& v = e.image(j);
    m.at(0, j) = GaussianRational(v.x.re());
    m.at(1, j) = GaussianRational(v.x.im());
    m.at(2, j) = GaussianRational(v.y.re());
    m.at(3, j) = GaussianRational(v.y.im());
  }
  return m;
}

std::vector<GaussianRational> coordinate_rhs(const CVec2& t) {
  return {GaussianRational(t.x.re()), GaussianRational(t.x.im()), GaussianRational(t.y.re()),
          GaussianRational(t.y.im())};
}

}  // namespace

LatticeEmbedding::LatticeEmbedding(std::vector<CVec2> images) : images_(std::move(images)) {
  int n = int(images_.size());
  if (n < 2) throw std::invalid_argument("LatticeEmbedding: rank must be at least 2");
  pairings_.resize(size_t(n) * n);
  rho_pairings_.resize(n);
  for (int i = 0; i < n; ++i) {
    rho_pairings_[i] = symplectic(rho(), images_[i]);
    for (int j = 0; j < n; ++j) pairings_[i * n + j] = symplectic(images_[i], images_[j]);
  }
  injective_ = wpi::rank(coordinate_matrix(*this)) == n;
}

CVec2 LatticeEmbedding::embed(const LatticePoint& p) const {
  if (p.size() != rank()) throw std::domain_error("LatticeEmbedding::embed: rank mismatch");
  CVec2 out;
  for (int i = 0; i < rank(); ++i) {
    if (p.c[i] == 0) continue;
    out += GaussianRational(Rational(long(p.c[i]))) * images_[i];
  }
  return out;
}

GaussianRational LatticeEmbedding::symp(const LatticePoint& a, const LatticePoint& b) const {
  if (a.size() != rank() || b.size() != rank())
    throw std::domain_error("LatticeEmbedding::symp: rank mismatch");
  GaussianRational out;
  for (int i = 0; i < rank(); ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < rank(); ++j) {
      if (b.c[j] == 0) continue;
      out += GaussianRational(Rational(Integer(long(a.c[i])) * Integer(long(b.c[j])))) *
             pairing(i, j);
    }
  }
  return out;
}

EmbeddingRef demo_embedding() {
  static const EmbeddingRef e = std::make_shared<LatticeEmbedding>(std::vector<CVec2>{
      CVec2(GaussianRational(0), GaussianRational(1)),
      CVec2(GaussianRational(-3), GaussianRational(Rational(-3), Rational(1)))});
  return e;
}

EmbeddingRef axis_embedding() {
  static const EmbeddingRef e = std::make_shared<LatticeEmbedding>(std::vector<CVec2>{
      CVec2(GaussianRational(1), GaussianRational(0)),
      CVec2(GaussianRational(0), GaussianRational::i())});
  return e;
}

EmbeddingRef collinear_embedding() {
  static const EmbeddingRef e = std::make_shared<LatticeEmbedding>(std::vector<CVec2>{
      CVec2(GaussianRational(1), GaussianRational(1)),
      CVec2(GaussianRational(2), GaussianRational(2))});
  return e;
}

namespace {

enum class PreimageKind { None, Found, UnknownWithinRadius };

struct PreimageResult {
  PreimageKind kind;
  LatticePoint point;
};

bool integral(const std::vector<GaussianRational>& x, LatticePoint* out) {
  std::vector<long long> c;
  c.reserve(x.size());
  for (const auto& v : x) {
    if (!v.is_real()) return false;
    if (v.re().get_den() != 1) return false;
    Integer num = v.re().get_num();
    if (!num.fits_slong_p()) throw std::overflow_error("coset_solve: witness exceeds word range");
    c.push_back(num.get_si());
  }
  if (out) *out = LatticePoint(std::move(c));
  return true;
}

PreimageResult integer_preimage(const LatticeEmbedding& e, const CVec2& target,
                                long long fallback_radius) {
  auto sol = solve(coordinate_matrix(e), coordinate_rhs(target));
  if (!sol) return {PreimageKind::None, {}};
  if (e.injective()) {
    LatticePoint w;
    if (integral(*sol, &w)) return {PreimageKind::Found, w};
    return {PreimageKind::None, {}};
  }
  // Degenerate embedding: rational solutions form an affine family; search a
  // box for an integer one.
  for (const LatticePoint& p : box_points(e.rank(), fallback_radius)) {
    if (e.embed(p) == target) return {PreimageKind::Found, p};
  }
  return {PreimageKind::UnknownWithinRadius, {}};
}

}  // namespace

std::optional<LatticePoint> coset_solve(const LatticeEmbedding& e, const CVec2& target,
                                        long long fallback_radius) {
  PreimageResult r = integer_preimage(e, target, fallback_radius);
  if (r.kind == PreimageKind::Found) return r.point;
  return std::nullopt;
}

bool coset_contains(const Coset& g, const CVec2& v, LatticePoint* witness) {
  auto p = coset_solve(*g.emb, v - g.base);
  if (!p) return false;
  if (witness) *witness = *p;
  return true;
}

bool ConditionReport::all_pass() const {
  for (const auto& f : findings)
    if (f.status == "fails") return false;
  return true;
}

const ConditionFinding& ConditionReport::find(const std::string& name) const {
  for (const auto& f : findings)
    if (f.condition == name) return f;
  throw std::out_of_range("ConditionReport::find: no finding named " + name);
}

namespace {

// Primitive integer kernel vector of the coordinate matrix, for the
// injectivity witness.
std::string kernel_witness(const LatticeEmbedding& e) {
  auto basis = nullspace(coordinate_matrix(e));
  if (basis.empty()) return "";
  const auto& v = basis.front();
  Integer lcm = 1;
  for (const auto& x : v) {
    Integer den = x.re().get_den();
    Integer g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  std::vector<Integer> iv;
  Integer gcd = 0;
  for (const auto& x : v) {
    Integer n = Rational(x.re() * Rational(lcm)).get_num();
    iv.push_back(n);
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), n.get_mpz_t());
  }
  if (gcd == 0) return "";
  int lead = 0;
  while (lead < int(iv.size()) && iv[lead] == 0) ++lead;
  bool flip = lead < int(iv.size()) && iv[lead] < 0;
  std::vector<long long> c;
  for (auto& n : iv) {
    Integer q = n / gcd;
    if (flip) q = -q;
    c.push_back(q.get_si());
  }
  return "pi" + to_string(LatticePoint(c)) + " = 0";
}

}  // namespace

ConditionReport check_conditions(const LatticeEmbedding& e, long long radius) {
  ConditionReport rep;
  rep.radius = radius;

  rep.injective = e.injective();
  rep.findings.push_back({"injectivity", e.injective() ? "holds" : "fails",
                          e.injective() ? "" : kernel_witness(e)});

  // i) some generator image must leave the line C rho
  bool all_on_rho = true;
  for (int k = 0; k < e.rank(); ++k)
    if (!e.rho_pairing(k).is_zero()) { all_on_rho = false; break; }
  rep.findings.push_back({"i", all_on_rho ? "fails" : "holds", ""});

  // ii) 2 rho must have no integer preimage
  {
    PreimageResult r = integer_preimage(e, rho() + rho(), radius);
    switch (r.kind) {
      case PreimageKind::Found:
        rep.findings.push_back({"ii", "fails", "pi" + to_string(r.point) + " = 2rho"});
        break;
      case PreimageKind::None:
        rep.findings.push_back({"ii", "holds", ""});
        break;
      case PreimageKind::UnknownWithinRadius:
        rep.findings.push_back({"ii", "verified-up-to-radius", ""});
        break;
    }
  }

  // iii) the image must not sit inside a single complex line
  {
    bool one_line = true;
    for (int i = 0; i < e.rank() && one_line; ++i)
      for (int j = i + 1; j < e.rank(); ++j)
        if (!e.pairing(i, j).is_zero()) { one_line = false; break; }
    rep.findings.push_back({"iii", one_line ? "fails" : "holds", ""});
  }

  // C) <pi(a) + 2rho, pi(b)> != 0 for all a and all nonzero b, swept on the box
  {
    std::vector<LatticePoint> pts = box_points(e.rank(), radius);
    std::vector<CVec2> emb(pts.size());
    for (size_t k = 0; k < pts.size(); ++k) emb[k] = e.embed(pts[k]);
    CVec2 two_rho = rho() + rho();

    ConditionFinding strong{"C", "verified-up-to-radius", ""};
    for (size_t a = 0; a < pts.size() && strong.witness.empty(); ++a) {
      CVec2 shifted = emb[a] + two_rho;
      for (size_t b = 0; b < pts.size(); ++b) {
        if (pts[b].is_zero()) continue;
        if (symplectic(shifted, emb[b]).is_zero()) {
          strong.status = "fails";
          strong.witness = "alpha=" + to_string(pts[a]) + " beta=" + to_string(pts[b]);
          break;
        }
      }
    }
    rep.findings.push_back(strong);

    ConditionFinding weak{"C-weak", "verified-up-to-radius", ""};
    for (size_t a = 0; a < pts.size() && weak.witness.empty(); ++a) {
      CVec2 shifted = emb[a] + two_rho;
      for (int k = 0; k < e.rank(); ++k) {
        if (symplectic(shifted, e.image(k)).is_zero()) {
          weak.status = "fails";
          weak.witness = "alpha=" + to_string(pts[a]) + " k=" + std::to_string(k + 1);
          break;
        }
      }
    }
    rep.findings.push_back(weak);
  }

  return rep;
}

std::string format_report(const ConditionReport& r) {
  std::string out;
  for (const auto& f : r.findings) {
    out += (f.condition == "injectivity") ? f.condition : "condition " + f.condition;
    out += ": " + f.status;
    if (f.status == "verified-up-to-radius") out += " (radius " + std::to_string(r.radius) + ")";
    if (!f.witness.empty()) out += " [" + f.witness + "]";
    out += "\n";
  }
  return out;
}

}  // namespace wpi
