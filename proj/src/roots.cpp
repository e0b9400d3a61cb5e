// Exact r-th roots in Q(xi_N).
//
// x is scaled to an algebraic integer x' = X * D^{r-1}; any root y' of x' then
// lies in Z[xi_N]. Modulo a prime p with ord_N(p) = lambda(N) the ring
// Z[xi_N]/p splits into c = phi/lambda finite fields. Roots are taken in each
// field, glued by CRT, Newton-lifted to p^e and reconstructed with symmetric
// residues. The coefficient bound comes from the complex embeddings.

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "conicquot/cyclofield.hpp"

namespace conicquot {

namespace {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] = (a[k] + p - b[k]) % p;
  trim(a);
  return a;
}

Poly poly_add(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] = (a[k] + b[k]) % p;
  trim(a);
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
  }
  Poly out(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<u64>(acc[k] % p);
  trim(out);
  return out;
}

// a = q*b + r
void poly_divmod(Poly a, const Poly& b, u64 p, Poly* q, Poly* r) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const u64 lead_inv = invmod(b.back(), p);
  Poly quot(a.size() >= b.size() ? a.size() - db : 0, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    u64 c = mulmod(a[i], lead_inv, p);
    if (c == 0) continue;
    quot[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + p - mulmod(c, b[j], p)) % p;
  }
  trim(a);
  trim(quot);
  if (q) *q = std::move(quot);
  if (r) *r = std::move(a);
}

Poly poly_mod(const Poly& a, const Poly& m, u64 p) {
  Poly r;
  poly_divmod(a, m, p, nullptr, &r);
  return r;
}

Poly poly_monic(Poly a, u64 p) {
  if (a.empty()) return a;
  u64 inv = invmod(a.back(), p);
  for (auto& c : a) c = mulmod(c, inv, p);
  return a;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a, p);
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) { return poly_mod(poly_mul(a, b, p), m, p); }

Poly poly_powmod(Poly a, const mpz_class& e, const Poly& m, u64 p) {
  Poly r = poly_mod(Poly{1}, m, p);
  a = poly_mod(a, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t k = bits; k-- > 0;) {
    r = poly_mulmod(r, r, m, p);
    if (mpz_tstbit(e.get_mpz_t(), k)) r = poly_mulmod(r, a, m, p);
  }
  if (e == 0) return poly_mod(Poly{1}, m, p);
  return r;
}

// a^{-1} mod m, a coprime to m.
Poly poly_invmod(const Poly& a, const Poly& m, u64 p) {
  Poly r0 = m, r1 = poly_mod(a, m, p);
  Poly s0, s1{1};
  while (!r1.empty()) {
    Poly q, r;
    poly_divmod(r0, r1, p, &q, &r);
    Poly s2 = poly_sub(s0, poly_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant
  u64 inv = invmod(r0.front(), p);
  for (auto& c : s0) c = mulmod(c, inv, p);
  return poly_mod(s0, m, p);
}

void equal_degree_split(const Poly& F, int f, u64 p, std::mt19937_64& rng, std::vector<Poly>& out) {
  const int d = static_cast<int>(F.size()) - 1;
  if (d == f) {
    out.push_back(F);
    return;
  }
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, f);
  const mpz_class half = (q - 1) / 2;
  std::uniform_int_distribution<u64> dist(0, p - 1);
  for (;;) {
    Poly a(d);
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (a.empty()) continue;
    Poly g = poly_gcd(a, F, p);
    if (g.size() == 1) {
      Poly b = poly_sub(poly_powmod(a, half, F, p), Poly{1}, p);
      g = poly_gcd(b, F, p);
    }
    if (g.size() > 1 && g.size() < F.size()) {
      Poly h;
      poly_divmod(F, g, p, &h, nullptr);
      equal_degree_split(g, f, p, rng, out);
      equal_degree_split(poly_monic(h, p), f, p, rng, out);
      return;
    }
  }
}

int multiplicative_order(u64 p, int n) {
  if (n <= 2) return 1;
  u64 x = p % n, y = x;
  int k = 1;
  while (y != 1) {
    y = (y * x) % n;
    ++k;
  }
  return k;
}

bool is_prime(u64 n) {
  mpz_class z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

// Arithmetic in (Z/m)[X]/Phi_N.
struct IntRing {
  std::vector<long> cyc;  // monic, degree phi
  int phi;
  mpz_class m;

  void reduce(std::vector<mpz_class>& c) const {
    for (std::size_t i = c.size(); i-- > static_cast<std::size_t>(phi);) {
      mpz_class lead = c[i] % m;
      if (lead == 0) continue;
      for (int j = 0; j < phi; ++j)
        if (cyc[j] != 0) c[i - phi + j] -= lead * cyc[j];
    }
    c.resize(phi);
    for (auto& v : c) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  }

  std::vector<mpz_class> mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) const {
    std::vector<mpz_class> prod(2 * phi - 1, 0);
    for (int i = 0; i < phi; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < phi; ++j) prod[i + j] += a[i] * b[j];
    }
    reduce(prod);
    return prod;
  }

  std::vector<mpz_class> pow(std::vector<mpz_class> a, int e) const {
    std::vector<mpz_class> r(phi, 0);
    r[0] = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }

  std::vector<mpz_class> sub(std::vector<mpz_class> a, const std::vector<mpz_class>& b) const {
    for (int k = 0; k < phi; ++k) {
      a[k] -= b[k];
      mpz_fdiv_r(a[k].get_mpz_t(), a[k].get_mpz_t(), m.get_mpz_t());
    }
    return a;
  }

  std::vector<mpz_class> scale(std::vector<mpz_class> a, const mpz_class& s) const {
    for (auto& v : a) {
      v *= s;
      mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    }
    return a;
  }
};

std::vector<mpz_class> from_poly(const Poly& a, int phi) {
  std::vector<mpz_class> out(phi, 0);
  for (std::size_t k = 0; k < a.size() && k < static_cast<std::size_t>(phi); ++k)
    out[k] = static_cast<unsigned long>(a[k]);
  return out;
}

// log2 of an upper bound on |coefficient| of any y' with y'^r = x'.
double log2_coefficient_bound(int n, const std::vector<mpz_class>& xint, int r) {
  const int phi = static_cast<int>(xint.size());
  using C = std::complex<double>;
  std::vector<int> units = units_mod(n);
  std::vector<C> omega;
  for (int j : units) omega.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / std::max(n, 1)));
  if (n == 1) omega = {C(1.0, 0.0)};

  long shift = 0;
  for (const auto& v : xint) shift = std::max<long>(shift, static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)));
  shift = std::max<long>(0, shift - 60);
  std::vector<double> xs(phi);
  for (int k = 0; k < phi; ++k) {
    mpz_class t = xint[k];
    if (shift > 0) mpz_tdiv_q_2exp(t.get_mpz_t(), t.get_mpz_t(), shift);
    xs[k] = t.get_d();
  }
  double max_abs = 0.0;
  for (const C& w : omega) {
    C s = 0.0, pw = 1.0;
    for (int k = 0; k < phi; ++k) {
      s += xs[k] * pw;
      pw *= w;
    }
    max_abs = std::max(max_abs, std::abs(s));
  }
  double l2 = std::log2(max_abs + 1.0) + static_cast<double>(shift);

  // Inverse Vandermonde row sums.
  std::vector<std::vector<C>> a(phi, std::vector<C>(2 * phi, 0.0));
  for (int j = 0; j < phi; ++j) {
    C pw = 1.0;
    for (int k = 0; k < phi; ++k) {
      a[j][k] = pw;
      pw *= omega[j];
    }
    a[j][phi + j] = 1.0;
  }
  for (int col = 0; col < phi; ++col) {
    int piv = col;
    for (int r2 = col + 1; r2 < phi; ++r2)
      if (std::abs(a[r2][col]) > std::abs(a[piv][col])) piv = r2;
    std::swap(a[col], a[piv]);
    C inv = 1.0 / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (int r2 = 0; r2 < phi; ++r2) {
      if (r2 == col) continue;
      C f = a[r2][col];
      if (f == C(0.0)) continue;
      for (int k = 0; k < 2 * phi; ++k) a[r2][k] -= f * a[col][k];
    }
  }
  // Rows of the inverse map sigma-values -> coefficients.
  double row_max = 0.0;
  for (int k = 0; k < phi; ++k) {
    double s = 0.0;
    for (int j = 0; j < phi; ++j) s += std::abs(a[k][phi + j]);
    row_max = std::max(row_max, s);
  }
  return std::log2(row_max + 1.0) + l2 / r + 3.0;
}

struct PrimeSetup {
  u64 p = 0;
  std::vector<Poly> factors;
  std::vector<Poly> idempotents;
};

bool setup_prime(u64 p, int n, int lambda, const std::vector<mpz_class>& xint, std::mt19937_64& rng,
                 PrimeSetup& out) {
  if (!is_prime(p) || (n > 1 && p % n == 0)) return false;
  if (multiplicative_order(p, n) != lambda) return false;
  const auto& cyc = cyclotomic_polynomial(n);
  Poly F(cyc.size());
  for (std::size_t k = 0; k < cyc.size(); ++k) F[k] = static_cast<u64>(((cyc[k] % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p));
  std::vector<Poly> factors;
  equal_degree_split(F, lambda, p, rng, factors);
  Poly xp(xint.size());
  for (std::size_t k = 0; k < xint.size(); ++k) {
    mpz_class t;
    mpz_fdiv_r_ui(t.get_mpz_t(), xint[k].get_mpz_t(), p);
    xp[k] = t.get_ui();
  }
  trim(xp);
  for (const auto& fi : factors)
    if (poly_mod(xp, fi, p).empty()) return false;
  out.p = p;
  out.factors = std::move(factors);
  out.idempotents.clear();
  for (const auto& fi : out.factors) {
    Poly cof;
    poly_divmod(F, fi, p, &cof, nullptr);
    Poly e = poly_mulmod(cof, poly_invmod(poly_mod(cof, fi, p), fi, p), F, p);
    out.idempotents.push_back(e);
  }
  return true;
}

// Prime-order root of x in the field F_p[X]/f. Returns nullopt if x is not an r-th power.
std::optional<Poly> field_root(const Poly& x, int r, const Poly& f, u64 p, std::mt19937_64& rng) {
  const int deg = static_cast<int>(f.size()) - 1;
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, deg);
  const mpz_class qm1 = q - 1;
  mpz_class g_r;
  const mpz_class rr(r);
  mpz_gcd(g_r.get_mpz_t(), qm1.get_mpz_t(), rr.get_mpz_t());
  if (g_r == 1) {
    mpz_class d;
    mpz_invert(d.get_mpz_t(), rr.get_mpz_t(), qm1.get_mpz_t());
    return poly_powmod(x, d, f, p);
  }
  if (poly_powmod(x, qm1 / r, f, p) != Poly{1}) return std::nullopt;
  mpz_class t = qm1;
  int s = 0;
  while (t % r == 0) {
    t /= r;
    ++s;
  }
  // generator of the r-Sylow subgroup
  std::uniform_int_distribution<u64> dist(0, p - 1);
  Poly gen;
  for (;;) {
    Poly z(deg);
    for (auto& c : z) c = dist(rng);
    trim(z);
    if (z.empty()) continue;
    if (poly_powmod(z, qm1 / r, f, p) != Poly{1}) {
      gen = poly_powmod(z, t, f, p);
      break;
    }
  }
  // y0 = x^d with r*d = 1 + j*t
  mpz_class d;
  mpz_invert(d.get_mpz_t(), rr.get_mpz_t(), t.get_mpz_t());
  const mpz_class j = (rr * d - 1) / t;
  Poly y0 = poly_powmod(x, d, f, p);
  // b = (x^t)^{-j} lies in the Sylow subgroup and is an r-th power there
  Poly xt = poly_powmod(x, t, f, p);
  Poly b = poly_invmod(poly_powmod(xt, j, f, p), f, p);
  // discrete log of b base gen, digit by digit
  mpz_class rs;
  mpz_ui_pow_ui(rs.get_mpz_t(), r, s - 1);
  Poly gamma = poly_powmod(gen, rs, f, p);
  Poly gen_inv = poly_invmod(gen, f, p);
  mpz_class e = 0, rpow = 1;
  for (int i = 0; i < s; ++i) {
    Poly h = poly_mulmod(b, poly_powmod(gen_inv, e, f, p), f, p);
    mpz_class ex;
    mpz_ui_pow_ui(ex.get_mpz_t(), r, s - 1 - i);
    h = poly_powmod(h, ex, f, p);
    int digit = -1;
    Poly acc{1};
    for (int dgt = 0; dgt < r; ++dgt) {
      if (poly_mod(acc, f, p) == h) {
        digit = dgt;
        break;
      }
      acc = poly_mulmod(acc, gamma, f, p);
    }
    if (digit < 0) return std::nullopt;
    e += rpow * digit;
    rpow *= r;
  }
  if (e % r != 0) return std::nullopt;
  Poly w = poly_powmod(gen, e / r, f, p);
  return poly_mulmod(y0, w, f, p);
}

std::optional<CycloNum> prime_root(const CycloNum& x, int r) {
  const int n = x.conductor();
  const int phi = euler_phi(n);
  if (x.is_zero()) return x;

  mpz_class D = 1;
  for (const auto& c : x.coeffs()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den_mpz_t());
  mpz_class Dr1;
  mpz_pow_ui(Dr1.get_mpz_t(), D.get_mpz_t(), r - 1);
  std::vector<mpz_class> xint(phi);
  for (int k = 0; k < phi; ++k) {
    mpq_class t = x.coeffs()[k] * D * Dr1;
    xint[k] = t.get_num();
  }
  // x = xint / D^r, root = y' / D

  const int lambda = carmichael_lambda(n);
  std::mt19937_64 rng(0x5eed + n * 131 + r);
  PrimeSetup ps;
  u64 cand = (u64{1} << 30) + 1;
  while (!setup_prime(cand, n, lambda, xint, rng, ps)) cand += 2;
  const u64 p = ps.p;
  const std::size_t c = ps.factors.size();

  std::vector<Poly> comp_root(c), comp_zeta(c), comp_inv(c);
  bool has_mu = true;
  Poly xp(phi);
  for (int k = 0; k < phi; ++k) {
    mpz_class t;
    mpz_fdiv_r_ui(t.get_mpz_t(), xint[k].get_mpz_t(), p);
    xp[k] = t.get_ui();
  }
  trim(xp);
  for (std::size_t i = 0; i < c; ++i) {
    const Poly& fi = ps.factors[i];
    Poly xi = poly_mod(xp, fi, p);
    auto y = field_root(xi, r, fi, p, rng);
    if (!y) return std::nullopt;
    comp_root[i] = *y;
    comp_inv[i] = poly_invmod(xi, fi, p);
    // primitive r-th root of unity in this component, if any
    const int deg = static_cast<int>(fi.size()) - 1;
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, deg);
    if ((q - 1) % r != 0) {
      has_mu = false;
      continue;
    }
    std::uniform_int_distribution<u64> dist(0, p - 1);
    for (;;) {
      Poly z(deg);
      for (auto& v : z) v = dist(rng);
      trim(z);
      if (z.empty()) continue;
      Poly zeta = poly_powmod(z, (q - 1) / r, fi, p);
      if (zeta != Poly{1}) {
        comp_zeta[i] = zeta;
        break;
      }
    }
  }

  const auto& cyc = cyclotomic_polynomial(n);
  Poly F(cyc.size());
  for (std::size_t k = 0; k < cyc.size(); ++k) F[k] = static_cast<u64>(((cyc[k] % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p));
  auto glue = [&](const std::vector<Poly>& parts) {
    Poly acc;
    for (std::size_t i = 0; i < c; ++i) acc = poly_add(acc, poly_mul(parts[i], ps.idempotents[i], p), p);
    return poly_mod(acc, F, p);
  };

  IntRing ring{cyc, phi, mpz_class(static_cast<unsigned long>(p))};
  std::vector<mpz_class> Y = from_poly(glue(comp_root), phi);
  std::vector<mpz_class> V = from_poly(glue(comp_inv), phi);
  std::vector<std::vector<mpz_class>> U;
  if (has_mu) {
    for (std::size_t i = 0; i < c; ++i) {
      std::vector<Poly> parts(c, Poly{1});
      parts[i] = comp_zeta[i];
      U.push_back(from_poly(glue(parts), phi));
    }
  }

  const double need_bits = log2_coefficient_bound(n, xint, r) + 4.0;
  if (need_bits > 200000.0) throw Error(ErrorKind::precision_exhausted, "root coefficients too large");
  const mpz_class pz(static_cast<unsigned long>(p));
  std::vector<mpz_class> xmod = xint;

  auto lift_to = [&](const mpz_class& modulus) {
    ring.m = modulus;
    std::vector<mpz_class> xr = xmod;
    for (auto& v : xr) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
    mpz_class inv_r;
    mpz_class rr(r);
    mpz_invert(inv_r.get_mpz_t(), rr.get_mpz_t(), modulus.get_mpz_t());
    std::vector<mpz_class> two(phi, 0);
    two[0] = 2;
    V = ring.mul(V, ring.sub(two, ring.mul(xr, V)));
    std::vector<mpz_class> resid = ring.sub(ring.pow(Y, r), xr);
    Y = ring.sub(Y, ring.scale(ring.mul(ring.mul(resid, Y), V), inv_r));
    std::vector<mpz_class> one(phi, 0);
    one[0] = 1;
    for (auto& u : U) {
      std::vector<mpz_class> res_u = ring.sub(ring.pow(u, r), one);
      u = ring.sub(u, ring.scale(ring.mul(res_u, u), inv_r));
    }
  };

  mpz_class modulus = pz;
  while (static_cast<double>(mpz_sizeinbase(modulus.get_mpz_t(), 2)) < 2.0 * need_bits + 2.0) {
    modulus *= modulus;
    lift_to(modulus);
  }
  ring.m = modulus;
  mpz_class half = modulus / 2;
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 2, static_cast<unsigned long>(std::ceil(need_bits)));

  // Sign patterns: component 0 fixed when xi_r is in K.
  const bool fix_first = CycloNum::root_of_unity_in(n, r).has_value();
  const std::size_t free_comps = has_mu ? c : 0;
  const std::size_t start = (fix_first && free_comps > 0) ? 1 : 0;
  std::vector<int> digits(free_comps, 0);
  for (;;) {
    std::vector<mpz_class> cand_y = Y;
    for (std::size_t i = start; i < free_comps; ++i)
      for (int k = 0; k < digits[i]; ++k) cand_y = ring.mul(cand_y, U[i]);
    bool small = true;
    for (auto& v : cand_y) {
      if (v > half) v -= modulus;
      if (abs(v) > bound) {
        small = false;
        break;
      }
    }
    if (small) {
      std::vector<Rational> coeffs(phi);
      for (int k = 0; k < phi; ++k) coeffs[k] = Rational(cand_y[k], D);
      for (auto& q : coeffs) q.canonicalize();
      CycloNum y(n, std::move(coeffs));
      if (y.pow(r) == x) return y;
    }
    std::size_t pos = start;
    while (pos < free_comps && ++digits[pos] == r) digits[pos++] = 0;
    if (pos >= free_comps) break;
  }
  return std::nullopt;
}

int smallest_prime_factor(int r) {
  for (int q = 2; q * q <= r; ++q)
    if (r % q == 0) return q;
  return r;
}

}  // namespace

std::optional<CycloNum> nth_root(const CycloNum& x, int r) {
  if (r < 1) throw Error(ErrorKind::out_of_range, "root index must be positive");
  if (r == 1 || x.is_zero()) return x;
  const int q = smallest_prime_factor(r);
  auto z = prime_root(x, q);
  if (!z) return std::nullopt;
  if (q == r) return z;
  const auto zeta = CycloNum::root_of_unity_in(x.conductor(), q);
  const int tries = zeta ? q : 1;
  CycloNum cur = *z;
  for (int k = 0; k < tries; ++k) {
    if (auto y = nth_root(cur, r / q)) return y;
    if (zeta) cur *= *zeta;
  }
  return std::nullopt;
}

}  // namespace conicquot
